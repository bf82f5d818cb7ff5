//! Instance generators: the pair realizing a prescribed list of local fine
//! shapes, orbit pairs of permutation groups, and seeded random pairs.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::relation::{FinEqRel, FinPair};
use crate::shapes::{LocalFineShape, ShapeSeq};

/// Builds the pair whose F-classes are indexed by `g` and where class `x`
/// has local fine shape `g[x]`.
///
/// Points are the tuples `(x, k, m, n)` with `k < n` and `m < g[x](n)`,
/// numbered in lexicographic order of `(x, n, m, k)`. F groups by `x` and E
/// groups by `(x, m, n)`: the tuple is the `k`-th element of the `m`-th
/// E-class of size `n` inside class `x`.
pub fn build_shape_pair(g: &[LocalFineShape]) -> Result<FinPair> {
    let mut f_labels = Vec::new();
    let mut e_labels = Vec::new();
    let mut e_class = 0usize;
    for (x, shape) in g.iter().enumerate() {
        let seq = shape.seq();
        if !seq.is_finitely_supported() {
            return Err(Error::InfiniteShape(seq.to_string()));
        }
        for (i, count) in seq.prefix().iter().enumerate() {
            let size = i + 1;
            let count = count.as_finite().expect("finitely supported") as usize;
            for _m in 0..count {
                for _k in 0..size {
                    f_labels.push(x);
                    e_labels.push(e_class);
                }
                e_class += 1;
            }
        }
    }
    FinPair::new(
        FinEqRel::from_labels(&e_labels),
        FinEqRel::from_labels(&f_labels),
    )
}

/// A bijection of `{0..n}` given by its image table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotAPermutation {
                    n,
                    reason: format!("image table {images:?} is not a bijection"),
                });
            }
        }
        Ok(Self(images))
    }

    /// Parses disjoint cycles such as `(0 2)(1 3)` acting on `{0..n}`.
    /// Empty text and `()` denote the identity.
    pub fn parse_cycles(text: &str, n: usize) -> Result<Self> {
        let bad = |reason: String| Error::NotAPermutation { n, reason };
        let mut images: Vec<usize> = (0..n).collect();
        let mut moved = vec![false; n];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body_end = rest
                .strip_prefix('(')
                .and_then(|r| r.find(')'))
                .ok_or_else(|| bad(format!("malformed cycle notation {text:?}")))?;
            let body = &rest[1..=body_end];
            rest = rest[body_end + 2..].trim_start();
            let cycle = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|e| bad(format!("{t:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            for &x in &cycle {
                if x >= n {
                    return Err(bad(format!("point {x} out of range")));
                }
                if std::mem::replace(&mut moved[x], true) {
                    return Err(bad(format!("point {x} appears in more than one place")));
                }
            }
            for (i, &x) in cycle.iter().enumerate() {
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Self(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut any = false;
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            any = true;
            f.write_str("(")?;
            let mut x = start;
            loop {
                seen[x] = true;
                write!(f, "{x}")?;
                x = self.0[x];
                if x == start {
                    break;
                }
                f.write_str(" ")?;
            }
            f.write_str(")")?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses cycle notation with degree one more than the largest point.
    fn from_str(s: &str) -> Result<Self> {
        let n = s
            .split(|c: char| !c.is_ascii_digit())
            .filter_map(|t| t.parse::<usize>().ok())
            .max()
            .map_or(0, |m| m + 1);
        Self::parse_cycles(s, n)
    }
}

/// Orbits of the group generated by `gens` on `{0..n}`.
pub fn orbits(n: usize, gens: &[Permutation]) -> Result<FinEqRel> {
    if let Some(p) = gens.iter().find(|p| p.degree() != n) {
        return Err(Error::NotAPermutation {
            n,
            reason: format!("{p} has degree {}", p.degree()),
        });
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for p in gens {
        for x in 0..n {
            let (a, b) = (find(&mut parent, x), find(&mut parent, p.apply(x)));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let labels: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
    Ok(FinEqRel::from_labels(&labels))
}

/// E = orbits of `⟨sub_gens⟩`, F = orbits of `⟨full_gens⟩`; requires every
/// sub-generator to be one of the full generators.
pub fn orbit_pair(
    n: usize,
    sub_gens: &[Permutation],
    full_gens: &[Permutation],
) -> Result<FinPair> {
    if let Some(p) = sub_gens.iter().find(|p| !full_gens.contains(p)) {
        return Err(Error::NotSubset(p.to_string()));
    }
    FinPair::new(orbits(n, sub_gens)?, orbits(n, full_gens)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Profile {
    /// F from a Chinese-restaurant process, each F-block refined the same way.
    UniformRefinement,
    /// Random class sizes turned into local fine shapes, then
    /// [`build_shape_pair`].
    ShapeTargeted,
}

impl FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "uniform-refinement" | "uniform" => Ok(Profile::UniformRefinement),
            "shape-targeted" | "shape" => Ok(Profile::ShapeTargeted),
            other => Err(format!("unknown profile {other:?}")),
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::UniformRefinement => "uniform-refinement",
            Profile::ShapeTargeted => "shape-targeted",
        })
    }
}

/// Table labels from a Chinese-restaurant process with concentration 1.
fn crp_labels<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut sizes: Vec<usize> = Vec::new();
    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        // Seat at table t with weight sizes[t], or a new table with weight 1.
        let mut r = rng.gen_range(0..=i);
        let table = sizes
            .iter()
            .position(|&s| {
                if r < s {
                    true
                } else {
                    r -= s;
                    false
                }
            })
            .unwrap_or_else(|| {
                sizes.push(0);
                sizes.len() - 1
            });
        sizes[table] += 1;
        labels.push(table);
    }
    labels
}

fn crp_sizes<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let labels = crp_labels(rng, n);
    let mut sizes = vec![0; labels.iter().max().map_or(0, |m| m + 1)];
    for l in labels {
        sizes[l] += 1;
    }
    sizes
}

/// Deterministic in `(seed, n, profile)`.
pub fn random_pair(seed: u64, n: usize, profile: Profile) -> FinPair {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match profile {
        Profile::UniformRefinement => {
            let f = FinEqRel::from_labels(&crp_labels(&mut rng, n));
            let mut e_labels = vec![0; n];
            for (b, block) in f.blocks().iter().enumerate() {
                let sub = crp_labels(&mut rng, block.len());
                for (&x, &l) in block.iter().zip(&sub) {
                    e_labels[x] = b * (n + 1) + l;
                }
            }
            FinPair::new(FinEqRel::from_labels(&e_labels), f).expect("refinement by construction")
        }
        Profile::ShapeTargeted => {
            let g: Vec<LocalFineShape> = crp_sizes(&mut rng, n)
                .into_iter()
                .map(|class_size| {
                    let mut counts = vec![0u64; class_size];
                    for s in crp_sizes(&mut rng, class_size) {
                        counts[s - 1] += 1;
                    }
                    LocalFineShape::new(ShapeSeq::finite(counts)).expect("nonempty class")
                })
                .collect();
            build_shape_pair(&g).expect("finite shapes")
        }
    }
}
