//! The partial order on local coarse shapes, upper sets generated by finite
//! antichains, and the counting functionals `n_W`.

use std::fmt;

use crate::cardinal::{Cardinal, Fin};
use crate::error::{Error, Result};
use crate::relation::FinPair;
use crate::shapes::{lcs_all, LocalCoarseShape, Position, ShapeSeq};

/// Distinct realized shapes allowed on the left of [`gcs_leq`].
pub const MAX_GCS_SHAPES: usize = 20;

/// Upward-closed subset of Sc, stored as its antichain of minimal generators
/// sorted by literal text.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UpperSet {
    generators: Vec<LocalCoarseShape>,
}

impl UpperSet {
    pub fn from_shapes<I>(shapes: I) -> Self
    where
        I: IntoIterator<Item = LocalCoarseShape>,
    {
        let shapes: Vec<_> = shapes.into_iter().collect();
        Self {
            generators: minimal_elements(&shapes),
        }
    }

    /// Like [`UpperSet::from_shapes`] for unchecked sequences.
    pub fn from_seqs<'a, I>(seqs: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a ShapeSeq>,
    {
        let shapes = seqs
            .into_iter()
            .map(|s| LocalCoarseShape::new(s.clone()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_shapes(shapes))
    }

    pub fn principal(a: LocalCoarseShape) -> Self {
        Self {
            generators: vec![a],
        }
    }

    pub fn generators(&self) -> &[LocalCoarseShape] {
        &self.generators
    }

    pub fn contains(&self, s: &LocalCoarseShape) -> bool {
        self.generators.iter().any(|g| g.leq(s))
    }

    /// `self ⊆ other`, decided on generators.
    pub fn is_subset_of(&self, other: &UpperSet) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }
}

impl fmt::Display for UpperSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("}")
    }
}

/// Membership test for an unchecked sequence.
pub fn upper_set_contains(w: &UpperSet, s: &ShapeSeq) -> Result<bool> {
    let s = LocalCoarseShape::new(s.clone())?;
    Ok(w.contains(&s))
}

/// The ≤-minimal elements of `shapes`, deduplicated and sorted by literal.
pub fn minimal_elements(shapes: &[LocalCoarseShape]) -> Vec<LocalCoarseShape> {
    let mut out: Vec<LocalCoarseShape> = Vec::new();
    for (i, s) in shapes.iter().enumerate() {
        let dominated = shapes
            .iter()
            .enumerate()
            .any(|(j, t)| t.leq(s) && (t != s || j < i));
        if !dominated {
            out.push(s.clone());
        }
    }
    out.sort_by_cached_key(|s| s.to_string());
    out
}

/// `n_W(P)`: number of F-classes of `p` whose local coarse shape lies in `w`.
pub fn n_w(p: &FinPair, w: &UpperSet) -> Cardinal {
    Fin(lcs_all(p).iter().filter(|s| w.contains(s)).count() as u64)
}

/// Integer partitions of `m` as descending part lists.
fn integer_partitions(m: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max_part: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max_part)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), &mut out);
    out
}

fn coarse_of_parts(parts: &[usize]) -> LocalCoarseShape {
    let max = parts.iter().copied().max().unwrap_or(0);
    let prefix = (1..=max).map(|k| parts.iter().filter(|&&p| p >= k).count() as u64);
    LocalCoarseShape::new(ShapeSeq::finite(prefix)).expect("coarse shape of a partition is in Sc")
}

/// `{α ∈ Sc : every class of shape α has at least m elements}` as an
/// antichain. For finite `m` the generators are the coarse shapes of the
/// integer partitions of `m`; for `m = ω` they are infinitely many singleton
/// E-classes and one infinite E-class.
pub fn size_upper_set(m: Position) -> UpperSet {
    match m {
        Position::Finite(m) => {
            let m = m.max(1) as usize;
            UpperSet::from_shapes(integer_partitions(m).iter().map(|p| coarse_of_parts(p)))
        }
        Position::Omega => {
            let shapes = ["<inf|0;0>", "<|1;1>"]
                .map(|t| LocalCoarseShape::new(ShapeSeq::parse_literal(t).unwrap()).unwrap());
            UpperSet::from_shapes(shapes)
        }
    }
}

/// `gcs(P1) ≤ gcs(P2)`, checked on every upper set generated by an antichain
/// of shapes realized in `P1`. Any other upper set `W` is reduced to
/// `↑(W ∩ realized(P1))`, which has the same `P1` count and no larger `P2`
/// count.
pub fn gcs_leq(p1: &FinPair, p2: &FinPair) -> Result<bool> {
    let left = lcs_all(p1);
    let right = lcs_all(p2);
    let mut distinct = left.clone();
    distinct.sort();
    distinct.dedup();
    let k = distinct.len();
    if k > MAX_GCS_SHAPES {
        return Err(Error::CapExceeded {
            size: 1u128 << k,
            cap: 1u128 << MAX_GCS_SHAPES,
        });
    }
    // Bit i of a class mask is set when distinct[i] ≤ the class shape.
    let masks = |classes: &[LocalCoarseShape]| -> Vec<u32> {
        classes
            .iter()
            .map(|c| {
                distinct
                    .iter()
                    .enumerate()
                    .filter(|(_, g)| g.leq(c))
                    .fold(0u32, |m, (i, _)| m | 1 << i)
            })
            .collect()
    };
    let left_masks = masks(&left);
    let right_masks = masks(&right);
    let comparable: Vec<u32> = (0..k)
        .map(|i| {
            (0..k)
                .filter(|&j| distinct[i].leq(&distinct[j]) || distinct[j].leq(&distinct[i]))
                .fold(0u32, |m, j| m | 1 << j)
        })
        .collect();

    fn count(masks: &[u32], gens: u32) -> usize {
        masks.iter().filter(|&&m| m & gens != 0).count()
    }

    // Depth-first over antichains; `blocked` holds shapes comparable to a
    // chosen generator.
    let mut stack = vec![(0usize, 0u32, 0u32)];
    while let Some((next, gens, blocked)) = stack.pop() {
        if gens != 0 && count(&left_masks, gens) > count(&right_masks, gens) {
            return Ok(false);
        }
        for (i, &cmp) in comparable.iter().enumerate().skip(next) {
            if blocked & (1 << i) == 0 {
                stack.push((i + 1, gens | 1 << i, blocked | cmp));
            }
        }
    }
    Ok(true)
}
