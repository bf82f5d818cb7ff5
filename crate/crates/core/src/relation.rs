//! Finite equivalence relations and nested pairs `E ⊆ F`.
//!
//! All values are kept in canonical form: elements of each block ascending,
//! blocks ordered by their least element.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An equivalence relation on `{0, ..., n-1}`, stored as its blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinEqRel {
    blocks: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl FinEqRel {
    /// Validates that `blocks` partition `{0, ..., n-1}` and canonicalizes.
    pub fn from_blocks(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::NotAPartition {
                    n,
                    reason: "empty block".into(),
                });
            }
            for &x in block.iter() {
                if x >= n {
                    return Err(Error::NotAPartition {
                        n,
                        reason: format!("element {x} out of range"),
                    });
                }
                if seen[x] {
                    return Err(Error::NotAPartition {
                        n,
                        reason: format!("element {x} appears twice"),
                    });
                }
                seen[x] = true;
            }
            block.sort_unstable();
        }
        if let Some(gap) = seen.iter().position(|s| !s) {
            return Err(Error::NotAPartition {
                n,
                reason: format!("element {gap} is not covered"),
            });
        }
        Ok(Self::from_valid_blocks(n, blocks))
    }

    /// Builds from blocks already known to partition `{0..n}` with ascending
    /// elements; only the block order is fixed up.
    fn from_valid_blocks(n: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        blocks.sort_unstable_by_key(|b| b[0]);
        let mut class_of = vec![0; n];
        for (i, block) in blocks.iter().enumerate() {
            for &x in block {
                class_of[x] = i;
            }
        }
        Self { blocks, class_of }
    }

    /// Blocks are the fibers of `labels`: `x ~ y` iff `labels[x] == labels[y]`.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut index: std::collections::HashMap<usize, usize> = Default::default();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (x, &l) in labels.iter().enumerate() {
            let i = *index.entry(l).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[i].push(x);
        }
        Self::from_valid_blocks(labels.len(), blocks)
    }

    /// Equality relation Δ(n).
    pub fn discrete(n: usize) -> Self {
        Self::from_valid_blocks(n, (0..n).map(|x| vec![x]).collect())
    }

    /// Indiscrete relation I(n); no blocks when `n == 0`.
    pub fn indiscrete(n: usize) -> Self {
        let blocks = if n == 0 {
            vec![]
        } else {
            vec![(0..n).collect()]
        };
        Self::from_valid_blocks(n, blocks)
    }

    pub fn n(&self) -> usize {
        self.class_of.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_classes(&self) -> usize {
        self.blocks.len()
    }

    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i]
    }

    /// Index of the block containing `x`. Panics if `x` is out of range.
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    /// Block sizes in canonical block order.
    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// `[A]_R`: the union of all blocks meeting `a`.
    pub fn saturate<I>(&self, a: I) -> Result<BTreeSet<usize>>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut hit = BTreeSet::new();
        for x in a {
            if x >= self.n() {
                return Err(Error::ElementOutOfRange {
                    element: x,
                    n: self.n(),
                });
            }
            hit.insert(self.class_of[x]);
        }
        Ok(hit
            .into_iter()
            .flat_map(|i| self.blocks[i].iter().copied())
            .collect())
    }

    /// True when every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &FinEqRel) -> bool {
        self.n() == coarser.n()
            && self.blocks.iter().all(|b| {
                let c = coarser.class_of[b[0]];
                b.iter().all(|&x| coarser.class_of[x] == c)
            })
    }

    /// Image under the bijection `x ↦ perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> FinEqRel {
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let mut nb: Vec<usize> = b.iter().map(|&x| perm[x]).collect();
                nb.sort_unstable();
                nb
            })
            .collect();
        Self::from_valid_blocks(self.n(), blocks)
    }
}

/// Partition of `{0..f.len()}` into the fibers of `f`.
pub fn kernel_partition(f: &[usize]) -> FinEqRel {
    FinEqRel::from_labels(f)
}

/// A nested pair `E ⊆ F` of equivalence relations on `{0, ..., n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinPair {
    e: FinEqRel,
    f: FinEqRel,
}

impl FinPair {
    /// Validates raw block lists and builds the canonical pair.
    pub fn validate(
        n: usize,
        e_blocks: Vec<Vec<usize>>,
        f_blocks: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let e = FinEqRel::from_blocks(n, e_blocks)?;
        let f = FinEqRel::from_blocks(n, f_blocks)?;
        Self::new(e, f)
    }

    pub fn new(e: FinEqRel, f: FinEqRel) -> Result<Self> {
        if e.n() != f.n() {
            return Err(Error::NotAPartition {
                n: f.n(),
                reason: format!("E has ground size {} but F has {}", e.n(), f.n()),
            });
        }
        if let Some(block) = e.blocks.iter().find(|b| {
            let c = f.class_of[b[0]];
            b.iter().any(|&x| f.class_of[x] != c)
        }) {
            return Err(Error::NotNested {
                block: block.clone(),
            });
        }
        Ok(Self { e, f })
    }

    pub fn n(&self) -> usize {
        self.e.n()
    }

    pub fn e(&self) -> &FinEqRel {
        &self.e
    }

    pub fn f(&self) -> &FinEqRel {
        &self.f
    }

    /// Indices of the E-classes inside F-class `c`, in canonical order.
    pub fn e_classes_in(&self, c: usize) -> Vec<usize> {
        // E-classes may interleave inside an F-block, so dedup via a set.
        self.f.blocks[c]
            .iter()
            .map(|&x| self.e.class_of[x])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Sizes of the E-classes inside F-class `c`, in canonical order.
    pub fn e_class_sizes_in(&self, c: usize) -> Vec<usize> {
        self.e_classes_in(c)
            .into_iter()
            .map(|i| self.e.blocks[i].len())
            .collect()
    }

    /// `(E, F) ↾ A`, relabelled along the order isomorphism `A → {0..|A|}`.
    pub fn restrict<I>(&self, a: I) -> Result<FinPair>
    where
        I: IntoIterator<Item = usize>,
    {
        let n = self.n();
        let mut keep = BTreeSet::new();
        for x in a {
            if x >= n {
                return Err(Error::ElementOutOfRange { element: x, n });
            }
            keep.insert(x);
        }
        let mut new_index = vec![usize::MAX; n];
        for (i, &x) in keep.iter().enumerate() {
            new_index[x] = i;
        }
        let restrict_rel = |r: &FinEqRel| {
            let blocks: Vec<Vec<usize>> = r
                .blocks
                .iter()
                .map(|b| {
                    b.iter()
                        .filter(|&&x| new_index[x] != usize::MAX)
                        .map(|&x| new_index[x])
                        .collect::<Vec<_>>()
                })
                .filter(|b| !b.is_empty())
                .collect();
            FinEqRel::from_valid_blocks(keep.len(), blocks)
        };
        Ok(FinPair {
            e: restrict_rel(&self.e),
            f: restrict_rel(&self.f),
        })
    }

    /// The pair `(Δ, F/E)` on the set of E-classes, indexed canonically.
    pub fn quotient(&self) -> FinPair {
        let labels: Vec<usize> = self
            .e
            .blocks
            .iter()
            .map(|b| self.f.class_of[b[0]])
            .collect();
        let k = labels.len();
        FinPair {
            e: FinEqRel::discrete(k),
            f: FinEqRel::from_labels(&labels),
        }
    }

    /// Image of the pair under the bijection `x ↦ perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> FinPair {
        FinPair {
            e: self.e.relabel(perm),
            f: self.f.relabel(perm),
        }
    }

    /// Canonical JSON: `{"n":..,"E":[[..],..],"F":[[..],..]}`.
    pub fn to_json(&self) -> String {
        let file = PairFile {
            n: self.n(),
            e: self.e.blocks.clone(),
            f: self.f.blocks.clone(),
        };
        serde_json::to_string(&file).expect("pair serialization is infallible")
    }

    pub fn parse_json(text: &str) -> Result<FinPair> {
        let file: PairFile = serde_json::from_str(text).map_err(json_error)?;
        FinPair::validate(file.n, file.e, file.f)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairFile {
    n: usize,
    #[serde(rename = "E")]
    e: Vec<Vec<usize>>,
    #[serde(rename = "F")]
    f: Vec<Vec<usize>>,
}

pub(crate) fn json_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    pub fn pair(n: usize, e: &[&[usize]], f: &[&[usize]]) -> FinPair {
        FinPair::validate(
            n,
            e.iter().map(|b| b.to_vec()).collect(),
            f.iter().map(|b| b.to_vec()).collect(),
        )
        .unwrap()
    }

    pub fn p_a() -> FinPair {
        pair(6, &[&[0], &[1, 2], &[3, 4, 5]], &[&[0, 1, 2], &[3, 4, 5]])
    }

    #[test]
    fn validate_examples() {
        let p = p_a();
        assert_eq!(p.n(), 6);
        assert_eq!(p.e().blocks(), &[vec![0], vec![1, 2], vec![3, 4, 5]]);

        let single = pair(1, &[&[0]], &[&[0]]);
        assert_eq!(single.e(), &FinEqRel::discrete(1));

        let err = FinPair::validate(2, vec![vec![0, 1]], vec![vec![0], vec![1]]).unwrap_err();
        assert!(matches!(err, Error::NotNested { .. }));
    }

    #[test]
    fn validate_rejects_bad_partitions() {
        let overlap = FinPair::validate(3, vec![vec![0, 1], vec![1, 2]], vec![vec![0, 1, 2]]);
        assert!(matches!(overlap, Err(Error::NotAPartition { .. })));
        let gap = FinPair::validate(3, vec![vec![0, 1]], vec![vec![0, 1, 2]]);
        assert!(matches!(gap, Err(Error::NotAPartition { .. })));
        let range = FinPair::validate(2, vec![vec![0], vec![2]], vec![vec![0, 1]]);
        assert!(matches!(range, Err(Error::NotAPartition { .. })));
        let empty = FinPair::validate(1, vec![vec![0], vec![]], vec![vec![0]]);
        assert!(matches!(empty, Err(Error::NotAPartition { .. })));
    }

    #[test]
    fn canonicalizes_input_order() {
        let p = FinPair::validate(
            4,
            vec![vec![3, 2], vec![1], vec![0]],
            vec![vec![3, 1, 2], vec![0]],
        )
        .unwrap();
        assert_eq!(p.e().blocks(), &[vec![0], vec![1], vec![2, 3]]);
        assert_eq!(p.f().blocks(), &[vec![0], vec![1, 2, 3]]);
    }

    #[test]
    fn discrete_and_indiscrete() {
        assert_eq!(FinEqRel::discrete(3).blocks(), &[vec![0], vec![1], vec![2]]);
        assert_eq!(FinEqRel::indiscrete(3).blocks(), &[vec![0, 1, 2]]);
        assert!(FinEqRel::discrete(0).blocks().is_empty());
        assert!(FinEqRel::indiscrete(0).blocks().is_empty());
    }

    #[test]
    fn saturate_examples() {
        let p = p_a();
        assert_eq!(p.e().saturate([1]).unwrap(), BTreeSet::from([1, 2]));
        assert!(p.e().saturate([]).unwrap().is_empty());
        assert_eq!(
            FinEqRel::indiscrete(4).saturate([2]).unwrap(),
            BTreeSet::from([0, 1, 2, 3])
        );
        assert!(matches!(
            p.e().saturate([6]),
            Err(Error::ElementOutOfRange { element: 6, n: 6 })
        ));
    }

    #[test]
    fn restrict_examples() {
        let p = p_a();
        let c = p.restrict([0, 1, 2]).unwrap();
        assert_eq!(c, pair(3, &[&[0], &[1, 2]], &[&[0, 1, 2]]));
        assert_eq!(p.restrict(0..6).unwrap(), p);
        let tail = p.restrict([3, 4, 5]).unwrap();
        assert_eq!(tail, pair(3, &[&[0, 1, 2]], &[&[0, 1, 2]]));
        assert!(p.restrict([9]).is_err());
        assert_eq!(p.restrict([]).unwrap().n(), 0);
    }

    #[test]
    fn quotient_examples() {
        let q = p_a().quotient();
        assert_eq!(q, pair(3, &[&[0], &[1], &[2]], &[&[0, 1], &[2]]));

        let ef = pair(4, &[&[0, 1], &[2, 3]], &[&[0, 1], &[2, 3]]);
        assert_eq!(ef.quotient(), pair(2, &[&[0], &[1]], &[&[0], &[1]]));

        let delta_e = pair(3, &[&[0], &[1], &[2]], &[&[0, 2], &[1]]);
        assert_eq!(delta_e.quotient(), delta_e);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_partition(&[0, 1, 2]), FinEqRel::discrete(3));
        assert_eq!(kernel_partition(&[7, 7, 7, 7]), FinEqRel::indiscrete(4));
        assert_eq!(
            kernel_partition(&[0, 0, 1, 2, 2]).blocks(),
            &[vec![0, 1], vec![2], vec![3, 4]]
        );
    }

    #[test]
    fn json_examples() {
        assert_eq!(
            p_a().to_json(),
            r#"{"n":6,"E":[[0],[1,2],[3,4,5]],"F":[[0,1,2],[3,4,5]]}"#
        );
        let err = FinPair::parse_json(r#"{"n":2,"E":[[0,1]],"F":[[0],[1]]}"#).unwrap_err();
        assert!(matches!(err, Error::NotNested { .. }));
        let err = FinPair::parse_json("{\"n\":2,\n\"E\":[[0,1]],").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let extra = FinPair::parse_json(r#"{"n":1,"E":[[0]],"F":[[0]],"x":1}"#);
        assert!(matches!(extra, Err(Error::Parse { .. })));
    }

    /// Random pair from per-element labels: F-label, then E-label within it.
    pub fn arb_pair(max_n: usize) -> impl Strategy<Value = FinPair> {
        (0..=max_n)
            .prop_flat_map(|n| {
                (
                    proptest::collection::vec(0..n.max(1), n),
                    proptest::collection::vec(0..n.max(1), n),
                )
            })
            .prop_map(|(fl, el)| {
                let f = FinEqRel::from_labels(&fl);
                let labels: Vec<usize> = fl.iter().zip(&el).map(|(a, b)| a * 1000 + b).collect();
                FinPair::new(FinEqRel::from_labels(&labels), f).unwrap()
            })
    }

    proptest! {
        #[test]
        fn refinement_holds(p in arb_pair(9)) {
            for x in 0..p.n() {
                for y in 0..p.n() {
                    if p.e().related(x, y) {
                        prop_assert!(p.f().related(x, y));
                    }
                }
            }
            prop_assert!(p.e().refines(p.f()));
        }

        #[test]
        fn quotient_counts(p in arb_pair(9)) {
            let q = p.quotient();
            prop_assert_eq!(q.n(), p.e().num_classes());
            prop_assert_eq!(q.f().num_classes(), p.f().num_classes());
        }

        #[test]
        fn saturate_idempotent_monotone(p in arb_pair(9), mask in any::<u16>(), extra in any::<u16>()) {
            let n = p.n();
            let a: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let b: Vec<usize> = (0..n).filter(|&i| (mask | extra) >> i & 1 == 1).collect();
            let sa = p.e().saturate(a.iter().copied()).unwrap();
            prop_assert!(a.iter().all(|x| sa.contains(x)));
            prop_assert_eq!(p.e().saturate(sa.iter().copied()).unwrap(), sa.clone());
            let sb = p.e().saturate(b).unwrap();
            prop_assert!(sa.is_subset(&sb));
        }

        #[test]
        fn json_round_trip(p in arb_pair(12)) {
            let text = p.to_json();
            let back = FinPair::parse_json(&text).unwrap();
            prop_assert_eq!(&back, &p);
            prop_assert_eq!(back.to_json(), text);
        }
    }
}
