//! Invariant-based decisions for simultaneous reduction (≤), embedding (⊑)
//! and isomorphism (≅) of finite pairs, each with an explicit witness.
//!
//! - `≤` holds iff `crs(P1) ≤ crs(P2)`.
//! - `⊑` holds iff the F-classes of `P1` have a system of distinct
//!   representatives among `P2`'s F-classes under lcs-domination.
//! - `≅` holds iff `gfs(P1) = gfs(P2)`.

mod matching;

use std::collections::BTreeMap;

pub use matching::{max_matching, BipartiteGraph, Matching};

use crate::error::{Error, Result};
use crate::relation::{FinEqRel, FinPair};
use crate::shapes::{crs_of, gfs_of, lcs_all, lfs_all, LocalFineShape};
pub use crate::witness::{verify_witness, Verification, Violation, Witness, WitnessMode};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Decision {
    fn no() -> Self {
        Self {
            holds: false,
            witness: None,
        }
    }

    fn yes(w: Witness) -> Self {
        Self {
            holds: true,
            witness: Some(w),
        }
    }
}

/// F-class indices sorted by E-class count, largest first; ties keep index
/// order.
fn classes_by_e_count(p: &FinPair) -> Vec<(usize, Vec<usize>)> {
    let mut classes: Vec<(usize, Vec<usize>)> = (0..p.f().num_classes())
        .map(|c| (c, p.e_classes_in(c)))
        .collect();
    classes.sort_by_key(|(_, es)| std::cmp::Reverse(es.len()));
    classes
}

/// Simultaneous reduction. The witness pairs the `i`-th fullest F-class of
/// `P1` with the `i`-th fullest of `P2`, sends the `j`-th E-class of the
/// source class to the `j`-th E-class of the target class, and maps every
/// point to the least element of its target E-class.
pub fn decide_reduction(p1: &FinPair, p2: &FinPair) -> Decision {
    if !crs_of(p1).leq(&crs_of(p2)) {
        return Decision::no();
    }
    let src = classes_by_e_count(p1);
    let tgt = classes_by_e_count(p2);
    let mut map = vec![0; p1.n()];
    for ((_, src_e), (_, tgt_e)) in src.iter().zip(&tgt) {
        debug_assert!(src_e.len() <= tgt_e.len());
        for (&a, &b) in src_e.iter().zip(tgt_e) {
            let rep = p2.e().block(b)[0];
            for &x in p1.e().block(a) {
                map[x] = rep;
            }
        }
    }
    Decision::yes(Witness::new(WitnessMode::Reduction, map))
}

/// Edge `(c, c')` iff `lcs(c) ≤ lcs(c')`.
pub fn compatibility_graph(p1: &FinPair, p2: &FinPair) -> BipartiteGraph {
    let left = lcs_all(p1);
    let right = lcs_all(p2);
    let mut g = BipartiteGraph::new(left.len(), right.len());
    for (u, a) in left.iter().enumerate() {
        for (v, b) in right.iter().enumerate() {
            if a.leq(b) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Whether a maximum matching of the compatibility graph covers every F-class
/// of `p1` (Hall's condition).
pub fn hall_saturates(p1: &FinPair, p2: &FinPair) -> bool {
    max_matching(&compatibility_graph(p1, p2)).saturates_left()
}

/// Simultaneous embedding via a Hall matching of F-classes followed by
/// [`align_embedding`].
pub fn decide_embedding(p1: &FinPair, p2: &FinPair) -> Decision {
    let m = max_matching(&compatibility_graph(p1, p2));
    if !m.saturates_left() {
        return Decision::no();
    }
    let class_map: Vec<usize> = m.pairs.into_iter().map(Option::unwrap).collect();
    let w = align_embedding(p1, p2, &class_map).expect("matched classes satisfy lcs domination");
    Decision::yes(w)
}

/// Simultaneous isomorphism: equal global fine shapes, classes paired off in
/// canonical order within each local fine shape.
pub fn decide_isomorphism(p1: &FinPair, p2: &FinPair) -> Decision {
    if p1.n() != p2.n() || gfs_of(p1) != gfs_of(p2) {
        return Decision::no();
    }
    let group = |p: &FinPair| {
        let mut groups: BTreeMap<LocalFineShape, Vec<usize>> = BTreeMap::new();
        for (c, s) in lfs_all(p).into_iter().enumerate() {
            groups.entry(s).or_default().push(c);
        }
        groups
    };
    let g2 = group(p2);
    let mut class_map = vec![0; p1.f().num_classes()];
    for (shape, cs) in group(p1) {
        for (&c, &d) in cs.iter().zip(&g2[&shape]) {
            class_map[c] = d;
        }
    }
    let map = align(p1, p2, &class_map).expect("equal local fine shapes align exactly");
    Decision::yes(Witness::new(WitnessMode::Isomorphism, map))
}

/// Point-level embedding along an injective F-class map whose pairs satisfy
/// `lcs(c) ≤ lcs(class_map[c])`.
///
/// Within each class, points are visited in ascending order. A point opening
/// a new E-class goes to an unused target E-class of least sufficient size
/// (least-indexed on ties); a point continuing an E-class goes to the
/// least-indexed unused element of the target E-class already chosen.
pub fn align_embedding(p1: &FinPair, p2: &FinPair, class_map: &[usize]) -> Result<Witness> {
    Ok(Witness::new(
        WitnessMode::Embedding,
        align(p1, p2, class_map)?,
    ))
}

fn align(p1: &FinPair, p2: &FinPair, class_map: &[usize]) -> Result<Vec<usize>> {
    let classes = p1.f().num_classes();
    if class_map.len() != classes {
        return Err(Error::ShapeMismatch(format!(
            "class map has {} entries for {classes} classes",
            class_map.len()
        )));
    }
    let mut taken = vec![false; p2.f().num_classes()];
    for &d in class_map {
        if d >= taken.len() {
            return Err(Error::ClassIndexOutOfRange {
                index: d,
                classes: taken.len(),
            });
        }
        if std::mem::replace(&mut taken[d], true) {
            return Err(Error::ShapeMismatch(format!(
                "target class {d} is used twice"
            )));
        }
    }
    let mut map = vec![0; p1.n()];
    for (c, &d) in class_map.iter().enumerate() {
        let targets: Vec<&[usize]> = p2
            .e_classes_in(d)
            .into_iter()
            .map(|i| p2.e().block(i))
            .collect();
        align_class(p1.f().block(c), p1.e(), &targets, &mut map)
            .map_err(|msg| Error::ShapeMismatch(format!("class {c} into class {d}: {msg}")))?;
    }
    Ok(map)
}

fn align_class(
    points: &[usize],
    e: &FinEqRel,
    targets: &[&[usize]],
    map: &mut [usize],
) -> std::result::Result<(), String> {
    let mut used = vec![false; targets.len()];
    let mut filled = vec![0usize; targets.len()];
    let mut chosen: BTreeMap<usize, usize> = BTreeMap::new();
    for &x in points {
        let src = e.class_of(x);
        let t = match chosen.get(&src) {
            Some(&t) => t,
            None => {
                let need = e.block(src).len();
                let t = (0..targets.len())
                    .filter(|&t| !used[t] && targets[t].len() >= need)
                    .min_by_key(|&t| (targets[t].len(), t))
                    .ok_or_else(|| format!("no free E-class of size >= {need}"))?;
                used[t] = true;
                chosen.insert(src, t);
                t
            }
        };
        map[x] = targets[t][filled[t]];
        filled[t] += 1;
    }
    Ok(())
}
