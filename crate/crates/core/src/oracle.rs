//! Exhaustive ground truth: search every candidate map and check it against
//! the definition. No shape theory is used here.

use crate::error::{Error, Result};
use crate::relation::{FinEqRel, FinPair};
use crate::witness::{is_witness, Witness, WitnessMode};

/// Default bound on the number of candidate maps.
pub const DEFAULT_CAP: u128 = 10_000_000;
/// Default bound on bijections searched by [`brute_isomorphism`] (8!).
pub const DEFAULT_ISO_CAP: u128 = 40_320;
/// Largest ground size [`enumerate_pairs`] accepts by default.
pub const DEFAULT_MAX_ENUM_N: usize = 6;

fn check_cap(size: u128, cap: u128) -> Result<()> {
    if size > cap {
        Err(Error::CapExceeded { size, cap })
    } else {
        Ok(())
    }
}

/// `n2^n1`, saturating.
pub fn function_count(n1: usize, n2: usize) -> u128 {
    (0..n1).fold(1u128, |acc, _| acc.saturating_mul(n2 as u128))
}

/// `n2 (n2-1) ... (n2-n1+1)`, saturating; zero when `n1 > n2`.
pub fn injection_count(n1: usize, n2: usize) -> u128 {
    if n1 > n2 {
        return 0;
    }
    (0..n1).fold(1u128, |acc, i| acc.saturating_mul((n2 - i) as u128))
}

/// First simultaneous reduction in lexicographic order, if any.
pub fn brute_reduction(p1: &FinPair, p2: &FinPair, cap: u128) -> Result<Option<Witness>> {
    let (n1, n2) = (p1.n(), p2.n());
    check_cap(function_count(n1, n2), cap)?;
    if n1 == 0 {
        return Ok(Some(Witness::new(WitnessMode::Reduction, vec![])));
    }
    if n2 == 0 {
        return Ok(None);
    }
    let mut map = vec![0usize; n1];
    loop {
        if is_witness(p1, p2, &map, WitnessMode::Reduction) {
            return Ok(Some(Witness::new(WitnessMode::Reduction, map)));
        }
        // Odometer increment, last digit fastest.
        let mut i = n1;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            map[i] += 1;
            if map[i] < n2 {
                break;
            }
            map[i] = 0;
        }
    }
}

fn first_injection(
    p1: &FinPair,
    p2: &FinPair,
    mode: WitnessMode,
    map: &mut Vec<usize>,
    used: &mut [bool],
) -> bool {
    if map.len() == p1.n() {
        return is_witness(p1, p2, map, mode);
    }
    for v in 0..p2.n() {
        if used[v] {
            continue;
        }
        used[v] = true;
        map.push(v);
        if first_injection(p1, p2, mode, map, used) {
            return true;
        }
        map.pop();
        used[v] = false;
    }
    false
}

fn brute_injective(p1: &FinPair, p2: &FinPair, mode: WitnessMode) -> Option<Witness> {
    let mut map = Vec::with_capacity(p1.n());
    let mut used = vec![false; p2.n()];
    first_injection(p1, p2, mode, &mut map, &mut used).then(|| Witness::new(mode, map))
}

/// First simultaneous embedding in lexicographic order, if any.
pub fn brute_embedding(p1: &FinPair, p2: &FinPair, cap: u128) -> Result<Option<Witness>> {
    if p1.n() > p2.n() {
        return Ok(None);
    }
    check_cap(injection_count(p1.n(), p2.n()), cap)?;
    Ok(brute_injective(p1, p2, WitnessMode::Embedding))
}

/// First simultaneous isomorphism in lexicographic order, if any.
pub fn brute_isomorphism(p1: &FinPair, p2: &FinPair, cap: u128) -> Result<Option<Witness>> {
    if p1.n() != p2.n() {
        return Ok(None);
    }
    check_cap(injection_count(p1.n(), p2.n()), cap)?;
    Ok(brute_injective(p1, p2, WitnessMode::Isomorphism))
}

/// All set partitions of `{0..n}` as restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for label in 0..=max {
            cur.push(label);
            go(i + 1, n, max.max(label + 1), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, 0, &mut Vec::new(), &mut out);
    out
}

/// Number of nested pairs on `n` labeled points: choose the F-block of the
/// first point, partition it freely, recurse on the rest.
pub fn pair_count(n: usize) -> u128 {
    let mut binom = vec![vec![0u128; n + 1]; n + 1];
    for i in 0..=n {
        binom[i][0] = 1;
        for j in 1..=i {
            binom[i][j] = binom[i - 1][j - 1] + binom[i - 1][j];
        }
    }
    let mut bell = vec![1u128; n + 1];
    for i in 1..=n {
        bell[i] = (0..i).map(|k| binom[i - 1][k] * bell[k]).sum();
    }
    let mut count = vec![1u128; n + 1];
    for i in 1..=n {
        count[i] = (1..=i)
            .map(|k| binom[i - 1][k - 1] * bell[k] * count[i - k])
            .sum();
    }
    count[n]
}

/// Every labeled pair `E ⊆ F` on `{0..n}`, each exactly once, in canonical
/// form. Fails when `n > max_n`.
pub fn enumerate_pairs(n: usize, max_n: usize) -> Result<Vec<FinPair>> {
    if n > max_n {
        return Err(Error::CapExceeded {
            size: pair_count(n),
            cap: pair_count(max_n),
        });
    }
    let sub: Vec<Vec<Vec<usize>>> = (0..=n).map(set_partitions).collect();
    let mut out = Vec::new();
    for f_labels in set_partitions(n) {
        let f = FinEqRel::from_labels(&f_labels);
        let blocks = f.blocks().to_vec();
        // Mixed-radix counter over one sub-partition choice per F-block.
        let mut choice = vec![0usize; blocks.len()];
        loop {
            let mut e_labels = vec![0usize; n];
            for (b, block) in blocks.iter().enumerate() {
                let rgs = &sub[block.len()][choice[b]];
                for (i, &x) in block.iter().enumerate() {
                    e_labels[x] = b * (n + 1) + rgs[i];
                }
            }
            out.push(FinPair::new(FinEqRel::from_labels(&e_labels), f.clone())?);
            let mut b = blocks.len();
            loop {
                if b == 0 {
                    break;
                }
                b -= 1;
                choice[b] += 1;
                if choice[b] < sub[blocks[b].len()].len() {
                    break;
                }
                choice[b] = 0;
            }
            if choice.iter().all(|&c| c == 0) {
                break;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::tests::{arb_pair, p_a, pair};
    use crate::witness::verify_witness;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn p_b() -> FinPair {
        pair(
            6,
            &[&[0], &[1], &[2], &[3, 4], &[5]],
            &[&[0, 1, 2], &[3, 4, 5]],
        )
    }
    fn p_c() -> FinPair {
        pair(3, &[&[0], &[1, 2]], &[&[0, 1, 2]])
    }
    fn p_d() -> FinPair {
        pair(
            6,
            &[&[0, 1], &[2], &[3, 4], &[5]],
            &[&[0, 1, 2], &[3, 4, 5]],
        )
    }
    fn p_e() -> FinPair {
        pair(5, &[&[0], &[1], &[2, 3], &[4]], &[&[0, 1], &[2, 3, 4]])
    }

    #[test]
    fn reduction_examples() {
        let w = brute_reduction(&p_a(), &p_b(), DEFAULT_CAP)
            .unwrap()
            .unwrap();
        assert!(verify_witness(&p_a(), &p_b(), &w).unwrap().ok());
        let w = brute_reduction(&p_a(), &p_a(), DEFAULT_CAP)
            .unwrap()
            .unwrap();
        assert!(verify_witness(&p_a(), &p_a(), &w).unwrap().ok());
        let di = FinPair::new(FinEqRel::discrete(2), FinEqRel::indiscrete(2)).unwrap();
        let one = FinPair::new(FinEqRel::discrete(1), FinEqRel::discrete(1)).unwrap();
        assert_eq!(brute_reduction(&di, &one, DEFAULT_CAP).unwrap(), None);
    }

    #[test]
    fn reduction_is_lexicographically_first() {
        // Δ(2) into Δ(2): [0,0] fails, [0,1] is first.
        let d = FinPair::new(FinEqRel::discrete(2), FinEqRel::discrete(2)).unwrap();
        let w = brute_reduction(&d, &d, DEFAULT_CAP).unwrap().unwrap();
        assert_eq!(w.map, vec![0, 1]);
    }

    #[test]
    fn embedding_examples() {
        assert!(brute_embedding(&p_c(), &p_b(), DEFAULT_CAP)
            .unwrap()
            .is_some());
        assert!(brute_embedding(&p_d(), &p_e(), DEFAULT_CAP)
            .unwrap()
            .is_none());
        // Pigeonhole short-circuit ignores the cap.
        assert!(brute_embedding(&p_a(), &p_c(), 0).unwrap().is_none());
    }

    #[test]
    fn isomorphism_examples() {
        let q = p_d().relabel(&[3, 4, 5, 0, 1, 2]);
        assert!(brute_isomorphism(&p_d(), &q, DEFAULT_ISO_CAP)
            .unwrap()
            .is_some());
        assert!(brute_isomorphism(&p_a(), &p_a(), DEFAULT_ISO_CAP)
            .unwrap()
            .is_some());
        assert!(brute_isomorphism(&p_a(), &p_c(), 0).unwrap().is_none());
    }

    #[test]
    fn caps() {
        assert!(matches!(
            brute_reduction(&p_a(), &p_b(), 1000),
            Err(Error::CapExceeded {
                size: 46656,
                cap: 1000
            })
        ));
        assert!(matches!(
            brute_embedding(&p_a(), &p_b(), 719),
            Err(Error::CapExceeded { size: 720, .. })
        ));
        assert!(matches!(
            brute_isomorphism(&p_a(), &p_a(), 100),
            Err(Error::CapExceeded { size: 720, .. })
        ));
    }

    #[test]
    fn enumeration_counts() {
        let expected = [1u128, 1, 3, 12, 60, 358, 2471];
        for (n, &want) in expected.iter().enumerate() {
            assert_eq!(pair_count(n), want);
            let pairs = enumerate_pairs(n, DEFAULT_MAX_ENUM_N).unwrap();
            assert_eq!(pairs.len() as u128, want, "n = {n}");
            let distinct: HashSet<_> = pairs.iter().collect();
            assert_eq!(distinct.len(), pairs.len());
        }
        assert!(matches!(
            enumerate_pairs(7, 6),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn enumeration_matches_refinement_filter() {
        // Independent count: all (E, F) partition pairs filtered by refinement.
        for n in 0..=4 {
            let parts: Vec<FinEqRel> = set_partitions(n)
                .iter()
                .map(|l| FinEqRel::from_labels(l))
                .collect();
            let brute = parts
                .iter()
                .flat_map(|e| parts.iter().map(move |f| (e, f)))
                .filter(|(e, f)| e.refines(f))
                .count();
            assert_eq!(enumerate_pairs(n, 6).unwrap().len(), brute);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn witnesses_verify_and_embedding_implies_reduction(p1 in arb_pair(5), p2 in arb_pair(5)) {
            let red = brute_reduction(&p1, &p2, DEFAULT_CAP).unwrap();
            let emb = brute_embedding(&p1, &p2, DEFAULT_CAP).unwrap();
            for w in red.iter().chain(emb.iter()) {
                prop_assert!(verify_witness(&p1, &p2, w).unwrap().ok());
            }
            if emb.is_some() {
                prop_assert!(red.is_some());
            }
        }

        #[test]
        fn answers_invariant_under_relabeling(p1 in arb_pair(5), p2 in arb_pair(5), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut s1: Vec<usize> = (0..p1.n()).collect();
            let mut s2: Vec<usize> = (0..p2.n()).collect();
            s1.shuffle(&mut rng);
            s2.shuffle(&mut rng);
            let (q1, q2) = (p1.relabel(&s1), p2.relabel(&s2));
            prop_assert_eq!(
                brute_reduction(&p1, &p2, DEFAULT_CAP).unwrap().is_some(),
                brute_reduction(&q1, &q2, DEFAULT_CAP).unwrap().is_some()
            );
            prop_assert_eq!(
                brute_embedding(&p1, &p2, DEFAULT_CAP).unwrap().is_some(),
                brute_embedding(&q1, &q2, DEFAULT_CAP).unwrap().is_some()
            );
            prop_assert_eq!(
                brute_isomorphism(&p1, &p2, DEFAULT_CAP).unwrap().is_some(),
                brute_isomorphism(&q1, &q2, DEFAULT_CAP).unwrap().is_some()
            );
        }
    }
}
