use std::fmt;
use std::fs;
use std::io;
use std::path::Path;

use rayon::prelude::*;
use serde_json::json;
use simpair_core::oracle::enumerate_pairs;
use simpair_core::{random_pair, verify_witness, FinPair, Profile};

use crate::{Caps, Failure, Relation};

#[derive(Debug, Clone)]
pub struct Disagreement {
    pub relation: Relation,
    pub a: FinPair,
    pub b: FinPair,
    pub reason: String,
}

#[derive(Debug, Default)]
pub struct Report {
    pub exhaustive: usize,
    pub random: usize,
    /// Per relation, in the order red, emb, iso.
    pub agreed: [usize; 3],
    pub holds: [usize; 3],
    pub disagreements: Vec<Disagreement>,
}

impl Report {
    fn merge(mut self, other: Report) -> Report {
        self.exhaustive += other.exhaustive;
        self.random += other.random;
        for i in 0..3 {
            self.agreed[i] += other.agreed[i];
            self.holds[i] += other.holds[i];
        }
        self.disagreements.extend(other.disagreements);
        self
    }

    pub fn to_json(&self) -> String {
        let per = |i: usize| json!({ "agreed": self.agreed[i], "holds": self.holds[i] });
        json!({
            "exhaustive": self.exhaustive,
            "random": self.random,
            "reduction": per(0),
            "embedding": per(1),
            "isomorphism": per(2),
            "disagreements": self.disagreements.len(),
        })
        .to_string()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "exhaustive={} random={}", self.exhaustive, self.random)?;
        for (i, r) in Relation::ALL.iter().enumerate() {
            writeln!(
                f,
                "{} agreed={} holds={}",
                r.mode(),
                self.agreed[i],
                self.holds[i]
            )?;
        }
        writeln!(f, "disagreements={}", self.disagreements.len())?;
        for d in &self.disagreements {
            writeln!(
                f,
                "  {} {} {}: {}",
                d.relation.mode(),
                d.a.to_json(),
                d.b.to_json(),
                d.reason
            )?;
        }
        Ok(())
    }
}

fn check(a: &FinPair, b: &FinPair, caps: Caps) -> Result<Report, Failure> {
    let mut report = Report::default();
    for (i, relation) in Relation::ALL.into_iter().enumerate() {
        let decision = relation.decide(a, b);
        let found = relation.oracle(a, b, caps)?;
        let mut reasons = Vec::new();
        if decision.holds != found.is_some() {
            reasons.push(format!(
                "decider {} vs oracle {}",
                decision.holds,
                found.is_some()
            ));
        }
        for (who, w) in [("decider", &decision.witness), ("oracle", &found)] {
            if let Some(w) = w {
                if !verify_witness(a, b, w)?.ok() {
                    reasons.push(format!("{who} witness {:?} is invalid", w.map));
                }
            }
        }
        if reasons.is_empty() {
            report.agreed[i] += 1;
            report.holds[i] += usize::from(decision.holds);
        } else {
            report.disagreements.push(Disagreement {
                relation,
                a: a.clone(),
                b: b.clone(),
                reason: reasons.join("; "),
            });
        }
    }
    Ok(report)
}

/// Every ordered pair of pairs on at most `n_max` points, then `count`
/// random ordered pairs on `n_max + 1` or `n_max + 2` points.
pub fn run(n_max: usize, seed: u64, count: usize, caps: Caps) -> Result<Report, Failure> {
    let universe = (0..=n_max)
        .map(|n| enumerate_pairs(n, n_max))
        .collect::<simpair_core::Result<Vec<_>>>()?
        .concat();
    let exhaustive = (0..universe.len() * universe.len())
        .into_par_iter()
        .map(|k| {
            let (a, b) = (&universe[k / universe.len()], &universe[k % universe.len()]);
            check(a, b, caps).map(|r| Report { exhaustive: 1, ..r })
        })
        .try_reduce(Report::default, |x, y| Ok(x.merge(y)))?;

    let random = (0..count)
        .into_par_iter()
        .map(|i| {
            let profile = if i % 2 == 0 {
                Profile::UniformRefinement
            } else {
                Profile::ShapeTargeted
            };
            let s = seed.wrapping_add(2 * i as u64);
            let a = random_pair(s, n_max + 1 + i % 2, profile);
            let b = random_pair(s.wrapping_add(1), n_max + 1 + (i / 2) % 2, profile);
            check(&a, &b, caps).map(|r| Report { random: 1, ..r })
        })
        .try_reduce(Report::default, |x, y| Ok(x.merge(y)))?;

    let mut report = exhaustive.merge(random);
    report
        .disagreements
        .sort_by_cached_key(|d| (d.relation as u8, d.a.to_json(), d.b.to_json()));
    Ok(report)
}

/// Writes `<k>-a.json`, `<k>-b.json` and `<k>-info.txt` per disagreement.
pub fn write_reproducers(dir: &Path, disagreements: &[Disagreement]) -> io::Result<usize> {
    fs::create_dir_all(dir)?;
    for (k, d) in disagreements.iter().enumerate() {
        fs::write(dir.join(format!("{k}-a.json")), d.a.to_json() + "\n")?;
        fs::write(dir.join(format!("{k}-b.json")), d.b.to_json() + "\n")?;
        fs::write(
            dir.join(format!("{k}-info.txt")),
            format!("relation={}\n{}\n", d.relation.mode(), d.reason),
        )?;
    }
    Ok(3 * disagreements.len())
}
