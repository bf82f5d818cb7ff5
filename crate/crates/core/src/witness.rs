//! Explicit maps between ground sets and their exhaustive checker.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::relation::{json_error, FinPair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessMode {
    Reduction,
    Embedding,
    Isomorphism,
}

impl fmt::Display for WitnessMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessMode::Reduction => "reduction",
            WitnessMode::Embedding => "embedding",
            WitnessMode::Isomorphism => "isomorphism",
        })
    }
}

/// A total function table `source index -> target index`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Witness {
    pub mode: WitnessMode,
    pub map: Vec<usize>,
}

impl Witness {
    pub fn new(mode: WitnessMode, map: Vec<usize>) -> Self {
        Self { mode, map }
    }

    /// `{"mode":"...","map":[...]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("witness serialization is infallible")
    }

    pub fn parse_json(text: &str) -> Result<Witness> {
        serde_json::from_str(text).map_err(json_error)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    /// `x E y` disagrees with `f(x) E' f(y)`.
    E { x: usize, y: usize },
    /// `x F y` disagrees with `f(x) F' f(y)`.
    F { x: usize, y: usize },
    /// `f(x) = f(y)` with `x ≠ y`.
    NotInjective { x: usize, y: usize },
    /// No source point maps to `y`.
    NotSurjective { y: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::E { x, y } => write!(f, "E mismatch at ({x}, {y})"),
            Violation::F { x, y } => write!(f, "F mismatch at ({x}, {y})"),
            Violation::NotInjective { x, y } => write!(f, "{x} and {y} have the same image"),
            Violation::NotSurjective { y } => write!(f, "{y} is not in the image"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub violations: Vec<Violation>,
}

impl Verification {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// True when `map` (already known to be in range) is a witness of `mode`.
/// Stops at the first failure.
pub fn is_witness(p1: &FinPair, p2: &FinPair, map: &[usize], mode: WitnessMode) -> bool {
    let injective = matches!(mode, WitnessMode::Embedding | WitnessMode::Isomorphism);
    for x in 0..map.len() {
        for y in x + 1..map.len() {
            let (fx, fy) = (map[x], map[y]);
            if p1.e().related(x, y) != p2.e().related(fx, fy)
                || p1.f().related(x, y) != p2.f().related(fx, fy)
                || (injective && fx == fy)
            {
                return false;
            }
        }
    }
    // An injection between equal-size sets is onto.
    mode != WitnessMode::Isomorphism || map.len() == p2.n()
}

/// Checks every pair `x < y` of source points against the definition of a
/// simultaneous reduction, plus injectivity or bijectivity as the mode asks.
pub fn verify_witness(p1: &FinPair, p2: &FinPair, w: &Witness) -> Result<Verification> {
    let map = &w.map;
    if map.len() != p1.n() {
        return Err(Error::WitnessLength {
            len: map.len(),
            n: p1.n(),
        });
    }
    if let Some((index, &value)) = map.iter().enumerate().find(|(_, &v)| v >= p2.n()) {
        return Err(Error::Range {
            index,
            value,
            n: p2.n(),
        });
    }
    let mut violations = Vec::new();
    let injective = matches!(w.mode, WitnessMode::Embedding | WitnessMode::Isomorphism);
    for x in 0..map.len() {
        for y in x + 1..map.len() {
            let (fx, fy) = (map[x], map[y]);
            if p1.e().related(x, y) != p2.e().related(fx, fy) {
                violations.push(Violation::E { x, y });
            }
            if p1.f().related(x, y) != p2.f().related(fx, fy) {
                violations.push(Violation::F { x, y });
            }
            if injective && fx == fy {
                violations.push(Violation::NotInjective { x, y });
            }
        }
    }
    if w.mode == WitnessMode::Isomorphism {
        let mut hit = vec![false; p2.n()];
        for &v in map {
            hit[v] = true;
        }
        violations.extend(
            hit.iter()
                .enumerate()
                .filter(|(_, &h)| !h)
                .map(|(y, _)| Violation::NotSurjective { y }),
        );
    }
    Ok(Verification { violations })
}
