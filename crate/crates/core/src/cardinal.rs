//! Symbolic cardinals `{0, 1, 2, ...} ∪ {ℵ₀, ℵ₁, 𝔠}`.
//!
//! Every counting invariant takes values here. ℵ₁ sits strictly between ℵ₀
//! and 𝔠; ZFC does not decide this, so it is a fixed convention.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::Add;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cardinal {
    Fin(u64),
    Aleph0,
    Aleph1,
    Continuum,
}

pub use Cardinal::{Aleph0, Aleph1, Continuum, Fin};

impl Cardinal {
    pub const ZERO: Cardinal = Fin(0);
    pub const OMEGA: Cardinal = Aleph0;

    pub fn is_finite(self) -> bool {
        matches!(self, Fin(_))
    }

    pub fn is_zero(self) -> bool {
        self == Fin(0)
    }

    pub fn as_finite(self) -> Option<u64> {
        match self {
            Fin(n) => Some(n),
            _ => None,
        }
    }

    /// Sum of a possibly unbounded family given as finitely many listed
    /// terms. `infinitely_many_nonzero` flags that the family has infinitely
    /// many further nonzero terms, in which case the sum saturates at ℵ₀ (or
    /// stays at whatever larger cardinal the listed terms already reach).
    pub fn sum_family<I>(terms: I, infinitely_many_nonzero: bool) -> Cardinal
    where
        I: IntoIterator<Item = Cardinal>,
    {
        let s: Cardinal = terms.into_iter().sum();
        if infinitely_many_nonzero {
            s + Aleph0
        } else {
            s
        }
    }
}

impl Default for Cardinal {
    fn default() -> Self {
        Fin(0)
    }
}

impl From<u64> for Cardinal {
    fn from(n: u64) -> Self {
        Fin(n)
    }
}

impl From<usize> for Cardinal {
    fn from(n: usize) -> Self {
        Fin(n as u64)
    }
}

impl Add for Cardinal {
    type Output = Cardinal;

    fn add(self, rhs: Cardinal) -> Cardinal {
        match (self, rhs) {
            (Fin(a), Fin(b)) => Fin(a.checked_add(b).expect("finite cardinal overflow")),
            (a, b) => a.max(b),
        }
    }
}

impl Sum for Cardinal {
    fn sum<I: Iterator<Item = Cardinal>>(iter: I) -> Cardinal {
        iter.fold(Fin(0), Add::add)
    }
}

impl PartialEq<u64> for Cardinal {
    fn eq(&self, other: &u64) -> bool {
        *self == Fin(*other)
    }
}

impl PartialOrd<u64> for Cardinal {
    fn partial_cmp(&self, other: &u64) -> Option<Ordering> {
        Some(self.cmp(&Fin(*other)))
    }
}

impl fmt::Display for Cardinal {
    /// ℵ₀ prints as `inf`, matching the shape literal grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fin(n) => write!(f, "{n}"),
            Aleph0 => f.write_str("inf"),
            Aleph1 => f.write_str("aleph1"),
            Continuum => f.write_str("c"),
        }
    }
}
