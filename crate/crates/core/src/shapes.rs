//! Shape invariants of relations and pairs.
//!
//! A shape is a function on positions `1, 2, ..., ω` with cardinal values.
//! Only eventually-constant shapes are represented: an explicit prefix for
//! positions `1..=k`, one value for every finite position past `k`, and the
//! value at `ω`. The literal syntax is `<v1,...,vk|t;w>` with `inf` for ω.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cardinal::{Aleph0, Cardinal, Fin};
use crate::error::{Error, Result};
use crate::relation::{FinEqRel, FinPair};

/// A position in `{1, 2, ..., ω}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Position {
    Finite(u64),
    Omega,
}

/// Eventually-constant sequence indexed by `{1, ..., ω}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShapeSeq {
    prefix: Vec<Cardinal>,
    tail: Cardinal,
    omega: Cardinal,
}

impl ShapeSeq {
    pub fn new(mut prefix: Vec<Cardinal>, tail: Cardinal, omega: Cardinal) -> Self {
        while prefix.last() == Some(&tail) {
            prefix.pop();
        }
        Self {
            prefix,
            tail,
            omega,
        }
    }

    /// Finitely supported shape with the given prefix and zeros elsewhere.
    pub fn finite<I: IntoIterator<Item = u64>>(prefix: I) -> Self {
        Self::new(prefix.into_iter().map(Fin).collect(), Fin(0), Fin(0))
    }

    pub fn zero() -> Self {
        Self::finite([])
    }

    pub fn prefix(&self) -> &[Cardinal] {
        &self.prefix
    }

    pub fn tail(&self) -> Cardinal {
        self.tail
    }

    pub fn omega(&self) -> Cardinal {
        self.omega
    }

    /// Value at finite position `m` (1-based). Position 0 is not a position.
    pub fn at(&self, m: usize) -> Cardinal {
        assert!(m >= 1, "shape positions start at 1");
        self.prefix.get(m - 1).copied().unwrap_or(self.tail)
    }

    pub fn value(&self, pos: Position) -> Cardinal {
        match pos {
            Position::Finite(m) => self.at(m as usize),
            Position::Omega => self.omega,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.prefix.is_empty() && self.tail.is_zero() && self.omega.is_zero()
    }

    /// Nonzero only at finitely many positions, all with finite values.
    pub fn is_finitely_supported(&self) -> bool {
        self.tail.is_zero() && self.omega.is_zero() && self.prefix.iter().all(|v| v.is_finite())
    }

    fn values(&self) -> impl Iterator<Item = Cardinal> + '_ {
        self.prefix.iter().copied().chain([self.tail, self.omega])
    }

    /// Pointwise order at every finite position and at ω.
    pub fn leq(&self, other: &ShapeSeq) -> bool {
        let k = self.prefix.len().max(other.prefix.len());
        (1..=k).all(|m| self.at(m) <= other.at(m))
            && self.tail <= other.tail
            && self.omega <= other.omega
    }

    /// Weakly decreasing over the finite positions.
    pub fn is_weakly_decreasing(&self) -> bool {
        self.prefix.windows(2).all(|w| w[0] >= w[1])
            && self.prefix.last().is_none_or(|&v| v >= self.tail)
    }

    /// Parses `<v1,...,vk|t;w>`.
    pub fn parse_literal(text: &str) -> Result<ShapeSeq> {
        LiteralParser { text, pos: 0 }.parse()
    }
}

impl fmt::Display for ShapeSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, v) in self.prefix.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "|{};{}>", self.tail, self.omega)
    }
}

impl FromStr for ShapeSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ShapeSeq::parse_literal(s)
    }
}

impl Serialize for ShapeSeq {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ShapeSeq {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        ShapeSeq::parse_literal(&text).map_err(serde::de::Error::custom)
    }
}

struct LiteralParser<'a> {
    text: &'a str,
    pos: usize,
}

impl LiteralParser<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: 1,
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.text.as_bytes().get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    fn peek(&self) -> Option<u8> {
        self.text.as_bytes().get(self.pos).copied()
    }

    fn token(&mut self) -> Result<Cardinal> {
        let rest = &self.text[self.pos..];
        if rest.starts_with("inf") {
            self.pos += 3;
            return Ok(Aleph0);
        }
        let len = rest.bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.error("expected a nonnegative integer or 'inf'"));
        }
        let value = rest[..len]
            .parse::<u64>()
            .map_err(|e| self.error(e.to_string()))?;
        self.pos += len;
        Ok(Fin(value))
    }

    fn parse(mut self) -> Result<ShapeSeq> {
        self.expect(b'<')?;
        let mut prefix = Vec::new();
        if self.peek() != Some(b'|') {
            loop {
                prefix.push(self.token()?);
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    _ => break,
                }
            }
        }
        self.expect(b'|')?;
        let tail = self.token()?;
        self.expect(b';')?;
        let omega = self.token()?;
        self.expect(b'>')?;
        if self.pos != self.text.len() {
            return Err(self.error("trailing input"));
        }
        Ok(ShapeSeq::new(prefix, tail, omega))
    }
}

/// Local fine shape of an F-class: a nonzero shape with values in `{0..ω}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ShapeSeq", into = "ShapeSeq")]
pub struct LocalFineShape(ShapeSeq);

impl LocalFineShape {
    pub fn new(seq: ShapeSeq) -> Result<Self> {
        if seq.is_zero() || seq.values().any(|v| v > Aleph0) {
            return Err(Error::InvalidFineShape(seq.to_string()));
        }
        Ok(Self(seq))
    }

    pub fn seq(&self) -> &ShapeSeq {
        &self.0
    }
}

impl TryFrom<ShapeSeq> for LocalFineShape {
    type Error = Error;

    fn try_from(seq: ShapeSeq) -> Result<Self> {
        Self::new(seq)
    }
}

impl From<LocalFineShape> for ShapeSeq {
    fn from(s: LocalFineShape) -> Self {
        s.0
    }
}

impl fmt::Display for LocalFineShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Local coarse shape: a member of Sc.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ShapeSeq", into = "ShapeSeq")]
pub struct LocalCoarseShape(ShapeSeq);

impl LocalCoarseShape {
    pub fn new(seq: ShapeSeq) -> Result<Self> {
        if sc_member(&seq) {
            Ok(Self(seq))
        } else {
            Err(Error::NotInSc(seq.to_string()))
        }
    }

    pub fn seq(&self) -> &ShapeSeq {
        &self.0
    }

    pub fn leq(&self, other: &LocalCoarseShape) -> bool {
        self.0.leq(&other.0)
    }

    pub fn min_size(&self) -> Cardinal {
        min_size_unchecked(&self.0)
    }

    /// Inverse of [`fine_to_coarse`] for finitely supported shapes, using
    /// `n_m = n_{≥m} − n_{≥m+1}`. `None` when some class would be infinite.
    pub fn to_fine(&self) -> Option<LocalFineShape> {
        if !self.0.is_finitely_supported() {
            return None;
        }
        let p = &self.0.prefix;
        let fine = (0..p.len()).map(|i| {
            let here = p[i].as_finite().unwrap();
            let next = p.get(i + 1).map_or(0, |v| v.as_finite().unwrap());
            here - next
        });
        LocalFineShape::new(ShapeSeq::finite(fine)).ok()
    }
}

impl TryFrom<ShapeSeq> for LocalCoarseShape {
    type Error = Error;

    fn try_from(seq: ShapeSeq) -> Result<Self> {
        Self::new(seq)
    }
}

impl From<LocalCoarseShape> for ShapeSeq {
    fn from(s: LocalCoarseShape) -> Self {
        s.0
    }
}

impl fmt::Display for LocalCoarseShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Number of F-classes per realized local fine shape (nonzero counts only).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GlobalFineShape(BTreeMap<LocalFineShape, Cardinal>);

impl GlobalFineShape {
    pub fn entries(&self) -> &BTreeMap<LocalFineShape, Cardinal> {
        &self.0
    }

    pub fn count(&self, shape: &LocalFineShape) -> Cardinal {
        self.0.get(shape).copied().unwrap_or_default()
    }

    /// Total number of F-classes.
    pub fn total(&self) -> Cardinal {
        self.0.values().copied().sum()
    }
}

impl FromIterator<LocalFineShape> for GlobalFineShape {
    fn from_iter<I: IntoIterator<Item = LocalFineShape>>(iter: I) -> Self {
        let mut map = BTreeMap::new();
        for s in iter {
            let c = map.entry(s).or_insert(Fin(0));
            *c = *c + Fin(1);
        }
        Self(map)
    }
}

impl fmt::Display for GlobalFineShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k} -> {v}")?;
        }
        f.write_str("}")
    }
}

fn fine_from_sizes<I: IntoIterator<Item = usize>>(sizes: I) -> ShapeSeq {
    let mut counts: Vec<u64> = Vec::new();
    for s in sizes {
        if counts.len() < s {
            counts.resize(s, 0);
        }
        counts[s - 1] += 1;
    }
    ShapeSeq::finite(counts)
}

fn coarse_from_sizes<I: IntoIterator<Item = usize>>(sizes: I) -> ShapeSeq {
    let fine = fine_from_sizes(sizes);
    let mut acc = 0;
    let mut out: Vec<u64> = fine
        .prefix
        .iter()
        .rev()
        .map(|v| {
            acc += v.as_finite().unwrap();
            acc
        })
        .collect();
    out.reverse();
    ShapeSeq::finite(out)
}

/// Fine shape: position `m` counts blocks of size exactly `m`.
pub fn fs_of(r: &FinEqRel) -> ShapeSeq {
    fine_from_sizes(r.block_sizes())
}

/// Coarse shape: position `m` counts blocks of size at least `m`.
pub fn cs_of(r: &FinEqRel) -> ShapeSeq {
    coarse_from_sizes(r.block_sizes())
}

fn check_class(p: &FinPair, c: usize) -> Result<()> {
    if c < p.f().num_classes() {
        Ok(())
    } else {
        Err(Error::ClassIndexOutOfRange {
            index: c,
            classes: p.f().num_classes(),
        })
    }
}

/// Fine shape of `E` restricted to F-class `c`.
pub fn lfs_of_class(p: &FinPair, c: usize) -> Result<LocalFineShape> {
    check_class(p, c)?;
    LocalFineShape::new(fine_from_sizes(p.e_class_sizes_in(c)))
}

/// Coarse shape of `E` restricted to F-class `c`.
pub fn lcs_of_class(p: &FinPair, c: usize) -> Result<LocalCoarseShape> {
    check_class(p, c)?;
    LocalCoarseShape::new(coarse_from_sizes(p.e_class_sizes_in(c)))
}

/// Local coarse shapes of all F-classes in canonical class order.
pub fn lcs_all(p: &FinPair) -> Vec<LocalCoarseShape> {
    (0..p.f().num_classes())
        .map(|c| lcs_of_class(p, c).expect("class index in range"))
        .collect()
}

/// Local fine shapes of all F-classes in canonical class order.
pub fn lfs_all(p: &FinPair) -> Vec<LocalFineShape> {
    (0..p.f().num_classes())
        .map(|c| lfs_of_class(p, c).expect("class index in range"))
        .collect()
}

/// Coarse shape from fine shape: position `m` is the sum of all fine values
/// at positions `≥ m`, including ω.
pub fn fine_to_coarse(a: &LocalFineShape) -> LocalCoarseShape {
    let s = a.seq();
    let w = s.omega;
    let infinite_tail = !s.tail.is_zero();
    let mut prefix = Vec::with_capacity(s.prefix.len());
    let mut acc = w;
    for &v in s.prefix.iter().rev() {
        acc = acc + v;
        prefix.push(if infinite_tail { Aleph0 } else { acc });
    }
    prefix.reverse();
    let tail = if infinite_tail { Aleph0 } else { w };
    LocalCoarseShape::new(ShapeSeq::new(prefix, tail, w))
        .expect("coarse shape of a fine shape is realizable")
}

/// Coarse relative shape: position `m` counts F-classes with at least `m`
/// E-classes.
pub fn crs_of(p: &FinPair) -> ShapeSeq {
    coarse_from_sizes((0..p.f().num_classes()).map(|c| p.e_classes_in(c).len()))
}

/// Global fine shape: F-class counts per local fine shape.
pub fn gfs_of(p: &FinPair) -> GlobalFineShape {
    lfs_all(p).into_iter().collect()
}

pub fn shape_leq(a: &ShapeSeq, b: &ShapeSeq) -> bool {
    a.leq(b)
}

/// Membership in Sc, the realizable local coarse shapes: values in `{0..ω}`,
/// nonzero, weakly decreasing, and with ω-value equal to the eventual value
/// whenever that value is finite. Shapes that are ω at every finite position
/// may take any ω-value.
pub fn sc_member(s: &ShapeSeq) -> bool {
    if s.is_zero() || s.values().any(|v| v > Aleph0) || !s.is_weakly_decreasing() {
        return false;
    }
    s.tail == Aleph0 || s.omega == s.tail
}

fn min_size_unchecked(s: &ShapeSeq) -> Cardinal {
    Cardinal::sum_family(s.prefix.iter().copied(), !s.tail.is_zero())
}

/// Least size of a class realizing the local coarse shape `s`.
pub fn min_size(s: &ShapeSeq) -> Result<Cardinal> {
    if !sc_member(s) {
        return Err(Error::NotRealizable(s.to_string()));
    }
    Ok(min_size_unchecked(s))
}
