//! Integer partitions, weight vectors and the graded lexicographic order.
//!
//! Partitions index shapes of Young diagrams; weight vectors count box
//! entries by color. Both orders here are *graded*: sizes compare first,
//! ties break lexicographically (partitions are zero-padded on the right).

use crate::error::{Error, Result};
use crate::scalar::{factorial, Scalar};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;

/// A partition: weakly decreasing positive parts. The empty partition is `[]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition after validating that parts decrease weakly and are positive.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::InvalidPartition(format!(
                    "parts must decrease weakly, got {} before {}",
                    w[0], w[1]
                )));
            }
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("zero part".into()));
        }
        Ok(Self { parts })
    }

    /// Builds a partition from weakly decreasing data that may carry trailing zeros.
    pub fn from_padded(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Self::new(parts)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of (nonzero) rows, `ℓ(λ)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of boxes, `|λ|`.
    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&x| x as u64).sum()
    }

    /// The `j`-th part (1-based), zero beyond the last row.
    pub fn part(&self, j: usize) -> u32 {
        if j >= 1 && j <= self.parts.len() {
            self.parts[j - 1]
        } else {
            0
        }
    }

    /// Length of the first row (number of columns), zero for the empty shape.
    pub fn width(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// The conjugate partition `λ'` (column lengths).
    pub fn conjugate(&self) -> Partition {
        let width = self.width() as usize;
        let mut cols = vec![0u32; width];
        for &row in &self.parts {
            for c in cols.iter_mut().take(row as usize) {
                *c += 1;
            }
        }
        Partition { parts: cols }
    }

    /// Whether `other` fits inside `self` row by row.
    pub fn contains(&self, other: &Partition) -> bool {
        other
            .parts
            .iter()
            .enumerate()
            .all(|(idx, &x)| x <= self.part(idx + 1))
    }

    /// The column factorial `λ! = λ'_1! λ'_2! ⋯` (product over column heights).
    pub fn column_factorial<T: Scalar>(&self) -> T {
        self.conjugate()
            .parts()
            .iter()
            .fold(T::one(), |acc, &h| acc * factorial::<T>(h as usize))
    }

    /// Box coordinates `(k, l)` (row, column), 1-based, row-major.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (1..=len as usize).map(move |l| (r + 1, l)))
    }

    /// Graded lexicographic comparison: by `|λ|`, then parts left to right
    /// (zero-padded, so prefixes never tie with strict extensions).
    pub fn graded_lex_cmp(&self, other: &Partition) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.parts.cmp(&other.parts))
    }

    pub fn graded_lex_less(&self, other: &Partition) -> bool {
        self.graded_lex_cmp(other) == Ordering::Less
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// Graded lexicographic "less than" on fixed-length tuples of naturals:
/// compare coordinate sums first, then entries left to right.
pub fn graded_lex_less(a: &[u32], b: &[u32]) -> Result<bool> {
    Ok(graded_lex_cmp(a, b)? == Ordering::Less)
}

/// Graded lexicographic comparison on fixed-length tuples of naturals.
pub fn graded_lex_cmp(a: &[u32], b: &[u32]) -> Result<Ordering> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "graded lex needs equal lengths, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    let sa: u64 = a.iter().map(|&x| x as u64).sum();
    let sb: u64 = b.iter().map(|&x| x as u64).sum();
    Ok(sa.cmp(&sb).then_with(|| a.cmp(b)))
}

/// A weight: entry counts per color `1..=n`. Length fixes `n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector {
    entries: Vec<u32>,
}

impl WeightVector {
    pub fn new(entries: Vec<u32>) -> Self {
        Self { entries }
    }

    pub fn zero(n: usize) -> Self {
        Self {
            entries: vec![0; n],
        }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Number of colors `n`.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Multiplicity of color `i` (1-based).
    pub fn entry(&self, i: usize) -> u32 {
        self.entries[i - 1]
    }

    /// Total degree `|μ|`.
    pub fn total(&self) -> u64 {
        self.entries.iter().map(|&x| x as u64).sum()
    }

    /// `μ + ε_i` (1-based `i`).
    pub fn raised(&self, i: usize) -> Result<WeightVector> {
        self.check_index(i)?;
        let mut entries = self.entries.clone();
        entries[i - 1] += 1;
        Ok(WeightVector { entries })
    }

    /// `μ − ε_i`, or `None` when the entry is already zero.
    pub fn lowered(&self, i: usize) -> Result<Option<WeightVector>> {
        self.check_index(i)?;
        if self.entries[i - 1] == 0 {
            return Ok(None);
        }
        let mut entries = self.entries.clone();
        entries[i - 1] -= 1;
        Ok(Some(WeightVector { entries }))
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < 1 || i > self.entries.len() {
            return Err(Error::IndexOutOfRange {
                what: "color index",
                value: i,
                max: self.entries.len(),
            });
        }
        Ok(())
    }

    pub fn graded_lex_cmp(&self, other: &WeightVector) -> Result<Ordering> {
        graded_lex_cmp(&self.entries, &other.entries)
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `size` with at most `max_rows` rows, in graded lex order.
pub fn partitions_of(size: u32, max_rows: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(
        remaining: u32,
        max_part: u32,
        rows_left: usize,
        current: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        if remaining == 0 {
            out.push(Partition {
                parts: current.clone(),
            });
            return;
        }
        if rows_left == 0 {
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            current.push(part);
            rec(remaining - part, part, rows_left - 1, current, out);
            current.pop();
        }
    }
    rec(size, size.max(1), max_rows, &mut current, &mut out);
    out.sort_by(|a, b| a.graded_lex_cmp(b));
    out
}

/// All weight vectors of length `n` with total degree exactly `total`.
pub fn weights_of_total(n: usize, total: u32) -> Vec<WeightVector> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    fn rec(pos: usize, remaining: u32, current: &mut Vec<u32>, out: &mut Vec<WeightVector>) {
        if pos + 1 == current.len() {
            current[pos] = remaining;
            out.push(WeightVector::new(current.clone()));
            return;
        }
        for v in 0..=remaining {
            current[pos] = v;
            rec(pos + 1, remaining - v, current, out);
        }
    }
    if n == 0 {
        if total == 0 {
            out.push(WeightVector::new(vec![]));
        }
        return out;
    }
    rec(0, total, &mut current, &mut out);
    out
}
