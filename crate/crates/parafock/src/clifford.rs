//! The real Clifford algebra on `p ≤ 64` anticommuting generators with
//! `e_α e_β + e_β e_α = 2δ_{αβ}` (so each `e_α` squares to one).
//!
//! Because generators square to `+1`, every product of generators reduces to
//! `±e^η` for a parity vector `η ∈ {0,1}^p`, stored as a bitmask. The sign of
//! a reduction is the parity of the inversion number of the generator word:
//! sorting a word by adjacent swaps flips the sign once per swap of distinct
//! generators, and equal generators cancel in pairs without a sign.

use crate::error::{Error, Result};
use crate::tableau::Filled;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A signed Clifford monomial `±e^η` of order `p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CliffordMonomial {
    p: usize,
    sign: i8,
    bits: u64,
}

impl CliffordMonomial {
    pub fn identity(p: usize) -> Result<Self> {
        check_order(p)?;
        Ok(Self {
            p,
            sign: 1,
            bits: 0,
        })
    }

    pub fn from_parts(p: usize, sign: i8, bits: u64) -> Result<Self> {
        check_order(p)?;
        if sign != 1 && sign != -1 {
            return Err(Error::Parse(format!("sign must be ±1, got {sign}")));
        }
        if p < 64 && bits >> p != 0 {
            return Err(Error::IndexOutOfRange {
                what: "Clifford generator",
                value: 64 - bits.leading_zeros() as usize,
                max: p,
            });
        }
        Ok(Self { p, sign, bits })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// Parity bitmask: bit `α−1` set means `e_α` occurs.
    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Parity vector `η` as 0/1 entries indexed by generator.
    pub fn parity(&self) -> Vec<u8> {
        (0..self.p).map(|a| ((self.bits >> a) & 1) as u8).collect()
    }

    /// Grade `|η|`: number of generators present.
    pub fn grade(&self) -> u32 {
        self.bits.count_ones()
    }
}

impl fmt::Display for CliffordMonomial {
    /// Textual form `±e1*e3`; the identity prints as `+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if self.sign >= 0 { "+" } else { "-" })?;
        if self.bits == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for a in 1..=self.p {
            if (self.bits >> (a - 1)) & 1 == 1 {
                if !first {
                    write!(f, "*")?;
                }
                write!(f, "e{a}")?;
                first = false;
            }
        }
        Ok(())
    }
}

impl Serialize for CliffordMonomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            sign: i8,
            parity: Vec<u8>,
        }
        Repr {
            sign: self.sign,
            parity: self.parity(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CliffordMonomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            sign: i8,
            parity: Vec<u8>,
        }
        let r = Repr::deserialize(d)?;
        let p = r.parity.len();
        let mut bits = 0u64;
        for (a, &v) in r.parity.iter().enumerate() {
            if v > 1 {
                return Err(serde::de::Error::custom("parity entries are 0/1"));
            }
            bits |= (v as u64) << a;
        }
        CliffordMonomial::from_parts(p, r.sign, bits).map_err(serde::de::Error::custom)
    }
}

fn check_order(p: usize) -> Result<()> {
    if p > 64 {
        return Err(Error::UnsupportedOrder(p));
    }
    Ok(())
}

fn check_generator(p: usize, alpha: u32) -> Result<()> {
    if alpha < 1 || alpha as usize > p {
        return Err(Error::IndexOutOfRange {
            what: "Clifford generator",
            value: alpha as usize,
            max: p,
        });
    }
    Ok(())
}

/// Reduces a word of generator indices to its normal form `±e^η`.
///
/// The sign is `(−1)^{inv}` where `inv` counts pairs appearing out of order
/// (strictly larger generator first); equal generators never contribute.
pub fn normalize_word(p: usize, word: &[u32]) -> Result<CliffordMonomial> {
    check_order(p)?;
    let mut bits = 0u64;
    let mut inversions = 0u64;
    for (i, &a) in word.iter().enumerate() {
        check_generator(p, a)?;
        inversions += word[..i].iter().filter(|&&b| b > a).count() as u64;
        bits ^= 1 << (a - 1);
    }
    Ok(CliffordMonomial {
        p,
        sign: if inversions.is_multiple_of(2) { 1 } else { -1 },
        bits,
    })
}

/// Product of two normal forms, again in normal form.
///
/// Concatenating sorted words, each generator of `a` must pass over every
/// strictly smaller generator of `b`, so the extra sign is a popcount of
/// `b`'s bits below each generator of `a`.
pub fn mul(a: &CliffordMonomial, b: &CliffordMonomial) -> Result<CliffordMonomial> {
    if a.p != b.p {
        return Err(Error::DimensionMismatch(format!(
            "Clifford orders differ: {} vs {}",
            a.p, b.p
        )));
    }
    let mut swaps = 0u32;
    let mut rest = a.bits;
    while rest != 0 {
        let alpha = rest.trailing_zeros();
        swaps += (b.bits & low_mask(alpha)).count_ones();
        rest &= rest - 1;
    }
    let sign = a.sign * b.sign * if swaps.is_multiple_of(2) { 1 } else { -1 };
    Ok(CliffordMonomial {
        p: a.p,
        sign,
        bits: a.bits ^ b.bits,
    })
}

/// Bits strictly below position `pos` (0-based).
#[inline]
pub(crate) fn low_mask(pos: u32) -> u64 {
    (1u64 << pos) - 1
}

/// Left multiplication `e_α · (±e^η)`: the generator passes over every
/// smaller generator present in `η`. Returns the sign factor and new parity.
#[inline]
pub(crate) fn left_mul_generator(bits: u64, alpha: u32) -> (i8, u64) {
    let swaps = (bits & low_mask(alpha - 1)).count_ones();
    (
        if swaps.is_multiple_of(2) { 1 } else { -1 },
        bits ^ (1 << (alpha - 1)),
    )
}

/// Sign `(−1)^{N(T)}` of a filled tableau: the inversion number of its
/// column reading word (rightmost column first, top to bottom inside a
/// column). This is exactly the sign of [`normalize_word`] on that word.
pub fn tableau_sign(t: &Filled) -> i8 {
    let word = t.column_reading_word();
    let mut inversions = 0u64;
    for (i, &a) in word.iter().enumerate() {
        inversions += word[..i].iter().filter(|&&b| b > a).count() as u64;
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}
