//! Generalized pentagonal numbers and the signed term stream of
//! `1 - x - x^2 + x^5 + x^7 - x^12 - x^15 + ...`.

use std::fmt;
use std::ops::Neg;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Which of the two quadratic forms produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `(3k^2 - k)/2`: 0, 1, 5, 12, 22, ...
    Minus,
    /// `(3k^2 + k)/2`: 0, 2, 7, 15, 26, ...
    Plus,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Minus => "minus",
            Branch::Plus => "plus",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^k`.
    pub fn alternating(k: u64) -> Self {
        if k.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Minus
    }

    /// Multiplies a big integer by this sign.
    pub fn apply(self, value: BigInt) -> BigInt {
        match self {
            Sign::Plus => value,
            Sign::Minus => -value,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// One signed term `sign * x^value` of the pentagonal series.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PentagonalTerm {
    pub k: u64,
    pub branch: Branch,
    pub value: BigUint,
    pub sign: Sign,
}

impl PentagonalTerm {
    pub fn new(k: u64, branch: Branch) -> Self {
        PentagonalTerm {
            k,
            branch,
            value: pentagonal(k, branch),
            sign: Sign::alternating(k),
        }
    }

    /// The term sitting at stream position `p`; position 0 is the constant.
    pub fn at_position(p: u64) -> Self {
        if p == 0 {
            return PentagonalTerm::new(0, Branch::Minus);
        }
        let k = p.div_ceil(2);
        let branch = if p % 2 == 1 { Branch::Minus } else { Branch::Plus };
        PentagonalTerm::new(k, branch)
    }

    /// `value mod m`, without materializing a big remainder.
    pub fn residue(&self, m: u64) -> u64 {
        (&self.value % m).to_u64().expect("remainder below a u64 modulus")
    }
}

/// `(3k^2 - k)/2` or `(3k^2 + k)/2`, exact.
pub fn pentagonal(k: u64, branch: Branch) -> BigUint {
    let k = BigUint::from(k);
    let three_k_sq = BigUint::from(3u32) * &k * &k;
    let twice = match branch {
        Branch::Minus => three_k_sq - &k,
        Branch::Plus => three_k_sq + &k,
    };
    twice >> 1
}

/// Infinite iterator over the term stream in increasing value order.
///
/// Position 0 is the constant term (`k = 0`); position `p >= 1` has
/// `k = ceil(p/2)` on the `Minus` branch when `p` is odd, `Plus` otherwise.
#[derive(Debug, Clone)]
pub struct TermStream {
    position: u64,
}

impl TermStream {
    /// Stream starting at the constant term.
    pub fn with_zero() -> Self {
        TermStream { position: 0 }
    }

    /// Stream starting at `x^1`, the form the recurrence consumes.
    pub fn without_zero() -> Self {
        TermStream { position: 1 }
    }
}

impl Iterator for TermStream {
    type Item = PentagonalTerm;

    fn next(&mut self) -> Option<PentagonalTerm> {
        let term = PentagonalTerm::at_position(self.position);
        self.position += 1;
        Some(term)
    }
}

/// The first `count` terms of the stream, optionally led by the constant.
pub fn term_stream(count: usize, include_zero: bool) -> Result<Vec<PentagonalTerm>> {
    if count == 0 {
        return Err(Error::Domain("term_stream needs count >= 1".into()));
    }
    let stream = if include_zero {
        TermStream::with_zero()
    } else {
        TermStream::without_zero()
    };
    Ok(stream.take(count).collect())
}

/// Successor-minus-predecessor.
pub fn differences(seq: &[BigInt]) -> Result<Vec<BigInt>> {
    if seq.len() < 2 {
        return Err(Error::Domain(format!(
            "differences need at least 2 terms, got {}",
            seq.len()
        )));
    }
    Ok(seq.windows(2).map(|w| &w[1] - &w[0]).collect())
}

/// Merged pentagonal values with a third of a triangular number slotted in
/// after every second entry: `1, 2, 10/3, 5, 7, 28/3, 12, ...`.
///
/// Entry `j` (1-based) is `T(j+1)/3` with `T(t) = t(t+1)/2`, so every third
/// entry is a fraction and the others are the pentagonal numbers.
pub fn interpolated_sequence(count: usize) -> Result<Vec<BigRational>> {
    if count == 0 {
        return Err(Error::Domain("interpolated_sequence needs count >= 1".into()));
    }
    let three = BigInt::from(3);
    Ok((1..=count as u64)
        .map(|j| {
            let t = BigInt::from(j + 1);
            let triangular = &t * (&t + BigInt::one()) / 2;
            BigRational::new(triangular, three.clone())
        })
        .collect())
}

/// Inverts [`pentagonal`]: `24v + 1` must be `(6k -/+ 1)^2`.
///
/// `0` reports `(0, Minus)`.
pub fn is_pentagonal(v: &BigUint) -> Option<(u64, Branch)> {
    if v.is_zero() {
        return Some((0, Branch::Minus));
    }
    let disc = v * 24u32 + 1u32;
    let root = disc.sqrt();
    if &root * &root != disc {
        return None;
    }
    let k_for = |r: BigUint| r.to_u64();
    match (&root % 6u32).to_u32()? {
        5 => k_for((root + 1u32) / 6u32).map(|k| (k, Branch::Minus)),
        1 => k_for((root - 1u32) / 6u32).map(|k| (k, Branch::Plus)),
        _ => None,
    }
}
