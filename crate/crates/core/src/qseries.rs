//! Truncated power series, the product `(1-x)(1-x^2)(1-x^3)...` and
//! Newton's identities on its coefficients.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::pentagonal::TermStream;

/// Power series truncated at `x^degree_cap`; always holds `degree_cap + 1` coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseSeries {
    coeffs: Vec<BigInt>,
}

impl DenseSeries {
    /// The zero series up to `x^degree_cap`.
    pub fn zero(degree_cap: usize) -> Self {
        DenseSeries {
            coeffs: vec![BigInt::zero(); degree_cap + 1],
        }
    }

    pub fn one(degree_cap: usize) -> Self {
        let mut s = DenseSeries::zero(degree_cap);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// Takes `coeffs` as `c_0, c_1, ...`; an empty vector becomes the zero constant.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        DenseSeries { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        DenseSeries::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `1 - x^k` up to `x^degree_cap`.
    pub fn one_minus_power(k: usize, degree_cap: usize) -> Self {
        let mut s = DenseSeries::one(degree_cap);
        if k <= degree_cap {
            s.coeffs[k] -= 1;
        }
        s
    }

    pub fn degree_cap(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^d`; zero past the cap.
    pub fn coeff(&self, d: usize) -> BigInt {
        self.coeffs.get(d).cloned().unwrap_or_default()
    }

    pub fn nonzero_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// One `degree,coefficient` line per nonzero coefficient.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (d, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let _ = writeln!(out, "{d},{c}");
            }
        }
        out
    }

    /// Re-truncates (or zero-pads) to a new cap.
    pub fn with_cap(&self, degree_cap: usize) -> Self {
        let mut coeffs: Vec<BigInt> = self.coeffs.iter().take(degree_cap + 1).cloned().collect();
        coeffs.resize(degree_cap + 1, BigInt::zero());
        DenseSeries { coeffs }
    }
}

/// Schoolbook product keeping degrees `<= cap`. Zero coefficients of `a` are
/// skipped, so a sparse left factor such as `1 - x^k` costs `O(cap)`.
pub fn multiply_truncated(a: &DenseSeries, b: &DenseSeries, cap: usize) -> DenseSeries {
    let mut out = DenseSeries::zero(cap);
    for (i, ai) in a.coeffs.iter().enumerate().take(cap + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.coeffs.iter().enumerate().take(cap + 1 - i) {
            if !bj.is_zero() {
                out.coeffs[i + j] += ai * bj;
            }
        }
    }
    out
}

/// `prod_{k=1}^{cap} (1 - x^k)` mod `x^{cap+1}`, one shift-and-subtract pass per factor.
pub fn euler_product(cap: usize) -> DenseSeries {
    let mut c = DenseSeries::one(cap).coeffs;
    for k in 1..=cap {
        for d in (k..=cap).rev() {
            if !c[d - k].is_zero() {
                let sub = c[d - k].clone();
                c[d] -= sub;
            }
        }
    }
    DenseSeries { coeffs: c }
}

/// The same product built by folding [`multiply_truncated`] over the factors.
pub fn euler_product_by_multiplication(cap: usize) -> DenseSeries {
    (1..=cap).fold(DenseSeries::one(cap), |acc, k| {
        multiply_truncated(&DenseSeries::one_minus_power(k, cap), &acc, cap)
    })
}

/// `1 + sum sign * x^value` over stream terms with `value <= cap`.
pub fn pentagonal_series(cap: usize) -> DenseSeries {
    let mut s = DenseSeries::zero(cap);
    for term in TermStream::with_zero() {
        let Some(d) = usize::try_from(&term.value).ok().filter(|&d| d <= cap) else {
            break;
        };
        s.coeffs[d] = BigInt::from(term.sign.as_i64());
    }
    s
}

fn check_newton_input(s: &DenseSeries, count: usize) -> Result<()> {
    if count == 0 {
        return Err(Error::Domain("need at least one symmetric function".into()));
    }
    if count > s.degree_cap() {
        return Err(Error::Domain(format!(
            "requested {count} terms from a series capped at degree {}",
            s.degree_cap()
        )));
    }
    if !s.coeffs[0].is_one() {
        return Err(Error::Domain("constant coefficient must be 1".into()));
    }
    Ok(())
}

/// `e_1..e_count` of the reciprocal roots: reading the series as
/// `prod (1 - x/root)`, `e_k = (-1)^k c_k`.
pub fn elementary_symmetric(s: &DenseSeries, count: usize) -> Result<Vec<BigInt>> {
    check_newton_input(s, count)?;
    Ok((1..=count)
        .map(|k| {
            let c = s.coeffs[k].clone();
            if k % 2 == 0 { c } else { -c }
        })
        .collect())
}

/// Power sums `p_1..p_count` of the reciprocal roots via Newton's identities
/// `p_k = e_1 p_{k-1} - e_2 p_{k-2} + ... + (-1)^{k-1} k e_k`.
pub fn power_sums(s: &DenseSeries, count: usize) -> Result<Vec<BigInt>> {
    let e = elementary_symmetric(s, count)?;
    let mut p: Vec<BigInt> = Vec::with_capacity(count);
    for k in 1..=count {
        let mut acc = BigInt::from(k) * &e[k - 1];
        if k % 2 == 0 {
            acc = -acc;
        }
        for j in 1..k {
            let t = &e[j - 1] * &p[k - j - 1];
            if j % 2 == 1 {
                acc += t;
            } else {
                acc -= t;
            }
        }
        p.push(acc);
    }
    Ok(p)
}
