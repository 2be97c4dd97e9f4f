//! Summing the divergent series attached to the pentagonal stream.
//!
//! Exact route: an alternating series `A - B + C - ...` whose terms form a
//! polynomial sequence is assigned
//! `A/2 - a/4 + a'/8 - a''/16 + ...` from the leading entries of its forward
//! difference rows. The table terminates, so the value is an exact rational.
//!
//! Numeric route: `sum sign * g^λ * x^g` evaluated at `x = ρ α^i` with
//! `0 < ρ < 1`, watching the value as `ρ -> 1`.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::pentagonal::{differences, pentagonal, Branch, TermStream};

pub type Rational = BigRational;

/// Row 0 is the input; row `d + 1` holds the forward differences of row `d`.
/// The last row is the first all-zero row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceTable {
    rows: Vec<Vec<BigInt>>,
}

impl DifferenceTable {
    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// `A, a, a', a'', ...`
    pub fn leading_entries(&self) -> Vec<&BigInt> {
        self.rows.iter().map(|r| &r[0]).collect()
    }
}

fn all_zero(row: &[BigInt]) -> bool {
    row.iter().all(Zero::is_zero)
}

/// Differences `seq` until a row vanishes, using at most `depth_limit`
/// difference rows.
pub fn difference_table(seq: &[BigInt], depth_limit: usize) -> Result<DifferenceTable> {
    if seq.is_empty() {
        return Err(Error::Domain("difference table of an empty sequence".into()));
    }
    let mut rows = vec![seq.to_vec()];
    while !all_zero(rows.last().expect("nonempty")) {
        let last = rows.last().expect("nonempty");
        if rows.len() > depth_limit || last.len() < 2 {
            return Err(Error::NonPolynomial {
                depth: rows.len() - 1,
            });
        }
        let next = differences(last)?;
        rows.push(next);
    }
    Ok(DifferenceTable { rows })
}

/// `A/2 - a/4 + a'/8 - ...` for the series `seq[0] - seq[1] + seq[2] - ...`.
pub fn euler_sum_alternating(seq: &[BigInt]) -> Result<Rational> {
    let table = difference_table(seq, seq.len())?;
    Ok(euler_sum_from_table(&table))
}

pub(crate) fn euler_sum_from_table(table: &DifferenceTable) -> Rational {
    let mut sum = Rational::zero();
    let mut denom = BigInt::from(2);
    for (d, lead) in table.leading_entries().into_iter().enumerate() {
        let term = Rational::new(lead.clone(), denom.clone());
        if d % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        denom *= 2;
    }
    sum
}

/// Both branch sums of `-1^λ - 2^λ + 5^λ + 7^λ - 12^λ - ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSum {
    pub lambda: u32,
    /// `-1^λ + 5^λ - 12^λ + 22^λ - ...` (minus branch).
    pub s: Rational,
    /// `-2^λ + 7^λ - 15^λ + 26^λ - ...` (plus branch).
    pub t: Rational,
    /// `s + t`, plus 1 for the constant term when `λ = 0`.
    pub total: Rational,
    /// Differences of `1^λ, 5^λ, 12^λ, ...`.
    pub minus_table: DifferenceTable,
    /// Differences of `2^λ, 7^λ, 15^λ, ...`.
    pub plus_table: DifferenceTable,
}

fn branch_powers(branch: Branch, lambda: u32, count: u64) -> Vec<BigInt> {
    (1..=count)
        .map(|k| BigInt::from(pentagonal(k, branch)).pow(lambda))
        .collect()
}

/// Splits the λ-power series into its two strictly alternating branches and
/// sums each exactly. Branch values are quadratic in `k`, so `2λ + 3` terms
/// always reach the zero row.
pub fn pentagonal_power_sum(lambda: u32) -> Result<PowerSum> {
    let count = 2 * lambda as u64 + 3;
    let minus = branch_powers(Branch::Minus, lambda, count);
    let plus = branch_powers(Branch::Plus, lambda, count);
    let minus_table = difference_table(&minus, minus.len())?;
    let plus_table = difference_table(&plus, plus.len())?;
    // the branch series lead with a minus sign: -(A - B + C - ...)
    let s = -euler_sum_from_table(&minus_table);
    let t = -euler_sum_from_table(&plus_table);
    let mut total = &s + &t;
    if lambda == 0 {
        total += Rational::one();
    }
    Ok(PowerSum {
        lambda,
        s,
        t,
        total,
        minus_table,
        plus_table,
    })
}

/// Exponent-cap configuration for the damped sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbelConfig {
    /// The tail bound must fall below `tolerance / tail_divisor`.
    pub tail_divisor: f64,
    /// Largest exponent cap the evaluator accepts.
    pub hard_cap: u64,
}

impl Default for AbelConfig {
    fn default() -> Self {
        AbelConfig {
            tail_divisor: 10.0,
            hard_cap: 1_000_000,
        }
    }
}

fn check_abel_args(rho: f64, tolerance: f64) -> Result<()> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::Domain(format!("rho must lie in (0, 1), got {rho}")));
    }
    if !(tolerance > 0.0 && tolerance.is_finite()) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tolerance}")));
    }
    Ok(())
}

/// Smallest cap `M` past the peak of `M^λ ρ^M` with
/// `M^λ ρ^M / (1 - ρ) < tolerance / tail_divisor`.
pub fn exponent_cap(lambda: u32, rho: f64, tolerance: f64, config: &AbelConfig) -> Result<u64> {
    check_abel_args(rho, tolerance)?;
    let ln_rho = rho.ln();
    let target = (tolerance / config.tail_divisor).ln();
    let log_bound = |m: u64| -> f64 {
        let growth = if lambda == 0 || m == 0 {
            0.0
        } else {
            lambda as f64 * (m as f64).ln()
        };
        growth + m as f64 * ln_rho - (1.0 - rho).ln()
    };
    // M^λ ρ^M decreases once M > λ / -ln ρ
    let start = (lambda as f64 / -ln_rho).ceil() as u64;
    if log_bound(start) < target {
        return Ok(start);
    }
    let mut hi = start.max(1);
    while log_bound(hi) >= target {
        hi = hi.checked_mul(2).ok_or(Error::TruncationInfeasible {
            needed: u64::MAX,
            cap: config.hard_cap,
        })?;
    }
    let mut lo = hi / 2;
    // log_bound(lo) >= target > log_bound(hi)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if log_bound(mid) < target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    if hi > config.hard_cap {
        return Err(Error::TruncationInfeasible {
            needed: hi,
            cap: config.hard_cap,
        });
    }
    Ok(hi)
}

/// Compensated (Neumaier) accumulator for one real component.
#[derive(Debug, Default, Clone, Copy)]
struct Neumaier {
    sum: f64,
    carry: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

fn unit_table(m: u64) -> Vec<Complex64> {
    (0..m)
        .map(|r| Complex64::from_polar(1.0, 2.0 * PI * r as f64 / m as f64))
        .collect()
}

/// `sum sign * g^λ * (ρ α^i)^g` over the stream, `α = exp(2πi/m)`, with the
/// default [`AbelConfig`]. Terms are added in ascending exponent order.
pub fn abel_evaluate(lambda: u32, m: u64, i: i64, rho: f64, tolerance: f64) -> Result<Complex64> {
    abel_evaluate_with(lambda, m, i, rho, tolerance, &AbelConfig::default())
}

pub fn abel_evaluate_with(
    lambda: u32,
    m: u64,
    i: i64,
    rho: f64,
    tolerance: f64,
    config: &AbelConfig,
) -> Result<Complex64> {
    if m == 0 {
        return Err(Error::Domain("root order must be >= 1".into()));
    }
    let cap = exponent_cap(lambda, rho, tolerance, config)?;
    let units = unit_table(m);
    let step = i.rem_euclid(m as i64) as u64;
    let ln_rho = rho.ln();
    let (mut re, mut im) = (Neumaier::default(), Neumaier::default());
    if lambda == 0 {
        re.add(1.0);
    }
    for term in TermStream::without_zero() {
        let g = match term.value.to_u64() {
            Some(g) if g <= cap => g,
            _ => break,
        };
        let weight = ((g as f64).powi(lambda as i32)) * (g as f64 * ln_rho).exp();
        let unit = units[((term.residue(m) as u128 * step as u128) % m as u128) as usize];
        let c = unit * (weight * term.sign.as_i64() as f64);
        re.add(c.re);
        im.add(c.im);
    }
    Ok(Complex64::new(re.value(), im.value()))
}

/// The damped sum restricted to exponents `≡ r (mod m)`, via the root-of-unity
/// filter `(1/m) sum_i α^{-ir} abel_evaluate(λ, m, i, ρ)`.
pub fn residue_class_abel(lambda: u32, m: u64, r: u64, rho: f64, tolerance: f64) -> Result<Complex64> {
    residue_class_abel_with(lambda, m, r, rho, tolerance, &AbelConfig::default())
}

pub fn residue_class_abel_with(
    lambda: u32,
    m: u64,
    r: u64,
    rho: f64,
    tolerance: f64,
    config: &AbelConfig,
) -> Result<Complex64> {
    if m == 0 {
        return Err(Error::Domain("root order must be >= 1".into()));
    }
    if r >= m {
        return Err(Error::Domain(format!("residue {r} is not below {m}")));
    }
    let units = unit_table(m);
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..m {
        let value = abel_evaluate_with(lambda, m, i as i64, rho, tolerance, config)?;
        acc += units[((m - (i * r) % m) % m) as usize] * value;
    }
    Ok(acc / m as f64)
}

/// `lambda,m,label,rho,|value|,PASS|FAIL` for numeric checks.
pub fn abel_csv_line(lambda: u32, m: u64, label: &str, rho: f64, magnitude: f64, pass: bool) -> String {
    format!(
        "{lambda},{m},{label},{rho},{magnitude:.6e},{}",
        crate::cyclotomic::verdict(pass)
    )
}
