//! The term stream with `x` replaced by a power of an `m`-th root of unity `α`.
//!
//! Exponents reduce modulo `m`, so every partial sum of the series is an
//! element of the group ring `Z[C_m]`, represented exactly by [`CycVec`].
//! Floating point appears only in [`RootOfUnity`] and in numeric cross-checks.

use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::pentagonal::{PentagonalTerm, Sign, TermStream};

/// `sum_r coords[r] α^r` with `α^m = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycVec {
    coords: Vec<BigInt>,
}

impl CycVec {
    pub fn zero(m: usize) -> Self {
        assert!(m >= 1, "root order must be positive");
        CycVec {
            coords: vec![BigInt::zero(); m],
        }
    }

    pub fn from_coords(coords: Vec<BigInt>) -> Self {
        assert!(!coords.is_empty(), "root order must be positive");
        CycVec { coords }
    }

    pub fn order(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Adds `sign * α^exponent`, reducing the exponent mod `m`.
    pub fn add_monomial(&mut self, sign: Sign, exponent: u64) {
        let r = (exponent % self.order() as u64) as usize;
        self.coords[r] += sign.as_i64();
    }

    /// Sum of `|coords[r]|`.
    pub fn l1_norm(&self) -> BigInt {
        self.coords.iter().map(|c| c.abs()).sum()
    }

    /// Image under `α -> root`, where `root` is any complex number with `root^m = 1`.
    pub fn evaluate(&self, root: Complex64) -> Complex64 {
        let mut power = Complex64::new(1.0, 0.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for c in &self.coords {
            acc += power * c.to_f64().unwrap_or(f64::NAN);
            power *= root;
        }
        acc
    }
}

impl std::ops::AddAssign<&CycVec> for CycVec {
    fn add_assign(&mut self, rhs: &CycVec) {
        assert_eq!(self.order(), rhs.order(), "mismatched root orders");
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            *a += b;
        }
    }
}

impl fmt::Display for CycVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (r, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if wrote { "+" } else { "" };
            let mag = c.abs();
            let coeff = if mag == BigInt::from(1) && r != 0 { String::new() } else { mag.to_string() };
            match r {
                0 => write!(f, "{sign}{coeff}")?,
                1 => write!(f, "{sign}{coeff}α")?,
                _ => write!(f, "{sign}{coeff}α^{r}")?,
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `cos(2πi/m) + √-1 sin(2πi/m)`, kept alongside its exact index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootOfUnity {
    pub m: u64,
    pub i: u64,
    pub re: f64,
    pub im: f64,
}

impl RootOfUnity {
    pub fn new(m: u64, i: i64) -> Result<Self> {
        if m == 0 {
            return Err(Error::Domain("root order must be >= 1".into()));
        }
        let i = i.rem_euclid(m as i64) as u64;
        let angle = 2.0 * PI * i as f64 / m as f64;
        Ok(RootOfUnity {
            m,
            i,
            re: angle.cos(),
            im: angle.sin(),
        })
    }

    pub fn as_complex(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    /// The reciprocal, which for a unit-modulus root is the conjugate.
    pub fn reciprocal(&self) -> RootOfUnity {
        RootOfUnity::new(self.m, -(self.i as i64)).expect("m >= 1")
    }
}

/// All `m` roots of `1 - x^m`, `i = 0..m`.
pub fn roots_of_unity(m: u64) -> Result<Vec<RootOfUnity>> {
    if m == 0 {
        return Err(Error::Domain("root order must be >= 1".into()));
    }
    (0..m as i64).map(|i| RootOfUnity::new(m, i)).collect()
}

/// The classical closed forms for the roots of `1 - x^m`, `m <= 6`, written
/// with square roots only. `None` past 6.
pub fn radical_roots(m: u64) -> Option<Vec<Complex64>> {
    let c = Complex64::new;
    let s3 = 3f64.sqrt();
    let s5 = 5f64.sqrt();
    // √(-10 ± 2√5) = √-1 · √(10 ∓ 2√5)
    let r_minus = (10.0 - 2.0 * s5).sqrt();
    let r_plus = (10.0 + 2.0 * s5).sqrt();
    let roots = match m {
        1 => vec![c(1.0, 0.0)],
        2 => vec![c(1.0, 0.0), c(-1.0, 0.0)],
        3 => vec![c(1.0, 0.0), c(-0.5, -s3 / 2.0), c(-0.5, s3 / 2.0)],
        4 => vec![c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0)],
        5 => vec![
            c(1.0, 0.0),
            c((-1.0 - s5) / 4.0, r_minus / 4.0),
            c((-1.0 - s5) / 4.0, -r_minus / 4.0),
            c((-1.0 + s5) / 4.0, r_plus / 4.0),
            c((-1.0 + s5) / 4.0, -r_plus / 4.0),
        ],
        6 => vec![
            c(1.0, 0.0),
            c(-1.0, 0.0),
            c(0.5, s3 / 2.0),
            c(0.5, -s3 / 2.0),
            c(-0.5, s3 / 2.0),
            c(-0.5, -s3 / 2.0),
        ],
        _ => return None,
    };
    Some(roots)
}

fn residue_of(term: &PentagonalTerm, m: u64, i: i64) -> u64 {
    let m_i = m as i64;
    let v = term.residue(m) as i128;
    ((v * i.rem_euclid(m_i) as i128) % m as i128) as u64
}

/// `1 + sum sign * α^{value*i}` over the constant and the first
/// `term_count - 1` stream terms.
pub fn substitute_stream(m: u64, i: i64, term_count: usize) -> Result<CycVec> {
    if m == 0 {
        return Err(Error::Domain("root order must be >= 1".into()));
    }
    if term_count == 0 {
        return Err(Error::Domain("term_count must be >= 1".into()));
    }
    let mut acc = CycVec::zero(m as usize);
    for term in TermStream::with_zero().take(term_count) {
        acc.add_monomial(term.sign, residue_of(&term, m, i));
    }
    Ok(acc)
}

/// `(sign, residue)` of one stream position.
pub type ProfileEntry = (Sign, u64);

fn profile_block(m: u64, block: u64) -> Vec<ProfileEntry> {
    let len = 4 * m;
    (block * len..(block + 1) * len)
        .map(|p| {
            let t = PentagonalTerm::at_position(p);
            (t.sign, t.residue(m))
        })
        .collect()
}

/// `(sign, value mod m)` for stream positions `0..4m`, position 0 the constant.
pub fn period_profile(m: u64) -> Result<Vec<ProfileEntry>> {
    if m == 0 {
        return Err(Error::Domain("root order must be >= 1".into()));
    }
    Ok(profile_block(m, 0))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PeriodViolation {
    /// Signed count of residue `r` inside block `block` is nonzero.
    Residue { block: u64, residue: u64, signed_count: i64 },
    /// Block `block` differs from its predecessor at stream position `position`.
    Profile { block: u64, position: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodReport {
    pub m: u64,
    pub periods: u64,
    pub violations: Vec<PeriodViolation>,
    /// Sum of the `4m` running partial sums of the first block as a group-ring
    /// element. Informational only; zero for `m = 1, 2`.
    pub partial_sum_aggregate: CycVec,
}

impl PeriodReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// `m,*,4m,<sum of |residue counts|>,<|aggregate| l1>,PASS|FAIL`
    pub fn csv_line(&self) -> String {
        let residue_total: i64 = self
            .violations
            .iter()
            .map(|v| match v {
                PeriodViolation::Residue { signed_count, .. } => signed_count.abs(),
                PeriodViolation::Profile { .. } => 0,
            })
            .sum();
        format!(
            "{},*,{},{},{},{}",
            self.m,
            4 * self.m,
            residue_total,
            self.partial_sum_aggregate.l1_norm(),
            verdict(self.passed())
        )
    }
}

pub(crate) fn verdict(pass: bool) -> &'static str {
    if pass { "PASS" } else { "FAIL" }
}

/// Checks `periods` consecutive `4m`-term blocks of the stream: every residue
/// class cancels inside each block, and each block repeats its predecessor.
pub fn verify_period_cancellation(m: u64, periods: u64) -> Result<PeriodReport> {
    if m == 0 {
        return Err(Error::Domain("root order must be >= 1".into()));
    }
    let len = 4 * m;
    let mut violations = Vec::new();
    let mut previous: Option<Vec<ProfileEntry>> = None;
    for block in 0..periods {
        let profile = profile_block(m, block);
        let mut counts = vec![0i64; m as usize];
        for (sign, r) in &profile {
            counts[*r as usize] += sign.as_i64();
        }
        for (residue, &signed_count) in counts.iter().enumerate() {
            if signed_count != 0 {
                violations.push(PeriodViolation::Residue {
                    block,
                    residue: residue as u64,
                    signed_count,
                });
            }
        }
        if let Some(prev) = &previous {
            if let Some(offset) = prev.iter().zip(&profile).position(|(a, b)| a != b) {
                violations.push(PeriodViolation::Profile {
                    block,
                    position: block * len + offset as u64,
                });
            }
        }
        previous = Some(profile);
    }

    let mut running = CycVec::zero(m as usize);
    let mut aggregate = CycVec::zero(m as usize);
    for (sign, r) in profile_block(m, 0) {
        running.add_monomial(sign, r);
        aggregate += &running;
    }
    Ok(PeriodReport {
        m,
        periods,
        violations,
        partial_sum_aggregate: aggregate,
    })
}

/// Signs of the first `count` stream terms (constant included) whose exponent
/// is `r` mod `m`. Shorter than `count` only when the class is empty.
pub fn residue_substream(m: u64, r: u64, count: usize) -> Result<Vec<Sign>> {
    if m == 0 {
        return Err(Error::Domain("root order must be >= 1".into()));
    }
    if r >= m {
        return Err(Error::Domain(format!("residue {r} is not below {m}")));
    }
    let per_period = profile_block(m, 0).iter().filter(|(_, res)| *res == r).count();
    if per_period == 0 {
        return Ok(Vec::new());
    }
    Ok(TermStream::with_zero()
        .filter(|t| t.residue(m) == r)
        .map(|t| t.sign)
        .take(count)
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisReport {
    pub m: u64,
    pub r: u64,
    /// Smallest period of the residue class's sign sequence; 0 for an empty class.
    pub period_length: usize,
    pub partial_sums: Vec<i64>,
    pub signed_sum: i64,
    pub basis_sum: i64,
}

impl BasisReport {
    pub fn passed(&self) -> bool {
        self.signed_sum == 0 && self.basis_sum == 0
    }

    /// `m,r,period_length,signed_sum,basis_sum,PASS|FAIL`
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.m,
            self.r,
            self.period_length,
            self.signed_sum,
            self.basis_sum,
            verdict(self.passed())
        )
    }
}

fn smallest_period(seq: &[Sign], bound: usize) -> usize {
    (1..=bound)
        .find(|&l| bound.is_multiple_of(l) && (0..seq.len() - l).all(|j| seq[j] == seq[j + l]))
        .unwrap_or(bound)
}

/// Over one sign period of residue class `r`: the signs cancel, and so do the
/// running partial sums (their mean is zero).
pub fn verify_basis_cancellation(m: u64, r: u64) -> Result<BasisReport> {
    if m == 0 {
        return Err(Error::Domain("root order must be >= 1".into()));
    }
    if r >= m {
        return Err(Error::Domain(format!("residue {r} is not below {m}")));
    }
    // terms of class r inside one 4m-block; the class repeats with this length
    let per_period = profile_block(m, 0).iter().filter(|(_, res)| *res == r).count();
    if per_period == 0 {
        return Ok(BasisReport {
            m,
            r,
            period_length: 0,
            partial_sums: Vec::new(),
            signed_sum: 0,
            basis_sum: 0,
        });
    }
    let signs = residue_substream(m, r, 2 * per_period)?;
    let period_length = smallest_period(&signs, per_period);
    let partial_sums: Vec<i64> = signs[..period_length]
        .iter()
        .scan(0i64, |acc, s| {
            *acc += s.as_i64();
            Some(*acc)
        })
        .collect();
    let signed_sum = *partial_sums.last().expect("nonempty period");
    let basis_sum = partial_sums.iter().sum();
    Ok(BasisReport {
        m,
        r,
        period_length,
        partial_sums,
        signed_sum,
        basis_sum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn signs(s: &str) -> Vec<Sign> {
        s.chars()
            .map(|c| if c == '+' { Sign::Plus } else { Sign::Minus })
            .collect()
    }

    fn profile_string(p: &[ProfileEntry]) -> String {
        p.iter()
            .map(|(s, r)| match r {
                0 => format!("{s}1"),
                1 => format!("{s}α"),
                _ => format!("{s}α{r}"),
            })
            .collect()
    }

    #[test]
    fn roots_small_orders() {
        let one = roots_of_unity(1).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!((one[0].re, one[0].im), (1.0, 0.0));
        let four = roots_of_unity(4).unwrap();
        assert!(four.iter().any(|r| r.re.abs() < 1e-15 && (r.im - 1.0).abs() < 1e-15));
        assert!(four.iter().any(|r| r.re.abs() < 1e-15 && (r.im + 1.0).abs() < 1e-15));
        let five = roots_of_unity(5).unwrap();
        assert!((five[1].re - (-1.0 + 5f64.sqrt()) / 4.0).abs() < 1e-12);
        assert!(matches!(roots_of_unity(0), Err(Error::Domain(_))));
    }

    #[test]
    fn roots_are_on_the_circle_and_of_order_m() {
        for m in 1..=40 {
            for root in roots_of_unity(m).unwrap() {
                assert!((root.re * root.re + root.im * root.im - 1.0).abs() < 1e-12);
                let z = root.as_complex().powu(m as u32);
                assert!((z - Complex64::new(1.0, 0.0)).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn radical_forms_are_roots() {
        for m in 1..=6u64 {
            let roots = roots_of_unity(m).unwrap();
            let radicals = radical_roots(m).unwrap();
            assert_eq!(radicals.len(), m as usize);
            for z in radicals {
                assert!(
                    roots.iter().any(|r| (r.as_complex() - z).norm() < 1e-12),
                    "m = {m}, z = {z}"
                );
            }
        }
        assert!(radical_roots(7).is_none());
    }

    #[test]
    fn closure_under_reciprocal() {
        for m in 1..=30 {
            let roots = roots_of_unity(m).unwrap();
            for r in &roots {
                assert!(roots
                    .iter()
                    .any(|s| (s.re - r.re).abs() < 1e-12 && (s.im + r.im).abs() < 1e-12));
                let inv = r.reciprocal();
                assert!((inv.as_complex() * r.as_complex() - 1.0).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn substitute_examples() {
        let v = substitute_stream(1, 1, 4).unwrap();
        assert_eq!(v.coords(), &[BigInt::zero()]);
        assert!(substitute_stream(2, 1, 8).unwrap().is_zero());
        assert!(substitute_stream(3, 1, 12).unwrap().is_zero());
        assert!(!substitute_stream(3, 1, 11).unwrap().is_zero());
        assert!(substitute_stream(3, 1, 0).is_err());
    }

    #[test]
    fn substitute_negative_index_is_reciprocal() {
        let a = substitute_stream(7, -2, 50).unwrap();
        let b = substitute_stream(7, 5, 50).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn whole_periods_vanish() {
        for m in 1..=24u64 {
            for mult in 1..=3 {
                let n = (4 * m * mult) as usize;
                assert!(substitute_stream(m, 1, n).unwrap().is_zero(), "m = {m}, n = {n}");
            }
        }
    }

    #[test]
    fn exponent_reduction() {
        for m in 1..=12u64 {
            for i in 0..=(2 * m as i64) {
                for n in [1usize, 7, 50, 200] {
                    assert_eq!(
                        substitute_stream(m, i, n).unwrap(),
                        substitute_stream(m, i + m as i64, n).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn numeric_agreement() {
        for m in 1..=8u64 {
            let alpha = RootOfUnity::new(m, 1).unwrap().as_complex();
            for root in roots_of_unity(m).unwrap() {
                let x = root.as_complex();
                for n in [1usize, 13, 64, 100] {
                    let direct: Complex64 = TermStream::with_zero()
                        .take(n)
                        .map(|t| x.powu(t.value.to_u32().unwrap()) * t.sign.as_i64() as f64)
                        .sum();
                    let exact = substitute_stream(m, root.i as i64, n).unwrap();
                    assert!((exact.evaluate(alpha) - direct).norm() < 1e-9, "m={m} i={} n={n}", root.i);
                }
            }
        }
    }

    #[test]
    fn profiles_from_the_text() {
        let p1 = period_profile(1).unwrap();
        assert_eq!(profile_string(&p1), "+1-1-1+1");
        let p2 = period_profile(2).unwrap();
        assert_eq!(profile_string(&p2), "+1-α-1+α+α-1-α+1");
        let p3 = period_profile(3).unwrap();
        // constant and minus-branch terms: 1-α+α²-1+α-α²+1; plus-branch: -α²+α-1+α²-α
        assert_eq!(profile_string(&p3), "+1-α-α2+α2+α-1-1+α+α2-α2-α+1");
        let p4 = period_profile(4).unwrap();
        assert_eq!(
            profile_string(&p4),
            "+1-α-α2+α+α3-1-α3+α2+α2-α3-1+α3+α-α2-α+1"
        );
        let p5 = period_profile(5).unwrap();
        assert_eq!(p5.len(), 20);
        assert!(p5.iter().all(|(_, r)| *r != 3 && *r != 4));
    }

    #[test]
    fn period_cancellation_small() {
        assert!(verify_period_cancellation(2, 3).unwrap().passed());
        assert!(verify_period_cancellation(5, 2).unwrap().passed());
        for m in 1..=24 {
            let report = verify_period_cancellation(m, 5).unwrap();
            assert!(report.passed(), "m = {m}: {:?}", report.violations);
        }
    }

    #[test]
    fn period_report_line() {
        let r = verify_period_cancellation(2, 3).unwrap();
        assert_eq!(r.csv_line(), "2,*,8,0,0,PASS");
    }

    #[test]
    fn eight_partial_sums_for_square_roots() {
        let mut running = CycVec::zero(2);
        let mut shown = Vec::new();
        for (sign, r) in period_profile(2).unwrap() {
            running.add_monomial(sign, r);
            shown.push(running.to_string());
        }
        assert_eq!(shown, ["1", "1-α", "-α", "0", "α", "-1+α", "-1", "0"]);
        assert!(verify_period_cancellation(2, 1).unwrap().partial_sum_aggregate.is_zero());
    }

    #[test]
    fn substream_examples() {
        assert_eq!(residue_substream(5, 0, 8).unwrap(), signs("++----++"));
        assert_eq!(residue_substream(2, 1, 4).unwrap(), signs("-++-"));
        assert_eq!(residue_substream(1, 0, 4).unwrap(), signs("+--+"));
        assert_eq!(residue_substream(5, 2, 8).unwrap(), signs("-+-++-+-"));
        assert!(residue_substream(5, 3, 8).unwrap().is_empty());
        assert!(matches!(residue_substream(5, 5, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn basis_examples() {
        let b = verify_basis_cancellation(5, 0).unwrap();
        assert_eq!(b.period_length, 8);
        assert_eq!(b.partial_sums, [1, 2, 1, 0, -1, -2, -1, 0]);
        assert!(b.passed());
        assert_eq!(b.csv_line(), "5,0,8,0,0,PASS");

        let b = verify_basis_cancellation(1, 0).unwrap();
        assert_eq!(b.partial_sums, [1, 0, -1, 0]);
        assert!(b.passed());

        let b = verify_basis_cancellation(5, 1).unwrap();
        assert_eq!(b.period_length, 4);
        assert_eq!(b.partial_sums, [-1, 0, 1, 0]);
        assert!(b.passed());

        let b = verify_basis_cancellation(5, 2).unwrap();
        assert_eq!(b.period_length, 8);
        assert_eq!(b.partial_sums, [-1, 0, -1, 0, 1, 0, 1, 0]);
        assert!(b.passed());

        let b = verify_basis_cancellation(5, 4).unwrap();
        assert_eq!(b.period_length, 0);
        assert!(b.passed());
        assert!(verify_basis_cancellation(3, 3).is_err());
    }

    #[test]
    fn cycvec_display() {
        let v = CycVec::from_coords([2, -1, 0, 3].map(BigInt::from).to_vec());
        assert_eq!(v.to_string(), "2-α+3α^3");
        assert_eq!(CycVec::zero(3).to_string(), "0");
    }
}
