//! Sums of divisors, by trial division and by the pentagonal recurrence
//!
//! `σ(N) = σ(N-1) + σ(N-2) - σ(N-5) - σ(N-7) + σ(N-12) + σ(N-15) - ...`
//!
//! where a subtrahend equal to `N` itself contributes the number `N`.

use std::fmt;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::pentagonal::{Sign, TermStream};

/// How the recurrence treats a subtrahend that lands exactly on `N - N = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoundaryRule {
    /// Write the number `N` in place of `σ(0)`.
    #[default]
    SubstituteN,
    /// Treat `σ(0)` as zero. Wrong; exists so tests can show the rule is load-bearing.
    Disabled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Brute,
    Recurrence,
}

/// `σ(1..=max_n)`; entry `N` holds the sum of all divisors of `N`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SigmaTable {
    values: Vec<BigUint>,
}

impl SigmaTable {
    pub fn new() -> Self {
        SigmaTable::default()
    }

    pub fn max_n(&self) -> u64 {
        self.values.len() as u64
    }

    /// `σ(n)` if the table reaches `n`; `n = 0` is never stored.
    pub fn get(&self, n: u64) -> Option<&BigUint> {
        if n == 0 {
            return None;
        }
        self.values.get((n - 1) as usize)
    }

    /// Entries `σ(1), σ(2), ...` in order.
    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    fn push(&mut self, v: BigUint) {
        self.values.push(v);
    }

    /// Keeps only `σ(1..=max_n)`.
    pub fn truncated(&self, max_n: u64) -> SigmaTable {
        SigmaTable {
            values: self.values.iter().take(max_n as usize).cloned().collect(),
        }
    }

    /// One `N,sigma` line per entry, no header.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (i, v) in self.values.iter().enumerate() {
            let _ = writeln!(out, "{},{}", i + 1, v);
        }
        out
    }

    /// Parses the [`to_csv`](Self::to_csv) format. Lines must be `1..=n` in order.
    pub fn from_csv(text: &str) -> Result<SigmaTable> {
        let mut table = SigmaTable::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let bad = || Error::Domain(format!("sigma cache line {}: {line:?}", lineno + 1));
            let (n, v) = line.split_once(',').ok_or_else(bad)?;
            let n: u64 = n.trim().parse().map_err(|_| bad())?;
            let v: BigUint = v.trim().parse().map_err(|_| bad())?;
            if n != table.max_n() + 1 {
                return Err(bad());
            }
            table.push(v);
        }
        Ok(table)
    }
}

/// Trial-division divisor sum, `N` included.
pub fn sigma_brute(n: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::Domain("sigma is defined for N >= 1".into()));
    }
    let mut total: u128 = 0;
    let mut d: u64 = 1;
    while d.checked_mul(d).is_some_and(|sq| sq <= n) {
        if n.is_multiple_of(d) {
            let q = n / d;
            total += d as u128;
            if q != d {
                total += q as u128;
            }
        }
        d += 1;
    }
    Ok(BigUint::from(total))
}

/// One summand of the recurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceStep {
    /// The pentagonal number subtracted from `N`.
    pub subtrahend: u64,
    pub sign: Sign,
    /// `σ(N - subtrahend)`, or `N` on the boundary.
    pub magnitude: BigUint,
    pub boundary: bool,
}

/// The full expansion of one recurrence evaluation, e.g. `12+18-8-6+12=28`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceTrace {
    pub n: u64,
    pub steps: Vec<RecurrenceStep>,
    pub value: BigInt,
}

impl RecurrenceTrace {
    /// The signed sum without the result, e.g. `12+18-8-6+12`.
    pub fn expansion(&self) -> String {
        let mut out = String::new();
        for (i, step) in self.steps.iter().enumerate() {
            if i > 0 || step.sign.is_negative() {
                out.push_str(&step.sign.to_string());
            }
            let _ = write!(out, "{}", step.magnitude);
        }
        out
    }
}

impl fmt::Display for RecurrenceTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "σ({}) = {} = {}", self.n, self.expansion(), self.value)
    }
}

/// Expands the recurrence for `N` against a table holding `σ(1..N-1)`.
pub fn sigma_recurrence_trace(
    n: u64,
    table: &SigmaTable,
    rule: BoundaryRule,
) -> Result<RecurrenceTrace> {
    if n == 0 {
        return Err(Error::Domain("sigma is defined for N >= 1".into()));
    }
    if table.max_n() + 1 < n {
        return Err(Error::Precondition(format!(
            "recurrence for N = {n} needs σ(1..{}), table stops at {}",
            n - 1,
            table.max_n()
        )));
    }
    let mut steps = Vec::new();
    let mut value = BigInt::zero();
    for term in TermStream::without_zero() {
        let subtrahend = match term.value.to_u64() {
            Some(s) if s <= n => s,
            _ => break,
        };
        // the series coefficient moves across the equals sign
        let sign = -term.sign;
        let rest = n - subtrahend;
        let (magnitude, boundary) = if rest == 0 {
            match rule {
                BoundaryRule::SubstituteN => (BigUint::from(n), true),
                BoundaryRule::Disabled => (BigUint::zero(), true),
            }
        } else {
            (table.get(rest).expect("checked table length").clone(), false)
        };
        value += sign.apply(BigInt::from(magnitude.clone()));
        steps.push(RecurrenceStep {
            subtrahend,
            sign,
            magnitude,
            boundary,
        });
    }
    Ok(RecurrenceTrace { n, steps, value })
}

/// `σ(N)` from `σ(1..N-1)` via the pentagonal recurrence.
pub fn sigma_recurrence(n: u64, table: &SigmaTable) -> Result<BigUint> {
    let trace = sigma_recurrence_trace(n, table, BoundaryRule::SubstituteN)?;
    Ok(trace.value.to_biguint().expect("sigma recurrence is positive"))
}

/// Builds `σ(1..=max_n)`.
pub fn sigma_table(max_n: u64, method: Method) -> Result<SigmaTable> {
    match method {
        Method::Brute => {
            if max_n == 0 {
                return Err(Error::Domain("sigma_table needs max_n >= 1".into()));
            }
            let mut table = SigmaTable::new();
            for n in 1..=max_n {
                table.push(sigma_brute(n)?);
            }
            Ok(table)
        }
        Method::Recurrence => sigma_table_with_rule(max_n, BoundaryRule::SubstituteN),
    }
}

/// Recurrence table under an explicit boundary rule. Entries that come out
/// negative under [`BoundaryRule::Disabled`] are clamped to zero.
pub fn sigma_table_with_rule(max_n: u64, rule: BoundaryRule) -> Result<SigmaTable> {
    if max_n == 0 {
        return Err(Error::Domain("sigma_table needs max_n >= 1".into()));
    }
    let mut table = SigmaTable::new();
    for n in 1..=max_n {
        let v = sigma_recurrence_trace(n, &table, rule)?.value;
        let v = if v.is_negative() { BigUint::zero() } else { v.to_biguint().unwrap() };
        table.push(v);
    }
    Ok(table)
}

/// First `N <= max_n` where the recurrence table disagrees with trial division.
pub fn first_mismatch(table: &SigmaTable) -> Result<Option<u64>> {
    for n in 1..=table.max_n() {
        if table.get(n) != Some(&sigma_brute(n)?) {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn is_prime(n: u64) -> bool {
        n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn brute_examples() {
        assert_eq!(sigma_brute(6).unwrap(), big(12));
        assert_eq!(sigma_brute(1).unwrap(), big(1));
        assert_eq!(sigma_brute(11).unwrap(), big(12));
        assert_eq!(sigma_brute(36).unwrap(), big(91));
        assert!(matches!(sigma_brute(0), Err(Error::Domain(_))));
    }

    #[test]
    fn brute_table_first_eleven() {
        let t = sigma_table(11, Method::Brute).unwrap();
        let want: Vec<BigUint> = [1, 3, 4, 7, 6, 12, 8, 15, 13, 18, 12].map(big).to_vec();
        assert_eq!(t.values(), &want[..]);
    }

    #[test]
    fn single_entry_tables() {
        assert_eq!(sigma_table(1, Method::Brute).unwrap().values(), &[big(1)]);
        assert_eq!(sigma_table(1, Method::Recurrence).unwrap().values(), &[big(1)]);
        assert!(sigma_table(0, Method::Recurrence).is_err());
    }

    #[test]
    fn worked_examples() {
        let table = sigma_table(13, Method::Brute).unwrap();
        let t12 = sigma_recurrence_trace(12, &table, BoundaryRule::SubstituteN).unwrap();
        assert_eq!(t12.expansion(), "12+18-8-6+12");
        assert_eq!(t12.value, BigInt::from(28));
        assert!(t12.steps.last().unwrap().boundary);
        let t13 = sigma_recurrence_trace(13, &table, BoundaryRule::SubstituteN).unwrap();
        assert_eq!(t13.expansion(), "28+12-15-12+1");
        assert_eq!(t13.value, BigInt::from(14));
        assert_eq!(t13.to_string(), "σ(13) = 28+12-15-12+1 = 14");
    }

    #[test]
    fn boundary_at_two_and_one() {
        let table = sigma_table(1, Method::Brute).unwrap();
        let t = sigma_recurrence_trace(2, &table, BoundaryRule::SubstituteN).unwrap();
        assert_eq!(t.expansion(), "1+2");
        assert_eq!(sigma_recurrence(2, &table).unwrap(), sigma_brute(2).unwrap());
        assert_eq!(sigma_recurrence(1, &SigmaTable::new()).unwrap(), big(1));
    }

    #[test]
    fn recurrence_table_thirteen() {
        let t = sigma_table(13, Method::Recurrence).unwrap();
        assert_eq!(t.get(13), Some(&big(14)));
    }

    #[test]
    fn missing_entries_is_precondition_error() {
        let table = sigma_table(5, Method::Brute).unwrap();
        assert!(matches!(sigma_recurrence(8, &table), Err(Error::Precondition(_))));
        assert!(sigma_recurrence(6, &table).is_ok());
    }

    #[test]
    fn recurrence_matches_brute_to_2000() {
        let t = sigma_table(2000, Method::Recurrence).unwrap();
        assert_eq!(first_mismatch(&t).unwrap(), None);
    }

    #[test]
    fn disabled_boundary_breaks_at_every_pentagonal() {
        let brute = sigma_table(200, Method::Brute).unwrap();
        for term in TermStream::without_zero().take_while(|t| t.value <= big(200)) {
            let n = term.value.to_u64().unwrap();
            let v = sigma_recurrence_trace(n, &brute, BoundaryRule::Disabled).unwrap().value;
            assert_ne!(v, BigInt::from(brute.get(n).unwrap().clone()), "N = {n}");
        }
        let mutated = sigma_table_with_rule(20, BoundaryRule::Disabled).unwrap();
        assert_eq!(first_mismatch(&mutated).unwrap(), Some(1));
    }

    #[test]
    fn table_invariants() {
        let t = sigma_table(500, Method::Recurrence).unwrap();
        assert_eq!(t.get(1), Some(&big(1)));
        for n in 2..=500u64 {
            let v = t.get(n).unwrap();
            assert!(*v >= big(n + 1));
            assert_eq!(*v == big(n + 1), is_prime(n), "N = {n}");
        }
    }

    #[test]
    fn csv_round_trip() {
        let t = sigma_table(11, Method::Brute).unwrap();
        let csv = t.to_csv();
        assert!(csv.ends_with("11,12\n"));
        assert_eq!(csv.lines().count(), 11);
        assert_eq!(SigmaTable::from_csv(&csv).unwrap(), t);
        assert!(SigmaTable::from_csv("1,1\n3,4\n").is_err());
        assert!(SigmaTable::from_csv("1;1\n").is_err());
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 { a } else { gcd(b, a % b) }
    }

    proptest! {
        #[test]
        fn brute_is_multiplicative(p in 1u64..=100, q in 1u64..=100) {
            prop_assume!(gcd(p, q) == 1);
            prop_assert_eq!(
                sigma_brute(p * q).unwrap(),
                sigma_brute(p).unwrap() * sigma_brute(q).unwrap()
            );
        }
    }
}
