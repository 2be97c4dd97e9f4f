//! The end-to-end checks, one per identity, each with its own time budget.

use std::fmt;
use std::thread;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::cyclotomic::{
    period_profile, substitute_stream, verify_basis_cancellation, verify_period_cancellation,
};
use crate::qseries::{elementary_symmetric, euler_product, pentagonal_series, power_sums};
use crate::sigma::{
    first_mismatch, sigma_brute, sigma_recurrence_trace, sigma_table, BoundaryRule, Method,
};
use crate::summation::{
    abel_evaluate, difference_table, euler_sum_alternating, pentagonal_power_sum,
    residue_class_abel, Rational,
};

/// Tolerance handed to every damped evaluation in the checks.
pub const ABEL_TOLERANCE: f64 = 1e-9;
/// Radii compared by the decay check.
pub const ABEL_RHO_FAR: f64 = 0.9;
pub const ABEL_RHO_NEAR: f64 = 0.999;
/// Residue-class sums at `ABEL_RHO_NEAR` must fall below this.
pub const RESIDUE_CLASS_BOUND: f64 = 1e-2;

#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Option<Duration>,
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let budget = self
            .budget
            .map(|b| format!(" (budget {b:?})"))
            .unwrap_or_default();
        write!(
            f,
            "[{}] {:>2} {}: {} in {:?}{}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed,
            budget
        )
    }
}

/// Runs `check` (best of `runs` timings) and folds the budget into the verdict.
fn timed(
    id: u8,
    name: &'static str,
    budget: Option<Duration>,
    runs: usize,
    check: impl Fn() -> (bool, String),
) -> CriterionOutcome {
    let mut best = Duration::MAX;
    let mut result = (false, String::new());
    for _ in 0..runs.max(1) {
        let start = Instant::now();
        result = check();
        best = best.min(start.elapsed());
    }
    let (ok, detail) = result;
    let in_budget = budget.is_none_or(|b| best < b);
    CriterionOutcome {
        id,
        name,
        passed: ok && in_budget,
        detail,
        elapsed: best,
        budget,
    }
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

pub fn sigma_regression() -> CriterionOutcome {
    timed(1, "divisor-sum table 1..11", Some(Duration::from_millis(1)), 3, || {
        let want: Vec<BigUint> = [1, 3, 4, 7, 6, 12, 8, 15, 13, 18, 12].map(big).to_vec();
        match sigma_table(11, Method::Brute) {
            Ok(t) => (t.values() == &want[..], format!("{:?}", t.values())),
            Err(e) => (false, e.to_string()),
        }
    })
}

pub fn recurrence_examples() -> CriterionOutcome {
    timed(2, "recurrence worked examples", Some(Duration::from_millis(1)), 3, || {
        let Ok(table) = sigma_table(12, Method::Brute) else {
            return (false, "table".into());
        };
        let t12 = sigma_recurrence_trace(12, &table, BoundaryRule::SubstituteN);
        let t13 = sigma_recurrence_trace(13, &table, BoundaryRule::SubstituteN);
        match (t12, t13) {
            (Ok(a), Ok(b)) => {
                let ok = a.expansion() == "12+18-8-6+12"
                    && a.value == BigInt::from(28)
                    && b.expansion() == "28+12-15-12+1"
                    && b.value == BigInt::from(14);
                (ok, format!("{a}; {b}"))
            }
            _ => (false, "recurrence failed".into()),
        }
    })
}

pub fn oracle_equivalence() -> CriterionOutcome {
    timed(3, "recurrence = trial division, N <= 10^4", Some(Duration::from_secs(30)), 1, || {
        match sigma_table(10_000, Method::Recurrence).and_then(|t| first_mismatch(&t)) {
            Ok(None) => (true, "no mismatch".into()),
            Ok(Some(n)) => (false, format!("first mismatch at N = {n}")),
            Err(e) => (false, e.to_string()),
        }
    })
}

pub fn pentagonal_number_theorem() -> CriterionOutcome {
    timed(4, "product = pentagonal series to degree 1000", Some(Duration::from_secs(5)), 1, || {
        let product = euler_product(1000);
        let series = pentagonal_series(1000);
        let bad = product
            .coeffs()
            .iter()
            .zip(series.coeffs())
            .position(|(a, b)| a != b);
        match bad {
            None => (true, format!("{} nonzero coefficients", series.nonzero_count())),
            Some(d) => (false, format!("first mismatch at degree {d}")),
        }
    })
}

pub fn symmetric_functions() -> CriterionOutcome {
    timed(5, "symmetric functions and power sums", None, 1, || {
        let s = euler_product(200);
        let (Ok(e), Ok(p)) = (elementary_symmetric(&s, 5), power_sums(&s, 200)) else {
            return (false, "newton identities failed".into());
        };
        let want_e: Vec<BigInt> = [1, -1, 0, 0, -1].map(BigInt::from).to_vec();
        let want_p: Vec<BigInt> = [1, 3, 4, 7].map(BigInt::from).to_vec();
        let sigma_ok = p.iter().enumerate().all(|(k, pk)| {
            sigma_brute(k as u64 + 1).is_ok_and(|s| pk.to_biguint().as_ref() == Some(&s))
        });
        let ok = e == want_e && p[..4] == want_p[..] && sigma_ok;
        (ok, format!("e1..e5 = {e:?}, p1..p4 = {:?}, p_k = σ(k) to 200: {sigma_ok}", &p[..4]))
    })
}

pub fn period_cancellation() -> CriterionOutcome {
    timed(6, "period cancellation m <= 24, 5 blocks", Some(Duration::from_secs(1)), 1, || {
        let mut failures = Vec::new();
        for m in 1..=24 {
            match verify_period_cancellation(m, 5) {
                Ok(r) if r.passed() => {}
                _ => failures.push(m),
            }
            match substitute_stream(m, 1, (20 * m) as usize) {
                Ok(v) if v.is_zero() => {}
                _ => failures.push(m),
            }
        }
        let lens_ok = (2..=5).all(|m| period_profile(m).is_ok_and(|p| p.len() == 4 * m as usize));
        (failures.is_empty() && lens_ok, format!("failing m: {failures:?}"))
    })
}

pub fn basis_cancellation() -> CriterionOutcome {
    timed(7, "basis partial sums", None, 1, || {
        match (verify_basis_cancellation(5, 0), verify_basis_cancellation(1, 0)) {
            (Ok(a), Ok(b)) => {
                let ok = a.partial_sums == [1, 2, 1, 0, -1, -2, -1, 0]
                    && a.passed()
                    && b.partial_sums == [1, 0, -1, 0]
                    && b.passed();
                (ok, format!("m=5: {:?}; m=1: {:?}", a.partial_sums, b.partial_sums))
            }
            _ => (false, "basis check failed".into()),
        }
    })
}

fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn euler_summation() -> CriterionOutcome {
    timed(8, "finite-difference summation", None, 1, || {
        let rows_ok = difference_table(&ints(&[1, 5, 12, 22, 35, 51, 70]), 10).is_ok_and(|t| {
            t.rows()[1] == ints(&[4, 7, 10, 13, 16, 19]) && t.rows()[2] == ints(&[3, 3, 3, 3, 3])
        }) && difference_table(&ints(&[4, 49, 225, 676, 1600, 3249, 5929]), 10)
            .is_ok_and(|t| t.rows()[4] == ints(&[54, 54, 54]) && t.rows()[5] == ints(&[0, 0]));
        let (Ok(p1), Ok(p2)) = (pentagonal_power_sum(1), pentagonal_power_sum(2)) else {
            return (false, "power sums failed".into());
        };
        let lambda1 = p1.s == rat(1, 8) && p1.t == rat(-1, 8);
        // for λ = 2 the branch series are displayed with their signs changed
        let shown = (-p2.s.clone(), -p2.t.clone());
        let lambda2 = shown == (rat(3, 16), rat(-3, 16))
            && euler_sum_alternating(&ints(&[1, 25, 144, 484, 1225, 2601, 4900]))
                .is_ok_and(|v| v == rat(3, 16))
            && euler_sum_alternating(&ints(&[4, 49, 225, 676, 1600, 3249, 5929]))
                .is_ok_and(|v| v == rat(-3, 16));
        let leibniz = euler_sum_alternating(&ints(&[1, 1, 1, 1])).is_ok_and(|v| v == rat(1, 2));
        (
            rows_ok && lambda1 && lambda2 && leibniz,
            format!(
                "λ=1: s={} t={}; λ=2 (sign-changed): s={} t={}; Leibniz 1/2: {leibniz}",
                p1.s, p1.t, shown.0, shown.1
            ),
        )
    })
}

pub fn power_sum_identity() -> CriterionOutcome {
    timed(9, "λ-power sums vanish, λ <= 10", None, 1, || {
        let bad: Vec<u32> = (0..=10)
            .filter(|&l| !pentagonal_power_sum(l).is_ok_and(|p| p.total.is_zero()))
            .collect();
        (bad.is_empty(), format!("nonzero totals at λ = {bad:?}"))
    })
}

/// One `(λ, m, i)` decay comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecaySample {
    pub lambda: u32,
    pub m: u64,
    pub i: u64,
    pub far: f64,
    pub near: f64,
}

/// `|abel_evaluate|` at both radii for `λ <= max_lambda`, `m <= max_m`, all `i`.
/// Tuples run on scoped threads; each evaluation is itself sequential.
pub fn abel_decay_samples(max_lambda: u32, max_m: u64) -> crate::Result<Vec<DecaySample>> {
    let tuples: Vec<(u32, u64, u64)> = (0..=max_lambda)
        .flat_map(|l| (1..=max_m).flat_map(move |m| (0..m).map(move |i| (l, m, i))))
        .collect();
    thread::scope(|scope| {
        let handles: Vec<_> = tuples
            .iter()
            .map(|&(lambda, m, i)| {
                scope.spawn(move || -> crate::Result<DecaySample> {
                    let far = abel_evaluate(lambda, m, i as i64, ABEL_RHO_FAR, ABEL_TOLERANCE)?;
                    let near = abel_evaluate(lambda, m, i as i64, ABEL_RHO_NEAR, ABEL_TOLERANCE)?;
                    Ok(DecaySample {
                        lambda,
                        m,
                        i,
                        far: far.norm(),
                        near: near.norm(),
                    })
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("abel worker panicked"))
            .collect()
    })
}

pub fn abel_decay() -> CriterionOutcome {
    timed(10, "damped sums decay toward zero", Some(Duration::from_secs(60)), 1, || {
        let samples = match abel_decay_samples(3, 6) {
            Ok(s) => s,
            Err(e) => return (false, e.to_string()),
        };
        let non_decaying: Vec<_> = samples
            .iter()
            .filter(|s| s.near.partial_cmp(&s.far) != Some(std::cmp::Ordering::Less))
            .map(|s| (s.lambda, s.m, s.i))
            .collect();
        let mut worst_class = 0f64;
        for lambda in 0..=3 {
            for m in 1..=4 {
                for r in 0..m {
                    match residue_class_abel(lambda, m, r, ABEL_RHO_NEAR, ABEL_TOLERANCE) {
                        Ok(v) => worst_class = worst_class.max(v.norm()),
                        Err(e) => return (false, e.to_string()),
                    }
                }
            }
        }
        (
            non_decaying.is_empty() && worst_class < RESIDUE_CLASS_BOUND,
            format!(
                "{} tuples, non-decaying {non_decaying:?}, max residue-class |value| {worst_class:.3e}",
                samples.len()
            ),
        )
    })
}

pub fn mutation_sensitivity() -> CriterionOutcome {
    timed(11, "boundary rule is load-bearing", None, 1, || {
        let Ok(table) = sigma_table(11, Method::Brute) else {
            return (false, "table".into());
        };
        let mutated = sigma_recurrence_trace(12, &table, BoundaryRule::Disabled);
        let kept = sigma_recurrence_trace(12, &table, BoundaryRule::SubstituteN);
        match (mutated, kept) {
            (Ok(bad), Ok(good)) => {
                let broken = bad.value != BigInt::from(28);
                (
                    broken && good.value == BigInt::from(28),
                    format!("σ(12) without the rule = {}, with = {}", bad.value, good.value),
                )
            }
            _ => (false, "recurrence failed".into()),
        }
    })
}

/// Every check, in order.
pub fn run_all() -> Vec<CriterionOutcome> {
    vec![
        sigma_regression(),
        recurrence_examples(),
        oracle_equivalence(),
        pentagonal_number_theorem(),
        symmetric_functions(),
        period_cancellation(),
        basis_cancellation(),
        euler_summation(),
        power_sum_identity(),
        abel_decay(),
        mutation_sensitivity(),
    ]
}
