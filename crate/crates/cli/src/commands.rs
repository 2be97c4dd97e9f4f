use std::fs;
use std::path::Path;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde_json::{json, Value};

use pentafold::cyclotomic::{
    substitute_stream, verify_basis_cancellation, verify_period_cancellation,
};
use pentafold::pentagonal::{differences, interpolated_sequence, is_pentagonal, term_stream};
use pentafold::qseries::{
    elementary_symmetric, euler_product, euler_product_by_multiplication, pentagonal_series,
    power_sums,
};
use pentafold::sigma::{
    first_mismatch, sigma_brute, sigma_recurrence_trace, sigma_table, BoundaryRule, Method,
    SigmaTable,
};
use pentafold::summation::{abel_csv_line, abel_evaluate, pentagonal_power_sum, residue_class_abel};
use pentafold::verification;

use crate::output::{align, Outcome};
use crate::{Cli, Command, SigmaMethod};

#[derive(Debug)]
pub enum RunError {
    /// Arguments parsed but are out of range for the command.
    Usage(String),
    /// The computation itself could not complete.
    Failed(String),
}

impl From<pentafold::Error> for RunError {
    fn from(e: pentafold::Error) -> Self {
        match e {
            pentafold::Error::Domain(msg) => RunError::Usage(msg),
            other => RunError::Failed(other.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, RunError>;

fn verdict(pass: bool) -> &'static str {
    if pass { "PASS" } else { "FAIL" }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Seq { count, value } => seq(*count, value.as_deref()),
        Command::Sigma { max_n, method, trace } => sigma(*max_n, *method, *trace, cli.cache.as_deref()),
        Command::VerifyPnt { degree, dump } => verify_pnt(*degree, *dump),
        Command::VerifyPeriods { m, r, count } => verify_periods(*m, *r, *count),
        Command::VerifyPowersums { count } => verify_powersums(*count as usize),
        Command::Sum { lambda } => sum(*lambda),
        Command::Abel { lambda, m, r, rho, reference, tolerance } => {
            abel(*lambda, *m, *r, *rho, *reference, *tolerance)
        }
        Command::Report => Ok(report()),
    }
}

fn seq(count: u64, value: Option<&str>) -> Result<Outcome> {
    let mut out = Outcome::default();
    if let Some(raw) = value {
        let v: BigUint = raw
            .parse()
            .map_err(|_| RunError::Usage(format!("--value expects a non-negative integer, got {raw:?}")))?;
        let (line, js) = match is_pentagonal(&v) {
            Some((k, branch)) => (format!("{v},{k},{branch}"), json!({"value": v.to_string(), "k": k, "branch": branch.to_string()})),
            None => (format!("{v},none"), json!({"value": v.to_string(), "k": null})),
        };
        out.table.push(line.replace(',', "  "));
        out.csv.push(line);
        out.json = js;
        return Ok(out);
    }

    let terms = term_stream(count as usize, false)?;
    let mut merged = vec![BigInt::from(0)];
    merged.extend(terms.iter().map(|t| BigInt::from(t.value.clone())));
    let diffs = differences(&merged)?;
    let interpolated = interpolated_sequence(count as usize)?;

    let mut rows = vec![["p", "k", "branch", "value", "sign"].map(String::from).to_vec()];
    let mut terms_json = Vec::new();
    for (p, t) in terms.iter().enumerate() {
        let cells = vec![
            (p + 1).to_string(),
            t.k.to_string(),
            t.branch.to_string(),
            t.value.to_string(),
            t.sign.to_string(),
        ];
        out.csv.push(cells.join(","));
        rows.push(cells);
        terms_json.push(json!({
            "position": p + 1, "k": t.k, "branch": t.branch.to_string(),
            "value": t.value.to_string(), "sign": t.sign.as_i64(),
        }));
    }
    out.table = align(&rows);
    let join = |xs: Vec<String>| xs.join(", ");
    out.table.push(format!(
        "differences: {}",
        join(diffs.iter().map(ToString::to_string).collect())
    ));
    out.table.push(format!(
        "with thirds: {}",
        join(interpolated.iter().map(ToString::to_string).collect())
    ));
    out.json = json!({
        "terms": terms_json,
        "differences": diffs.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "interpolated": interpolated.iter().map(ToString::to_string).collect::<Vec<_>>(),
    });
    Ok(out)
}

fn load_cache(path: &Path, max_n: u64) -> Option<SigmaTable> {
    let text = fs::read_to_string(path).ok()?;
    match SigmaTable::from_csv(&text) {
        Ok(t) if t.max_n() >= max_n => Some(t.truncated(max_n)),
        Ok(_) => None,
        Err(e) => {
            eprintln!("warning: ignoring cache {}: {e}", path.display());
            None
        }
    }
}

fn sigma(max_n: u64, method: SigmaMethod, trace: bool, cache: Option<&Path>) -> Result<Outcome> {
    let cached = cache.and_then(|p| load_cache(p, max_n));
    let from_cache = cached.is_some();
    let table = match cached {
        Some(t) => t,
        None => sigma_table(
            max_n,
            match method {
                SigmaMethod::Brute => Method::Brute,
                SigmaMethod::Recurrence => Method::Recurrence,
            },
        )?,
    };
    if let (Some(path), false) = (cache, from_cache) {
        if let Err(e) = fs::write(path, table.to_csv()) {
            eprintln!("warning: could not write cache {}: {e}", path.display());
        }
    }
    if trace {
        let t = sigma_recurrence_trace(max_n, &table, BoundaryRule::SubstituteN)?;
        eprintln!("{t}");
    }

    let mut out = Outcome::default();
    if let Some(n) = first_mismatch(&table)? {
        out.failures.push(format!("{n},{} disagrees with trial division ({})", table.get(n).unwrap(), sigma_brute(n)?));
    }
    let mut rows = vec![vec!["N".to_string(), "σ(N)".to_string()]];
    let mut js = Vec::new();
    for (i, v) in table.values().iter().enumerate() {
        let n = i + 1;
        out.csv.push(format!("{n},{v}"));
        rows.push(vec![n.to_string(), v.to_string()]);
        js.push(json!({"n": n, "sigma": v.to_string()}));
    }
    out.table = align(&rows);
    out.json = Value::Array(js);
    Ok(out)
}

fn verify_pnt(degree: usize, dump: bool) -> Result<Outcome> {
    let product = euler_product(degree);
    let series = pentagonal_series(degree);
    let folded = euler_product_by_multiplication(degree);
    let exponents = product
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(d, _)| is_pentagonal(&BigUint::from(*d)).is_some())
        .count();

    let mut out = Outcome::default();
    let checks = [
        ("shift_subtract", degree, product.nonzero_count(), product == series),
        ("multiply_truncated", degree, folded.nonzero_count(), folded == series),
        ("pentagonal_exponents", degree, exponents, exponents == series.nonzero_count()),
    ];
    let mut rows = vec![["route", "degree", "nonzero", "verdict"].map(String::from).to_vec()];
    let mut js = Vec::new();
    for (route, d, nonzero, pass) in checks {
        let line = format!("{route},{d},{nonzero},{}", verdict(pass));
        rows.push(vec![route.into(), d.to_string(), nonzero.to_string(), verdict(pass).into()]);
        js.push(json!({"route": route, "degree": d, "nonzero": nonzero, "pass": pass}));
        out.check_line(line);
    }
    out.table = align(&rows);
    out.json = json!({ "checks": js });
    if dump {
        let lines: Vec<String> = product.dump().lines().map(String::from).collect();
        out.table = lines.clone();
        out.csv = lines;
        out.json["series"] = product
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(d, c)| json!([d, c.to_string()]))
            .collect();
    }
    Ok(out)
}

fn verify_periods(max_m: u64, only_r: Option<u64>, periods: u64) -> Result<Outcome> {
    if let Some(r) = only_r {
        if r >= max_m {
            return Err(RunError::Usage(format!("--r {r} must be below --m {max_m}")));
        }
    }
    let mut out = Outcome::default();
    let mut rows = vec![["m", "r", "period", "signed_sum", "basis_sum", "verdict"].map(String::from).to_vec()];
    let mut js = Vec::new();
    for m in 1..=max_m {
        let report = verify_period_cancellation(m, periods)?;
        let whole = substitute_stream(m, 1, (4 * m * periods) as usize)?;
        let mut line = report.csv_line();
        if !whole.is_zero() {
            line = line.replace(",PASS", ",FAIL");
        }
        js.push(json!({
            "m": m, "r": "*", "period_length": 4 * m,
            "violations": report.violations.len(),
            "partial_sum_aggregate": report.partial_sum_aggregate.to_string(),
            "pass": line.ends_with("PASS"),
        }));
        rows.push(line.split(',').map(String::from).collect());
        out.check_line(line);

        let residues: Vec<u64> = match only_r {
            Some(r) if r < m => vec![r],
            Some(_) => vec![],
            None => (0..m).collect(),
        };
        for r in residues {
            let b = verify_basis_cancellation(m, r)?;
            let line = b.csv_line();
            js.push(json!({
                "m": m, "r": r, "period_length": b.period_length,
                "signed_sum": b.signed_sum, "basis_sum": b.basis_sum, "pass": b.passed(),
            }));
            rows.push(line.split(',').map(String::from).collect());
            out.check_line(line);
        }
    }
    out.table = align(&rows);
    out.json = Value::Array(js);
    Ok(out)
}

fn verify_powersums(count: usize) -> Result<Outcome> {
    let s = euler_product(count);
    let e = elementary_symmetric(&s, count)?;
    let p = power_sums(&s, count)?;
    let mut out = Outcome::default();
    let mut rows = vec![["k", "e_k", "p_k", "σ(k)", "verdict"].map(String::from).to_vec()];
    let mut js = Vec::new();
    for k in 1..=count {
        let sigma = sigma_brute(k as u64)?;
        let pass = p[k - 1] == BigInt::from(sigma.clone());
        let cells = vec![k.to_string(), e[k - 1].to_string(), p[k - 1].to_string(), sigma.to_string(), verdict(pass).to_string()];
        js.push(json!({"k": k, "e": cells[1], "p": cells[2], "sigma": cells[3], "pass": pass}));
        out.check_line(cells.join(","));
        rows.push(cells);
    }
    out.table = align(&rows);
    out.json = Value::Array(js);
    Ok(out)
}

fn sum(lambda: u32) -> Result<Outcome> {
    let p = pentagonal_power_sum(lambda)?;
    let pass = p.total.is_zero();
    let mut out = Outcome::default();
    out.table.push(format!("s={} t={} total={}", p.s, p.t, p.total));
    out.check_line(format!("{lambda},{},{},{},{}", p.s, p.t, p.total, verdict(pass)));
    let rows = |t: &pentafold::DifferenceTable| -> Vec<Vec<String>> {
        t.rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
    };
    out.json = json!({
        "lambda": lambda,
        "s": p.s.to_string(),
        "t": p.t.to_string(),
        "total": p.total.to_string(),
        "minus_differences": rows(&p.minus_table),
        "plus_differences": rows(&p.plus_table),
        "pass": pass,
    });
    Ok(out)
}

fn abel(lambda: u32, m: u64, only_r: Option<u64>, rho: f64, reference: f64, tolerance: f64) -> Result<Outcome> {
    if reference.partial_cmp(&rho) != Some(std::cmp::Ordering::Less) {
        return Err(RunError::Usage(format!("--reference {reference} must be below --rho {rho}")));
    }
    if let Some(r) = only_r {
        if r >= m {
            return Err(RunError::Usage(format!("--r {r} must be below --m {m}")));
        }
    }
    let mut out = Outcome::default();
    let mut rows = vec![["lambda", "m", "class", "rho", "|value|", "verdict"].map(String::from).to_vec()];
    let mut js = Vec::new();
    let mut emit = |out: &mut Outcome, label: String, near: f64, far: f64| {
        let pass = near < far;
        let line = abel_csv_line(lambda, m, &label, rho, near, pass);
        rows.push(line.split(',').map(String::from).collect());
        js.push(json!({"lambda": lambda, "m": m, "class": label, "rho": rho, "abs": near, "reference_abs": far, "pass": pass}));
        out.check_line(line);
    };
    if only_r.is_none() {
        for i in 0..m as i64 {
            let near = abel_evaluate(lambda, m, i, rho, tolerance)?.norm();
            let far = abel_evaluate(lambda, m, i, reference, tolerance)?.norm();
            emit(&mut out, format!("i={i}"), near, far);
        }
    }
    let residues: Vec<u64> = only_r.map(|r| vec![r]).unwrap_or_else(|| (0..m).collect());
    for r in residues {
        let near = residue_class_abel(lambda, m, r, rho, tolerance)?.norm();
        let far = residue_class_abel(lambda, m, r, reference, tolerance)?.norm();
        emit(&mut out, format!("r={r}"), near, far);
    }
    out.table = align(&rows);
    out.json = Value::Array(js);
    Ok(out)
}

fn report() -> Outcome {
    let outcomes = verification::run_all();
    let mut out = Outcome::default();
    let mut js = Vec::new();
    for o in &outcomes {
        eprintln!("criterion {} took {:?}", o.id, o.elapsed);
        let v = verdict(o.passed);
        out.table.push(format!("[{v}] {:>2} {}: {}", o.id, o.name, o.detail));
        out.check_line(format!("{},{},{v}", o.id, o.name.replace(',', ";")));
        js.push(json!({"id": o.id, "name": o.name, "detail": o.detail, "pass": o.passed}));
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    out.table.push(format!("{passed}/{} criteria passed", outcomes.len()));
    out.json = json!({"criteria": js, "passed": passed, "total": outcomes.len()});
    out
}
