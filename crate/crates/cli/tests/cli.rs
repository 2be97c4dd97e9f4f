use std::path::PathBuf;
use std::process::{Command, Output};

fn pentafold(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pentafold"))
        .args(args)
        .env_remove("PENTAFOLD_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pentafold-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join("sigma.csv")
}

#[test]
fn verify_pnt_passes() {
    let o = pentafold(&["verify-pnt", "--degree", "1000"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS"));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn sigma_csv_eleven_lines() {
    let o = pentafold(&["sigma", "--max", "11", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 11);
    assert_eq!(out.lines().last(), Some("11,12"));
}

#[test]
fn sigma_trace_goes_to_stderr() {
    let o = pentafold(&["sigma", "--max", "13", "--trace", "--format", "csv"]);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("28+12-15-12+1 = 14"), "{err}");
}

#[test]
fn sum_prints_branch_sums() {
    let o = pentafold(&["sum", "--lambda", "1"]);
    assert_eq!(stdout(&o), "s=1/8 t=-1/8 total=0\n");
    let o = pentafold(&["sum", "--lambda", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "s=-3/16 t=3/16 total=0\n");
    let o = pentafold(&["sum", "--lambda", "0", "--format", "csv"]);
    assert_eq!(stdout(&o), "0,-1/2,-1/2,0,PASS\n");
}

#[test]
fn seq_lookup() {
    assert_eq!(stdout(&pentafold(&["seq", "--value", "26", "--format", "csv"])), "26,4,plus\n");
    assert_eq!(stdout(&pentafold(&["seq", "--value", "13", "--format", "csv"])), "13,none\n");
    let o = pentafold(&["seq", "--value", "x"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn seq_json_is_valid() {
    let o = pentafold(&["seq", "--count", "12", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["terms"][11]["value"], "57");
    assert_eq!(v["interpolated"][2], "10/3");
}

#[test]
fn verify_periods_lines() {
    let o = pentafold(&["verify-periods", "--m", "5", "--r", "0", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "5,0,8,0,0,PASS"));
    assert!(out.lines().any(|l| l == "5,*,20,0,0,PASS"));
    let o = pentafold(&["verify-periods", "--m", "3", "--r", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn powersums_match_divisor_sums() {
    let o = pentafold(&["verify-powersums", "--count", "60", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().nth(3), Some("4,0,7,7,PASS"));
}

#[test]
fn abel_lines_and_bad_radius() {
    let o = pentafold(&["abel", "--lambda", "2", "--m", "3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 6);
    assert!(out.lines().all(|l| l.starts_with("2,3,") && l.ends_with(",PASS")));
    assert_eq!(pentafold(&["abel", "--rho", "1.5"]).status.code(), Some(2));
    assert_eq!(pentafold(&["abel", "--m", "2", "--r", "2"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(pentafold(&["sigma"]).status.code(), Some(2));
    assert_eq!(pentafold(&["sigma", "--max", "0"]).status.code(), Some(2));
    assert_eq!(pentafold(&["nonsense"]).status.code(), Some(2));
    assert_eq!(pentafold(&["sum", "--format", "xml"]).status.code(), Some(2));
}

#[test]
fn cache_is_written_and_reused() {
    let path = scratch("reuse");
    let _ = std::fs::remove_file(&path);
    let p = path.to_str().unwrap();
    let o = pentafold(&["sigma", "--max", "20", "--cache", p, "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let cached = std::fs::read_to_string(&path).unwrap();
    assert_eq!(cached, stdout(&o));

    // a smaller request is served from the existing file
    let o = pentafold(&["sigma", "--max", "11", "--cache", p, "--format", "csv"]);
    assert_eq!(stdout(&o).lines().last(), Some("11,12"));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), cached);
}

#[test]
fn corrupted_cache_fails_the_check() {
    let path = scratch("corrupt");
    std::fs::write(&path, "1,1\n2,3\n3,5\n4,7\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_pentafold"))
        .args(["sigma", "--max", "4", "--format", "csv"])
        .env("PENTAFOLD_CACHE", &path)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("FAIL: 3,5"), "{err}");
}

#[test]
fn unparsable_cache_is_recomputed() {
    let path = scratch("garbage");
    std::fs::write(&path, "not a table\n").unwrap();
    let o = pentafold(&["sigma", "--max", "6", "--cache", path.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().last(), Some("6,12"));
    assert!(std::fs::read_to_string(&path).unwrap().ends_with("6,12\n"));
}

#[test]
fn identical_config_identical_report() {
    let a = pentafold(&["report", "--format", "csv"]);
    let b = pentafold(&["report", "--format", "csv"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 11);
    let c = pentafold(&["abel", "--lambda", "3", "--m", "6", "--format", "csv"]);
    let d = pentafold(&["abel", "--lambda", "3", "--m", "6", "--format", "csv"]);
    assert_eq!(c.stdout, d.stdout);
}
