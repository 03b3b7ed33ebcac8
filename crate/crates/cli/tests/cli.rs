use std::f64::consts::PI;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subfrac"))
        .args(args)
        .env_remove("SUBFRAC_TOL")
        .output()
        .unwrap()
}

fn rows(out: &Output) -> Vec<Vec<f64>> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect()
}

#[test]
fn psi_on_log_grid() {
    let out = run(&["eval", "psi", "--alpha", "0.5", "--beta", "0.5", "--t", "1", "--tau-grid", "0.1:10:50:log"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    assert!(text.starts_with("# columns: tau,psi\n"));
    let r = rows(&out);
    assert_eq!(r.len(), 50);
    for row in &r {
        let tau = row[0];
        let exact = 1.0 / (PI * tau.sqrt() * (1.0 + tau));
        assert!((row[1] - exact).abs() <= 1e-11 * exact, "tau={tau}");
    }
    let one = run(&["eval", "psi", "--alpha", "0.5", "--beta", "0.5", "--t", "1", "--tau", "1"]);
    assert_eq!(String::from_utf8(one.stdout).unwrap(), "# columns: t,psi\n1.00000000000e0,1.59154943092e-1\n");
}

#[test]
fn green_matches_exponential_integral_form() {
    let out = run(&["eval", "green", "--alpha", "0.5", "--beta", "0.5", "--n", "1", "--t", "1", "--rho-grid", "0.1:5:25:linear"]);
    assert!(out.status.success());
    let r = rows(&out);
    assert_eq!(r.len(), 25);
    assert_eq!(r[0][0], 0.1);
    assert_eq!(r[24][0], 5.0);
    // ρ = 2: e E₁(1) / (2π^{3/2})
    let at2 = run(&["eval", "green", "--alpha", "0.5", "--beta", "0.5", "--n", "1", "--t", "1", "--rho", "2"]);
    let v = rows(&at2)[0][1];
    assert!((v - 0.053_548_153_293_278_20).abs() < 1e-12);
}

#[test]
fn output_is_deterministic() {
    let args = ["eval", "k", "--alpha", "0.4", "--beta", "0.8", "--x-grid", "0.05:20:12:log"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["eval", "psi", "--alpha", "0.5"][..],
        &["eval", "ml", "--alpha", "2", "--x", "1"],
        &["eval", "psi", "--alpha", "0.5", "--beta", "0.5", "--t", "1", "--tau-grid", "1:0:5:linear"],
        &["eval", "psi", "--alpha", "0.5", "--beta", "0.5", "--t-grid", "1:2:3:linear", "--tau-grid", "1:2:3:linear"],
        &["eval", "green", "--alpha", "0.4", "--beta", "0.8", "--n", "2", "--t", "1", "--rho", "1", "--method", "2d"],
        &["eval", "k", "--alpha", "0.5", "--beta", "0.5", "--x", "1", "--rep", "rep9"],
        &["bogus"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty() || !String::from_utf8_lossy(&out.stdout).contains(','));
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn numerical_failure_exits_1() {
    let out = run(&["eval", "green", "--alpha", "0.5", "--beta", "0.5", "--n", "1", "--t", "1", "--rho", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("green_function"), "{err}");
    let out = run(&["eval", "levy", "--alpha", "1", "--x", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn tolerance_from_environment() {
    let args = ["eval", "k", "--alpha", "0.4", "--beta", "0.8", "--x", "1", "--rep", "rep1"];
    let loose = Command::new(env!("CARGO_BIN_EXE_subfrac")).args(args).env("SUBFRAC_TOL", "1e-3").output().unwrap();
    assert!(loose.status.success());
    let bad = Command::new(env!("CARGO_BIN_EXE_subfrac")).args(args).env("SUBFRAC_TOL", "-1").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn solvers() {
    let out = run(&["solve", "spectral", "--alpha", "1", "--beta", "1", "--t", "1", "--lambda-grid", "1:4:4:linear"]);
    let r = rows(&out);
    for row in r {
        assert_eq!(row[1], format!("{:.11e}", (-row[0]).exp()).parse::<f64>().unwrap());
    }
    let out = run(&["solve", "advection", "--alpha", "1", "--beta", "1", "--t", "1", "--x-grid", "0.5:2:4:linear"]);
    let r = rows(&out);
    let u: Vec<f64> = r.iter().map(|row| row[1]).collect();
    assert_eq!(u, vec![0.0, 1.0, 1.0, 1.0]);
    let out = run(&["solve", "advection", "--alpha", "0.5", "--beta", "0.5", "--t", "1", "--x", "1"]);
    assert!((rows(&out)[0][1] - 0.5).abs() < 1e-10);
}

#[test]
fn verify_all_checks() {
    let out = run(&["verify", "all-checks"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "{text}");
    assert!(text.lines().count() > 100);
    for line in text.lines() {
        assert!(line.starts_with("PASS "), "{line}");
        assert!(line.contains(" observed=") && line.contains(" expected=") && line.contains(" tol="));
    }
}
