use std::f64::consts::PI;
use std::process::{Command, Output};

fn pms(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pms")).args(args).output().expect("run pms")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Parses a CSV body into header and rows of floats (empty cells as NaN).
fn csv(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect::<Vec<_>>();
    let rows = lines
        .map(|l| {
            l.split(',')
                .map(|c| match c {
                    "" => f64::NAN,
                    "true" => 1.0,
                    "false" => 0.0,
                    _ => c.parse().unwrap(),
                })
                .collect::<Vec<f64>>()
        })
        .collect::<Vec<_>>();
    for r in &rows {
        assert_eq!(r.len(), header.len());
    }
    (header, rows)
}

#[test]
fn duffing_harmonic_rows() {
    let o = pms(&["period", "duffing", "--rho", "0", "--order", "4"]);
    assert!(o.status.success());
    let (header, rows) = csv(&stdout(&o));
    assert_eq!(header, ["n", "period"]);
    assert_eq!(rows.len(), 5);
    for r in rows {
        assert!((r[1] - 2.0 * PI).abs() < 1e-15);
    }
}

#[test]
fn sextic_exact_column() {
    let o = pms(&["period", "sextic", "--rho", "-0.9", "--order", "4", "--exact"]);
    assert!(o.status.success());
    let (header, rows) = csv(&stdout(&o));
    assert_eq!(header, ["n", "period", "exact"]);
    assert!((rows[0][2] - 10.93467798).abs() < 1e-7);
}

#[test]
fn pendulum_quartic_leading() {
    let o = pms(&["period", "pendulum", "--amplitude", "1", "--taylor", "4", "--order", "0"]);
    let (_, rows) = csv(&stdout(&o));
    let expected = 4.0 * 2f64.sqrt() * PI / 7f64.sqrt();
    assert!((rows[0][1] - expected).abs() < 1e-14);
}

#[test]
fn mu_and_amplitude_normalise_to_rho() {
    let a = stdout(&pms(&["period", "duffing", "--mu", "4", "--amplitude", "0.5"]));
    let b = stdout(&pms(&["period", "duffing", "--rho", "1"]));
    assert_eq!(a, b);
}

#[test]
fn invalid_parameters_exit_2() {
    let o = pms(&["period", "duffing", "--rho", "-2"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("rho must exceed -1"), "{err}");
    assert_eq!(err.trim().lines().count(), 1);

    let o = pms(&["period", "cubic", "--x-minus", "-1", "--x-plus", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = pms(&["period", "pendulum", "--amplitude", "4"]);
    assert_eq!(o.status.code(), Some(2));
    let o = pms(&["convergence", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn convergence_prints_fit() {
    let o = pms(&["convergence", "duffing-b0", "--max-order", "10"]);
    assert!(o.status.success());
    let (header, rows) = csv(&stdout(&o));
    assert_eq!(header, ["n", "value", "reference", "rel_error"]);
    assert_eq!(rows.len(), 11);
    assert!(stderr(&o).contains("beta="));
    assert!(stderr(&o).contains("beta_pks=1.11"));
}

#[test]
fn convergence_to_file() {
    let dir = std::env::temp_dir().join(format!("pms-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sextic.csv");
    let o = pms(&["convergence", "sextic-c0", "--max-order", "16", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("fit: alpha="));
    let (_, rows) = csv(&std::fs::read_to_string(&path).unwrap());
    assert_eq!(rows.len(), 17);
    assert!((rows[0][2] - 8.413092631).abs() < 1e-8);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn precession_table_has_one_column_per_order() {
    let o = pms(&[
        "convergence",
        "precession",
        "--a-min",
        "150",
        "--a-max",
        "1000",
        "--points",
        "5",
        "--orders",
        "0,2,4,6",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (header, rows) = csv(&stdout(&o));
    assert_eq!(header, ["a", "reference", "err_n0", "err_n2", "err_n4", "err_n6"]);
    assert_eq!(rows.len(), 5);
}

#[test]
fn precession_below_critical_exit_3() {
    let o = pms(&["precession", "--a", "90"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("below critical semimajor axis a_c="));
    // a = 100 is below the recomputed a_c ≈ 101.47
    let o = pms(&["convergence", "precession", "--a-min", "100", "--a-max", "1000"]);
    assert_eq!(o.status.code(), Some(3));
    // the series alone may be extrapolated below a_c
    let o = pms(&["precession", "--a", "100", "--no-exact"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().nth(1).unwrap().ends_with(",,true"));
}

#[test]
fn circular_orbit_closed_form() {
    let o = pms(&["precession", "--a", "1000", "--eccentricity", "0", "--units", "rad", "--order", "0"]);
    let (_, rows) = csv(&stdout(&o));
    let gm = 7.425e-30 * 1.97e30;
    let closed = 2.0 * PI * (1.0 / (1.0 - 6.0 * gm / 1000.0f64).sqrt() - 1.0);
    assert!(((rows[0][1] - closed) / closed).abs() < 1e-13);
    assert!(((rows[0][2] - closed) / closed).abs() < 1e-12);
}

#[test]
fn precession_explicit_gm() {
    let a = stdout(&pms(&["precession", "--a", "500", "--GM", "14.62725"]));
    let b = stdout(&pms(&["precession", "--a", "500"]));
    assert_eq!(a, b);
    let o = pms(&["precession", "--a", "500", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["units"], "arcsec");
    assert_eq!(v["rows"].as_array().unwrap().len(), 7);
}

#[test]
fn byte_identical_reruns() {
    for args in [
        &["period", "even", "--k", "5", "--rho", "100", "--order", "8", "--exact"][..],
        &["convergence", "negative-rho", "--k", "4", "--format", "json"][..],
        &["convergence", "duffing-rho", "--points", "20"][..],
    ] {
        let a = pms(args);
        let b = pms(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.stderr, b.stderr);
    }
}

#[test]
fn tolerance_override() {
    let o = Command::new(env!("CARGO_BIN_EXE_pms"))
        .args(["period", "sextic", "--rho", "2", "--exact", "--order", "0"])
        .env("PMS_ABS_TOL", "1e-6")
        .output()
        .unwrap();
    assert!(o.status.success());
    let o = Command::new(env!("CARGO_BIN_EXE_pms"))
        .args(["period", "sextic", "--rho", "2"])
        .env("PMS_ABS_TOL", "-1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
