use gaugecalc_cli::{run, Config, Format};
use serde_json::Value;

fn go(args: &[&str]) -> gaugecalc_cli::Outcome {
    run(std::iter::once("gaugecalc").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let out = go(args);
    assert_eq!(out.code, 0, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn brieskorn_rows() {
    let v = json(&["brieskorn", "--a1", "2", "--a2", "3", "--a3", "23", "--group", "su3", "--format", "json"]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 44);
    assert_eq!(rows[0]["label"], "alpha1");
    assert_eq!(rows[0]["cs"], "1/138");
    assert_eq!(rows[0]["rho"], "-364/23");
    assert_eq!(rows[0]["degree"], 4);
    let v = json(&["brieskorn", "--a1", "2", "--a2", "3", "--a3", "23", "--group", "su2", "--format", "json"]);
    assert_eq!(v[0]["label"], "beta2");
    assert_eq!(v[0]["cs"], "1/552");
    assert_eq!(v[0]["rho"], "-343/69");
    let v = json(&["brieskorn", "--a1", "2", "--a2", "3", "--a3", "23", "--group", "su2-in-su3", "--format", "json"]);
    assert_eq!(v[0]["rho"], "-206/23");
    assert_eq!(v[0]["degree"], 1);
}

#[test]
fn brieskorn_csv_and_approx() {
    let out = go(&["brieskorn", "--a1", "2", "--a2", "3", "--a3", "5", "--group", "su2", "--format", "csv", "--approx"]);
    assert_eq!(out.code, 0);
    let mut lines = out.stdout.lines();
    assert_eq!(lines.next().unwrap(), "label,exponents,cs,rho,degree,cs_approx,rho_approx");
    assert_eq!(lines.count(), 2);
}

#[test]
fn blowup_verify_prints_zero_residuals() {
    let out = go(&["blowup", "--mode", "verify", "--order", "12"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "residuals: 0 0 0 0\n");
    for order in ["2", "5", "7"] {
        let out = go(&["--order", order, "blowup", "--mode", "solve"]);
        assert_eq!(out.code, 0, "{order}: {}", out.stderr);
    }
    let v = json(&["blowup", "--mode", "solve", "--order", "5", "--format", "json"]);
    assert_eq!(v["specialization_matches"], true);
    assert_eq!(v["seeds_match"], true);
    assert_eq!(v["B"]["coeffs"]["1"], "1");
}

#[test]
fn k3_series_is_gaussian() {
    let v = json(&["donaldson", "--preset", "K3", "--gamma", "sigma+2f", "--lambda", "0", "--order", "6", "--format", "json"]);
    assert_eq!(v["order"], 6);
    assert_eq!(v["variables"], serde_json::json!(["t2", "t3"]));
    let coeffs = v["coeffs"].as_object().unwrap();
    let expect = [("1", "1"), ("t2^2", "1"), ("t2^4", "1/2"), ("t2^6", "1/6")];
    assert_eq!(coeffs.len(), expect.len());
    for (m, c) in expect {
        assert_eq!(coeffs[m], c, "{m}");
    }
}

#[test]
fn formal_hbar_gives_polynomial_coefficients() {
    let v = json(&["donaldson", "--preset", "X(3,4)", "--gamma", "a.f+b.f", "--order", "0", "--format", "json"]);
    let c = v["coeffs"]["1"].as_str().unwrap();
    assert!(c.contains("h3") && c.contains("h4"), "{c}");
    // numeric values remove the symbols; with ħ₃ = 1, ħ₄ = 2 the two terms cancel
    let v = json(&["donaldson", "--preset", "X(3,4)", "--gamma", "a.f+b.f", "--order", "0", "--hbar3", "1", "--hbar4", "2", "--format", "json"]);
    assert!(v["coeffs"].as_object().unwrap().is_empty(), "{v}");
    let v = json(&["donaldson", "--preset", "X(3,4)", "--gamma", "a.f+b.f", "--order", "0", "--hbar3", "1", "--hbar4", "1", "--format", "json"]);
    let c = v["coeffs"]["1"].as_str().unwrap();
    assert!(!c.contains('h'), "{c}");
}

#[test]
fn insertions_and_a2_powers() {
    let a = json(&["donaldson", "--preset", "E(3)", "--gamma", "f+sigma", "--order", "4", "--a2", "3", "--format", "json"]);
    let b = json(&["donaldson", "--preset", "E(3)", "--gamma", "f+sigma", "--order", "4", "--graded", "--format", "json"]);
    let full = json(&["donaldson", "--preset", "E(3)", "--gamma", "f+sigma", "--order", "4", "--format", "json"]);
    assert_ne!(b, full);
    assert_eq!(a["coeffs"].as_object().unwrap().len(), b["coeffs"].as_object().unwrap().len());
    // a2^3 acts as 27
    for (m, c) in b["coeffs"].as_object().unwrap() {
        let q: Vec<i64> = c.as_str().unwrap().split('/').map(|x| x.parse().unwrap()).collect();
        let scaled = if q.len() == 1 { (27 * q[0], 1) } else { (27 * q[0], q[1]) };
        let got: Vec<i64> = a["coeffs"][m].as_str().unwrap().split('/').map(|x| x.parse().unwrap()).collect();
        assert_eq!(got[0] * scaled.1, scaled.0 * got.get(1).copied().unwrap_or(1), "{m}");
    }
    let zero = json(&["donaldson", "--preset", "K3", "--gamma", "f", "--insert", "tau_1:2:0", "--a3", "1", "--format", "json"]);
    assert!(zero["coeffs"].as_object().unwrap().is_empty());
    assert_eq!(go(&["donaldson", "--preset", "K3", "--insert", "tau_1:4:1"]).code, 1);
}

#[test]
fn eigen_rows() {
    let v = json(&["eigen", "--genus", "2", "--d", "1", "--format", "json"]);
    assert_eq!(v["counts"]["all"], 9);
    assert_eq!(v["counts"]["both_even"], 5);
    assert_eq!(v["rows"].as_array().unwrap().len(), 9);
    assert_eq!(v["bound"]["holds"], true);
    let out = go(&["eigen", "--genus", "0", "--d", "1"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors_exit_one_without_output() {
    for args in [
        vec!["frobnicate"],
        vec!["donaldson", "--preset", "T4"],
        vec!["donaldson", "--preset", "K3", "--gamma", "banana"],
        vec!["donaldson", "--preset", "K3", "--wibble"],
        vec!["blowup", "--mode", "sideways"],
        vec!["check", "--format", "xml"],
        vec!["--hbar1", "two", "check"],
    ] {
        let out = go(&args);
        assert_eq!(out.code, 1, "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    assert_eq!(go(&["--help"]).code, 0);
}

#[test]
fn config_file_and_flag_precedence() {
    let c = Config::parse("# defaults\norder = 3\nformat=csv\nhbar1=1/2\nhbar3 = formal\napprox=false\n").unwrap();
    assert_eq!((c.order, c.format, c.approx), (3, Format::Csv, false));
    assert!(Config::parse("colour=blue").is_err());
    assert!(Config::parse("order").is_err());
    assert!(Config::parse("hbar2=x/y").is_err());

    let dir = std::env::temp_dir().join(format!("gaugecalc-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.cfg");
    std::fs::write(&path, "order=3\nformat=csv\nhbar1=1/2\n").unwrap();
    let p = path.to_str().unwrap();
    // ħ₁ + ħ₂ = 1/2 + 1/3 for w·f = 1
    let out = go(&["--config", p, "donaldson", "--preset", "E(3)", "--gamma", "f"]);
    assert_eq!(out.stdout, "monomial,coefficient\n1,5/6\n");
    let out = go(&["--config", p, "donaldson", "--preset", "E(3)", "--gamma", "f", "--hbar1", "2/3", "--format", "json"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!((v["coeffs"]["1"].as_str(), v["order"].as_u64()), (Some("1"), Some(3)));
    assert_eq!(go(&["--config", "/nonexistent/x.cfg", "check"]).code, 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn same_input_same_bytes() {
    let args = ["donaldson", "--preset", "E(4)", "--gamma", "f+sigma-g_1", "--lambda", "sigma+tau_2", "--order", "6", "--format", "json"];
    assert_eq!(go(&args), go(&args));
}
