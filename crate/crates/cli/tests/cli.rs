use std::process::{Command, Output};

fn deuring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deuring")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compute_universal_delta() {
    let o = deuring(&["compute", "--q", "2", "--prime", "T^2+T+1", "--var", "delta", "--method", "universal"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "s^3 + a*s^2 + a*s + 1\n");
}

#[test]
fn compute_all_methods_match() {
    let o = deuring(&["compute", "--q", "2", "--prime", "T^2+T+1", "--method", "all"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.matches("s^3 + a*s^2 + a*s + 1").count(), 3);
    assert!(out.ends_with("MATCH\n"));
}

#[test]
fn compute_lambda_json() {
    let o = deuring(&[
        "compute", "--q", "3", "--prime", "T^2+1", "--var", "lambda", "--method", "grec", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["method"], "g-recurrence");
    assert_eq!(v["d"], 2);
    // H has degree q^(d+1) − q = 24
    assert_eq!(v["H_coeffs"].as_array().unwrap().len(), 25);
    assert_eq!(v["h_coeffs"].as_array().unwrap().len(), 5);
}

#[test]
fn invalid_primes_exit_2() {
    let o = deuring(&["compute", "--q", "2", "--prime", "T"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("≠ T"));
    assert_eq!(deuring(&["compute", "--q", "2", "--prime", "T^2+1"]).status.code(), Some(2));
    assert_eq!(deuring(&["graph", "--q", "3", "--prime", "T^2"]).status.code(), Some(2));
    assert_eq!(deuring(&["compute", "--q", "6", "--prime", "T+1"]).status.code(), Some(2));
    assert_eq!(deuring(&["compute", "--q", "2", "--prime", "T^2+"]).status.code(), Some(2));
    assert_eq!(deuring(&["compute", "--q", "2"]).status.code(), Some(2));
}

#[test]
fn verify_suites_pass() {
    for (q, d) in [("2", "3"), ("3", "2")] {
        let o = deuring(&["verify", "--q", q, "--max-degree", d]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
}

#[test]
fn graph_reports() {
    let o = deuring(&["graph", "--q", "2", "--prime", "T^2+T+1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("size: 3 (expected 3)"));
    assert!(out.contains("out-degree: 2 (x3)"));
    assert!(out.contains("connected: yes"));

    let o = deuring(&["graph", "--q", "3", "--prime", "T-1"]);
    let out = stdout(&o);
    assert!(out.contains("size: 1"));
    assert!(out.contains("(x3)\n") && out.contains("->"));

    let o = deuring(&["graph", "--q", "2", "--prime", "T^2+T+1", "--format", "dot"]);
    assert!(stdout(&o).starts_with("digraph"));
}

#[test]
fn tower_and_identities() {
    let o = deuring(&["tower", "--q", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("PASS").count(), 4);
    assert!(stdout(&o).contains("j-map degree 24"));
    let o = deuring(&["identities", "--q", "2", "--max-degree", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    let args = ["graph", "--q", "4", "--prime", "T^2+T+x", "--format", "json"];
    assert_eq!(deuring(&args).stdout, deuring(&args).stdout);
    let path = std::env::temp_dir().join(format!("deuring-{}.txt", std::process::id()));
    let o = deuring(&["compute", "--q", "2", "--prime", "T^2+T+1", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "s^3 + a*s^2 + a*s + 1\n");
    let _ = std::fs::remove_file(path);
}

#[test]
fn help_exits_0() {
    let o = deuring(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("compute"));
}
