use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gauss-bij"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn psi_prints_the_worked_example() {
    let o = run(&["psi", "--M", "2", "--N", "10", "28,26,20,12,6,6,5,3,1,1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("μ = (2,1,1,1,1,1,1,1,0,0)"));
    assert!(out.contains("π = (3^2,4^3,5^3,6^2,7,9^3,10^2)"));
}

#[test]
fn psi_inverse_table_sums() {
    let o = run(&["psi-inv", "--M", "2", "--N", "10", "--pi", "3^2,4^3,5^3,6^2,7,9^3,10^2", "--mu", "2,1,1,1,1,1,1,1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["delta"], serde_json::json!([28, 26, 20, 12, 6, 6, 5, 3, 1, 1]));
    assert_eq!(v["column_sums"], serde_json::json!([26, 6, 6, 1, 12, 5, 20, 1, 28, 3]));
}

#[test]
fn phi_round_trip_through_text() {
    let o = run(&["phi", "--M", "2", "--N", "3", "--alpha", "2,1", "--beta", "4,3,3"]);
    assert!(stdout(&o).contains("γ = (7,4,2)"));
    let o = run(&["phi-inv", "--M", "2", "7,4,2"]);
    let out = stdout(&o);
    assert!(out.contains("α = (2,1)") && out.contains("β = (3^2,4)"), "{out}");
}

#[test]
fn chi_and_back() {
    let o = run(&["chi", "--k", "3", "--m", "1", "--json", "11,10,10,9,8,7,6,5,5,4,3,1,1"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["result"]["s"], serde_json::json!([6, 4, 3]));
    let o = run(&["chi-inv", "--k", "3", "--m", "1", "--s", "6,4,3", "--alpha", "11,9,9,8,7,7,6,6,5,5,3,3,3", "--xi", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("λ = (11,10,10,9,8,7,6,5,5,4,3,1,1)"));
}

#[test]
fn chi_rejects_wrong_delta() {
    let o = run(&["chi", "--k", "3", "--m", "1", "--delta", "5", "3,1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn eta_sigma_zeta_pipeline() {
    let o = run(&["eta", "--k", "3", "--json", "12,9,8,6,5,4,3,1"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let t = v["tuple"].to_string();
    let o = run(&["eta-inv", &t]);
    assert!(stdout(&o).contains("π = (12,9,8,6,5,4,3,1)"));
    let o = run(&["classify", "3,1 | 1 | | 3,3"]);
    assert!(stdout(&o).contains("P^9"));
    let o = run(&["sigma", "--json", "3,1 | 1 | | 3,3"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["label"], 9);
    let line = v["line"].as_str().unwrap().to_string();
    let o = run(&["zeta", "--label", "9", &line]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("((3,1), (1), ∅, 3^3, 3^3)"));
}

#[test]
fn sigma_on_the_exceptional_element() {
    let o = run(&["sigma", " | | | 2,2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceptional element (monotonicity exception)"));
}

#[test]
fn zeta_outside_the_image() {
    let o = run(&["zeta", "--label", "7", " | | | 2,2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn series_lines() {
    let o = run(&["series", "--kind", "gaussian", "--M", "2", "--N", "2", "--cap", "4"]);
    assert_eq!(stdout(&o), "0\t1\n1\t1\n2\t2\n3\t1\n4\t1\n");
    let o = run(&["series", "--kind", "pochhammer", "--a", "3", "--terms", "2", "--cap", "4"]);
    assert_eq!(stdout(&o), "0\t1\n1\t0\n2\t0\n3\t1\n4\t1\n");
}

#[test]
fn count_and_cap() {
    let o = run(&["count", "--family", "q", "--k", "3", "--m", "0", "--n", "8"]);
    assert!(stdout(&o).contains("= 4"));
    let o = run(&["count", "--family", "plain", "--n", "20", "--cap", "10"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let o = run(&["verify", "--suite", "theorem-1.6", "--M", "2", "--N", "3", "--n-max", "18"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = run(&["verify", "--suite", "monotonicity", "--k", "3", "--m-max", "2", "--n-max", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["verify", "--suite", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn certify_with_grid() {
    let o = run(&["certify", "--map", "phi", "--grid", "M<=1,N<=3,n<=10", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["passed"], true);
    assert!(v["certificate"]["cells"].as_array().unwrap().len() > 10);
    let o = run(&["certify", "--map", "phi", "--grid", "Q<=1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn invalid_input_exits_two() {
    let o = run(&["psi", "--M", "1", "--N", "3", "9,0,0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["eta", "--k", "3", "2,3,1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["eta", "--k", "3", "2,2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn batch_mode_reads_stdin() {
    let mut child = bin()
        .args(["psi", "--M", "2", "--N", "10", "--json", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"28,26,20,12,6,6,5,3,1,1\n\n3,1\n")
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<&str> = std::str::from_utf8(&o.stdout).unwrap().lines().collect();
    assert_eq!(lines.len(), 2);
    let v: serde_json::Value = serde_json::from_str(lines[1]).unwrap();
    assert_eq!(v["mu"], serde_json::json!([1, 0, 0, 0, 0, 0, 0, 0, 0, 0]));
    assert_eq!(v["pi"], serde_json::json!([3]));
}

#[test]
fn algz_inverts_both_forms() {
    let o = run(&["algz", "--M", "2", "--N", "3", "--xi", "4,2,1", "--delta", "2,1"]);
    assert!(stdout(&o).contains("α = (4,2,1,1,1)"));
    let o = run(&["algz", "--M", "2", "--N", "3", "--invert", "--alpha", "4,2,1,1,1", "--gamma", "1,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("ξ = (4,2,1)") && stdout(&o).contains("δ = (2,1)"));
    let o = run(&["algz", "--M", "2", "--N", "3", "--refined", "--invert", "--alpha", "3,2,2,1", "--gamma", "2,1,1"]);
    assert!(stdout(&o).contains("δ = (1,2^2)"), "{}", stdout(&o));
}
