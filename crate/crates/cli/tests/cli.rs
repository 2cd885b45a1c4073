use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use azw_core::{FormalProduct, PuiseuxPoly};

fn azw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_azw"))
        .args(args)
        .env_remove("AZW_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("azw-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn soule_zeta_of_elliptic_ceiling() {
    let o = azw(&["zeta", "soule", "t + 2t^{1/2} + 1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1 / (s (s-1/2)^2 (s-1))\n");
}

#[test]
fn printed_expressions_reparse() {
    for expr in ["t + 2t^{1/2} + 1", "t - 2t^{1/2} + 1", "(1/2)t^{3/2} - t + 7", "3t^3"] {
        let o = azw(&["zeta", "soule", expr]);
        let printed = stdout(&o);
        let z: FormalProduct = printed.trim().parse().unwrap();
        let f: PuiseuxPoly = expr.parse().unwrap();
        assert_eq!(z, azw_core::zeta::soule_zeta(&f));
        assert_eq!(f.to_string().parse::<PuiseuxPoly>().unwrap(), f);
    }
}

#[test]
fn zeta_algebra_subcommands() {
    let o = azw(&["zeta", "tensor", "s / (s-1/2)", "s / (s-1/2)"]);
    assert_eq!(stdout(&o), "(s-1/2)^2 / (s (s-1))\n");
    let o = azw(&["zeta", "funceq", "1 / (s (s-1/2)^2 (s-1))", "--d", "1"]);
    assert_eq!(stdout(&o), "symmetric: true\nsign: +1\n");
    let o = azw(&["zeta", "funceq", "1 / (s (s-1) (s-2))", "--d", "2"]);
    assert_eq!(stdout(&o), "symmetric: true\nsign: -1\n");
    let o = azw(&["zeta", "reflect", "(s-1)^{1/2}", "--d", "1"]);
    assert!(stdout(&o).starts_with("sign: undefined\n"));
}

#[test]
fn monoid_envelopes_for_projective_line() {
    let dir = scratch("monoid");
    let path = dir.join("p1.json");
    fs::write(&path, r#"{"label":"P1","points":[{"r":0,"torsion":[]},{"r":0,"torsion":[]},{"r":1,"torsion":[]}]}"#).unwrap();
    let o = azw(&["monoid", "--in", path.to_str().unwrap(), "envelopes"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("ceiling: t + 1\nfloor: t + 1\n"), "{text}");
    let o = azw(&["monoid", "--in", path.to_str().unwrap(), "counts", "--limit", "9"]);
    assert_eq!(stdout(&o), "q,count\n2,3\n3,4\n4,5\n5,6\n7,8\n8,9\n9,10\n");
}

#[test]
fn monoid_torsion_floor_depends_on_s() {
    let dir = scratch("torsion");
    let path = dir.join("mu4.json");
    fs::write(&path, r#"{"label":"mu4","points":[{"r":1,"torsion":[4]}]}"#).unwrap();
    let o = azw(&["monoid", "--in", path.to_str().unwrap(), "--exclude", "2", "envelopes"]);
    let text = stdout(&o);
    assert!(text.starts_with("ceiling: 4t - 4\nfloor: 2t - 2\n"), "{text}");
}

#[test]
fn census_writes_csv_and_summary() {
    let dir = scratch("census");
    let csv = dir.join("curves.csv");
    fs::write(&csv, "label,a,b\ny2=x3-x,-1,0\ny2=x3+1,0,1\n").unwrap();
    let prefix = dir.join("census");
    let o = azw(&[
        "curve", "census", "--in", csv.to_str().unwrap(), "--label", "y2=x3-x", "--xmax", "100000", "--out",
        prefix.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let summary: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(summary["counts"]["champion"].as_u64().unwrap() > 0);
    assert_eq!(summary["x_max"], 100_000);
    let table = fs::read_to_string(prefix.with_extension("csv")).unwrap();
    assert!(table.starts_with("p,a_p,class\n5,-2,other\n"));
    let saved: serde_json::Value = serde_json::from_str(&fs::read_to_string(prefix.with_extension("json")).unwrap()).unwrap();
    assert_eq!(saved, summary);
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let dir = scratch("threads");
    let csv = dir.join("curves.csv");
    fs::write(&csv, "E,0,-2\n").unwrap();
    let args = |threads: &'static str| {
        vec!["--threads", threads, "--format", "csv", "curve", "census", "--in", csv.to_str().unwrap(), "--xmax", "20000"]
            .into_iter()
            .map(String::from)
            .collect::<Vec<_>>()
    };
    let run = |a: Vec<String>| azw(&a.iter().map(String::as_str).collect::<Vec<_>>()).stdout;
    let one = run(args("1"));
    assert_eq!(one, run(args("4")));
    let via_env = Command::new(env!("CARGO_BIN_EXE_azw"))
        .args(["--format", "csv", "curve", "census", "--in", csv.to_str().unwrap(), "--xmax", "20000"])
        .env("AZW_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(one, via_env.stdout);
}

#[test]
fn curve_count_and_classify() {
    let dir = scratch("classify");
    let csv = dir.join("curves.csv");
    fs::write(&csv, "E,1,0\n").unwrap();
    let path = csv.to_str().unwrap();
    assert_eq!(stdout(&azw(&["curve", "--in", path, "count", "--p", "5", "--m", "2"])), "32\n");
    let text = stdout(&azw(&["curve", "classify", "--in", path, "--p", "7"]));
    assert_eq!(text, "a_p: 0\nclass: supersingular\nlocal zeta: (1 + 7T^2)/((1-T)(1-7T))\n");
    let o = azw(&["curve", "--in", path, "count", "--p", "3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn fit_exit_codes() {
    let verified = azw(&["fit", "verify", "--mode", "ceiling", "--candidate", "t + 1", "--source", "projective:n=1", "--limit", "500"]);
    assert_eq!(verified.status.code(), Some(0));
    assert!(stdout(&verified).contains("witnesses (114): 2, 3, 4,"));
    let violated = azw(&[
        "fit", "verify", "--mode", "ceiling", "--puiseux", "--candidate", "t", "--source", "curve:a=-1,b=0", "--witnesses", "2",
    ]);
    assert_eq!(violated.status.code(), Some(2));
    let few = azw(&["fit", "verify", "--mode", "ceiling", "--candidate", "2t", "--source", "pell:delta=-47", "--limit", "5000"]);
    assert_eq!(few.status.code(), Some(3));
    let json = azw(&[
        "--format", "json", "fit", "verify", "--mode", "floor", "--puiseux", "--candidate", "t - 2t^{1/2} + 1", "--source",
        "curve:a=-1,b=0", "--limit", "30000", "--witnesses", "1",
    ]);
    assert_eq!(json.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(v["status"], "verified");
    assert!(v["witnesses"].as_array().unwrap().iter().any(|w| w == 2401));
}

#[test]
fn fit_search_and_reject_linear() {
    let o = azw(&["fit", "search", "--source", "An:n=3", "--degree", "1", "--min", "-5", "--max", "5", "--limit", "5000"]);
    assert_eq!(stdout(&o), "candidates tested: 121\nceilings: t - 2\nfloors: t - 3\n");
    let o = azw(&["fit", "reject-linear", "--source", "torus:n=1", "--cmin", "-1", "--cmax", "-1", "--limit", "1000"]);
    assert_eq!(stdout(&o).lines().nth(1), Some("-1,verified,,verified,"));
}

#[test]
fn malformed_input_exits_one() {
    let cases: &[&[&str]] = &[
        &["zeta", "soule", "t^"],
        &["zeta", "tensor", "(s-", "s"],
        &["fit", "verify", "--mode", "up", "--candidate", "t", "--source", "An:n=3"],
        &["fit", "verify", "--mode", "ceiling", "--candidate", "t", "--source", "An:n=3", "--exclude", "4"],
        &["fit", "verify", "--mode", "ceiling", "--candidate", "t", "--source", "nope:n=3"],
        &["fit", "verify", "--mode", "ceiling", "--candidate", "t", "--source", "An:n=3", "--limit", "0"],
        &["monoid", "--in", "/nonexistent.json", "envelopes"],
        &["family", "--spec", "pell:delta=2", "envelopes"],
        &["--threads", "0", "zeta", "soule", "t"],
        &["curve", "census", "--in", "/nonexistent.csv", "--xmax", "100"],
        &["repro", "--only", "12"],
        &["frobnicate"],
    ];
    for args in cases {
        let o = azw(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn family_sweeps() {
    let o = azw(&["family", "--spec", "An:n=3", "counts", "--limit", "5"]);
    assert_eq!(stdout(&o), "p,m,q,count\n2,1,2,0\n3,1,3,0\n2,2,4,2\n5,1,5,2\n");
    let o = azw(&["family", "--spec", "Gn:n=5", "--exclude", "2", "envelopes"]);
    assert_eq!(stdout(&o), "ceiling: t - 3\nfloor: t - 5\n");
    let o = azw(&["family", "--spec", "pell:delta=5", "check", "--limit", "300"]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("0 mismatches\n"));
}

#[test]
fn repro_subset_passes() {
    let o = azw(&["repro", "--only", "1,11"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().next().unwrap().starts_with("[PASS]  1."));
    assert!(text.ends_with("2/2 criteria passed\n"));
}
