//! Golden-file tests for every subcommand. Run with `BALGRAPH_BLESS=1` to
//! rewrite the expected outputs after an intentional change.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_balgraph"));
    c.env_remove("BALGRAPH_MAX_VERTICES");
    c
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

/// Drops the `elapsed` field from every JSON line; other lines pass through.
fn normalize(stdout: &[u8]) -> String {
    let text = String::from_utf8(stdout.to_vec()).expect("utf-8 output");
    let mut out = String::new();
    for line in text.lines() {
        match serde_json::from_str::<Value>(line) {
            Ok(Value::Object(mut map)) => {
                map.remove("elapsed");
                out.push_str(&Value::Object(map).to_string());
            }
            _ => out.push_str(line),
        }
        out.push('\n');
    }
    out
}

fn check_golden(name: &str, actual: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.txt"));
    if std::env::var_os("BALGRAPH_BLESS").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(actual, expected, "output of {name} changed");
}

fn golden(name: &str, args: &[&str], code: i32) {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(code),
        "{name}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    check_golden(name, &normalize(&out.stdout));
}

#[test]
fn balance_check() {
    golden(
        "balance_check",
        &["balance", "check", data("mixed.g6").to_str().unwrap()],
        0,
    );
}

#[test]
fn gen_lt_cycle() {
    golden("gen_lt_cycle", &["gen", "lt-cycle", "--l", "8", "--t", "2"], 0);
    golden(
        "gen_lt_cycle_json",
        &["gen", "lt-cycle", "--l", "12", "--t", "1", "--json"],
        0,
    );
}

#[test]
fn gen_cayley() {
    golden(
        "gen_cayley",
        &[
            "gen",
            "cayley",
            "--group",
            "2x4",
            "--set",
            "(0,1),(0,3),(1,0)",
            "--json",
        ],
        0,
    );
}

#[test]
fn census() {
    let dir = tempfile::tempdir().unwrap();
    let graphs = dir.path().join("f18.g6");
    golden(
        "census_balanced_18",
        &[
            "census",
            "--vertices",
            "18",
            "--balanced",
            "--out",
            graphs.to_str().unwrap(),
        ],
        0,
    );
    check_golden("census_balanced_18_graphs", &std::fs::read_to_string(&graphs).unwrap());
    golden("census_full_14", &["census", "--vertices", "14"], 0);
    golden(
        "census_partition",
        &["census", "--vertices", "16", "--mod", "3", "--res", "1"],
        0,
    );
}

#[test]
fn verify() {
    golden(
        "verify_main_abelian",
        &["verify", "main-abelian", "--max-order", "12"],
        0,
    );
    golden("verify_circulant", &["verify", "circulant", "--max-n", "20"], 0);
    golden(
        "verify_divisibility",
        &["verify", "divisibility", "--census-max-d", "12"],
        0,
    );
    golden(
        "verify_divisibility_file",
        &["verify", "divisibility", data("mixed.g6").to_str().unwrap()],
        0,
    );
    golden("verify_planar", &["verify", "planar", "--max-n", "16"], 0);
    golden(
        "verify_conjectures",
        &["verify", "conjectures", "--vertices", "6,12,18"],
        0,
    );
}

#[test]
fn planar_batagelj() {
    golden(
        "planar_batagelj",
        &["planar", "batagelj", "--max-n", "16", "--rotation"],
        0,
    );
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["census", "--vertices", "7"][..],
        &["census", "--vertices", "12", "--mod", "3"],
        &["census", "--vertices", "12", "--mod", "3", "--res", "3"],
        &["gen", "lt-cycle", "--l", "6", "--t", "2"],
        &["gen", "lt-cycle", "--l", "32", "--t", "3"],
        &["gen", "cayley", "--group", "2x3", "--set", "1"],
        &["gen", "cayley", "--group", "8", "--set", "0"],
        &["verify", "main-abelian", "--max-order", "40"],
        &["verify", "circulant", "--max-n", "50"],
        &["--jobs", "0", "verify", "circulant"],
        &["frobnicate"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn malformed_input_names_the_token() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.g6");
    std::fs::write(&file, "EFz_\nE?x~\n").unwrap();
    let out = run(&["balance", "check", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2") && err.contains("E?x~"), "{err}");

    // Disconnected graphs are refused, not answered.
    std::fs::write(&file, "C?\n").unwrap();
    let out = run(&["balance", "check", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn vertex_cap_from_environment() {
    let out = bin()
        .args(["census", "--vertices", "12"])
        .env("BALGRAPH_MAX_VERTICES", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .args(["census", "--vertices", "10"])
        .env("BALGRAPH_MAX_VERTICES", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    // The cap only ever lowers the limit.
    let out = bin()
        .args(["gen", "lt-cycle", "--l", "2", "--t", "33"])
        .env("BALGRAPH_MAX_VERTICES", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .args(["census", "--vertices", "6"])
        .env("BALGRAPH_MAX_VERTICES", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gen_output_round_trips_through_balance_check() {
    for args in [
        &["gen", "lt-cycle", "--l", "16", "--t", "3"][..],
        &[
            "gen",
            "cayley",
            "--group",
            "2x2x4",
            "--set",
            "(0,0,1),(0,0,3),(0,1,0),(1,0,0)",
        ],
    ] {
        let plain = run(args);
        let mut json_args = args.to_vec();
        json_args.push("--json");
        let described: Value = serde_json::from_slice(&run(&json_args).stdout).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("g.g6");
        std::fs::write(&file, &plain.stdout).unwrap();
        let checked: Value =
            serde_json::from_slice(&run(&["balance", "check", file.to_str().unwrap()]).stdout).unwrap();
        assert_eq!(checked["canonical"], described["canonical"]);
        assert_eq!(checked["graph6"], described["graph6"]);
    }
}

#[test]
fn results_do_not_depend_on_jobs() {
    let one = run(&["--jobs", "1", "census", "--vertices", "18", "--balanced"]);
    let three = run(&["--jobs", "3", "census", "--vertices", "18", "--balanced"]);
    assert_eq!(normalize(&one.stdout), normalize(&three.stdout));
    let one = run(&["--jobs", "1", "planar", "batagelj", "--max-n", "18"]);
    let three = run(&["--jobs", "3", "planar", "batagelj", "--max-n", "18"]);
    assert_eq!(one.stdout, three.stdout);
}
