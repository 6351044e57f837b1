//! End-to-end runs of the compiled binary.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_selfshuffle"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn word_prints_thue_morse_prefix() {
    let out = run(&["word", "thue-morse", "--length", "12"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "011010011001\n");
}

#[test]
fn word_handles_sturmian_and_modifiers() {
    let out = run(&[
        "word",
        "sturmian",
        "--alpha",
        "(3-1*sqrt(5))/2",
        "--rho",
        "(3-1*sqrt(5))/2",
        "--length",
        "22",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0100101001001010010100\n");

    let shifted = run(&["word", "fibonacci", "--shift", "2", "--length", "5"]);
    assert_eq!(stdout(&shifted), "00101\n");

    let prepended = run(&["word", "periodic:1", "--prepend", "0", "--length", "6"]);
    assert_eq!(stdout(&prepended), "011111\n");
}

#[test]
fn word_json_output_is_stable_and_parseable() {
    let args = ["--format", "json", "word", "paper-folding", "--length", "20"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "identical argv must give identical bytes");
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["letters"], "00100110001101100010");
}

#[test]
fn unknown_word_is_a_domain_error() {
    let out = run(&["word", "not-a-word", "--length", "5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["word", "thue-morse"]); // missing --length
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn search_emit_and_verify_round_trip() {
    let dir = std::env::temp_dir().join("selfshuffle-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fib-witness.json");
    let path_s = path.to_str().unwrap();

    let out = run(&[
        "search",
        "--word",
        "fibonacci",
        "--k",
        "2",
        "--depth",
        "100",
        "--emit-witness",
        path_s,
    ]);
    assert!(out.status.success(), "{out:?}");

    let text = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["k"], 2);
    assert_eq!(v["depth"], 100);
    assert_eq!(v["steering"].as_str().unwrap().len(), 100);

    let ver = run(&["verify", "--witness", path_s]);
    assert!(ver.status.success(), "{ver:?}");
    assert!(stdout(&ver).starts_with("ok"));

    let ver50 = run(&["--format", "json", "verify", "--witness", path_s, "--depth", "50"]);
    let vj: serde_json::Value = serde_json::from_slice(&ver50.stdout).unwrap();
    assert_eq!(vj["ok"], true);
}

#[test]
fn corrupted_witness_fails_verification() {
    let dir = std::env::temp_dir().join("selfshuffle-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken-witness.json");
    let good = serde_json::json!({
        "schema": 1,
        "k": 2,
        "depth": 8,
        "steering": "12211212",
        "consumed": [4, 4],
        "word": { "word": "fibonacci" }
    });
    std::fs::write(&path, serde_json::to_string(&good).unwrap()).unwrap();
    let out = run(&["verify", "--witness", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sturmian_zero_intercept_is_rejected_with_exit_1() {
    let out = run(&[
        "shuffle",
        "sturmian",
        "--alpha",
        "(3-1*sqrt(5))/2",
        "--rho",
        "0",
        "--depth",
        "50",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("intercept 0"), "stderr: {err}");
}

#[test]
fn shuffle_constructions_verify() {
    for args in [
        vec!["shuffle", "tm", "--depth", "400"],
        vec!["shuffle", "three", "--depth", "400"],
        vec![
            "shuffle",
            "pal",
            "--dir",
            "0,0,1,0,1,1,0,1",
            "--variant",
            "10",
            "--depth",
            "300",
        ],
        vec![
            "shuffle",
            "characteristic",
            "--alpha",
            "(3-1*sqrt(5))/2",
            "--depth",
            "300",
        ],
        vec![
            "shuffle",
            "sturmian",
            "--alpha",
            "(-1+1*sqrt(5))/2",
            "--rho",
            "1/3",
            "--depth",
            "300",
        ],
    ] {
        let out = run(&args);
        assert!(out.status.success(), "{args:?}: {out:?}");
        assert!(stdout(&out).contains("verified=true"), "{args:?}");
    }
}

#[test]
fn sturmian_witness_file_round_trips() {
    let dir = std::env::temp_dir().join("selfshuffle-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sturmian-witness.json");
    let path_s = path.to_str().unwrap();
    let out = run(&[
        "shuffle",
        "sturmian",
        "--alpha",
        "(3-1*sqrt(5))/2",
        "--rho",
        "1/3",
        "--depth",
        "250",
        "--emit-witness",
        path_s,
    ]);
    assert!(out.status.success());
    let ver = run(&["verify", "--witness", path_s]);
    assert!(ver.status.success(), "{ver:?}");
}

#[test]
fn search_reports_death_for_zero_ones() {
    let out = run(&[
        "--format",
        "json",
        "search",
        "--word",
        "periodic:1",
        "--prepend",
        "0",
        "--depth",
        "500",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["outcome"], "dead");
    assert_eq!(v["death_level"], 41);
}

#[test]
fn checks_report() {
    let out = run(&[
        "check",
        "borders",
        "--word",
        "paper-folding",
        "--horizon",
        "2048",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("saturated=true"));

    let lyndon = run(&[
        "--format",
        "json",
        "check",
        "lyndon",
        "--word",
        "thue-morse",
        "--shift",
        "1",
        "--order",
        "10",
        "--depth",
        "300",
    ]);
    assert!(lyndon.status.success());
    let v: serde_json::Value = serde_json::from_slice(&lyndon.stdout).unwrap();
    assert_eq!(v["consistent_to_depth"], true);
}

#[test]
fn stones_outputs_files() {
    let dir = std::env::temp_dir().join("selfshuffle-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let svg = dir.join("stones.svg");
    let csv = dir.join("stones.csv");
    let out = run(&[
        "stones",
        "path",
        "--alpha",
        "(3-1*sqrt(5))/2",
        "--rho",
        "1/3",
        "--n",
        "80",
        "--svg",
        svg.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    let svg_text = std::fs::read_to_string(&svg).unwrap();
    assert!(svg_text.starts_with("<svg"));
    let csv_text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(csv_text.lines().count(), 82);

    let check = run(&[
        "stones",
        "check",
        "--alpha",
        "(-1+1*sqrt(2))/1",
        "--rho",
        "1/4",
        "--n",
        "200",
    ]);
    assert!(check.status.success());

    let classify = run(&[
        "--format",
        "json",
        "stones",
        "classify",
        "--alpha",
        "(3-1*sqrt(5))/2",
        "--rho",
        "9/20",
        "--n",
        "40",
    ]);
    assert!(classify.status.success());
    let v: serde_json::Value = serde_json::from_slice(&classify.stdout).unwrap();
    assert!(v["free"].as_u64().unwrap() > 0);
    assert_eq!(v["alpha"]["approx"], true);
}
