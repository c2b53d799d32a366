//! End-to-end tests of the binary: JSON payloads, exit codes, byte-level
//! determinism, and the class-group cache.

use std::process::{Command, Output};

fn steinitz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_steinitz"))
        .args(args)
        .env_remove("STEINITZ_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).unwrap_or_else(|err| {
        panic!(
            "bad JSON ({err}): {}",
            String::from_utf8_lossy(&output.stdout)
        )
    })
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn classgroup_reports_reference_values() {
    for (d, h) in [("-23", 3u64), ("-1", 1), ("-47", 5)] {
        let out = steinitz(&["classgroup", "--d", d]);
        assert_eq!(exit_code(&out), 0);
        let json = stdout_json(&out);
        assert_eq!(json["command"], "classgroup");
        assert_eq!(json["result"]["h"], h);
        assert_eq!(json["version"], env!("CARGO_PKG_VERSION"));
    }
    let out = steinitz(&["classgroup", "--d", "-23"]);
    let json = stdout_json(&out);
    assert_eq!(
        json["result"]["forms"],
        serde_json::json!([[1, 1, 6], [2, -1, 3], [2, 1, 3]])
    );
}

#[test]
fn classgroup_rejects_bad_input() {
    assert_eq!(exit_code(&steinitz(&["classgroup", "--d", "-12"])), 2);
    assert_eq!(exit_code(&steinitz(&["classgroup", "--d", "5"])), 2);
    // missing required flag is a usage error
    assert_ne!(exit_code(&steinitz(&["classgroup"])), 0);
}

#[test]
fn wgroup_reports_certificates() {
    let out = steinitz(&["wgroup", "--d", "-47", "--m", "3"]);
    assert_eq!(exit_code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["result"]["order"], 5);
    assert_eq!(json["certificate"]["kind"], "INDEX_FORCED");

    let out = steinitz(&["wgroup", "--d", "-23", "--m", "9"]);
    let json = stdout_json(&out);
    assert_eq!(json["result"]["order"], 3);
    assert_eq!(json["certificate"]["kind"], "STABILIZED");

    let out = steinitz(&["wgroup", "--d", "-23", "--m", "1"]);
    let json = stdout_json(&out);
    assert_eq!(json["result"]["order"], 3);
}

#[test]
fn realizable_matches_reference_values() {
    let out = steinitz(&[
        "realizable",
        "--d",
        "-47",
        "--group",
        "semidirect",
        "--l",
        "3",
        "--n",
        "2",
    ]);
    let json = stdout_json(&out);
    assert_eq!(json["result"]["order"], 5);
    assert_eq!(json["result"]["w_modulus"], 3);
    assert_eq!(json["result"]["exponent"], 3);

    let out = steinitz(&[
        "realizable",
        "--d",
        "-23",
        "--group",
        "heisenberg",
        "--l",
        "3",
    ]);
    let json = stdout_json(&out);
    assert_eq!(json["result"]["order"], 1);

    let out = steinitz(&[
        "realizable",
        "--d",
        "-163",
        "--group",
        "semidirect",
        "--l",
        "3",
        "--n",
        "2",
    ]);
    let json = stdout_json(&out);
    assert_eq!(json["result"]["order"], 1);

    // semidirect without --n is invalid input
    let out = steinitz(&[
        "realizable",
        "--d",
        "-47",
        "--group",
        "semidirect",
        "--l",
        "3",
    ]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn steinitz_evaluates_and_validates() {
    let out = steinitz(&[
        "steinitz",
        "--d",
        "-47",
        "--group",
        "semidirect",
        "--l",
        "3",
        "--n",
        "2",
        "--ram",
        "",
    ]);
    assert_eq!(exit_code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(
        json["result"]["steinitz_class"],
        serde_json::json!([1, 1, 12])
    );
    assert_eq!(json["result"]["member"], true);

    let out = steinitz(&[
        "steinitz",
        "--d",
        "-47",
        "--group",
        "semidirect",
        "--l",
        "3",
        "--n",
        "2",
        "--ram",
        "37:9",
    ]);
    assert_eq!(exit_code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(
        json["result"]["steinitz_class"],
        serde_json::json!([2, -1, 6])
    );
    assert_eq!(json["result"]["member"], true);

    let out = steinitz(&[
        "steinitz",
        "--d",
        "-47",
        "--group",
        "semidirect",
        "--l",
        "3",
        "--n",
        "2",
        "--ram",
        "13:9",
    ]);
    assert_eq!(exit_code(&out), 4);
    let json = stdout_json(&out);
    assert_eq!(json["result"]["validation"]["data"][0]["ok"], false);
    let violations = json["result"]["validation"]["data"][0]["violations"].to_string();
    assert!(violations.contains("mod 9"), "{violations}");
}

#[test]
fn verify_runs_suites_and_sets_exit_code() {
    let out = steinitz(&["verify", "--suite", "congruenza"]);
    assert_eq!(exit_code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["result"]["total_violations"], 0);
    assert_eq!(json["result"]["reports"][0]["cases"], 10000);

    let out = steinitz(&["verify", "--suite", "presentation", "--seed", "3"]);
    assert_eq!(exit_code(&out), 0);

    let out = steinitz(&["verify", "--suite", "bogus"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn witness_finds_and_rejects() {
    let out = steinitz(&[
        "witness",
        "--d",
        "-47",
        "--group",
        "semidirect",
        "--l",
        "3",
        "--n",
        "2",
        "--target",
        "2,1,6",
    ]);
    assert_eq!(exit_code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(
        json["result"]["steinitz_class"],
        serde_json::json!([2, 1, 6])
    );
    assert!(!json["result"]["witness"].as_array().unwrap().is_empty());

    // principal target: empty witness
    let out = steinitz(&[
        "witness",
        "--d",
        "-47",
        "--group",
        "semidirect",
        "--l",
        "3",
        "--n",
        "2",
        "--target",
        "1,1,12",
    ]);
    assert_eq!(exit_code(&out), 0);
    let json = stdout_json(&out);
    assert!(json["result"]["witness"].as_array().unwrap().is_empty());

    let out = steinitz(&[
        "witness",
        "--d",
        "-23",
        "--group",
        "semidirect",
        "--l",
        "3",
        "--n",
        "2",
        "--target",
        "2,1,3",
    ]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn output_is_byte_deterministic() {
    for args in [
        vec!["classgroup", "--d", "-47"],
        vec!["verify", "--suite", "ramifl", "--seed", "42"],
        vec!["wgroup", "--d", "-23", "--m", "27"],
        vec![
            "witness",
            "--d",
            "-47",
            "--group",
            "heisenberg",
            "--l",
            "3",
            "--target",
            "2,1,6",
        ],
    ] {
        let a = steinitz(&args);
        let b = steinitz(&args);
        assert_eq!(exit_code(&a), exit_code(&b));
        assert_eq!(a.stdout, b.stdout, "nondeterministic output for {args:?}");
    }
}

#[test]
fn cache_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_steinitz"))
            .args(args)
            .env("STEINITZ_CACHE", dir.path())
            .output()
            .expect("binary runs")
    };
    let first = run(&["classgroup", "--d", "-23"]);
    assert_eq!(exit_code(&first), 0);
    let cache_file = dir.path().join("D23.json");
    assert!(cache_file.exists());
    let cached: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&cache_file).unwrap()).unwrap();
    assert_eq!(cached["d"], -23);
    assert_eq!(cached["D"], -23);
    assert_eq!(cached["h"], 3);
    assert!(cached["forms"].is_array());
    assert!(cached["invariants"].is_array());

    // second run loads the cache and must produce identical bytes
    let second = run(&["classgroup", "--d", "-23"]);
    assert_eq!(first.stdout, second.stdout);

    // a corrupt cache is ignored, not fatal
    std::fs::write(&cache_file, b"{not json").unwrap();
    let third = run(&["classgroup", "--d", "-23"]);
    assert_eq!(exit_code(&third), 0);
    assert_eq!(first.stdout, third.stdout);

    // d = -5 uses |D| = 20 for the file name
    let out = run(&["wgroup", "--d", "-5", "--m", "5"]);
    assert_eq!(exit_code(&out), 0);
    assert!(dir.path().join("D20.json").exists());
}
