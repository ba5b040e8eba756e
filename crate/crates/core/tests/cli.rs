use std::path::PathBuf;
use std::process::Command;

use divisible_sets::cli::run_with;
use divisible_sets::constructions::ConstructionRecipe;
use serde_json::Value;

mod common;

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("divsets").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("divsets-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn construct_args(recipe: &ConstructionRecipe, out: &str) -> Vec<String> {
    let mut args: Vec<String> = match recipe {
        ConstructionRecipe::Spread { q, k, s } => {
            vec![
                "construct".into(),
                "spread".into(),
                "--q".into(),
                q.to_string(),
                "--k".into(),
                k.to_string(),
                "--s".into(),
                s.to_string(),
            ]
        }
        ConstructionRecipe::LiftedMrd { q, k, r } => {
            vec![
                "construct".into(),
                "mrd".into(),
                "--q".into(),
                q.to_string(),
                "--k".into(),
                k.to_string(),
                "--r".into(),
                r.to_string(),
            ]
        }
        ConstructionRecipe::DirectSum { left, right } => {
            let (l, r) = (format!("{out}.left"), format!("{out}.right"));
            for (part, path) in [(left, &l), (right, &r)] {
                let a = construct_args(part, path);
                let a: Vec<&str> = a.iter().map(String::as_str).collect();
                assert_eq!(run(&a).0, 0);
            }
            vec!["construct".into(), "sum".into(), l, r]
        }
    };
    args.extend(["-o".to_string(), out.to_string()]);
    args
}

#[test]
fn construct_then_verify_every_recipe() {
    for (i, (recipe, guaranteed)) in common::catalogue().into_iter().enumerate() {
        let path = scratch(&format!("set{i}.json"));
        let path = path.to_str().unwrap();
        let args = construct_args(&recipe, path);
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, _, err) = run(&args);
        assert_eq!(code, 0, "{recipe}: {err}");
        let r = guaranteed.to_string();
        let (code, out, _) = run(&["verify", "--r", &r, path]);
        assert_eq!(code, 0, "{recipe}\n{out}");
        assert!(out.trim_end().ends_with("verified") && !out.contains("NOT verified"));
    }
}

#[test]
fn verify_reports_spread_exponent() {
    let path = scratch("spread223.json");
    let p = path.to_str().unwrap();
    assert_eq!(
        run(&["construct", "spread", "--q", "2", "--k", "2", "--s", "3", "-o", p]).0,
        0
    );
    let (code, out, _) = run(&["--json", "verify", "--r", "3", p]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["exponent"], 4);
    assert_eq!(v["verified"], true);
    assert_eq!(v["hyperplane_spectrum"]["counts"]["5"], 63);
    assert_eq!(v["classification"]["kind"], "Spread");
    // requiring more than is there fails with exit code 1
    let (code, out, _) = run(&["verify", "--r", "5", p]);
    assert_eq!(code, 1);
    assert!(out.contains("NOT verified"));
}

#[test]
fn files_round_trip_byte_for_byte() {
    for (name, args) in [
        (
            "rt_spread.json",
            vec!["construct", "spread", "--q", "4", "--k", "1", "--s", "3"],
        ),
        (
            "rt_mrd.json",
            vec!["construct", "mrd", "--q", "3", "--k", "2", "--r", "1"],
        ),
    ] {
        let path = scratch(name);
        let p = path.to_str().unwrap();
        let (code, stdout, _) = run(&args);
        assert_eq!(code, 0);
        let mut with_file = args.clone();
        with_file.extend(["-o", p]);
        assert_eq!(run(&with_file).0, 0);
        let written = std::fs::read_to_string(&path).unwrap();
        assert_eq!(written, stdout);
        let set = divisible_sets::format::read_set(&written, &Default::default()).unwrap();
        assert_eq!(divisible_sets::format::write_set(&set), written);
    }
}

#[test]
fn spectrum_json_carries_the_text_numbers() {
    let (code, text, _) = run(&["spectrum", "--q", "2", "--k", "2", "--r", "3", "--nmax", "81"]);
    assert_eq!(code, 0);
    let (code, json, _) = run(&["--json", "spectrum", "--q", "2", "--k", "2", "--r", "3", "--nmax", "81"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&json).unwrap();
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 81);
    let admissible: Vec<u64> = entries
        .iter()
        .filter(|e| e["verdict"] != "excluded")
        .map(|e| e["n"].as_u64().unwrap())
        .collect();
    let line = text.lines().find_map(|l| l.strip_prefix("admissible: ")).unwrap();
    let listed = admissible.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    assert_eq!(line.replace(' ', ""), format!("{{{listed}}}"));
    assert_eq!(entries[21]["verdict"], "excluded");
    assert_eq!(entries[21]["reason"]["criterion"], "average_bound");
}

#[test]
fn bounds_and_feasibility() {
    let (code, out, _) = run(&["--json", "bounds", "--q", "2", "--d1", "2", "--d2", "5"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        (
            v["heden_bound"].as_u64(),
            v["heden_strict"].as_bool(),
            v["improved_bound"].as_u64()
        ),
        (Some(16), Some(true), Some(21))
    );

    let (code, out, _) = run(&[
        "--json", "feasible", "--q", "2", "--k", "2", "--r", "3", "--n", "13", "--v", "6",
    ]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["status"], "infeasible");
    assert_eq!(v["result"]["phase_one_optimum"], "588/5");
    assert_eq!(v["result"]["farkas"], serde_json::json!(["1", "1", "-3/10"]));

    let (code, _, _) = run(&[
        "feasible",
        "--q",
        "2",
        "--k",
        "2",
        "--r",
        "3",
        "--n",
        "21",
        "--v",
        "6",
        "--ilp",
        "--triples",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn tau_table_and_exit_codes() {
    let (code, out, _) = run(&["tau", "--q", "2", "--k", "2", "--r", "3", "--n", "24"]);
    assert_eq!(code, 1);
    assert!(out.contains("-120"));
    let (code, _, _) = run(&["tau", "--q", "2", "--k", "2", "--r", "3", "--n", "21"]);
    assert_eq!(code, 0);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["frobnicate"],
        vec!["spectrum", "--q", "2", "--k", "2"],
        vec!["spectrum", "--q", "6", "--k", "2", "--r", "1", "--nmax", "10"],
        vec!["construct", "spread", "--q", "2", "--k", "2", "--s", "1"],
        vec!["verify", "--r", "1", "/nonexistent/set.json"],
    ] {
        let (code, _, err) = run(&args);
        assert_eq!(code, 2, "{args:?}");
        assert!(!err.is_empty());
    }
}

#[test]
fn binary_honours_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_divsets");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["spectrum", "--q", "2", "--k", "2", "--r", "3", "--nmax", "81"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("admissible: {21,31,32,33,42"));
    assert_eq!(
        status(&["tau", "--q", "2", "--k", "2", "--r", "3", "--n", "24"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(status(&["bounds"]).status.code(), Some(2));
}
