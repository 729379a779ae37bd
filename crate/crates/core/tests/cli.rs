use std::path::Path;
use std::process::{Command, Output};

use msod_core::cli::{AnalyzeOutput, GramOutput, MutateOutput, SodOutput};
use msod_core::verify::VerifyReport;

fn msod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_msod"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const P2_SPEC: &str = r#"{
  "space": {"kind": "projective", "dim": 2},
  "group_rank": 2,
  "action": [[1, 0, 0], [0, 1, 0]]
}"#;

#[test]
fn sod_from_file_matches_preset() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "p2.json", P2_SPEC);
    let from_file = msod(&["sod", &spec, "--json"]);
    let from_preset = msod(&["sod", "--preset", "p2-example", "--json"]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(stdout(&from_file), stdout(&from_preset));

    let parsed: SodOutput = serde_json::from_str(&stdout(&from_file)).unwrap();
    assert_eq!(parsed.report.total_rank, 12);
    assert_eq!(parsed.plan.moves.len(), 3);
    assert!(parsed.plan.moves.iter().all(|m| m.orthogonal == Some(false)));
    assert_eq!(parsed.grouped[2], "pt{x}@(1,0)");
}

#[test]
fn structured_output_is_deterministic_and_round_trips() {
    for args in [
        vec!["analyze", "--preset", "quadric", "--q-dim", "3", "--json"],
        vec!["sod", "--preset", "pn-full", "--n", "3", "--json"],
        vec!["gram", "--preset", "p2-example", "--json"],
        vec!["verify", "--preset", "etale", "--n", "4", "--k", "3", "--json"],
    ] {
        let a = stdout(&msod(&args));
        let b = stdout(&msod(&args));
        assert_eq!(a, b, "{args:?}");
        let again = match args[0] {
            "analyze" => serde_json::to_string_pretty(&serde_json::from_str::<AnalyzeOutput>(&a).unwrap()),
            "sod" => serde_json::to_string_pretty(&serde_json::from_str::<SodOutput>(&a).unwrap()),
            "gram" => serde_json::to_string_pretty(&serde_json::from_str::<GramOutput>(&a).unwrap()),
            _ => serde_json::to_string_pretty(&serde_json::from_str::<VerifyReport>(&a).unwrap()),
        }
        .unwrap();
        assert_eq!(again + "\n", a, "{args:?}");
    }
}

#[test]
fn verify_etale_reports_eight_pieces() {
    let out = msod(&["verify", "--preset", "etale", "--n", "4", "--k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("[PASS] etale(n=4, k=3)"));
    assert!(stdout(&out).contains("got 8 pieces"));
}

#[test]
fn verify_named_check() {
    let out = msod(&["verify", "--check", "mutation", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: VerifyReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report.passed);
    assert_eq!(report.checks.len(), 1);
}

#[test]
fn mutate_replays_plan_script() {
    let dir = tempfile::tempdir().unwrap();
    let script = write(
        dir.path(),
        "script.json",
        r#"[{"block": 4, "direction": "left"}, {"block": 3, "direction": "left"}, {"block": 5, "direction": "left"}]"#,
    );
    let out = msod(&["mutate", "--preset", "p2-example", "--script", &script, "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let parsed: MutateOutput = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(parsed.semiorthogonal);
    assert_eq!(parsed.moves.len(), 3);

    // the state written out can be fed back in; moving block 2 right and
    // back left restores it
    let state = write(dir.path(), "state.json", &serde_json::to_string(&parsed.sequence).unwrap());
    let there_and_back = write(
        dir.path(),
        "back.json",
        r#"[{"block": 2, "direction": "right"}, {"block": 3, "direction": "left"}]"#,
    );
    let out = msod(&["mutate", &state, "--script", &there_and_back, "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let round: MutateOutput = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(round.sequence, parsed.sequence);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.json");
    let out = msod(&["analyze", "--preset", "p2-example", "--json", "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let parsed: AnalyzeOutput = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(parsed.components.len(), 7);
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let malformed = write(dir.path(), "bad.json", r#"{"space": {"kind": "projective"}, "action": []}"#);
    let wrong_width = write(
        dir.path(),
        "wide.json",
        r#"{"space": {"kind": "affine", "dim": 3}, "group_rank": 1, "action": [[1, 0, 0, 1]]}"#,
    );
    for args in [
        vec!["sod", malformed.as_str()],
        vec!["sod", wrong_width.as_str()],
        vec!["analyze", "/no/such/file.json"],
        vec!["gram", "--preset", "etale", "--n", "2", "--k", "1"],
        vec!["sod", "--preset", "nonsense"],
        vec!["verify", "--check", "nonsense"],
        vec!["sod", "--preset", "p2-example", malformed.as_str()],
    ] {
        let out = msod(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}
