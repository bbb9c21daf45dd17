use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "examples", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn arq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arq")).args(args).output().expect("arq runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn algebra_check_reports_invariants() {
    let o = arq(&["algebra-check", "--fixture", "kt:3:3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("self-injective: yes"));
    assert!(text.contains("symmetric: yes"));
    assert!(text.contains("π = id"));

    let o = arq(&["algebra-check", &data("a2.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("self-injective: no"));

    let o = arq(&["algebra-check", &data("bad_relation.json")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn parse_errors_carry_positions() {
    let dir = std::env::temp_dir().join(format!("arq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("broken.json");
    std::fs::write(&bad, "{\n  \"field\": {\"prime\": 3},\n  \"quiver\": [\n").unwrap();
    let o = arq(&["algebra-check", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
    assert_eq!(arq(&["algebra-check", "--fixture", "kt:1:2"]).status.code(), Some(2));
    assert_eq!(arq(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn fixture_output_reloads() {
    let o = arq(&["fixture", "--fixture", "nakayama:2:2:3"]);
    assert_eq!(o.status.code(), Some(0));
    let dir = std::env::temp_dir().join(format!("arq-fixture-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("n.json");
    std::fs::write(&f, &o.stdout).unwrap();
    let o = arq(&["algebra-check", f.to_str().unwrap()]);
    assert!(stdout(&o).contains("π = 1 -> 2, 2 -> 1"), "{}", stdout(&o));
}

#[test]
fn ar_sequence_of_j2() {
    let o = arq(&["ar", "seq", "--algebra", &data("kt3.json"), "--module", &data("j2.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("summand dims [1, 3]"));
    let o = arq(&["ar", "seq", "--algebra", &data("kt3.json"), "--module", &data("j2.json"), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["middle_summand_dims"], serde_json::json!([1, 3]));
    assert_eq!(v["report"]["non_split"], true);
}

#[test]
fn ar_preconditions_exit_3() {
    let o = arq(&["ar", "seq", "--algebra", &data("kt3.json"), "--module", &data("j3.json")]);
    assert_eq!(o.status.code(), Some(3));
    let o = arq(&["ar", "seq", "--algebra", &data("a2.json"), "--simple", "1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn rim_triangle_has_indecomposable_middle() {
    let o = arq(&["ar", "triangle", "--fixture", "kt:3:3", "--module", &data("j1.json")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("middle: indecomposable"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn slice_of_projective_over_dual_numbers() {
    let o = arq(&["component", "slice", "--fixture", "kt:2:2", "--stalk", "1", "--depth", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().step_by(2).collect();
    assert_eq!(rows.len(), 4);
    for (d, row) in rows.iter().enumerate() {
        let expect = match d {
            0 => "2".to_string(),
            _ => format!("1.{}1", "0.".repeat(d - 1)),
        };
        assert!(row.split_whitespace().all(|l| l == expect), "row {d}: {row}");
    }
}

#[test]
fn dot_output_is_byte_identical() {
    let args = ["component", "homology", "--fixture", "kt:3:3", "--stalk", "1", "--depth", "2", "--width", "3", "--format", "dot"];
    let (a, b) = (arq(&args), arq(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("digraph"));
}

#[test]
fn stabilize_presentation_of_j1() {
    let o = arq(&["component", "stabilize", "--algebra", &data("kt3.json"), "--module", &data("j1.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Σ: dim 2"), "{}", stdout(&o));
}

#[test]
fn component_errors() {
    let o = arq(&["component", "slice", "--fixture", "kt:2:2", "--stalk", "1", "--depth", "40", "--width", "40"]);
    assert_eq!(o.status.code(), Some(4));
    let o = arq(&["component", "slice", "--algebra", &data("a2.json"), "--stalk", "1"]);
    assert_eq!(o.status.code(), Some(3));
    let o = arq(&["component", "slice", "--fixture", "kt:2:2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_emits_json_verdicts() {
    let o = arq(&["verify", "big-homology", "--fixture", "kt:3:3", "--lengths", "3,5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["suite"], "big-homology");
    assert_eq!(v["data"]["sigma_dims"], serde_json::json!([3, 5]));

    let o = arq(&["verify", "projective-component", "--fixture", "kt:2:2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = arq(&["verify", "big-homology", "--fixture", "kt:2:2"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_is_deterministic_for_a_seed() {
    let args = ["verify", "length-distance", "--fixture", "kt:3:3", "--seed", "7", "--samples", "10"];
    let (a, b) = (arq(&args), arq(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
