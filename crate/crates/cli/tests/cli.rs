use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
}

fn egt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_egt"))
        .args(args)
        .output()
        .expect("egt runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn induced_count_with_weak_right_filter() {
    let rule = fixture("ensure_acc.rule.json");
    let o = egt(&[
        "induced",
        "--rule",
        path(&rule),
        "--filter",
        "weak-right",
        "--count-only",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "4");
    let o = egt(&["induced", "--rule", path(&rule)]);
    assert_eq!(stdout(&o).lines().count(), 13);
}

#[test]
fn bounds_of_fixture() {
    let o = egt(&["bounds", "--rule", path(&fixture("ensure_acc.rule.json"))]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "4 32");
}

#[test]
fn match_binds_deleted_account_to_private_one() {
    let o = egt(&[
        "match",
        "--rule",
        path(&fixture("ensure_no_acc.rule.json")),
        "--graph",
        path(&fixture("g_shared.graph.json")),
        "--strategy",
        "locally-complete",
        "--base-match",
        path(&fixture("c1.match.json")),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("  a -> a4"), "{out}");
    assert!(out.contains("delete[a,accounts_c_a]"), "{out}");
}

#[test]
fn match_all_lists_every_locally_complete_result() {
    let o = egt(&[
        "match",
        "--rule",
        path(&fixture("ensure_acc.rule.json")),
        "--graph",
        path(&fixture("g_bank.graph.json")),
        "--strategy",
        "locally-complete",
        "--base-match",
        path(&fixture("c1.match.json")),
        "--all",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).matches("selection:").count(), 2);
}

#[test]
fn missing_match_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("bank_only.graph.json");
    std::fs::write(
        &g,
        "{\n  \"edges\": [],\n  \"nodes\": [\n    {\n      \"id\": \"b\",\n      \"type\": \"Bank\"\n    }\n  ],\n  \"type_graph\": \"bank\"\n}\n",
    )
    .unwrap();
    let o = egt(&[
        "match",
        "--rule",
        path(&fixture("ensure_acc.rule.json")),
        "--graph",
        g.to_str().unwrap(),
        "--strategy",
        "globally-maximal",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn strategy_argument_mismatch_exits_with_one() {
    let o = egt(&[
        "match",
        "--rule",
        path(&fixture("ensure_acc.rule.json")),
        "--graph",
        path(&fixture("g_bank.graph.json")),
        "--strategy",
        "locally-maximal",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn validate_reports_broken_files() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.graph.json");
    std::fs::write(
        &bad,
        "{\"edges\": [{\"id\": \"e\", \"source\": \"x\", \"target\": \"y\", \"type\": \"accounts\"}], \"nodes\": [], \"type_graph\": \"bank\"}",
    )
    .unwrap();
    let o = egt(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{ not json").unwrap();
    assert_eq!(egt(&["validate", garbage.to_str().unwrap()]).status.code(), Some(1));
    let ok = egt(&[
        "validate",
        path(&fixture("g_bank.graph.json")),
        path(&fixture("ensure_acc.rule.json")),
    ]);
    assert!(ok.status.success());
}

#[test]
fn apply_then_audit() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("h.graph.json");
    let trace = dir.path().join("t.trace.json");
    let rule = fixture("ensure_acc.rule.json");
    let graph = fixture("g_bank.graph.json");
    let o = egt(&[
        "apply",
        "--rule",
        path(&rule),
        "--graph",
        path(&graph),
        "--strategy",
        "locally-maximal",
        "--base-match",
        path(&fixture("c1.match.json")),
        "--out",
        out.to_str().unwrap(),
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("created: portfolios_c_p#1"));
    let o = egt(&[
        "audit",
        "--rule",
        path(&rule),
        "--graph",
        path(&graph),
        "--out",
        out.to_str().unwrap(),
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn audit_of_incomplete_trace_exits_with_three() {
    use effect_gt::io::{GraphDocument, MorphismDocument, TraceDocument};
    use effect_gt::semantics::{replay, Strategy};

    // The maximal rule at c1 creates a new Account although a1 and a2 are free.
    let dir = tempfile::tempdir().unwrap();
    let rule = fixture("ensure_acc.rule.json");
    let graph = fixture("g_bank.graph.json");
    let out = dir.path().join("h.graph.json");
    let trace = dir.path().join("t.trace.json");
    let t = replay(
        &effect_gt::fixtures::ensure_acc(),
        &effect_gt::fixtures::g_bank(),
        Strategy::LocallyComplete,
        &Default::default(),
        effect_gt::graph::Morphism::new().with_node("c", "c1"),
    )
    .unwrap();
    std::fs::write(&out, GraphDocument::from_graph(&t.record.output).encode()).unwrap();
    let doc = TraceDocument {
        base_match: MorphismDocument::from_morphism(&t.base_prematch.morphism),
        comatch: MorphismDocument::from_morphism(&t.record.comatch),
        matching: MorphismDocument::from_morphism(&t.record.matching),
        selection: Default::default(),
        strategy: "locally-complete".into(),
    };
    std::fs::write(&trace, doc.encode()).unwrap();
    let o = egt(&[
        "audit",
        "--rule",
        path(&rule),
        "--graph",
        path(&graph),
        "--out",
        out.to_str().unwrap(),
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
}
