use selfsim_cli::run;
use serde_json::Value;

fn ok(args: &[&str]) -> String {
    let mut argv = vec!["selfsim"];
    argv.extend_from_slice(args);
    let out = run(argv);
    assert_eq!(out.status, 0, "stderr: {}", out.stderr);
    out.stdout
}

fn json(args: &[&str]) -> Value {
    let mut argv = args.to_vec();
    argv.extend(["--format", "structured"]);
    serde_json::from_str(&ok(&argv)).unwrap()
}

fn status(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["selfsim"];
    argv.extend_from_slice(args);
    let out = run(argv);
    (out.status, out.stdout, out.stderr)
}

#[test]
fn word_problem_examples() {
    let v = json(&["wp", "--builtin", "star3", "-w", "a b a^-1 b^-1"]);
    assert_eq!(v["verdict"], "NonIdentity");
    assert_eq!(v["witness"], "0");
    assert_eq!(v["image"], "2");
    let v = json(&["wp", "--builtin", "star3", "-w", ""]);
    assert_eq!(v["verdict"], "Identity");
    assert_eq!(v["word"], "id");
    let v = json(&[
        "wp",
        "--builtin",
        "fig5_tree",
        "-w",
        "e2 e4 e2^-1 e4^-1",
        "--method",
        "fragile",
    ]);
    assert_eq!(v["verdict"], "Identity");
    assert_eq!(v["fragile-index"], "1");
}

#[test]
fn trace_equality_oracles() {
    for oracle in ["trace", "action", "projection"] {
        let v = json(&[
            "trace-eq",
            "--builtin",
            "fig5_tree",
            "-u",
            "e2 e4",
            "-v",
            "e4 e2",
            "--oracle",
            oracle,
        ]);
        assert_eq!(v["equivalent"], "true", "{oracle}");
        let v = json(&[
            "trace-eq",
            "--builtin",
            "fig5_tree",
            "-u",
            "e1 e2",
            "-v",
            "e2 e1",
            "--oracle",
            oracle,
        ]);
        assert_eq!(v["equivalent"], "false", "{oracle}");
    }
    let v = json(&["trace-nf", "--builtin", "fig5_tree", "-u", "e4 id e2"]);
    assert_eq!(v["normal-form"], "e2 e4");
}

#[test]
fn text_report_layout() {
    let out = ok(&["sym-quotient", "--builtin", "star3"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "command: sym-quotient --builtin star3");
    assert!(lines[1].starts_with("tool: selfsim "));
    assert!(lines[2].starts_with("input: builtin:star3 "));
    assert_eq!(&lines[3..], ["degree: 4", "order: 24"]);
}

#[test]
fn reports_are_reproducible_across_job_counts() {
    let strip = |s: String| s.lines().skip(1).collect::<Vec<_>>().join("\n");
    let base = strip(ok(&[
        "check-reducible",
        "--builtin",
        "star3",
        "--max-len",
        "3",
        "--max-depth",
        "6",
    ]));
    for jobs in ["1", "3"] {
        let again = ok(&[
            "check-reducible",
            "--builtin",
            "star3",
            "--max-len",
            "3",
            "--max-depth",
            "6",
            "--jobs",
            jobs,
        ]);
        assert_eq!(strip(again), base);
    }
    let v1 = ok(&["nucleus", "--builtin", "star3"]);
    assert_eq!(v1, ok(&["nucleus", "--builtin", "star3"]));
}

#[test]
fn exit_statuses() {
    let (code, _, err) = status(&["frobnicate"]);
    assert_eq!(code, 2);
    assert!(err.contains("frobnicate"));
    let (code, _, _) = status(&["wp", "--builtin", "star3"]);
    assert_eq!(code, 2, "missing word is a usage error");
    let (code, _, _) = status(&["wp", "--builtin", "star3", "--graph", "x", "-w", "a"]);
    assert_eq!(code, 2, "inputs are exclusive");
    let (code, out, _) = status(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("check-reducible"));
    let (code, out, _) = status(&["--version"]);
    assert_eq!(
        (code, out.trim()),
        (0, concat!("selfsim ", env!("CARGO_PKG_VERSION")))
    );

    let (code, out, err) = status(&["wp", "--builtin", "star3", "-w", "z"]);
    assert_eq!(code, 1);
    assert!(out.contains("error: UnknownGenerator"));
    assert!(err.starts_with("error: UnknownGenerator"));
    let (code, out, _) = status(&["trace-nf", "--builtin", "basilica", "-u", "a"]);
    assert_eq!(code, 1);
    assert!(out.contains("error: InvalidGraph"));
    let (code, out, _) = status(&["check-acyclic", "--builtin", "cycle_3", "--max-len", "3"]);
    assert_eq!(code, 1);
    assert!(out.contains("error: OrientedCycle"));
    let (code, out, _) = status(&["fragile", "--builtin", "star3", "-w", "a", "-k", "30"]);
    assert_eq!(code, 1);
    assert!(out.contains("error: LevelTooLarge"));
}

#[test]
fn fragile_method_reports_inconclusive() {
    // a^2 is nontrivial only below the first level
    let (code, out, _) = status(&[
        "wp",
        "--builtin",
        "star3",
        "-w",
        "a a",
        "--method",
        "fragile",
        "--kmax",
        "1",
    ]);
    assert_eq!(code, 1);
    assert!(out.contains("error: FragileInconclusive"));
}

#[test]
fn file_inputs_and_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("star.graph");
    std::fs::write(&graph, "# star\na 0 1\nb 0 2\nc 0 3\n").unwrap();
    let json_path = dir.path().join("star.json");
    let from_file = json(&[
        "build-graph-automaton",
        "--graph",
        graph.to_str().unwrap(),
        "--output",
        json_path.to_str().unwrap(),
    ]);
    let builtin = json(&["build-graph-automaton", "--builtin", "star3"]);
    assert_eq!(from_file["transitions"], builtin["transitions"]);
    assert_eq!(from_file["bounded"], "true");
    assert!(from_file["input"].as_str().unwrap().starts_with("graph:"));

    let reloaded = json(&[
        "wp",
        "--automaton",
        json_path.to_str().unwrap(),
        "-w",
        "a b a^-1 b^-1",
    ]);
    assert_eq!(reloaded["verdict"], "NonIdentity");

    let dot = dir.path().join("star.dot");
    let v = json(&[
        "export-dot",
        "--builtin",
        "star3",
        "--output",
        dot.to_str().unwrap(),
    ]);
    let written = std::fs::read_to_string(&dot).unwrap();
    assert_eq!(v["dot"].as_str().unwrap(), written);
    assert!(written.starts_with("digraph"));

    let (code, out, _) = status(&["dual", "--graph", "/nonexistent/graph"]);
    assert_eq!(code, 1);
    assert!(out.contains("error: Io"));
}

#[test]
fn automaton_operations() {
    let p = json(&["power", "--builtin", "adding_machine", "-n", "2"]);
    assert_eq!(p["states"].as_array().unwrap().len(), 4);
    let d = json(&["dual", "--builtin", "basilica"]);
    assert_eq!(d["sink"], "none");
    let e = json(&["exponent-sums", "--builtin", "star3", "-w", "a a b^-1"]);
    assert_eq!(e["sums"], serde_json::json!(["a 2", "b -1", "c 0"]));
    let g = json(&["gk-identity", "--builtin", "star3", "-w", "a a", "-k", "2"]);
    assert_eq!(g["identity-in-gk"], "false");
    let f = json(&[
        "fragile",
        "--builtin",
        "fig5_tree",
        "-w",
        "e1 e5 e1^-1 e5^-1",
        "-k",
        "1",
    ]);
    assert_eq!(f["member"], "true");
    let r = json(&[
        "check-reducible",
        "--builtin",
        "non_reducible_demo",
        "--max-len",
        "2",
        "--max-depth",
        "4",
    ]);
    assert_eq!(r["result"], "Counterexample");
    assert_eq!(r["word"], "s");
}

#[test]
fn schreier_commands() {
    let action = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../fixtures/triangle.action"
    );
    let v = json(&["schreier-gen", "--action", action]);
    assert_eq!(v["cosets"], "3");
    assert_eq!(v["tree"], serde_json::json!(["0 --a--> 1", "1 --a--> 2"]));
    assert_eq!(v["round-trip"], "true");
    assert_eq!(v["degenerate"], "false");

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.assignment");
    std::fs::write(&bad, "2 a a\n").unwrap();
    let (code, out, _) = status(&[
        "schreier-gen",
        "--action",
        action,
        "--assignment",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    assert!(out.contains("error: BadAssignment"));
}

#[test]
fn caps_can_be_raised_from_the_environment() {
    // only ever raises limits, so concurrent tests are unaffected
    std::env::set_var(selfsim_cli::CAPS_ENV, "level=2000000");
    let v = json(&["fragile", "--builtin", "star3", "-w", "a", "-k", "10"]);
    assert_eq!(v["member"], "false");
}
