use std::path::PathBuf;
use std::process::{Command, Output};

fn choosekit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_choosekit"))
        .args(args)
        .env_remove("CHOOSEKIT_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("choosekit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn decide_writes_a_witness_that_check_rejects() {
    let w = scratch("witness.json");
    let o = choosekit(&["decide", "--point", "2,4,2,2", "--witness", w.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("Unchoosable\n"));
    let o = choosekit(&["check", "--in", w.to_str().unwrap()]);
    assert!(stdout(&o).contains(r#""colorable":false"#), "{}", stdout(&o));
    for engine in ["backtrack", "transversal"] {
        let o = choosekit(&["check", "--in", w.to_str().unwrap(), "--engine", engine]);
        assert!(stdout(&o).contains(r#""colorable":false"#));
    }
}

#[test]
fn frontier_csv() {
    let o = choosekit(&["frontier", "--ka", "2", "--kb", "2", "--maxA", "3", "--maxB", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("deltaA,deltaB,kA,kB,xi,verdict,rule,nodesExplored"));
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(str::to_string).collect()).collect();
    assert_eq!(rows.len(), 15);
    let verdict = |a: &str, b: &str| rows.iter().find(|r| r[0] == a && r[1] == b).unwrap()[5].clone();
    assert_eq!(verdict("2", "3"), "Choosable");
    assert_eq!(verdict("2", "4"), "Unchoosable");
    // deterministic, byte for byte
    assert_eq!(stdout(&choosekit(&["frontier", "--ka", "2", "--kb", "2", "--maxA", "3", "--maxB", "5"])), text);
}

#[test]
fn exhausted_budget_exits_one() {
    let o = Command::new(env!("CARGO_BIN_EXE_choosekit"))
        .args(["decide", "--point", "3,5,2,2"])
        .env("CHOOSEKIT_BUDGET", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("Exhausted"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(choosekit(&["decide"]).status.code(), Some(2));
    assert_eq!(choosekit(&["decide", "--point", "2,x,2,2"]).status.code(), Some(2));
    assert_eq!(choosekit(&["simulate", "--in", "x.json", "--p", "0.5"]).status.code(), Some(2));
    assert_eq!(choosekit(&["pblocked", "--counterexample", "--mc", "10"]).status.code(), Some(2));
    assert_eq!(choosekit(&["check", "--in", "/nonexistent/file.json"]).status.code(), Some(2));
}

#[test]
fn pblocked_counterexample_exact() {
    let o = choosekit(&["pblocked", "--counterexample", "--exact"]);
    let text = stdout(&o);
    assert!(text.starts_with("exact\t83/315\t"), "{text}");
    assert!(text.contains("bound\t1/3\t"));
    assert!(text.contains("exact < bound"));
    assert!(text.contains("exact > product"));
}

#[test]
fn pblocked_from_file_is_seeded() {
    let g = scratch("g.json");
    std::fs::write(&g, r#"{"s":1,"t":1,"edges":[[0,0]]}"#).unwrap();
    let args = ["pblocked", "--in", g.to_str().unwrap(), "--mc", "2000", "--seed", "5"];
    let a = stdout(&choosekit(&args));
    assert_eq!(a, stdout(&choosekit(&args)));
    assert!(a.contains(r#""trials":2000"#));
    let exact = stdout(&choosekit(&["pblocked", "--in", g.to_str().unwrap(), "--exact"]));
    assert!(exact.starts_with("exact\t1/2\t"));
}

#[test]
fn construct_and_amplify_verify() {
    let base = scratch("blocks.json");
    let o = choosekit(&["construct", "blocks", "--ka", "2", "--a", "1,1", "--verify", "--out", base.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = choosekit(&["amplify", "--kind", "blowup", "--r", "2", "--in", base.to_str().unwrap(), "--verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stderr).contains("verified"));
    let o = choosekit(&["amplify", "--kind", "expansion", "--r", "2", "--point", "2,1,2,1"]);
    assert_eq!(stdout(&o).trim(), r#"{"deltaA":2,"deltaB":4,"kA":2,"kB":2}"#);
    let o = choosekit(&["construct", "simple", "--ka", "2", "--a", "2", "--r", "1"]);
    assert!(stdout(&o).contains(r#""kB": 2"#));
}

#[test]
fn classify_and_bounds() {
    let o = choosekit(&["classify", "--point", "3,9,2,1"]);
    assert!(stdout(&o).starts_with("Unchoosable\t"), "{}", stdout(&o));
    let o = choosekit(&["bounds", "--k", "2"]);
    let text = stdout(&o);
    assert!(text.contains("xi_m lower\t0.549306144334"));
    assert!(text.contains("xi_m upper\t0.693147180560"));
}

#[test]
fn simulate_is_seeded() {
    let inst = scratch("k11.json");
    std::fs::write(
        &inst,
        r#"{"universe":3,"kA":2,"kB":1,"adjacency":"complete","aLists":[[0,1]],"bLists":[[2]]}"#,
    )
    .unwrap();
    let args = ["simulate", "--in", inst.to_str().unwrap(), "--p", "1", "--trials", "100", "--seed", "9"];
    let a = stdout(&choosekit(&args));
    assert!(a.contains(r#""successRate":1.0"#), "{a}");
    assert_eq!(a, stdout(&choosekit(&args)));
}

#[test]
fn selftest_reports_every_criterion() {
    let o = choosekit(&["selftest"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().filter(|l| l.starts_with("[PASS]") || l.starts_with("[FAIL]")).collect();
    assert_eq!(lines.len(), 10, "{text}");
    let passed = lines.iter().filter(|l| l.starts_with("[PASS]")).count();
    assert_eq!(o.status.code(), Some(if passed == 10 { 0 } else { 1 }));
}

#[test]
fn check_color_system() {
    let sys = scratch("sys.json");
    std::fs::write(&sys, r#"{"vertices":4,"edges":[[0,2],[0,3],[1,2],[1,3]],"family":[[0,1],[2,3]]}"#).unwrap();
    let o = choosekit(&["check", "--system", sys.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), r#"{"exists":false,"transversal":null}"#);
    std::fs::write(&sys, r#"{"vertices":3,"edges":[[0]],"family":[[0,1]]}"#).unwrap();
    let o = choosekit(&["check", "--system", sys.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), r#"{"exists":true,"transversal":[1]}"#);
}
