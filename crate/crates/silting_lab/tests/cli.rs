use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_silting-lab")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn hom_of_stalks_and_arcs() {
    let o = run(&["hom", "p:3@0", "p:2@0", "--range", "0:0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0\t2\n");
    let o = run(&["hom", "p:1,2,3@0", "p:1,2,3@0"]);
    assert_eq!(stdout(&o), "0\t1\n1\t0\n2\t0\n3\t0\n4\t0\n5\t0\n6\t0\n");
    let o = run(&["hom", "deg -1: P(3);deg 0: P(1);d -1 0 0: 1*x1,y2", "q:1,3@0", "--range", "-1:1"]);
    // same complex as the closed arc q:1,3@0, which is not presilting
    assert_eq!(stdout(&o), "-1\t0\n0\t1\n1\t1\n");
}

#[test]
fn complex_literal_from_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("g.cx");
    std::fs::write(&f, "deg -2: P(3)\ndeg -1: P(2)\ndeg 0: P(1)\nd -2 0 0: 1*y2\nd -1 0 0: 1*y1\n").unwrap();
    let o = run(&["hom", f.to_str().unwrap(), "p:1,2,3@0", "--range", "0:1"]);
    assert_eq!(stdout(&o), "0\t1\n1\t0\n");
}

#[test]
fn describe_and_classify() {
    let o = run(&["describe-arc", "q:3,2,1@2"]);
    let s = stdout(&o);
    assert!(s.contains("canonical: p:1,2,3@0"));
    assert!(s.contains("presilting: true"));
    let o = run(&["classify", "q:1,2@0", "p:1,2,3@0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).matches("agree").count(), 2);
}

#[test]
fn bad_input_is_an_error() {
    assert_eq!(run(&["describe-arc", "p:1,1@0"]).status.code(), Some(2));
    assert_eq!(run(&["hom", "p:1@0", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["find-complement", "--mu-window", "3:1"]).status.code(), Some(2));
    assert_eq!(run(&["find-complement", "--prime", "2"]).status.code(), Some(2));
}

#[test]
fn config_file_with_flag_override_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    let out = dir.path().join("report.json");
    std::fs::write(&conf, format!("max_crossings = 9\nmu_window = -1:1\nworkers = 2\nout = {}\n", out.display())).unwrap();
    let o = run(&["verify-paper", "--config", conf.to_str().unwrap(), "--max-crossings", "4"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&o);
    assert!(s.contains("1..=4 crossings, mu1 in [-1, 1]"), "{s}");
    assert!(s.contains("overall: PASS"));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(json["config"]["max_crossings"], 4);
    assert_eq!(json["complement"]["complements"].as_array().unwrap().len(), 0);
    assert_eq!(json["pass"], true);

    let o = run(&["find-complement", "--max-crossings", "3", "--mu-window", "-2:2"]);
    assert!(stdout(&o).contains("complements: none"));
    let o = run(&["case-fixtures", "--max-crossings", "5"]);
    assert!(o.status.success());
    assert!(!stdout(&o).contains("FAIL"));
}
