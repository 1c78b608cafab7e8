use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nskoszul"))
        .args(args)
        .env_remove("NSKOSZUL_CHAR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn koszul_reports_true_with_frozen_fields() {
    let o = run(&["koszul", "--ring", "x=1,y=3", "--e", "5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(|s| s.as_str()).collect();
    keys.sort_unstable();
    assert_eq!(keys, ["betti", "bound", "e", "ring", "trace", "verdicts"]);
    assert_eq!(v["ring"]["weights"], serde_json::json!([1, 3]));
    assert_eq!(v["e"], 5);
    assert_eq!(v["bound"], 13);
    assert_eq!(v["betti"], serde_json::json!([{"i": 0, "j": 0, "rank": 3}, {"i": 1, "j": 1, "rank": 2}]));
    for k in ["lin_acyclic", "gr_linear", "construction_match"] {
        assert_eq!(v["verdicts"][k], "true");
    }
    assert!(v["trace"].is_null());
}

#[test]
fn resolve_second_example() {
    let o = run(&["resolve", "--ring", "x=1,y=4", "--e", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("F1: twists [9, 9]"), "{}", stdout(&o));
}

#[test]
fn gens_listing() {
    let o = run(&["gens", "--ring", "x=2,y=3", "--e", "7"]);
    let s = stdout(&o);
    let names: Vec<&str> = s.lines().map(|l| l.split_whitespace().next().unwrap()).collect();
    assert_eq!(names, ["x^4", "x^2*y", "x*y^2", "y^3"]);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["koszul", "--ring", "x=1,y=3"]).status.code(), Some(2));
    assert_eq!(run(&["koszul", "--ring", "x=1,x=3", "--e", "2"]).status.code(), Some(2));
    assert_eq!(run(&["koszul", "--ring", "x=1@100", "--e", "2"]).status.code(), Some(2));
    let o = run(&["gens", "--ring", "x=1,y=0", "--e", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("byte 6"));
}

#[test]
fn small_bound_is_inconclusive() {
    let o = run(&["koszul", "--ring", "x=1,y=2,z=2", "--e", "7", "--bound", "1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn construct_trace_json() {
    let o = run(&["construct", "--ring", "a=1,b=2,c=2", "--e", "7", "--trace", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["trace"]["layers"], 4);
    assert_eq!(v["trace"]["steps"][0]["after_horseshoe"], serde_json::json!([
        {"i": 0, "j": 0, "rank": 3}, {"i": 1, "j": 1, "rank": 3}, {"i": 2, "j": 2, "rank": 1}
    ]));
}

#[test]
fn characteristic_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_nskoszul"))
        .args(["gr-betti", "--ring", "x=1,y=3", "--e", "5", "--format", "json"])
        .env("NSKOSZUL_CHAR", "101")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["ring"]["characteristic"], 101);
    let o = run(&["gr-betti", "--ring", "x=1,y=3@7", "--e", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["ring"]["characteristic"], 7);
}

#[test]
fn sweep_small_grid() {
    let o = run(&["sweep", "--max-vars", "2", "--max-weight", "3", "--max-e", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(
        lines.next().unwrap(),
        "vars,weights,e,bound,lin_acyclic,gr_linear,construction_match,beta_total_0,beta_total_1,beta_total_2"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 9 * 6);
    assert!(rows.contains(&"2,\"1,3\",5,13,true,true,true,3,2,0"));
    assert!(rows.iter().all(|r| r.contains("true,true,true")));
}

#[test]
fn sweep_empty_range() {
    let o = run(&["sweep", "--max-vars", "2", "--max-weight", "2", "--min-e", "3", "--max-e", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn sweep_output_is_stable_across_workers() {
    let args = ["sweep", "--max-vars", "3", "--max-weight", "2", "--max-e", "4", "--format", "json"];
    let one = run(&[&args[..], &["--workers", "1"]].concat());
    let many = run(&[&args[..], &["--workers", "4"]].concat());
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(one.stdout, run(&args).stdout);
}

#[test]
fn ses_check_and_hilbert() {
    let o = run(&["ses-check", "--ring", "x=1,y=2,z=2", "--e", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.contains(",true,")).count(), 4);
    let o = run(&["gr-hilbert", "--ring", "x=1,y=3", "--e", "5", "--bound", "2"]);
    assert_eq!(stdout(&o), "degree,dim\n0,3\n1,4\n2,5\n");
}

#[test]
fn lin_check_and_cas_script() {
    let dir = std::env::temp_dir().join(format!("nskoszul-cas-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("res.m2");
    let o = run(&["resolve", "--ring", "x=1,y=3", "--e", "5", "--emit-cas", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let script = std::fs::read_to_string(&path).unwrap();
    assert!(script.contains("res M"));
    std::fs::remove_dir_all(&dir).unwrap();
    let o = run(&["lin-check", "--ring", "x=1,y=3", "--e", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("lin_acyclic: true"));
}
