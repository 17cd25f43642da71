//! End-to-end tests of the command-line front end, through the library entry point and the
//! built binary.

use cmtorsion_cli::{run, CommandResult, Status, CACHE_ENV};
use serde_json::{json, Value};
use std::process::Command;

fn call(args: &[&str]) -> (i32, Option<CommandResult>, String) {
    let mut argv = vec!["cmtorsion"];
    argv.extend_from_slice(args);
    let out = run(argv);
    let parsed = serde_json::from_str(&out.stdout).ok();
    (out.code, parsed, out.stderr)
}

fn ok_result(args: &[&str]) -> Value {
    let (code, rec, err) = call(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    let rec = rec.expect("JSON record");
    assert_eq!(rec.status, Status::Ok);
    rec.result
}

#[test]
fn documented_examples() {
    assert_eq!(ok_result(&["classnum", "-23"]), json!(3));
    assert_eq!(ok_result(&["classnum", "--", "-23"]), json!(3));
    assert_eq!(ok_result(&["raydeg", "-7", "7", "--over", "Q"]), json!(42));
    assert_eq!(ok_result(&["raydeg", "-11", "11"]), json!(110));
    let (code, rec, _) = call(&["classnum", "5"]);
    assert_eq!(code, 1);
    match rec.unwrap().status {
        Status::Error { message } => assert!(message.contains("not an imaginary quadratic discriminant")),
        Status::Ok => panic!("positive input accepted"),
    }
}

#[test]
fn every_subcommand_answers() {
    assert_eq!(ok_result(&["nu", "-84"])["nu"], json!(2));
    assert_eq!(ok_result(&["real-ideals", "-84"]).as_array().unwrap().len(), 8);
    assert_eq!(ok_result(&["cartan", "-7", "7"]), json!(42));
    assert_eq!(ok_result(&["hcp", "-12"])["poly"], json!("-54000,1"));
    assert_eq!(ok_result(&["degseq", "-4", "1", "4"])["degrees"], json!([1, 2]));
    let t = ok_result(&["torsion", "--field", "1,0,1", "--kubert", "0,1;0,1"]);
    assert_eq!(t["shape"], json!("Z/10"));
    let t = ok_result(&["torsion", "--curve", "0;0;0;-1;0"]);
    assert_eq!(t["shape"], json!("Z/2 x Z/2"));
    let tw = ok_result(&["twist", "--curve", "0;0;0;-1;0", "--by", "-1"]);
    assert_eq!(tw["coefficients"], json!(["0", "0", "0", "-1", "0"]));
    assert_eq!(ok_result(&["iso", "--curve", "0;0;0;-1;0", "--other", "0;0;0;-16;0"]), json!(true));
    assert_eq!(ok_result(&["iso", "--curve", "0;0;0;-1;0", "--other", "0;0;0;-4;0"]), json!(false));
    let c = ok_result(&["classify", "--degree", "9", "--odd"]);
    assert_eq!(c["new_groups"].as_array().unwrap().len(), 3);
    let c = ok_result(&["classify", "--degree", "9", "--prime-squared"]);
    let shapes: Vec<&str> = c["proven"].as_array().unwrap().iter().map(|g| g["shape"].as_str().unwrap()).collect();
    assert!(["Z/9", "Z/14", "Z/18", "Z/19", "Z/27"].iter().all(|s| shapes.contains(s)));
    assert_eq!(ok_result(&["prime-table", "5"]).as_array().unwrap().len(), 1);
    let v = ok_result(&["verify-table1", "--rows", "12,17"]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    assert_eq!(v["pass"], json!(true));
    let s = ok_result(&["sg-scan", "20", "--jobs", "2"]);
    assert_eq!(s["count"], json!(4));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["bogus"],
        vec!["classnum"],
        vec!["classnum", "abc"],
        vec!["raydeg", "-7", "7", "--over", "R"],
        vec!["classify", "--degree", "9", "--odd", "--prime"],
        vec!["--format", "csv", "classnum", "-3"],
        vec!["sg-scan", "10", "--frobnicate"],
    ] {
        let (code, rec, err) = call(&args);
        assert_eq!(code, 2, "{args:?}");
        assert!(rec.is_none(), "{args:?} wrote a record");
        assert!(!err.is_empty(), "{args:?} gave no usage text");
    }
}

#[test]
fn domain_errors_exit_one() {
    for args in [
        vec!["degseq", "-7", "1", "2"],
        vec!["degseq", "-15", "1", "5"],
        vec!["cartan", "-7", "0"],
        vec!["prime-table", "9"],
        vec!["verify-table1", "--rows", "18"],
        vec!["sg-scan", "0"],
    ] {
        let (code, rec, _) = call(&args);
        assert_eq!(code, 1, "{args:?}");
        assert!(matches!(rec.unwrap().status, Status::Error { .. }));
    }
}

#[test]
fn csv_output() {
    let out = run(["cmtorsion", "--format", "csv", "degseq", "-7", "1", "7"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "delta,m,n,degree\n-7,1,7,3\n-7,1,7,21\n");
    let out = run(["cmtorsion", "sg-scan", "20", "--format", "csv"]);
    assert_eq!(out.stdout, "k,ell,p,h\n5,23,11,3\n11,47,23,5\n14,59,29,3\n20,83,41,3\n");
}

#[test]
fn records_round_trip_and_results_are_deterministic() {
    for args in [vec!["classnum", "-23"], vec!["degseq", "-3", "3", "3"], vec!["classnum", "7"]] {
        let mut argv = vec!["cmtorsion"];
        argv.extend_from_slice(&args);
        let a = run(argv.clone());
        let b = run(argv);
        let ra: CommandResult = serde_json::from_str(&a.stdout).unwrap();
        let rb: CommandResult = serde_json::from_str(&b.stdout).unwrap();
        let again: CommandResult = serde_json::from_str(&serde_json::to_string(&ra).unwrap()).unwrap();
        assert_eq!(again, ra);
        assert_eq!((ra.result, ra.status, ra.inputs), (rb.result, rb.status, rb.inputs));
    }
}

#[test]
fn binary_and_class_number_cache() {
    let dir = std::env::temp_dir().join(format!("cmtorsion-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cache = dir.join("cache.txt");
    std::fs::write(&cache, "-23 3\n-4 1\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_cmtorsion"))
        .args(["classnum", "-47"])
        .env(CACHE_ENV, &cache)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let rec: CommandResult = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rec.result, json!(5));
    let text = std::fs::read_to_string(&cache).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines.contains(&"-47 5") && lines.contains(&"-23 3"));
    let keys: Vec<u64> = lines.iter().map(|l| l.split(' ').next().unwrap().parse::<i64>().unwrap().unsigned_abs()).collect();
    assert!(keys.windows(2).all(|w| w[0] <= w[1]), "cache not sorted by |D|");
    let out = Command::new(env!("CARGO_BIN_EXE_cmtorsion")).arg("nonsense").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    std::fs::remove_dir_all(&dir).ok();
}
