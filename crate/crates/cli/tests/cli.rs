use std::process::{Command, Output};

fn gl2t(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gl2t")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn mass_check_passes() {
    let o = gl2t(&["mass-check", "--primes", "3,5,7", "--r-max", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("p  r  chi"), "{out}");
    assert!(out.ends_with("12 passed, 0 failed\n"));
}

#[test]
fn dims_table_and_quiet() {
    let o = gl2t(&["dims", "--weights", "12", "--n-max", "50"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let first: Vec<&str> = out.lines().nth(1).unwrap().split_whitespace().collect();
    assert_eq!(first[..5], ["1", "12", "11/12", "1", "1/12"]);
    let o = gl2t(&["dims", "--weights", "12", "--n-max", "50", "--quiet"]);
    assert_eq!(stdout(&o), "50 passed, 0 failed\n");
}

#[test]
fn writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("t.csv");
    let json = dir.path().join("t.json");
    let a = gl2t(&["tree-check", "--primes", "3", "--r-max", "5", "--out", csv.to_str().unwrap(), "--quiet"]);
    assert_eq!(a.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("p,r,gamma,method,value_num,value_den,bound_num,bound_den,relation,check,pass\n"));
    let b = gl2t(&["weil", "--format", "json", "--out", json.to_str().unwrap(), "--quiet"]);
    assert_eq!(b.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 8);
    assert_eq!(v[7]["check"], "weil-completeness");
    // byte-identical reruns
    let again = dir.path().join("t2.csv");
    gl2t(&["tree-check", "--primes", "3", "--r-max", "5", "--out", again.to_str().unwrap(), "--quiet"]);
    assert_eq!(std::fs::read(&csv).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["mass-check", "--primes", "4"],
        vec!["mass-check", "--r-max", "9"],
        vec!["orbits", "--chi", "nonsense"],
        vec!["tree-check", "--gamma", "1,2;2,4"],
        vec!["fejer", "--format", "xml"],
        vec!["bogus"],
        vec!["ratios", "--primes", "3"],
    ] {
        let o = gl2t(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn chi_flag() {
    let o = gl2t(&["orbits", "--primes", "5", "--r-max", "2", "--chi", "1:2@1/2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1:2@1/2"));
}
