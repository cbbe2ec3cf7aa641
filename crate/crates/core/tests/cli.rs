use std::fs;
use std::process::{Command, Output};

fn polyirs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyirs")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn simulate_writes_sorted_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig1.csv");
    let out = polyirs(&[
        "simulate", "--field", "real", "--n", "8", "--k", "2", "--l", "6,1", "--t", "1:6", "--trials", "50", "--model", "gre",
        "--alphas", "pow:0.9", "--decoder", "cpda", "--seed", "0", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,L,trials,failures,undetected,p_f,p_ml,p_e,mean_cond");
    assert_eq!(lines.len(), 13);
    assert!(lines[1].starts_with("1,1,50,0,0,"));
    assert!(lines[4].starts_with("4,1,50,50,0,"));
    assert!(lines[12].starts_with("6,6,50,"));
}

#[test]
fn simulate_is_reproducible_and_reports_both() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let p = dir.path().join(name);
        let out = polyirs(&[
            "simulate", "--field", "gf:257", "--n", "16", "--k", "4", "--l", "4", "--t", "7:10", "--trials", "200", "--model",
            "uref", "--alphas", "primitive", "--decoder", "both", "--seed", "3", "--out", p.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0);
        assert!(String::from_utf8_lossy(&out.stderr).contains("disagreements: 0"));
        fs::read(p).unwrap()
    };
    assert_eq!(run("a.csv"), run("b.csv"));
}

#[test]
fn bound_and_condnum() {
    let dir = tempfile::tempdir().unwrap();
    let b = dir.path().join("bound.csv");
    let out = polyirs(&["bound", "--q", "257", "--n", "16", "--k", "4", "--l", "4", "--t", "7:9", "--out", b.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(&b).unwrap();
    assert!(text.starts_with("t,L,q,n,k,t_max,pf_bound\n7,4,257,16,4,9,"));
    assert_eq!(text.lines().count(), 4);

    let c = dir.path().join("cond.csv");
    let out = polyirs(&[
        "condnum", "--n", "8", "--k", "2", "--l", "1:2", "--t", "1:2", "--trials", "20", "--alphas", "pow:0.9", "--seed", "0",
        "--out", c.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(&c).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[0].starts_with("1,1,20,") && rows[0].ends_with(",1.0"));
    assert!(rows.iter().all(|r| !r.ends_with(',')));
}

#[test]
fn demo_exit_codes() {
    let ok = polyirs(&["demo-matmul", "--field", "gf:257", "--m", "2", "--nblocks", "2", "--workers", "12", "--t", "6", "--seed", "1"]);
    assert_eq!(code(&ok), 0);
    assert!(String::from_utf8_lossy(&ok.stdout).contains("recovered"));
    let real = polyirs(&["demo-matmul", "--field", "real", "--m", "2", "--nblocks", "1", "--workers", "8", "--t", "3", "--seed", "1"]);
    assert_eq!(code(&real), 0);
    // Over GF(7) this seed hits a rank-deficient stacked system at t = t_max.
    let fail = polyirs(&["demo-matmul", "--field", "gf:7", "--m", "1", "--nblocks", "2", "--workers", "6", "--t", "3", "--seed", "10"]);
    assert_eq!(code(&fail), 3);
    assert!(String::from_utf8_lossy(&fail.stdout).contains("decoding failed"));
}

#[test]
fn invalid_parameters_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let out = out.to_str().unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["simulate", "--field", "gf:256", "--n", "8", "--k", "2", "--l", "1", "--t", "1", "--out", out],
        vec!["simulate", "--field", "real", "--n", "8", "--k", "8", "--l", "1", "--t", "1", "--out", out],
        vec!["simulate", "--field", "real", "--n", "8", "--k", "2", "--l", "1", "--t", "5:2", "--out", out],
        vec!["simulate", "--field", "gf:7", "--n", "6", "--k", "2", "--l", "1", "--t", "1", "--model", "gre", "--out", out],
        vec!["simulate", "--field", "real", "--n", "8", "--k", "2", "--l", "1", "--t", "1", "--alphas", "cheb", "--out", out],
        vec!["simulate", "--field", "real", "--n", "8", "--k", "2", "--l", "1", "--t", "1", "--decoder", "bm", "--out", out],
        vec!["bound", "--q", "257", "--n", "16", "--k", "4", "--l", "4", "--t", "7:10", "--out", out],
        vec!["condnum", "--n", "8", "--k", "2", "--l", "0:2", "--t", "1", "--out", out],
        vec!["demo-matmul", "--field", "gf:257", "--m", "2", "--nblocks", "2", "--workers", "12", "--t", "7"],
        vec!["demo-matmul", "--field", "real", "--m", "2", "--nblocks", "2", "--workers", "4", "--t", "0"],
        vec!["simulate", "--field", "real", "--n", "8"],
        vec!["frobnicate"],
    ];
    for args in &cases {
        assert_eq!(code(&polyirs(args)), 2, "{args:?}");
    }
    assert!(!dir.path().join("x.csv").exists());
}
