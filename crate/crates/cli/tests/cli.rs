use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mixtwist")).args(args).env_remove("MIXTWIST_DEGREE_CAP").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn suzuki_over_f2() {
    let o = run(&["twisted-group", "--type", "B2", "--q", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("schema=1\n"));
    assert!(out.contains("ambient=720"));
    assert_eq!(out.lines().last(), Some("order=20 closed=yes fixed=yes"));
}

#[test]
fn even_degree_has_no_tits_endomorphism() {
    let o = run(&["field", "--tits", "--q", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr(&o).trim(), "error: no Tits endomorphism (even degree)");
    let o = run(&["field", "--tits", "--q", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("theta=x^4 theta_squared_is_frobenius=yes"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["frobnicate"][..],
        &["twisted-group", "--type", "F4", "--q", "2"],
        &["field", "--q", "6"],
        &["catcheck", "--maxsize", "4"],
        &["points", "--q", "2", "--bogus"],
        &["selftest", "--only", "14"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
    let o = Command::new(env!("CARGO_BIN_EXE_mixtwist")).args(["points", "--q", "2"]).env("MIXTWIST_DEGREE_CAP", "zero").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn help_exits_0() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn adjunction_suite() {
    let o = run(&["catcheck", "--maxsize", "2", "--suite", "adjunctions"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let passes = out.lines().filter(|l| l.starts_with("PASS") && l.contains("-|")).count();
    assert!(passes >= 5, "{out}");
    assert!(out.lines().last().unwrap().ends_with("failures=0"));
}

#[test]
fn corrupted_twister_fails_selftest() {
    let o = run(&["selftest", "--only", "4", "--corrupt-twister"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("criterion  4 FAIL"), "{out}");
    assert!(out.contains("g∘g is not the Frobenius"), "{out}");
    let o = run(&["twisted-group", "--type", "B2", "--q", "2", "--corrupt-table"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn selftest_json_has_one_record_per_criterion() {
    let o = run(&["--json", "selftest", "--only", "2,8,10"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["ok"], true);
    let recs = v["records"].as_array().unwrap();
    assert_eq!(recs.iter().map(|r| r["id"].as_u64().unwrap()).collect::<Vec<_>>(), vec![2, 8, 10]);
    assert!(recs.iter().all(|r| r["passed"] == true));
}

#[test]
fn json_summary_uses_booleans() {
    let o = run(&["--json", "twisted-group", "--type", "B2", "--q", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["command"], "twisted-group");
    assert_eq!(v["summary"]["order"], 20);
    assert_eq!(v["summary"]["closed"], true);
    assert_eq!(v["records"][0]["ambient"], 720);
}

#[test]
fn same_seed_same_bytes() {
    for args in [
        &["--seed", "5", "mixed-group", "--type", "B2", "--words", "4"][..],
        &["--seed", "5", "exotic", "--samples", "4"],
        &["--seed", "5", "torus", "--inseparable", "--samples", "10"],
        &["--seed", "5", "--json", "etale2", "--n", "2", "--witness", "5"],
    ] {
        let (a, b) = (run(args), run(args));
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn point_counts() {
    let o = run(&["points", "--q", "8"]);
    assert_eq!(stdout(&o).lines().last(), Some("plane=twisted q=8 points=8 involution_fixed_points=8 agree=yes"));
    let o = run(&["points", "--q", "4", "--mixed"]);
    assert!(stdout(&o).ends_with("plane=mixed q=4 points=16 characterizations_agree=yes\n"));
    let o = run(&["points", "--algebra", "alg base=F8 gens=x,y rels=", "--twister", "y,x^2"]);
    assert!(stdout(&o).ends_with("points=8 involution_fixed_points=8 agree=yes\n"));
}

#[test]
fn torus_and_etale() {
    let o = run(&["torus", "--q", "4"]);
    assert_eq!(stdout(&o).lines().last(), Some("q=4 delta=u members=15 closed=yes composite_is_square=yes"));
    let o = run(&["etale2", "--n", "4"]);
    assert!(stdout(&o).contains("classes=2"));
    assert!(stdout(&o).contains("maps_inverse=yes"));
}

#[test]
fn quadric_reports_jacobian() {
    let o = run(&["quadric", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["quadric", "--n", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("jacobian row 0: (y2, y1)"), "{out}");
    assert!(out.contains("partial_dims=(1,2)"));
}
