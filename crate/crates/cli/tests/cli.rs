use htgroth::io;
use htgroth::render::svg_points;
use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ht-groth"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn error_record(o: &Output) -> Value {
    serde_json::from_str(String::from_utf8_lossy(&o.stderr).trim()).expect("JSON error record")
}

const PROFILE: &str = r#"{"entries":[
  {"s":2,"t":2,"cusp":"pi","mult":"m","tail":"1"},
  {"s":1,"t":3,"cusp":"pi","mult":"2*n","tail":"aux","markers":["nondeg-aux"]}
]}"#;

#[test]
fn diagram_n_3_3_has_nine_points() {
    let o = run(&["diagram", "--kind", "n", "--s", "3", "--t", "3", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["points"].as_array().unwrap().len(), 9);
}

#[test]
fn diagram_superposition_and_ascii() {
    let o = run(&["diagram", "--kind", "m", "--s", "4", "--blocks", "1,3,5", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let cell = v.as_array().unwrap().iter().find(|c| c["r"] == 4 && c["i"] == 0).unwrap();
    assert_eq!(cell["contributions"].as_array().unwrap().len(), 3);
    let o = run(&["diagram", "--kind", "n", "--s", "1", "--t", "3", "--format", "ascii"]);
    assert_eq!(stdout(&o).matches('o').count(), 3);
}

#[test]
fn figures_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["figures", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 6);
    let fig5 = std::fs::read_to_string(dir.path().join("fig5_n_3_3.svg")).unwrap();
    assert_eq!(svg_points(&fig5).len(), 9);
}

#[test]
fn verify_all_passes() {
    let o = run(&["verify", "--suite", "all", "--max", "8"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), htgroth::verify::SUITES.len());
}

#[test]
fn parse_and_precondition_errors_have_distinct_codes() {
    let o = run(&["red", "--label", "{pi[0,1/2]}", "--r", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_record(&o)["error"], "parse");
    let o = run(&[
        "torsion", "--sc", r#"{"id":"rho","g":1,"q":2,"l":3,"epsilon":5}"#, "--d", "4", "--u2", "0", "--r2", "1",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(error_record(&o)["error"], "precondition");
    let o = run(&["cohomology", "--profile", "/nonexistent.json", "--cusp", "pi", "--r", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_record(&o)["error"], "io");
}

#[test]
fn torsion_certificate_example() {
    let o = run(&[
        "torsion", "--sc", r#"{"id":"rho","g":1,"q":2,"l":3,"epsilon":2}"#, "--d", "4", "--u2", "0", "--r2", "1",
    ]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["r"], 2);
    assert_eq!(v["verdict"]["verdict"], "torsion");
    assert_eq!(v["verdict"]["i0_lower"], 2);
    assert_eq!(v["verdict"]["lower_bound_only"], true);
}

#[test]
fn outputs_round_trip_and_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let profile = dir.path().join("p.json");
    std::fs::write(&profile, PROFILE).unwrap();
    let args = ["cohomology", "--profile", profile.to_str().unwrap(), "--cusp", "pi", "--r", "2"];
    let a = stdout(&run(&args));
    assert_eq!(a, stdout(&run(&args)));
    let t = io::parse_table(&a).unwrap();
    assert!(!t.is_zero());
    assert_eq!(io::table_to_json(&t).trim(), a.trim());

    let red = stdout(&run(&["red", "--label", "Speh_2(St_2(pi))", "--r", "2"]));
    let parsed = io::parse_red(&red).unwrap();
    assert_eq!(io::red_to_json(&parsed).trim(), red.trim());
    let leib = stdout(&run(&["red", "--label", "Speh_2(St_2(pi))", "--r", "2", "--leibniz"]));
    assert_eq!(io::parse_red(&leib).unwrap(), parsed);

    let g = stdout(&run(&["reduce", "--division", "3"]));
    let path = dir.path().join("g.json");
    std::fs::write(&path, &g).unwrap();
    let again = stdout(&run(&["reduce", "--input", path.to_str().unwrap()]));
    assert_eq!(g, again);
}

#[test]
fn reduce_collapses_lifts() {
    let input = r#"[{"label":"St_2(a)","coeff":1},{"label":"St_2(b)","coeff":"m"}]"#;
    let o = run(&["reduce", "--input", input, "--lift", "a=rho", "--lift", "b=rho", "--epsilon", "2"]);
    assert!(o.status.success());
    let x = io::parse_groth(&stdout(&o)).unwrap();
    assert_eq!(x.len(), 1);
    let o = run(&["reduce", "--label", "St_3(pi)", "--target", "rho"]);
    assert_eq!(io::parse_groth(&stdout(&o)).unwrap().len(), 2);
}

#[test]
fn jacquet_cut_count() {
    let o = run(&["jacquet", "--label", "Speh_2(St_2(pi))", "--left-rank", "2"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
    let o = run(&["jacquet", "--multisegment", r#"[["pi",0,2]]"#, "--left-rank", "5"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn balance_matching_profiles() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, body: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    };
    let pu = write(
        "u.json",
        r#"{"entries":[{"s":1,"t":2,"cusp":"pi_a","mult":"a","tail":"aux","markers":["nondeg-aux"]},
                       {"s":2,"t":1,"cusp":"pi_a","mult":"b","tail":"aux","markers":["nondeg-aux"]}]}"#,
    );
    let pu2 = write(
        "u2.json",
        r#"{"cusps":[{"id":"pi_b","g":2}],
            "entries":[{"s":1,"t":1,"cusp":"pi_b","mult":"2*a + 2*b","tail":"aux","markers":["nondeg-aux"]}]}"#,
    );
    let sc = r#"{"id":"rho","g":1,"q":2,"l":3,"epsilon":2}"#;
    let p = |x: &Path| x.to_str().unwrap().to_string();
    let (pu, pu2) = (p(&pu), p(&pu2));
    let args = [
        "balance", "--sc", sc, "--u", "-1", "--u2", "0", "--pi-u", "pi_a", "--pi-u2", "pi_b", "--profile-u", &pu,
        "--profile-u2", &pu2, "--r", "2", "--r2", "1",
    ];
    let o = run(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["all_satisfied"], true);
    assert_eq!(v["certificates"][0]["strength"], "strong");
    let mut bad = args.to_vec();
    bad[18] = "2";
    assert_eq!(run(&bad).status.code(), Some(3));
}

#[test]
fn thread_cap_is_honoured() {
    let o = Command::new(env!("CARGO_BIN_EXE_ht-groth"))
        .args(["verify", "--suite", "strata,ramified", "--max", "4"])
        .env("HT_GROTH_THREADS", "1")
        .output()
        .unwrap();
    assert!(o.status.success());
}
