use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn qphf(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_qphf"))
        .args(args)
        .output()
        .unwrap();
    let mut s = String::from_utf8(out.stdout).unwrap();
    s.push_str(&String::from_utf8(out.stderr).unwrap());
    (s, out.status.code().unwrap())
}

fn qphf_json(args: &[&str]) -> (Value, i32) {
    let mut a = args.to_vec();
    a.push("--json");
    let (s, c) = qphf(&a);
    (
        serde_json::from_str(&s).unwrap_or_else(|e| panic!("{e}: {s}")),
        c,
    )
}

fn tmp(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qphf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn models_listing() {
    let (s, c) = qphf(&["models"]);
    assert_eq!(c, 0);
    assert!(s.contains("simple: π/θ=2, group order 4, ω available"));
    assert!(s.contains("tandem: π/θ=3, group order 6, ω available"));
    assert!(s.contains("diagonal: π/θ=2, group order 4, ω REQUIRED"));
    assert!(s.starts_with("# qphf "));
}

#[test]
fn compute_simple_third_level() {
    let (s, c) = qphf(&["compute", "--model", "simple", "-n", "3", "--latex"]);
    assert_eq!(c, 0);
    assert!(
        s.contains("H_{3}^{1} = -\\frac{128 y^{2}}{(x-1)^{2} (y-1)^{6}}"),
        "{s}"
    );
}

#[test]
fn compute_json_embeds_manifest_and_round_trips() {
    let (v, c) = qphf_json(&["compute", "--model", "tandem", "-n", "2", "--decouplers"]);
    assert_eq!(c, 0);
    assert_eq!(v["manifest"]["command"], "compute");
    assert_eq!(v["manifest"]["params"]["n"], "2");
    assert!(v["manifest"]["version"].is_string());
    let h2 = quadrant_phf::phfcli::serial::ratfun_from_json(&v["functions"][1]["gf"]).unwrap();
    let fam = quadrant_phf::discretephf::Family::new(
        quadrant_phf::walkmodel::catalog::walk("tandem").unwrap(),
    );
    assert_eq!(h2, fam.get(2, 1).unwrap().gf);
    assert_eq!(
        v["functions"][1]["pole_orders"],
        serde_json::json!(["5", "5"])
    );
    assert_eq!(v["decouplers"].as_array().unwrap().len(), 1);
}

#[test]
fn exit_codes() {
    assert_eq!(qphf(&["compute", "--model", "diagonal"]).1, 2);
    assert_eq!(qphf(&["compute", "--model", "nosuch"]).1, 2);
    let drift = data("drift.json");
    assert_eq!(
        qphf(&["compute", "--model-file", drift.to_str().unwrap()]).1,
        2
    );
    let broken = data("broken_model.json");
    let (s, c) = qphf(&["compute", "--model-file", broken.to_str().unwrap()]);
    assert_eq!(c, 3);
    assert!(s.contains("line 5 column 5"), "{s}");
    assert_eq!(qphf(&["compute", "--bogus-flag"]).1, 3);
}

#[test]
fn user_conformal_model_file() {
    let f = data("diagonal.json");
    let (s, c) = qphf(&[
        "verify",
        "--model-file",
        f.to_str().unwrap(),
        "-n",
        "2",
        "-k",
        "2",
    ]);
    assert_eq!(c, 0, "{s}");
    assert_eq!(s.matches("PASS").count(), 4);
}

#[test]
fn verify_tandem_and_fault_injection() {
    let (s, c) = qphf(&[
        "verify", "--model", "tandem", "-n", "3", "--fe", "--grid", "30", "30",
    ]);
    assert_eq!(c, 0, "{s}");
    let (s, c) = qphf(&[
        "verify", "--model", "simple", "-n", "2", "-k", "2", "--orbit",
    ]);
    assert_eq!(c, 0, "{s}");
    let (s, c) = qphf(&[
        "verify",
        "--model",
        "simple",
        "-n",
        "2",
        "--grid",
        "12",
        "12",
        "--inject-fault",
        "3,4",
    ]);
    assert_eq!(c, 1);
    assert!(
        s.contains("fault injected at (3,4)") && s.contains("nonzero at cell"),
        "{s}"
    );
}

#[test]
fn continuous_outputs() {
    let (s, c) = qphf(&["continuous", "--model", "tandem", "-n", "2"]);
    assert_eq!(c, 0);
    assert!(
        s.contains("L(h_2^1) = (9*y^3 + 9*x*y^2 + 9*x^2*y + 9*x^3)/(x^5*y^5)"),
        "{s}"
    );
    let (s, _) = qphf(&["continuous", "--model", "tandem", "--inverse"]);
    assert!(s.contains("h_1^1(u,v) = 3/2*u*v^2 + 3/2*u^2*v"), "{s}");
    let (v, c) = qphf_json(&["continuous", "--model", "simple", "--converge"]);
    assert_eq!(c, 0);
    assert_eq!(v["functions"][0]["limit"]["alpha"], "-2");
    assert_eq!(v["functions"][0]["limit"]["exponent"], "4");
}

#[test]
fn counting() {
    let (v, c) = qphf_json(&[
        "count", "--model", "simple", "-N", "4", "--target", "0", "0",
    ]);
    assert_eq!(c, 0);
    let rows = v["counts"].as_array().unwrap();
    assert!(rows.contains(&serde_json::json!(["4", "0", "0", "10"])));
    let (s, _) = qphf(&[
        "count", "--model", "tandem", "-N", "3", "--target", "0", "0",
    ]);
    assert!(s.contains("q(0,(0,0);3) = 1"));
    let (s, _) = qphf(&["count", "--model", "simple", "-N", "4", "--csv"]);
    assert!(s.lines().any(|l| l == "4,0,0,10"), "{s}");
    let (v, _) = qphf_json(&[
        "count", "--model", "simple", "-N", "400", "--fit", "--target", "1", "1",
    ]);
    let est: f64 = v["asymptotics"][0]["estimate"]
        .as_str()
        .unwrap()
        .parse()
        .unwrap();
    assert!((est - 4.0).abs() < 1e-3, "{est}");
}

#[test]
fn decompose_files() {
    let one = tmp(
        "one.json",
        r#"{"num": [[0,0,"1"]], "den": [[0,0,"1"],[1,0,"-2"],[2,0,"1"],[0,1,"-2"],[1,1,"4"],[2,1,"-2"],[0,2,"1"],[1,2,"-2"],[2,2,"1"]]}"#,
    );
    let (v, c) = qphf_json(&[
        "decompose",
        "--model",
        "simple",
        "--input",
        one.to_str().unwrap(),
    ]);
    assert_eq!(c, 0);
    assert_eq!(
        v["decomposition"]["coefficients"],
        serde_json::json!([["1", "1", "-1/8"]])
    );
    assert_eq!(v["decomposition"]["exact"], true);
    let bad = tmp(
        "bad.json",
        r#"{"num": [[1,0,"1"]], "den": [[0,0,"1"],[1,1,"-1"]]}"#,
    );
    assert_eq!(
        qphf(&[
            "decompose",
            "--model",
            "simple",
            "--input",
            bad.to_str().unwrap()
        ])
        .1,
        1
    );

    // 5 H_2^1 + H_1^3 for the tandem walk
    let fam = quadrant_phf::discretephf::Family::new(
        quadrant_phf::walkmodel::catalog::walk("tandem").unwrap(),
    );
    let five = quadrant_phf::exactalg::q(5);
    let f = &fam.get(2, 1).unwrap().gf.scale(&five) + &fam.get(1, 3).unwrap().gf;
    let mix = tmp(
        "mix.json",
        &quadrant_phf::phfcli::serial::ratfun_json(&f).to_string(),
    );
    let (v, c) = qphf_json(&[
        "decompose",
        "--model",
        "tandem",
        "--input",
        mix.to_str().unwrap(),
    ]);
    assert_eq!(c, 0);
    assert_eq!(v["polyharmonic_order"], "2");
    assert_eq!(
        v["decomposition"]["coefficients"],
        serde_json::json!([["1", "3", "1"], ["2", "1", "5"]])
    );
}

#[test]
fn out_flag_writes_file() {
    let p = std::env::temp_dir().join(format!("qphf-out-{}.json", std::process::id()));
    let (s, c) = qphf(&[
        "compute",
        "--model",
        "simple",
        "--json",
        "--out",
        p.to_str().unwrap(),
    ]);
    assert_eq!(c, 0);
    assert!(s.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(v["manifest"]["exit_status"], 0);
}
