use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn koenigs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_koenigs")).args(args).output().expect("binary runs")
}

fn koenigs_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_koenigs")).args(args).env(key, value).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines().skip(1).map(|l| l.split(',').map(str::to_owned).collect()).collect()
}

const PARABOLA: &str = r#"{"variant":"HalfParabola","params":{"alpha":2.0,"m":1.0}}"#;
const MIRRORED: &str = r#"{"variant":"HalfParabola","params":{"alpha":2.0,"m":1.0},"mirror":true}"#;
const STRIP: &str = r#"{"variant":"VerticalStrip","params":{"a":0.0,"b":3.0}}"#;
const HALF_PLANE: &str = r#"{"variant":"HalfPlaneRight"}"#;

#[test]
fn speeds_parabolic_table() {
    let o = koenigs(&["speeds", "--family", "parabolic-auto", "--t-grid", "log:1:1e6:60"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next().unwrap(), "family,alpha,mu,t,v_total,v_ortho,v_tang,main_gap");
    let rows = rows(&text);
    assert_eq!(rows.len(), 60);
    for r in &rows {
        assert_eq!(r[0], "parabolic-auto");
        let (t, vt): (f64, f64) = (r[3].parse().unwrap(), r[6].parse().unwrap());
        let gap = vt - 0.5 * t.ln();
        assert!((0.0..=0.45).contains(&gap), "{r:?}");
        assert_eq!(r[7].parse::<f64>().unwrap(), gap);
    }
}

#[test]
fn speeds_omega_gap_decreases() {
    let o = koenigs(&["speeds", "--family", "omega", "--alpha", "2", "--mu", "1", "--t-grid", "log:1e3:1e8:20"]);
    assert!(o.status.success());
    let gaps: Vec<f64> = rows(&stdout(&o)).iter().map(|r| r[7].parse().unwrap()).collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]));
    assert!(rows(&stdout(&o))[0][1].starts_with("2.0"));
}

#[test]
fn config_errors_exit_two() {
    for args in [
        vec!["speeds", "--family", "parabolic-auto", "--t-grid", "log:1:1e6:0"],
        vec!["speeds", "--family", "omega"],
        vec!["speeds", "--family", "nope"],
        vec!["verify", "nope"],
        vec!["verify", "hm"],
        vec!["slope", "--domain", "{\"variant\":\"Nope\"}"],
        vec!["hm", "--domain", HALF_PLANE, "--point", "1,1", "--seed", "1", "--eps", "0.5"],
    ] {
        assert_eq!(koenigs(&args).status.code(), Some(2), "{args:?}");
    }
    let o = koenigs_env(&["speeds", "--family", "parabolic-auto"], "KOENIGS_THREADS", "zero");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn numerical_failure_exits_three_without_partial_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("trace.csv");
    let o = koenigs(&["slope", "--domain", STRIP, "--t-max", "10", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!out.exists());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn slope_verdicts() {
    let first = |d: &str| stdout(&koenigs(&["slope", "--domain", d])).lines().next().unwrap().to_owned();
    assert_eq!(first(STRIP), "non-tangential");
    assert_eq!(first(PARABOLA), "tangential, slope −π/2");
    assert_eq!(first(MIRRORED), "tangential, slope +π/2");
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("d.json");
    std::fs::write(&file, PARABOLA).unwrap();
    let out = dir.path().join("trace.csv");
    let o = koenigs(&["slope", "--domain-file", file.to_str().unwrap(), "--base", "1,2", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let trace = std::fs::read_to_string(&out).unwrap();
    assert_eq!(trace.lines().next().unwrap(), "t,delta_plus,delta_minus,ratio");
    assert_eq!(trace.lines().count(), 51);
}

#[test]
fn verify_reports() {
    let o = koenigs(&["verify", "pythagoras"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["tool"], "koenigs");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["config"]["suite"], "pythagoras");
    assert_eq!(v["pass"], true);

    let o = koenigs(&["verify", "main-bound"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let checks = v["checks"].as_array().unwrap();
    for c in checks.iter().filter(|c| c["name"].as_str().unwrap().ends_with("sup gap")) {
        assert_eq!(c["pass"], true, "{c}");
    }
    assert_eq!(o.status.success(), v["pass"] == true);
}

#[test]
fn verify_hm_with_seed() {
    let o = koenigs(&["verify", "hm", "--seed", "7", "--walks", "20000"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let first = &v["checks"][0];
    assert!(first["name"].as_str().unwrap().contains("ω(1+i)"));
    assert_eq!(first["pass"], true, "{first}");
    assert_eq!(o.status.success(), v["pass"] == true);
}

fn run_to(path: &Path, args: &[&str], threads: &str) -> Vec<u8> {
    let mut all: Vec<&str> = args.to_vec();
    all.extend(["--out", path.to_str().unwrap()]);
    let o = koenigs_env(&all, "KOENIGS_THREADS", threads);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    std::fs::read(path).unwrap()
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("x");
    let hm = ["hm", "--domain", PARABOLA, "--point", "1,20", "--seed", "3", "--walks", "4000"];
    let a = run_to(&p, &hm, "1");
    let b = run_to(&p, &hm, "2");
    assert_eq!(a, b);
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["estimate"]["n_walks"], 4000);
    let sp = ["speeds", "--family", "sector", "--theta", "1.2", "--t-grid", "log:1:1e8:40"];
    assert_eq!(run_to(&p, &sp, "1"), run_to(&p, &sp, "2"));
}
