use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn ctr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ctr")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

struct Files {
    dir: TempDir,
}

impl Files {
    fn new() -> Self {
        let f = Files {
            dir: TempDir::new().unwrap(),
        };
        f.put("gbc.json", r#"{"type":"gbc","h1":1,"h2":1,"P":3}"#);
        f.put("asym.json", r#"{"type":"gbc","h1":1,"h2":0.7071067811865476,"P":6}"#);
        f.put("rev.json", r#"{"type":"gbc","h1":0.7071067811865476,"h2":1,"P":6}"#);
        f.put("strong.json", r#"{"type":"gic","a":1,"b":1,"P1":3,"P2":3}"#);
        f.put("weak.json", r#"{"type":"gic","a":0.8,"b":0.6,"P1":10,"P2":15}"#);
        f.put("vs.json", r#"{"type":"gic","a":2,"b":2,"P1":1,"P2":1}"#);
        f
    }

    fn put(&self, name: &str, text: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    fn path(&self, name: &str) -> String {
        self.dir.path().join(name).to_str().unwrap().to_string()
    }
}

fn close(v: &Value, want: f64, tol: f64) -> bool {
    (v.as_f64().unwrap() - want).abs() <= tol
}

fn pair(v: &Value) -> (f64, f64) {
    (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

#[test]
fn classify() {
    let f = Files::new();
    let o = ctr(&["classify", &f.path("weak.json")]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "weak\n"));
    let o = ctr(&["classify", &f.path("vs.json")]);
    assert_eq!(stdout(&o), "very-strong\n");
    let o = ctr(&["classify", &f.path("gbc.json")]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("classify requires gic"));
    f.put("bad.json", r#"{"type":"gic","a":1"#);
    assert_eq!(code(&ctr(&["classify", &f.path("bad.json")])), 2);
    assert_eq!(code(&ctr(&["classify", &f.path("missing.json")])), 2);
}

#[test]
fn broadcast_region_json() {
    let f = Files::new();
    let o = ctr(&["ctr", &f.path("gbc.json"), "--load", "1,1"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["tag"], "exact");
    let sub1 = v["sub1"]["vertices"].as_array().unwrap();
    assert_eq!(sub1.len(), 2);
    assert_eq!(pair(&sub1[0]), (1.0, 2.0));
    assert_eq!(pair(&sub1[1]), (2.0, 2.0));
    assert_eq!(v["sub1"]["rays"][0]["dir"], serde_json::json!([0.0, 1.0]));
}

#[test]
fn strong_region_vertices() {
    let f = Files::new();
    let v = json(&ctr(&["ctr", &f.path("strong.json"), "--load", "1,1"]));
    assert_eq!(v["regime"], "strong");
    let pts: Vec<(f64, f64)> = v["boundary"]["points"].as_array().unwrap().iter().map(pair).collect();
    let want = [(1.0, 1.596323), (1.424829, 1.424829), (1.596323, 1.0)];
    assert_eq!(pts.len(), 3);
    for (p, w) in pts.iter().zip(want) {
        assert!((p.0 - w.0).abs() < 1e-6 && (p.1 - w.1).abs() < 1e-6, "{p:?}");
    }
}

#[test]
fn example_boundary_csv_and_plot() {
    let f = Files::new();
    let out = f.path("b.csv");
    let svg = f.path("b.svg");
    let o = ctr(&["ctr", &f.path("weak.json"), "--load", "1,1", "--format", "csv", "--out", &out, "--plot", &svg]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "d1,d2");
    assert_eq!(lines.len(), 6, "{text}");
    assert!(!text.contains('\r'));
    let plot = std::fs::read_to_string(&svg).unwrap();
    assert!(plot.starts_with("<svg") && plot.contains("<polyline"));
    assert_eq!(plot.matches("<line").count(), 4);
    // Nothing left behind by the atomic writes.
    let names: Vec<_> = std::fs::read_dir(f.dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    assert!(names.iter().all(|n| !n.ends_with(".tmp")), "{names:?}");
}

#[test]
fn output_is_deterministic() {
    let f = Files::new();
    let (a, b) = (f.path("a.json"), f.path("b.json"));
    for p in [&a, &b] {
        assert_eq!(code(&ctr(&["ctr", &f.path("asym.json"), "--load", "1,2", "--samples", "50", "--out", p])), 0);
    }
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(x, y);
    // Every float survives a round trip through twelve significant digits.
    let v: Value = serde_json::from_str(&String::from_utf8(x).unwrap()).unwrap();
    let mut stack = vec![&v];
    while let Some(v) = stack.pop() {
        match v {
            Value::Number(n) => {
                let x = n.as_f64().unwrap();
                assert_eq!(format!("{x:.11e}").parse::<f64>().unwrap(), x);
            }
            Value::Array(a) => stack.extend(a),
            Value::Object(m) => stack.extend(m.values()),
            _ => {}
        }
    }
}

#[test]
fn minimize() {
    let f = Files::new();
    let v = json(&ctr(&["minimize", &f.path("gbc.json"), "--load", "1,1", "--weight", "0.5"]));
    assert!(close(&v["objective"], 1.5, 1e-9));
    let v = json(&ctr(&["minimize", &f.path("strong.json"), "--load", "1,1", "--weight", "0.5"]));
    assert!(close(&v["objective"], 1.298162, 1e-6));
    assert_eq!(v["side"], 1);
    assert_eq!(v["source"], "A3");
    let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    assert_eq!(
        keys,
        ["minimizer_rate", "minimizer_ct", "objective", "side", "weight_interval", "source"]
    );
    let o = ctr(&["minimize", &f.path("strong.json"), "--load", "1,1", "--weight", "1.2"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("weight out of [0,1]"));
    let v = json(&ctr(&["minimize", &f.path("weak.json"), "--load", "1,1", "--weight", "0.1"]));
    assert_eq!(v["side"], 2);
}

#[test]
fn member() {
    let f = Files::new();
    let s = f.path("strong.json");
    let o = ctr(&["member", &s, "--load", "1,1", "--point", "1.0,1.596323"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "achievable\n"));
    let o = ctr(&["member", &s, "--load", "1,1", "--point", "1.3,1.3"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (1, "not-achievable\n"));
    assert_eq!(code(&ctr(&["member", &s, "--load", "1,1", "--point", "-1,2"])), 2);
    assert_eq!(code(&ctr(&["member", &s, "--load", "1,1", "--point", "0,2"])), 2);
    assert_eq!(code(&ctr(&["member", &s, "--load", "0,1", "--point", "1,2"])), 2);
    let g = f.path("gbc.json");
    assert_eq!(code(&ctr(&["member", &g, "--load", "1,1", "--point", "1,2"])), 0);
    assert_eq!(code(&ctr(&["member", &g, "--load", "1,1", "--point", "1.5,1.5"])), 1);
}

#[test]
fn verify() {
    let f = Files::new();
    let o = ctr(&["verify", &f.path("gbc.json"), "--load", "1,1", "--grid", "100"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["pass"], true);
    let o = ctr(&["verify", &f.path("vs.json"), "--load", "1,2", "--grid", "100"]);
    assert_eq!(code(&o), 0);
    let out = f.path("report.json");
    let o = ctr(&["verify", &f.path("strong.json"), "--load", "1,1", "--grid", "500", "--closed-form", "--out", &out]);
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["pass"], false);
    assert!(v["oracle_only_outside_band"].as_u64().unwrap() > 0);
    assert_eq!(v["analytic_only_outside_band"], 0);
    assert_eq!(code(&ctr(&["verify", &f.path("vs.json"), "--load", "1,1", "--closed-form"])), 3);
    assert_eq!(code(&ctr(&["verify", &f.path("gbc.json"), "--load", "1,1", "--grid", "5"])), 2);
}

#[test]
fn convexity() {
    let f = Files::new();
    let v = json(&ctr(&["convexity", &f.path("asym.json"), "--load", "1,1"]));
    assert!(close(&v["w1c"], 0.0579305882, 1e-9));
    assert!(close(&v["w2c"], 0.9302348843, 1e-9));
    assert_eq!(v["nonconvex"], true);
    let v = json(&ctr(&["convexity", &f.path("gbc.json"), "--load", "1,1"]));
    assert!(close(&v["w1c"], 0.0, 1e-12) && close(&v["w2c"], 1.0, 1e-12));
    assert_eq!(v["s2"], Value::Null);
    assert_eq!(v["s2_unbounded"], true);
    assert_eq!(code(&ctr(&["convexity", &f.path("strong.json"), "--load", "1,1"])), 3);
}

#[test]
fn region_mismatch_and_swap() {
    let f = Files::new();
    let poly = f.put("big.json", r#"{"points":[[0,5],[5,5],[5,0]]}"#);
    let p = poly.to_str().unwrap();
    assert_eq!(code(&ctr(&["ctr", &f.path("strong.json"), "--load", "1,1", "--region", p])), 3);
    assert_eq!(code(&ctr(&["ctr", &f.path("gbc.json"), "--load", "1,1", "--region", p])), 3);
    let bad = f.put("reflex.json", r#"{"points":[[0,1],[0.5,1],[0.6,0.2],[0.9,0.1],[0.9,0]]}"#);
    assert_eq!(code(&ctr(&["ctr", &f.path("weak.json"), "--load", "1,1", "--region", bad.to_str().unwrap()])), 2);

    assert_eq!(code(&ctr(&["convexity", &f.path("rev.json"), "--load", "1,1"])), 2);
    let a = json(&ctr(&["--swap-users", "convexity", &f.path("rev.json"), "--load", "2,1"]));
    let b = json(&ctr(&["convexity", &f.path("asym.json"), "--load", "1,2"]));
    assert_eq!(a, b);
}
