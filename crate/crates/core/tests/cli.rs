use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const FLAT2: &str = r#"{"name":"flat2","elements":["bot","atom:a"],"bottom":"bot","order":[["bot","atom:a"]],"closure":"auto"}"#;
const FLAT3: &str = r#"{"name":"flat3","elements":["bot","atom:t","atom:f"],"bottom":"bot","order":[["bot","atom:t"],["bot","atom:f"]]}"#;
const BUTTERFLY: &str = r#"{
  "name": "butterfly",
  "elements": ["bot", "atom:a", "atom:b", "atom:c", "atom:d"],
  "bottom": "bot",
  "order": [["bot","atom:a"],["bot","atom:b"],["atom:a","atom:c"],["atom:a","atom:d"],["atom:b","atom:c"],["atom:b","atom:d"]]
}"#;

struct Fixture {
    dir: tempfile::TempDir,
}

impl Fixture {
    fn new() -> Self {
        let f = Fixture { dir: tempfile::tempdir().unwrap() };
        f.write("flat2.json", FLAT2);
        f.write("flat3.json", FLAT3);
        f.write("butterfly.json", BUTTERFLY);
        f
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        fs::write(&p, text).unwrap();
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn run(&self, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_domkit")).current_dir(self.dir.path()).args(args).output().unwrap()
    }
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

#[test]
fn check_and_props() {
    let f = Fixture::new();
    assert_eq!(code(&f.run(&["check", "flat3.json"])), 0);

    let o = f.run(&["props", "butterfly.json", "--predicate", "finitary-basis"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["status"], "fails");
    assert_eq!(v["witness"]["value"], serde_json::json!(["atom:a", "atom:b"]));

    let o = f.run(&["props", "flat3.json", "--predicate", "directed", "--subset", "atom:t", "--subset", "atom:f"]);
    assert_eq!(code(&o), 1);
    let o = f.run(&["props", "flat3.json", "--predicate", "ideal", "--subset", "bot", "--subset", "atom:t"]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&f.run(&["props", "flat3.json", "--predicate", "cpo"])), 0);
    assert_eq!(code(&f.run(&["props", "flat3.json", "--predicate", "domain"])), 0);
}

#[test]
fn usage_and_input_errors_exit_2() {
    let f = Fixture::new();
    assert_eq!(code(&f.run(&["check", "missing.json"])), 2);
    assert_eq!(code(&f.run(&["frobnicate"])), 2);
    assert_eq!(code(&f.run(&["props", "flat3.json"])), 2);
    f.write("bad.json", "{\"elements\": [\"bot\",\n \"pair(atom:a)\"]}");
    let o = f.run(&["check", "bad.json"]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2") && err.contains("expects 2"), "{err}");
    f.write("cycle.json", r#"{"elements":["atom:a","atom:b"],"order":[["atom:a","atom:b"],["atom:b","atom:a"]]}"#);
    assert_eq!(code(&f.run(&["check", "cycle.json"])), 2);
}

#[test]
fn caps_exit_3() {
    let f = Fixture::new();
    assert_eq!(code(&f.run(&["star", "flat3.json", "--max-len", "12", "--max-card", "100"])), 3);
    assert_eq!(code(&f.run(&["--relation-cap", "4", "am", "enumerate", "flat3.json", "flat3.json"])), 3);
    let o = f.run(&["coop", "--base", "flat2.json", "--labels", "l", "--iters", "5", "--max-card", "100"]);
    assert_eq!(code(&o), 3);
    assert_eq!(json(&o)["stop_reason"]["reason"], "card_cap");
}

#[test]
fn coop_reports_and_emits_stages() {
    let f = Fixture::new();
    let out = f.path("stages");
    let o = f.run(&[
        "coop", "--base", "flat2.json", "--labels", "l", "--max-seq-len", "1", "--iters", "2", "--emit-stages",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["stage_sizes"], serde_json::json!([1, 2, 5]));
    assert_eq!(v["stop_reason"]["reason"], "iter_cap");
    assert_eq!(v["ascending"]["status"], "holds");
    assert_eq!(v["approximation"], "depth-2 approximation");
    let o2 = domkit::io::parse_basis(&fs::read_to_string(out.join("O2.json")).unwrap()).unwrap();
    assert_eq!(o2.len(), 5);
}

#[test]
fn constructors_and_mappings() {
    let f = Fixture::new();
    let size = |o: &Output| json(o)["elements"].as_array().unwrap().len();
    assert_eq!(size(&f.run(&["sum", "flat3.json", "flat2.json"])), 4);
    assert_eq!(size(&f.run(&["prod", "flat3.json", "flat3.json"])), 5);
    assert_eq!(size(&f.run(&["fun", "flat2.json", "flat2.json"])), 3);
    assert_eq!(size(&f.run(&["fun", "--strict", "flat2.json", "flat2.json"])), 2);
    assert_eq!(size(&f.run(&["star", "flat2.json", "--max-len", "2"])), 4);
    assert_eq!(size(&f.run(&["rec", "flat3.json", "--labels", "x,y"])), 9);
    assert_eq!(size(&f.run(&["complete", "flat3.json"])), 3);

    let o = f.run(&["am", "enumerate", "flat2.json", "flat2.json"]);
    assert_eq!(json(&o)["count"], 3);
    let o = f.run(&["am", "check", "flat2.json", "flat2.json", "--map", "am{(bot,bot),(atom:a,atom:a)}"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["downward_closure"]["status"], "fails");
    let o = f.run(&["am", "close", "flat3.json", "flat3.json", "--map", "am{(atom:t,atom:f)}"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["mapping"], "am{(atom:t,atom:f)}");

    let sum = f.run(&["sum", "flat3.json", "flat2.json"]);
    let sum_path = f.write("sum.json", &String::from_utf8(sum.stdout).unwrap());
    let o = f.run(&["iso", "flat3.json", sum_path.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert_eq!(code(&f.run(&["iso", "flat3.json", "flat3.json"])), 0);
    assert_eq!(code(&f.run(&["subdomain", "flat2.json", "flat3.json"])), 1);
}

#[test]
fn export_is_stable() {
    let f = Fixture::new();
    let a = f.run(&["export", "butterfly.json"]);
    let b = f.run(&["export", "butterfly.json"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(text.matches("->").count(), 6);
    let full = f.run(&["export", "butterfly.json", "--full-order"]);
    assert_eq!(String::from_utf8(full.stdout).unwrap().matches("->").count(), 8);
}
