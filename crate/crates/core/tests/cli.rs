use std::io::Write;
use std::path::Path;
use std::process::Command;

use tempfile::{NamedTempFile, TempDir};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn sweedler(workspace: &Path, args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_sweedler"))
        .arg("--input")
        .arg(workspace)
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn workspace(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

const CHAIN: &str = "quantale bool\nset X { lo hi }\ncategory A on X { hi lo = 1 }\ncategory B on X from A\n";

/// Table for 0 < a < 1 with a⊗a = 1, which breaks join preservation.
const BROKEN: &str = "
quantale table {
  elements 0 a 1;
  bottom 0;
  unit 1;
  join 0 0 = 0; join 0 a = a; join 0 1 = 1;
  join a a = a; join a 1 = 1; join 1 1 = 1;
  tensor 0 0 = 0; tensor 0 a = 0; tensor 0 1 = 0;
  tensor a a = 1; tensor a 1 = a; tensor 1 1 = 1;
}
";

#[test]
fn measure_json_marks_three_monotone_maps() {
    let ws = workspace(CHAIN);
    let r = sweedler(ws.path(), &["measure", "A", "B", "--json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["kind"], "cocategory");
    let tops = v["entries"].as_array().unwrap().iter().filter(|e| e["q"] == "1").count();
    assert_eq!(tops, 3);
}

#[test]
fn measure_with_adjunction_check() {
    let ws = workspace(CHAIN);
    let r = sweedler(ws.path(), &["measure", "A", "B", "--bound", "2"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("0 mismatches"), "{}", r.stdout);
}

#[test]
fn closed_suite_on_godel() {
    let ws = workspace("quantale godel 3\n");
    let r = sweedler(ws.path(), &["verify", "closed", "--bound", "2"]);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
    assert!(r.stdout.contains("PASS"));
}

#[test]
fn mismatched_composition_exits_2() {
    let ws = workspace("quantale bool\nset X { a }\nset Y { a b }\nmatrix T : X -> Y { }\nmatrix S : X -> Y { }\n");
    let r = sweedler(ws.path(), &["compose", "T", "S"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("compos"), "{}", r.stderr);
}

#[test]
fn load_errors_exit_2_with_position() {
    let ws = workspace("quantale lukasiewicz 3\nset Z { z1 }\ncocategory C on Z { z1 = 0.5 }\n");
    let r = sweedler(ws.path(), &["check", "C"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains(":3:") && r.stderr.contains("idempotence"), "{}", r.stderr);

    let ws = workspace("quantale bool\nmatrix M : X -> X { }\n");
    let r = sweedler(ws.path(), &["check", "M"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("`X`"), "{}", r.stderr);
}

#[test]
fn emitted_output_reloads() {
    let ws = workspace("quantale godel 3\nset X { a b c }\nmatrix G : X -> X { b a = 1/2; c b = 1 }\n");
    let r = sweedler(ws.path(), &["star", "G"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let again = workspace(&r.stdout);
    let c = sweedler(again.path(), &["check", "star_G"]);
    assert_eq!(c.code, 0, "{}\n{}", r.stdout, c.stderr);
    let j1 = sweedler(ws.path(), &["star", "G", "--json"]);
    let j2 = sweedler(again.path(), &["compose", "star_G", "star_G", "--json"]);
    let v1: serde_json::Value = serde_json::from_str(&j1.stdout).unwrap();
    let v2: serde_json::Value = serde_json::from_str(&j2.stdout).unwrap();
    assert_eq!(v1["entries"], v2["entries"]);
}

#[test]
fn broken_quantale_fails_and_replays() {
    let ws = workspace(BROKEN);
    let r = sweedler(ws.path(), &["check", "quantale"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("join distributivity"), "{}", r.stdout);

    let r = sweedler(ws.path(), &["verify", "double_cat", "--seed", "1", "--json"]);
    assert_eq!(r.code, 1, "{}", r.stderr);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    let case = v["failures"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["law"] == "associativity")
        .expect("associativity counterexample")
        .clone();
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("case.json");
    std::fs::write(&path, case.to_string()).unwrap();
    let r = sweedler(ws.path(), &["replay", path.to_str().unwrap()]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("fails"));

    let chain = workspace("quantale bool\n");
    let r = sweedler(chain.path(), &["replay", path.to_str().unwrap()]);
    assert_eq!(r.code, 2, "labels of the broken table are not Boolean");
}

#[test]
fn operators_refuse_a_broken_quantale() {
    let ws = workspace(&format!("{BROKEN}set X {{ p }}\ncategory A on X\n"));
    let r = sweedler(ws.path(), &["measure", "A", "A"]);
    assert_eq!(r.code, 2);
}

#[test]
fn restrict_and_corestrict_default_structures() {
    let text = "
quantale bool
set X { lo hi }
set W { p q }
set U { u }
category B on X { hi lo = 1 }
module N : U -> B { hi u = 1 }
cocategory D on X { lo = 1; hi = 1 }
comodule K : U -> D { lo u = 1 }
function f : W -> X { p = lo; q = hi }
function g : X -> W { lo = p; hi = p }
";
    let ws = workspace(text);
    let r = sweedler(ws.path(), &["restrict", "f", "N"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("module N_along_f"), "{}", r.stdout);
    let r = sweedler(ws.path(), &["corestrict", "g", "K", "--json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["kind"], "comodule");
}

#[test]
fn tensor_and_hom_dispatch_on_kind() {
    let text = "
quantale godel 3
set Z { z }
set V { v }
cocategory C on Z { z = 1 }
comodule K : V -> C { z v = 1/2 }
category A on Z
module M : V -> A { z v = 1 }
";
    let ws = workspace(text);
    for (args, kind) in [
        (vec!["tensor", "C", "C"], "cocategory"),
        (vec!["hom", "C", "C"], "cocategory"),
        (vec!["hom", "K", "K"], "comodule"),
        (vec!["convolve", "C", "A"], "category"),
        (vec!["convolve", "K", "M"], "module"),
        (vec!["tensorcat", "C", "A"], "category"),
        (vec!["tensormod", "K", "M"], "module"),
        (vec!["comeasure", "M", "M"], "comodule"),
    ] {
        let mut a = args.clone();
        a.push("--json");
        let r = sweedler(ws.path(), &a);
        assert_eq!(r.code, 0, "{args:?}: {}", r.stderr);
        let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
        assert_eq!(v["kind"], kind, "{args:?}");
    }
}

#[test]
fn unknown_suite_exits_2() {
    let ws = workspace("quantale bool\n");
    assert_eq!(sweedler(ws.path(), &["verify", "nonsense"]).code, 2);
}
