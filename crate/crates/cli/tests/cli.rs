use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const TWO_PAIR: &str = "(y^2+x^3)^2+x^5*y";

fn charplane(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charplane"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).expect("one JSON record per line"))
        .collect()
}

fn single(args: &[&str]) -> Value {
    let out = charplane(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    records(&out).remove(0)
}

fn criterion<'a>(rec: &'a Value, name: &str) -> &'a Value {
    rec["criteria"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap()
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("charplane-{}-{name}", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn invariants_records() {
    let r = single(&["invariants", "-p", "5", "x^7+y^6+x^6*y"]);
    assert_eq!(r["schema"], "charplane/1");
    assert_eq!(r["status"], "ok");
    assert_eq!(r["report"]["mu"], "30");
    assert_eq!(r["report"]["milnor_formula_holds"], "true");

    let r = single(&["invariants", "-p", "0", "x*y"]);
    assert_eq!(r["report"]["mu"], "1");
    assert_eq!(r["report"]["delta"], "1");
    assert_eq!(r["report"]["r"], "2");

    let r = single(&["invariants", "-p", "2", TWO_PAIR]);
    assert_eq!(r["report"]["mu"], "INF");
    assert_eq!(r["report"]["milnor_formula_holds"], "indeterminate");
}

#[test]
fn tame_records() {
    let r = single(&["tame", "-p", "13", TWO_PAIR]);
    assert_eq!(criterion(&r, "DIRECT")["verdict"], "false");
    let sg = criterion(&r, "SEMIGROUP");
    assert_eq!(sg["verdict"], "false");
    assert!(sg["witness"].as_str().unwrap().contains("13"));
    assert_eq!(r["audit"]["inconsistencies"].as_array().unwrap().len(), 0);

    let r = single(&["tame", "-p", "7", TWO_PAIR]);
    assert_eq!(criterion(&r, "DIRECT")["verdict"], "true");
    assert_eq!(criterion(&r, "SEMIGROUP")["verdict"], "true");

    let r = single(&["tame", "-p", "3", "x^2+y^3"]);
    assert_eq!(criterion(&r, "DIRECT")["verdict"], "false");
}

#[test]
fn sweeps() {
    let out = charplane(&["sweep", "--primes", "2,3,5,7,11,13,17", TWO_PAIR]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    assert_eq!(recs.len(), 8);
    let summary = &recs[7]["summary"];
    assert_eq!(summary["tame"], serde_json::json!(["5", "7", "11", "17"]));
    assert_eq!(summary["untame"], serde_json::json!(["2", "3", "13"]));

    let out = charplane(&["sweep", "--primes", "3,5,7", "--template", "milnor-example"]);
    let mus: Vec<Value> = records(&out)[..3].iter().map(|r| r["report"]["mu"].clone()).collect();
    assert_eq!(mus, vec!["12", "30", "56"]);

    let out = charplane(&["sweep", "--primes", "5", "x*y"]);
    assert_eq!(records(&out)[1]["summary"]["tame"], serde_json::json!(["5"]));
}

#[test]
fn corpus_audit() {
    let body = "# worked examples\n\
                x^5+y^6+x^4*y @p=3\n\
                x^7+y^6+x^6*y @p=5\n\
                @p=7\n\
                (y^2+x^3)^2+x^5*y\n\
                x^4+y^6+x^4*y @p=5\n";
    let path = scratch("corpus.txt", body);
    let out = charplane(&["corpus", "-i", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    let audit = &recs.last().unwrap()["audit"];
    assert_eq!(audit["records"], "4");
    for key in ["failed", "melle_wall_violations", "criterion_inconsistencies", "internal_check_failures"] {
        assert_eq!(audit[key], "0", "{key}");
    }
    assert_eq!(recs[2]["input"]["characteristic"], "7");
    assert_eq!(recs[2]["input"]["line_number"], "5");

    let empty = scratch("empty.txt", "");
    let recs = records(&charplane(&["corpus", "-i", empty.to_str().unwrap()]));
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0]["audit"]["records"], "0");
    assert_eq!(recs[0]["audit"]["tame"], "0");
    std::fs::remove_file(path).ok();
    std::fs::remove_file(empty).ok();
}

#[test]
fn exit_codes() {
    let out = charplane(&["invariants", "-p", "5", "x^7+"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert_eq!(charplane(&["invariants", "-p", "4", "x*y"]).status.code(), Some(1));

    let out = charplane(&["teissier", "-p", "5", "x^7+y^6+x^6*y", "--line", "0,-1"]);
    assert_eq!(out.status.code(), Some(2));
    let r = &records(&out)[0];
    assert_eq!(r["status"], "partial");
    assert_eq!(r["polar"]["hypothesis_ii"], false);
    assert_eq!(r["polar"]["teissier_equality"], "true");

    let out = charplane(&["merle", "-p", "5", "y^5+x^6"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_is_stable() {
    let args = ["tame", "-p", "7", TWO_PAIR];
    let first = charplane(&args);
    let line = String::from_utf8(first.stdout.clone()).unwrap();
    let line = line.trim_end();
    let parsed: Value = serde_json::from_str(line).unwrap();
    assert_eq!(serde_json::to_string(&parsed).unwrap(), line);

    let strip = |out: &Output| {
        let mut v = records(out).remove(0);
        v["timings"] = Value::Null;
        v
    };
    assert_eq!(strip(&first), strip(&charplane(&args)));
}

#[test]
fn table_output() {
    let out = charplane(&["invariants", "-p", "5", "x^7+y^6+x^6*y", "--table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.trim_start().starts_with("mu ") && l.trim_end().ends_with("30")));
}

#[test]
fn nondegenerate_corpus_at_seven() {
    // x^a + c y^b has a single nondegenerate edge when 7 does not divide a or b;
    // the extra term lies strictly above it
    let mut body = String::from("@p=7\n");
    let mut count = 0;
    'outer: for a in 2..=9u32 {
        for b in 2..=9u32 {
            for c in 1..=3u32 {
                if a % 7 == 0 || b % 7 == 0 {
                    continue;
                }
                body.push_str(&format!("x^{a}+{c}*y^{b}+x^{a}*y^{b}\n"));
                count += 1;
                if count == 100 {
                    break 'outer;
                }
            }
        }
    }
    let path = scratch("nondegenerate.txt", &body);
    let recs = records(&charplane(&["corpus", "-i", path.to_str().unwrap()]));
    let audit = &recs.last().unwrap()["audit"];
    assert_eq!(audit["records"], "100");
    assert_eq!(audit["failed"], "0");
    assert_eq!(audit["melle_wall_violations"], "0");
    assert_eq!(audit["criterion_inconsistencies"], "0");
    for r in &recs[..100] {
        assert_eq!(criterion(r, "NEWTON_ND")["verdict"], "true", "{}", r["input"]["poly"]);
    }
    std::fs::remove_file(path).ok();
}
