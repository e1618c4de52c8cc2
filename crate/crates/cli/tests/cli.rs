use std::process::{Command, Output};

use fsblocks::fixture::{invariants, FixtureFile};
use fsblocks::groupspec::{self, BuildContext};
use serde_json::Value;

fn run(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_fsblocks"));
    c.args(args).env_remove("FSBLOCKS_CACHE_DIR").env_remove("FSBLOCKS_FIXTURES");
    for (k, v) in envs {
        c.env(k, v);
    }
    c.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn chartab_q8_text() {
    let o = run(&["chartab", "Q(8)"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().filter(|l| l.trim_start().starts_with("X.")).collect();
    assert_eq!(rows.len(), 5);
    let eps: Vec<&str> = rows.iter().map(|r| r.split_whitespace().nth(1).unwrap()).collect();
    assert_eq!(eps.iter().filter(|e| **e == "-1").count(), 1);
    assert_eq!(eps.iter().filter(|e| **e == "1").count(), 4);
}

#[test]
fn blockreport_designated_pair() {
    let o = run(&["blockreport", "FR(D8,SD16)", "--format", "json"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let d = v["designated"].as_u64().unwrap() as usize;
    assert_eq!(v["blocks"][d]["d_type"], "D8");
    assert_eq!(v["blocks"][d]["e_type"], "SD16");
    assert_eq!(v["blocks"][d]["principal"], false);
}

#[test]
fn parse_errors_carry_positions() {
    let o = run(&["chartab", "FR(D8,,SD16)"], &[]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("parse error at 6"), "{err}");
    let o = run(&["chartab", "Foo(3)"], &[]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn empty_corpus_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus.txt");
    std::fs::write(&corpus, "# nothing here\n\n").unwrap();
    let out = dir.path().join("report.json");
    let o = run(
        &["scan", "--corpus", corpus.to_str().unwrap(), "--out", out.to_str().unwrap()],
        &[],
    );
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["groups"].as_array().unwrap().len(), 0);
}

#[test]
fn scan_single_group_lemmas() {
    let o = run(&["scan", "--checks", "lemmas", "--format", "json", "PSL(2,7)"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let checks = v["groups"][0]["checks"].as_array().unwrap();
    let eps: Vec<&Value> = checks.iter().filter(|c| c["check"] == "lemma_eps_nonnegative_integer").collect();
    assert!(!eps.is_empty());
    assert!(eps.iter().all(|c| c["status"] == "pass"));
    assert!(checks.iter().all(|c| !c["check"].as_str().unwrap().starts_with("conjecture")));
}

#[test]
fn exit_codes() {
    // a row that cannot meet its predictions
    assert_eq!(run(&["table", "main-d4"], &[]).status.code(), Some(1));
    assert_eq!(run(&["table", "q8"], &[]).status.code(), Some(0));
    assert_eq!(run(&["table", "no-such-table"], &[]).status.code(), Some(2));
    // enumeration guard
    let o = run(&["scan", "--max-order", "100", "S(5)"], &[]);
    assert_eq!(o.status.code(), Some(2));
    // parse failure inside a scan is a failed row, not a crash
    assert_eq!(run(&["scan", "PSL(2,"], &[]).status.code(), Some(1));
}

#[test]
fn cache_dir_from_env_is_used_and_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let fresh = run(&["table", "q8", "--format", "json"], &[]);
    let first = run(&["table", "q8", "--format", "json"], &[("FSBLOCKS_CACHE_DIR", d)]);
    let n = std::fs::read_dir(dir.path()).unwrap().count();
    assert!(n >= 6, "{n} cache files");
    let second = run(&["table", "q8", "--format", "json"], &[("FSBLOCKS_CACHE_DIR", d)]);
    assert_eq!(fresh.stdout, first.stdout);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn seed_does_not_change_results() {
    let a = run(&["table", "q8-h0", "--format", "json"], &[]);
    let b = run(&["table", "q8-h0", "--format", "json", "--seed", "7"], &[]);
    let strip = |o: &Output| {
        let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v["seed"] = Value::Null;
        v
    };
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn fixtures_are_loaded_and_validated() {
    let dir = tempfile::tempdir().unwrap();
    let built = groupspec::build(&groupspec::parse("wr(C4,C2)").unwrap(), &BuildContext::default()).unwrap();
    let g = built.group;
    let mut file = FixtureFile {
        name: "w".into(),
        degree: g.degree(),
        generators: g.generators().iter().map(|p| p.images().collect()).collect(),
        expected: invariants(&g),
    };
    std::fs::write(dir.path().join("w.json"), serde_json::to_string(&file).unwrap()).unwrap();
    let fx = dir.path().to_str().unwrap();
    let via_fixture = run(&["blockreport", "FR(C4xC4,fixture(w))", "--format", "json", "--fixtures", fx], &[]);
    assert_eq!(via_fixture.status.code(), Some(0), "{}", String::from_utf8_lossy(&via_fixture.stderr));
    let direct = run(&["blockreport", "FR(C4xC4,wr(C4,C2))", "--format", "json"], &[]);
    let blocks = |o: &Output| serde_json::from_slice::<Value>(&o.stdout).unwrap()["blocks"].clone();
    assert_eq!(blocks(&via_fixture), blocks(&direct));

    // wrong invariants are rejected
    file.expected.order += 1;
    std::fs::write(dir.path().join("w.json"), serde_json::to_string(&file).unwrap()).unwrap();
    let o = run(&["blockreport", "FR(C4xC4,fixture(w))", "--fixtures", fx], &[]);
    assert_ne!(o.status.code(), Some(0));
    // and a missing directory skips the fixture rows of a table
    let o = run(&["table", "homocyclic", "--format", "json"], &[]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["summary"]["skipped"], 7);
    assert_eq!(o.status.code(), Some(0));
}
