//! The embedded registry against the tables it was transcribed from, and the
//! real height-0 counts against the classification they are derived from.

use std::collections::BTreeSet;

use fsblocks::harness::registry;
use fsblocks::indicators::{parse_vector, Layout};

/// The LaTeX source of the tables, kept next to the workspace but not in it.
fn source() -> Option<String> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../paper.md");
    std::fs::read_to_string(path).ok()
}

/// Last cell of every LaTeX table row that looks like an indicator vector.
fn published_vectors(text: &str) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for line in text.lines().filter(|l| l.contains('&')) {
        let cell = line.rsplit('&').next().unwrap().trim().trim_end_matches("\\\\\\hline").trim_end_matches("\\\\");
        let Some(inner) = cell.trim().strip_prefix('$').and_then(|c| c.strip_suffix('$')) else {
            continue;
        };
        let norm: String = inner.replace(['{', '}', ' '], "");
        if norm.contains(';') || norm.starts_with("1^") {
            if let Ok(v) = parse_vector(&norm) {
                out.insert(v.to_string());
            }
        }
    }
    out
}

#[test]
fn registry_vectors_are_published() {
    let Some(text) = source() else {
        eprintln!("table source not present; skipping");
        return;
    };
    let published = published_vectors(&text);
    assert!(published.len() >= 20, "{published:?}");
    for r in registry().iter().filter(|r| r.layout != Layout::RealHeightZero) {
        let v = parse_vector(&r.expected).unwrap().to_string();
        assert!(published.contains(&v), "{} {}: {v} not in {published:?}", r.table, r.spec);
    }
}

#[test]
fn real_height_zero_rows_follow_the_classification() {
    // exactly two real height-0 characters iff: D nilpotent with E in {Q16, SD16};
    // SL(2,3) with E not in {Q16, SD16}; SL(2,5) with E in {Q16, SD16}
    let rows: Vec<_> = registry().iter().filter(|r| r.layout == Layout::RealHeightZero).collect();
    assert_eq!(rows.len(), 15);
    for r in rows {
        let big = r.e == "Q16" || r.e == "SD16";
        let two = match r.morita.as_str() {
            "SL(2,3)" => !big,
            "SL(2,5)" | "D (nilpotent)" => big,
            other => panic!("unexpected Morita class {other}"),
        };
        assert_eq!(r.expected, if two { "2" } else { "4" }, "{}", r.spec);
    }
}

#[test]
fn every_row_is_cited() {
    for r in registry() {
        assert!(!r.source.trim().is_empty(), "{}", r.spec);
    }
}
