//! Expected-value registry and the runners behind the `table` and `scan`
//! commands.

use std::sync::OnceLock;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::cache::{TableCache, ENGINE_VERSION};
use crate::chartab::CharacterTable;
use crate::checks::{self, is_conjecture, CheckRecord, Status};
use crate::error::{Error, Result};
use crate::groupspec::{self, BuildContext, Built, Spec};
use crate::indicators::{self, BlockSummary, Layout};
use crate::subsections::Analysis;

pub const TABLE_IDS: [&str; 5] = ["main-d3", "main-d4", "q8", "q8-h0", "homocyclic"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Locator {
    /// The block of the trivial character.
    Principal,
    /// The block of the induced character of a Fong-Reynolds gluing.
    Designated,
}

/// One expected row, transcribed from the published tables.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExpectedRow {
    pub table: String,
    pub morita: String,
    pub e: String,
    pub spec: String,
    pub block: Locator,
    pub order: usize,
    pub k: usize,
    pub l: usize,
    pub d_type: String,
    /// `None` for groups supplied as fixtures.
    pub e_type: Option<String>,
    pub layout: Layout,
    pub expected: String,
    pub source: String,
}

pub fn registry() -> &'static [ExpectedRow] {
    static REG: OnceLock<Vec<ExpectedRow>> = OnceLock::new();
    REG.get_or_init(|| serde_json::from_str(include_str!("../data/registry.json")).expect("embedded registry parses"))
}

pub fn rows_for(table: &str) -> Result<Vec<&'static ExpectedRow>> {
    if !TABLE_IDS.contains(&table) {
        return Err(Error::Unsupported(format!(
            "unknown table '{table}' (known: {})",
            TABLE_IDS.join(", ")
        )));
    }
    Ok(registry().iter().filter(|r| r.table == table).collect())
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub ctx: BuildContext,
    pub seed: u64,
    pub cache: Option<TableCache>,
    /// Record wall-clock times (makes reports non-reproducible).
    pub timings: bool,
}

/// Parses, builds and analyses a groupspec.
pub fn analyse(text: &str, opts: &RunOptions) -> Result<(Spec, Built, Analysis)> {
    let spec = groupspec::parse(text)?;
    let built = groupspec::build(&spec, &opts.ctx)?;
    let key = spec.to_string();
    let table = match &opts.cache {
        Some(c) => c.get_or_compute(&key, &built.group, opts.seed)?,
        None => CharacterTable::compute_seeded(&built.group, opts.seed)?,
    };
    let an = Analysis::with_table(built.group.clone(), table)?;
    Ok((spec, built, an))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowStatus {
    Pass,
    Skipped,
    Fail,
    Error,
}

/// Missing fixtures skip; computational breakdowns are errors; everything
/// else is a failed expectation.
pub fn classify(e: &Error) -> RowStatus {
    match e {
        Error::Fixture(_) => RowStatus::Skipped,
        Error::TooLarge { .. }
        | Error::Corruption(_)
        | Error::Arithmetic(_)
        | Error::Io(_)
        | Error::Json(_)
        | Error::InvalidPermutation(_)
        | Error::DegreeMismatch(..)
        | Error::NotInGroup => RowStatus::Error,
        _ => RowStatus::Fail,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RowReport {
    pub table: String,
    pub morita: String,
    pub e: String,
    pub groupspec: String,
    pub source: String,
    pub status: RowStatus,
    pub expected: String,
    pub computed: Option<String>,
    pub order: Option<usize>,
    pub block: Option<BlockSummary>,
    pub problems: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

fn locate(row: &ExpectedRow, built: &Built, an: &Analysis) -> Result<usize> {
    match row.block {
        Locator::Principal => Ok(an.block_of_char(0)),
        Locator::Designated => {
            let fr = built
                .fr
                .as_ref()
                .ok_or_else(|| Error::Construction("designated block needs an FR(H,Hhat) groupspec".into()))?;
            Ok(an.block_of_char(fr.designated_character(&an.table)?))
        }
    }
}

fn row_body(row: &ExpectedRow, opts: &RunOptions, rep: &mut RowReport) -> Result<()> {
    let (_, built, an) = analyse(&row.spec, opts)?;
    rep.order = Some(an.g.order());
    let bi = locate(row, &built, &an)?;
    let s = indicators::summarize(&an, bi)?;
    let b = &an.blocks[bi];
    let p = &mut rep.problems;
    let check = |p: &mut Vec<String>, ok: bool, what: &str, got: String, want: String| {
        if !ok {
            p.push(format!("{what}: computed {got}, expected {want}"));
        }
    };
    check(p, an.g.order() == row.order, "|G|", an.g.order().to_string(), row.order.to_string());
    check(p, s.k == row.k, "k(B)", s.k.to_string(), row.k.to_string());
    check(p, s.l == row.l, "l(B)", s.l.to_string(), row.l.to_string());
    check(p, s.d_type == row.d_type, "defect group", s.d_type.clone(), row.d_type.clone());
    if let Some(e) = &row.e_type {
        let got = s.e_type.clone().unwrap_or_else(|| "none (block not real)".into());
        check(p, &got == e, "extended defect group", got, e.clone());
    }
    let want_principal = row.block == Locator::Principal;
    check(p, b.principal == want_principal, "principal", b.principal.to_string(), want_principal.to_string());
    if row.layout == Layout::TwoRational {
        check(
            p,
            matches!((s.k, s.l), (16, 1) | (8, 3)),
            "(k, l)",
            format!("({}, {})", s.k, s.l),
            "(16, 1) or (8, 3)".into(),
        );
        check(p, s.two_rational == 4, "2-rational characters", s.two_rational.to_string(), "4".into());
        if want_principal && s.l == 3 {
            if checks::homocyclic_gendecomp_check(&an)?.is_none() {
                p.push("generalized decomposition numbers do not fit the expected matrix".into());
            }
        }
    }
    let (v, issues) = indicators::extract(&an, bi, row.layout)?;
    p.extend(issues);
    let expected = indicators::parse_vector(&row.expected)?;
    let computed = v.to_string();
    check(p, v == expected, "indicators", computed.clone(), expected.to_string());
    rep.computed = Some(computed);
    rep.block = Some(s);
    Ok(())
}

pub fn run_row(row: &ExpectedRow, opts: &RunOptions) -> RowReport {
    let start = Instant::now();
    let mut rep = RowReport {
        table: row.table.clone(),
        morita: row.morita.clone(),
        e: row.e.clone(),
        groupspec: row.spec.clone(),
        source: row.source.clone(),
        status: RowStatus::Pass,
        expected: row.expected.clone(),
        computed: None,
        order: None,
        block: None,
        problems: Vec::new(),
        elapsed_ms: None,
    };
    match row_body(row, opts, &mut rep) {
        Ok(()) => {
            if !rep.problems.is_empty() {
                rep.status = RowStatus::Fail;
            }
        }
        Err(e) => {
            rep.status = classify(&e);
            rep.problems.push(e.to_string());
        }
    }
    if opts.timings {
        rep.elapsed_ms = Some(start.elapsed().as_millis());
    }
    rep
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub error: usize,
    pub findings: usize,
}

impl Summary {
    pub fn exit_code(&self) -> i32 {
        if self.error > 0 {
            2
        } else if self.fail > 0 || self.findings > 0 {
            1
        } else {
            0
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub engine_version: String,
    pub seed: u64,
    pub table: String,
    pub rows: Vec<RowReport>,
    pub summary: Summary,
}

pub fn summarize_rows(rows: &[RowReport]) -> Summary {
    let mut s = Summary::default();
    for r in rows {
        match r.status {
            RowStatus::Pass => s.pass += 1,
            RowStatus::Fail => s.fail += 1,
            RowStatus::Skipped => s.skipped += 1,
            RowStatus::Error => s.error += 1,
        }
    }
    s
}

pub fn table_report(table: &str, rows: Vec<RowReport>, seed: u64) -> TableReport {
    TableReport {
        engine_version: ENGINE_VERSION.to_string(),
        seed,
        table: table.to_string(),
        summary: summarize_rows(&rows),
        rows,
    }
}

/// Sequential `table` run; the CLI parallelises over rows itself.
pub fn run_table(table: &str, opts: &RunOptions) -> Result<TableReport> {
    let rows = rows_for(table)?.into_iter().map(|r| run_row(r, opts)).collect();
    Ok(table_report(table, rows, opts.seed))
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupScan {
    pub groupspec: String,
    pub status: RowStatus,
    pub order: Option<usize>,
    pub blocks: Vec<BlockSummary>,
    pub checks: Vec<CheckRecord>,
    pub findings: Vec<CheckRecord>,
    pub problems: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

/// Property, lemma and conjecture checks on one group, filtered by
/// [`check_selected`].
pub fn scan_group(text: &str, selector: &str, opts: &RunOptions) -> GroupScan {
    let start = Instant::now();
    let mut out = GroupScan {
        groupspec: text.to_string(),
        status: RowStatus::Pass,
        order: None,
        blocks: Vec::new(),
        checks: Vec::new(),
        findings: Vec::new(),
        problems: Vec::new(),
        elapsed_ms: None,
    };
    let body = || -> Result<(usize, Vec<BlockSummary>, Vec<CheckRecord>)> {
        let (spec, _, an) = analyse(text, opts)?;
        let (_, mut recs) = checks::run_all(&spec.to_string(), &an)?;
        recs.retain(|r| check_selected(selector, &r.check));
        let blocks = (0..an.blocks.len())
            .map(|b| indicators::summarize(&an, b))
            .collect::<Result<Vec<_>>>()?;
        Ok((an.g.order(), blocks, recs))
    };
    match body() {
        Ok((order, blocks, recs)) => {
            out.order = Some(order);
            out.blocks = blocks;
            for r in &recs {
                if r.status == Status::Fail {
                    if is_conjecture(&r.check) {
                        out.findings.push(r.clone());
                    } else {
                        out.problems.push(format!("{} (block {:?}): {} vs {} {}", r.check, r.block, r.lhs, r.rhs, r.witness));
                    }
                }
            }
            if !out.problems.is_empty() || !out.findings.is_empty() {
                out.status = RowStatus::Fail;
            }
            out.checks = recs;
        }
        Err(e) => {
            out.status = classify(&e);
            out.problems.push(e.to_string());
        }
    }
    if opts.timings {
        out.elapsed_ms = Some(start.elapsed().as_millis());
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub engine_version: String,
    pub seed: u64,
    pub groups: Vec<GroupScan>,
    pub summary: Summary,
}

pub fn scan_report(groups: Vec<GroupScan>, seed: u64) -> ScanReport {
    let mut summary = Summary::default();
    for g in &groups {
        match g.status {
            RowStatus::Pass => summary.pass += 1,
            RowStatus::Fail => summary.fail += 1,
            RowStatus::Skipped => summary.skipped += 1,
            RowStatus::Error => summary.error += 1,
        }
        summary.findings += g.findings.len();
    }
    ScanReport {
        engine_version: ENGINE_VERSION.to_string(),
        seed,
        groups,
        summary,
    }
}

/// Corpus file: one groupspec per line, `#` starts a comment.
pub fn parse_corpus(text: &str) -> Vec<String> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect()
}

/// Every registry group that needs no fixture, then the PSL/PGL family and a
/// few further tame and homocyclic examples.
pub fn default_corpus() -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for r in registry() {
        if !r.spec.contains("fixture(") && !out.contains(&r.spec) {
            out.push(r.spec.clone());
        }
    }
    for extra in parse_corpus(include_str!("../data/corpus_extra.txt")) {
        if !out.contains(&extra) {
            out.push(extra);
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassView {
    pub order: u32,
    pub size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterView {
    pub degree: u64,
    pub eps: i8,
    pub values: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChartabReport {
    pub engine_version: String,
    pub groupspec: String,
    pub order: usize,
    pub classes: Vec<ClassView>,
    pub characters: Vec<CharacterView>,
}

pub fn chartab_report(text: &str, opts: &RunOptions) -> Result<ChartabReport> {
    let (spec, _, an) = analyse(text, opts)?;
    let t = &an.table;
    Ok(ChartabReport {
        engine_version: ENGINE_VERSION.to_string(),
        groupspec: spec.to_string(),
        order: t.group_order,
        classes: t.classes.iter().map(|c| ClassView { order: c.order, size: c.size }).collect(),
        characters: (0..t.num_chars())
            .map(|i| CharacterView {
                degree: t.degree(i),
                eps: t.eps[i],
                values: t.chars[i].iter().map(|v| v.to_string()).collect(),
            })
            .collect(),
    })
}

impl ChartabReport {
    /// Aligned plain-text rendering, one row per character.
    pub fn to_text(&self) -> String {
        let mut rows: Vec<Vec<String>> = Vec::new();
        let mut head = vec!["".to_string(), "eps".to_string()];
        head.extend(self.classes.iter().map(|c| c.order.to_string()));
        rows.push(head);
        let mut sizes = vec!["size".to_string(), "".to_string()];
        sizes.extend(self.classes.iter().map(|c| c.size.to_string()));
        rows.push(sizes);
        for (i, ch) in self.characters.iter().enumerate() {
            let mut r = vec![format!("X.{}", i + 1), ch.eps.to_string()];
            r.extend(ch.values.iter().cloned());
            rows.push(r);
        }
        let mut out = format!("{}  (order {})\n", self.groupspec, self.order);
        out.push_str(&align(&rows));
        out
    }
}

fn align(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r.iter().enumerate().map(|(c, s)| format!("{s:>w$}", w = widths[c])).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockReport {
    pub engine_version: String,
    pub groupspec: String,
    pub order: usize,
    /// The block of the Fong-Reynolds designated character, when there is one.
    pub designated: Option<usize>,
    pub blocks: Vec<BlockSummary>,
}

pub fn block_report(text: &str, opts: &RunOptions) -> Result<BlockReport> {
    let (spec, built, an) = analyse(text, opts)?;
    let designated = match &built.fr {
        Some(fr) => Some(an.block_of_char(fr.designated_character(&an.table)?)),
        None => None,
    };
    Ok(BlockReport {
        engine_version: ENGINE_VERSION.to_string(),
        groupspec: spec.to_string(),
        order: an.g.order(),
        designated,
        blocks: (0..an.blocks.len())
            .map(|b| indicators::summarize(&an, b))
            .collect::<Result<_>>()?,
    })
}

impl BlockReport {
    pub fn to_text(&self) -> String {
        let mut rows = vec![["block", "k", "l", "defect", "D", "E", "real", "principal", "eps"]
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()];
        for b in &self.blocks {
            let mark = if Some(b.index) == self.designated { "*" } else { "" };
            let eps: Vec<String> = b.eps.iter().map(|e| e.to_string()).collect();
            rows.push(vec![
                format!("{mark}{}", b.index),
                b.k.to_string(),
                b.l.to_string(),
                b.defect.to_string(),
                b.d_type.clone(),
                b.e_type.clone().unwrap_or_else(|| "-".into()),
                b.real.to_string(),
                b.principal.to_string(),
                eps.join(","),
            ]);
        }
        let mut out = format!("{}  (order {})\n", self.groupspec, self.order);
        out.push_str(&align(&rows));
        if self.designated.is_some() {
            out.push_str("* designated block\n");
        }
        out
    }
}

impl TableReport {
    pub fn to_text(&self) -> String {
        let mut rows = vec![["status", "morita", "E", "groupspec", "expected", "computed"]
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()];
        for r in &self.rows {
            rows.push(vec![
                format!("{:?}", r.status).to_lowercase(),
                r.morita.clone(),
                r.e.clone(),
                r.groupspec.clone(),
                r.expected.clone(),
                r.computed.clone().unwrap_or_else(|| "-".into()),
            ]);
        }
        let mut out = format!("table {}\n", self.table);
        out.push_str(&align(&rows));
        for r in self.rows.iter().filter(|r| !r.problems.is_empty()) {
            for p in &r.problems {
                out.push_str(&format!("  {}: {p}\n", r.groupspec));
            }
        }
        let s = &self.summary;
        out.push_str(&format!("{} pass, {} fail, {} skipped, {} error\n", s.pass, s.fail, s.skipped, s.error));
        out
    }
}

impl ScanReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for g in &self.groups {
            let passed = g.checks.iter().filter(|c| c.status == Status::Pass).count();
            let skipped = g.checks.iter().filter(|c| c.status == Status::Skipped).count();
            out.push_str(&format!(
                "{:<8} {}  ({} checks passed, {} skipped)\n",
                format!("{:?}", g.status).to_lowercase(),
                g.groupspec,
                passed,
                skipped
            ));
            for p in &g.problems {
                out.push_str(&format!("  {p}\n"));
            }
            for f in &g.findings {
                out.push_str(&format!(
                    "  finding {} (block {:?}): {} vs {} {}\n",
                    f.check, f.block, f.lhs, f.rhs, f.witness
                ));
            }
        }
        let s = &self.summary;
        out.push_str(&format!(
            "{} pass, {} fail, {} skipped, {} error, {} conjecture findings\n",
            s.pass, s.fail, s.skipped, s.error, s.findings
        ));
        out
    }
}

/// Which checks a scan keeps: `all`, `properties`, `lemmas`, `conjectures`,
/// or a comma-separated list of check names.
pub fn check_selected(selector: &str, check: &str) -> bool {
    selector.split(',').map(str::trim).any(|s| match s {
        "all" | "" => true,
        "conjectures" => is_conjecture(check),
        "lemmas" => check.starts_with("lemma_") || check == "locnil",
        "properties" => !is_conjecture(check) && !check.starts_with("lemma_") && check != "locnil",
        name => name == check,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_well_formed() {
        let reg = registry();
        for t in TABLE_IDS {
            assert!(!rows_for(t).unwrap().is_empty(), "{t}");
        }
        assert_eq!(rows_for("q8").unwrap().len(), 6);
        for r in reg {
            groupspec::parse(&r.spec).unwrap();
            indicators::parse_vector(&r.expected).unwrap();
        }
        assert!(rows_for("nope").is_err());
    }

    #[test]
    fn corpus_parsing() {
        assert_eq!(parse_corpus("# c\n\n D8 # x\nQ8\n"), vec!["D8", "Q8"]);
        assert!(parse_corpus("").is_empty());
        assert!(default_corpus().len() > 40);
    }

    #[test]
    fn small_rows_pass() {
        let opts = RunOptions::default();
        for r in registry().iter().filter(|r| r.order <= 48 && !r.spec.contains("fixture(")) {
            let rep = run_row(r, &opts);
            assert_eq!(rep.status, RowStatus::Pass, "{}: {:?}", r.spec, rep.problems);
        }
    }

    #[test]
    fn fixture_rows_skip_without_fixtures() {
        let opts = RunOptions::default();
        let r = registry().iter().find(|r| r.spec.contains("fixture(")).unwrap();
        assert_eq!(run_row(r, &opts).status, RowStatus::Skipped);
    }

    #[test]
    fn scan_psl27() {
        let g = scan_group("PSL(2,7)", "all", &RunOptions::default());
        assert_eq!(g.status, RowStatus::Pass, "{:?}", g.problems);
        assert!(g
            .checks
            .iter()
            .any(|c| c.check == "lemma_eps_nonnegative_integer" && c.status == Status::Pass));
        let bad = scan_group("PSL(2,", "all", &RunOptions::default());
        assert_eq!(bad.status, RowStatus::Fail);
        let only = scan_group("Q8", "conjectures", &RunOptions::default());
        assert!(only.checks.iter().all(|c| is_conjecture(&c.check)));
    }

    #[test]
    fn selectors() {
        assert!(check_selected("all", "orthogonality"));
        assert!(check_selected("lemmas", "locnil"));
        assert!(!check_selected("properties", "conjecture_c"));
        assert!(check_selected("orthogonality,locnil", "locnil"));
        assert!(!check_selected("conjectures", "lemma_eps_vanishing"));
    }

    #[test]
    fn reports_render() {
        let opts = RunOptions::default();
        let c = chartab_report("Q(8)", &opts).unwrap();
        let mut eps: Vec<i8> = c.characters.iter().map(|x| x.eps).collect();
        eps.sort();
        assert_eq!(eps, vec![-1, 1, 1, 1, 1]);
        assert_eq!(c.to_text().lines().count(), 8);
        let b = block_report("FR(D8,SD16)", &opts).unwrap();
        let d = &b.blocks[b.designated.unwrap()];
        assert_eq!((d.d_type.as_str(), d.e_type.as_deref()), ("D8", Some("SD16")));
        assert!(b.to_text().contains("SD16"));
    }
}
