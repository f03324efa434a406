//! Reports, comparisons and tables behind the `corona` command.
//!
//! Every command returns plain data; rendering and exit codes live in the
//! binary so the same paths can be driven from tests.

use std::fmt::Write as _;
use std::time::Instant;

use corona_core::dsl;
use corona_core::formula::{self, CmVerdict, InvariantReport, SdepthValue, SpineFamily};
use corona_core::oracle::{self, OracleConfig};
use corona_core::{Characteristic, Error, GraphSpec, Result};
use rayon::prelude::*;
use serde::Serialize;

pub use corona_core::dsl::{parse_instances, parse_spec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub characteristic: Characteristic,
    pub max_oracle_vertices: usize,
    pub max_sdepth_vertices: usize,
    pub format: Format,
    /// Worker threads for grids and tables; `None` uses every core.
    pub jobs: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let oracle = OracleConfig::default();
        RunConfig {
            characteristic: oracle.characteristic,
            max_oracle_vertices: oracle.max_oracle_vertices,
            max_sdepth_vertices: oracle.max_sdepth_vertices,
            format: Format::Text,
            jobs: None,
        }
    }
}

impl RunConfig {
    pub fn oracle(&self) -> OracleConfig {
        OracleConfig {
            characteristic: self.characteristic,
            max_oracle_vertices: self.max_oracle_vertices,
            max_sdepth_vertices: self.max_sdepth_vertices,
        }
    }

    /// Runs `f` on a pool of `jobs` threads.
    pub fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> T {
        match self.jobs {
            Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build().expect("thread pool").install(f),
            None => f(),
        }
    }
}

/// Exit status for an error: 3 for capacity, 2 for everything the user
/// can fix in the input.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Capacity { .. } => 3,
        _ => 2,
    }
}

/// Spine and fiber of a covered instance, if the spec is one.
pub fn covered_instance(spec: &GraphSpec) -> Option<(SpineFamily, GraphSpec)> {
    match spec {
        GraphSpec::Corona(x, h) => Some((SpineFamily::from_spec(x)?, (**h).clone())),
        GraphSpec::Bristle(x, t) => Some((SpineFamily::from_spec(x)?, GraphSpec::Null(*t))),
        _ => None,
    }
}

fn closed_form_report(spec: &GraphSpec, cfg: &RunConfig) -> Option<Result<InvariantReport>> {
    let (x, h) = covered_instance(spec)?;
    let run = || -> Result<InvariantReport> {
        spec.build()?;
        formula::evaluate(&x, &h.build()?, Some(&cfg.oracle()))
    };
    match run() {
        Err(Error::OutOfRange(_)) => None,
        other => Some(other),
    }
}

/// Invariants straight from the oracle, for graphs the closed forms do not
/// cover.
pub fn oracle_report(spec: &GraphSpec, cfg: &RunConfig) -> Result<InvariantReport> {
    let g = spec.build()?;
    let truth = oracle::oracle_invariants(&g, &cfg.oracle())?;
    let mut provenance = vec![
        "depth, reg, pdim: oracle Betti table (Hochster)".to_string(),
        "dim: oracle independence number".to_string(),
    ];
    let sdepth = match truth.sdepth {
        Some(value) => {
            provenance.push("sdepth: oracle interval partition search".to_string());
            SdepthValue { value, exact: true }
        }
        None => {
            provenance.push("sdepth: trivial lower bound beyond the search cap".to_string());
            let iso = g.isolated_vertices().len();
            SdepthValue { value: iso + usize::from(iso < g.n_vertices()), exact: false }
        }
    };
    provenance.push("cm: oracle depth = dim".to_string());
    Ok(InvariantReport {
        depth: truth.depth,
        sdepth,
        reg: truth.reg,
        pdim: truth.pdim,
        dim: truth.dim,
        cohen_macaulay: CmVerdict::from_bool(truth.cohen_macaulay()),
        provenance,
        n_vertices: g.n_vertices(),
    })
}

/// Closed forms when the spine is covered, the oracle otherwise.
pub fn cmd_invariants(spec: &GraphSpec, cfg: &RunConfig) -> Result<InvariantReport> {
    closed_form_report(spec, cfg).unwrap_or_else(|| oracle_report(spec, cfg))
}

pub fn cmd_cm(spec: &GraphSpec, cfg: &RunConfig) -> Result<(CmVerdict, Vec<String>)> {
    if let Some((x, h)) = covered_instance(spec) {
        spec.build()?;
        let verdict = formula::is_cm_formula(&x, &h.build()?)?;
        if verdict != CmVerdict::NotCovered {
            return Ok((verdict, vec!["cm: complete-fiber characterization".to_string()]));
        }
    }
    let g = spec.build()?;
    let verdict = CmVerdict::from_bool(oracle::is_cm_oracle(&g, &cfg.oracle())?);
    Ok((verdict, vec!["cm: oracle depth = dim".to_string()]))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonRecord {
    pub spec: String,
    pub invariant: &'static str,
    pub formula: usize,
    pub oracle: usize,
    /// `"="` for exact values, `"<="` for Stanley depth lower bounds.
    pub relation: &'static str,
    #[serde(rename = "match")]
    pub matches: bool,
    pub rule: String,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

fn rule_for(report: &InvariantReport, prefix: &str) -> String {
    report.provenance.iter().find(|p| p.starts_with(prefix)).cloned().unwrap_or_default()
}

fn compare_one(spec: &GraphSpec, cfg: &RunConfig) -> Result<Vec<ComparisonRecord>> {
    let start = Instant::now();
    let report = closed_form_report(spec, cfg)
        .ok_or_else(|| Error::OutOfRange(format!("{spec} is not a corona with a covered spine")))??;
    let g = spec.build()?;
    let truth = oracle::oracle_invariants(&g, &cfg.oracle())?;
    let elapsed_ms = start.elapsed().as_millis();
    let text = spec.to_string();
    let record = |invariant, formula, oracle, rule: String| ComparisonRecord {
        spec: text.clone(),
        invariant,
        formula,
        oracle,
        relation: "=",
        matches: formula == oracle,
        rule,
        elapsed_ms,
    };
    let mut out = vec![
        record("depth", report.depth, truth.depth, rule_for(&report, "depth:")),
        record("reg", report.reg, truth.reg, rule_for(&report, "reg:")),
        record("pdim", report.pdim, truth.pdim, rule_for(&report, "pdim:")),
        record("dim", report.dim, truth.dim, rule_for(&report, "dim:")),
        record(
            "cm",
            usize::from(report.cohen_macaulay == CmVerdict::Yes),
            usize::from(truth.cohen_macaulay()),
            rule_for(&report, "cm:"),
        ),
    ];
    if let Some(s) = truth.sdepth {
        let mut r = record("sdepth", report.sdepth.value, s, rule_for(&report, "sdepth:"));
        if !report.sdepth.exact {
            r.relation = "<=";
            r.matches = report.sdepth.value <= s;
        }
        out.push(r);
    }
    Ok(out)
}

/// Formula against oracle on every instance; records come back in input
/// order whatever the worker count.
pub fn cmd_compare(instances: &[GraphSpec], cfg: &RunConfig) -> Result<Vec<ComparisonRecord>> {
    let per_instance: Vec<Result<Vec<ComparisonRecord>>> =
        cfg.install(|| instances.par_iter().map(|s| compare_one(s, cfg)).collect());
    let mut out = Vec::new();
    for r in per_instance {
        out.extend(r?);
    }
    Ok(out)
}

pub fn all_match(records: &[ComparisonRecord]) -> bool {
    records.iter().all(|r| r.matches)
}

/// Parameter ranges for `cmd_table`. Single-count families read `n` (spine)
/// and `m` (fiber); complete bipartite spines read `u`, `v` and fibers `p`, `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRanges {
    pub n: Vec<usize>,
    pub m: Vec<usize>,
    pub u: Vec<usize>,
    pub v: Vec<usize>,
    pub p: Vec<usize>,
    pub q: Vec<usize>,
}

impl Default for TableRanges {
    fn default() -> Self {
        TableRanges { n: (1..=4).collect(), m: (1..=4).collect(), u: vec![1], v: vec![1], p: vec![1], q: vec![1] }
    }
}

/// Parses `a..b` (inclusive) or a single count. `a > b` is an empty range.
pub fn parse_range(text: &str) -> std::result::Result<Vec<usize>, String> {
    let parse = |s: &str| s.trim().parse::<usize>().map_err(|e| format!("bad count '{s}': {e}"));
    match text.split_once("..") {
        Some((lo, hi)) => Ok((parse(lo)?..=parse(hi)?).collect()),
        None => Ok(vec![parse(text)?]),
    }
}

const TABLE_FAMILIES: [&str; 6] = ["path", "cycle", "complete", "star", "kbip", "null"];

fn family_members(name: &str, single: &[usize], first: &[usize], second: &[usize]) -> Result<Vec<GraphSpec>> {
    let one = |f: fn(usize) -> GraphSpec| single.iter().map(|&k| f(k)).collect();
    Ok(match name {
        "path" => one(GraphSpec::Path),
        "cycle" => one(GraphSpec::Cycle),
        "complete" => one(GraphSpec::Complete),
        "star" => one(GraphSpec::Star),
        "null" => one(GraphSpec::Null),
        "kbip" => first.iter().flat_map(|&a| second.iter().map(move |&b| GraphSpec::CompleteBipartite(a, b))).collect(),
        _ => {
            return Err(Error::Parse {
                position: 0,
                expected: TABLE_FAMILIES.iter().map(|s| s.to_string()).collect(),
                found: format!("'{name}'"),
            })
        }
    })
}

/// The instances of a table, spine parameters outermost. `family` is
/// `spine:fiber`, or a single name for the same family on both sides.
pub fn table_instances(family: &str, ranges: &TableRanges) -> Result<Vec<GraphSpec>> {
    let lower = family.trim().to_ascii_lowercase();
    let (spine, fiber) = lower.split_once(':').unwrap_or((&lower, &lower));
    let spines = family_members(spine.trim(), &ranges.n, &ranges.u, &ranges.v)?;
    let fibers = family_members(fiber.trim(), &ranges.m, &ranges.p, &ranges.q)?;
    Ok(spines.iter().flat_map(|x| fibers.iter().map(move |h| GraphSpec::corona(x.clone(), h.clone()))).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub spec: String,
    pub n_vertices: usize,
    #[serde(flatten)]
    pub report: InvariantReport,
}

pub fn cmd_table(family: &str, ranges: &TableRanges, cfg: &RunConfig) -> Result<Vec<TableRow>> {
    let instances = table_instances(family, ranges)?;
    let rows: Vec<Result<TableRow>> = cfg.install(|| {
        instances
            .par_iter()
            .map(|spec| {
                let report = cmd_invariants(spec, cfg)?;
                Ok(TableRow { spec: spec.to_string(), n_vertices: report.n_vertices, report })
            })
            .collect()
    });
    rows.into_iter().collect()
}

pub const CSV_HEADER: [&str; 10] =
    ["spec", "n_vertices", "depth", "sdepth", "sdepth_exact", "reg", "pdim", "dim", "cm", "provenance"];

pub fn table_csv(rows: &[TableRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for row in rows {
        let r = &row.report;
        w.write_record([
            row.spec.clone(),
            row.n_vertices.to_string(),
            r.depth.to_string(),
            r.sdepth.value.to_string(),
            r.sdepth.exact.to_string(),
            r.reg.to_string(),
            r.pdim.to_string(),
            r.dim.to_string(),
            r.cohen_macaulay.to_string(),
            r.provenance.join("; "),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV of UTF-8 fields")
}

pub fn report_text(spec: &str, r: &InvariantReport) -> String {
    let mut out = String::new();
    let bound = if r.sdepth.exact { "exact" } else { "lower bound" };
    let _ = writeln!(out, "spec: {spec}");
    let _ = writeln!(out, "vertices: {}", r.n_vertices);
    let _ = writeln!(out, "depth: {}", r.depth);
    let _ = writeln!(out, "sdepth: {} ({bound})", r.sdepth.value);
    let _ = writeln!(out, "reg: {}", r.reg);
    let _ = writeln!(out, "pdim: {}", r.pdim);
    let _ = writeln!(out, "dim: {}", r.dim);
    let _ = writeln!(out, "cohen_macaulay: {}", r.cohen_macaulay);
    let _ = writeln!(out, "provenance:");
    for p in &r.provenance {
        let _ = writeln!(out, "  {p}");
    }
    out
}

pub fn records_text(records: &[ComparisonRecord]) -> String {
    let mut out = String::new();
    for r in records {
        let status = if r.matches { "ok" } else { "MISMATCH" };
        let _ = writeln!(
            out,
            "{status} {} {}: formula {} {} oracle {} [{}]",
            r.spec, r.invariant, r.formula, r.relation, r.oracle, r.rule
        );
    }
    let bad = records.iter().filter(|r| !r.matches).count();
    let _ = writeln!(out, "{} records, {} mismatches", records.len(), bad);
    out
}

pub fn records_csv(records: &[ComparisonRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV of UTF-8 fields")
}

/// Parses a compare target: one spec or a grid of coronas.
pub fn parse_target(text: &str) -> Result<Vec<GraphSpec>> {
    dsl::parse_instances(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> GraphSpec {
        parse_spec(s).unwrap()
    }

    #[test]
    fn invariants_examples() {
        let cfg = RunConfig::default();
        assert_eq!(cmd_invariants(&spec("corona(path(3), path(2))"), &cfg).unwrap().depth, 3);
        assert_eq!(cmd_invariants(&spec("corona(star(4), null(1))"), &cfg).unwrap().reg, 4);
        let kk = cmd_invariants(&spec("corona(complete(3), complete(2))"), &cfg).unwrap();
        assert_eq!((kk.cohen_macaulay, kk.dim), (CmVerdict::Yes, 3));
    }

    #[test]
    fn uncovered_specs_use_the_oracle() {
        let cfg = RunConfig::default();
        let r = cmd_invariants(&spec("graph(7; 1-2,2-3,2-4,3-5,5-6,5-7)"), &cfg).unwrap();
        assert!(r.provenance[0].starts_with("depth, reg, pdim: oracle"));
        assert_eq!(r.depth + r.pdim, 7);
        assert!(r.sdepth.exact);
        let big = cmd_invariants(&spec("cycle(12)"), &cfg).unwrap();
        assert_eq!(big.sdepth, SdepthValue { value: 1, exact: false });
    }

    #[test]
    fn capacity_errors_map_to_three() {
        let cfg = RunConfig { max_oracle_vertices: 5, ..RunConfig::default() };
        let err = cmd_invariants(&spec("path(6)"), &cfg).unwrap_err();
        assert_eq!(exit_code(&err), 3);
        let err = cmd_invariants(&spec("corona(cycle(2), null(1))"), &cfg).unwrap_err();
        assert_eq!(exit_code(&err), 2);
    }

    #[test]
    fn compare_examples() {
        let cfg = RunConfig::default();
        let recs = cmd_compare(&parse_target("corona(cycle(3), cycle(3))").unwrap(), &cfg).unwrap();
        let depth = recs.iter().find(|r| r.invariant == "depth").unwrap();
        assert_eq!((depth.formula, depth.oracle), (3, 3));
        let recs = cmd_compare(&parse_target("bristle(path(2),1)").unwrap(), &cfg).unwrap();
        let s = recs.iter().find(|r| r.invariant == "sdepth").unwrap();
        assert_eq!((s.formula, s.oracle, s.relation), (2, 2, "="));
        assert!(all_match(&recs));
    }

    #[test]
    fn compare_is_order_stable_across_worker_counts() {
        let targets = parse_target("path(1..3) x {null(1..2), path(2..3), complete(2..3)}").unwrap();
        let one = cmd_compare(&targets, &RunConfig { jobs: Some(1), ..RunConfig::default() }).unwrap();
        let many = cmd_compare(&targets, &RunConfig { jobs: Some(4), ..RunConfig::default() }).unwrap();
        assert!(all_match(&one));
        assert_eq!(records_text(&one), records_text(&many));
    }

    #[test]
    fn tables() {
        let cfg = RunConfig::default();
        let rows = cmd_table("path", &TableRanges::default(), &cfg).unwrap();
        assert_eq!(rows.len(), 16);
        let empty = TableRanges { n: vec![], ..TableRanges::default() };
        let csv = table_csv(&cmd_table("path", &empty, &cfg).unwrap());
        assert_eq!(csv, format!("{}\n", CSV_HEADER.join(",")));
        assert!(matches!(cmd_table("tree", &TableRanges::default(), &cfg), Err(Error::Parse { .. })));
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(parse_range("3").unwrap(), vec![3]);
        assert!(parse_range("4..1").unwrap().is_empty());
        assert!(parse_range("a..2").is_err());
    }
}
