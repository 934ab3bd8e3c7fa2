use std::sync::mpsc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use super::registry::{CaseSpec, Center, Operation, Registry, Source, SurfaceSource};
use crate::delpezzo::{
    check_smooth_ci, construct_surface, count_nodes, linked_surface, multisecant_residual,
    project_from_trisecant_point, project_surface, Attempted, ProjectionSpec, SurfaceRecipe,
};
use crate::error::{Error, Result};
use crate::idealops::{saturate_irrelevant, Ideal, Seed};
use crate::invariants::{
    betti_table_with, generator_census, graded_piece_dimension, hilbert_function, regularity, BettiOptions,
};
use crate::numerology::{assemble_table1, ci_chern, porteous_nodes, CISpec, SurfaceChern};
use crate::polyring::{Field, PrimeField, Rationals, DEFAULT_PRIME};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldChoice {
    Prime(u32),
    Rationals,
}

impl Default for FieldChoice {
    fn default() -> Self {
        FieldChoice::Prime(DEFAULT_PRIME)
    }
}

impl FieldChoice {
    pub fn label(self) -> String {
        match self {
            FieldChoice::Prime(p) => format!("GF({p})"),
            FieldChoice::Rationals => "QQ".to_string(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    /// Overrides the default seed 7.
    pub seed: Option<Seed>,
    pub field: FieldChoice,
    pub timeout: Option<Duration>,
}

impl RunOptions {
    pub fn seed(&self) -> Seed {
        self.seed.unwrap_or_default()
    }
}

/// Computed values and the number of extra random draws that were needed.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub values: Map<String, Value>,
    pub retries: u32,
}

fn retries<T>(a: &Attempted<T>) -> u32 {
    a.attempts.saturating_sub(1)
}

fn object(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("json! object literal"),
    }
}

/// Builds the surface ideal described by `source`.
pub fn build_surface<F: Field>(source: &SurfaceSource, field: &F, seed: Seed) -> Result<Attempted<Ideal<F>>> {
    match source.center {
        Center::TrisecantPlane => {
            if source.projections != 1 || source.surface != crate::delpezzo::SurfaceKind::D8 {
                return Err(Error::InvalidInput("a trisecant-plane center needs D8 projected once".into()));
            }
            project_from_trisecant_point(field, seed)
        }
        Center::Generic if source.projections == 0 => {
            construct_surface(SurfaceRecipe::new(source.surface, seed), field)
        }
        Center::Generic => project_surface(
            ProjectionSpec { recipe: SurfaceRecipe::new(source.surface, seed), times: source.projections, seed },
            field,
        ),
    }
}

pub fn build_source<F: Field>(source: &Source, field: &F, seed: Seed) -> Result<Attempted<Ideal<F>>> {
    match source {
        Source::Surface(s) => build_surface(s, field, seed),
        Source::Ideal(json) => Ok(Attempted { value: Ideal::from_json(json, field.clone())?, seed, attempts: 1 }),
    }
}

/// Runs an operation over `field`.
pub fn execute<F: Field>(op: &Operation, field: &F, seed: Seed) -> Result<Outcome> {
    let surface = |source: &Source| build_source(source, field, seed);
    let (values, retries) = match op {
        Operation::Census { source } => {
            let s = surface(source)?;
            (json!({ "census": generator_census(&s.value)? }), retries(&s))
        }
        Operation::Betti { source, max_index, degree_bound } => {
            let s = surface(source)?;
            let opts = BettiOptions { max_index: max_index.unwrap_or(usize::MAX), degree_bound: *degree_bound, seed };
            let t = betti_table_with(&s.value, opts)?;
            (
                json!({
                    "ranks": t.ranks(),
                    "regularity": t.regularity(),
                    "complete": t.is_complete(),
                    "table": t,
                }),
                retries(&s),
            )
        }
        Operation::Residual { source, degree } => {
            let s = surface(source)?;
            let r = multisecant_residual(&s.value, *degree, seed)?;
            (serde_json::to_value(&r)?, retries(&s))
        }
        Operation::Nodes { source, multidegree } => {
            let s = surface(source)?;
            let n = count_nodes(&s.value, multidegree, seed)?;
            (
                json!({
                    "dimension": n.value.dimension,
                    "nodes": n.value.degree,
                    "nodes_on_surface": n.value.nodes_on_surface,
                    "reduced": n.value.reduced,
                }),
                retries(&s) + retries(&n),
            )
        }
        Operation::SmoothCi { source, multidegree } => {
            let s = surface(source)?;
            (json!({ "smooth": check_smooth_ci(&s.value, multidegree, seed)? }), retries(&s))
        }
        Operation::GradedDimension { source, degree } => {
            let s = surface(source)?;
            (json!({ "dim": graded_piece_dimension(&s.value, *degree)? }), retries(&s))
        }
        Operation::CutSaturation { source, cut_degree, degree } => {
            let s = surface(source)?;
            let cut = s.value.minimalized()?.truncate_generators(*cut_degree);
            let sat = saturate_irrelevant(&cut, seed)?.ideal;
            (
                json!({
                    "dim": graded_piece_dimension(&sat, *degree)?,
                    "regularity": regularity(&sat)?,
                    "census": generator_census(&sat)?,
                }),
                retries(&s),
            )
        }
        Operation::Link { source, ci_degrees, degree } => {
            let s = surface(source)?;
            let l = linked_surface(&s.value, ci_degrees, seed)?;
            let gap = hilbert_function(&l.value.complete_intersection, *degree)? as i64
                - hilbert_function(&l.value.linked, *degree)? as i64;
            let mut v = serde_json::to_value(&l.value)?;
            v["gap"] = json!(gap);
            (v, retries(&s) + retries(&l))
        }
        Operation::Table1Row { row } => {
            let t = assemble_table1()?;
            let r =
                t.0.iter().find(|r| r.row == *row).ok_or_else(|| Error::OutOfRange(format!("no table row {row}")))?;
            (
                json!({
                    "h3": r.contraction.map(|c| c.g3),
                    "h0": r.contraction.map(|c| c.h0),
                    "c2": r.contraction.map(|c| c.c2g),
                    "euler_smoothed": r.euler_smoothed,
                    "nodes": r.nodes,
                    "porteous_nodes": r.porteous_nodes,
                    "euler_x": r.euler_x,
                    "euler_y": r.euler_y,
                    "smoothing_defect": r.smoothing_defect,
                }),
                0,
            )
        }
        Operation::CiChern { ambient, degrees } => {
            let c = ci_chern(&CISpec::new(*ambient, degrees)?);
            (serde_json::to_value(c)?, 0)
        }
        Operation::Porteous { ambient, degrees, del_pezzo_degree } => {
            let n = porteous_nodes(*ambient, degrees, SurfaceChern::del_pezzo(*del_pezzo_degree))?;
            (json!({ "nodes": n }), 0)
        }
    };
    Ok(Outcome { values: object(values), retries })
}

/// Second characteristic for Betti tables computed over a prime field.
pub const CROSS_CHECK_PRIME: u32 = 32749;

pub fn execute_with(op: &Operation, field: FieldChoice, seed: Seed) -> Result<Outcome> {
    match field {
        FieldChoice::Prime(p) => {
            let mut outcome = execute(op, &PrimeField::new(p)?, seed)?;
            if matches!(op, Operation::Betti { .. }) {
                let q = if p == CROSS_CHECK_PRIME { DEFAULT_PRIME } else { CROSS_CHECK_PRIME };
                // An explicit ideal's coefficients are re-read as integers mod q.
                let mut op_q = op.clone();
                if let Operation::Betti { source: Source::Ideal(json), .. } = &mut op_q {
                    json.ring.char = u64::from(q);
                }
                let other = execute(&op_q, &PrimeField::new(q)?, seed)?;
                let agree = other.values.get("table") == outcome.values.get("table");
                if !agree {
                    log::warn!("Betti table over GF({p}) differs from the one over GF({q})");
                }
                outcome.values.insert("other_prime".into(), json!(q));
                outcome.values.insert("primes_agree".into(), json!(agree));
            }
            Ok(outcome)
        }
        FieldChoice::Rationals => execute(op, &Rationals, seed),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Every seed in the retry window gave a non-generic draw.
    DegenerateRetry,
    /// Timed out.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Mismatch {
    pub key: String,
    pub expected: Value,
    pub computed: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseReport {
    pub case_id: String,
    pub status: Status,
    pub computed: Map<String, Value>,
    pub diff: Vec<Mismatch>,
    pub error: Option<String>,
    pub seed: u64,
    pub field: String,
    pub retries: u32,
    /// The only field that varies between identical runs.
    pub wall_time_ms: u64,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// The report with its timing zeroed, for byte comparisons.
    pub fn without_timing(&self) -> CaseReport {
        CaseReport { wall_time_ms: 0, ..self.clone() }
    }

    /// One line: id, status, and the compared values or the diff.
    pub fn summary_line(&self) -> String {
        let detail = if let Some(e) = &self.error {
            e.clone()
        } else if !self.diff.is_empty() {
            self.diff
                .iter()
                .map(|m| format!("{}: expected {}, got {}", m.key, m.expected, m.computed))
                .collect::<Vec<_>>()
                .join("; ")
        } else {
            String::new()
        };
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::DegenerateRetry => "degenerate-retry",
            Status::Skipped => "skipped",
        };
        format!("{:<40} {:<16} {:>7}ms  {}", self.case_id, status, self.wall_time_ms, detail).trim_end().to_string()
    }
}

fn compare(case: &CaseSpec, computed: &Map<String, Value>) -> Vec<Mismatch> {
    case.expected
        .iter()
        .filter_map(|(key, e)| {
            let got = computed.get(key).cloned().unwrap_or(Value::Null);
            (got != e.value).then(|| Mismatch { key: key.clone(), expected: e.value.clone(), computed: got })
        })
        .collect()
}

fn run_with_timeout(op: &Operation, opts: &RunOptions) -> Option<Result<Outcome>> {
    let seed = opts.seed();
    match opts.timeout {
        None => Some(execute_with(op, opts.field, seed)),
        Some(limit) => {
            let (tx, rx) = mpsc::channel();
            let op = op.clone();
            let field = opts.field;
            // A timed-out worker is abandoned; it holds no shared state.
            std::thread::spawn(move || {
                let _ = tx.send(execute_with(&op, field, seed));
            });
            rx.recv_timeout(limit).ok()
        }
    }
}

pub fn run_spec(case: &CaseSpec, opts: &RunOptions) -> CaseReport {
    let start = Instant::now();
    let result = run_with_timeout(&case.run, opts);
    let mut report = CaseReport {
        case_id: case.id.clone(),
        status: Status::Pass,
        computed: Map::new(),
        diff: Vec::new(),
        error: None,
        seed: opts.seed().value(),
        field: opts.field.label(),
        retries: 0,
        wall_time_ms: 0,
    };
    match result {
        None => {
            report.status = Status::Skipped;
            report.error = Some("timed out".into());
        }
        Some(Err(e)) => {
            report.status = if matches!(e, Error::Degenerate { .. }) { Status::DegenerateRetry } else { Status::Fail };
            report.error = Some(e.to_string());
        }
        Some(Ok(outcome)) => {
            report.diff = compare(case, &outcome.values);
            report.computed = outcome.values;
            report.retries = outcome.retries;
            if !report.diff.is_empty() {
                report.status = Status::Fail;
            }
        }
    }
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    report
}

/// Runs one registered case.
pub fn run_case(registry: &Registry, id: &str, opts: &RunOptions) -> Result<CaseReport> {
    Ok(run_spec(registry.get(id)?, opts))
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteSummary {
    pub passed: usize,
    pub failed: usize,
    pub degenerate: usize,
    pub skipped: usize,
    pub reports: Vec<CaseReport>,
}

impl SuiteSummary {
    fn from_reports(reports: Vec<CaseReport>) -> Self {
        let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
        SuiteSummary {
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            degenerate: count(Status::DegenerateRetry),
            skipped: count(Status::Skipped),
            reports,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.passed == self.reports.len()
    }
}

/// Runs every case whose id or suite matches `filter` (all cases when
/// empty), concurrently; reports keep registry order.
pub fn run_suite(registry: &Registry, filter: &str, opts: &RunOptions) -> SuiteSummary {
    let cases: Vec<&CaseSpec> = registry.filter(filter).collect();
    let reports = cases.par_iter().map(|c| run_spec(c, opts)).collect();
    SuiteSummary::from_reports(reports)
}

/// Consecutive seeds tried by a sweep.
pub const SWEEP_WIDTH: u64 = 5;
/// Passing seeds a sweep needs for the case to count as stable.
pub const SWEEP_QUORUM: usize = 4;

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub case_id: String,
    pub seeds: Vec<u64>,
    pub statuses: Vec<Status>,
    pub passes: usize,
    /// Passed at the first seed of the window.
    pub base_pass: bool,
    /// At least four of the five seeds passed.
    pub stable: bool,
}

/// Runs `case` at seeds `s, s+1, ..., s+4`. Cases that do not depend on the
/// seed run once.
pub fn sweep_case(case: &CaseSpec, opts: &RunOptions) -> (SweepReport, Vec<CaseReport>) {
    let base = opts.seed().value();
    let width = if case.run.is_seeded() { SWEEP_WIDTH } else { 1 };
    let seeds: Vec<u64> = (base..base + width).collect();
    let reports: Vec<CaseReport> =
        seeds.par_iter().map(|&s| run_spec(case, &RunOptions { seed: Some(Seed(s)), ..*opts })).collect();
    let passes = reports.iter().filter(|r| r.passed()).count();
    let stable = if width == 1 { passes == 1 } else { passes >= SWEEP_QUORUM };
    let report = SweepReport {
        case_id: case.id.clone(),
        seeds,
        statuses: reports.iter().map(|r| r.status).collect(),
        passes,
        base_pass: reports[0].passed(),
        stable,
    };
    (report, reports)
}

pub fn sweep_suite(registry: &Registry, filter: &str, opts: &RunOptions) -> Vec<SweepReport> {
    let cases: Vec<&CaseSpec> = registry.filter(filter).collect();
    cases.par_iter().map(|c| sweep_case(c, opts).0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_case_is_an_error() {
        let r = Registry::builtin().unwrap();
        let err = run_case(&r, "nosuchcase", &RunOptions::default()).unwrap_err();
        assert!(err.to_string().contains("unknown case"));
    }

    #[test]
    fn table_case_passes() {
        let r = Registry::builtin().unwrap();
        let rep = run_case(&r, "table1-row9", &RunOptions::default()).unwrap();
        assert_eq!(rep.status, Status::Pass, "{}", rep.summary_line());
        assert_eq!(rep.computed["h3"], json!(24));
    }

    #[test]
    fn mismatch_produces_diff() {
        let text = r#"{"cases":[{"id":"a","suites":["x"],"anchor":"","run":{"op":"table1_row","row":1},
            "expected":{"h3":{"value":15,"provenance":"published"}}}]}"#;
        let r = Registry::parse(text).unwrap();
        let rep = run_case(&r, "a", &RunOptions::default()).unwrap();
        assert_eq!(rep.status, Status::Fail);
        assert_eq!(rep.diff, vec![Mismatch { key: "h3".into(), expected: json!(15), computed: json!(14) }]);
    }

    #[test]
    fn unseeded_cases_sweep_once() {
        let r = Registry::builtin().unwrap();
        let (s, _) = sweep_case(r.get("table1-row3").unwrap(), &RunOptions::default());
        assert_eq!(s.seeds.len(), 1);
        assert!(s.stable && s.base_pass);
    }
}
