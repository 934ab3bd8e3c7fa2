//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Seeded cases must pass at the default seed and at four of the five seeds
//! 7..=11. A few published values are not reproduced by any seed; those are
//! listed in `KNOWN_GAPS` with the value the computation gives instead. They
//! print as FAIL, and the run only errors when a gap moves or a new failure
//! appears.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use dpcy::cli::{
    build_surface, run_spec, sweep_case, CaseSpec, Registry, RunOptions, Source, SurfaceSource, SWEEP_QUORUM,
};
use dpcy::idealops::{saturate_irrelevant, CoordinateChange, Ideal, Seed};
use dpcy::invariants::{betti_table_with, generator_census, hilbert_series, BettiOptions};
use dpcy::polyring::PrimeField;
use serde_json::{json, Value};

struct KnownGap {
    case: &'static str,
    /// What the computation gives at every seed of the window.
    computed: fn() -> Value,
    why: &'static str,
}

const KNOWN_GAPS: [KnownGap; 4] = [
    KnownGap {
        case: "census-D8-trisecant-plane",
        computed: || json!({"census": {"2": 11, "3": 3}}),
        why: "the projected trisecant cone meets the quartic curve in a rational quartic, whose trisecants rule a quadric",
    },
    KnownGap {
        case: "residual-D8-trisecant-plane",
        computed: || json!({"dimension": 2, "degree": 2}),
        why: "the residual of the quadric cut is a smooth quadric surface, not a plane",
    },
    KnownGap {
        case: "nodes-D6-24",
        computed: || json!({"nodes": 42, "dimension": 0, "nodes_on_surface": true}),
        why: "the Chern-class count for a degree 6 del Pezzo in a (2,4) complete intersection is 42",
    },
    KnownGap {
        case: "nodes-D8-2222",
        computed: || json!({"nodes": 36, "dimension": 0, "nodes_on_surface": true}),
        why: "both degree 8 surfaces share Chern data and are cut out by quadrics, so both give 36",
    },
];

struct Criterion {
    number: u32,
    title: &'static str,
    cases: &'static [&'static str],
}

const CASE_CRITERIA: [Criterion; 5] = [
    Criterion {
        number: 1,
        title: "generator census of projected surfaces",
        cases: &[
            "census-F1-projected",
            "census-D8-projected",
            "census-D7-projected",
            "census-D6-projected",
            "census-KP",
            "census-LP",
        ],
    },
    Criterion {
        number: 2,
        title: "Betti tables of the anticanonical models",
        cases: &[
            "betti-D6",
            "betti-D7",
            "betti-D8",
            "betti-F1",
            "betti-D6-truncated",
            "betti-D7-truncated",
            "betti-D8-truncated",
            "betti-F1-truncated",
        ],
    },
    Criterion {
        number: 3,
        title: "residuals of low-degree cuts",
        cases: &["residual-F1-projected", "residual-KP", "residual-LP", "residual-D8-trisecant-plane"],
    },
    Criterion {
        number: 4,
        title: "node counts of complete intersections",
        cases: &[
            "nodes-D6-33",
            "nodes-D6-24",
            "nodes-D6-22",
            "nodes-D8-2222",
            "nodes-F1-2222",
            "nodes-D7-223",
            "nodes-D8-223",
            "nodes-D7-222",
            "nodes-D8-222",
        ],
    },
    Criterion {
        number: 5,
        title: "graded dimensions and the linkage gap",
        cases: &["graded-LP-quartics", "graded-SP0", "link-D6-333"],
    },
];

/// Criterion 6 covers the whole `table1` suite.
const TABLE_SUITE: &str = "table1";

/// Time limits for the Betti cases, by id suffix.
fn budget(case: &str) -> Option<Duration> {
    if case.starts_with("betti-") {
        Some(if case.ends_with("-truncated") { Duration::from_secs(120) } else { Duration::from_secs(1800) })
    } else {
        None
    }
}

#[derive(Default)]
struct Ledger {
    /// Failures that are not known gaps, or gaps that moved.
    unexpected: Vec<String>,
}

/// Runs one case over the seed window and returns a failure note, if any.
fn check_case(case: &CaseSpec, ledger: &mut Ledger) -> Option<String> {
    let opts = RunOptions::default();
    let (sweep, reports) = sweep_case(case, &opts);
    let base = &reports[0];
    let over_budget = budget(&case.id).filter(|b| Duration::from_millis(base.wall_time_ms) > *b);
    let known = KNOWN_GAPS.iter().find(|g| g.case == case.id);

    if sweep.base_pass && sweep.stable && over_budget.is_none() {
        if known.is_some() {
            ledger.unexpected.push(format!("{}: listed as a known gap but now passes", case.id));
        }
        return None;
    }
    if let Some(limit) = over_budget {
        let note = format!("{}: {} ms exceeds the {} s budget", case.id, base.wall_time_ms, limit.as_secs());
        ledger.unexpected.push(note.clone());
        return Some(note);
    }
    let detail = base.summary_line();
    let detail = detail.split_whitespace().collect::<Vec<_>>().join(" ");
    match known {
        Some(gap) => {
            let expected = (gap.computed)();
            let agree = reports
                .iter()
                .filter(|r| expected.as_object().unwrap().iter().all(|(k, v)| r.computed.get(k) == Some(v)))
                .count();
            if !reports[0].computed.is_empty() && agree < SWEEP_QUORUM.min(reports.len()) {
                ledger.unexpected.push(format!("{}: known gap changed value: {detail}", case.id));
            }
            Some(format!("{detail} [known: {}] ({agree}/{} seeds give this value)", gap.why, reports.len()))
        }
        None => {
            ledger.unexpected.push(detail.clone());
            Some(format!("{detail} ({}/{} seeds)", sweep.passes, sweep.seeds.len()))
        }
    }
}

fn print_line(number: u32, title: &str, failures: &[String], total: usize, elapsed: Duration) {
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!(
        "criterion {number}: {verdict}  {title}  ({}/{total} checks, {:.1} s)",
        total - failures.len(),
        elapsed.as_secs_f64()
    );
    for f in failures {
        println!("    - {f}");
    }
}

/// Every distinct surface that some case builds, at the default seed.
fn registry_surfaces(registry: &Registry) -> Vec<SurfaceSource> {
    let mut seen = Vec::new();
    for case in registry.cases() {
        let Some(source) = case.run.source() else { continue };
        if let Source::Surface(s) = source {
            if !seen.contains(s) {
                seen.push(s.clone());
            }
        }
    }
    seen
}

/// The structural identities on one ideal; returns the ones that fail.
fn properties(label: &str, ideal: &Ideal<PrimeField>, seed: Seed) -> Vec<String> {
    let mut bad = Vec::new();
    let mut check = |name: &str, ok: dpcy::Result<bool>| match ok {
        Ok(true) => {}
        Ok(false) => bad.push(format!("{label}: {name}")),
        Err(e) => bad.push(format!("{label}: {name}: {e}")),
    };
    check("Buchberger criterion", ideal.gb().map(|gb| gb.satisfies_buchberger_criterion()));
    match (betti_table_with(ideal, BettiOptions::default()), hilbert_series(ideal)) {
        (Ok(table), Ok(hs)) => {
            check("Betti numbers give the Hilbert numerator", Ok(table.hilbert_numerator() == hs.numerator()));
            let reg = table.regularity().unwrap_or(0).max(0);
            check(
                "Hilbert function equals Hilbert polynomial from the regularity on",
                Ok((reg..reg + 4).all(|d| hs.hilbert_function(d as u32) == hs.hilbert_polynomial(d))),
            );
        }
        (Err(e), _) | (_, Err(e)) => check("Betti table and Hilbert series", Err(e)),
    }
    check("saturation fixed point", saturate_irrelevant(ideal, seed).and_then(|s| s.ideal.same_ideal(ideal)));
    check("census invariant under a coordinate change", {
        let ch = CoordinateChange::random(ideal.ring().field(), ideal.ring().nvars(), seed, "acceptance", 100);
        ch.apply(ideal).and_then(|j| Ok(generator_census(&j)? == generator_census(ideal)?))
    });
    bad
}

fn main() -> ExitCode {
    let registry = Registry::builtin().expect("builtin registry parses");
    let mut ledger = Ledger::default();
    let mut covered = BTreeSet::new();
    println!("acceptance run: default seed 7, seed window 7..=11, GF(32003)");

    for criterion in &CASE_CRITERIA {
        let start = Instant::now();
        let failures: Vec<String> = criterion
            .cases
            .iter()
            .filter_map(|id| {
                covered.insert(id.to_string());
                let case = registry.get(id).expect("case in registry");
                check_case(case, &mut ledger)
            })
            .collect();
        print_line(criterion.number, criterion.title, &failures, criterion.cases.len(), start.elapsed());
    }

    let start = Instant::now();
    let table: Vec<&CaseSpec> = registry.filter(TABLE_SUITE).collect();
    let failures: Vec<String> = table
        .iter()
        .filter_map(|case| {
            covered.insert(case.id.clone());
            check_case(case, &mut ledger)
        })
        .collect();
    print_line(6, "Calabi-Yau table from Chern data", &failures, table.len(), start.elapsed());

    let start = Instant::now();
    let field = PrimeField::default();
    let seed = Seed::default();
    let surfaces = registry_surfaces(&registry);
    let mut failures = Vec::new();
    for s in &surfaces {
        match build_surface(s, &field, seed) {
            Ok(built) => failures.extend(properties(&s.label(), &built.value, seed)),
            Err(e) => failures.push(format!("{}: {e}", s.label())),
        }
    }
    let opts = RunOptions::default();
    let first: Vec<_> = registry.cases().iter().map(|c| run_spec(c, &opts).without_timing()).collect();
    let second: Vec<_> = registry.cases().iter().map(|c| run_spec(c, &opts).without_timing()).collect();
    let (a, b) = (serde_json::to_string(&first).unwrap(), serde_json::to_string(&second).unwrap());
    if a != b {
        failures.push("reports differ between two runs of the registry".to_string());
    }
    ledger.unexpected.extend(failures.iter().cloned());
    print_line(
        7,
        "structural properties on every surface, run-to-run determinism",
        &failures,
        surfaces.len() * 5 + 1,
        start.elapsed(),
    );

    let start = Instant::now();
    let failures: Vec<String> = common::staircase_trials(20, 100).err().into_iter().collect();
    ledger.unexpected.extend(failures.iter().cloned());
    print_line(8, "reduced bases against the Macaulay staircase (100 trials)", &failures, 1, start.elapsed());

    // Cases outside the criteria still have to behave.
    let rest: Vec<&CaseSpec> = registry.cases().iter().filter(|c| !covered.contains(&c.id)).collect();
    let failures: Vec<String> = rest.iter().filter_map(|c| check_case(c, &mut ledger)).collect();
    println!(
        "other registry cases: {}/{} pass{}",
        rest.len() - failures.len(),
        rest.len(),
        if failures.is_empty() { String::new() } else { ":".to_string() }
    );
    for f in &failures {
        println!("    - {f}");
    }

    if ledger.unexpected.is_empty() {
        println!("no failures beyond the {} known gaps", KNOWN_GAPS.len());
        ExitCode::SUCCESS
    } else {
        println!("unexpected:");
        for u in &ledger.unexpected {
            println!("    - {u}");
        }
        ExitCode::FAILURE
    }
}
