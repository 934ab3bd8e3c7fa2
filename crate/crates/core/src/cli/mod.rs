//! Command-line harness: constructions, invariants and registered cases.

mod registry;
mod runner;

pub use registry::{
    CaseSpec, Center, Expected, Operation, Provenance, Registry, Source, SurfaceSource, BUILTIN_REGISTRY,
};
pub use runner::{
    build_source, build_surface, execute, execute_with, run_case, run_spec, run_suite, sweep_case, sweep_suite,
    CaseReport, FieldChoice, Mismatch, Outcome, RunOptions, Status, SuiteSummary, SweepReport, CROSS_CHECK_PRIME,
    SWEEP_QUORUM, SWEEP_WIDTH,
};

use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::delpezzo::SurfaceKind;
use crate::error::{Error, Result};
use crate::idealops::{IdealJson, Seed};
use crate::invariants::{generator_census, BettiTable};
use crate::numerology::assemble_table1;
use crate::polyring::{Field, PrimeField, Rationals, DEFAULT_PRIME};

#[derive(Parser, Debug)]
#[command(name = "dpcy", version, about = "Projected del Pezzo surfaces and nodal Calabi-Yau complete intersections")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    /// Characteristic of the coefficient field [default: 32003, or the one an
    /// --ideal file declares].
    #[arg(long, global = true)]
    pub prime: Option<u32>,
    /// `Q` for exact rational arithmetic instead of GF(prime).
    #[arg(long, global = true, value_parser = parse_field_name)]
    pub field: Option<FieldName>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Per-case time limit in seconds.
    #[arg(long, global = true)]
    pub timeout: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldName {
    Prime,
    Rationals,
}

fn parse_field_name(s: &str) -> std::result::Result<FieldName, String> {
    match s {
        "Q" | "QQ" | "q" => Ok(FieldName::Rationals),
        "Fp" | "GF" | "fp" | "gf" => Ok(FieldName::Prime),
        _ => Err(format!("unknown field `{s}` (use Q or Fp)")),
    }
}

impl Common {
    pub fn field_choice(&self) -> FieldChoice {
        match self.field {
            Some(FieldName::Rationals) => FieldChoice::Rationals,
            _ => FieldChoice::Prime(self.prime.unwrap_or(DEFAULT_PRIME)),
        }
    }

    /// The field flags, or the field an explicit ideal declares when no flag is given.
    fn field_for(&self, source: Option<&Source>) -> Result<FieldChoice> {
        match (self.field, self.prime, source) {
            (None, None, Some(Source::Ideal(json))) => Ok(match json.ring.char {
                0 => FieldChoice::Rationals,
                p => FieldChoice::Prime(
                    u32::try_from(p).map_err(|_| Error::InvalidField(format!("characteristic {p} is too large")))?,
                ),
            }),
            _ => Ok(self.field_choice()),
        }
    }

    pub fn run_options(&self) -> RunOptions {
        RunOptions {
            seed: Some(Seed(self.seed)),
            field: self.field_choice(),
            timeout: self.timeout.map(Duration::from_secs),
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    /// One of D6, D7, D8, F1.
    #[arg(long, value_parser = parse_surface, required_unless_present = "ideal")]
    pub surface: Option<SurfaceKind>,
    /// Number of generic projections.
    #[arg(long, default_value_t = 0)]
    pub times: usize,
    /// Project D8 once from a general point of a trisecant plane.
    #[arg(long)]
    pub trisecant: bool,
    /// A JSON ideal `{"ring": {"vars": [...], "char": p}, "gens": [...]}`.
    #[arg(long, conflicts_with = "surface")]
    pub ideal: Option<PathBuf>,
}

fn parse_surface(s: &str) -> std::result::Result<SurfaceKind, String> {
    SurfaceKind::parse(s).ok_or_else(|| format!("unknown surface `{s}` (use D6, D7, D8 or F1)"))
}

impl InputArgs {
    fn source(&self) -> Result<Source> {
        if let Some(path) = &self.ideal {
            let json: IdealJson = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            return Ok(Source::Ideal(json));
        }
        let surface = self.surface.ok_or_else(|| Error::InvalidInput("--surface or --ideal is required".into()))?;
        let center = if self.trisecant { Center::TrisecantPlane } else { Center::Generic };
        let projections = if self.trisecant { self.times.max(1) } else { self.times };
        Ok(Source::Surface(SurfaceSource { surface, projections, center }))
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the anticanonical model of a del Pezzo surface.
    Construct {
        #[arg(long, value_parser = parse_surface)]
        surface: SurfaceKind,
        #[command(flatten)]
        common: Common,
    },
    /// Project a surface generically (or from a trisecant-plane point).
    Project {
        #[arg(long, value_parser = parse_surface)]
        surface: SurfaceKind,
        #[arg(long, default_value_t = 1)]
        times: usize,
        #[arg(long)]
        trisecant: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Minimal generators by degree.
    Census {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Graded Betti table.
    Betti {
        #[command(flatten)]
        input: InputArgs,
        /// Stop after this homological index.
        #[arg(long)]
        max_index: Option<usize>,
        /// Ignore internal degrees above this bound.
        #[arg(long)]
        degree_bound: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Residual scheme of the generators of degree at most `degree`.
    Residual {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        degree: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Singular points of a general complete intersection through the input.
    Nodes {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated degrees, e.g. 2,2,3.
        #[arg(long, value_delimiter = ',', required = true)]
        multidegree: Vec<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// The scheme linked to the input by a general complete intersection.
    Link {
        #[command(flatten)]
        input: InputArgs,
        /// Degrees of the linking complete intersection, e.g. 3,3,3.
        #[arg(long, value_delimiter = ',', required = true)]
        ci: Vec<u32>,
        /// Degree at which `dim I_linked - dim I_CI` is reported.
        #[arg(long, default_value_t = 4)]
        degree: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Recompute the table of Calabi-Yau threefolds.
    Table1 {
        #[command(flatten)]
        common: Common,
    },
    /// Run registered cases against their expected values.
    Repro {
        /// Case ids; repeatable.
        #[arg(long = "case")]
        cases: Vec<String>,
        /// Suite name; empty runs everything.
        #[arg(long, default_value = "")]
        suite: String,
        /// Run seeds s..s+4 and require four passes.
        #[arg(long)]
        sweep: bool,
        /// Alternative registry file.
        #[arg(long)]
        registry: Option<PathBuf>,
        /// List cases instead of running them.
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        common: Common,
    },
}

fn print_value(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn ideal_output<F: Field>(source: &Source, field: &F, common: &Common) -> Result<Value> {
    let built = build_source(source, field, Seed(common.seed))?;
    Ok(json!({
        "source": source.label(),
        "seed": common.seed,
        "attempts": built.attempts,
        "census": generator_census(&built.value)?,
        "ideal": built.value.to_json(),
    }))
}

fn show_ideal(source: Source, common: &Common) -> Result<bool> {
    let v = match common.field_for(Some(&source))? {
        FieldChoice::Prime(p) => ideal_output(&source, &PrimeField::new(p)?, common)?,
        FieldChoice::Rationals => ideal_output(&source, &Rationals, common)?,
    };
    if common.json {
        print_value(&v);
    } else {
        println!("{} (seed {}, {} attempt(s))", v["source"].as_str().unwrap_or(""), v["seed"], v["attempts"]);
        println!("census {}", serde_json::from_value::<crate::invariants::GeneratorCensus>(v["census"].clone())?);
        for g in v["ideal"]["gens"].as_array().into_iter().flatten() {
            println!("  {}", g.as_str().unwrap_or(""));
        }
    }
    Ok(true)
}

fn run_operation(op: Operation, common: &Common) -> Result<bool> {
    let outcome = execute_with(&op, common.field_for(op.source())?, Seed(common.seed))?;
    let values = Value::Object(outcome.values);
    if common.json {
        print_value(&json!({ "retries": outcome.retries, "values": values }));
        return Ok(true);
    }
    if let Operation::Betti { .. } = op {
        let table: BettiTable = serde_json::from_value(values["table"].clone())?;
        print!("{table}");
        if !table.is_complete() {
            println!("(truncated)");
        }
        return Ok(true);
    }
    for (k, v) in values.as_object().expect("object") {
        println!("{k}: {v}");
    }
    Ok(true)
}

fn repro(
    cases: &[String],
    suite: &str,
    sweep: bool,
    registry: Option<&PathBuf>,
    list: bool,
    common: &Common,
) -> Result<bool> {
    let registry = match registry {
        Some(p) => Registry::load(p)?,
        None => Registry::builtin()?,
    };
    let opts = common.run_options();
    let selected: Vec<&CaseSpec> = if cases.is_empty() {
        registry.filter(suite).collect()
    } else {
        cases.iter().map(|id| registry.get(id)).collect::<Result<_>>()?
    };
    if list {
        for c in &selected {
            println!("{:<36} [{}] {}", c.id, c.suites.join(","), c.anchor);
        }
        return Ok(true);
    }
    if sweep {
        use rayon::prelude::*;
        let reports: Vec<SweepReport> = selected.par_iter().map(|c| sweep_case(c, &opts).0).collect();
        let ok = reports.iter().all(|r| r.base_pass && r.stable);
        if common.json {
            print_value(&serde_json::to_value(&reports)?);
        } else {
            for r in &reports {
                let verdict = if r.base_pass && r.stable { "stable" } else { "UNSTABLE" };
                println!("{:<40} {}/{} seeds  {}", r.case_id, r.passes, r.seeds.len(), verdict);
            }
        }
        return Ok(ok);
    }
    let summary = if cases.is_empty() {
        run_suite(&registry, suite, &opts)
    } else {
        use rayon::prelude::*;
        let reports: Vec<CaseReport> = selected.par_iter().map(|c| run_spec(c, &opts)).collect();
        let ok = reports.iter().all(CaseReport::passed);
        if common.json {
            print_value(&serde_json::to_value(&reports)?);
        } else {
            for r in &reports {
                println!("{}", r.summary_line());
            }
        }
        return Ok(ok);
    };
    if common.json {
        print_value(&serde_json::to_value(&summary)?);
    } else {
        for r in &summary.reports {
            println!("{}", r.summary_line());
        }
        println!(
            "{} passed, {} failed, {} degenerate, {} skipped",
            summary.passed, summary.failed, summary.degenerate, summary.skipped
        );
    }
    Ok(summary.all_passed())
}

/// Executes a parsed command; `Ok(false)` means a check failed.
pub fn dispatch(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Construct { surface, common } => {
            show_ideal(Source::Surface(SurfaceSource { surface, projections: 0, center: Center::Generic }), &common)
        }
        Command::Project { surface, times, trisecant, common } => {
            let center = if trisecant { Center::TrisecantPlane } else { Center::Generic };
            show_ideal(Source::Surface(SurfaceSource { surface, projections: times, center }), &common)
        }
        Command::Census { input, common } => run_operation(Operation::Census { source: input.source()? }, &common),
        Command::Betti { input, max_index, degree_bound, common } => {
            run_operation(Operation::Betti { source: input.source()?, max_index, degree_bound }, &common)
        }
        Command::Residual { input, degree, common } => {
            run_operation(Operation::Residual { source: input.source()?, degree }, &common)
        }
        Command::Nodes { input, multidegree, common } => {
            run_operation(Operation::Nodes { source: input.source()?, multidegree }, &common)
        }
        Command::Link { input, ci, degree, common } => {
            run_operation(Operation::Link { source: input.source()?, ci_degrees: ci, degree }, &common)
        }
        Command::Table1 { common } => {
            let table = assemble_table1()?;
            if common.json {
                print_value(&serde_json::to_value(&table)?);
            } else {
                print!("{table}");
            }
            Ok(true)
        }
        Command::Repro { cases, suite, sweep, registry, list, common } => {
            repro(&cases, &suite, sweep, registry.as_ref(), list, &common)
        }
    }
}

/// Entry point for the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
