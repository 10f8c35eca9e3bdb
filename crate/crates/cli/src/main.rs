//! `picard`: run analyses on bundled fixtures or JSON documents, or scan
//! random surfaces over a prime field.
//!
//! Exit status: 0 when every report is clean, 1 when a report records a
//! failed assertion or an operation error, 2 on I/O, parse or usage errors.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use picard_core::lab::{
    analyze_curve, analyze_surface, charp_scan, AnalysisOptions, CurveReport, Operation, Recipe, ScanConfig,
};
use picard_core::linalg::{write_dump, EngineOptions};
use picard_core::{fixtures, load_plane_curve, load_surface, AdjointStrategy, AnalysisReport, Error, FieldDescriptor};
use rayon::prelude::*;
use serde_json::json;

#[derive(Parser)]
#[command(name = "picard", version, about = "Picard relations, adjoint systems and 1-form closedness on surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze surfaces or plane curves, given as fixture names or JSON files.
    Analyze(AnalyzeArgs),
    /// Search random surfaces over F_p for solutions with nonzero defect.
    Scan(ScanArgs),
    /// List the bundled fixtures.
    Fixtures,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(required = true)]
    inputs: Vec<String>,
    /// Comma-separated operations; defaults to every surface operation, or
    /// `czlemma` for curves.
    #[arg(long, value_delimiter = ',')]
    ops: Option<Vec<String>>,
    /// `rationals` or `prime:<p>`; rational inputs are reduced mod p.
    #[arg(long)]
    field: Option<FieldDescriptor>,
    /// Seed for the modular prime choices.
    #[arg(long, default_value_t = EngineOptions::default().seed)]
    seed: u64,
    /// Report file for one input, or a directory for several.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory receiving the assembled coefficient matrices.
    #[arg(long)]
    dump_matrices: Option<PathBuf>,
    #[arg(long)]
    strategy: Option<AdjointStrategy>,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    degree: u32,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = Recipe::Smooth)]
    recipe: Recipe,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Input-level problem: unreadable, unparsable or inconsistent.
struct InputError {
    input: String,
    kind: String,
    message: String,
}

impl InputError {
    fn new(input: &str, kind: &str, message: impl Into<String>) -> Self {
        InputError { input: input.to_string(), kind: kind.to_string(), message: message.into() }
    }

    fn from_core(input: &str, e: &Error) -> Self {
        InputError::new(input, e.kind(), e.to_string())
    }

    fn emit(&self) {
        eprintln!("{}", json!({"input": self.input, "kind": self.kind, "message": self.message}));
    }
}

enum Loaded {
    Surface(picard_core::SurfaceModel),
    Curve(picard_core::PlaneCurve),
}

enum Report {
    Surface(AnalysisReport),
    Curve(CurveReport),
}

impl Report {
    fn name(&self) -> &str {
        match self {
            Report::Surface(r) => &r.surface,
            Report::Curve(r) => &r.curve,
        }
    }

    fn json(&self) -> String {
        match self {
            Report::Surface(r) => r.to_json(),
            Report::Curve(r) => r.to_json(),
        }
    }

    /// Failures and operation errors as machine-readable records.
    fn problems(&self, input: &str) -> Vec<serde_json::Value> {
        let (failures, errors) = match self {
            Report::Surface(r) => (&r.failures, &r.errors),
            Report::Curve(r) => (&r.failures, &r.errors),
        };
        let mut out: Vec<serde_json::Value> = failures
            .iter()
            .map(|f| json!({"input": input, "kind": "AssertionFailure", "message": f}))
            .collect();
        out.extend(errors.iter().map(|e| json!({"input": input, "op": e.op, "kind": e.kind, "message": e.message})));
        out
    }
}

fn load(input: &str, field: Option<FieldDescriptor>) -> Result<Loaded, InputError> {
    let path = Path::new(input);
    let loaded = if path.exists() {
        let text = fs::read_to_string(path).map_err(|e| InputError::new(input, "Io", e.to_string()))?;
        let value: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| InputError::new(input, "ParseError", e.to_string()))?;
        if value.get("F").is_some() {
            Loaded::Surface(load_surface(&text).map_err(|e| InputError::from_core(input, &e))?)
        } else if value.get("g").is_some() {
            Loaded::Curve(load_plane_curve(&text).map_err(|e| InputError::from_core(input, &e))?)
        } else {
            return Err(InputError::new(input, "ParseError", "document has neither an \"F\" nor a \"g\" key"));
        }
    } else if fixtures::is_surface(input) {
        Loaded::Surface(fixtures::surface(input).map_err(|e| InputError::from_core(input, &e))?)
    } else if fixtures::curve_source(input).is_some() {
        Loaded::Curve(fixtures::curve(input).map_err(|e| InputError::from_core(input, &e))?)
    } else {
        return Err(InputError::new(input, "Io", "no such file or bundled fixture"));
    };
    let Some(target) = field else { return Ok(loaded) };
    let current = match &loaded {
        Loaded::Surface(s) => s.field,
        Loaded::Curve(c) => c.field(),
    };
    if current == target {
        return Ok(loaded);
    }
    if current != FieldDescriptor::Rationals {
        return Err(InputError::new(input, "InvalidField", format!("input is over {current}, cannot move to {target}")));
    }
    let reduced = match loaded {
        Loaded::Surface(s) => s.reduce_to(target).map(Loaded::Surface),
        Loaded::Curve(c) => c.reduce_to(target).map(Loaded::Curve),
    };
    reduced.map_err(|e| InputError::from_core(input, &e))
}

fn parse_ops(ops: &Option<Vec<String>>) -> Result<Option<BTreeSet<Operation>>, String> {
    let Some(list) = ops else { return Ok(None) };
    let mut set = BTreeSet::new();
    for name in list.iter().map(|s| s.trim()).filter(|s| !s.is_empty()) {
        let op: Operation = name.parse()?;
        if op == Operation::Scan {
            return Err("`scan` takes no inputs; run `picard scan` instead".into());
        }
        set.insert(op);
    }
    if set.is_empty() {
        return Err("at least one operation is required".into());
    }
    Ok(Some(set))
}

fn default_surface_ops() -> BTreeSet<Operation> {
    Operation::ALL.into_iter().filter(|op| !matches!(op, Operation::Scan | Operation::Czlemma)).collect()
}

fn usage_error(message: &str) -> ExitCode {
    eprintln!("{}", json!({"kind": "UsageError", "message": message}));
    ExitCode::from(2)
}

fn write_output(path: &Path, text: &str) -> Result<(), InputError> {
    fs::write(path, text).map_err(|e| InputError::new(&path.display().to_string(), "Io", e.to_string()))
}

fn analyze(args: AnalyzeArgs) -> ExitCode {
    let ops = match parse_ops(&args.ops) {
        Ok(ops) => ops,
        Err(m) => return usage_error(&m),
    };
    let several = args.inputs.len() > 1;
    if let Some(out) = &args.out {
        if several {
            if let Err(e) = fs::create_dir_all(out) {
                return usage_error(&format!("cannot create {}: {e}", out.display()));
            }
        }
    }
    if let Some(dir) = &args.dump_matrices {
        if let Err(e) = fs::create_dir_all(dir) {
            return usage_error(&format!("cannot create {}: {e}", dir.display()));
        }
    }

    let results: Vec<Result<Report, InputError>> = args
        .inputs
        .par_iter()
        .map(|input| {
            Ok(match load(input, args.field)? {
                Loaded::Surface(s) => {
                    let mut opts = AnalysisOptions::new(ops.clone().unwrap_or_else(default_surface_ops));
                    opts.strategy = args.strategy;
                    opts.engine = EngineOptions { seed: args.seed, ..EngineOptions::default() };
                    opts.keep_matrices = args.dump_matrices.is_some();
                    Report::Surface(analyze_surface(&s, &opts))
                }
                Loaded::Curve(c) => {
                    let ops = ops.clone().unwrap_or_else(|| BTreeSet::from([Operation::Czlemma]));
                    Report::Curve(analyze_curve(&c, &ops))
                }
            })
        })
        .collect();

    let (mut input_errors, mut failed) = (false, false);
    for (input, result) in args.inputs.iter().zip(results) {
        let report = match result {
            Ok(r) => r,
            Err(e) => {
                e.emit();
                input_errors = true;
                continue;
            }
        };
        for p in report.problems(input) {
            eprintln!("{p}");
            failed = true;
        }
        if let (Some(dir), Report::Surface(r)) = (&args.dump_matrices, &report) {
            for (label, m) in &r.matrices {
                let path = dir.join(format!("{}.{label}.txt", r.surface));
                if let Err(e) = write_output(&path, &write_dump(m)) {
                    e.emit();
                    input_errors = true;
                }
            }
        }
        let written = match &args.out {
            Some(dir) if several => write_output(&dir.join(format!("{}.json", report.name())), &report.json()),
            Some(file) => write_output(file, &report.json()),
            None => {
                print!("{}", report.json());
                Ok(())
            }
        };
        if let Err(e) = written {
            e.emit();
            input_errors = true;
        }
    }
    if input_errors {
        ExitCode::from(2)
    } else if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn scan(args: ScanArgs) -> ExitCode {
    let config = ScanConfig { p: args.p, d: args.degree, trials: args.trials, seed: args.seed, recipe: args.recipe };
    let report = match charp_scan(&config) {
        Ok(r) => r,
        Err(e) => {
            InputError::from_core("scan", &e).emit();
            return ExitCode::from(2);
        }
    };
    let text = report.to_json();
    match &args.out {
        Some(path) => {
            if let Err(e) = write_output(path, &text) {
                e.emit();
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(2);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match cli.command {
        Command::Analyze(args) => analyze(args),
        Command::Scan(args) => scan(args),
        Command::Fixtures => {
            for name in fixtures::all_surface_names() {
                println!("surface {name}");
            }
            for name in fixtures::curve_names() {
                println!("curve {name}");
            }
            ExitCode::SUCCESS
        }
    }
}
