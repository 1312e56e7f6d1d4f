//! Command-line front end: run scenario suites, evaluate single
//! operations, and inspect the curated model registry.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for
//! command-line usage errors, 3 for evaluation or input errors. Errors
//! take precedence over failures.

use clap::{Parser, Subcommand};
use constructible::models;
use constructible::scenario::{
    bundled_names, bundled_scenario, eval_op, run_scenario, Env, RunOptions, Value, DEFAULT_SEED,
};
use constructible::schema::{registry_json, CellsDef, ScenarioDef};
use constructible::VertexId;
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

fn scenario_help() -> String {
    format!(
        "Bundled scenario name or path to a scenario JSON file.\n\nBundled scenarios:\n  {}",
        bundled_names().join("\n  ")
    )
}

#[derive(Parser)]
#[command(
    name = "constructible",
    version,
    about = "Exact six-operation calculus for constructible functions on finite simplicial complexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario of checks and emit a JSON report.
    Run {
        #[arg(long, long_help = scenario_help())]
        scenario: String,
        /// Master seed for the seeded test functions.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Worker threads; 0 picks the scheduler default.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Write the report to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record per-check wall-clock milliseconds in the report.
        #[arg(long)]
        timings: bool,
    },
    /// Evaluate one operation and print the result as JSON.
    Eval {
        /// Operation name: pullback, exc_pullback, pushforward,
        /// pushforward_c, dual, tensor, add, sub, scale, restrict,
        /// extend_by_zero, open_pushforward, boundary_stalk, nearby,
        /// cech_sum, euler_integral, euler_integral_c, chi, chi_c.
        #[arg(long)]
        op: String,
        /// Arguments: model names and function tokens such as one:p1,
        /// zero:disk_c, indicator:p1:p1_poles.
        #[arg(long, num_args = 0.., allow_hyphen_values = true)]
        args: Vec<String>,
    },
    /// Inspect the curated model registry.
    Models {
        #[command(subcommand)]
        what: ModelsCommand,
    },
}

#[derive(Subcommand)]
enum ModelsCommand {
    /// Print every model with its headline numbers.
    List,
    /// Print the whole registry as JSON.
    Export {
        /// Write the JSON to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct FunctionOut {
    complex: String,
    cells: CellsDef,
    entries: Vec<(Vec<VertexId>, i64)>,
}

#[derive(Serialize)]
struct EvalOut {
    op: String,
    args: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    integer: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    function: Option<FunctionOut>,
}

fn load_scenario(which: &str) -> Result<ScenarioDef, String> {
    let path = Path::new(which);
    if path.exists() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("reading {}: {e}", path.display()))?;
        ScenarioDef::from_json(&text).map_err(|e| format!("parsing {}: {e}", path.display()))
    } else {
        bundled_scenario(which).map_err(|e| {
            format!(
                "{e}; bundled scenarios: {}",
                bundled_names().join(", ")
            )
        })
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), String> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| format!("writing {}: {e}", path.display()))?;
            eprintln!("wrote {}", path.display());
            Ok(())
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(
    scenario: &str,
    seed: u64,
    jobs: usize,
    out: Option<&Path>,
    timings: bool,
) -> Result<u8, String> {
    let def = load_scenario(scenario)?;
    let report =
        run_scenario(&def, &RunOptions { seed, jobs, timings }).map_err(|e| e.to_string())?;
    let mut json = report.to_json();
    json.push('\n');
    emit(&json, out)?;
    eprintln!(
        "{}: {} checks, {} passed, {} failed, {} errors",
        report.scenario,
        report.summary.total,
        report.summary.passed,
        report.summary.failed,
        report.summary.errors
    );
    Ok(report.exit_code() as u8)
}

fn eval(op: String, args: Vec<String>) -> Result<(), String> {
    let env = Env::registry_only();
    let value = eval_op(&env, &op, &args).map_err(|e| e.to_string())?;
    let rendered = match value {
        Value::Integer(n) => EvalOut {
            op,
            args,
            integer: Some(n),
            function: None,
        },
        Value::Function(f) => {
            let complex = f.space().complex();
            let entries = f
                .support()
                .into_iter()
                .map(|id| (complex.simplex(id).vertices().to_vec(), f.value(id)))
                .collect();
            EvalOut {
                op,
                args,
                integer: None,
                function: Some(FunctionOut {
                    complex: complex.name().to_string(),
                    cells: CellsDef::of(f.space()),
                    entries,
                }),
            }
        }
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&rendered).expect("evaluation output serializes")
    );
    Ok(())
}

fn list_models() {
    let reg = models::registry();
    println!("spaces:");
    for s in reg.spaces() {
        println!(
            "  {:<22} {:>3} cells  chi {:>2}  chi_c {:>2}  {}  {}",
            s.name,
            s.space.len(),
            s.expected_chi,
            s.expected_chi_c,
            if s.complex_model { "complex" } else { "real   " },
            s.notes
        );
    }
    println!("maps:");
    for m in reg.maps() {
        println!(
            "  {:<26} {} -> {}  {}  {}  {}",
            m.name,
            m.source,
            m.target,
            if m.proper { "proper    " } else { "not proper" },
            if m.complex_model { "complex" } else { "real   " },
            m.notes
        );
    }
    println!("squares:");
    for s in reg.squares() {
        println!(
            "  {:<22} over {}  base of {} cell(s)  {}",
            s.name,
            s.map,
            s.base.len(),
            s.notes
        );
    }
    println!("covers:");
    for c in reg.covers() {
        println!(
            "  {:<22} on {}  {} piece(s)  {}",
            c.name,
            c.space,
            c.pieces.len(),
            c.notes
        );
    }
    println!("actions:");
    for a in reg.actions() {
        println!(
            "  {:<22} on {}  {} generator(s)  {}",
            a.name,
            a.space,
            a.generators.len(),
            a.notes
        );
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run {
            scenario,
            seed,
            jobs,
            out,
            timings,
        } => match run(&scenario, seed, jobs, out.as_deref(), timings) {
            Ok(code) => return ExitCode::from(code),
            Err(msg) => Err(msg),
        },
        Command::Eval { op, args } => eval(op, args),
        Command::Models { what } => match what {
            ModelsCommand::List => {
                list_models();
                Ok(())
            }
            ModelsCommand::Export { out } => {
                let mut json = registry_json();
                json.push('\n');
                emit(&json, out.as_deref())
            }
        },
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
