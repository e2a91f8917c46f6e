use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use modalhol::modal::FrameClass;
use modalhol::model::{holds, search, verify_model, FiniteModel, Problem, SearchBounds, SearchOutcome};
use modalhol::nd::{axioms_used, check_proof};
use modalhol::suite::{self, RunOptions};
use modalhol::syntax::{parse_theory, TheoryFile};

const PASS: u8 = 0;
const FAIL: u8 = 1;
const INVALID: u8 = 2;
const BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "modalhol", version, about = "Higher-order modal logic workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a theory and check all of its proofs.
    Check {
        file: PathBuf,
        /// Also print the embedded form of every axiom and conjecture.
        #[arg(long)]
        embedded: bool,
    },
    /// Search for a finite model of the axioms and print it.
    FindModel {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        worlds: usize,
        #[arg(long, default_value_t = 2)]
        indivs: usize,
        /// Look for a countermodel to this conjecture instead.
        #[arg(long, value_name = "CONJ")]
        negate: Option<String>,
        #[arg(long)]
        budget_nodes: Option<u64>,
        #[arg(long)]
        budget_secs: Option<u64>,
        /// Frame class; defaults to the theory's.
        #[arg(long)]
        logic: Option<FrameClass>,
        #[arg(long)]
        parallel: bool,
    },
    /// Evaluate a named axiom or conjecture in a model file.
    Eval {
        file: PathBuf,
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        formula: String,
    },
    /// Run the experiments of a theory and compare with their expectations.
    Report {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Omit elapsed times so that reports are reproducible.
        #[arg(long)]
        no_timing: bool,
        #[arg(long)]
        parallel: bool,
    },
    /// Run the fixed checklist over a corpus directory.
    Suite {
        dir: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

fn load(path: &Path) -> Result<TheoryFile, u8> {
    let src = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        INVALID
    })?;
    parse_theory(&src).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        INVALID
    })
}

fn check(file: &Path, embedded: bool) -> Result<u8, u8> {
    let t = load(file)?;
    if embedded {
        for (n, term) in t.embedded() {
            println!("{n}: {term}");
        }
    }
    let env = t.environment();
    let mut code = PASS;
    for p in t.proofs() {
        match check_proof(p, &env) {
            Ok(()) => {
                let used: Vec<String> = axioms_used(p).iter().map(|n| n.to_string()).collect();
                println!("ok {} ({}) uses {{{}}}", p.name, p.frame, used.join(", "));
            }
            Err(e) => {
                eprintln!("error: proof {}: {e}", p.name);
                code = code.max(if e.is_type_error() { INVALID } else { FAIL });
            }
        }
    }
    Ok(code)
}

#[allow(clippy::too_many_arguments)]
fn find_model(
    file: &Path,
    worlds: usize,
    indivs: usize,
    negate: Option<&str>,
    budget_nodes: Option<u64>,
    budget_secs: Option<u64>,
    logic: Option<FrameClass>,
    parallel: bool,
) -> Result<u8, u8> {
    let t = load(file)?;
    let axioms: Vec<_> = t.axioms().into_iter().map(|(_, f)| f.clone()).collect();
    let conj = match negate {
        Some(n) => Some(t.conjecture(n).cloned().ok_or_else(|| {
            eprintln!("error: no conjecture named `{n}`");
            INVALID
        })?),
        None => None,
    };
    let d = SearchBounds::default();
    let bounds = SearchBounds {
        max_worlds: worlds,
        max_indivs: indivs,
        node_budget: budget_nodes.unwrap_or(d.node_budget),
        time_budget: budget_secs.map(Duration::from_secs).unwrap_or(d.time_budget),
    };
    let fc = logic.unwrap_or(t.frame());
    let report = Problem::from_formulas(t.signature(), &axioms, conj.as_ref())
        .and_then(|p| search(&p, fc, &bounds, parallel))
        .map_err(|e| {
            eprintln!("error: {e}");
            INVALID
        })?;
    match report.outcome {
        SearchOutcome::Found(m) => {
            print!("{}", m.to_text());
            if verify_model(&m, t.signature(), &axioms, fc, conj.as_ref()) {
                Ok(PASS)
            } else {
                eprintln!("error: the model fails independent verification");
                Ok(FAIL)
            }
        }
        SearchOutcome::ExhaustedAtBounds => {
            eprintln!("no model with at most {worlds} worlds and {indivs} individuals");
            Ok(FAIL)
        }
        SearchOutcome::BudgetExceeded => {
            eprintln!("budget exceeded after {} nodes", report.nodes);
            Ok(BUDGET)
        }
    }
}

fn eval(file: &Path, model: &Path, name: &str) -> Result<u8, u8> {
    let t = load(file)?;
    let text = std::fs::read_to_string(model).map_err(|e| {
        eprintln!("error: {}: {e}", model.display());
        INVALID
    })?;
    let m = FiniteModel::parse(&text).map_err(|e| {
        eprintln!("error: {}: {e}", model.display());
        INVALID
    })?;
    let f = t.formula(name).ok_or_else(|| {
        eprintln!("error: no axiom or conjecture named `{name}`");
        INVALID
    })?;
    let value = t
        .signature()
        .valid(&f)
        .map_err(|e| e.to_string())
        .and_then(|term| holds(&m, t.signature(), &term).map_err(|e| e.to_string()))
        .map_err(|e| {
            eprintln!("error: {e}");
            INVALID
        })?;
    println!("{value}");
    Ok(if value { PASS } else { FAIL })
}

fn report(file: &Path, json: bool, no_timing: bool, parallel: bool) -> Result<u8, u8> {
    let t = load(file)?;
    let reports = suite::run_report(&t, RunOptions { parallel, timing: !no_timing }).map_err(|e| {
        eprintln!("error: {e}");
        INVALID
    })?;
    if json {
        println!("{}", serde_json::to_string_pretty(&reports).expect("serializable"));
    } else {
        for r in &reports {
            println!("{}", r.line());
        }
    }
    let failed: Vec<_> = reports.iter().filter(|r| !r.matched).collect();
    Ok(if failed.is_empty() {
        PASS
    } else if failed.iter().any(|r| r.outcome == "budget") {
        BUDGET
    } else {
        FAIL
    })
}

fn run_suite(dir: &Path, json: bool) -> Result<u8, u8> {
    let items = suite::run_suite(dir).map_err(|e| {
        eprintln!("error: {e}");
        INVALID
    })?;
    if json {
        println!("{}", serde_json::to_string_pretty(&items).expect("serializable"));
    } else {
        for i in &items {
            println!("{}", i.line());
        }
    }
    Ok(if items.iter().all(|i| i.passed) { PASS } else { FAIL })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match &cli.command {
        Command::Check { file, embedded } => check(file, *embedded),
        Command::FindModel { file, worlds, indivs, negate, budget_nodes, budget_secs, logic, parallel } => {
            find_model(file, *worlds, *indivs, negate.as_deref(), *budget_nodes, *budget_secs, *logic, *parallel)
        }
        Command::Eval { file, model, formula } => eval(file, model, formula),
        Command::Report { file, json, no_timing, parallel } => report(file, *json, *no_timing, *parallel),
        Command::Suite { dir, json } => run_suite(dir, *json),
    };
    ExitCode::from(r.unwrap_or_else(|code| code))
}
