//! Running the experiments of a theory file and the fixed checklist over
//! the shipped corpus.

use std::collections::BTreeSet;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::modal::{FrameClass, ModalFormula, FRAME_SYM};
use crate::model::{search, verify_model, Problem, SearchBounds, SearchError, SearchOutcome};
use crate::nd::{axioms_used, check_proof};
use crate::stt::Name;
use crate::syntax::{parse_theory, Expected, ExperimentKind, ExperimentSpec, SyntaxError, TheoryFile};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub kind: &'static str,
    pub outcome: String,
    pub expected: Expected,
    #[serde(rename = "match")]
    pub matched: bool,
    /// Model size for `found`, otherwise the largest size searched.
    pub bounds: Option<(usize, usize)>,
    /// Seconds; absent when timing is suppressed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed: Option<f64>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
    #[serde(skip)]
    pub model: Option<crate::model::FiniteModel>,
}

impl ExperimentReport {
    /// One line of the text report.
    pub fn line(&self) -> String {
        let mut s = format!(
            "{} {}: {} {} (expected {})",
            if self.matched { "PASS" } else { "FAIL" },
            self.experiment,
            self.kind,
            self.outcome,
            self.expected.keyword()
        );
        if let Some((w, d)) = self.bounds {
            s.push_str(&format!(" [worlds {w}, indivs {d}]"));
        }
        if let Some(t) = self.elapsed {
            s.push_str(&format!(" in {t:.3}s"));
        }
        if !self.detail.is_empty() {
            s.push_str(&format!(": {}", self.detail));
        }
        s
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub parallel: bool,
    pub timing: bool,
}

fn outcome_expected(outcome: &str) -> Option<Expected> {
    Expected::ALL.into_iter().find(|e| e.keyword() == outcome)
}

/// Runs one experiment of `t`.
pub fn run_experiment(t: &TheoryFile, e: &ExperimentSpec, opts: RunOptions) -> Result<ExperimentReport, SearchError> {
    let start = Instant::now();
    let fc = e.frame.unwrap_or(t.frame());
    let mut report = ExperimentReport {
        experiment: e.name.to_string(),
        kind: e.kind.keyword(),
        outcome: String::new(),
        expected: e.expect,
        matched: false,
        bounds: None,
        elapsed: None,
        detail: String::new(),
        model: None,
    };
    match &e.kind {
        ExperimentKind::CheckProof(names) => {
            let env = t.environment();
            let mut notes = Vec::new();
            let mut ok = true;
            for n in names {
                let p = t.proof(n).expect("validated");
                let mut p = p.clone();
                if let Some(fc) = e.frame {
                    p.frame = fc;
                }
                match check_proof(&p, &env) {
                    Ok(()) => {
                        let used: Vec<String> = axioms_used(&p).iter().map(|a| a.to_string()).collect();
                        notes.push(format!("{n} uses {{{}}}", used.join(", ")));
                    }
                    Err(err) => {
                        ok = false;
                        notes.push(format!("{n}: {err}"));
                    }
                }
            }
            report.outcome = if ok { "ok" } else { "failed" }.into();
            report.detail = notes.join("; ");
        }
        ExperimentKind::FindModel { from } | ExperimentKind::FindCountermodel { from, .. } => {
            let axioms: Vec<ModalFormula> = t.experiment_axioms(from.as_deref()).into_iter().map(|(_, f)| f).collect();
            let conjecture = match &e.kind {
                ExperimentKind::FindCountermodel { conjecture, .. } => t.conjecture(conjecture).cloned(),
                _ => None,
            };
            let bounds = e.bounds();
            let problem = Problem::from_formulas(t.signature(), &axioms, conjecture.as_ref())?;
            let r = search(&problem, fc, &bounds, opts.parallel)?;
            report.outcome = r.outcome.label().into();
            report.detail = format!("{} nodes", r.nodes);
            match &r.outcome {
                SearchOutcome::Found(m) => {
                    report.bounds = Some((m.worlds(), m.indivs()));
                    if !verify_model(m, t.signature(), &axioms, fc, conjecture.as_ref()) {
                        report.outcome = "unverified".into();
                        report.detail = "the model found fails independent verification".into();
                    }
                    report.model = Some(m.clone());
                }
                _ => report.bounds = Some((bounds.max_worlds, bounds.max_indivs)),
            }
        }
    }
    report.matched = outcome_expected(&report.outcome) == Some(e.expect);
    if opts.timing {
        report.elapsed = Some(start.elapsed().as_secs_f64());
    }
    Ok(report)
}

/// Runs every experiment of `t` in file order.
pub fn run_report(t: &TheoryFile, opts: RunOptions) -> Result<Vec<ExperimentReport>, SearchError> {
    t.experiments().into_iter().map(|e| run_experiment(t, e, opts)).collect()
}

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Syntax { path: String, source: SyntaxError },
    #[error("{path}: missing `{name}`")]
    Missing { path: String, name: String },
    #[error(transparent)]
    Search(#[from] SearchError),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteItem {
    pub item: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl SuiteItem {
    pub fn line(&self) -> String {
        format!("{} {}. {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.item, self.name, self.detail)
    }
}

pub const SCOTT: &str = "scott.thy";
pub const D2_BROKEN: &str = "scott_d2_broken.thy";
pub const K_T3: &str = "scott_k_t3.thy";
pub const A1A_T2: &str = "scott_a1a_t2.thy";

pub fn load(path: &Path) -> Result<TheoryFile, SuiteError> {
    let shown = path.display().to_string();
    let src = std::fs::read_to_string(path).map_err(|source| SuiteError::Io { path: shown.clone(), source })?;
    parse_theory(&src).map_err(|source| SuiteError::Syntax { path: shown, source })
}

fn proof_item(
    t: &TheoryFile,
    path: &str,
    names: &[&str],
    fc: FrameClass,
) -> Result<(bool, String, Vec<BTreeSet<Name>>), SuiteError> {
    let env = t.environment();
    let mut ok = true;
    let mut notes = Vec::new();
    let mut used = Vec::new();
    for &n in names {
        let p = t.proof(n).ok_or_else(|| SuiteError::Missing { path: path.into(), name: n.into() })?;
        if p.frame != fc {
            ok = false;
            notes.push(format!("{n} is stated under {} rather than {fc}", p.frame));
        }
        match check_proof(p, &env) {
            Ok(()) => notes.push(format!("{n} checks under {}", p.frame)),
            Err(e) => {
                ok = false;
                notes.push(format!("{n}: {e}"));
            }
        }
        used.push(axioms_used(p));
    }
    Ok((ok, notes.join("; "), used))
}

fn search_item(
    t: &TheoryFile,
    conjecture: Option<&str>,
    fc: FrameClass,
    bounds: &SearchBounds,
    path: &str,
) -> Result<(SearchOutcome, bool), SuiteError> {
    let axioms: Vec<ModalFormula> = t.axioms().into_iter().map(|(_, f)| f.clone()).collect();
    let conj = match conjecture {
        Some(c) => {
            Some(t.conjecture(c).cloned().ok_or_else(|| SuiteError::Missing { path: path.into(), name: c.into() })?)
        }
        None => None,
    };
    let r = search(&Problem::from_formulas(t.signature(), &axioms, conj.as_ref())?, fc, bounds, false)?;
    let verified = match &r.outcome {
        SearchOutcome::Found(m) => verify_model(m, t.signature(), &axioms, fc, conj.as_ref()),
        _ => true,
    };
    Ok((r.outcome, verified))
}

fn describe(outcome: &SearchOutcome, bounds: &SearchBounds) -> String {
    match outcome {
        SearchOutcome::Found(m) => format!("found at worlds {}, indivs {}", m.worlds(), m.indivs()),
        o => format!("{} at worlds {}, indivs {}", o.label(), bounds.max_worlds, bounds.max_indivs),
    }
}

/// Bounds for the countermodel searches of the checklist.
pub fn countermodel_bounds() -> SearchBounds {
    SearchBounds::sizes(2, 2)
}

/// The seven checks over the corpus directory, in order.
pub fn run_suite(dir: &Path) -> Result<Vec<SuiteItem>, SuiteError> {
    let scott = load(&dir.join(SCOTT))?;
    let broken = load(&dir.join(D2_BROKEN))?;
    let k_t3 = load(&dir.join(K_T3))?;
    let a1a_t2 = load(&dir.join(A1A_T2))?;
    let mut items = Vec::new();
    let mut push = |name: &'static str, passed: bool, detail: String| {
        items.push(SuiteItem { item: items.len() + 1, name, passed, detail });
    };

    let (ok, detail, _) = proof_item(&scott, SCOTT, &["T1", "C", "T2"], FrameClass::K)?;
    push("T1, C and T2 under K", ok, detail);

    let (ok, detail, used) = proof_item(&scott, SCOTT, &["T3"], FrameClass::KB)?;
    let sym = used[0].contains(FRAME_SYM);
    push(
        "T3 under KB citing symmetry",
        ok && sym,
        if sym { detail } else { format!("{detail}; no citation of {FRAME_SYM}") },
    );

    let (ok, detail, _) = proof_item(&broken, D2_BROKEN, &["falsum"], FrameClass::K)?;
    push("falsum from the weakened essence definition under K", ok, detail);

    let bounds = SearchBounds::sizes(1, 1);
    let (outcome, verified) = search_item(&scott, None, FrameClass::KB, &bounds, SCOTT)?;
    push("consistency of the axioms", outcome.model().is_some() && verified, describe(&outcome, &bounds));

    let bounds = countermodel_bounds();
    for (t, conj, path, name) in [
        (&k_t3, "T3", K_T3, "countermodel to T3 under K"),
        (&a1a_t2, "T2", A1A_T2, "countermodel to T2 without the backward direction of A1"),
    ] {
        let (outcome, verified) = search_item(t, Some(conj), FrameClass::K, &bounds, path)?;
        let passed = match &outcome {
            SearchOutcome::Found(_) => verified,
            SearchOutcome::ExhaustedAtBounds => true,
            SearchOutcome::BudgetExceeded => false,
        };
        let mut detail = describe(&outcome, &bounds);
        if !verified {
            detail.push_str("; the model fails independent verification");
        }
        push(name, passed, detail);
    }

    let t1 = scott.proof("T1").ok_or_else(|| SuiteError::Missing { path: SCOTT.into(), name: "T1".into() })?;
    let used = axioms_used(t1);
    let t2_used = scott.proof("T2").map(axioms_used).unwrap_or_default();
    let list = |s: &BTreeSet<Name>| s.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(", ");
    push(
        "A1 direction audit",
        used.contains("A1a") && !used.contains("A1b") && t2_used.contains("A1b"),
        format!("T1 uses {{{}}}; T2 uses {{{}}}", list(&used), list(&t2_used)),
    );
    Ok(items)
}
