use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use super::eval::{
    positivity_value, Code, Compiler, EvalError, Layout, Machine, Sizes, Value, ACCESS_SLOT, POSITIVE_SLOT,
};
use super::finite::{FiniteModel, MAX_CELLS};
use crate::modal::{EmbedError, FrameClass, ModalFormula, PropTerm, Signature};
use crate::stt::{self, Term};

/// Largest world count the searcher enumerates access matrices for.
pub const MAX_SEARCH_WORLDS: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    pub max_worlds: usize,
    pub max_indivs: usize,
    pub node_budget: u64,
    pub time_budget: Duration,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds { max_worlds: 2, max_indivs: 2, node_budget: 100_000_000, time_budget: Duration::from_secs(60) }
    }
}

impl SearchBounds {
    pub fn sizes(max_worlds: usize, max_indivs: usize) -> Self {
        SearchBounds { max_worlds, max_indivs, ..Self::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(FiniteModel),
    ExhaustedAtBounds,
    BudgetExceeded,
}

impl SearchOutcome {
    pub fn label(&self) -> &'static str {
        match self {
            SearchOutcome::Found(_) => "found",
            SearchOutcome::ExhaustedAtBounds => "exhausted",
            SearchOutcome::BudgetExceeded => "budget",
        }
    }

    pub fn model(&self) -> Option<&FiniteModel> {
        match self {
            SearchOutcome::Found(m) => Some(m),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("invalid bounds: {0}")]
    Bounds(String),
    #[error(transparent)]
    Embed(#[from] EmbedError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// A search problem: closed formulas that must all hold, and optionally one
/// that must fail.
#[derive(Clone, Debug)]
pub struct Problem {
    sig: Signature,
    axioms: Vec<Term>,
    refute: Option<Term>,
}

impl Problem {
    /// `axioms` and `refute` are closed terms of type `$o`.
    pub fn new(sig: &Signature, axioms: Vec<Term>, refute: Option<Term>) -> Result<Problem, SearchError> {
        for t in axioms.iter().chain(&refute) {
            match stt::typecheck_with(t, &sig.type_lookup()).map_err(EvalError::from)? {
                crate::stt::Type::Bool => {}
                ty => return Err(EvalError::NotFormula(ty).into()),
            }
        }
        Ok(Problem { sig: sig.clone(), axioms, refute })
    }

    pub fn from_formulas(
        sig: &Signature,
        axioms: &[ModalFormula],
        refute: Option<&ModalFormula>,
    ) -> Result<Problem, SearchError> {
        let axioms = axioms.iter().map(|f| sig.valid(f)).collect::<Result<Vec<_>, _>>()?;
        let refute = refute.map(|f| sig.valid(f)).transpose()?;
        Problem::new(sig, axioms, refute)
    }

    /// Whether both directions of `pos(non(Phi)) <-> ~pos(Phi)` are among
    /// the axioms, so that each extension and its complement take opposite
    /// positivity at every world.
    fn complement_pairing(&self) -> bool {
        let phi = || PropTerm::var("Phi");
        let lhs = || ModalFormula::positive(PropTerm::neg(phi()));
        let rhs = || ModalFormula::not(ModalFormula::positive(phi()));
        let forms =
            [ModalFormula::iff(lhs(), rhs()), ModalFormula::implies(lhs(), rhs()), ModalFormula::implies(rhs(), lhs())]
                .map(|f| self.sig.valid(&ModalFormula::forall_prop("Phi", f)).expect("well-formed"));
        let has = |t: &Term| self.axioms.iter().any(|a| stt::alpha_eq(a, t));
        has(&forms[0]) || (has(&forms[1]) && has(&forms[2]))
    }
}

/// Searches for a model of `axioms` within `bounds`.
pub fn find_model(
    sig: &Signature,
    axioms: &[ModalFormula],
    fc: FrameClass,
    bounds: &SearchBounds,
) -> Result<SearchReport, SearchError> {
    search(&Problem::from_formulas(sig, axioms, None)?, fc, bounds, false)
}

/// Searches for a model of `axioms` in which `conjecture` is not valid.
pub fn find_countermodel(
    sig: &Signature,
    axioms: &[ModalFormula],
    conjecture: &ModalFormula,
    fc: FrameClass,
    bounds: &SearchBounds,
) -> Result<SearchReport, SearchError> {
    search(&Problem::from_formulas(sig, axioms, Some(conjecture))?, fc, bounds, false)
}

/// Bounded search over sizes `(worlds, indivs)` in lexicographic order, then
/// access matrices in ascending canonical index, then positivity bits.
///
/// With `parallel`, access matrices of one size are distributed over worker
/// threads; the reported model is still the first in canonical order.
pub fn search(
    problem: &Problem,
    fc: FrameClass,
    bounds: &SearchBounds,
    parallel: bool,
) -> Result<SearchReport, SearchError> {
    if bounds.max_worlds == 0 || bounds.max_indivs == 0 || bounds.node_budget == 0 {
        return Err(SearchError::Bounds("bounds must be positive".into()));
    }
    if bounds.max_worlds > MAX_SEARCH_WORLDS || bounds.max_worlds * bounds.max_indivs > MAX_CELLS {
        return Err(SearchError::Bounds(format!(
            "at most {MAX_SEARCH_WORLDS} worlds and {MAX_CELLS} world-individual pairs"
        )));
    }
    let start = Instant::now();
    let shared = Shared {
        nodes: AtomicU64::new(0),
        budget: bounds.node_budget,
        deadline: start + bounds.time_budget,
        stop: AtomicBool::new(false),
    };
    let pairing = problem.complement_pairing();
    let mut outcome = SearchOutcome::ExhaustedAtBounds;
    'sizes: for worlds in 1..=bounds.max_worlds {
        for indivs in 1..=bounds.max_indivs {
            let sizes = Sizes { worlds: worlds as u32, indivs: indivs as u32 };
            let program = Program::new(problem, sizes, pairing)?;
            let matrices = 1u64 << (worlds * worlds);
            let admits = |a: u64| {
                let m: Vec<bool> = (0..worlds * worlds).map(|i| a >> i & 1 == 1).collect();
                fc.admits(&m, worlds)
            };
            let run = |a: u64| -> Option<Step> {
                if !admits(a) {
                    return None;
                }
                match Worker::new(&program, &shared, a).run() {
                    Step::Exhausted => None,
                    s => Some(s),
                }
            };
            let step =
                if parallel { (0..matrices).into_par_iter().find_map_first(run) } else { (0..matrices).find_map(run) };
            match step {
                Some(Step::Found(a, pos)) => {
                    let access = (0..worlds * worlds).map(|i| a >> i & 1 == 1).collect();
                    let m = FiniteModel::new(worlds, indivs, access, pos)
                        .and_then(|m| m.tagged(fc))
                        .expect("search only visits admissible structures");
                    outcome = SearchOutcome::Found(m);
                    break 'sizes;
                }
                Some(Step::Budget) => {
                    outcome = SearchOutcome::BudgetExceeded;
                    break 'sizes;
                }
                _ => {}
            }
        }
    }
    Ok(SearchReport { outcome, nodes: shared.nodes.load(Ordering::Relaxed), elapsed: start.elapsed() })
}

struct Shared {
    nodes: AtomicU64,
    budget: u64,
    deadline: Instant,
    stop: AtomicBool,
}

impl Shared {
    fn tick(&self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return false;
        }
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.budget || (n.is_multiple_of(1024) && Instant::now() > self.deadline) {
            self.stop.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }
}

/// Compiled constraints for one model size.
struct Program {
    sizes: Sizes,
    layout: Layout,
    /// Each must become true; the last one is negated when refuting.
    constraints: Vec<Code>,
    /// Positivity bits the search branches on, in order.
    free: Vec<usize>,
    pairing: bool,
    exts: usize,
}

impl Program {
    fn new(problem: &Problem, sizes: Sizes, pairing: bool) -> Result<Program, EvalError> {
        let layout = Layout::new(&problem.sig, sizes)?;
        let compiler = Compiler { sizes, scope: &layout.scope };
        let mut constraints =
            problem.axioms.iter().map(|t| compiler.compile_formula(t)).collect::<Result<Vec<_>, _>>()?;
        if let Some(t) = &problem.refute {
            constraints.push(compiler.compile_formula(&Term::not(t.clone()))?);
        }
        let worlds = sizes.worlds as usize;
        let exts = 1usize << (sizes.worlds * sizes.indivs);
        let free = (0..exts)
            .filter(|&e| !pairing || e < exts / 2)
            .flat_map(|e| (0..worlds).map(move |w| e * worlds + w))
            .collect();
        Ok(Program { sizes, layout, constraints, free, pairing, exts })
    }

    fn partner(&self, bit: usize) -> Option<usize> {
        let w = self.sizes.worlds as usize;
        self.pairing.then(|| (self.exts - 1 - bit / w) * w + bit % w)
    }
}

enum Step {
    Found(u64, Vec<bool>),
    Exhausted,
    Budget,
}

struct Worker<'a> {
    program: &'a Program,
    shared: &'a Shared,
    access: u64,
    machine: Machine,
    pos: Vec<Option<bool>>,
}

impl<'a> Worker<'a> {
    fn new(program: &'a Program, shared: &'a Shared, access: u64) -> Self {
        let mut slots = vec![Value::Unknown; program.layout.scope.len()];
        let cells = program.sizes.worlds * program.sizes.worlds;
        slots[ACCESS_SLOT] = Value::Bits(access, (1u64 << cells) - 1);
        let pos = vec![None; program.exts * program.sizes.worlds as usize];
        let mut machine = Machine::new(slots);
        machine.slots[POSITIVE_SLOT] = positivity_value(program.sizes, &|_| None);
        program.layout.run_defs(&mut machine, false);
        Worker { program, shared, access, machine, pos }
    }

    fn run(mut self) -> Step {
        let open = vec![true; self.program.constraints.len()];
        self.dfs(0, open)
    }

    fn dfs(&mut self, depth: usize, mut open: Vec<bool>) -> Step {
        if !self.shared.tick() {
            return Step::Budget;
        }
        let pos = &self.pos;
        self.machine.slots[POSITIVE_SLOT] = positivity_value(self.program.sizes, &|i| pos[i]);
        self.program.layout.run_defs(&mut self.machine, true);
        for (i, code) in self.program.constraints.iter().enumerate() {
            if open[i] {
                match self.machine.run(code).truth() {
                    Some(false) => return Step::Exhausted,
                    Some(true) => open[i] = false,
                    None => {}
                }
            }
        }
        if open.iter().all(|o| !o) {
            // Any completion works; take the all-false one.
            for &bit in &self.program.free[depth..] {
                self.assign(bit, false);
            }
            let pos = self.pos.iter().map(|b| b.expect("complete")).collect();
            return Step::Found(self.access, pos);
        }
        if depth == self.program.free.len() {
            unreachable!("a total assignment decides every constraint");
        }
        let bit = self.program.free[depth];
        for value in [false, true] {
            self.assign(bit, value);
            match self.dfs(depth + 1, open.clone()) {
                Step::Exhausted => {}
                s => return s,
            }
        }
        self.pos[bit] = None;
        if let Some(p) = self.program.partner(bit) {
            self.pos[p] = None;
        }
        Step::Exhausted
    }

    fn assign(&mut self, bit: usize, value: bool) {
        self.pos[bit] = Some(value);
        if let Some(p) = self.program.partner(bit) {
            self.pos[p] = Some(!value);
        }
    }
}
