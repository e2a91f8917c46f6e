use std::time::Duration;

use serde::Serialize;
use thiserror::Error;

use crate::modal::{DefBody, EmbedError, FrameClass, ModalFormula, Signature};
use crate::model::SearchBounds;
use crate::nd::{Environment, Proof};
use crate::stt::{Name, Term, Type};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Expected {
    Ok,
    Failed,
    Found,
    Exhausted,
    Budget,
}

impl Expected {
    pub const ALL: [Expected; 5] =
        [Expected::Ok, Expected::Failed, Expected::Found, Expected::Exhausted, Expected::Budget];

    pub fn keyword(self) -> &'static str {
        match self {
            Expected::Ok => "ok",
            Expected::Failed => "failed",
            Expected::Found => "found",
            Expected::Exhausted => "exhausted",
            Expected::Budget => "budget",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExperimentKind {
    CheckProof(Vec<Name>),
    /// `None` means every axiom of the theory.
    FindModel {
        from: Option<Vec<Name>>,
    },
    FindCountermodel {
        conjecture: Name,
        from: Option<Vec<Name>>,
    },
}

impl ExperimentKind {
    pub fn keyword(&self) -> &'static str {
        match self {
            ExperimentKind::CheckProof(_) => "check_proof",
            ExperimentKind::FindModel { .. } => "find_model",
            ExperimentKind::FindCountermodel { .. } => "find_countermodel",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentSpec {
    pub name: Name,
    pub kind: ExperimentKind,
    pub frame: Option<FrameClass>,
    pub worlds: Option<usize>,
    pub indivs: Option<usize>,
    pub nodes: Option<u64>,
    pub secs: Option<u64>,
    pub expect: Expected,
}

impl ExperimentSpec {
    pub fn bounds(&self) -> SearchBounds {
        let d = SearchBounds::default();
        SearchBounds {
            max_worlds: self.worlds.unwrap_or(d.max_worlds),
            max_indivs: self.indivs.unwrap_or(d.max_indivs),
            node_budget: self.nodes.unwrap_or(d.node_budget),
            time_budget: self.secs.map(Duration::from_secs).unwrap_or(d.time_budget),
        }
    }
}

/// A definition as written: a property term or a parameterised formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefItem {
    pub name: Name,
    pub params: Vec<Name>,
    pub body: DefBody,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Theory(Name),
    Logic(FrameClass),
    Const(Name, Type),
    Def(DefItem),
    Axiom(Name, ModalFormula),
    Conjecture(Name, ModalFormula),
    Proof(Proof),
    Experiment(ExperimentSpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error(transparent)]
    Embed(#[from] EmbedError),
    #[error("`{0}` is already declared")]
    Duplicate(Name),
    #[error("unknown name `{0}`")]
    Unknown(Name),
    #[error("`{0}` is not a conjecture")]
    NotConjecture(Name),
    #[error("`{0}` already has a proof")]
    AlreadyProved(Name),
    #[error("`{0}` must be an axiom or a conjecture proved earlier in the file")]
    NotCitable(Name),
    #[error("`{0}` has no proof")]
    Unproved(Name),
    #[error("the theory has more than one `{0}` header")]
    Header(&'static str),
    #[error("`logic` must come before proofs and experiments")]
    LateLogic,
    #[error("`{0}` is a reserved word")]
    Keyword(Name),
    #[error("bounds must be positive")]
    Bounds,
}

/// A parsed and validated theory: the items in file order plus the
/// signature they induce.
#[derive(Clone, Debug)]
pub struct TheoryFile {
    items: Vec<Item>,
    sig: Signature,
    frame: FrameClass,
}

impl PartialEq for TheoryFile {
    fn eq(&self, other: &Self) -> bool {
        self.items == other.items
    }
}

impl Eq for TheoryFile {}

/// Words that cannot be used as names.
pub const KEYWORDS: &[&str] = &[
    "theory",
    "logic",
    "const",
    "def",
    "axiom",
    "conjecture",
    "proof",
    "experiment",
    "from",
    "fix",
    "by",
    "box",
    "dia",
    "pos",
    "non",
    "expect",
    "worlds",
    "indivs",
    "nodes",
    "secs",
];

pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

/// Splits `![x̄]: (F <-> G)` into its two directions, keeping the prefix.
pub fn split_modal_biconditional(f: &ModalFormula) -> Option<(ModalFormula, ModalFormula)> {
    match f {
        ModalFormula::Iff(a, b) => Some((
            ModalFormula::implies((**a).clone(), (**b).clone()),
            ModalFormula::implies((**b).clone(), (**a).clone()),
        )),
        ModalFormula::ForallIndiv(x, body) => {
            let (a, b) = split_modal_biconditional(body)?;
            Some((ModalFormula::forall_indiv(x, a), ModalFormula::forall_indiv(x, b)))
        }
        ModalFormula::ForallProp(x, body) => {
            let (a, b) = split_modal_biconditional(body)?;
            Some((ModalFormula::forall_prop(x, a), ModalFormula::forall_prop(x, b)))
        }
        _ => None,
    }
}

impl Default for TheoryFile {
    fn default() -> Self {
        TheoryFile { items: Vec::new(), sig: Signature::new(), frame: FrameClass::K }
    }
}

impl TheoryFile {
    pub fn new() -> Self {
        Self::default()
    }

    /// Validates and builds a theory from items in order.
    pub fn from_items(items: impl IntoIterator<Item = Item>) -> Result<Self, TheoryError> {
        let mut t = TheoryFile::new();
        for item in items {
            t.push(item)?;
        }
        Ok(t)
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn frame(&self) -> FrameClass {
        self.frame
    }

    pub fn name(&self) -> Option<&Name> {
        self.items.iter().find_map(|i| match i {
            Item::Theory(n) => Some(n),
            _ => None,
        })
    }

    pub fn axioms(&self) -> Vec<(&Name, &ModalFormula)> {
        self.items
            .iter()
            .filter_map(|i| match i {
                Item::Axiom(n, f) => Some((n, f)),
                _ => None,
            })
            .collect()
    }

    pub fn conjectures(&self) -> Vec<(&Name, &ModalFormula)> {
        self.items
            .iter()
            .filter_map(|i| match i {
                Item::Conjecture(n, f) => Some((n, f)),
                _ => None,
            })
            .collect()
    }

    pub fn proofs(&self) -> Vec<&Proof> {
        self.items
            .iter()
            .filter_map(|i| match i {
                Item::Proof(p) => Some(p),
                _ => None,
            })
            .collect()
    }

    pub fn proof(&self, name: &str) -> Option<&Proof> {
        self.proofs().into_iter().find(|p| &*p.name == name)
    }

    pub fn experiments(&self) -> Vec<&ExperimentSpec> {
        self.items
            .iter()
            .filter_map(|i| match i {
                Item::Experiment(e) => Some(e),
                _ => None,
            })
            .collect()
    }

    pub fn conjecture(&self, name: &str) -> Option<&ModalFormula> {
        self.conjectures().into_iter().find(|(n, _)| &***n == name).map(|(_, f)| f)
    }

    /// The formula of an axiom or conjecture, including the two directions
    /// `<name>a`, `<name>b` of a biconditional axiom.
    pub fn formula(&self, name: &str) -> Option<ModalFormula> {
        let named = self.axioms().into_iter().chain(self.conjectures()).find(|(n, _)| &***n == name);
        if let Some((_, f)) = named {
            return Some(f.clone());
        }
        let (base, dir) = name.split_at(name.len().checked_sub(1)?);
        let (_, f) = self.axioms().into_iter().find(|(n, _)| &***n == base)?;
        let (a, b) = split_modal_biconditional(f)?;
        match dir {
            "a" => Some(a),
            "b" => Some(b),
            _ => None,
        }
    }

    fn is_axiom_name(&self, name: &str) -> bool {
        self.axioms().iter().any(|(n, _)| &***n == name)
            || self.formula(name).is_some() && self.conjecture(name).is_none()
    }

    fn is_declared(&self, name: &str) -> bool {
        self.sig.is_reserved(name)
            || self.items.iter().any(|i| match i {
                Item::Axiom(n, _) | Item::Conjecture(n, _) => &**n == name,
                Item::Experiment(e) => &*e.name == name,
                _ => false,
            })
    }

    fn fresh_name(&self, name: &Name) -> Result<(), TheoryError> {
        if is_keyword(name) {
            return Err(TheoryError::Keyword(name.clone()));
        }
        if self.is_declared(name) {
            return Err(TheoryError::Duplicate(name.clone()));
        }
        Ok(())
    }

    /// Appends one item, checking it against everything before it.
    pub fn push(&mut self, mut item: Item) -> Result<(), TheoryError> {
        match &mut item {
            Item::Theory(_) => {
                if self.name().is_some() {
                    return Err(TheoryError::Header("theory"));
                }
            }
            Item::Logic(fc) => {
                if self.items.iter().any(|i| matches!(i, Item::Logic(_))) {
                    return Err(TheoryError::Header("logic"));
                }
                if self.items.iter().any(|i| matches!(i, Item::Proof(_) | Item::Experiment(_))) {
                    return Err(TheoryError::LateLogic);
                }
                self.frame = *fc;
            }
            Item::Const(n, ty) => {
                self.fresh_name(n)?;
                self.sig.declare(n, ty.clone())?;
            }
            Item::Def(d) => {
                self.fresh_name(&d.name)?;
                match &d.body {
                    DefBody::Property(p) => {
                        self.sig.define_property(&d.name, p.clone())?;
                    }
                    DefBody::Relation(f) => {
                        self.sig.define_relation(&d.name, d.params.clone(), f.clone())?;
                    }
                }
            }
            Item::Axiom(n, f) | Item::Conjecture(n, f) => {
                self.fresh_name(n)?;
                self.sig.valid(f)?;
            }
            Item::Proof(p) => {
                let f = self.conjecture(&p.name).ok_or_else(|| TheoryError::NotConjecture(p.name.clone()))?;
                if self.proof(&p.name).is_some() {
                    return Err(TheoryError::AlreadyProved(p.name.clone()));
                }
                p.conclusion = self.sig.valid(f)?;
                for n in &p.premises {
                    let lemma = self.conjecture(n).is_some() && self.proof(n).is_some();
                    if !(self.is_axiom_name(n) || lemma) {
                        return Err(TheoryError::NotCitable(n.clone()));
                    }
                }
            }
            Item::Experiment(e) => {
                self.fresh_name(&e.name)?;
                if e.worlds == Some(0) || e.indivs == Some(0) || e.nodes == Some(0) || e.secs == Some(0) {
                    return Err(TheoryError::Bounds);
                }
                let from = match &e.kind {
                    ExperimentKind::CheckProof(names) => {
                        for n in names {
                            if self.proof(n).is_none() {
                                return Err(TheoryError::Unproved(n.clone()));
                            }
                        }
                        None
                    }
                    ExperimentKind::FindModel { from } => from.as_ref(),
                    ExperimentKind::FindCountermodel { conjecture, from } => {
                        if self.conjecture(conjecture).is_none() {
                            return Err(TheoryError::NotConjecture(conjecture.clone()));
                        }
                        from.as_ref()
                    }
                };
                for n in from.into_iter().flatten() {
                    if self.formula(n).is_none() {
                        return Err(TheoryError::Unknown(n.clone()));
                    }
                }
            }
        }
        self.items.push(item);
        Ok(())
    }

    /// Proof-checking environment: definitions, axioms (biconditionals
    /// split into both directions) and proved conjectures.
    pub fn environment(&self) -> Environment {
        let mut env = Environment::new(self.sig.clone());
        for item in &self.items {
            match item {
                Item::Axiom(n, f) => env.add_axiom(n, self.sig.valid(f).expect("validated")),
                Item::Proof(p) => env.add_lemma(&p.name, p.conclusion.clone(), p.frame),
                _ => {}
            }
        }
        env
    }

    /// Formulas named by an experiment, or all axioms.
    pub fn experiment_axioms(&self, from: Option<&[Name]>) -> Vec<(Name, ModalFormula)> {
        match from {
            Some(names) => names.iter().map(|n| (n.clone(), self.formula(n).expect("validated"))).collect(),
            None => self.axioms().into_iter().map(|(n, f)| (n.clone(), f.clone())).collect(),
        }
    }

    /// Embedded validity statements for every axiom and conjecture.
    pub fn embedded(&self) -> Vec<(Name, Term)> {
        self.axioms()
            .into_iter()
            .chain(self.conjectures())
            .map(|(n, f)| (n.clone(), self.sig.valid(f).expect("validated")))
            .collect()
    }
}
