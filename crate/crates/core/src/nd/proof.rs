use std::collections::BTreeSet;

use crate::modal::FrameClass;
use crate::stt::{Name, Term, Type};

/// Line numbers as written in the proof script.
pub type Label = u32;

/// A closed subproof, named by the labels of its first and last lines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Range {
    pub first: Label,
    pub last: Label,
}

impl Range {
    pub fn new(first: Label, last: Label) -> Self {
        Range { first, last }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Hypothesis,
    AxiomRef(Name),
    /// The line equals the cited line once the definition is unfolded in
    /// both.
    DefUnfold(Name, Label),
    ImpIntro(Range),
    ImpElim(Label, Label),
    AndIntro(Label, Label),
    AndElimL(Label),
    AndElimR(Label),
    OrIntroL(Label),
    OrIntroR(Label),
    OrElim(Label, Range, Range),
    NotIntro(Range),
    NotElim(Label, Label),
    FalsityElim(Label),
    IffIntro(Label, Label),
    IffElimL(Label),
    IffElimR(Label),
    /// The eigenvariables are the subproof's fixed variables.
    ForallIntro(Range),
    ForallElim(Label, Vec<Term>),
    ExistsIntro(Label, Vec<Term>),
    ExistsElim(Label, Range),
    DoubleNegElim(Label),
    BetaConv(Label),
}

impl Justification {
    /// Name of the rule as written in proof scripts.
    pub fn rule(&self) -> &'static str {
        use Justification::*;
        match self {
            Hypothesis => "hyp",
            AxiomRef(_) => "ax",
            DefUnfold(..) => "def",
            ImpIntro(_) => "imp_intro",
            ImpElim(..) => "imp_elim",
            AndIntro(..) => "and_intro",
            AndElimL(_) => "and_elim1",
            AndElimR(_) => "and_elim2",
            OrIntroL(_) => "or_intro1",
            OrIntroR(_) => "or_intro2",
            OrElim(..) => "or_elim",
            NotIntro(_) => "not_intro",
            NotElim(..) => "not_elim",
            FalsityElim(_) => "false_elim",
            IffIntro(..) => "iff_intro",
            IffElimL(_) => "iff_elim1",
            IffElimR(_) => "iff_elim2",
            ForallIntro(_) => "forall_intro",
            ForallElim(..) => "forall_elim",
            ExistsIntro(..) => "exists_intro",
            ExistsElim(..) => "exists_elim",
            DoubleNegElim(_) => "dne",
            BetaConv(_) => "beta",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub label: Label,
    pub formula: Term,
    pub just: Justification,
}

/// A subproof: optional fixed variables, then steps. A hypothesis, if any,
/// is its first line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub fixes: Vec<(Name, Type)>,
    pub steps: Vec<Step>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Line(Line),
    Block(Block),
}

impl Step {
    pub fn first_label(&self) -> Option<Label> {
        match self {
            Step::Line(l) => Some(l.label),
            Step::Block(b) => b.steps.first().and_then(Step::first_label),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    pub name: Name,
    pub frame: FrameClass,
    pub premises: Vec<Name>,
    pub steps: Vec<Step>,
    pub conclusion: Term,
}

impl Proof {
    /// Every line of the proof in script order.
    pub fn lines(&self) -> Vec<&Line> {
        fn walk<'a>(steps: &'a [Step], out: &mut Vec<&'a Line>) {
            for s in steps {
                match s {
                    Step::Line(l) => out.push(l),
                    Step::Block(b) => walk(&b.steps, out),
                }
            }
        }
        let mut out = Vec::new();
        walk(&self.steps, &mut out);
        out
    }
}

/// Names cited by `ax` justifications, including frame axioms.
pub fn axioms_used(p: &Proof) -> BTreeSet<Name> {
    p.lines()
        .into_iter()
        .filter_map(|l| match &l.just {
            Justification::AxiomRef(n) => Some(n.clone()),
            _ => None,
        })
        .collect()
}
