use std::collections::{BTreeSet, HashSet};

use thiserror::Error;

use super::proof::{Block, Justification, Label, Line, Proof, Range, Step};
use crate::modal::{FrameClass, Signature};
use crate::stt::{self, Name, Term, Type, TypeError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactKind {
    Axiom,
    /// A conjecture proved under the given frame class.
    Lemma(FrameClass),
}

/// A closed formula that proofs may cite by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fact {
    pub name: Name,
    pub formula: Term,
    pub kind: FactKind,
}

/// Definitions and citable facts a proof is checked against.
#[derive(Clone, Debug, Default)]
pub struct Environment {
    pub sig: Signature,
    facts: Vec<Fact>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("`{0}` is not a biconditional under universal quantifiers")]
pub struct NotBiconditional(pub Name);

/// Splits `∀x̄. lhs ↔ rhs` into `∀x̄. lhs → rhs` (named `<name>a`) and
/// `∀x̄. rhs → lhs` (named `<name>b`).
pub fn split_biconditional_axiom(name: &str, formula: &Term) -> Result<[(Name, Term); 2], NotBiconditional> {
    fn split(t: &Term) -> Option<(Term, Term)> {
        if let Some((l, r)) = t.as_iff() {
            return Some((Term::imp(l.clone(), r.clone()), Term::imp(r.clone(), l.clone())));
        }
        let Term::App(q, lam) = t else { return None };
        let Term::Lam(hint, ty, body) = &**lam else { return None };
        t.as_forall()?;
        let (a, b) = split(body)?;
        let wrap = |x: Term| Term::app((**q).clone(), Term::Lam(hint.clone(), ty.clone(), x.into()));
        Some((wrap(a), wrap(b)))
    }
    let (a, b) = split(formula).ok_or_else(|| NotBiconditional(name.into()))?;
    Ok([(format!("{name}a").into(), a), (format!("{name}b").into(), b)])
}

impl Environment {
    pub fn new(sig: Signature) -> Self {
        Environment { sig, facts: Vec::new() }
    }

    pub fn facts(&self) -> &[Fact] {
        &self.facts
    }

    pub fn fact(&self, name: &str) -> Option<&Fact> {
        self.facts.iter().rev().find(|f| &*f.name == name)
    }

    /// Adds an axiom; a biconditional axiom also makes its two directions
    /// citable as `<name>a` and `<name>b`.
    pub fn add_axiom(&mut self, name: &str, formula: Term) {
        if let Ok(parts) = split_biconditional_axiom(name, &formula) {
            for (n, t) in parts {
                if self.fact(&n).is_none() {
                    self.facts.push(Fact { name: n, formula: t, kind: FactKind::Axiom });
                }
            }
        }
        self.facts.push(Fact { name: name.into(), formula, kind: FactKind::Axiom });
    }

    pub fn add_lemma(&mut self, name: &str, formula: Term, frame: FrameClass) {
        self.facts.push(Fact { name: name.into(), formula, kind: FactKind::Lemma(frame) });
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Reason {
    #[error("line {0} is not accessible here")]
    Inaccessible(Label),
    #[error("no closed subproof {}-{} is accessible here", .0.first, .0.last)]
    NoSubproof(Range),
    #[error("line number {0} is used twice")]
    DuplicateLabel(Label),
    #[error("a hypothesis may only open a subproof")]
    MisplacedHypothesis,
    #[error("a subproof must end with a line")]
    MalformedBlock,
    #[error("`{0}` is not a premise of this proof")]
    NotPremise(Name),
    #[error("`{name}` is not a frame axiom of {frame}")]
    FrameAxiom { name: Name, frame: FrameClass },
    #[error("unknown definition `{0}`")]
    UnknownDefinition(Name),
    #[error("eigenvariable `{0}` is not fresh")]
    NotFresh(Name),
    #[error("{rule}: {detail}")]
    Rule { rule: &'static str, detail: String },
    #[error("formula is not boolean, it has type {0}")]
    NotFormula(Type),
    #[error("type error: {0}")]
    Type(TypeError),
    #[error("last line does not state the conclusion {0}")]
    Conclusion(Term),
    #[error("proof has no steps")]
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("step {step}: {reason}")]
    FailedStep { step: Label, reason: Reason },
    #[error("unknown premise `{0}`")]
    MissingAxiom(Name),
    #[error("premise `{name}` was proved under {needs}, stronger than {frame}")]
    LemmaFrame { name: Name, needs: FrameClass, frame: FrameClass },
    #[error("proof `{0}` cites itself")]
    SelfCitation(Name),
}

impl ProofError {
    /// The failing step, if the error is tied to one.
    pub fn step(&self) -> Option<Label> {
        match self {
            ProofError::FailedStep { step, .. } => Some(*step),
            _ => None,
        }
    }

    pub fn is_type_error(&self) -> bool {
        matches!(self, ProofError::FailedStep { reason: Reason::Type(_) | Reason::NotFormula(_), .. })
    }
}

/// Checks `p` against `env`.
///
/// Formulas are compared up to alpha-beta equivalence. Citations are limited
/// to the proof's premises and the frame axioms of its frame class.
pub fn check_proof(p: &Proof, env: &Environment) -> Result<(), ProofError> {
    for name in &p.premises {
        if *name == p.name {
            return Err(ProofError::SelfCitation(name.clone()));
        }
        let fact = env.fact(name).ok_or_else(|| ProofError::MissingAxiom(name.clone()))?;
        if let FactKind::Lemma(needs) = fact.kind {
            if !p.frame.includes(needs) {
                return Err(ProofError::LemmaFrame { name: name.clone(), needs, frame: p.frame });
            }
        }
    }
    let mut checker = Checker { env, proof: p, scopes: vec![Scope::default()], labels: HashSet::new() };
    checker.steps(&p.steps, false)?;
    let last = match p.steps.last() {
        Some(Step::Line(l)) => l,
        Some(Step::Block(b)) => {
            let step = b.steps.first().and_then(Step::first_label).unwrap_or(0);
            return Err(fail(step, Reason::Conclusion(p.conclusion.clone())));
        }
        None => return Err(fail(0, Reason::Empty)),
    };
    let formula = checker.scopes[0].lines.last().map(|(_, t)| t).expect("a line was checked");
    if !stt::alpha_eq(formula, &stt::normalize(&p.conclusion)) {
        return Err(fail(last.label, Reason::Conclusion(p.conclusion.clone())));
    }
    Ok(())
}

fn fail(step: Label, reason: Reason) -> ProofError {
    ProofError::FailedStep { step, reason }
}

#[derive(Default)]
struct Scope {
    vars: Vec<(Name, Type)>,
    lines: Vec<(Label, Term)>,
    blocks: Vec<Closed>,
}

struct Closed {
    range: Range,
    fixes: Vec<(Name, Type)>,
    hyp: Option<Term>,
    conclusion: Term,
}

struct Checker<'a> {
    env: &'a Environment,
    proof: &'a Proof,
    scopes: Vec<Scope>,
    labels: HashSet<Label>,
}

impl Checker<'_> {
    fn lookup_type(&self, n: &str) -> Option<Type> {
        self.scopes
            .iter()
            .rev()
            .flat_map(|s| s.vars.iter().rev())
            .find(|(v, _)| &**v == n)
            .map(|(_, t)| t.clone())
            .or_else(|| self.env.sig.constant_type(n))
    }

    fn typecheck(&self, t: &Term) -> Result<Type, TypeError> {
        stt::typecheck_with(t, &|n| self.lookup_type(n))
    }

    fn line(&self, at: Label, i: Label) -> Result<&Term, ProofError> {
        self.scopes
            .iter()
            .rev()
            .flat_map(|s| s.lines.iter())
            .find(|(l, _)| *l == i)
            .map(|(_, t)| t)
            .ok_or_else(|| fail(at, Reason::Inaccessible(i)))
    }

    fn block(&self, at: Label, r: Range) -> Result<&Closed, ProofError> {
        self.scopes
            .iter()
            .rev()
            .flat_map(|s| s.blocks.iter())
            .find(|b| b.range == r)
            .ok_or_else(|| fail(at, Reason::NoSubproof(r)))
    }

    fn steps(&mut self, steps: &[Step], in_block: bool) -> Result<(), ProofError> {
        for (i, s) in steps.iter().enumerate() {
            match s {
                Step::Line(l) => {
                    if l.just == Justification::Hypothesis && !(in_block && i == 0) {
                        return Err(fail(l.label, Reason::MisplacedHypothesis));
                    }
                    self.check_line(l)?;
                }
                Step::Block(b) => self.block_step(b)?,
            }
        }
        Ok(())
    }

    fn block_step(&mut self, b: &Block) -> Result<(), ProofError> {
        let (first, last) = match (b.steps.first().and_then(Step::first_label), b.steps.last()) {
            (Some(f), Some(Step::Line(l))) => (f, l.label),
            _ => {
                let at = b.steps.first().and_then(Step::first_label).unwrap_or(0);
                return Err(fail(at, Reason::MalformedBlock));
            }
        };
        for (n, _) in &b.fixes {
            let taken = self.lookup_type(n).is_some() || b.fixes.iter().filter(|(m, _)| m == n).count() > 1;
            if taken {
                return Err(fail(first, Reason::NotFresh(n.clone())));
            }
        }
        self.scopes.push(Scope { vars: b.fixes.clone(), ..Scope::default() });
        let r = self.steps(&b.steps, true);
        let scope = self.scopes.pop().expect("pushed above");
        r?;
        let hyp = match &b.steps[0] {
            Step::Line(l) if l.just == Justification::Hypothesis => Some(scope.lines[0].1.clone()),
            _ => None,
        };
        let conclusion = scope.lines.last().expect("block ends with a line").1.clone();
        self.scopes.last_mut().expect("root scope").blocks.push(Closed {
            range: Range::new(first, last),
            fixes: b.fixes.clone(),
            hyp,
            conclusion,
        });
        Ok(())
    }

    fn check_line(&mut self, l: &Line) -> Result<(), ProofError> {
        if !self.labels.insert(l.label) {
            return Err(fail(l.label, Reason::DuplicateLabel(l.label)));
        }
        match self.typecheck(&l.formula) {
            Ok(Type::Bool) => {}
            Ok(ty) => return Err(fail(l.label, Reason::NotFormula(ty))),
            Err(e) => return Err(fail(l.label, Reason::Type(e))),
        }
        let f = stt::normalize(&l.formula);
        self.justify(l.label, &f, &l.just)?;
        self.scopes.last_mut().expect("root scope").lines.push((l.label, f));
        Ok(())
    }

    fn justify(&self, at: Label, f: &Term, just: &Justification) -> Result<(), ProofError> {
        use Justification::*;
        let rule = just.rule();
        let bad = |detail: String| fail(at, Reason::Rule { rule, detail });
        let eq = |a: &Term, b: &Term| stt::alpha_eq(a, b);
        let expect = |got: &Term, want: &Term| {
            if eq(got, want) {
                Ok(())
            } else {
                Err(bad(format!("expected {want}")))
            }
        };
        let shape = |i: Label, what: &str| bad(format!("line {i} is not {what}"));
        match just {
            Hypothesis => Ok(()),
            AxiomRef(name) => {
                let want = if FrameClass::is_frame_axiom_name(name) {
                    self.proof
                        .frame
                        .axiom(name)
                        .ok_or_else(|| fail(at, Reason::FrameAxiom { name: name.clone(), frame: self.proof.frame }))?
                } else {
                    if !self.proof.premises.contains(name) {
                        return Err(fail(at, Reason::NotPremise(name.clone())));
                    }
                    self.env.fact(name).expect("premises were resolved").formula.clone()
                };
                expect(f, &stt::normalize(&want))
            }
            DefUnfold(name, i) => {
                let def =
                    self.env.sig.definition(name).ok_or_else(|| fail(at, Reason::UnknownDefinition(name.clone())))?;
                let unfold = |t: &Term| stt::normalize(&stt::unfold_const(t, name, &def.definiens));
                let src = self.line(at, *i)?;
                if eq(&unfold(f), &unfold(src)) {
                    Ok(())
                } else {
                    Err(bad(format!("line {i} and this line differ beyond unfolding `{name}`")))
                }
            }
            ImpIntro(r) => {
                let b = self.block(at, *r)?;
                let hyp = self.hypothesis(at, b, rule)?;
                expect(f, &Term::imp(hyp.clone(), b.conclusion.clone()))
            }
            ImpElim(i, j) => {
                let (a, c) = self.line(at, *i)?.as_imp().ok_or_else(|| shape(*i, "an implication"))?;
                expect(self.line(at, *j)?, a)?;
                expect(f, c)
            }
            AndIntro(i, j) => expect(f, &Term::and(self.line(at, *i)?.clone(), self.line(at, *j)?.clone())),
            AndElimL(i) | AndElimR(i) => {
                let (a, b) = self.line(at, *i)?.as_and().ok_or_else(|| shape(*i, "a conjunction"))?;
                expect(f, if matches!(just, AndElimL(_)) { a } else { b })
            }
            OrIntroL(i) | OrIntroR(i) => {
                let (a, b) = f.as_or().ok_or_else(|| bad("this line is not a disjunction".into()))?;
                expect(self.line(at, *i)?, if matches!(just, OrIntroL(_)) { a } else { b })
            }
            OrElim(i, r1, r2) => {
                let (a, b) = self.line(at, *i)?.as_or().ok_or_else(|| shape(*i, "a disjunction"))?;
                for (r, side) in [(r1, a), (r2, b)] {
                    let blk = self.block(at, *r)?;
                    expect(self.hypothesis(at, blk, rule)?, side)?;
                    expect(f, &blk.conclusion)?;
                }
                Ok(())
            }
            NotIntro(r) => {
                let b = self.block(at, *r)?;
                let hyp = self.hypothesis(at, b, rule)?;
                if !b.conclusion.is_false() {
                    return Err(bad("the subproof must end in $false".into()));
                }
                expect(f, &Term::not(hyp.clone()))
            }
            NotElim(i, j) => {
                if !f.is_false() {
                    return Err(bad("this line must be $false".into()));
                }
                let (a, b) = (self.line(at, *i)?, self.line(at, *j)?);
                let contradicts = |p: &Term, q: &Term| q.as_not().is_some_and(|n| eq(n, p));
                if contradicts(a, b) || contradicts(b, a) {
                    Ok(())
                } else {
                    Err(bad(format!("lines {i} and {j} are not contradictory")))
                }
            }
            FalsityElim(i) => {
                if self.line(at, *i)?.is_false() {
                    Ok(())
                } else {
                    Err(shape(*i, "$false"))
                }
            }
            IffIntro(i, j) => {
                let (a, b) = self.line(at, *i)?.as_imp().ok_or_else(|| shape(*i, "an implication"))?;
                expect(self.line(at, *j)?, &Term::imp(b.clone(), a.clone()))?;
                expect(f, &Term::iff(a.clone(), b.clone()))
            }
            IffElimL(i) | IffElimR(i) => {
                let (a, b) = self.line(at, *i)?.as_iff().ok_or_else(|| shape(*i, "a biconditional"))?;
                let want = if matches!(just, IffElimL(_)) {
                    Term::imp(a.clone(), b.clone())
                } else {
                    Term::imp(b.clone(), a.clone())
                };
                expect(f, &want)
            }
            ForallIntro(r) => {
                let b = self.block(at, *r)?;
                if b.fixes.is_empty() || b.hyp.is_some() {
                    return Err(bad("the subproof must fix variables and assume nothing".into()));
                }
                let want =
                    b.fixes.iter().rev().fold(b.conclusion.clone(), |acc, (n, ty)| Term::forall(n, ty.clone(), acc));
                expect(f, &want)
            }
            ForallElim(i, witnesses) => {
                let inst = self.instantiate(at, self.line(at, *i)?, witnesses, true, rule)?;
                expect(f, &inst)
            }
            ExistsIntro(i, witnesses) => {
                let inst = self.instantiate(at, f, witnesses, false, rule)?;
                expect(self.line(at, *i)?, &inst)
            }
            ExistsElim(i, r) => {
                let b = self.block(at, *r)?;
                let hyp = self.hypothesis(at, b, rule)?;
                if b.fixes.is_empty() {
                    return Err(bad("the subproof must fix the witnesses".into()));
                }
                let witnesses: Vec<Term> = b.fixes.iter().map(|(n, _)| Term::Free(n.clone())).collect();
                let inst = self.instantiate_with(at, self.line(at, *i)?, &b.fixes, &witnesses, rule)?;
                expect(hyp, &inst)?;
                expect(f, &b.conclusion)
            }
            DoubleNegElim(i) => {
                let inner =
                    self.line(at, *i)?.as_not().and_then(Term::as_not).ok_or_else(|| shape(*i, "a double negation"))?;
                expect(f, inner)
            }
            BetaConv(i) => expect(f, self.line(at, *i)?),
        }
    }

    fn hypothesis<'b>(&self, at: Label, b: &'b Closed, rule: &'static str) -> Result<&'b Term, ProofError> {
        if !b.fixes.is_empty() && rule != "exists_elim" {
            return Err(fail(at, Reason::Rule { rule, detail: "the subproof must not fix variables".into() }));
        }
        b.hyp
            .as_ref()
            .ok_or_else(|| fail(at, Reason::Rule { rule, detail: "the subproof must open with a hypothesis".into() }))
    }

    /// Strips one quantifier per witness, checking witness types.
    fn instantiate(
        &self,
        at: Label,
        t: &Term,
        witnesses: &[Term],
        universal: bool,
        rule: &'static str,
    ) -> Result<Term, ProofError> {
        let mut cur = t.clone();
        for (k, w) in witnesses.iter().enumerate() {
            let (_, ty, body) = if universal { cur.as_forall() } else { cur.as_exists() }.ok_or_else(|| {
                let q = if universal { "universal" } else { "existential" };
                fail(
                    at,
                    Reason::Rule { rule, detail: format!("witness {} has no {q} quantifier to instantiate", k + 1) },
                )
            })?;
            let wty = self.typecheck(w).map_err(|e| fail(at, Reason::Type(e)))?;
            if wty != *ty {
                return Err(fail(
                    at,
                    Reason::Rule { rule, detail: format!("witness {} has type {wty}, expected {ty}", k + 1) },
                ));
            }
            cur = stt::normalize(&stt::instantiate(body, w));
        }
        Ok(cur)
    }

    /// Opens `∃x1..xn` with the given eigenvariables.
    fn instantiate_with(
        &self,
        at: Label,
        t: &Term,
        fixes: &[(Name, Type)],
        witnesses: &[Term],
        rule: &'static str,
    ) -> Result<Term, ProofError> {
        let mut cur = t.clone();
        for ((n, ty), w) in fixes.iter().zip(witnesses) {
            let (_, qty, body) = cur.as_exists().ok_or_else(|| {
                fail(at, Reason::Rule { rule, detail: format!("no existential quantifier left for `{n}`") })
            })?;
            if qty != ty {
                return Err(fail(at, Reason::Rule { rule, detail: format!("`{n}` has type {ty}, expected {qty}") }));
            }
            cur = stt::normalize(&stt::instantiate(body, w));
        }
        Ok(cur)
    }
}

/// Names the proof cites, with cited lemmas replaced by the axioms their own
/// proofs use, recursively. `proof_of` gives the proof of a lemma.
pub fn axioms_used_transitive<'a>(
    p: &'a Proof,
    env: &Environment,
    proof_of: &dyn Fn(&str) -> Option<&'a Proof>,
) -> BTreeSet<Name> {
    let mut out = BTreeSet::new();
    let mut seen = HashSet::new();
    let mut todo = vec![p];
    while let Some(q) = todo.pop() {
        if !seen.insert(q.name.clone()) {
            continue;
        }
        for n in super::proof::axioms_used(q) {
            let is_lemma = matches!(env.fact(&n).map(|f| &f.kind), Some(FactKind::Lemma(_)));
            match proof_of(&n) {
                Some(sub) if is_lemma => todo.push(sub),
                _ => {
                    out.insert(n);
                }
            }
        }
    }
    out
}
