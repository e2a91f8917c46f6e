#![allow(dead_code)]

use std::path::PathBuf;

use modalhol::modal::{
    DefArg, DefBody, FrameClass, IndivTerm, ModalFormula, PropTerm, Signature, FRAME_REFL, FRAME_SYM, FRAME_TRANS,
};
use modalhol::model::FiniteModel;
use modalhol::nd::{Block, Justification, Label, Line, Proof, Range, Step};
use modalhol::stt::{normalize, Name, Term, Type};
use modalhol::syntax::{parse_theory, DefItem, Expected, ExperimentKind, ExperimentSpec, Item, TheoryFile};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn corpus(name: &str) -> TheoryFile {
    let src = std::fs::read_to_string(corpus_dir().join(name)).unwrap();
    parse_theory(&src).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub const CORPUS: [&str; 5] =
    ["scott.thy", "scott_a1_split.thy", "scott_d2_broken.thy", "scott_k_t3.thy", "scott_a1a_t2.thy"];

/// Kripke semantics straight from the textbook clauses, over the modal
/// formula rather than its embedding. Properties are sets of
/// (individual, world) cells, kept as bitmasks with cell `i * worlds + w`.
pub struct Naive<'a> {
    m: &'a FiniteModel,
    sig: &'a Signature,
}

#[derive(Clone, Copy, Debug)]
enum Val {
    Indiv(usize),
    Ext(usize),
}

impl<'a> Naive<'a> {
    pub fn new(m: &'a FiniteModel, sig: &'a Signature) -> Self {
        Naive { m, sig }
    }

    fn cells(&self) -> usize {
        self.m.worlds() * self.m.indivs()
    }

    fn lookup(env: &[(String, Val)], n: &str) -> Val {
        env.iter().rev().find(|(v, _)| v == n).map(|(_, v)| *v).unwrap_or_else(|| panic!("unbound {n}"))
    }

    pub fn valid(&self, f: &ModalFormula) -> bool {
        (0..self.m.worlds()).all(|w| self.at(f, w))
    }

    pub fn at(&self, f: &ModalFormula, w: usize) -> bool {
        self.holds(f, w, &mut Vec::new())
    }

    fn holds(&self, f: &ModalFormula, w: usize, env: &mut Vec<(String, Val)>) -> bool {
        use ModalFormula as M;
        let worlds = self.m.worlds();
        match f {
            M::Truth => true,
            M::Falsity => false,
            M::Not(a) => !self.holds(a, w, env),
            M::And(a, b) => self.holds(a, w, env) && self.holds(b, w, env),
            M::Or(a, b) => self.holds(a, w, env) || self.holds(b, w, env),
            M::Implies(a, b) => !self.holds(a, w, env) || self.holds(b, w, env),
            M::Iff(a, b) => self.holds(a, w, env) == self.holds(b, w, env),
            M::Box(a) => (0..worlds).filter(|&v| self.m.access(w, v)).all(|v| self.holds(a, v, env)),
            M::Dia(a) => (0..worlds).filter(|&v| self.m.access(w, v)).any(|v| self.holds(a, v, env)),
            M::ForallIndiv(x, a) | M::ExistsIndiv(x, a) => {
                let all = matches!(f, M::ForallIndiv(..));
                let mut each = (0..self.m.indivs()).map(|i| {
                    env.push((x.to_string(), Val::Indiv(i)));
                    let b = self.holds(a, w, env);
                    env.pop();
                    b
                });
                if all {
                    each.all(|b| b)
                } else {
                    each.any(|b| b)
                }
            }
            M::ForallProp(p, a) | M::ExistsProp(p, a) => {
                let all = matches!(f, M::ForallProp(..));
                let mut each = (0..1usize << self.cells()).map(|e| {
                    env.push((p.to_string(), Val::Ext(e)));
                    let b = self.holds(a, w, env);
                    env.pop();
                    b
                });
                if all {
                    each.all(|b| b)
                } else {
                    each.any(|b| b)
                }
            }
            M::AtomApp(p, x) => {
                let e = self.prop(p, env);
                let i = self.indiv(x, env);
                e >> (i * worlds + w) & 1 == 1
            }
            M::Positive(p) => {
                let e = self.prop(p, env);
                self.m.positivity_table()[e * worlds + w]
            }
            M::DefApp(name, args) => {
                let d = self.sig.definition(name).expect("defined");
                let DefBody::Relation(body) = &d.body else { panic!("{name} is not a relation") };
                let mut inner: Vec<(String, Val)> = d
                    .params
                    .iter()
                    .zip(args)
                    .map(|((n, _), a)| {
                        let v = match a {
                            DefArg::Prop(p) => Val::Ext(self.prop(p, env)),
                            DefArg::Indiv(x) => Val::Indiv(self.indiv(x, env)),
                        };
                        (n.to_string(), v)
                    })
                    .collect();
                self.holds(body, w, &mut inner)
            }
        }
    }

    fn indiv(&self, x: &IndivTerm, env: &[(String, Val)]) -> usize {
        match x {
            IndivTerm::Var(n) => match Self::lookup(env, n) {
                Val::Indiv(i) => i,
                Val::Ext(_) => panic!("{n} is a property"),
            },
            IndivTerm::Const(n) => panic!("uninterpreted constant {n}"),
        }
    }

    fn prop(&self, p: &PropTerm, env: &mut Vec<(String, Val)>) -> usize {
        match p {
            PropTerm::Var(n) => match Self::lookup(env, n) {
                Val::Ext(e) => e,
                Val::Indiv(_) => panic!("{n} is an individual"),
            },
            PropTerm::Neg(q) => !self.prop(q, env) & ((1 << self.cells()) - 1),
            PropTerm::Lambda(x, body) => self.extension(x, body, env),
            PropTerm::Defined(n) => {
                let d = self.sig.definition(n).expect("defined");
                match &d.body {
                    DefBody::Property(q) => self.prop(q, &mut Vec::new()),
                    DefBody::Relation(_) => panic!("{n} is a relation"),
                }
            }
        }
    }

    fn extension(&self, x: &str, body: &ModalFormula, env: &mut Vec<(String, Val)>) -> usize {
        let worlds = self.m.worlds();
        let mut e = 0;
        for i in 0..self.m.indivs() {
            env.push((x.to_string(), Val::Indiv(i)));
            for w in 0..worlds {
                if self.holds(body, w, env) {
                    e |= 1 << (i * worlds + w);
                }
            }
            env.pop();
        }
        e
    }
}

pub fn random_access(rng: &mut StdRng, worlds: usize, symmetric: bool) -> Vec<bool> {
    let mut a: Vec<bool> = (0..worlds * worlds).map(|_| rng.gen_bool(0.5)).collect();
    if symmetric {
        for u in 0..worlds {
            for v in 0..u {
                a[u * worlds + v] = a[v * worlds + u];
            }
        }
    }
    a
}

/// A model with `worlds × indivs` cells and uniformly random access and
/// positivity.
pub fn random_model_of(rng: &mut StdRng, worlds: usize, indivs: usize) -> FiniteModel {
    let access = random_access(rng, worlds, false);
    let exts = 1usize << (worlds * indivs);
    let positivity = (0..exts * worlds).map(|_| rng.gen_bool(0.5)).collect();
    FiniteModel::new(worlds, indivs, access, positivity).unwrap()
}

pub fn random_model(rng: &mut StdRng, max_worlds: usize, max_indivs: usize) -> FiniteModel {
    let w = rng.gen_range(1..=max_worlds);
    let d = rng.gen_range(1..=max_indivs);
    random_model_of(rng, w, d)
}

/// Random models up to `(2, 2)` drawn so that the positivity axioms hold
/// often: besides uniform tables there are tables that pick exactly one of
/// each complementary pair, and tables generated by a single cell per
/// world (`pos(e)` iff the cell is in `e`).
pub fn structured_model(rng: &mut StdRng) -> FiniteModel {
    let worlds = rng.gen_range(1..=2);
    let indivs = rng.gen_range(1..=2);
    let symmetric = rng.gen_bool(0.5);
    let access = random_access(rng, worlds, symmetric);
    let exts = 1usize << (worlds * indivs);
    let full = exts - 1;
    let mut positivity = vec![false; exts * worlds];
    match rng.gen_range(0..3) {
        0 => positivity.iter_mut().for_each(|b| *b = rng.gen_bool(0.5)),
        1 => {
            for w in 0..worlds {
                for e in 0..exts {
                    if e < full - e {
                        let pick = if rng.gen_bool(0.5) { e } else { full - e };
                        positivity[pick * worlds + w] = true;
                    }
                }
            }
        }
        _ => {
            let global = rng.gen_bool(0.5);
            let first = rng.gen_range(0..worlds * indivs);
            for w in 0..worlds {
                let cell = if global { first } else { rng.gen_range(0..worlds * indivs) };
                for e in 0..exts {
                    positivity[e * worlds + w] = e >> cell & 1 == 1;
                }
            }
        }
    }
    FiniteModel::new(worlds, indivs, access, positivity).unwrap()
}

/// Every model of the given size, in index order.
pub fn all_models(worlds: usize, indivs: usize) -> impl Iterator<Item = FiniteModel> {
    let exts = 1usize << (worlds * indivs);
    let a_bits = worlds * worlds;
    let p_bits = exts * worlds;
    assert!(a_bits + p_bits < 32);
    (0u64..1 << (a_bits + p_bits)).map(move |code| {
        let access = (0..a_bits).map(|k| code >> k & 1 == 1).collect();
        let positivity = (0..p_bits).map(|k| code >> (a_bits + k) & 1 == 1).collect();
        FiniteModel::new(worlds, indivs, access, positivity).unwrap()
    })
}

/// Knobs for [`random_formula`].
#[derive(Clone, Copy, Debug)]
pub struct FormulaShape {
    pub depth: u32,
    /// Most property binders on any branch.
    pub prop_binders: usize,
    /// Whether `G`, `NE` and `ess` may occur.
    pub definitions: bool,
}

impl Default for FormulaShape {
    fn default() -> Self {
        FormulaShape { depth: 6, prop_binders: 2, definitions: true }
    }
}

const INDIV_NAMES: [&str; 3] = ["x", "y", "z"];
const PROP_NAMES: [&str; 2] = ["Phi", "Psi"];

struct Scope {
    indivs: Vec<&'static str>,
    props: Vec<&'static str>,
    prop_binders: usize,
}

/// A closed modal formula over the signature of the Scott theory.
pub fn random_formula(rng: &mut StdRng, shape: FormulaShape) -> ModalFormula {
    random_open_formula(rng, shape, &[], &[])
}

/// Like [`random_formula`], with the given variables free.
pub fn random_open_formula(
    rng: &mut StdRng,
    shape: FormulaShape,
    indivs: &[&'static str],
    props: &[&'static str],
) -> ModalFormula {
    let mut scope = Scope { indivs: indivs.to_vec(), props: props.to_vec(), prop_binders: 0 };
    formula(rng, shape, shape.depth, &mut scope)
}

fn formula(rng: &mut StdRng, shape: FormulaShape, depth: u32, scope: &mut Scope) -> ModalFormula {
    use ModalFormula as M;
    if depth == 0 || rng.gen_bool(0.15) {
        return atom(rng, shape, depth, scope);
    }
    let d = depth - 1;
    match rng.gen_range(0..11) {
        0 => M::not(formula(rng, shape, d, scope)),
        1 => M::and(formula(rng, shape, d, scope), formula(rng, shape, d, scope)),
        2 => M::or(formula(rng, shape, d, scope), formula(rng, shape, d, scope)),
        3 => M::implies(formula(rng, shape, d, scope), formula(rng, shape, d, scope)),
        4 => M::iff(formula(rng, shape, d, scope), formula(rng, shape, d, scope)),
        5 => M::boxed(formula(rng, shape, d, scope)),
        6 => M::dia(formula(rng, shape, d, scope)),
        k @ (9 | 10) if scope.prop_binders < shape.prop_binders => {
            let p = *PROP_NAMES.choose(rng).unwrap();
            scope.props.push(p);
            scope.prop_binders += 1;
            let body = formula(rng, shape, d, scope);
            scope.prop_binders -= 1;
            scope.props.pop();
            if k == 9 {
                M::forall_prop(p, body)
            } else {
                M::exists_prop(p, body)
            }
        }
        k => {
            let x = *INDIV_NAMES.choose(rng).unwrap();
            scope.indivs.push(x);
            let body = formula(rng, shape, d, scope);
            scope.indivs.pop();
            if k % 2 == 0 {
                M::forall_indiv(x, body)
            } else {
                M::exists_indiv(x, body)
            }
        }
    }
}

fn atom(rng: &mut StdRng, shape: FormulaShape, depth: u32, scope: &mut Scope) -> ModalFormula {
    use ModalFormula as M;
    let indiv = scope.indivs.choose(rng).copied();
    match (rng.gen_range(0..8), indiv) {
        (0, _) => M::Truth,
        (1, _) => M::Falsity,
        (2 | 3, _) => M::positive(prop(rng, shape, depth.saturating_sub(1), scope)),
        (4, Some(x)) if shape.definitions => M::DefApp(
            "ess".into(),
            vec![
                DefArg::Prop(prop(rng, shape, depth.saturating_sub(1), scope)),
                DefArg::Indiv(IndivTerm::Var(x.into())),
            ],
        ),
        (_, Some(x)) => M::atom(prop(rng, shape, depth.saturating_sub(1), scope), x),
        (_, None) => M::positive(prop(rng, shape, depth.saturating_sub(1), scope)),
    }
}

fn prop(rng: &mut StdRng, shape: FormulaShape, depth: u32, scope: &mut Scope) -> PropTerm {
    let var = scope.props.choose(rng).copied();
    match rng.gen_range(0..10) {
        0 | 1 if shape.definitions => PropTerm::defined("G"),
        2 if shape.definitions && scope.prop_binders == 0 => PropTerm::defined("NE"),
        3 if depth > 0 => PropTerm::neg(prop(rng, shape, depth - 1, scope)),
        4 | 5 if depth > 0 => {
            let x = *INDIV_NAMES.choose(rng).unwrap();
            scope.indivs.push(x);
            let body = formula(rng, shape, depth - 1, scope);
            scope.indivs.pop();
            PropTerm::lambda(x, body)
        }
        _ => match var {
            Some(p) => PropTerm::var(p),
            None => {
                let x = *INDIV_NAMES.choose(rng).unwrap();
                let body = if rng.gen_bool(0.5) { ModalFormula::Truth } else { ModalFormula::Falsity };
                PropTerm::lambda(x, body)
            }
        },
    }
}

/// The free variables available to [`random_term`] and their types.
pub fn term_context() -> Vec<(String, Type)> {
    vec![
        ("c".into(), Type::Indiv),
        ("u".into(), Type::World),
        ("p".into(), Type::Bool),
        ("f".into(), Type::arrow(Type::Indiv, Type::Indiv)),
        ("q".into(), Type::property()),
        ("s".into(), Type::arrow(Type::property(), Type::Bool)),
    ]
}

pub fn term_types() -> Vec<Type> {
    vec![Type::Bool, Type::Indiv, Type::World, Type::arrow(Type::Indiv, Type::Bool), Type::lifted(), Type::property()]
}

/// A random term of type `ty` whose free variables come from `ctx`;
/// applications of lambdas to arguments are common, so the result is
/// usually far from normal.
pub fn random_term(rng: &mut StdRng, ty: &Type, depth: u32, ctx: &mut Vec<(String, Type)>) -> Term {
    let vars: Vec<String> = ctx.iter().filter(|(_, t)| t == ty).map(|(n, _)| n.clone()).collect();
    let pick_var = |rng: &mut StdRng| vars.choose(rng).map(|n| Term::free(n));
    if depth == 0 || rng.gen_bool(0.2) {
        if let Some((a, b)) = ty.as_arrow() {
            if vars.is_empty() || rng.gen_bool(0.5) {
                return lambda(rng, a, b, 0, ctx);
            }
        }
        if let Some(v) = pick_var(rng) {
            return v;
        }
        if *ty == Type::Bool {
            return if rng.gen_bool(0.5) { Term::truth() } else { Term::falsity() };
        }
        panic!("no variable of type {ty}");
    }
    let d = depth - 1;
    let choice = rng.gen_range(0..10);
    if choice < 4 {
        let arg_ty = term_types().choose(rng).unwrap().clone();
        let fun = random_term(rng, &Type::arrow(arg_ty.clone(), ty.clone()), d, ctx);
        let arg = random_term(rng, &arg_ty, d, ctx);
        return Term::app(fun, arg);
    }
    if let Some((a, b)) = ty.as_arrow() {
        return lambda(rng, a, b, d, ctx);
    }
    if *ty == Type::Bool {
        return match choice {
            4 => Term::not(random_term(rng, ty, d, ctx)),
            5 => Term::and(random_term(rng, ty, d, ctx), random_term(rng, ty, d, ctx)),
            6 => Term::imp(random_term(rng, ty, d, ctx), random_term(rng, ty, d, ctx)),
            7 => Term::iff(random_term(rng, ty, d, ctx), random_term(rng, ty, d, ctx)),
            _ => {
                let bty = term_types().choose(rng).unwrap().clone();
                let x = format!("b{}", ctx.len());
                ctx.push((x.clone(), bty.clone()));
                let body = random_term(rng, ty, d, ctx);
                ctx.pop();
                if choice == 8 {
                    Term::forall(&x, bty, body)
                } else {
                    Term::exists(&x, bty, body)
                }
            }
        };
    }
    pick_var(rng).unwrap_or_else(|| random_term(rng, ty, 0, ctx))
}

fn lambda(rng: &mut StdRng, a: &Type, b: &Type, depth: u32, ctx: &mut Vec<(String, Type)>) -> Term {
    let x = format!("b{}", ctx.len());
    ctx.push((x.clone(), a.clone()));
    let body = random_term(rng, b, depth, ctx);
    ctx.pop();
    Term::lam(&x, a.clone(), body)
}

fn pick_names(rng: &mut StdRng, from: &[Name]) -> Vec<Name> {
    let k = rng.gen_range(1..=from.len().min(3));
    from.choose_multiple(rng, k).cloned().collect()
}

/// A random well-formed theory containing the Scott definitions. Proof
/// scripts are syntactically valid but need not check.
pub fn random_theory(rng: &mut StdRng) -> TheoryFile {
    let scott = corpus("scott.thy");
    let defs: Vec<Item> = scott.items().iter().filter(|i| matches!(i, Item::Def(_))).cloned().collect();
    let mut t = TheoryFile::new();
    let shape = FormulaShape { depth: 4, prop_binders: 2, definitions: true };
    if rng.gen_bool(0.7) {
        t.push(Item::Theory("generated".into())).unwrap();
    }
    if rng.gen_bool(0.7) {
        t.push(Item::Logic(FrameClass::ALL[rng.gen_range(0..3)])).unwrap();
    }
    for (k, ty) in term_types().into_iter().enumerate() {
        if rng.gen_bool(0.2) {
            t.push(Item::Const(format!("c{k}").into(), ty)).unwrap();
        }
    }
    for d in defs {
        t.push(d).unwrap();
    }
    let mut axioms: Vec<Name> = Vec::new();
    let mut conjectures: Vec<Name> = Vec::new();
    let mut proved: Vec<Name> = Vec::new();
    for k in 0..rng.gen_range(3..10) {
        let item = match rng.gen_range(0..12) {
            0 => Item::Def(DefItem {
                name: format!("H{k}").into(),
                params: vec![],
                body: DefBody::Property(PropTerm::lambda("x", random_open_formula(rng, shape, &["x"], &[]))),
            }),
            1 => Item::Def(DefItem {
                name: format!("rel{k}").into(),
                params: vec!["Phi".into(), "x".into()],
                body: DefBody::Relation(random_open_formula(rng, shape, &["x"], &["Phi"])),
            }),
            2..=4 => {
                let n: Name = format!("ax{k}").into();
                axioms.push(n.clone());
                Item::Axiom(n, random_formula(rng, shape))
            }
            5..=7 => {
                let n: Name = format!("cj{k}").into();
                conjectures.push(n.clone());
                Item::Conjecture(n, random_formula(rng, shape))
            }
            _ => match conjectures.iter().find(|c| !proved.contains(c)).cloned() {
                Some(c) if !axioms.is_empty() => {
                    let citable: Vec<Name> = axioms.iter().chain(&proved).cloned().collect();
                    let premises = pick_names(rng, &citable);
                    proved.push(c.clone());
                    Item::Proof(random_proof(rng, t.signature(), c, premises))
                }
                _ => continue,
            },
        };
        t.push(item).unwrap();
    }
    for k in 0..rng.gen_range(0..3) {
        let kind = match rng.gen_range(0..3) {
            0 if !proved.is_empty() => ExperimentKind::CheckProof(pick_names(rng, &proved)),
            1 if !conjectures.is_empty() => ExperimentKind::FindCountermodel {
                conjecture: conjectures.choose(rng).unwrap().clone(),
                from: (!axioms.is_empty() && rng.gen_bool(0.5)).then(|| pick_names(rng, &axioms)),
            },
            _ => ExperimentKind::FindModel {
                from: (!axioms.is_empty() && rng.gen_bool(0.5)).then(|| pick_names(rng, &axioms)),
            },
        };
        let opt = |rng: &mut StdRng, hi: u64| rng.gen_bool(0.4).then(|| rng.gen_range(1..=hi));
        let spec = ExperimentSpec {
            name: format!("e{k}").into(),
            kind,
            frame: rng.gen_bool(0.4).then(|| FrameClass::ALL[rng.gen_range(0..3)]),
            worlds: opt(rng, 3).map(|v| v as usize),
            indivs: opt(rng, 3).map(|v| v as usize),
            nodes: opt(rng, 1_000_000),
            secs: opt(rng, 100),
            expect: Expected::ALL[rng.gen_range(0..5)],
        };
        t.push(Item::Experiment(spec)).unwrap();
    }
    t
}

fn random_proof(rng: &mut StdRng, sig: &Signature, name: Name, premises: Vec<Name>) -> Proof {
    let mut cite = premises.clone();
    cite.extend([FRAME_REFL, FRAME_SYM, FRAME_TRANS].map(Name::from));
    let mut label = 0;
    let steps = random_steps(rng, sig, &cite, &mut Vec::new(), &mut label, 2);
    Proof { name, frame: FrameClass::ALL[rng.gen_range(0..3)], premises, steps, conclusion: Term::truth() }
}

fn random_steps(
    rng: &mut StdRng,
    sig: &Signature,
    cite: &[Name],
    eigens: &mut Vec<(Name, Type)>,
    label: &mut Label,
    depth: u32,
) -> Vec<Step> {
    let n = rng.gen_range(1..=3);
    let mut steps = Vec::new();
    for i in 0..n {
        if depth > 0 && i + 1 < n && rng.gen_bool(0.3) {
            let mut fixes = Vec::new();
            if rng.gen_bool(0.6) {
                fixes.push((format!("w{}", eigens.len()).into(), Type::World));
            }
            if rng.gen_bool(0.3) {
                fixes.push((format!("y{}", eigens.len()).into(), Type::Indiv));
            }
            let pushed = fixes.len();
            eigens.extend(fixes.iter().cloned());
            let inner = random_steps(rng, sig, cite, eigens, label, depth - 1);
            eigens.truncate(eigens.len() - pushed);
            steps.push(Step::Block(Block { fixes, steps: inner }));
        }
        *label += 1;
        steps.push(Step::Line(random_line(rng, sig, cite, eigens, *label)));
    }
    steps
}

fn random_line(rng: &mut StdRng, sig: &Signature, cite: &[Name], eigens: &[(Name, Type)], label: Label) -> Line {
    use Justification::*;
    let f = random_formula(rng, FormulaShape { depth: 3, prop_binders: 1, definitions: true });
    let world = eigens.iter().rev().find(|(_, t)| *t == Type::World).map(|(n, _)| n.clone());
    let formula = match world {
        Some(w) if rng.gen_bool(0.6) => {
            let t = Term::app(sig.embed(&f).unwrap(), Term::free(&w));
            if rng.gen_bool(0.5) {
                normalize(&t)
            } else {
                t
            }
        }
        _ => sig.valid(&f).unwrap(),
    };
    let mut l = || rng.gen_range(1..=label.max(1));
    let a = l();
    let b = l();
    let (c, d) = (l(), l());
    let r = Range::new(a.min(b), a.max(b));
    let s = Range::new(c.min(d), c.max(d));
    let terms = |rng: &mut StdRng| -> Vec<Term> {
        (0..rng.gen_range(1..=2))
            .map(|_| match eigens.choose(rng) {
                Some((n, _)) if rng.gen_bool(0.5) => Term::free(n),
                _ => Term::constant("G", Type::property()),
            })
            .collect()
    };
    let just = match rng.gen_range(0..24) {
        0 => Hypothesis,
        1 => AxiomRef(cite.choose(rng).unwrap().clone()),
        2 => DefUnfold(["G", "NE", "ess"].choose(rng).unwrap().to_string().into(), a),
        3 => ImpIntro(r),
        4 => ImpElim(a, b),
        5 => AndIntro(a, b),
        6 => AndElimL(a),
        7 => AndElimR(a),
        8 => OrIntroL(a),
        9 => OrIntroR(a),
        10 => OrElim(a, r, s),
        11 => NotIntro(r),
        12 => NotElim(a, b),
        13 => FalsityElim(a),
        14 => IffIntro(a, b),
        15 => IffElimL(a),
        16 => IffElimR(a),
        17 => ForallIntro(r),
        18 => ForallElim(a, terms(rng)),
        19 => ExistsIntro(a, terms(rng)),
        20 => ExistsElim(a, r),
        21 => DoubleNegElim(a),
        22 => BetaConv(a),
        _ => AxiomRef(cite[0].clone()),
    };
    Line { label, formula, just }
}
