use std::fmt::Write;

use super::theory::{DefItem, ExperimentKind, ExperimentSpec, Item, TheoryFile};
use crate::modal::{DefArg, DefBody, IndivTerm, ModalFormula, PropTerm};
use crate::nd::{Block, Justification, Line, Proof, Range, Step};
use crate::stt::Name;

const IFF: u8 = 0;
const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;

/// Prints a modal formula with as few parentheses as the grammar allows.
pub fn print_formula(f: &ModalFormula) -> String {
    let mut out = String::new();
    formula(&mut out, f, IFF);
    out
}

pub fn print_prop(p: &PropTerm) -> String {
    let mut out = String::new();
    prop(&mut out, p);
    out
}

fn formula(out: &mut String, f: &ModalFormula, prec: u8) {
    use ModalFormula as M;
    let (level, l, r, sym) = match f {
        M::Iff(..) => (IFF, IMP, IMP, "<->"),
        M::Implies(..) => (IMP, OR, IMP, "->"),
        M::Or(..) => (OR, OR, AND, "|"),
        M::And(..) => (AND, AND, UNARY, "&"),
        _ => (UNARY, 0, 0, ""),
    };
    let paren = level < prec;
    if paren {
        out.push('(');
    }
    match f {
        M::Iff(a, b) | M::Implies(a, b) | M::Or(a, b) | M::And(a, b) => {
            formula(out, a, l);
            let _ = write!(out, " {sym} ");
            formula(out, b, r);
        }
        M::Not(a) => {
            out.push('~');
            formula(out, a, UNARY);
        }
        M::Box(a) => {
            out.push_str("box ");
            formula(out, a, UNARY);
        }
        M::Dia(a) => {
            out.push_str("dia ");
            formula(out, a, UNARY);
        }
        M::ForallIndiv(..) | M::ForallProp(..) | M::ExistsIndiv(..) | M::ExistsProp(..) => {
            let universal = matches!(f, M::ForallIndiv(..) | M::ForallProp(..));
            out.push_str(if universal { "![" } else { "?[" });
            let mut cur = f;
            let mut first = true;
            loop {
                let (v, body) = match (universal, cur) {
                    (true, M::ForallIndiv(v, b) | M::ForallProp(v, b)) => (v, b),
                    (false, M::ExistsIndiv(v, b) | M::ExistsProp(v, b)) => (v, b),
                    _ => break,
                };
                if !first {
                    out.push_str(", ");
                }
                first = false;
                out.push_str(v);
                cur = body;
            }
            out.push_str("]: ");
            formula(out, cur, UNARY);
        }
        M::Truth => out.push_str("$true"),
        M::Falsity => out.push_str("$false"),
        M::AtomApp(p, x) => {
            match p {
                PropTerm::Lambda(..) => {
                    out.push('(');
                    prop(out, p);
                    out.push(')');
                }
                _ => prop(out, p),
            }
            out.push('(');
            indiv(out, x);
            out.push(')');
        }
        M::Positive(p) => {
            out.push_str("pos(");
            prop(out, p);
            out.push(')');
        }
        M::DefApp(name, args) => {
            out.push_str(name);
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                match a {
                    DefArg::Prop(p) => prop(out, p),
                    DefArg::Indiv(x) => indiv(out, x),
                }
            }
            out.push(')');
        }
    }
    if paren {
        out.push(')');
    }
}

fn prop(out: &mut String, p: &PropTerm) {
    match p {
        PropTerm::Var(n) | PropTerm::Defined(n) => out.push_str(n),
        PropTerm::Neg(q) => {
            out.push_str("non(");
            prop(out, q);
            out.push(')');
        }
        PropTerm::Lambda(x, body) => {
            let _ = write!(out, "\\[{x}]: ");
            formula(out, body, IFF);
        }
    }
}

fn indiv(out: &mut String, x: &IndivTerm) {
    match x {
        IndivTerm::Var(n) | IndivTerm::Const(n) => out.push_str(n),
    }
}

fn names(ns: &[Name]) -> String {
    ns.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(", ")
}

fn range(r: &Range) -> String {
    format!("{}-{}", r.first, r.last)
}

fn justification(j: &Justification) -> String {
    use Justification::*;
    let rule = j.rule();
    let terms = |ts: &[crate::stt::Term]| ts.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", ");
    match j {
        Hypothesis => rule.into(),
        AxiomRef(n) => format!("{rule} {n}"),
        DefUnfold(n, l) => format!("{rule} {n} {l}"),
        ImpIntro(r) | NotIntro(r) | ForallIntro(r) => format!("{rule} {}", range(r)),
        ImpElim(a, b) | AndIntro(a, b) | NotElim(a, b) | IffIntro(a, b) => format!("{rule} {a}, {b}"),
        AndElimL(a) | AndElimR(a) | OrIntroL(a) | OrIntroR(a) | FalsityElim(a) | IffElimL(a) | IffElimR(a)
        | DoubleNegElim(a) | BetaConv(a) => format!("{rule} {a}"),
        OrElim(a, r1, r2) => format!("{rule} {a}, {}, {}", range(r1), range(r2)),
        ForallElim(a, ts) | ExistsIntro(a, ts) => format!("{rule} {a} [{}]", terms(ts)),
        ExistsElim(a, r) => format!("{rule} {a}, {}", range(r)),
    }
}

fn steps(out: &mut String, steps: &[Step], indent: usize) {
    let pad = "  ".repeat(indent);
    for s in steps {
        match s {
            Step::Line(Line { label, formula, just }) => {
                let _ = writeln!(out, "{pad}{label}. {formula} by {}", justification(just));
            }
            Step::Block(Block { fixes, steps: inner }) => {
                out.push_str(&pad);
                out.push('{');
                if !fixes.is_empty() {
                    let fx: Vec<String> = fixes.iter().map(|(n, t)| format!("{n}:{t}")).collect();
                    let _ = write!(out, " fix {}", fx.join(", "));
                }
                out.push('\n');
                self::steps(out, inner, indent + 1);
                let _ = writeln!(out, "{pad}}}");
            }
        }
    }
}

pub fn print_proof(p: &Proof) -> String {
    let mut out = format!("proof {} logic {}", p.name, p.frame);
    if !p.premises.is_empty() {
        let _ = write!(out, " from {}", names(&p.premises));
    }
    out.push_str(" {\n");
    steps(&mut out, &p.steps, 1);
    out.push_str("}\n");
    out
}

fn experiment(e: &ExperimentSpec) -> String {
    let mut out = format!("experiment {} : {}", e.name, e.kind.keyword());
    match &e.kind {
        ExperimentKind::CheckProof(ns) => {
            let _ = write!(out, " {}", names(ns));
        }
        ExperimentKind::FindModel { from } => {
            if let Some(ns) = from {
                let _ = write!(out, " from {}", names(ns));
            }
        }
        ExperimentKind::FindCountermodel { conjecture, from } => {
            let _ = write!(out, " {conjecture}");
            if let Some(ns) = from {
                let _ = write!(out, " from {}", names(ns));
            }
        }
    }
    if let Some(fc) = e.frame {
        let _ = write!(out, " logic {fc}");
    }
    for (kw, v) in [
        ("worlds", e.worlds.map(|v| v as u64)),
        ("indivs", e.indivs.map(|v| v as u64)),
        ("nodes", e.nodes),
        ("secs", e.secs),
    ] {
        if let Some(v) = v {
            let _ = write!(out, " {kw} {v}");
        }
    }
    let _ = writeln!(out, " expect {}", e.expect.keyword());
    out
}

pub fn print_item(item: &Item) -> String {
    match item {
        Item::Theory(n) => format!("theory {n}\n"),
        Item::Logic(fc) => format!("logic {fc}\n"),
        Item::Const(n, ty) => format!("const {n} : {ty}\n"),
        Item::Def(DefItem { name, params, body }) => match body {
            DefBody::Property(p) => format!("def {name} := {}\n", print_prop(p)),
            DefBody::Relation(f) => format!("def {name}({}) := {}\n", names(params), print_formula(f)),
        },
        Item::Axiom(n, f) => format!("axiom {n} : {}\n", print_formula(f)),
        Item::Conjecture(n, f) => format!("conjecture {n} : {}\n", print_formula(f)),
        Item::Proof(p) => print_proof(p),
        Item::Experiment(e) => experiment(e),
    }
}

/// Prints a theory in the syntax accepted by [`super::parse_theory`].
pub fn print_theory(t: &TheoryFile) -> String {
    t.items().iter().map(print_item).collect()
}
