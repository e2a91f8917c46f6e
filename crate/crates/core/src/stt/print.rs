use std::collections::BTreeSet;
use std::fmt;

use super::{constants, free_vars, Logic, Name, Term, Type};

// Precedence levels, loosest first.
const IFF: u8 = 0;
const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    cs.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Prints terms in the HOL step syntax of theory files. Binder names are
/// renamed where needed so that the output reads back to the same term.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut taken: BTreeSet<String> = free_vars(self).iter().map(|n| n.to_string()).collect();
        taken.extend(constants(self).into_iter().map(|(n, _)| n.to_string()));
        let mut p = Printer { out: f, taken, stack: Vec::new() };
        p.term(self, IFF)
    }
}

struct Printer<'a, 'b> {
    out: &'a mut fmt::Formatter<'b>,
    taken: BTreeSet<String>,
    stack: Vec<String>,
}

fn default_name(ty: &Type) -> &'static str {
    match ty {
        Type::Indiv => "x",
        Type::World => "w",
        Type::Bool => "p",
        Type::Arrow(..) => "F",
    }
}

impl Printer<'_, '_> {
    fn fresh(&mut self, hint: &Name, ty: &Type) -> String {
        let base = if is_identifier(hint) && !crate::syntax::is_keyword(hint) {
            hint.to_string()
        } else {
            default_name(ty).to_string()
        };
        let clash =
            |s: &str, p: &Self| crate::syntax::is_keyword(s) || p.taken.contains(s) || p.stack.iter().any(|b| b == s);
        if !clash(&base, self) {
            return base;
        }
        (1..).map(|i| format!("{base}{i}")).find(|c| !clash(c, self)).expect("unbounded")
    }

    fn open(&mut self, prec: u8, level: u8) -> Result<bool, fmt::Error> {
        let paren = level < prec;
        if paren {
            self.out.write_str("(")?;
        }
        Ok(paren)
    }

    fn close(&mut self, paren: bool) -> fmt::Result {
        if paren {
            self.out.write_str(")")?;
        }
        Ok(())
    }

    fn term(&mut self, t: &Term, prec: u8) -> fmt::Result {
        if let Some(a) = t.as_not() {
            let p = self.open(prec, UNARY)?;
            self.out.write_str("~")?;
            self.term(a, UNARY)?;
            return self.close(p);
        }
        for (op, sym, level, l, r) in [
            (Logic::Iff, "<->", IFF, IMP, IMP),
            (Logic::Imp, "->", IMP, OR, IMP),
            (Logic::Or, "|", OR, OR, AND),
            (Logic::And, "&", AND, AND, UNARY),
        ] {
            if let Some((a, b)) = t.as_binary(&op) {
                let p = self.open(prec, level)?;
                self.term(a, l)?;
                write!(self.out, " {sym} ")?;
                self.term(b, r)?;
                return self.close(p);
            }
        }
        if let Some(kind) = binder(t) {
            return self.binder(t, kind, prec);
        }
        match t {
            Term::Bound(i) => {
                let i = *i as usize;
                match self.stack.len().checked_sub(i + 1) {
                    Some(k) => {
                        let name = self.stack[k].clone();
                        self.out.write_str(&name)
                    }
                    None => write!(self.out, "#{i}"),
                }
            }
            Term::Free(n) | Term::Const(n, _) => self.out.write_str(n),
            Term::Logic(l) => self.logic(l),
            Term::App(..) => {
                let (head, args) = t.strip_app();
                match head {
                    Term::Bound(_) | Term::Free(_) | Term::Const(..) | Term::Logic(_) => self.term(head, UNARY + 1)?,
                    _ => {
                        self.out.write_str("(")?;
                        self.term(head, IFF)?;
                        self.out.write_str(")")?;
                    }
                }
                self.out.write_str("(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        self.out.write_str(", ")?;
                    }
                    self.term(a, IFF)?;
                }
                self.out.write_str(")")
            }
            Term::Lam(..) => unreachable!("handled as a binder"),
        }
    }

    fn logic(&mut self, l: &Logic) -> fmt::Result {
        match l {
            Logic::True => self.out.write_str("$true"),
            Logic::False => self.out.write_str("$false"),
            Logic::Not => self.out.write_str("$not"),
            Logic::And => self.out.write_str("$and"),
            Logic::Or => self.out.write_str("$or"),
            Logic::Imp => self.out.write_str("$imp"),
            Logic::Iff => self.out.write_str("$iff"),
            Logic::Forall(ty) => write!(self.out, "$forall[{ty}]"),
            Logic::Exists(ty) => write!(self.out, "$exists[{ty}]"),
        }
    }

    /// Prints a run of binders of one kind as a single binder with a list.
    fn binder(&mut self, t: &Term, kind: Binder, prec: u8) -> fmt::Result {
        let p = self.open(prec, UNARY)?;
        self.out.write_str(match kind {
            Binder::Forall => "![",
            Binder::Exists => "?[",
            Binder::Lambda => "^[",
        })?;
        let depth = self.stack.len();
        let mut cur = t;
        let mut first = true;
        while binder(cur) == Some(kind) {
            let (hint, ty, body) = binder_parts(cur);
            let name = self.fresh(hint, ty);
            if !first {
                self.out.write_str(", ")?;
            }
            first = false;
            write!(self.out, "{name}:{ty}")?;
            self.stack.push(name);
            cur = body;
        }
        self.out.write_str("]: ")?;
        let r = self.term(cur, UNARY);
        self.stack.truncate(depth);
        r?;
        self.close(p)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Binder {
    Forall,
    Exists,
    Lambda,
}

fn binder(t: &Term) -> Option<Binder> {
    if t.as_forall().is_some() {
        Some(Binder::Forall)
    } else if t.as_exists().is_some() {
        Some(Binder::Exists)
    } else if matches!(t, Term::Lam(..)) {
        Some(Binder::Lambda)
    } else {
        None
    }
}

fn binder_parts(t: &Term) -> (&Name, &Type, &Term) {
    match t {
        Term::Lam(n, ty, b) => (n, ty, b),
        _ => t.as_forall().or_else(|| t.as_exists()).expect("binder"),
    }
}
