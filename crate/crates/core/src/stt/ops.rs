use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use super::{Name, Term, Type};

/// Adds `d` to every bound index `>= cutoff`.
pub(crate) fn shift(t: &Term, d: i64, cutoff: u32) -> Term {
    if d == 0 || max_loose(t, 0).is_none_or(|m| m < cutoff) {
        return t.clone();
    }
    shift_rec(t, d, cutoff)
}

fn shift_rec(t: &Term, d: i64, cutoff: u32) -> Term {
    match t {
        Term::Bound(i) if *i >= cutoff => {
            let j = *i as i64 + d;
            assert!(j >= 0, "negative de Bruijn index after shift");
            Term::Bound(j as u32)
        }
        Term::App(f, a) => Term::App(Arc::new(shift_rec(f, d, cutoff)), Arc::new(shift_rec(a, d, cutoff))),
        Term::Lam(n, ty, b) => Term::Lam(n.clone(), ty.clone(), Arc::new(shift_rec(b, d, cutoff + 1))),
        _ => t.clone(),
    }
}

/// Largest loose index relative to `depth` binders, if any.
fn max_loose(t: &Term, depth: u32) -> Option<u32> {
    match t {
        Term::Bound(i) if *i >= depth => Some(i - depth),
        Term::App(f, a) => match (max_loose(f, depth), max_loose(a, depth)) {
            (Some(x), Some(y)) => Some(x.max(y)),
            (x, y) => x.or(y),
        },
        Term::Lam(_, _, b) => max_loose(b, depth + 1),
        _ => None,
    }
}

pub fn has_loose_bound(t: &Term) -> bool {
    max_loose(t, 0).is_some()
}

fn subst_bound(t: &Term, depth: u32, repl: &Term) -> Term {
    match t {
        Term::Bound(i) => {
            if *i == depth {
                shift(repl, depth as i64, 0)
            } else if *i > depth {
                Term::Bound(i - 1)
            } else {
                t.clone()
            }
        }
        Term::App(f, a) => Term::App(Arc::new(subst_bound(f, depth, repl)), Arc::new(subst_bound(a, depth, repl))),
        Term::Lam(n, ty, b) => Term::Lam(n.clone(), ty.clone(), Arc::new(subst_bound(b, depth + 1, repl))),
        _ => t.clone(),
    }
}

/// Replaces the loose index 0 of a binder body by `arg`.
pub fn instantiate(body: &Term, arg: &Term) -> Term {
    subst_bound(body, 0, arg)
}

/// Turns free occurrences of `name` into the bound index `depth`.
pub(crate) fn abstract_free(t: &Term, name: &str, depth: u32) -> Term {
    match t {
        Term::Free(n) if &**n == name => Term::Bound(depth),
        Term::App(f, a) => Term::App(Arc::new(abstract_free(f, name, depth)), Arc::new(abstract_free(a, name, depth))),
        Term::Lam(n, ty, b) => Term::Lam(n.clone(), ty.clone(), Arc::new(abstract_free(b, name, depth + 1))),
        _ => t.clone(),
    }
}

/// Capture-avoiding substitution of the free variable `var` by `replacement`.
///
/// Binders are nameless, so no renaming is ever needed; `replacement` must
/// not contain loose bound indices.
pub fn substitute(t: &Term, var: &str, replacement: &Term) -> Term {
    debug_assert!(!has_loose_bound(replacement));
    if !occurs_free(t, var) {
        return t.clone();
    }
    match t {
        Term::Free(n) if &**n == var => replacement.clone(),
        Term::App(f, a) => Term::app(substitute(f, var, replacement), substitute(a, var, replacement)),
        Term::Lam(n, ty, b) => Term::Lam(n.clone(), ty.clone(), Arc::new(substitute(b, var, replacement))),
        _ => t.clone(),
    }
}

/// [`substitute`] after checking that `replacement` has type `var_ty`.
pub fn substitute_checked(
    t: &Term,
    var: &str,
    var_ty: &Type,
    replacement: &Term,
    ctx: &[(Name, Type)],
) -> Result<Term, TypeError> {
    let found = typecheck(replacement, ctx)?;
    if &found != var_ty {
        return Err(TypeError::TypeMismatch { expected: var_ty.clone(), found, position: Position::default() });
    }
    Ok(substitute(t, var, replacement))
}

/// Replaces every occurrence of the constant `name` by `definiens`.
pub fn unfold_const(t: &Term, name: &str, definiens: &Term) -> Term {
    match t {
        Term::Const(n, _) if &**n == name => definiens.clone(),
        Term::App(f, a) => Term::app(unfold_const(f, name, definiens), unfold_const(a, name, definiens)),
        Term::Lam(n, ty, b) => Term::Lam(n.clone(), ty.clone(), Arc::new(unfold_const(b, name, definiens))),
        _ => t.clone(),
    }
}

pub fn occurs_free(t: &Term, var: &str) -> bool {
    match t {
        Term::Free(n) => &**n == var,
        Term::App(f, a) => occurs_free(f, var) || occurs_free(a, var),
        Term::Lam(_, _, b) => occurs_free(b, var),
        _ => false,
    }
}

pub fn free_vars(t: &Term) -> BTreeSet<Name> {
    fn go(t: &Term, out: &mut BTreeSet<Name>) {
        match t {
            Term::Free(n) => {
                out.insert(n.clone());
            }
            Term::App(f, a) => {
                go(f, out);
                go(a, out);
            }
            Term::Lam(_, _, b) => go(b, out),
            _ => {}
        }
    }
    let mut out = BTreeSet::new();
    go(t, &mut out);
    out
}

/// Named constants occurring in `t`, with their types.
pub fn constants(t: &Term) -> BTreeSet<(Name, Type)> {
    fn go(t: &Term, out: &mut BTreeSet<(Name, Type)>) {
        match t {
            Term::Const(n, ty) => {
                out.insert((n.clone(), ty.clone()));
            }
            Term::App(f, a) => {
                go(f, out);
                go(a, out);
            }
            Term::Lam(_, _, b) => go(b, out),
            _ => {}
        }
    }
    let mut out = BTreeSet::new();
    go(t, &mut out);
    out
}

/// Beta-normal form. Eta is not performed.
pub fn normalize(t: &Term) -> Term {
    match t {
        Term::App(f, a) => {
            let f = normalize(f);
            if let Term::Lam(_, _, body) = &f {
                normalize(&instantiate(body, a))
            } else {
                Term::app(f, normalize(a))
            }
        }
        Term::Lam(n, ty, b) => Term::Lam(n.clone(), ty.clone(), Arc::new(normalize(b))),
        _ => t.clone(),
    }
}

pub fn is_normal(t: &Term) -> bool {
    match t {
        Term::App(f, a) => !matches!(**f, Term::Lam(..)) && is_normal(f) && is_normal(a),
        Term::Lam(_, _, b) => is_normal(b),
        _ => true,
    }
}

pub fn alpha_eq(a: &Term, b: &Term) -> bool {
    a == b
}

/// Alpha-equivalence after beta normalisation of both sides.
pub fn alpha_beta_eq(a: &Term, b: &Term) -> bool {
    a == b || normalize(a) == normalize(b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dir {
    Fun,
    Arg,
    Body,
}

/// Path from the root of a term to a subterm.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Position(pub Vec<Dir>);

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("root");
        }
        let parts: Vec<&str> = self
            .0
            .iter()
            .map(|d| match d {
                Dir::Fun => "fun",
                Dir::Arg => "arg",
                Dir::Body => "body",
            })
            .collect();
        f.write_str(&parts.join("."))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(Name),
    #[error("dangling bound index {0}")]
    LooseBound(u32),
    #[error("type mismatch at {position}: expected {expected}, found {found}")]
    TypeMismatch { expected: Type, found: Type, position: Position },
    #[error("not a function at {position}: found {found}")]
    NotAFunction { found: Type, position: Position },
}

/// Computes the type of `term`; free variables are looked up in `ctx`, with
/// later entries shadowing earlier ones.
pub fn typecheck(term: &Term, ctx: &[(Name, Type)]) -> Result<Type, TypeError> {
    let lookup = |n: &str| ctx.iter().rev().find(|(m, _)| &**m == n).map(|(_, t)| t.clone());
    typecheck_with(term, &lookup)
}

pub fn typecheck_with(term: &Term, lookup: &dyn Fn(&str) -> Option<Type>) -> Result<Type, TypeError> {
    let mut bound = Vec::new();
    let mut path = Vec::new();
    tc(term, lookup, &mut bound, &mut path)
}

fn tc(
    t: &Term,
    lookup: &dyn Fn(&str) -> Option<Type>,
    bound: &mut Vec<Type>,
    path: &mut Vec<Dir>,
) -> Result<Type, TypeError> {
    match t {
        Term::Bound(i) => {
            let i = *i as usize;
            if i < bound.len() {
                Ok(bound[bound.len() - 1 - i].clone())
            } else {
                Err(TypeError::LooseBound(i as u32))
            }
        }
        Term::Free(n) => lookup(n).ok_or_else(|| TypeError::UnboundVariable(n.clone())),
        Term::Const(_, ty) => Ok(ty.clone()),
        Term::Logic(l) => Ok(l.ty()),
        Term::App(f, a) => {
            path.push(Dir::Fun);
            let fty = tc(f, lookup, bound, path)?;
            path.pop();
            let (dom, cod) = match &fty {
                Type::Arrow(d, c) => (d.clone(), c.clone()),
                _ => return Err(TypeError::NotAFunction { found: fty, position: Position(path.clone()) }),
            };
            path.push(Dir::Arg);
            let aty = tc(a, lookup, bound, path)?;
            if aty != *dom {
                return Err(TypeError::TypeMismatch {
                    expected: (*dom).clone(),
                    found: aty,
                    position: Position(path.clone()),
                });
            }
            path.pop();
            Ok((*cod).clone())
        }
        Term::Lam(_, ty, b) => {
            bound.push(ty.clone());
            path.push(Dir::Body);
            let r = tc(b, lookup, bound, path);
            path.pop();
            bound.pop();
            Ok(Type::arrow(ty.clone(), r?))
        }
    }
}
