use std::collections::HashSet;

use thiserror::Error;

use super::formula::{DefArg, IndivTerm, ModalFormula, PropTerm, Sort};
use crate::stt::{self, Name, Term, Type, TypeError};

/// Name of the accessibility relation constant, `r : $w > $w > $o`.
pub const ACCESS: &str = "r";
/// Name of the positivity constant, `pos : ($i > $w > $o) > $w > $o`.
pub const POSITIVE: &str = "pos";

pub fn access_const() -> Term {
    Term::constant(ACCESS, Type::accessibility())
}

pub fn positive_const() -> Term {
    Term::constant(POSITIVE, Type::positivity())
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("unknown definition `{0}`")]
    UnknownDefinition(Name),
    #[error("`{0}` is a relation and must be applied to its arguments")]
    NotAProperty(Name),
    #[error("`{name}` expects {expected} argument(s), got {found}")]
    Arity { name: Name, expected: usize, found: usize },
    #[error("argument {index} of `{name}` must be {expected:?}")]
    ArgumentSort { name: Name, index: usize, expected: Sort },
    #[error("unknown individual constant `{0}`")]
    UnknownConstant(Name),
    #[error("variable `{name}` cannot range over {sort:?} (case decides the sort)")]
    VariableSort { name: Name, sort: Sort },
    #[error("`{0}` is reserved or already declared")]
    Reserved(Name),
    #[error("formula is not closed: free `{0}`")]
    NotClosed(Name),
    #[error("duplicate name `{0}`")]
    Duplicate(Name),
    #[error(transparent)]
    Type(#[from] TypeError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DefBody {
    /// `def N := T` with a property term.
    Property(PropTerm),
    /// `def N(p1, ..., pn) := F`.
    Relation(ModalFormula),
}

/// A definition together with its embedded, closed definiens.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Definition {
    pub name: Name,
    pub params: Vec<(Name, Sort)>,
    pub body: DefBody,
    pub ty: Type,
    pub definiens: Term,
}

impl Definition {
    /// The constant this definition introduces.
    pub fn constant(&self) -> Term {
        Term::Const(self.name.clone(), self.ty.clone())
    }

    pub fn is_property(&self) -> bool {
        matches!(self.body, DefBody::Property(_))
    }

    /// `∀w ∀p1..pn. N p1 .. pn w ↔ body`, the defining biconditional with
    /// the right-hand side unfolded once.
    pub fn biconditional(&self) -> Term {
        let params: Vec<(String, &str, Type)> = match &self.body {
            DefBody::Property(_) => vec![("'x".to_string(), "x", Type::Indiv)],
            DefBody::Relation(_) => {
                self.params.iter().enumerate().map(|(i, (n, s))| (format!("'p{i}"), &**n, s.ty())).collect()
            }
        };
        let mut args: Vec<Term> = params.iter().map(|(v, _, _)| Term::free(v)).collect();
        args.push(Term::free("'w"));
        let lhs = Term::apps(self.constant(), args.clone());
        let rhs = stt::normalize(&Term::apps(self.definiens.clone(), args));
        let mut t = Term::iff(lhs, rhs);
        for (v, hint, ty) in params.into_iter().rev() {
            t = Term::forall_hinted(hint, &v, ty, t);
        }
        Term::forall_hinted("w", "'w", Type::World, t)
    }
}

/// Declared constants and definitions visible to formulas.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    consts: Vec<(Name, Type)>,
    defs: Vec<Definition>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn constants(&self) -> &[(Name, Type)] {
        &self.consts
    }

    pub fn definitions(&self) -> &[Definition] {
        &self.defs
    }

    pub fn definition(&self, name: &str) -> Option<&Definition> {
        self.defs.iter().find(|d| &*d.name == name)
    }

    /// Type of a named constant: built-ins, declarations and definitions.
    pub fn constant_type(&self, name: &str) -> Option<Type> {
        match name {
            ACCESS => Some(Type::accessibility()),
            POSITIVE => Some(Type::positivity()),
            _ => self
                .consts
                .iter()
                .find(|(n, _)| &**n == name)
                .map(|(_, t)| t.clone())
                .or_else(|| self.definition(name).map(|d| d.ty.clone())),
        }
    }

    pub fn is_reserved(&self, name: &str) -> bool {
        self.constant_type(name).is_some()
    }

    pub fn declare(&mut self, name: &str, ty: Type) -> Result<(), EmbedError> {
        if self.is_reserved(name) {
            return Err(EmbedError::Duplicate(name.into()));
        }
        self.consts.push((name.into(), ty));
        Ok(())
    }

    /// `def name := prop`.
    pub fn define_property(&mut self, name: &str, prop: PropTerm) -> Result<&Definition, EmbedError> {
        if self.is_reserved(name) {
            return Err(EmbedError::Duplicate(name.into()));
        }
        let mut e = Embedder::new(self);
        e.check_prop(&prop, &mut Vec::new(), &|_| None)?;
        let definiens = stt::normalize(&e.prop_term(&prop));
        self.push_def(name, Vec::new(), DefBody::Property(prop), Type::property(), definiens)
    }

    /// `def name(params) := body`.
    pub fn define_relation(
        &mut self,
        name: &str,
        params: Vec<Name>,
        body: ModalFormula,
    ) -> Result<&Definition, EmbedError> {
        if self.is_reserved(name) {
            return Err(EmbedError::Duplicate(name.into()));
        }
        let mut seen = HashSet::new();
        for p in &params {
            if !seen.insert(p.clone()) {
                return Err(EmbedError::Duplicate(p.clone()));
            }
            if self.is_reserved(p) {
                return Err(EmbedError::Reserved(p.clone()));
            }
        }
        let sorted: Vec<(Name, Sort)> = params.iter().map(|p| (p.clone(), Sort::of_variable(p))).collect();
        let mut e = Embedder::new(self);
        let mut scope: Vec<(Name, Sort)> = sorted.clone();
        e.check(&body, &mut scope, &|_| None)?;
        let w = e.fresh_world();
        let mut term = Term::lam_hinted("w", &w, Type::World, e.at(&body, &Term::free(&w)));
        for (p, s) in sorted.iter().rev() {
            term = Term::lam(p, s.ty(), term);
        }
        let ty = Type::curried(sorted.iter().map(|(_, s)| s.ty()), Type::lifted());
        let definiens = stt::normalize(&term);
        self.push_def(name, sorted, DefBody::Relation(body), ty, definiens)
    }

    fn push_def(
        &mut self,
        name: &str,
        params: Vec<(Name, Sort)>,
        body: DefBody,
        ty: Type,
        definiens: Term,
    ) -> Result<&Definition, EmbedError> {
        let found = stt::typecheck_with(&definiens, &|n| self.constant_type(n))?;
        debug_assert_eq!(found, ty);
        if let Some(n) = stt::free_vars(&definiens).into_iter().next() {
            return Err(EmbedError::NotClosed(n));
        }
        self.defs.push(Definition { name: name.into(), params, body, ty, definiens });
        Ok(self.defs.last().expect("just pushed"))
    }

    /// Checks scope and sorts of `f`; `free` gives the sort of any variable
    /// not bound inside `f`.
    pub fn check_formula(&self, f: &ModalFormula, free: &dyn Fn(&str) -> Option<Sort>) -> Result<(), EmbedError> {
        Embedder::new(self).check(f, &mut Vec::new(), free)
    }

    /// Embeds `f` as a term of type `$w > $o`, in beta-normal form.
    ///
    /// Variables not bound inside `f` become free variables of the result,
    /// typed by their syntactic sort.
    pub fn embed(&self, f: &ModalFormula) -> Result<Term, EmbedError> {
        let mut e = Embedder::new(self);
        e.check(f, &mut Vec::new(), &|n| Some(Sort::of_variable(n)))?;
        let w = e.fresh_world();
        let t = Term::lam_hinted("w", &w, Type::World, e.at(f, &Term::free(&w)));
        Ok(stt::normalize(&t))
    }

    /// `∀w:$w. embed(f)(w)`, beta-normalised. `f` must be closed.
    pub fn valid(&self, f: &ModalFormula) -> Result<Term, EmbedError> {
        let mut e = Embedder::new(self);
        e.check(f, &mut Vec::new(), &|_| None)?;
        let w = e.fresh_world();
        let body = e.at(f, &Term::free(&w));
        Ok(stt::normalize(&Term::forall_hinted("w", &w, Type::World, body)))
    }

    /// Embeds a property term as a term of type `$i > $w > $o`.
    pub fn embed_prop(&self, p: &PropTerm) -> Result<Term, EmbedError> {
        let mut e = Embedder::new(self);
        e.check_prop(p, &mut Vec::new(), &|n| Some(Sort::of_variable(n)))?;
        Ok(stt::normalize(&e.prop_term(p)))
    }

    /// Type-checking context for embedded terms.
    pub fn type_lookup(&self) -> impl Fn(&str) -> Option<Type> + '_ {
        move |n| self.constant_type(n)
    }
}

struct Embedder<'a> {
    sig: &'a Signature,
    counter: usize,
}

impl<'a> Embedder<'a> {
    fn new(sig: &'a Signature) -> Self {
        Embedder { sig, counter: 0 }
    }

    // Internal names contain a quote, which user identifiers cannot.
    fn fresh(&mut self, base: &str) -> String {
        self.counter += 1;
        format!("'{base}{}", self.counter)
    }

    fn fresh_world(&mut self) -> String {
        self.fresh("w")
    }

    fn binder(&self, name: &Name, sort: Sort) -> Result<(), EmbedError> {
        if Sort::of_variable(name) != sort {
            return Err(EmbedError::VariableSort { name: name.clone(), sort });
        }
        if self.sig.is_reserved(name) {
            return Err(EmbedError::Reserved(name.clone()));
        }
        Ok(())
    }

    fn lookup(scope: &[(Name, Sort)], name: &str) -> Option<Sort> {
        scope.iter().rev().find(|(n, _)| &**n == name).map(|(_, s)| *s)
    }

    fn check(
        &self,
        f: &ModalFormula,
        scope: &mut Vec<(Name, Sort)>,
        free: &dyn Fn(&str) -> Option<Sort>,
    ) -> Result<(), EmbedError> {
        use ModalFormula::*;
        match f {
            Truth | Falsity => Ok(()),
            Not(a) | Box(a) | Dia(a) => self.check(a, scope, free),
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => {
                self.check(a, scope, free)?;
                self.check(b, scope, free)
            }
            ForallIndiv(x, a) | ExistsIndiv(x, a) => self.with_binder(x, Sort::Indiv, a, scope, free),
            ForallProp(p, a) | ExistsProp(p, a) => self.with_binder(p, Sort::Prop, a, scope, free),
            AtomApp(p, i) => {
                self.check_prop(p, scope, free)?;
                self.check_indiv(i, scope, free)
            }
            Positive(p) => self.check_prop(p, scope, free),
            DefApp(name, args) => {
                let def = self.sig.definition(name).ok_or_else(|| EmbedError::UnknownDefinition(name.clone()))?;
                if def.is_property() {
                    if args.len() != 1 {
                        return Err(EmbedError::Arity { name: name.clone(), expected: 1, found: args.len() });
                    }
                } else if def.params.len() != args.len() {
                    return Err(EmbedError::Arity {
                        name: name.clone(),
                        expected: def.params.len(),
                        found: args.len(),
                    });
                }
                let sorts: Vec<Sort> =
                    if def.is_property() { vec![Sort::Indiv] } else { def.params.iter().map(|(_, s)| *s).collect() };
                for (index, (arg, sort)) in args.iter().zip(sorts).enumerate() {
                    match (arg, sort) {
                        (DefArg::Prop(p), Sort::Prop) => self.check_prop(p, scope, free)?,
                        (DefArg::Indiv(i), Sort::Indiv) => self.check_indiv(i, scope, free)?,
                        _ => return Err(EmbedError::ArgumentSort { name: name.clone(), index, expected: sort }),
                    }
                }
                Ok(())
            }
        }
    }

    fn with_binder(
        &self,
        name: &Name,
        sort: Sort,
        body: &ModalFormula,
        scope: &mut Vec<(Name, Sort)>,
        free: &dyn Fn(&str) -> Option<Sort>,
    ) -> Result<(), EmbedError> {
        self.binder(name, sort)?;
        scope.push((name.clone(), sort));
        let r = self.check(body, scope, free);
        scope.pop();
        r
    }

    fn check_prop(
        &self,
        p: &PropTerm,
        scope: &mut Vec<(Name, Sort)>,
        free: &dyn Fn(&str) -> Option<Sort>,
    ) -> Result<(), EmbedError> {
        match p {
            PropTerm::Var(n) => match Self::lookup(scope, n).or_else(|| free(n)) {
                Some(Sort::Prop) => Ok(()),
                Some(Sort::Indiv) => Err(EmbedError::VariableSort { name: n.clone(), sort: Sort::Prop }),
                None => Err(EmbedError::NotClosed(n.clone())),
            },
            PropTerm::Lambda(x, f) => self.with_binder(x, Sort::Indiv, f, scope, free),
            PropTerm::Neg(q) => self.check_prop(q, scope, free),
            PropTerm::Defined(n) => match self.sig.definition(n) {
                Some(d) if d.is_property() => Ok(()),
                Some(_) => Err(EmbedError::NotAProperty(n.clone())),
                None => Err(EmbedError::UnknownDefinition(n.clone())),
            },
        }
    }

    fn check_indiv(
        &self,
        i: &IndivTerm,
        scope: &[(Name, Sort)],
        free: &dyn Fn(&str) -> Option<Sort>,
    ) -> Result<(), EmbedError> {
        match i {
            IndivTerm::Var(n) => match Self::lookup(scope, n).or_else(|| free(n)) {
                Some(Sort::Indiv) => Ok(()),
                Some(Sort::Prop) => Err(EmbedError::VariableSort { name: n.clone(), sort: Sort::Indiv }),
                None => Err(EmbedError::NotClosed(n.clone())),
            },
            IndivTerm::Const(n) => match self.sig.constant_type(n) {
                Some(Type::Indiv) => Ok(()),
                _ => Err(EmbedError::UnknownConstant(n.clone())),
            },
        }
    }

    /// The embedded formula evaluated at the world term `w` (type `$o`).
    fn at(&mut self, f: &ModalFormula, w: &Term) -> Term {
        use ModalFormula::*;
        match f {
            Truth => Term::truth(),
            Falsity => Term::falsity(),
            Not(a) => Term::not(self.at(a, w)),
            And(a, b) => Term::and(self.at(a, w), self.at(b, w)),
            Or(a, b) => Term::or(self.at(a, w), self.at(b, w)),
            Implies(a, b) => Term::imp(self.at(a, w), self.at(b, w)),
            Iff(a, b) => Term::iff(self.at(a, w), self.at(b, w)),
            Box(a) | Dia(a) => {
                let v = self.fresh("v");
                let vt = Term::free(&v);
                let reach = Term::apps(access_const(), [w.clone(), vt.clone()]);
                let inner = self.at(a, &vt);
                let (q, body) = if matches!(f, Box(_)) {
                    (stt::Logic::Forall(Type::World), Term::imp(reach, inner))
                } else {
                    (stt::Logic::Exists(Type::World), Term::and(reach, inner))
                };
                Term::app(Term::Logic(q), Term::lam_hinted("v", &v, Type::World, body))
            }
            ForallIndiv(x, a) => Term::forall(x, Type::Indiv, self.at(a, w)),
            ExistsIndiv(x, a) => Term::exists(x, Type::Indiv, self.at(a, w)),
            ForallProp(p, a) => Term::forall(p, Type::property(), self.at(a, w)),
            ExistsProp(p, a) => Term::exists(p, Type::property(), self.at(a, w)),
            AtomApp(p, i) => Term::apps(self.prop_term(p), [indiv_term(i), w.clone()]),
            Positive(p) => Term::apps(positive_const(), [self.prop_term(p), w.clone()]),
            DefApp(name, args) => {
                let def = self.sig.definition(name).expect("checked definition");
                let mut t = def.constant();
                for a in args {
                    let arg = match a {
                        DefArg::Prop(p) => self.prop_term(p),
                        DefArg::Indiv(i) => indiv_term(i),
                    };
                    t = Term::app(t, arg);
                }
                Term::app(t, w.clone())
            }
        }
    }

    fn prop_term(&mut self, p: &PropTerm) -> Term {
        match p {
            PropTerm::Var(n) => Term::Free(n.clone()),
            PropTerm::Defined(n) => Term::Const(n.clone(), Type::property()),
            PropTerm::Lambda(x, f) => {
                let u = self.fresh_world();
                let body = self.at(f, &Term::free(&u));
                Term::lam(x, Type::Indiv, Term::lam_hinted("w", &u, Type::World, body))
            }
            PropTerm::Neg(q) => {
                let inner = self.prop_term(q);
                let x = self.fresh("x");
                let u = self.fresh_world();
                let body = Term::not(Term::apps(inner, [Term::free(&x), Term::free(&u)]));
                Term::lam_hinted("x", &x, Type::Indiv, Term::lam_hinted("w", &u, Type::World, body))
            }
        }
    }
}

fn indiv_term(i: &IndivTerm) -> Term {
    match i {
        IndivTerm::Var(n) => Term::Free(n.clone()),
        IndivTerm::Const(n) => Term::Const(n.clone(), Type::Indiv),
    }
}
