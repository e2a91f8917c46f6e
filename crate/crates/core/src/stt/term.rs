use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::Type;

pub type Name = Arc<str>;

/// Logical constants of the object logic.
///
/// Quantifiers come as one constant per quantified type, so `Forall(t)` has
/// type `(t > $o) > $o`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Logic {
    True,
    False,
    Not,
    And,
    Or,
    Imp,
    Iff,
    Forall(Type),
    Exists(Type),
}

impl Logic {
    pub fn ty(&self) -> Type {
        let o = || Type::Bool;
        match self {
            Logic::True | Logic::False => o(),
            Logic::Not => Type::arrow(o(), o()),
            Logic::And | Logic::Or | Logic::Imp | Logic::Iff => Type::curried([o(), o()], o()),
            Logic::Forall(t) | Logic::Exists(t) => Type::arrow(Type::arrow(t.clone(), o()), o()),
        }
    }

    pub fn is_binary(&self) -> bool {
        matches!(self, Logic::And | Logic::Or | Logic::Imp | Logic::Iff)
    }
}

/// Terms of the simply-typed lambda calculus.
///
/// Bound variables are de Bruijn indices; the name stored in `Lam` is only a
/// printing hint. Free variables are referred to by name. Equality ignores
/// the hints, so `==` is alpha-equivalence.
#[derive(Clone, Debug)]
pub enum Term {
    Bound(u32),
    Free(Name),
    Const(Name, Type),
    Logic(Logic),
    App(Arc<Term>, Arc<Term>),
    Lam(Name, Type, Arc<Term>),
}

impl PartialEq for Term {
    fn eq(&self, other: &Term) -> bool {
        match (self, other) {
            (Term::Bound(a), Term::Bound(b)) => a == b,
            (Term::Free(a), Term::Free(b)) => a == b,
            (Term::Const(a, s), Term::Const(b, t)) => a == b && s == t,
            (Term::Logic(a), Term::Logic(b)) => a == b,
            (Term::App(f, a), Term::App(g, b)) => (Arc::ptr_eq(f, g) || f == g) && (Arc::ptr_eq(a, b) || a == b),
            (Term::Lam(_, s, a), Term::Lam(_, t, b)) => s == t && (Arc::ptr_eq(a, b) || a == b),
            _ => false,
        }
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        std::mem::discriminant(self).hash(state);
        match self {
            Term::Bound(i) => i.hash(state),
            Term::Free(n) => n.hash(state),
            Term::Const(n, t) => {
                n.hash(state);
                t.hash(state);
            }
            Term::Logic(l) => l.hash(state),
            Term::App(f, a) => {
                f.hash(state);
                a.hash(state);
            }
            Term::Lam(_, t, b) => {
                t.hash(state);
                b.hash(state);
            }
        }
    }
}

impl Term {
    pub fn free(name: &str) -> Term {
        Term::Free(name.into())
    }

    pub fn constant(name: &str, ty: Type) -> Term {
        Term::Const(name.into(), ty)
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Arc::new(f), Arc::new(a))
    }

    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    pub fn truth() -> Term {
        Term::Logic(Logic::True)
    }

    pub fn falsity() -> Term {
        Term::Logic(Logic::False)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Term) -> Term {
        Term::app(Term::Logic(Logic::Not), a)
    }

    pub fn binary(op: Logic, a: Term, b: Term) -> Term {
        debug_assert!(op.is_binary());
        Term::apps(Term::Logic(op), [a, b])
    }

    pub fn and(a: Term, b: Term) -> Term {
        Term::binary(Logic::And, a, b)
    }

    pub fn or(a: Term, b: Term) -> Term {
        Term::binary(Logic::Or, a, b)
    }

    pub fn imp(a: Term, b: Term) -> Term {
        Term::binary(Logic::Imp, a, b)
    }

    pub fn iff(a: Term, b: Term) -> Term {
        Term::binary(Logic::Iff, a, b)
    }

    /// `λname:ty. body`, binding every free occurrence of `name` in `body`.
    pub fn lam(name: &str, ty: Type, body: Term) -> Term {
        let body = super::ops::abstract_free(&body, name, 0);
        Term::Lam(name.into(), ty, Arc::new(body))
    }

    /// Like [`Term::lam`], but abstracts the free variable `var` while
    /// recording `hint` as the binder's display name.
    pub fn lam_hinted(hint: &str, var: &str, ty: Type, body: Term) -> Term {
        let body = super::ops::abstract_free(&body, var, 0);
        Term::Lam(hint.into(), ty, Arc::new(body))
    }

    pub fn forall(name: &str, ty: Type, body: Term) -> Term {
        Term::app(Term::Logic(Logic::Forall(ty.clone())), Term::lam(name, ty, body))
    }

    /// `∀` over the free variable `var`, displayed as `hint`.
    pub fn forall_hinted(hint: &str, var: &str, ty: Type, body: Term) -> Term {
        Term::app(Term::Logic(Logic::Forall(ty.clone())), Term::lam_hinted(hint, var, ty, body))
    }

    pub fn exists(name: &str, ty: Type, body: Term) -> Term {
        Term::app(Term::Logic(Logic::Exists(ty.clone())), Term::lam(name, ty, body))
    }

    /// Head and argument list of an application spine.
    pub fn strip_app(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut cur = self;
        while let Term::App(f, a) = cur {
            args.push(&**a);
            cur = f;
        }
        args.reverse();
        (cur, args)
    }

    pub fn as_not(&self) -> Option<&Term> {
        match self {
            Term::App(f, a) if matches!(**f, Term::Logic(Logic::Not)) => Some(a),
            _ => None,
        }
    }

    pub fn as_binary(&self, op: &Logic) -> Option<(&Term, &Term)> {
        if let Term::App(f, b) = self {
            if let Term::App(g, a) = &**f {
                if let Term::Logic(l) = &**g {
                    if l == op {
                        return Some((a, b));
                    }
                }
            }
        }
        None
    }

    pub fn as_and(&self) -> Option<(&Term, &Term)> {
        self.as_binary(&Logic::And)
    }

    pub fn as_or(&self) -> Option<(&Term, &Term)> {
        self.as_binary(&Logic::Or)
    }

    pub fn as_imp(&self) -> Option<(&Term, &Term)> {
        self.as_binary(&Logic::Imp)
    }

    pub fn as_iff(&self) -> Option<(&Term, &Term)> {
        self.as_binary(&Logic::Iff)
    }

    /// `∀x:t. body` where the quantifier is applied to a lambda; returns the
    /// binder hint, its type and the body (with loose index 0).
    pub fn as_forall(&self) -> Option<(&Name, &Type, &Term)> {
        self.as_quantifier(true)
    }

    pub fn as_exists(&self) -> Option<(&Name, &Type, &Term)> {
        self.as_quantifier(false)
    }

    fn as_quantifier(&self, universal: bool) -> Option<(&Name, &Type, &Term)> {
        if let Term::App(q, body) = self {
            let matches_kind = match &**q {
                Term::Logic(Logic::Forall(_)) => universal,
                Term::Logic(Logic::Exists(_)) => !universal,
                _ => false,
            };
            if matches_kind {
                if let Term::Lam(n, t, b) = &**body {
                    return Some((n, t, b));
                }
            }
        }
        None
    }

    pub fn is_false(&self) -> bool {
        matches!(self, Term::Logic(Logic::False))
    }
}
