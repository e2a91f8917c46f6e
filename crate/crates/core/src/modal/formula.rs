use crate::stt::{Name, Type};

/// Formulas of the quantified modal language.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ModalFormula {
    Truth,
    Falsity,
    Not(Box<ModalFormula>),
    And(Box<ModalFormula>, Box<ModalFormula>),
    Or(Box<ModalFormula>, Box<ModalFormula>),
    Implies(Box<ModalFormula>, Box<ModalFormula>),
    Iff(Box<ModalFormula>, Box<ModalFormula>),
    Box(Box<ModalFormula>),
    Dia(Box<ModalFormula>),
    ForallIndiv(Name, Box<ModalFormula>),
    ExistsIndiv(Name, Box<ModalFormula>),
    ForallProp(Name, Box<ModalFormula>),
    ExistsProp(Name, Box<ModalFormula>),
    /// A property applied to an individual, `Phi(x)`.
    AtomApp(PropTerm, IndivTerm),
    /// `pos(T)`.
    Positive(PropTerm),
    /// A defined relation applied to its arguments, `ess(Phi, x)`.
    DefApp(Name, Vec<DefArg>),
}

/// Property-denoting terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PropTerm {
    Var(Name),
    /// `\[x]: F`
    Lambda(Name, Box<ModalFormula>),
    /// Pointwise complement, `non(T)`.
    Neg(Box<PropTerm>),
    /// A property introduced by `def N := ...`.
    Defined(Name),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum IndivTerm {
    Var(Name),
    Const(Name),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DefArg {
    Prop(PropTerm),
    Indiv(IndivTerm),
}

/// The two quantifiable sorts of the surface language.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sort {
    Indiv,
    Prop,
}

impl Sort {
    /// Variables starting with an upper-case letter range over properties,
    /// all others over individuals.
    pub fn of_variable(name: &str) -> Sort {
        if name.chars().next().is_some_and(|c| c.is_uppercase()) {
            Sort::Prop
        } else {
            Sort::Indiv
        }
    }

    pub fn ty(self) -> Type {
        match self {
            Sort::Indiv => Type::Indiv,
            Sort::Prop => Type::property(),
        }
    }
}

impl ModalFormula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: ModalFormula) -> Self {
        ModalFormula::Not(Box::new(f))
    }

    pub fn and(a: ModalFormula, b: ModalFormula) -> Self {
        ModalFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: ModalFormula, b: ModalFormula) -> Self {
        ModalFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: ModalFormula, b: ModalFormula) -> Self {
        ModalFormula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: ModalFormula, b: ModalFormula) -> Self {
        ModalFormula::Iff(Box::new(a), Box::new(b))
    }

    pub fn boxed(f: ModalFormula) -> Self {
        ModalFormula::Box(Box::new(f))
    }

    pub fn dia(f: ModalFormula) -> Self {
        ModalFormula::Dia(Box::new(f))
    }

    pub fn forall_indiv(x: &str, f: ModalFormula) -> Self {
        ModalFormula::ForallIndiv(x.into(), Box::new(f))
    }

    pub fn exists_indiv(x: &str, f: ModalFormula) -> Self {
        ModalFormula::ExistsIndiv(x.into(), Box::new(f))
    }

    pub fn forall_prop(p: &str, f: ModalFormula) -> Self {
        ModalFormula::ForallProp(p.into(), Box::new(f))
    }

    pub fn exists_prop(p: &str, f: ModalFormula) -> Self {
        ModalFormula::ExistsProp(p.into(), Box::new(f))
    }

    pub fn atom(p: PropTerm, x: &str) -> Self {
        ModalFormula::AtomApp(p, IndivTerm::Var(x.into()))
    }

    pub fn positive(p: PropTerm) -> Self {
        ModalFormula::Positive(p)
    }

    /// Number of connectives, quantifiers and atoms.
    pub fn size(&self) -> usize {
        use ModalFormula::*;
        match self {
            Truth | Falsity => 1,
            Not(f) | Box(f) | Dia(f) => 1 + f.size(),
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => 1 + a.size() + b.size(),
            ForallIndiv(_, f) | ExistsIndiv(_, f) | ForallProp(_, f) | ExistsProp(_, f) => 1 + f.size(),
            AtomApp(p, _) | Positive(p) => 1 + p.size(),
            DefApp(_, args) => {
                1 + args
                    .iter()
                    .map(|a| match a {
                        DefArg::Prop(p) => p.size(),
                        DefArg::Indiv(_) => 1,
                    })
                    .sum::<usize>()
            }
        }
    }
}

impl PropTerm {
    pub fn var(name: &str) -> Self {
        PropTerm::Var(name.into())
    }

    pub fn defined(name: &str) -> Self {
        PropTerm::Defined(name.into())
    }

    pub fn lambda(x: &str, f: ModalFormula) -> Self {
        PropTerm::Lambda(x.into(), Box::new(f))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(p: PropTerm) -> Self {
        PropTerm::Neg(Box::new(p))
    }

    fn size(&self) -> usize {
        match self {
            PropTerm::Var(_) | PropTerm::Defined(_) => 1,
            PropTerm::Lambda(_, f) => 1 + f.size(),
            PropTerm::Neg(p) => 1 + p.size(),
        }
    }
}
