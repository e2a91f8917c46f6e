//! The quantified modal surface language and its embedding into the
//! simply-typed lambda calculus over possible worlds.
//!
//! A formula becomes a predicate on worlds: `box F` is
//! `λw. ∀v. r w v → F v`, `dia F` is `λw. ∃v. r w v ∧ F v`, connectives are
//! lifted pointwise and quantifiers range over one constant domain. The
//! positivity constant `pos` is world-indexed.

mod embed;
mod formula;
mod frame;

pub use embed::{access_const, positive_const, DefBody, Definition, EmbedError, Signature, ACCESS, POSITIVE};
pub use formula::{DefArg, IndivTerm, ModalFormula, PropTerm, Sort};
pub use frame::{FrameClass, FRAME_REFL, FRAME_SYM, FRAME_TRANS};

use crate::stt::Term;

/// Frame conditions of a frame class as closed formulas over `r`.
pub fn frame_axioms(fc: FrameClass) -> Vec<Term> {
    fc.frame_axioms()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stt::{typecheck_with, Term, Type};

    fn r(a: &str, b: &str) -> Term {
        Term::apps(access_const(), [Term::free(a), Term::free(b)])
    }

    fn god_signature() -> Signature {
        let mut sig = Signature::new();
        let body = ModalFormula::forall_prop(
            "Phi",
            ModalFormula::implies(
                ModalFormula::positive(PropTerm::var("Phi")),
                ModalFormula::atom(PropTerm::var("Phi"), "x"),
            ),
        );
        sig.define_property("G", PropTerm::lambda("x", body)).unwrap();
        sig
    }

    #[test]
    fn box_truth() {
        let sig = Signature::new();
        let t = sig.embed(&ModalFormula::boxed(ModalFormula::Truth)).unwrap();
        let expected =
            Term::lam("w", Type::World, Term::forall("v", Type::World, Term::imp(r("w", "v"), Term::truth())));
        assert_eq!(t, expected);
    }

    #[test]
    fn axiom_a1_shape() {
        let sig = Signature::new();
        let phi = PropTerm::var("Phi");
        let a1 = ModalFormula::forall_prop(
            "Phi",
            ModalFormula::iff(
                ModalFormula::positive(PropTerm::neg(phi.clone())),
                ModalFormula::not(ModalFormula::positive(phi)),
            ),
        );
        let t = sig.embed(&a1).unwrap();
        let pos = |p: Term, w: &str| Term::apps(positive_const(), [p, Term::free(w)]);
        let neg_phi = Term::lam(
            "x",
            Type::Indiv,
            Term::lam("u", Type::World, Term::not(Term::apps(Term::free("phi"), [Term::free("x"), Term::free("u")]))),
        );
        let expected = Term::lam(
            "w",
            Type::World,
            Term::forall("phi", Type::property(), Term::iff(pos(neg_phi, "w"), Term::not(pos(Term::free("phi"), "w")))),
        );
        assert_eq!(t, expected);
        let ty = typecheck_with(&t, &sig.type_lookup()).unwrap();
        assert_eq!(ty, Type::lifted());
    }

    #[test]
    fn possibly_god_exists() {
        let sig = god_signature();
        let c = ModalFormula::dia(ModalFormula::exists_indiv("x", ModalFormula::atom(PropTerm::defined("G"), "x")));
        let g = Term::constant("G", Type::property());
        let expected = Term::lam(
            "w",
            Type::World,
            Term::exists(
                "v",
                Type::World,
                Term::and(
                    r("w", "v"),
                    Term::exists("x", Type::Indiv, Term::apps(g, [Term::free("x"), Term::free("v")])),
                ),
            ),
        );
        assert_eq!(sig.embed(&c).unwrap(), expected);
    }

    #[test]
    fn validity_statements() {
        let sig = god_signature();
        assert_eq!(sig.valid(&ModalFormula::Truth).unwrap(), Term::forall("w", Type::World, Term::truth()));
        let a3 = ModalFormula::positive(PropTerm::defined("G"));
        let expected = Term::forall(
            "w",
            Type::World,
            Term::apps(positive_const(), [Term::constant("G", Type::property()), Term::free("w")]),
        );
        assert_eq!(sig.valid(&a3).unwrap(), expected);
        assert!(matches!(sig.valid(&ModalFormula::positive(PropTerm::var("Phi"))), Err(EmbedError::NotClosed(_))));
    }

    #[test]
    fn sort_errors() {
        let sig = Signature::new();
        let bad = ModalFormula::forall_indiv("x", ModalFormula::positive(PropTerm::var("x")));
        assert!(matches!(sig.valid(&bad), Err(EmbedError::VariableSort { .. })));
        let bad_binder = ModalFormula::forall_indiv("X", ModalFormula::Truth);
        assert!(matches!(sig.valid(&bad_binder), Err(EmbedError::VariableSort { .. })));
    }

    #[test]
    fn definition_biconditional_typechecks() {
        let sig = god_signature();
        let d = sig.definition("G").unwrap();
        let b = d.biconditional();
        assert_eq!(typecheck_with(&b, &sig.type_lookup()).unwrap(), Type::Bool);
        assert!(crate::stt::free_vars(&b).is_empty());
    }
}
