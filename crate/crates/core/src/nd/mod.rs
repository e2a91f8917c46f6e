//! A Fitch-style natural-deduction kernel for the embedded higher-order
//! logic.
//!
//! Proofs are trees of numbered lines and subproofs. Box and diamond are gone
//! after embedding, so modal reasoning is plain quantifier reasoning over
//! world variables plus citations of frame axioms.

mod check;
mod proof;

pub use check::{
    axioms_used_transitive, check_proof, split_biconditional_axiom, Environment, Fact, FactKind, NotBiconditional,
    ProofError, Reason,
};
pub use proof::{axioms_used, Block, Justification, Label, Line, Proof, Range, Step};
