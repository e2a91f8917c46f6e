//! A workbench for quantified modal logic embedded in classical higher-order
//! logic.
//!
//! Modal formulas are compiled into simply-typed lambda terms over worlds
//! ([`modal`]), natural-deduction proofs over the embedded formulas are
//! checked by a small kernel ([`nd`]), and finite Kripke-Henkin models are
//! evaluated and searched for by [`model`]. Theory files tie everything
//! together ([`syntax`], [`suite`]).

pub mod modal;
pub mod model;
pub mod nd;
pub mod stt;
pub mod suite;
pub mod syntax;
