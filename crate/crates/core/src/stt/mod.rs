//! Simply-typed lambda calculus over individuals, worlds and truth values.
//!
//! This is the target language of the modal embedding and the formula
//! language of the proof kernel.

mod ops;
mod print;
mod term;
mod types;

pub(crate) use ops::abstract_free;
pub use ops::{
    alpha_beta_eq, alpha_eq, constants, free_vars, has_loose_bound, instantiate, is_normal, normalize, occurs_free,
    substitute, substitute_checked, typecheck, typecheck_with, unfold_const, Dir, Position, TypeError,
};
pub use term::{Logic, Name, Term};
pub use types::Type;
