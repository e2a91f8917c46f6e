//! Theory files: lexer, parser and printer.
//!
//! A theory declares constants and definitions, states axioms and
//! conjectures as modal formulas, gives natural-deduction proofs in the
//! embedded HOL syntax, and lists experiments to run.

mod lexer;
mod parser;
mod printer;
mod theory;

pub use lexer::Pos;
pub use parser::{parse_formula, parse_term, parse_theory, parse_type, SyntaxError};
pub use printer::{print_formula, print_item, print_proof, print_prop, print_theory};
pub use theory::{
    is_keyword, split_modal_biconditional, DefItem, Expected, ExperimentKind, ExperimentSpec, Item, TheoryError,
    TheoryFile, KEYWORDS,
};
