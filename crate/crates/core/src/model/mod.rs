//! Finite Kripke-Henkin models: representation, evaluation and bounded
//! search.

mod eval;
mod finite;
mod search;
mod verify;

pub use eval::{eval, holds, EvalError, SemValue};
pub use finite::{FiniteModel, ModelError, ModelParseError, MAX_CELLS};
pub use search::{
    find_countermodel, find_model, search, Problem, SearchBounds, SearchError, SearchOutcome, SearchReport,
    MAX_SEARCH_WORLDS,
};
pub use verify::{check_model, check_model_terms, verify_model, ModelCheck, VerifyError};
