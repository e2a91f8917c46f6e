use super::eval::{EvalError, Interpretation};
use super::finite::FiniteModel;
use crate::modal::{EmbedError, FrameClass, ModalFormula, Signature};
use crate::stt::Term;

/// Outcome of re-checking a model by evaluation alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelCheck {
    pub frame: bool,
    /// Truth of each axiom, in order.
    pub axioms: Vec<bool>,
    /// Truth of each definition's defining biconditional.
    pub definitions: Vec<bool>,
    /// Whether the conjecture fails somewhere, when one was given.
    pub refuted: Option<bool>,
}

impl ModelCheck {
    pub fn passed(&self) -> bool {
        self.frame
            && self.axioms.iter().all(|&b| b)
            && self.definitions.iter().all(|&b| b)
            && self.refuted != Some(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Embed(#[from] EmbedError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Evaluates every closed axiom term (and the conjecture) in `m`.
pub fn check_model_terms(
    m: &FiniteModel,
    sig: &Signature,
    axioms: &[Term],
    fc: FrameClass,
    conjecture: Option<&Term>,
) -> Result<ModelCheck, EvalError> {
    let mut interp = Interpretation::new(m, sig)?;
    let axioms = axioms.iter().map(|t| interp.holds(sig, t)).collect::<Result<_, _>>()?;
    let definitions =
        sig.definitions().iter().map(|d| interp.holds(sig, &d.biconditional())).collect::<Result<_, _>>()?;
    let refuted = conjecture.map(|t| interp.holds(sig, t).map(|b| !b)).transpose()?;
    Ok(ModelCheck { frame: fc.admits(m.access_matrix(), m.worlds()), axioms, definitions, refuted })
}

pub fn check_model(
    m: &FiniteModel,
    sig: &Signature,
    axioms: &[ModalFormula],
    fc: FrameClass,
    conjecture: Option<&ModalFormula>,
) -> Result<ModelCheck, VerifyError> {
    let axioms = axioms.iter().map(|f| sig.valid(f)).collect::<Result<Vec<_>, _>>()?;
    let conjecture = conjecture.map(|f| sig.valid(f)).transpose()?;
    Ok(check_model_terms(m, sig, &axioms, fc, conjecture.as_ref())?)
}

/// True iff `m` satisfies the frame condition of `fc`, every axiom and
/// definition, and refutes `conjecture` if one is given.
pub fn verify_model(
    m: &FiniteModel,
    sig: &Signature,
    axioms: &[ModalFormula],
    fc: FrameClass,
    conjecture: Option<&ModalFormula>,
) -> bool {
    check_model(m, sig, axioms, fc, conjecture).is_ok_and(|c| c.passed())
}
