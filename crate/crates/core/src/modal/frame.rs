use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::embed::access_const;
use crate::stt::{Term, Type};

/// Classes of Kripke frames, ordered by strength.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FrameClass {
    K,
    KB,
    S5,
}

pub const FRAME_REFL: &str = "frame_refl";
pub const FRAME_SYM: &str = "frame_sym";
pub const FRAME_TRANS: &str = "frame_trans";

fn reach(a: &Term, b: &Term) -> Term {
    Term::apps(access_const(), [a.clone(), b.clone()])
}

fn reflexivity() -> Term {
    let u = Term::free("u");
    Term::forall("u", Type::World, reach(&u, &u))
}

fn symmetry() -> Term {
    let (u, v) = (Term::free("u"), Term::free("v"));
    Term::forall("u", Type::World, Term::forall("v", Type::World, Term::imp(reach(&u, &v), reach(&v, &u))))
}

fn transitivity() -> Term {
    let (u, v, t) = (Term::free("u"), Term::free("v"), Term::free("t"));
    let body = Term::imp(Term::and(reach(&u, &v), reach(&v, &t)), reach(&u, &t));
    Term::forall("u", Type::World, Term::forall("v", Type::World, Term::forall("t", Type::World, body)))
}

impl FrameClass {
    pub const ALL: [FrameClass; 3] = [FrameClass::K, FrameClass::KB, FrameClass::S5];

    /// True when every frame condition of `other` is one of ours.
    pub fn includes(self, other: FrameClass) -> bool {
        self >= other
    }

    /// Frame conditions as named closed formulas over `r`.
    pub fn named_axioms(self) -> Vec<(&'static str, Term)> {
        match self {
            FrameClass::K => vec![],
            FrameClass::KB => vec![(FRAME_SYM, symmetry())],
            FrameClass::S5 => vec![(FRAME_REFL, reflexivity()), (FRAME_SYM, symmetry()), (FRAME_TRANS, transitivity())],
        }
    }

    pub fn frame_axioms(self) -> Vec<Term> {
        self.named_axioms().into_iter().map(|(_, t)| t).collect()
    }

    pub fn axiom(self, name: &str) -> Option<Term> {
        self.named_axioms().into_iter().find(|(n, _)| *n == name).map(|(_, t)| t)
    }

    pub fn is_frame_axiom_name(name: &str) -> bool {
        matches!(name, FRAME_REFL | FRAME_SYM | FRAME_TRANS)
    }

    /// Checks the frame condition on a row-major `n × n` accessibility matrix.
    pub fn admits(self, access: &[bool], n: usize) -> bool {
        debug_assert_eq!(access.len(), n * n);
        let r = |u: usize, v: usize| access[u * n + v];
        let symmetric = || (0..n).all(|u| (0..n).all(|v| !r(u, v) || r(v, u)));
        match self {
            FrameClass::K => true,
            FrameClass::KB => symmetric(),
            FrameClass::S5 => {
                (0..n).all(|u| r(u, u))
                    && symmetric()
                    && (0..n).all(|u| (0..n).all(|v| (0..n).all(|t| !(r(u, v) && r(v, t)) || r(u, t))))
            }
        }
    }
}

impl fmt::Display for FrameClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FrameClass::K => "K",
            FrameClass::KB => "KB",
            FrameClass::S5 => "S5",
        })
    }
}

impl FromStr for FrameClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "K" => Ok(FrameClass::K),
            "KB" => Ok(FrameClass::KB),
            "S5" => Ok(FrameClass::S5),
            _ => Err(format!("unknown logic `{s}` (expected K, KB or S5)")),
        }
    }
}
