mod common;

use std::collections::BTreeSet;

use common::{corpus, CORPUS};
use modalhol::modal::FrameClass;
use modalhol::nd::{
    axioms_used, axioms_used_transitive, check_proof, Block, Environment, Justification, Label, Line, Proof,
    ProofError, Range, Step,
};
use modalhol::stt::{Name, Term, Type};

fn names(ns: &[&str]) -> BTreeSet<Name> {
    ns.iter().map(|&n| n.into()).collect()
}

fn cited(j: &Justification) -> Vec<Label> {
    use Justification::*;
    let r = |r: &Range| [r.first, r.last];
    match j {
        Hypothesis | AxiomRef(_) => vec![],
        DefUnfold(_, a)
        | AndElimL(a)
        | AndElimR(a)
        | OrIntroL(a)
        | OrIntroR(a)
        | FalsityElim(a)
        | IffElimL(a)
        | IffElimR(a)
        | DoubleNegElim(a)
        | BetaConv(a)
        | ForallElim(a, _)
        | ExistsIntro(a, _) => vec![*a],
        ImpElim(a, b) | AndIntro(a, b) | NotElim(a, b) | IffIntro(a, b) => vec![*a, *b],
        ImpIntro(x) | NotIntro(x) | ForallIntro(x) => r(x).to_vec(),
        OrElim(a, x, y) => [vec![*a], r(x).to_vec(), r(y).to_vec()].concat(),
        ExistsElim(a, x) => [vec![*a], r(x).to_vec()].concat(),
    }
}

type Edit<'a> = dyn FnMut(&[Step], bool) -> Vec<Vec<Step>> + 'a;

/// Every way of editing one step list of `steps`, recursively.
fn edits(steps: &[Step], top: bool, edit: &mut Edit) -> Vec<Vec<Step>> {
    let mut out = edit(steps, top);
    for (i, s) in steps.iter().enumerate() {
        if let Step::Block(b) = s {
            for inner in edits(&b.steps, false, edit) {
                let mut copy = steps.to_vec();
                copy[i] = Step::Block(Block { fixes: b.fixes.clone(), steps: inner });
                out.push(copy);
            }
        }
    }
    out
}

#[test]
fn trivial_proof_uses_nothing() {
    let env = Environment::new(Default::default());
    let p = Proof {
        name: "top".into(),
        frame: FrameClass::K,
        premises: vec![],
        steps: vec![
            Step::Block(Block {
                fixes: vec![],
                steps: vec![Step::Line(Line { label: 1, formula: Term::truth(), just: Justification::Hypothesis })],
            }),
            Step::Line(Line {
                label: 2,
                formula: Term::imp(Term::truth(), Term::truth()),
                just: Justification::ImpIntro(Range::new(1, 1)),
            }),
        ],
        conclusion: Term::imp(Term::truth(), Term::truth()),
    };
    check_proof(&p, &env).unwrap();
    assert!(axioms_used(&p).is_empty());
}

#[test]
fn corpus_citations() {
    let t = corpus("scott.thy");
    let used = |n: &str| axioms_used(t.proof(n).unwrap());
    assert_eq!(used("T1"), names(&["A1a", "A2"]));
    assert_eq!(used("C"), names(&["A3", "T1"]));
    assert!(used("T2").contains("A1b"));
    assert!(!used("T2").contains("A1a"));
    assert!(used("T3").contains("frame_sym"));
    let env = t.environment();
    let c = t.proof("C").unwrap();
    assert_eq!(axioms_used_transitive(c, &env, &|n| t.proof(n)), names(&["A1a", "A2", "A3"]));
    let t3 = t.proof("T3").unwrap();
    let all = axioms_used_transitive(t3, &env, &|n| t.proof(n));
    assert_eq!(all, names(&["A1a", "A1b", "A2", "A3", "A4", "A5", "frame_sym"]));
}

fn swap_citation(steps: &mut [Step], from: &str, to: &str) -> Option<Label> {
    for s in steps {
        match s {
            Step::Line(l) if matches!(&l.just, Justification::AxiomRef(n) if &**n == from) => {
                l.just = Justification::AxiomRef(to.into());
                return Some(l.label);
            }
            Step::Block(b) => {
                if let Some(l) = swap_citation(&mut b.steps, from, to) {
                    return Some(l);
                }
            }
            _ => {}
        }
    }
    None
}

#[test]
fn citing_the_wrong_direction_of_a1_fails() {
    let t = corpus("scott_a1_split.thy");
    let env = t.environment();
    let mut p = t.proof("T1").unwrap().clone();
    let at = swap_citation(&mut p.steps, "A1a", "A1b").unwrap();
    let err = check_proof(&p, &env).unwrap_err();
    assert!(matches!(err, ProofError::FailedStep { step, .. } if step == at), "{err}");
    p.premises.push("A1b".into());
    let err = check_proof(&p, &env).unwrap_err();
    assert!(matches!(err, ProofError::FailedStep { step, .. } if step == at), "{err}");
}

#[test]
fn redundant_lines_can_be_inserted_anywhere() {
    for file in CORPUS {
        let t = corpus(file);
        let env = t.environment();
        for p in t.proofs() {
            let premise = p.premises[0].clone();
            let formula = env.fact(&premise).unwrap().formula.clone();
            let extra = Step::Line(Line { label: 9999, formula, just: Justification::AxiomRef(premise) });
            let variants = edits(&p.steps, true, &mut |steps, top| {
                let from = if top { 0 } else { 1 };
                (from..steps.len())
                    .map(|i| {
                        let mut copy = steps.to_vec();
                        copy.insert(i, extra.clone());
                        copy
                    })
                    .collect()
            });
            assert!(!variants.is_empty());
            for steps in variants {
                let q = Proof { steps, ..p.clone() };
                check_proof(&q, &env).unwrap_or_else(|e| panic!("{file} {}: {e}", p.name));
            }
        }
    }
}

#[test]
fn uncited_lines_can_be_deleted() {
    for file in CORPUS {
        let t = corpus(file);
        let env = t.environment();
        for p in t.proofs() {
            let used: BTreeSet<Label> = p.lines().iter().flat_map(|l| cited(&l.just)).collect();
            let last = p.lines().last().unwrap().label;
            let variants = edits(&p.steps, true, &mut |steps, _| {
                (0..steps.len())
                    .filter(|&i| matches!(&steps[i], Step::Line(l) if !used.contains(&l.label) && l.label != last))
                    .map(|i| {
                        let mut copy = steps.to_vec();
                        copy.remove(i);
                        copy
                    })
                    .collect()
            });
            for steps in variants {
                let q = Proof { steps, ..p.clone() };
                check_proof(&q, &env).unwrap_or_else(|e| panic!("{file} {}: {e}", p.name));
            }
        }
    }
}

#[test]
fn independent_premise_lines_commute() {
    let t = corpus("scott.thy");
    let env = t.environment();
    let p = t.proof("T3").unwrap();
    for (i, j) in [(0, 1), (0, 3), (1, 2), (2, 3)] {
        let mut q = p.clone();
        q.steps.swap(i, j);
        check_proof(&q, &env).unwrap_or_else(|e| panic!("swap {i} {j}: {e}"));
    }
}

#[test]
fn eigenvariables_must_be_fixed_by_the_block() {
    let t = corpus("scott.thy");
    let env = t.environment();
    let mut p = t.proof("C").unwrap().clone();
    let Step::Block(b) = &mut p.steps[2] else { panic!("C has a block third") };
    b.fixes = vec![("v".into(), Type::World)];
    assert!(check_proof(&p, &env).is_err());
}
