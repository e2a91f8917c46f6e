use std::path::PathBuf;

use modalhol::nd::check_proof;
use modalhol::syntax::{parse_theory, TheoryFile};

fn corpus(name: &str) -> TheoryFile {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name);
    let src = std::fs::read_to_string(&path).unwrap();
    parse_theory(&src).unwrap_or_else(|e| panic!("{name}: {e}"))
}

#[test]
fn scott_proofs_check() {
    let t = corpus("scott.thy");
    let env = t.environment();
    for p in t.proofs() {
        check_proof(p, &env).unwrap_or_else(|e| panic!("{}: {e}", p.name));
    }
}

#[test]
fn t3_needs_symmetry() {
    let t = corpus("scott.thy");
    let env = t.environment();
    let mut p = t.proof("T3").unwrap().clone();
    p.frame = modalhol::modal::FrameClass::K;
    let err = check_proof(&p, &env).unwrap_err();
    assert_eq!(err.step(), Some(4), "{err}");
}

#[test]
fn removing_a3_breaks_c() {
    let t = corpus("scott.thy");
    let mut env = modalhol::nd::Environment::new(t.signature().clone());
    for (n, f) in t.axioms() {
        if &**n != "A3" {
            env.add_axiom(n, t.signature().valid(f).unwrap());
        }
    }
    let t1 = t.proof("T1").unwrap();
    env.add_lemma("T1", t1.conclusion.clone(), t1.frame);
    let mut c = t.proof("C").unwrap().clone();
    c.premises.retain(|n| &**n != "A3");
    let err = check_proof(&c, &env).unwrap_err();
    assert_eq!(err.step(), Some(2), "{err}");
}

#[test]
fn corpus_round_trips() {
    for name in ["scott.thy", "scott_a1_split.thy", "scott_d2_broken.thy", "scott_k_t3.thy", "scott_a1a_t2.thy"] {
        let t = corpus(name);
        let printed = modalhol::syntax::print_theory(&t);
        let back = parse_theory(&printed).unwrap_or_else(|e| panic!("{name}: {e}\n{printed}"));
        assert_eq!(back, t, "{name}");
        assert_eq!(modalhol::syntax::print_theory(&back), printed);
    }
}
