mod common;

use common::{all_models, corpus, random_formula, FormulaShape, Naive};
use modalhol::modal::{FrameClass, ModalFormula, Signature};
use modalhol::model::{search, verify_model, Problem, SearchBounds, SearchOutcome};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn scott() -> (Signature, ModalFormula) {
    let t = corpus("scott.thy");
    let a1 = t.formula("A1").unwrap();
    (t.signature().clone(), a1)
}

fn shape() -> FormulaShape {
    FormulaShape { depth: 4, prop_binders: 2, definitions: true }
}

fn axioms(rng: &mut StdRng) -> Vec<ModalFormula> {
    (0..rng.gen_range(1..=3)).map(|_| random_formula(rng, shape())).collect()
}

fn frame(rng: &mut StdRng) -> FrameClass {
    FrameClass::ALL[rng.gen_range(0..3)]
}

fn budgeted(w: usize, d: usize) -> SearchBounds {
    SearchBounds { node_budget: 20_000, ..SearchBounds::sizes(w, d) }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn search_at_one_world_agrees_with_enumeration(seed in any::<u64>(), refute in any::<bool>()) {
        let (sig, _) = scott();
        let mut rng = StdRng::seed_from_u64(seed);
        let axioms = axioms(&mut rng);
        let conj = refute.then(|| random_formula(&mut rng, shape()));
        let fc = frame(&mut rng);
        let expected = all_models(1, 1).any(|m| {
            let naive = Naive::new(&m, &sig);
            (fc != FrameClass::S5 || m.access(0, 0))
                && axioms.iter().all(|f| naive.valid(f))
                && conj.as_ref().is_none_or(|c| !naive.valid(c))
        });
        let problem = Problem::from_formulas(&sig, &axioms, conj.as_ref()).unwrap();
        let r = search(&problem, fc, &SearchBounds::sizes(1, 1), false).unwrap();
        match &r.outcome {
            SearchOutcome::Found(m) => {
                prop_assert!(expected);
                prop_assert!(verify_model(m, &sig, &axioms, fc, conj.as_ref()));
            }
            SearchOutcome::ExhaustedAtBounds => prop_assert!(!expected),
            SearchOutcome::BudgetExceeded => prop_assert!(false, "budget at (1, 1)"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn found_models_verify(seed in any::<u64>()) {
        let (sig, _) = scott();
        let mut rng = StdRng::seed_from_u64(seed);
        let axioms = axioms(&mut rng);
        let fc = frame(&mut rng);
        let r = search(&Problem::from_formulas(&sig, &axioms, None).unwrap(), fc, &budgeted(2, 2), false).unwrap();
        if let SearchOutcome::Found(m) = &r.outcome {
            prop_assert!(verify_model(m, &sig, &axioms, fc, None));
            let naive = Naive::new(m, &sig);
            prop_assert!(axioms.iter().all(|f| naive.valid(f)));
        }
    }

    #[test]
    fn positivity_splits_complementary_pairs(seed in any::<u64>()) {
        let (sig, a1) = scott();
        let mut rng = StdRng::seed_from_u64(seed);
        let mut axioms = vec![a1];
        axioms.extend((0..rng.gen_range(0..=2)).map(|_| random_formula(&mut rng, shape())));
        let fc = frame(&mut rng);
        let r = search(&Problem::from_formulas(&sig, &axioms, None).unwrap(), fc, &budgeted(2, 2), false).unwrap();
        if let SearchOutcome::Found(m) = &r.outcome {
            let full = (1usize << (m.worlds() * m.indivs())) - 1;
            for e in 0..=full {
                for w in 0..m.worlds() {
                    prop_assert_ne!(m.positive(e, w), m.positive(full ^ e, w));
                }
            }
        }
    }

    #[test]
    fn parallel_search_is_deterministic(seed in any::<u64>()) {
        let (sig, _) = scott();
        let mut rng = StdRng::seed_from_u64(seed);
        let axioms = axioms(&mut rng);
        let conj = rng.gen_bool(0.5).then(|| random_formula(&mut rng, shape()));
        let fc = frame(&mut rng);
        let problem = Problem::from_formulas(&sig, &axioms, conj.as_ref()).unwrap();
        let bounds = SearchBounds::sizes(2, 1);
        let seq = search(&problem, fc, &bounds, false).unwrap();
        let par = search(&problem, fc, &bounds, true).unwrap();
        prop_assert_eq!(seq.outcome, par.outcome);
    }
}

#[test]
fn falsity_has_no_model_at_any_size() {
    let sig = Signature::new();
    for (w, d) in [(1, 1), (2, 2), (3, 1)] {
        let r = search(
            &Problem::from_formulas(&sig, &[ModalFormula::Falsity], None).unwrap(),
            FrameClass::K,
            &SearchBounds::sizes(w, d),
            false,
        )
        .unwrap();
        assert_eq!(r.outcome, SearchOutcome::ExhaustedAtBounds);
    }
}
