use clonekit::boolfn::{BoolFn, PostProperty};
use clonekit::proplogic::{evaluate, truth_table, Assignment, Formula};
use clonekit::teachlearn::{
    assignment_of, enumerate_normal_forms, fits, learn_mq, parity_lower_bound, pc_prop, pc_reduce,
    standard_example_map, teach_modal, teach_prop, verify_pc, verify_unique, verify_unique_modal, LabeledExample,
    LearnFamily, MappedExample, ModalUniqueness, ParityOutcome, Payload, PcImage, PcKind, Uniqueness,
};
use clonekit::{Basis, Error};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn b(names: &[&str]) -> Basis {
    Basis::from_names(names).unwrap()
}

fn vars(n: usize) -> Vec<String> {
    ["p", "q", "r", "s"][..n].iter().map(|s| s.to_string()).collect()
}

fn random_formula(rng: &mut ChaCha8Rng, conns: &[&str], vs: &[String], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        return Formula::var(vs[rng.gen_range(0..vs.len())].as_str());
    }
    let name = conns[rng.gen_range(0..conns.len())];
    let arity = BoolFn::named(name, &[]).unwrap().arity();
    let args = (0..arity).map(|_| random_formula(rng, conns, vs, depth - 1)).collect();
    Formula::app(name, args).unwrap()
}

fn mask_of(prop: &[String], v: &Assignment) -> usize {
    prop.iter().enumerate().filter(|(_, x)| v[*x]).map(|(i, _)| 1 << i).sum()
}

fn table_fits(table: u64, prop: &[String], examples: &[LabeledExample]) -> bool {
    examples.iter().all(|ex| match &ex.payload {
        Payload::Assignment(v) => (table >> mask_of(prop, v) & 1 == 1) == ex.label,
        Payload::Model(_) => false,
    })
}

/// All non-constant monotone functions over `n` variables: the functions
/// generated by conjunction and disjunction.
fn monotone_nonconstant(n: usize) -> Vec<u64> {
    (0..1u64 << (1 << n))
        .filter(|&t| {
            let f = BoolFn::from_table(n, t).unwrap();
            f.has_property(PostProperty::Monotone) && !f.is_constant()
        })
        .collect()
}

#[test]
fn teaching_sets_for_monotone_targets_are_unique_by_brute_force() {
    for n in 1..=3 {
        let prop = vars(n);
        let space = monotone_nonconstant(n);
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        for _ in 0..60 {
            let phi = random_formula(&mut rng, &["and", "or"], &prop, 4);
            let set = teach_prop(&phi, &b(&["and", "or"]), &prop).unwrap();
            let target = truth_table(&phi, &prop).unwrap().table();
            let fitting: Vec<u64> = space.iter().copied().filter(|&t| table_fits(t, &prop, &set.examples)).collect();
            assert_eq!(fitting, vec![target], "{phi}");
        }
    }
}

#[test]
fn teaching_refuses_unteachable_or_foreign_targets() {
    let prop = vars(2);
    let xor = Formula::app("xor", vec![Formula::var("p"), Formula::var("q")]).unwrap();
    assert!(matches!(teach_prop(&xor, &b(&["xor"]), &prop), Err(Error::FragmentNotTeachable(_))));
    assert!(matches!(teach_prop(&xor, &b(&["and", "or"]), &prop), Err(Error::NotExpressible(_))));
    let neg = Formula::app("not", vec![Formula::var("q")]).unwrap();
    let set = teach_prop(&neg, &b(&["not"]), &prop).unwrap();
    assert_eq!(set.examples.len(), 2);
    assert_eq!(verify_unique(&neg, &set.examples, &b(&["not"]), &prop).unwrap(), Uniqueness::Unique);
}

#[test]
fn modal_teaching_sets_are_unique_up_to_their_bound() {
    let prop = vars(1);
    for nf in enumerate_normal_forms(&prop, 2) {
        let phi = nf.to_formula("p");
        let set = teach_modal(&phi, &prop).unwrap();
        for ex in &set.examples {
            let Payload::Model(m) = &ex.payload else { panic!("modal examples carry models") };
            assert_eq!(m.holds(m.point().unwrap_or(0), &phi), ex.label, "{nf}");
        }
        let bound = nf.depth() + 1;
        assert_eq!(
            verify_unique_modal(&phi, &set.examples, &prop, bound).unwrap(),
            ModalUniqueness::UniqueUpToBound,
            "{nf}"
        );
        assert!(matches!(
            verify_unique_modal(&phi, &set.examples, &prop, nf.depth()),
            Err(Error::BoundTooSmall { .. })
        ));
        let flipped: Vec<LabeledExample> =
            set.examples.iter().map(|e| LabeledExample { payload: e.payload.clone(), label: !e.label }).collect();
        assert_eq!(verify_unique_modal(&phi, &flipped, &prop, bound).unwrap(), ModalUniqueness::NotFitting);
    }
}

#[test]
fn learning_errors() {
    let prop = vars(3);
    assert!(matches!(learn_mq(&b(&["and", "or"]), &prop, &mut |_| true), Err(Error::NotLearnable(_))));
    // Majority is not a conjunction.
    let mut maj = |v: &Assignment| v.values().filter(|&&x| x).count() >= 2;
    assert!(matches!(learn_mq(&b(&["and"]), &prop, &mut maj), Err(Error::OracleInconsistent(_))));
}

#[test]
fn parity_edge_cases() {
    let prop = vars(3);
    // No example: every odd parity fits, so two witnesses exist.
    match parity_lower_bound(&prop, &[]).unwrap() {
        ParityOutcome::WitnessPair(a, c) => assert_ne!(a, c),
        other => panic!("expected a witness pair, got {other:?}"),
    }
    // The all-true assignment labeled negative contradicts every odd parity.
    let bad = LabeledExample::assignment(assignment_of(&prop, 0b111), false);
    assert!(matches!(parity_lower_bound(&prop, &[bad]), Err(Error::Inconsistent)));
}

#[test]
fn aimp_guard_is_an_off_switch() {
    let prop = vars(3);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let phi = random_formula(&mut rng, &["and", "imp"], &prop, 4);
        let red = pc_reduce(PcKind::Aimp, &phi, &prop).unwrap();
        let PcImage::Prop(image) = &red.image else { panic!("aimp image is propositional") };
        let guard = red.guard.clone().unwrap();
        assert!(!prop.contains(&guard));
        for mask in 0..8 {
            let mut v = assignment_of(&prop, mask);
            v.insert(guard.clone(), false);
            assert!(!evaluate(image, &v).unwrap(), "{image} with the guard off");
            v.insert(guard.clone(), true);
            assert_eq!(evaluate(image, &v).unwrap(), evaluate(&phi, &assignment_of(&prop, mask)).unwrap());
        }
    }
}

#[test]
fn reductions_preserve_labels_under_the_example_map() {
    let prop = vars(3);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for kind in [PcKind::Aimp, PcKind::Oxor, PcKind::ModalDiamond, PcKind::ModalBox] {
        let conns: &[&str] = match kind {
            PcKind::Aimp => &["and", "imp"],
            PcKind::Oxor => &["xor3"],
            _ => &["and", "not"],
        };
        let map = standard_example_map(kind, &prop);
        for _ in 0..40 {
            let phi = random_formula(&mut rng, conns, &prop, 3);
            let red = pc_reduce(kind, &phi, &prop).unwrap();
            for mask in 0..8 {
                let v = assignment_of(&prop, mask);
                let want = evaluate(&phi, &v).unwrap();
                let got = match (&red.image, map(&v)) {
                    (PcImage::Prop(f), MappedExample::Assignment(a)) => evaluate(f, &a).unwrap(),
                    (PcImage::Modal(f), MappedExample::Pointed(m, w)) => m.holds(w, f),
                    _ => panic!("{kind}: image and example kinds differ"),
                };
                assert_eq!(got, want, "{kind}: {phi} at {mask:03b}");
            }
        }
    }
}

#[test]
fn reductions_reject_foreign_sources() {
    let prop = vars(2);
    let or = Formula::app("or", vec![Formula::var("p"), Formula::var("q")]).unwrap();
    for kind in [PcKind::Aimp, PcKind::Oxor] {
        assert!(matches!(pc_reduce(kind, &or, &prop), Err(Error::NotInSourceFragment(_))), "{kind}");
    }
    // The modal reductions start from the full Boolean clone.
    assert!(pc_reduce(PcKind::ModalDiamond, &or, &prop).is_ok());
    assert!(verify_pc(PcKind::ModalBox, 2, 3).unwrap().passed());
    assert!(pc_prop(4).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn verify_unique_agrees_with_brute_force(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let prop = vars(n);
        let phi = random_formula(&mut rng, &["and", "or"], &prop, 4);
        let target = truth_table(&phi, &prop).unwrap().table();
        let examples: Vec<LabeledExample> = (0..rng.gen_range(0..=1usize << n))
            .map(|_| {
                let mask = rng.gen_range(0..1u64 << n);
                let label = if rng.gen_bool(0.9) { target >> mask & 1 == 1 } else { rng.gen() };
                LabeledExample::assignment(assignment_of(&prop, mask), label)
            })
            .collect();
        let fitting: Vec<u64> = monotone_nonconstant(n).into_iter().filter(|&t| table_fits(t, &prop, &examples)).collect();
        let got = verify_unique(&phi, &examples, &b(&["and", "or"]), &prop).unwrap();
        if !fitting.contains(&target) {
            prop_assert_eq!(got, Uniqueness::NotFitting);
        } else if fitting.len() == 1 {
            prop_assert_eq!(got, Uniqueness::Unique);
        } else {
            match got {
                Uniqueness::Ambiguous { other, .. } => {
                    prop_assert!(other.table() != target && fitting.contains(&other.table()));
                }
                other => prop_assert!(false, "expected ambiguity, got {:?}", other),
            }
        }
    }

    #[test]
    fn learning_recovers_the_target(seed in any::<u64>(), n in 1usize..=4, family in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let prop = vars(n);
        let subset: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
        let constant: bool = rng.gen();
        let target = move |v: &Assignment| -> bool {
            let picked = prop_values(v, &subset);
            match family {
                0 => picked.iter().all(|&x| x),
                1 => picked.iter().any(|&x| x),
                _ => picked.iter().fold(constant, |a, &x| a ^ x),
            }
        };
        let fragment = match family {
            0 => b(&["and", "top", "bot"]),
            1 => b(&["or", "top", "bot"]),
            _ => b(&["xor", "top"]),
        };
        let mut asked = 0;
        let mut oracle = |v: &Assignment| {
            asked += 1;
            target(v)
        };
        let learned = learn_mq(&fragment, &prop, &mut oracle).unwrap();
        prop_assert_eq!(asked, n + 1);
        prop_assert_eq!(learned.queries, n + 1);
        let expected_family = [LearnFamily::Conjunction, LearnFamily::Disjunction, LearnFamily::Affine][family];
        prop_assert_eq!(learned.family, expected_family);
        for mask in 0..1u64 << n {
            let v = assignment_of(&prop, mask);
            prop_assert_eq!(evaluate(&learned.formula, &v).unwrap(), target(&v));
        }
    }

    #[test]
    fn parity_outcome_matches_the_fitting_odd_parities(seed in any::<u64>(), n in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let prop = vars(n);
        let odd: Vec<u64> = (1..1u64 << n).filter(|s| s.count_ones() % 2 == 1).collect();
        let secret = odd[rng.gen_range(0..odd.len())];
        let examples: Vec<LabeledExample> = (0..rng.gen_range(0..=n + 1))
            .map(|_| {
                let mask = rng.gen_range(0..1u64 << n);
                LabeledExample::assignment(assignment_of(&prop, mask), (mask & secret).count_ones() % 2 == 1)
            })
            .collect();
        let fits_all = |s: u64| {
            examples.iter().all(|ex| {
                let Payload::Assignment(v) = &ex.payload else { unreachable!() };
                ((mask_of(&prop, v) as u64 & s).count_ones() % 2 == 1) == ex.label
            })
        };
        let fitting: Vec<u64> = odd.iter().copied().filter(|&s| fits_all(s)).collect();
        match parity_lower_bound(&prop, &examples).unwrap() {
            ParityOutcome::Saturated => prop_assert_eq!(fitting.len(), 1),
            ParityOutcome::WitnessPair(a, c) => {
                prop_assert!(fitting.len() >= 2);
                let ta = truth_table(&a, &prop).unwrap();
                let tc = truth_table(&c, &prop).unwrap();
                prop_assert!(ta != tc);
                for f in [&a, &c] {
                    for ex in &examples {
                        prop_assert!(fits(f, ex).unwrap());
                    }
                    prop_assert!(evaluate(f, &assignment_of(&prop, (1 << n) - 1)).unwrap());
                }
            }
        }
    }
}

fn prop_values(v: &Assignment, subset: &[bool]) -> Vec<bool> {
    ["p", "q", "r", "s"].iter().zip(subset).filter(|(_, &s)| s).map(|(x, _)| v[*x]).collect()
}
