use clonekit::boolfn::CATALOG;
use clonekit::classifier::{citation, classify_modal, classify_prop, Class, Completeness, Problem, CITATIONS};
use clonekit::clones::{all_named, base_of, contains, identify};
use clonekit::modal::ModalOps;
use clonekit::{Basis, Error};
use proptest::prelude::*;

fn b(names: &[&str]) -> Basis {
    Basis::from_names(names).unwrap()
}

fn prop_problems() -> impl Iterator<Item = Problem> {
    Problem::ALL.into_iter().filter(|p| !p.is_modal())
}

const MODAL_OPS: [ModalOps; 4] = [ModalOps::NONE, ModalOps::DIAMOND, ModalOps::BOX, ModalOps::BOTH];

#[test]
fn problem_names_round_trip() {
    for p in Problem::ALL {
        assert_eq!(p.as_str().parse::<Problem>().unwrap(), p);
        assert_eq!(p.as_str().to_lowercase().replace('_', "-").parse::<Problem>().unwrap(), p);
    }
    assert!(matches!("SATISFY".parse::<Problem>(), Err(Error::UnknownProblem(_))));
}

#[test]
fn every_problem_has_exactly_one_citation_and_verdicts_use_it() {
    for p in Problem::ALL {
        assert_eq!(CITATIONS.iter().filter(|(q, _)| *q == p).count(), 1, "{p}");
        assert!(!citation(p).is_empty());
    }
    for p in prop_problems() {
        for names in [&["and"][..], &["nimp"], &["xor", "top"], &["and", "not"]] {
            assert_eq!(classify_prop(p, &b(names)).unwrap().citation, citation(p));
        }
    }
}

#[test]
fn propositional_verdicts_are_total_and_never_open() {
    for c in all_named(4) {
        let basis = base_of(c).unwrap();
        for p in prop_problems() {
            let v = classify_prop(p, &basis).unwrap_or_else(|e| panic!("{p} over {c}: {e}"));
            assert_ne!(v.class, Class::Open, "{p} over {c}");
        }
    }
}

#[test]
fn verdicts_depend_only_on_the_clone() {
    // A basis and the canonical base of the clone it generates are classified alike.
    for mask in 1u32..1 << 9 {
        let names: Vec<&str> = CATALOG.iter().take(9).enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e.name).collect();
        let basis = b(&names);
        let canon = base_of(identify(&basis).unwrap()).unwrap();
        for p in prop_problems() {
            let (x, y) = (classify_prop(p, &basis).unwrap(), classify_prop(p, &canon).unwrap());
            assert_eq!((x.class, x.completeness), (y.class, y.completeness), "{p}: {basis} vs {canon}");
        }
    }
}

#[test]
fn sat_hardness_is_upward_closed() {
    let named = all_named(4);
    let hard = |c| classify_prop(Problem::Sat, &base_of(c).unwrap()).unwrap().class == Class::NP;
    let verdicts: Vec<bool> = named.iter().map(|&c| hard(c)).collect();
    for (i, &c) in named.iter().enumerate() {
        for (j, &d) in named.iter().enumerate() {
            if verdicts[i] && contains(d, c).unwrap() {
                assert!(verdicts[j], "SAT hard over {c} but not over the larger {d}");
            }
        }
    }
}

#[test]
fn open_verdicts_only_for_the_unclassified_logics() {
    let bases = [b(&["and"]), b(&["xor"]), b(&["xor", "bot"]), b(&["and", "not"]), b(&["or", "top"])];
    for logic in ["K", "KD", "T", "K4", "S4", "S5"] {
        for m in &MODAL_OPS[1..] {
            for o in &bases {
                let v = classify_modal(Problem::ModalConsistency, *m, o, logic).unwrap();
                assert_eq!(v.class == Class::Open, logic != "K", "{logic} {m} {o}");
                if v.class == Class::Open {
                    assert_eq!(v.completeness, Completeness::Exact);
                    assert!(v.note.is_some());
                }
            }
        }
    }
}

#[test]
fn modal_consistency_under_k_grows_with_the_fragment() {
    let rank = |c: Class| match c {
        Class::P => 0,
        Class::CoNP => 1,
        Class::PSPACE => 2,
        other => panic!("unexpected class {other}"),
    };
    for e in CATALOG {
        let small = b(&[e.name]);
        let big = b(&[e.name, "not"]);
        for m in &MODAL_OPS[1..] {
            let x = classify_modal(Problem::ModalConsistency, *m, &small, "K").unwrap().class;
            let y = classify_modal(Problem::ModalConsistency, *m, &big, "K").unwrap().class;
            assert!(rank(x) <= rank(y), "{m} {small}: {x} vs {y}");
        }
    }
}

#[test]
fn errors_are_reported() {
    let o = b(&["and"]);
    assert!(matches!(classify_prop(Problem::TboxSat, &o), Err(Error::BadModalSet(_))));
    assert!(matches!(classify_modal(Problem::Sat, ModalOps::BOTH, &o, "K"), Err(Error::BadModalSet(_))));
    assert!(matches!(
        classify_modal(Problem::ModalConsistency, ModalOps::NONE, &o, "K"),
        Err(Error::BadModalSet(_))
    ));
    assert!(matches!(
        classify_modal(Problem::ModalConsistency, ModalOps::BOTH, &o, "GL"),
        Err(Error::UnsupportedLogic(_))
    ));
    assert!(matches!(
        classify_modal(Problem::TboxSat, ModalOps::BOTH, &o, "K"),
        Err(Error::UnsupportedLogic(_))
    ));
    assert!(matches!(
        classify_modal(Problem::ModalConsistency, ModalOps::BOTH, &o, "KB"),
        Err(Error::UnsupportedLogic(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adding_redundant_connectives_keeps_verdicts(mask in 1u32..1 << 12) {
        let names: Vec<&str> = CATALOG.iter().take(12).enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e.name).collect();
        let basis = b(&names);
        let c = identify(&basis).unwrap();
        let extra: Vec<&str> = CATALOG
            .iter()
            .filter(|e| clonekit::clones::in_named_clone(&e.build(), c))
            .map(|e| e.name)
            .collect();
        let bigger = b(&[names.clone(), extra].concat());
        for p in prop_problems() {
            let (x, y) = (classify_prop(p, &basis).unwrap(), classify_prop(p, &bigger).unwrap());
            prop_assert_eq!((x.class, x.completeness), (y.class, y.completeness));
        }
    }
}
