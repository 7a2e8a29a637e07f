use std::collections::HashMap;

use clonekit::clones::base_of;
use clonekit::proplogic::{
    count_models, enumerate_formulas, evaluate, expressible, measure, parse, solve_sat, truth_table, xor_chain,
    Assignment, Formula,
};
use clonekit::{Basis, Error, Family, NamedClone};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn vars(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn b(names: &[&str]) -> Basis {
    Basis::from_names(names).unwrap()
}

/// Independent evaluator: recursion over the tree using only `BoolFn::eval`.
fn eval(f: &Formula, v: &Assignment) -> bool {
    match f {
        Formula::Var(x) => v[x],
        Formula::Apply(c, args) => c.func.eval(&args.iter().map(|a| eval(a, v)).collect::<Vec<_>>()).unwrap(),
    }
}

fn assignment(vars: &[String], mask: usize) -> Assignment {
    vars.iter().enumerate().map(|(i, x)| (x.clone(), mask >> i & 1 == 1)).collect()
}

fn brute_count(f: &Formula, vars: &[String]) -> u128 {
    (0..1usize << vars.len()).filter(|&m| eval(f, &assignment(vars, m))).count() as u128
}

fn random_formula(rng: &mut ChaCha8Rng, basis: &Basis, vars: &[String], depth: usize) -> Formula {
    let conns = basis.connectives();
    if depth == 0 || conns.is_empty() || rng.gen_bool(0.25) {
        return Formula::var(vars[rng.gen_range(0..vars.len())].as_str());
    }
    let c = conns[rng.gen_range(0..conns.len())].clone();
    let args = (0..c.arity()).map(|_| random_formula(rng, basis, vars, depth - 1)).collect();
    Formula::Apply(c, args)
}

#[test]
fn parser_precedence_and_associativity() {
    let all = b(&["and", "or", "not", "xor", "imp", "eq", "nimp"]);
    let p = |s: &str| parse(s, &all).unwrap().to_string();
    assert_eq!(p("!p & q | r"), "or(and(not(p),q),r)");
    assert_eq!(p("p | q & r"), "or(p,and(q,r))");
    assert_eq!(p("p ^ q | r"), "xor(p,or(q,r))");
    assert_eq!(p("p -> q ^ r"), "imp(p,xor(q,r))");
    assert_eq!(p("p -> q -> r"), "imp(imp(p,q),r)");
    assert_eq!(p("p ∧ q ∨ ¬r"), "or(and(p,q),not(r))");
    assert_eq!(p("(p -> q) & r"), "and(imp(p,q),r)");
    assert!(matches!(parse("p &", &all), Err(Error::SyntaxError { .. })));
    assert!(matches!(parse("p & q", &b(&["or"])), Err(Error::UndeclaredConnective(_))));
}

#[test]
fn sat_and_count_agree_with_brute_force_at_four_variables() {
    let vs = vars(&["p", "q", "r", "s"]);
    for family in [Family::R1, Family::M, Family::D, Family::L, Family::E, Family::V, Family::BF] {
        let basis = base_of(NamedClone::plain(family)).unwrap();
        let by_size = enumerate_formulas(&basis, &vs, 7);
        for f in by_size.iter().flatten() {
            let count = brute_count(f, &vs);
            let res = solve_sat(f, &basis).unwrap();
            assert_eq!(res.is_sat(), count > 0, "{family}: {f}");
            if let Some(w) = res.witness() {
                let mut full = assignment(&vs, 0);
                full.extend(w.clone());
                assert!(eval(f, &full), "{family}: witness for {f}");
            }
            assert_eq!(count_models(f, &basis, &vs).unwrap(), count, "{family}: {f}");
        }
    }
}

#[test]
fn r1_witness_is_all_true() {
    let basis = b(&["or", "eq"]);
    let f = parse("p | (q <-> r)", &basis).unwrap();
    let res = solve_sat(&f, &basis).unwrap();
    assert!(res.witness().unwrap().values().all(|&v| v));
}

#[test]
fn xor_chain_sizes() {
    for n in 1..=8 {
        let m = measure(&xor_chain(n));
        assert_eq!(m.tree, (1 << (n + 1)) - 1);
        assert_eq!(m.dag, n + 1);
    }
}

#[test]
fn too_many_variables_are_refused() {
    let names: Vec<String> = (0..30).map(|i| format!("x{i}")).collect();
    let f = names[1..]
        .iter()
        .fold(Formula::var(names[0].as_str()), |acc, x| Formula::app("and", vec![acc, Formula::var(x.as_str())]).unwrap());
    let g = Formula::app("not", vec![f]).unwrap();
    let basis = b(&["and", "not"]);
    assert!(matches!(solve_sat(&g, &basis), Err(Error::TooManyVariables { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn evaluation_matches_independent_evaluator(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vs = vars(&["p", "q", "r"]);
        let basis = b(&["and", "or", "not", "xor", "maj", "imp"]);
        let f = random_formula(&mut rng, &basis, &vs, 5);
        let t = truth_table(&f, &vs).unwrap();
        for m in 0..8 {
            let v = assignment(&vs, m);
            prop_assert_eq!(evaluate(&f, &v).unwrap(), eval(&f, &v));
            prop_assert_eq!(t.value(m), eval(&f, &v));
        }
    }

    #[test]
    fn self_dual_formulas_have_half_the_models(seed in any::<u64>(), n in 1usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vs: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let basis = b(&["maj", "not"]);
        let f = random_formula(&mut rng, &basis, &vs, 4);
        prop_assert_eq!(count_models(&f, &basis, &vs).unwrap(), 1u128 << (n - 1));
    }

    #[test]
    fn counting_matches_brute_force(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let bases = [
            b(&["and", "top", "bot"]),
            b(&["or", "top", "bot"]),
            b(&["xor", "top"]),
            b(&["xor", "bot"]),
            b(&["and", "or"]),
            b(&["nimp"]),
        ];
        let basis = &bases[rng.gen_range(0..bases.len())];
        let vs = vars(&["p", "q", "r", "s"]);
        let f = random_formula(&mut rng, basis, &vs, 4);
        prop_assert_eq!(count_models(&f, basis, &vs).unwrap(), brute_count(&f, &vs));
    }

    #[test]
    fn expressibility_depends_only_on_the_function(seed in any::<u64>(), pick in 0usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vs = vars(&["p", "q", "r"]);
        let full = b(&["and", "or", "not", "xor"]);
        let f = random_formula(&mut rng, &full, &vs, 4);
        let twice = Formula::app("not", vec![Formula::app("not", vec![f.clone()]).unwrap()]).unwrap();
        let doubled = Formula::app("and", vec![f.clone(), f.clone()]).unwrap();
        let targets = [b(&["and"]), b(&["or", "and"]), b(&["xor"]), b(&["xor", "top"]), b(&["maj"]), b(&["nimp"])];
        let o = &targets[pick];
        let e = expressible(&f, o).unwrap();
        prop_assert_eq!(expressible(&twice, o).unwrap(), e);
        prop_assert_eq!(expressible(&doubled, o).unwrap(), e);
    }

    #[test]
    fn dag_size_counts_distinct_subformulas(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vs = vars(&["p", "q"]);
        let f = random_formula(&mut rng, &b(&["and", "not", "xor"]), &vs, 5);
        fn occurrences(f: &Formula, acc: &mut HashMap<String, usize>) {
            *acc.entry(format!("{f}")).or_default() += 1;
            if let Formula::Apply(_, args) = f {
                args.iter().for_each(|a| occurrences(a, acc));
            }
        }
        let mut occ = HashMap::new();
        occurrences(&f, &mut occ);
        let m = measure(&f);
        prop_assert!(m.dag <= m.tree);
        prop_assert_eq!(m.tree, occ.values().sum::<usize>());
        prop_assert_eq!(m.dag, occ.len());
        prop_assert_eq!(m.dag == m.tree, occ.values().all(|&c| c == 1));
    }
}
