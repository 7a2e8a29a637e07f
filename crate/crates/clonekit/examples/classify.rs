//! Complexity verdicts for propositional and modal problems over fragments.
use clonekit::classifier::{classify_modal, classify_prop, Problem};
use clonekit::modal::ModalOps;
use clonekit::Basis;

fn main() -> clonekit::Result<()> {
    for (problem, names) in [
        (Problem::Sat, &["nimp"][..]),
        (Problem::Sat, &["and", "or", "top", "bot"]),
        (Problem::Count, &["maj", "not"]),
        (Problem::Implication, &["xor"]),
        (Problem::EvaluationTree, &["and", "not"]),
    ] {
        let b = Basis::from_names(names)?;
        println!("{problem} over {b}: {}", classify_prop(problem, &b)?);
    }
    let b = Basis::from_names(&["and"])?;
    let v = classify_modal(Problem::ModalConsistency, ModalOps::BOTH, &b, "K")?;
    println!("MODAL_CONSISTENCY over ({}, {b}) in K: {v}", ModalOps::BOTH);
    Ok(())
}
