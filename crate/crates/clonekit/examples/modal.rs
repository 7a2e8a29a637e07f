//! Model checking and modal closures of clones.
use clonekit::clones::all_named;
use clonekit::modal::{clos, contingency, mc, parse_modal, KripkeModel, Logic, ModalOps};

fn main() -> clonekit::Result<()> {
    let m = KripkeModel::from_json(
        r#"{"worlds":["a","b","c"],"rel":[["a","b"],["a","c"]],"val":{"b":["p"]},"point":"a"}"#,
    )?;
    for text in ["<>p", "[]p", "gamma(p)", "<>[]false"] {
        let f = parse_modal(text, None, &[contingency()])?;
        println!("a |= {text}: {}", mc(&m, "a", &f)?);
    }
    for logic in [Logic::K, Logic::Verum, Logic::GL] {
        for c in all_named(2).into_iter().take(6) {
            let v = clos(logic, ModalOps::DIAMOND, c)?;
            println!("clos({logic}, {}, {c}) = {}", ModalOps::DIAMOND, serde_json::to_string(&v).expect("serializable"));
        }
    }
    Ok(())
}
