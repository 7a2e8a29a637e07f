//! Exact learning of a conjunction from membership queries.
use clonekit::proplogic::Assignment;
use clonekit::teachlearn::learn_mq;
use clonekit::Basis;

fn main() -> clonekit::Result<()> {
    let prop: Vec<String> = (0..6).map(|i| format!("x{i}")).collect();
    let secret = |v: &Assignment| v["x1"] && v["x4"];
    let mut oracle = |v: &Assignment| secret(v);
    let learned = learn_mq(&Basis::from_names(&["and", "top", "bot"])?, &prop, &mut oracle)?;
    println!("learned {} with {} queries", learned.formula, learned.queries);
    let mut parity = |v: &Assignment| v["x0"] ^ v["x2"] ^ v["x5"];
    let learned = learn_mq(&Basis::from_names(&["xor", "top"])?, &prop, &mut parity)?;
    println!("learned {} with {} queries", learned.formula, learned.queries);
    Ok(())
}
