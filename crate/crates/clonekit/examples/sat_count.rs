//! Satisfiability and model counting for formulas over restricted bases.
use clonekit::proplogic::{count_models, parse, solve_sat};
use clonekit::Basis;

fn main() -> clonekit::Result<()> {
    let b = Basis::from_names(&["and", "or", "top", "bot"])?;
    let f = parse("(p | q) & (q | r) & s", &b)?;
    let vars: Vec<String> = ["p", "q", "r", "s"].iter().map(|s| s.to_string()).collect();
    println!("{f}: {:?}", solve_sat(&f, &b)?);
    println!("models over {vars:?}: {}", count_models(&f, &b, &vars)?);
    let x = Basis::from_names(&["xor", "top"])?;
    let g = parse("p ^ q ^ r", &x)?;
    println!("{g}: {:?}; models {}", solve_sat(&g, &x)?, count_models(&g, &x, &vars[..3])?);
    Ok(())
}
