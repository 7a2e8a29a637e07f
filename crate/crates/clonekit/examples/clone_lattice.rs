//! Identify the clone generated by a few bases and relate them in Post's lattice.
use clonekit::clones::{base_of, identify, join, leq, meet};
use clonekit::Basis;

fn main() -> clonekit::Result<()> {
    for names in [&["and", "or"][..], &["nimp"], &["xor", "top"], &["maj"], &["and", "not"]] {
        let b = Basis::from_names(names)?;
        let c = identify(&b)?;
        println!("{b} generates {c}; canonical base {}", base_of(c)?);
    }
    let (m2, l) = (identify(&Basis::from_names(&["and", "or"])?)?, identify(&Basis::from_names(&["xor"])?)?);
    println!("join({m2}, {l}) = {}", join(m2, l)?);
    println!("meet({m2}, {l}) = {}", meet(m2, l)?);
    println!("{{and}} <= {{and, or}}: {}", leq(&Basis::from_names(&["and"])?, &Basis::from_names(&["and", "or"])?)?);
    Ok(())
}
