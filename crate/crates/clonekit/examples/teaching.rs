//! Teaching sets for a monotone formula and a modal normal form.
use clonekit::modal::parse_modal;
use clonekit::proplogic::parse;
use clonekit::teachlearn::{teach_modal, teach_prop, verify_unique, verify_unique_modal};
use clonekit::Basis;

fn main() -> clonekit::Result<()> {
    let b = Basis::from_names(&["and", "or"])?;
    let prop: Vec<String> = ["p", "q", "r"].iter().map(|s| s.to_string()).collect();
    let phi = parse("p & (q | r)", &b)?;
    let set = teach_prop(&phi, &b, &prop)?;
    println!("{}", serde_json::to_string_pretty(&set).expect("serializable"));
    println!("unique: {:?}", verify_unique(&phi, &set.examples, &b, &prop)?);

    let psi = parse_modal("<>[]p", None, &[])?;
    let p = vec!["p".to_string()];
    let set = teach_modal(&psi, &p)?;
    println!("{} pointed models teach {psi}", set.examples.len());
    println!("check: {:?}", verify_unique_modal(&psi, &set.examples, &p, 3)?);
    Ok(())
}
