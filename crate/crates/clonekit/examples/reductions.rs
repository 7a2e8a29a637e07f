//! Reductions between concept classes and their exhaustive check.
use clonekit::proplogic::parse;
use clonekit::teachlearn::{pc_reduce, verify_pc, PcKind};
use clonekit::Basis;

fn main() -> clonekit::Result<()> {
    let prop: Vec<String> = ["p", "q"].iter().map(|s| s.to_string()).collect();
    let phi = parse("p & (q -> p)", &Basis::from_names(&["and", "imp"])?)?;
    for kind in [PcKind::Aimp, PcKind::ModalDiamond, PcKind::ModalBox] {
        let r = pc_reduce(kind, &phi, &prop)?;
        println!("{kind}: {} maps to {} ({})", phi, r.image, r.example_map);
    }
    for (kind, n, k) in [(PcKind::Aimp, 2, 3), (PcKind::Oxor, 2, 3), (PcKind::ModalDiamond, 2, 3)] {
        let rep = verify_pc(kind, n, k)?;
        println!("{kind} n={n}: {} over {} source functions", rep.status, rep.source_functions);
    }
    Ok(())
}
