//! Serre duality on Γ̂_cyc, and what a corrupted table looks like.

use meshroots::meshcat::{hom_table, serre_violations, Method};
use meshroots::{DynkinDiagram, HatQuiver, HatVertex, Limits};

fn main() -> meshroots::Result<()> {
    for spec in ["A1", "A4", "D5", "E6", "E8"] {
        let d = DynkinDiagram::parse(spec)?;
        let t = hom_table(&d, Method::Knitting, &Limits::default())?;
        let bad = serre_violations(&t, &HatQuiver::cyclic(&d))?;
        println!("{spec}: {} pairs, {} violations", t.entries.len(), bad.len());
    }

    let d = DynkinDiagram::parse("A3")?;
    let mut t = hom_table(&d, Method::Oracle, &Limits::default())?;
    let q = HatVertex::new(2, 1);
    t.entries.get_mut(&(q, q)).expect("diagonal").hom = 0;
    let bad = serre_violations(&t, &HatQuiver::cyclic(&d))?;
    println!("A3 with hom({q},{q}) zeroed: violations {bad:?}");
    Ok(())
}
