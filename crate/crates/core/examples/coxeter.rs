//! The translation τ acts on classes by a Coxeter element.

use meshroots::roots::{bipartite_coxeter, coxeter_element};
use meshroots::{DynkinDiagram, HeightFunction};

fn main() -> meshroots::Result<()> {
    for spec in ["A1", "A4", "D4", "D6", "E6", "E7", "E8"] {
        let d = DynkinDiagram::parse(spec)?;
        let c = coxeter_element(&d, &HeightFunction::bipartite(d.graph()))?;
        println!(
            "{spec}: order {:?} (h = {}), preserves form: {}, equals two-batch product: {}",
            c.order,
            c.coxeter_number,
            c.preserves_form,
            c.matrix == bipartite_coxeter(d.graph())
        );
        if d.rank() <= 4 {
            println!("    C = {:?}", c.matrix);
        }
    }
    Ok(())
}
