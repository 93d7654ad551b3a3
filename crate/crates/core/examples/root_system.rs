//! Classes of indecomposables knitted from a slice, matched against the roots.
//!
//!     cargo run --example root_system -- E6

use meshroots::roots::{class_knitting, gram_csv, realize_root_system, BilinearForms};
use meshroots::{DynkinDiagram, HeightFunction};

fn main() -> meshroots::Result<()> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "E6".into());
    let d = DynkinDiagram::parse(&spec)?;
    let h = HeightFunction::bipartite(d.graph());
    let forms = BilinearForms::new(d.graph(), &h);
    println!("Euler form {:?}\nsymmetrized {:?}", forms.euler_matrix, forms.sym_matrix);

    let r = realize_root_system(&d, &h)?;
    println!("{} classes, {} roots, match = {}", r.vertex_count, r.root_count, r.passed());
    for e in r.bijection.iter().take(2 * d.rank()) {
        println!("  {} ↦ {:?}", e.vertex, e.class);
    }

    let cm = class_knitting(&d, &h)?;
    let gram = gram_csv(&cm, &forms);
    println!("\nGram matrix: {} rows; first row:", gram.lines().count() - 1);
    println!("{}", gram.lines().nth(1).unwrap_or(""));
    Ok(())
}
