//! Graded components A_{i,j;l} of the dg-preprojective algebra and their homology.
//!
//!     cargo run --example homology -- A2 1 1 4

use meshroots::dgalgebra::{EpsilonChoice, GradedComponent};
use meshroots::{DynkinDiagram, Limits};

fn main() -> meshroots::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let spec = args.first().map_or("A2", String::as_str);
    let num = |k: usize, default: usize| args.get(k).and_then(|s| s.parse().ok()).unwrap_or(default);
    let (i, j, l) = (num(1, 1), num(2, 1), num(3, 4));

    let d = DynkinDiagram::parse(spec)?;
    let g = d.graph();
    let limits = Limits::default();
    let c = GradedComponent::build(g, &EpsilonChoice::standard(g), i, j, l, &limits)?;
    for (k, basis) in c.bases.iter().enumerate() {
        let shown: Vec<String> = basis.iter().take(6).map(|p| p.to_string()).collect();
        println!("k={k}: {} paths  {}{}", basis.len(), shown.join("  "), if basis.len() > 6 { "  ..." } else { "" });
    }
    let dims = c.homology(&limits)?;
    println!("chain {:?}  ranks {:?}  homology {:?}", dims.chain, dims.ranks, dims.homology);

    // The same dimensions for every l up to 2h - 1.
    println!("\nl   H_0 H_1 H_2 ...");
    for l in 0..2 * d.coxeter_number() as usize {
        let h = c_homology(&d, i, j, l, &limits)?;
        println!("{l:<3} {h:?}");
    }
    Ok(())
}

fn c_homology(d: &DynkinDiagram, i: usize, j: usize, l: usize, limits: &Limits) -> meshroots::Result<Vec<usize>> {
    let g = d.graph();
    Ok(meshroots::dgalgebra::component_homology(g, &EpsilonChoice::standard(g), i, j, l, limits)?.homology)
}
