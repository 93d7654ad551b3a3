//! For a tree that is not Dynkin the dg-preprojective algebra has homology
//! only in degree 0. Pass a JSON tree file, or use the four-armed star.

use meshroots::dgalgebra::{component_homology, EpsilonChoice};
use meshroots::{Limits, TreeGraph};

fn main() -> meshroots::Result<()> {
    let tree = match std::env::args().nth(1) {
        Some(path) => {
            let text = std::fs::read_to_string(&path).map_err(|e| meshroots::Error::InvalidTree(e.to_string()))?;
            TreeGraph::from_json(&text)?
        }
        None => TreeGraph::star(4),
    };
    let eps = EpsilonChoice::standard(&tree);
    let limits = Limits::default();
    println!("l   dim H_0(A_{{1,1;l}})   higher");
    for l in 0..=8 {
        let h = component_homology(&tree, &eps, 1, 1, l, &limits)?;
        println!("{l:<3} {:<20} {:?}", h.h(0), &h.homology[1..]);
    }
    Ok(())
}
