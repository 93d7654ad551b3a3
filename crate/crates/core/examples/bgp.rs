//! Reflecting the slice at a source or sink changes every class by s_i.

use meshroots::hatquiver::Sign;
use meshroots::roots::bgp_compatibility;
use meshroots::{DynkinDiagram, HeightFunction};

fn main() -> meshroots::Result<()> {
    for spec in ["A4", "D5", "E6"] {
        let d = DynkinDiagram::parse(spec)?;
        let g = d.graph();
        let h = HeightFunction::bipartite(g);
        for i in h.sources(g).into_iter().chain(h.sinks(g)) {
            let r = bgp_compatibility(&d, &h, i)?;
            println!("{spec} node {i} ({}): {} mismatches", if r.sign == "+" { "source" } else { "sink" }, r.mismatches.len());
        }
        // s_i^+ followed by s_i^- is the identity on height functions.
        let i = h.sources(g)[0];
        let back = h.reflect(g, i, Sign::Plus)?.reflect(g, i, Sign::Minus)?;
        assert_eq!(back, h);
    }
    Ok(())
}
