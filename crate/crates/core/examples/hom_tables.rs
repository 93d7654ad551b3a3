//! Hom/Ext¹ over Γ̂_cyc by mesh quotient, Euler knitting and the root oracle.
//!
//!     cargo run --release --example hom_tables -- D4

use meshroots::meshcat::{hom_table, Method};
use meshroots::{DynkinDiagram, Limits};

fn main() -> meshroots::Result<()> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "A3".into());
    let d = DynkinDiagram::parse(&spec)?;
    let limits = Limits::default();
    let tables: Vec<_> = Method::ALL.iter().map(|&m| hom_table(&d, m, &limits)).collect::<Result<_, _>>()?;
    for t in &tables[1..] {
        println!("{} vs {}: {} disagreements over {} pairs", tables[0].method, t.method, tables[0].disagreements(t).len(), t.entries.len());
    }
    let nonzero = tables[0].entries.values().filter(|p| p.hom + p.ext1 > 0).count();
    println!("{nonzero} pairs with a nonzero Hom or Ext¹\n");
    for line in tables[0].to_csv().lines().take(12) {
        println!("{line}");
    }
    Ok(())
}
