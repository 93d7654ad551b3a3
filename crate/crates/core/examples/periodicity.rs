//! H_k(A_{i,j;l}) = H_{k+2}(A_{i,j;l+2h}) on small diagrams.
//!
//!     cargo run --release --example periodicity -- D4 2

use meshroots::meshcat::periodicity_check;
use meshroots::{DynkinDiagram, Limits};

fn main() -> meshroots::Result<()> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "A3".into());
    let lmax = std::env::args().nth(2).and_then(|s| s.parse().ok()).unwrap_or(2);
    let d = DynkinDiagram::parse(&spec)?;
    let r = periodicity_check(&d, lmax, &Limits::default())?;
    println!("{spec}, h = {}: {} triples, all hold: {}", r.coxeter_number, r.rows.len(), r.passed());
    for row in r.rows.iter().filter(|row| row.lower.iter().any(|&x| x > 0)) {
        println!("  ({},{};{:>2})  {:?}  ~  ({},{};{:>2})  {:?}", row.i, row.j, row.l, row.lower, row.i, row.j, row.l + 2 * r.coxeter_number as usize, row.upper);
    }
    Ok(())
}
