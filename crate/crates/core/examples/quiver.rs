//! Translation quivers: a window of Γ̂ and the cyclic quotient Γ̂_cyc.
//!
//!     cargo run --example quiver -- D5

use meshroots::hatquiver::QuiverFormat;
use meshroots::{DynkinDiagram, HatQuiver, HatVertex};

fn main() -> meshroots::Result<()> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "D5".into());
    let d = DynkinDiagram::parse(&spec)?;
    let h = d.coxeter_number();
    println!("{d}: rank {}, h = {h}, involution {:?}", d.rank(), (1..=d.rank()).map(|i| d.involution(i)).collect::<Vec<_>>());

    let cyc = HatQuiver::cyclic(&d);
    println!("Γ̂_cyc: {} vertices (n·h = {}), {} arrows", cyc.vertices().len(), d.rank() * h as usize, cyc.arrows().len());

    let q = HatVertex::new(1, 0);
    println!("τ{q} = {}  ν{q} = {}  γ{q} = {}", cyc.tau(q, 1)?, cyc.nakayama(q)?, cyc.twisted_nakayama(q)?);

    let w = HatQuiver::dynkin_window(&d, 0, 4);
    print!("{}", w.emit(QuiverFormat::Dot));
    Ok(())
}
