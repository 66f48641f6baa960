//! Ground states of periodic chains L = 3, 6, 9 next to the thermodynamic
//! values.

use su3corr::c64;
use su3corr::lattice_ed::{ground_state, observables, ChainSpec, Observable};

fn main() -> su3corr::Result<()> {
    println!("   L  method    dim   E0/L                <P12 P23>");
    for l in [3, 6, 9] {
        let gs = ground_state(ChainSpec::new(l)?)?;
        let o = observables(&gs, &[Observable::P12P23]);
        println!(
            "{l:4}  {:8} {:5}  {:.15}  {:.15}",
            format!("{:?}", gs.method),
            gs.sector.dim(),
            gs.energy_per_site(),
            o.p12p23.unwrap()
        );
    }
    println!("   ∞                  {:.15}", su3corr::two_site::omega(c64(0.0, 0.0))?.re);
    Ok(())
}
