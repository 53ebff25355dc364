//! Bound levels with and without flux; flux lifts the ±j degeneracy.

use abc_scatter::bound::spectrum;
use abc_scatter::physics::split_flux;

fn main() -> abc_scatter::Result<()> {
    for alpha in [0.0, 0.3] {
        println!("alpha = {alpha}");
        for lv in spectrum(2, 3, split_flux(alpha), 0.1, 1.0)? {
            println!(
                "  n = {}  j = {:>4}/2  E = {:.12}  binding = {:.6e}  x{}",
                lv.n,
                lv.channel.twice_j(),
                lv.energy,
                1.0 - lv.energy,
                lv.degeneracy
            );
        }
    }
    Ok(())
}
