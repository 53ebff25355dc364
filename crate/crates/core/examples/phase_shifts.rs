//! Exact and small-coupling S-matrix elements across channels.

use abc_scatter::physics::{kinematics, Channel, PhysicalConfig};
use abc_scatter::smatrix::{s_approx, s_channel};

fn main() -> abc_scatter::Result<()> {
    let cfg = PhysicalConfig::new(0.05, 0.2, 1.0)?;
    let kin = kinematics(&cfg, 1.25)?;
    let split = cfg.split();
    println!("beta = {:.6}, beta' = {:.6}, v/c = {:.3}", kin.beta, kin.beta_prime, kin.v_over_c);
    println!("{:>5} {:>14} {:>14} {:>12}", "2j", "eta exact", "eta approx", "|S|-1");
    for two_j in (-7..=7).step_by(2) {
        let ch = Channel::from_twice_j(two_j)?;
        let exact = s_channel(ch, &kin, split, cfg.gamma)?;
        let approx = s_approx(ch, &kin, split)?;
        println!(
            "{two_j:>5} {:>14.10} {:>14.10} {:>12.1e}",
            exact.phase_shift.unwrap_or(f64::NAN),
            approx.phase_shift.unwrap_or(f64::NAN),
            exact.s_value.norm() - 1.0
        );
    }
    Ok(())
}
