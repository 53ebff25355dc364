//! Fractional flux: f = f0 + f1 from the closed hypergeometric forms.

use std::f64::consts::PI;

use abc_scatter::amplitude::{amplitude_closed_f0, amplitude_closed_f1, amplitude_closed_generic, AngularGrid};
use abc_scatter::physics::{kinematics, PhysicalConfig};
use abc_scatter::specfun::AccelConfig;

fn main() -> abc_scatter::Result<()> {
    let accel = AccelConfig::default();
    let cfg = PhysicalConfig::new(0.1, 0.3, 1.0)?;
    let kin = kinematics(&cfg, 1.5)?;
    let nu = cfg.split().nu;
    let grid = AngularGrid::from_degrees(20.0, 340.0, 9, PI / 36.0)?;
    let p = amplitude_closed_generic(&kin, nu, &grid, &accel)?;
    for (i, &t) in grid.values().iter().enumerate() {
        let f0 = amplitude_closed_f0(t, nu, kin.beta, kin.k, &accel)?;
        let f1 = amplitude_closed_f1(t, nu, kin.beta, kin.beta_prime, kin.k, &accel)?;
        println!(
            "{:>6.1} deg  |f0| {:.6e}  |f1| {:.6e}  sigma {:.6e}",
            t.to_degrees(),
            f0.norm(),
            f1.norm(),
            p.sigma_values[i]
        );
    }
    Ok(())
}
