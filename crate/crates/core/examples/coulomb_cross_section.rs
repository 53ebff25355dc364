//! Integer flux: the closed amplitude against the resummed partial-wave series.

use std::f64::consts::PI;

use abc_scatter::amplitude::{amplitude_closed_nu0, amplitude_series, AngularGrid};
use abc_scatter::physics::{kinematics, PhysicalConfig};
use abc_scatter::specfun::AccelConfig;

fn main() -> abc_scatter::Result<()> {
    let cfg = PhysicalConfig::new(0.05, 0.0, 1.0)?;
    let kin = kinematics(&cfg, 1.25)?;
    let grid = AngularGrid::from_degrees(30.0, 180.0, 6, PI / 36.0)?;
    let closed = amplitude_closed_nu0(&kin, &grid)?;
    let series = amplitude_series(&kin, cfg.split(), cfg.gamma, &grid, &AccelConfig::default())?;
    println!("{:>6} {:>16} {:>16} {:>10}", "deg", "sigma closed", "sigma series", "rel diff");
    for (i, t) in grid.values().iter().enumerate() {
        let (a, b) = (closed.sigma_values[i], series.sigma_values[i]);
        println!("{:>6.1} {a:>16.8e} {b:>16.8e} {:>10.2e}", t.to_degrees(), (a - b).abs() / a);
    }
    Ok(())
}
