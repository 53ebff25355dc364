//! Half a flux quantum: the j = -1/2 channel turns supercritical.

use std::f64::consts::PI;

use abc_scatter::amplitude::{amplitude_closed_nu_half, amplitude_series, AngularGrid};
use abc_scatter::physics::{kinematics, Channel, PhysicalConfig};
use abc_scatter::smatrix::{s_approx, s_supercritical_pair};
use abc_scatter::specfun::AccelConfig;

fn main() -> abc_scatter::Result<()> {
    let cfg = PhysicalConfig::new(0.05, 0.5, 1.0)?;
    let kin = kinematics(&cfg, 1.01)?;
    let split = cfg.split();
    let ch = Channel::new(-1);
    let (s1, s2) = s_supercritical_pair(ch, &kin, split, cfg.gamma)?;
    let mean = (s1 + s2) / 2.0;
    println!("S(1) = {s1:.10}, |S(1)| = {:.6}", s1.norm());
    println!("S(2) = {s2:.10}, |S(2)| = {:.6}", s2.norm());
    println!("mean = {mean:.10}, approx = {:.10}", s_approx(ch, &kin, split)?.s_value);

    let grid = AngularGrid::from_degrees(60.0, 180.0, 5, PI / 36.0)?;
    let closed = amplitude_closed_nu_half(&kin, &grid)?;
    let series = amplitude_series(&kin, split, cfg.gamma, &grid, &AccelConfig::default())?;
    for (i, t) in grid.values().iter().enumerate() {
        println!(
            "{:>6.1} deg  sigma closed {:.6e}  series {:.6e}",
            t.to_degrees(),
            closed.sigma_values[i],
            series.sigma_values[i]
        );
    }
    Ok(())
}
