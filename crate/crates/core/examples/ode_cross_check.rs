//! Integrates the radial Dirac system and recovers S from the asymptotic fit.
//!
//! Pass a path to dump the trajectory as CSV.

use std::fs::File;
use std::io::BufWriter;

use abc_scatter::ode::{extract_s, integrate_radial, DEFAULT_RTOL};
use abc_scatter::physics::{kinematics, Channel, PhysicalConfig};
use abc_scatter::smatrix::s_exact;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = PhysicalConfig::new(0.05, 0.2, 1.0)?;
    let kin = kinematics(&cfg, 1.25)?;
    let split = cfg.split();
    for two_j in [-3, -1, 1, 3] {
        let ch = Channel::from_twice_j(two_j)?;
        let traj = integrate_radial(ch, &kin, split, cfg.gamma, 1e-6, 100.0, DEFAULT_RTOL)?;
        let fit = extract_s(&traj, (40.0, 100.0))?;
        let exact = s_exact(ch, &kin, split, cfg.gamma)?.s_value;
        println!(
            "2j = {two_j:>3}  S_ode = {:.10}  |S_ode - S| = {:.2e}  fit residual {:.1e}",
            fit.s_extracted,
            (fit.s_extracted - exact).norm(),
            fit.residual
        );
        if two_j == 1 {
            if let Some(path) = std::env::args().nth(1) {
                traj.write_csv(BufWriter::new(File::create(&path)?))?;
                println!("trajectory written to {path}");
            }
        }
    }
    Ok(())
}
