//! Complex gamma, Kummer Φ and the unit-circle Gauss function F(1, a; b; z).

use abc_scatter::specfun::{gamma_ratio, gauss_f1ab, kummer_phi, log_gamma, AccelConfig};
use num_complex::Complex64;

fn main() -> abc_scatter::Result<()> {
    let z = Complex64::new(0.5, -0.3);
    println!("ln Γ({z}) = {}", log_gamma(z)?);
    println!("Γ(½ - 0.4i)/Γ(½ + 0.4i) = {}", gamma_ratio(Complex64::new(0.5, -0.4), Complex64::new(0.5, 0.4))?);

    for r in [2.0, 20.0, 60.0] {
        let phi = kummer_phi(Complex64::new(0.6, 0.3), Complex64::new(1.4, 0.0), Complex64::new(0.0, -r))?;
        println!("Φ(0.6+0.3i, 1.4; -{r}i) = {phi:.12}");
    }

    // on the unit circle the series only converges in the Abel sense
    let cfg = AccelConfig::default();
    let e = gauss_f1ab(
        Complex64::new(0.3, 0.4),
        Complex64::new(1.2, -0.1),
        Complex64::from_polar(1.0, 2.0),
        &cfg,
    )?;
    println!("F(1, a; b; e^2i) = {:.12} (residual {:.1e}, {} terms)", e.value, e.residual, e.terms);
    Ok(())
}
