//! Complex special functions used by the analytic scattering formulas.
//!
//! Everything here is a pure function of its arguments. Gamma-function work
//! goes through [`log_gamma`] so that ratios of huge or tiny values never
//! overflow; the hypergeometric routines are specialised to the parameter
//! patterns that occur in the partial-wave sums.

mod accel;
mod gamma;
mod gauss;
mod kummer;

pub use accel::{neville_to_zero, AbelEstimate, AccelConfig, DampedSums};
pub use gamma::{gamma_ratio, ln_gamma_ratio, log_gamma, recip_gamma, GAMMA_TOLERANCE};
pub use gauss::{
    f1ab_abel, f1ab_pfaff, gauss_f1ab, HYPERGEOMETRIC_TOLERANCE, PFAFF_RADIUS,
};
pub use kummer::{
    kummer_phi, kummer_phi_asymptotic, kummer_phi_series, ASYMPTOTIC_RADIUS, SERIES_RADIUS,
};

pub use num_complex::Complex64;

/// Complex scalar used throughout the crate.
pub type ComplexValue = Complex64;

pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);

pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `ln(1 + w)` without cancellation for small `|w|`.
pub(crate) fn ln_1p(w: Complex64) -> Complex64 {
    if w.norm() > 0.25 {
        return (Complex64::new(1.0, 0.0) + w).ln();
    }
    let (u, v) = (w.re, w.im);
    let re = 0.5 * (2.0 * u + u * u + v * v).ln_1p();
    let im = v.atan2(1.0 + u);
    Complex64::new(re, im)
}

/// True when `z` is 0, -1, -2, ... exactly.
pub(crate) fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

pub(crate) fn ensure_finite(z: Complex64, what: &'static str) -> crate::Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(crate::Error::Overflow(what))
    }
}
