use num_complex::Complex64;

use super::{ensure_finite, is_nonpositive_integer, ln_1p};
use crate::{Error, Result};

/// Default relative tolerance for gamma-function evaluations.
pub const GAMMA_TOLERANCE: f64 = 1e-10;

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const MAX_ARGUMENT: f64 = 1e15;

// B_{2k} / (2k (2k - 1)), k = 1..7
const STIRLING: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
];

fn lanczos(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &p) in LANCZOS.iter().enumerate().skip(1) {
        x += p / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + x.ln()
}

fn check_argument(z: Complex64) -> Result<()> {
    if !(z.re.is_finite() && z.im.is_finite()) || z.norm() > MAX_ARGUMENT {
        return Err(Error::Overflow("log_gamma"));
    }
    if is_nonpositive_integer(z) {
        return Err(Error::Pole { re: z.re, im: z.im });
    }
    Ok(())
}

/// Principal branch of `ln Γ(z)`.
///
/// Lanczos for `Re z >= 1/2`; to the left of that line the argument is
/// shifted up by the recurrence `ln Γ(z) = ln Γ(z + n) - Σ ln(z + k)`, which
/// keeps the imaginary part on the principal branch.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    check_argument(z)?;
    if z.re >= 0.5 {
        return Ok(lanczos(z));
    }
    let shift = (0.5 - z.re).ceil() as usize;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..shift {
        acc += (z + k as f64).ln();
    }
    Ok(lanczos(z + shift as f64) - acc)
}

fn stirling_tail(w: Complex64) -> Complex64 {
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut p = inv;
    for &c in STIRLING.iter() {
        sum += c * p;
        p *= inv2;
    }
    sum
}

/// `ln Γ(a) - ln Γ(b)` modulo `2πi`.
///
/// When both arguments are large and close together the difference is formed
/// analytically from the Stirling series so that the two large logarithms
/// never have to be subtracted.
pub fn ln_gamma_ratio(a: Complex64, b: Complex64) -> Result<Complex64> {
    check_argument(a)?;
    check_argument(b)?;
    let p = a - b;
    if b.re > 10.0 && a.re > 10.0 && b.norm() > 20.0 && a.norm() > 20.0 && p.norm() < 0.5 * b.norm()
    {
        let l = ln_1p(p / b);
        return Ok(p * b.ln() + (b + p - 0.5) * l - p + stirling_tail(a) - stirling_tail(b));
    }
    Ok(log_gamma(a)? - log_gamma(b)?)
}

/// `Γ(a) / Γ(b)` evaluated through logarithms.
pub fn gamma_ratio(a: Complex64, b: Complex64) -> Result<Complex64> {
    let d = ln_gamma_ratio(a, b)?;
    if d.re > 700.0 {
        return Err(Error::Overflow("gamma_ratio"));
    }
    ensure_finite(d.exp(), "gamma_ratio")
}

/// `1 / Γ(z)`, zero at the poles.
pub fn recip_gamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let l = log_gamma(z)?;
    if -l.re > 700.0 {
        return Err(Error::Overflow("recip_gamma"));
    }
    Ok((-l).exp())
}

/// `|Γ(iy)|² = π / (y sinh πy)`, used as a cheap reference.
#[cfg(test)]
pub(crate) fn abs_gamma_imag_sq(y: f64) -> f64 {
    use std::f64::consts::PI;
    PI / (y * (PI * y).sinh())
}
