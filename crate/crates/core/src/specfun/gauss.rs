//! Gauss hypergeometric function with unit first parameter, `F(1, a; b; z)`,
//! on and inside the unit circle.

use num_complex::Complex64;

use super::accel::{AbelEstimate, AccelConfig, DampedSums};
use super::{c, is_nonpositive_integer};
use crate::{Error, Result};

/// Relative accuracy required of Abel-summed hypergeometric values.
pub const HYPERGEOMETRIC_TOLERANCE: f64 = 1e-8;

/// The Pfaff-transformed series is used when `|z/(z-1)|` is below this.
pub const PFAFF_RADIUS: f64 = 0.9;

const EPS: f64 = 1e-17;
const MAX_PFAFF_TERMS: usize = 4000;

/// `F(1, a; b; z)` for `|z| <= 1`, `z != 1`.
///
/// Picks the Pfaff-transformed series when it converges geometrically and
/// falls back to Abel summation of the defining series otherwise. Points
/// on the unit circle closer than `cfg.theta_min` to `z = 1` are rejected.
pub fn gauss_f1ab(a: Complex64, b: Complex64, z: Complex64, cfg: &AccelConfig) -> Result<AbelEstimate> {
    check_args(b, z)?;
    let w = z / (z - 1.0);
    if w.norm() < PFAFF_RADIUS {
        return f1ab_pfaff(a, b, z);
    }
    let est = f1ab_abel(a, b, z, cfg)?;
    est.check(cfg.tolerance, 0.0)
}

fn check_args(b: Complex64, z: Complex64) -> Result<()> {
    if is_nonpositive_integer(b) {
        return Err(Error::Pole { re: b.re, im: b.im });
    }
    if !(z.re.is_finite() && z.im.is_finite()) || z.norm() > 1.0 + 1e-12 {
        return Err(Error::invalid(format!("hypergeometric argument {z} outside the unit disc")));
    }
    if (z - 1.0).norm() == 0.0 {
        return Err(Error::ForwardDirection { theta: 0.0, theta_min: 0.0 });
    }
    Ok(())
}

/// `(1-z)^{-1} Σ (b-a)_n/(b)_n w^n` with `w = z/(z-1)`.
pub fn f1ab_pfaff(a: Complex64, b: Complex64, z: Complex64) -> Result<AbelEstimate> {
    check_args(b, z)?;
    let w = z / (z - 1.0);
    if w.norm() >= 1.0 {
        return Err(Error::invalid("Pfaff series diverges for this argument"));
    }
    let ba = b - a;
    let mut term = c(1.0, 0.0);
    let mut sum = term;
    for n in 0..MAX_PFAFF_TERMS {
        let nf = n as f64;
        term *= (ba + nf) / (b + nf) * w;
        sum += term;
        if term.norm() <= EPS * sum.norm() {
            return Ok(AbelEstimate {
                value: sum / (1.0 - z),
                residual: term.norm() / (1.0 - z).norm(),
                terms: n + 2,
            });
        }
    }
    Err(Error::NonConvergence {
        terms: MAX_PFAFF_TERMS,
        residual: term.norm() / sum.norm(),
    })
}

/// Abel-damped defining series, extrapolated to the unit circle.
///
/// The returned estimate is not checked against a tolerance; callers decide.
pub fn f1ab_abel(a: Complex64, b: Complex64, z: Complex64, cfg: &AccelConfig) -> Result<AbelEstimate> {
    cfg.validate()?;
    check_args(b, z)?;
    if z.norm() > 1.0 - 1e-9 && z.arg().abs() < cfg.theta_min {
        return Err(Error::ForwardDirection {
            theta: z.arg().abs(),
            theta_min: cfg.theta_min,
        });
    }
    let t_max = cfg.damping_grid.iter().cloned().fold(0.0, f64::max);
    let min_terms = cfg.terms_needed();
    let mut acc = DampedSums::new(&cfg.damping_grid);
    let mut term = c(1.0, 0.0);
    let mut damp = 1.0;
    let mut scale = 1.0f64;
    loop {
        acc.push(term);
        let n = acc.terms() as f64 - 1.0;
        damp *= t_max;
        scale = scale.max(term.norm());
        if acc.terms() >= min_terms && term.norm() * damp < EPS * scale {
            break;
        }
        if acc.terms() >= cfg.max_terms {
            let est = acc.extrapolate();
            return Err(Error::NonConvergence {
                terms: est.terms,
                residual: est.residual,
            });
        }
        term *= (a + n) / (b + n) * z;
    }
    Ok(acc.extrapolate())
}
