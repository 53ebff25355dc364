//! Confluent hypergeometric function `Φ(a, b; z) = 1F1(a; b; z)`.
//!
//! Small `|z|` uses the power series, large `|z|` the two-term asymptotic
//! expansion. In between, and wherever the asymptotic series is not yet
//! accurate, the value is carried outward along the ray through `z` by
//! Taylor stepping of Kummer's equation, starting from the series.

use num_complex::Complex64;

use super::gamma::log_gamma;
use super::{c, ensure_finite, is_nonpositive_integer};
use crate::{Error, Result};

/// Power series is used up to this modulus.
pub const SERIES_RADIUS: f64 = 8.0;
/// Asymptotic expansion is tried from this modulus on.
pub const ASYMPTOTIC_RADIUS: f64 = 30.0;

const EPS: f64 = 1e-17;
const MAX_SERIES_TERMS: usize = 5000;
const MAX_TAYLOR_TERMS: usize = 400;
const ASYMPTOTIC_TOL: f64 = 1e-15;

pub fn kummer_phi(a: Complex64, b: Complex64, z: Complex64) -> Result<Complex64> {
    check(b, z)?;
    let r = z.norm();
    if r <= SERIES_RADIUS || is_nonpositive_integer(a) {
        return kummer_phi_series(a, b, z);
    }
    if r >= ASYMPTOTIC_RADIUS {
        if let Ok(v) = kummer_phi_asymptotic(a, b, z) {
            return Ok(v);
        }
    }
    continuation(a, b, z)
}

fn check(b: Complex64, z: Complex64) -> Result<()> {
    if is_nonpositive_integer(b) {
        return Err(Error::Pole { re: b.re, im: b.im });
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::invalid("non-finite Kummer argument"));
    }
    Ok(())
}

/// Direct power series; accurate while `|z|` is moderate.
pub fn kummer_phi_series(a: Complex64, b: Complex64, z: Complex64) -> Result<Complex64> {
    check(b, z)?;
    let mut term = c(1.0, 0.0);
    let mut sum = term;
    for n in 0..MAX_SERIES_TERMS {
        let nf = n as f64;
        term *= (a + nf) / ((b + nf) * (nf + 1.0)) * z;
        sum += term;
        if term.norm() <= EPS * sum.norm() || term.norm() == 0.0 {
            return ensure_finite(sum, "Kummer series");
        }
    }
    Err(Error::NonConvergence {
        terms: MAX_SERIES_TERMS,
        residual: term.norm() / sum.norm(),
    })
}

/// Large-`|z|` expansion; fails with `NonConvergence` if either divergent
/// series has not reached the target accuracy at its smallest term.
pub fn kummer_phi_asymptotic(a: Complex64, b: Complex64, z: Complex64) -> Result<Complex64> {
    check(b, z)?;
    let lz = z.ln();
    let lgb = log_gamma(b)?;
    let one = c(1.0, 0.0);

    let s1 = asymptotic_series(b - a, one - a, z)?;
    let first = if is_nonpositive_integer(a) {
        c(0.0, 0.0)
    } else {
        (lgb - log_gamma(a)? + z + (a - b) * lz).exp() * s1
    };

    let s2 = asymptotic_series(a, a - b + 1.0, -z)?;
    let second = if is_nonpositive_integer(b - a) {
        c(0.0, 0.0)
    } else {
        let sign = if z.im > 0.0 { 1.0 } else { -1.0 };
        let phase = c(0.0, sign * std::f64::consts::PI) * a;
        (lgb - log_gamma(b - a)? + phase - a * lz).exp() * s2
    };
    ensure_finite(first + second, "Kummer asymptotic")
}

/// `Σ (p)_n (q)_n / n! x^{-n}`, truncated at its smallest term.
fn asymptotic_series(p: Complex64, q: Complex64, x: Complex64) -> Result<Complex64> {
    let mut term = c(1.0, 0.0);
    let mut sum = term;
    let mut prev = f64::INFINITY;
    for n in 0..200 {
        let nf = n as f64;
        let next = term * (p + nf) * (q + nf) / ((nf + 1.0) * x);
        if next.norm() >= prev {
            break;
        }
        term = next;
        sum += term;
        prev = term.norm();
        if prev <= ASYMPTOTIC_TOL * sum.norm() {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        terms: 200,
        residual: prev / sum.norm(),
    })
}

/// Taylor continuation of `(w, w')` along the ray from radius
/// `SERIES_RADIUS` to `z`.
fn continuation(a: Complex64, b: Complex64, z: Complex64) -> Result<Complex64> {
    let dir = z / z.norm();
    let mut zc = dir * SERIES_RADIUS;
    let mut w = kummer_phi_series(a, b, zc)?;
    let mut dw = a / b * kummer_phi_series(a + 1.0, b + 1.0, zc)?;
    let target = z.norm();
    let mut r = SERIES_RADIUS;
    while r < target {
        let h = (target - r).min(2.0).min(0.5 * r);
        let step = dir * h;
        (w, dw) = taylor_step(a, b, zc, w, dw, step)?;
        r += h;
        zc = if r >= target { z } else { dir * r };
    }
    ensure_finite(w, "Kummer continuation")
}

fn taylor_step(
    a: Complex64,
    b: Complex64,
    zc: Complex64,
    w: Complex64,
    dw: Complex64,
    h: Complex64,
) -> Result<(Complex64, Complex64)> {
    // z w'' + (b - z) w' - a w = 0 expanded about zc
    let (mut c0, mut c1) = (w, dw);
    let mut hn = c(1.0, 0.0);
    let mut val = c0 + c1 * h;
    let mut der = c1;
    let scale = w.norm() + dw.norm() * h.norm();
    for n in 0..MAX_TAYLOR_TERMS {
        let nf = n as f64;
        let c2 = ((a + nf) * c0 - (nf + 1.0) * (b + nf - zc) * c1) / (zc * (nf + 2.0) * (nf + 1.0));
        hn *= h;
        let tv = c2 * hn * h;
        let td = c2 * (nf + 2.0) * hn;
        val += tv;
        der += td;
        if tv.norm() <= EPS * scale.max(val.norm()) && td.norm() * h.norm() <= EPS * scale.max(der.norm() * h.norm()) {
            return Ok((val, der));
        }
        c0 = c1;
        c1 = c2;
    }
    Err(Error::NonConvergence {
        terms: MAX_TAYLOR_TERMS,
        residual: f64::NAN,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel(x: Complex64, y: Complex64) -> f64 {
        (x - y).norm() / y.norm()
    }

    #[test]
    fn oracle_values() {
        let cases = [
            (c(0.5, -0.4), c(2.0, 0.0), c(0.0, -6.0), c(0.27127643540049903, 0.016492536490966845)),
            (c(0.3, -0.1), c(1.6, 0.0), c(0.0, -24.0), c(0.32335821270620357, -0.041217662110351114)),
            (c(1.2, -0.3), c(3.4, 0.0), c(0.0, -80.0), c(0.0066889054915844383, -0.0059968612476846508)),
            (c(2.1, -0.5), c(5.2, 0.0), c(12.0, 5.0), c(-1766.1026877938113, 340.66145316323396)),
        ];
        for (a, b, z, want) in cases {
            let got = kummer_phi(a, b, z).unwrap();
            assert!(rel(got, want) < 1e-11, "{a} {b} {z}: {got} vs {want}");
        }
    }

    #[test]
    fn kummer_transformation() {
        // Φ(a, b, z) = e^z Φ(b - a, b, -z)
        let (a, b) = (c(0.7, -0.6), c(2.4, 0.0));
        for z in [c(0.0, 5.0), c(0.0, -17.0), c(3.0, -40.0), c(0.0, 55.0)] {
            let lhs = kummer_phi(a, b, z).unwrap();
            let rhs = z.exp() * kummer_phi(b - a, b, -z).unwrap();
            assert!(rel(lhs, rhs) < 1e-11, "{z}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn continuation_matches_asymptotic() {
        let (a, b) = (c(0.9, -0.2), c(2.8, 0.0));
        for z in [c(0.0, -45.0), c(0.0, -60.0), c(0.0, 50.0)] {
            let asym = kummer_phi_asymptotic(a, b, z).unwrap();
            let cont = continuation(a, b, z).unwrap();
            assert!(rel(cont, asym) < 1e-11, "{z}: {cont} vs {asym}");
        }
    }

    #[test]
    fn polynomial_and_pole_cases() {
        // Φ(-2, b, z) = 1 - 2z/b + z²/(b(b+1))
        let (b, z) = (c(1.5, 0.0), c(0.0, -40.0));
        let want = 1.0 - 2.0 * z / b + z * z / (b * (b + 1.0));
        assert!(rel(kummer_phi(c(-2.0, 0.0), b, z).unwrap(), want) < 1e-13);
        assert!(kummer_phi(c(0.5, 0.0), c(-1.0, 0.0), c(1.0, 0.0)).is_err());
        assert!((kummer_phi(c(0.3, 0.1), c(1.2, 0.0), c(0.0, 0.0)).unwrap() - 1.0).norm() == 0.0);
    }

    #[test]
    fn equal_parameters_give_exponential() {
        for z in [c(0.0, 0.7), c(0.0, -20.0), c(0.0, 45.0)] {
            assert!(rel(kummer_phi(c(1.0, 0.0), c(1.0, 0.0), z).unwrap(), z.exp()) < 1e-12, "{z}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn derivative_identity(ar in 0.1f64..1.5, ai in -0.6f64..0.6, b in 1.1f64..4.0, y in -70.0f64..70.0) {
            // dΦ(a, b, z)/dz = (a/b) Φ(a+1, b+1, z), central difference along the imaginary axis
            let (a, bb) = (c(ar, ai), c(b, 0.0));
            let z = c(0.0, y);
            let h = 1e-4;
            let step = c(0.0, h);
            let fd = (kummer_phi(a, bb, z + step).unwrap() - kummer_phi(a, bb, z - step).unwrap()) / (2.0 * step);
            let exact = a / bb * kummer_phi(a + 1.0, bb + 1.0, z).unwrap();
            prop_assert!((fd - exact).norm() < 1e-6 * exact.norm().max(1e-3), "{} vs {}", fd, exact);
        }
    }
}
