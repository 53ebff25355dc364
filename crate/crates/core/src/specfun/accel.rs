//! Abel damping with Richardson extrapolation.
//!
//! A series `Σ c_n` whose terms do not decay (but oscillate) is replaced by
//! the damped sums `A(t) = Σ c_n t^n` on a grid of `t < 1`. For the power
//! series treated here `A(t)` is analytic at `t = 1`, so polynomial
//! extrapolation in `h = 1 - t` recovers the limit; the difference between
//! the last two diagonal entries of the Neville table is the residual.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

/// Damped tails are dropped once `t^n` falls below this.
const DAMPING_CUTOFF: f64 = 1e-18;

#[derive(Debug, Clone, PartialEq)]
pub struct AccelConfig {
    /// Upper bound on the number of series terms per direction.
    pub max_terms: usize,
    /// Damping parameters `t`, each in `(0, 1)`.
    pub damping_grid: Vec<f64>,
    /// Relative error target for the extrapolated value.
    pub tolerance: f64,
    /// Smallest admissible scattering angle (radians).
    pub theta_min: f64,
}

impl Default for AccelConfig {
    fn default() -> Self {
        AccelConfig {
            max_terms: 1 << 20,
            damping_grid: (6..=12).map(|k| 1.0 - 0.5f64.powi(k)).collect(),
            tolerance: super::HYPERGEOMETRIC_TOLERANCE,
            theta_min: PI / 36.0,
        }
    }
}

impl AccelConfig {
    pub fn new(max_terms: usize, damping_grid: Vec<f64>, tolerance: f64) -> Result<Self> {
        let cfg = AccelConfig {
            max_terms,
            damping_grid,
            tolerance,
            ..AccelConfig::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_theta_min(mut self, theta_min: f64) -> Result<Self> {
        self.theta_min = theta_min;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_terms < 16 {
            return Err(Error::invalid("max_terms must be at least 16"));
        }
        if self.damping_grid.len() < 2 {
            return Err(Error::invalid("damping grid needs at least two points"));
        }
        if self.damping_grid.iter().any(|&t| !(t > 0.0 && t < 1.0)) {
            return Err(Error::invalid("damping parameters must lie in (0, 1)"));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::invalid("tolerance must be positive"));
        }
        if !(self.theta_min > 0.0 && self.theta_min < PI) {
            return Err(Error::invalid("theta_min must lie in (0, pi)"));
        }
        Ok(())
    }

    /// Terms needed so that every damped tail is negligible, capped at `max_terms`.
    pub fn terms_needed(&self) -> usize {
        let t_max = self.damping_grid.iter().cloned().fold(0.0, f64::max);
        let n = (DAMPING_CUTOFF.ln() / t_max.ln()).ceil() as usize;
        n.clamp(16, self.max_terms)
    }
}

/// Extrapolated value of an Abel-regularised sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbelEstimate {
    pub value: Complex64,
    /// Spread between the two highest-order extrapolants plus any truncation bound.
    pub residual: f64,
    pub terms: usize,
}

impl AbelEstimate {
    /// Fails when the residual exceeds `tolerance` relative to `max(|value|, scale)`.
    pub fn check(self, tolerance: f64, scale: f64) -> Result<Self> {
        let bound = tolerance * self.value.norm().max(scale);
        if self.residual > bound {
            return Err(Error::AccelerationFailure {
                residual: self.residual,
                tolerance: bound,
            });
        }
        Ok(self)
    }
}

/// Running damped sums `Σ c_n t_k^n` for every `t_k` of a grid.
#[derive(Debug, Clone)]
pub struct DampedSums {
    ts: Vec<f64>,
    powers: Vec<f64>,
    sums: Vec<Complex64>,
    terms: usize,
    last_term: f64,
}

impl DampedSums {
    pub fn new(grid: &[f64]) -> Self {
        DampedSums {
            ts: grid.to_vec(),
            powers: vec![1.0; grid.len()],
            sums: vec![Complex64::new(0.0, 0.0); grid.len()],
            terms: 0,
            last_term: 0.0,
        }
    }

    /// Adds the undamped term of order `n = self.terms()`.
    #[inline]
    pub fn push(&mut self, term: Complex64) {
        for ((s, p), &t) in self.sums.iter_mut().zip(self.powers.iter_mut()).zip(&self.ts) {
            *s += term * *p;
            *p *= t;
        }
        self.terms += 1;
        self.last_term = term.norm();
    }

    pub fn terms(&self) -> usize {
        self.terms
    }

    /// Extrapolates the damped sums to `t = 1`.
    pub fn extrapolate(&self) -> AbelEstimate {
        let hs: Vec<f64> = self.ts.iter().map(|t| 1.0 - t).collect();
        let (value, spread) = neville_to_zero(&hs, &self.sums);
        // bound on the discarded damped tail for the weakest damping
        let tail = self
            .ts
            .iter()
            .zip(&self.powers)
            .map(|(t, p)| p * self.last_term / (1.0 - t))
            .fold(0.0, f64::max);
        AbelEstimate {
            value,
            residual: spread + tail,
            terms: self.terms,
        }
    }
}

/// Polynomial extrapolation of `values(h)` to `h = 0` by Neville's scheme.
///
/// Returns the extrapolated value and `|P_n(0) - P_{n-1}(0)|` as an error
/// estimate.
pub fn neville_to_zero(hs: &[f64], values: &[Complex64]) -> (Complex64, f64) {
    assert_eq!(hs.len(), values.len());
    assert!(!hs.is_empty());
    let n = hs.len();
    let mut table = values.to_vec();
    let mut prev_diag = table[n - 1];
    for level in 1..n {
        prev_diag = table[n - 1];
        for i in (level..n).rev() {
            let (h_far, h_near) = (hs[i - level], hs[i]);
            table[i] = (h_far * table[i] - h_near * table[i - 1]) / (h_far - h_near);
        }
    }
    let value = table[n - 1];
    (value, (value - prev_diag).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::c;

    #[test]
    fn config_validation() {
        assert!(AccelConfig::default().validate().is_ok());
        assert!(AccelConfig::new(8, vec![0.5, 0.9], 1e-8).is_err());
        assert!(AccelConfig::new(100, vec![0.5, 1.0], 1e-8).is_err());
        assert!(AccelConfig::new(100, vec![0.5, 0.9], 0.0).is_err());
        assert!(AccelConfig::new(100, vec![0.5], 1e-8).is_err());
        assert!(AccelConfig::default().with_theta_min(0.0).is_err());
    }

    #[test]
    fn neville_recovers_polynomials() {
        let hs = [0.1, 0.05, 0.025, 0.0125];
        let vals: Vec<_> = hs
            .iter()
            .map(|&h| c(2.0 - 3.0 * h + 0.5 * h * h * h, h))
            .collect();
        let (v, _) = neville_to_zero(&hs, &vals);
        assert!((v - c(2.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn abel_sum_of_grandi_series() {
        // 1 - 1 + 1 - ... = 1/2 in the Abel sense
        let cfg = AccelConfig::default();
        let mut acc = DampedSums::new(&cfg.damping_grid);
        for n in 0..cfg.terms_needed() {
            acc.push(c(if n % 2 == 0 { 1.0 } else { -1.0 }, 0.0));
        }
        let est = acc.extrapolate();
        assert!((est.value - c(0.5, 0.0)).norm() < 1e-12, "{est:?}");
        assert!(est.residual < 1e-10);
    }

    #[test]
    fn truncated_sums_report_tail() {
        let cfg = AccelConfig::new(64, vec![0.99, 0.995], 1e-8).unwrap();
        let mut acc = DampedSums::new(&cfg.damping_grid);
        for _ in 0..cfg.terms_needed() {
            acc.push(c(1.0, 0.0));
        }
        assert!(acc.extrapolate().residual > 1.0);
    }
}
