//! Scattering amplitude `f(θ)` and differential cross section `σ = |f|²`.
//!
//! The partial-wave series `-(i/√(2πk)) Σ_m S_m e^{imθ}` does not converge
//! in the ordinary sense; it is Abel-summed with `t^{|m|}` damping and
//! extrapolated to `t = 1`. The forward delta term is never reconstructed.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::physics::{edge_channel, Channel, FluxSplit, Kinematics};
use crate::smatrix::{s_approx, s_channel, ChannelResult, SMethod};
use crate::specfun::{c, gauss_f1ab, ln_gamma_ratio, log_gamma, recip_gamma, AbelEstimate, AccelConfig, DampedSums, I};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct AngularGrid {
    theta_values: Vec<f64>,
    theta_min: f64,
}

impl AngularGrid {
    /// Angles in radians, each within `[theta_min, 2π - theta_min]`.
    pub fn new(theta_values: Vec<f64>, theta_min: f64) -> Result<Self> {
        if !(theta_min > 0.0 && theta_min < PI) {
            return Err(Error::invalid("theta_min must lie in (0, pi)"));
        }
        for &t in &theta_values {
            if !t.is_finite() {
                return Err(Error::invalid("non-finite angle"));
            }
            if t < theta_min || t > 2.0 * PI - theta_min {
                return Err(Error::ForwardDirection { theta: t, theta_min });
            }
        }
        Ok(AngularGrid { theta_values, theta_min })
    }

    /// `count` evenly spaced angles from `min_deg` to `max_deg` inclusive.
    pub fn from_degrees(min_deg: f64, max_deg: f64, count: usize, theta_min: f64) -> Result<Self> {
        if count == 0 {
            return Err(Error::invalid("angular grid needs at least one point"));
        }
        if !(min_deg <= max_deg) {
            return Err(Error::invalid("angular grid minimum exceeds maximum"));
        }
        let vals = (0..count)
            .map(|i| {
                let d = if count == 1 {
                    min_deg
                } else {
                    min_deg + (max_deg - min_deg) * i as f64 / (count - 1) as f64
                };
                d.to_radians()
            })
            .collect();
        AngularGrid::new(vals, theta_min)
    }

    pub fn values(&self) -> &[f64] {
        &self.theta_values
    }

    pub fn theta_min(&self) -> f64 {
        self.theta_min
    }

    pub fn len(&self) -> usize {
        self.theta_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta_values.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AmplitudeMethod {
    /// Abel-summed series with exact `S_j` (mean S for a supercritical channel).
    SeriesExact,
    /// Abel-summed series with the small-coupling `S_j`.
    SeriesApprox,
    ClosedNu0,
    ClosedNuHalf,
    ClosedGeneric,
}

impl AmplitudeMethod {
    pub fn name(&self) -> &'static str {
        match self {
            AmplitudeMethod::SeriesExact => "SeriesExact",
            AmplitudeMethod::SeriesApprox => "SeriesApprox",
            AmplitudeMethod::ClosedNu0 => "ClosedNu0",
            AmplitudeMethod::ClosedNuHalf => "ClosedNuHalf",
            AmplitudeMethod::ClosedGeneric => "ClosedGeneric",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesDiagnostics {
    /// Partial waves summed per sign of `m`.
    pub terms: usize,
    /// Largest extrapolation residual over the grid, in amplitude units.
    pub max_residual: f64,
    /// The supercritical channel, if one entered the sum.
    pub supercritical: Option<ChannelResult>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeProfile {
    pub grid: AngularGrid,
    pub f_values: Vec<Complex64>,
    pub sigma_values: Vec<f64>,
    pub method: AmplitudeMethod,
    pub series_diagnostics: Option<SeriesDiagnostics>,
}

impl AmplitudeProfile {
    fn from_values(grid: &AngularGrid, f_values: Vec<Complex64>, method: AmplitudeMethod) -> Self {
        let sigma_values = f_values.iter().map(|f| f.norm_sqr()).collect();
        AmplitudeProfile {
            grid: grid.clone(),
            f_values,
            sigma_values,
            method,
            series_diagnostics: None,
        }
    }
}

/// `S_m` for `m = 0..n` and `m = -1..=-n`.
struct Coefficients {
    pos: Vec<Complex64>,
    neg: Vec<Complex64>,
    supercritical: Option<ChannelResult>,
}

fn exact_coefficients(kin: &Kinematics, split: FluxSplit, gamma: f64, n: usize) -> Result<Coefficients> {
    let mut supercritical = None;
    let mut get = |m: i64| -> Result<Complex64> {
        let r = s_channel(Channel::new(m), kin, split, gamma)?;
        if r.method == SMethod::SupercriticalMean {
            supercritical = Some(r);
        }
        Ok(r.s_value)
    };
    let pos = (0..n as i64).map(&mut get).collect::<Result<Vec<_>>>()?;
    let neg = (1..=n as i64).map(|m| get(-m)).collect::<Result<Vec<_>>>()?;
    Ok(Coefficients { pos, neg, supercritical })
}

fn approx_coefficients(kin: &Kinematics, split: FluxSplit, n: usize) -> Result<Coefficients> {
    let get = |m: i64| s_approx(Channel::new(m), kin, split).map(|r| r.s_value);
    let pos = (0..n as i64).map(get).collect::<Result<Vec<_>>>()?;
    let neg = (1..=n as i64).map(|m| get(-m)).collect::<Result<Vec<_>>>()?;
    Ok(Coefficients { pos, neg, supercritical: None })
}

/// Abel sum of `Σ_m S_m e^{imθ}` at one angle.
fn abel_partial_waves(coef: &Coefficients, theta: f64, cfg: &AccelConfig) -> AbelEstimate {
    let mut acc = DampedSums::new(&cfg.damping_grid);
    let step = Complex64::from_polar(1.0, theta);
    let mut e = c(1.0, 0.0);
    acc.push(coef.pos[0]);
    for n in 1..coef.pos.len() {
        if n % 1024 == 0 {
            e = Complex64::from_polar(1.0, n as f64 * theta);
        } else {
            e *= step;
        }
        acc.push(coef.pos[n] * e + coef.neg[n - 1] * e.conj());
    }
    acc.extrapolate()
}

fn series_profile(
    coef: Coefficients,
    kin: &Kinematics,
    grid: &AngularGrid,
    cfg: &AccelConfig,
    method: AmplitudeMethod,
) -> Result<AmplitudeProfile> {
    let pref = -I / (2.0 * PI * kin.k).sqrt();
    let mut f_values = Vec::with_capacity(grid.len());
    let mut max_residual: f64 = 0.0;
    for &theta in grid.values() {
        if theta < cfg.theta_min || theta > 2.0 * PI - cfg.theta_min {
            return Err(Error::ForwardDirection { theta, theta_min: cfg.theta_min });
        }
        let est = abel_partial_waves(&coef, theta, cfg);
        if est.residual > cfg.tolerance * est.value.norm().max(1.0) {
            return Err(Error::NonConvergence {
                terms: est.terms,
                residual: est.residual * pref.norm(),
            });
        }
        max_residual = max_residual.max(est.residual * pref.norm());
        f_values.push(pref * est.value);
    }
    let mut p = AmplitudeProfile::from_values(grid, f_values, method);
    p.series_diagnostics = Some(SeriesDiagnostics {
        terms: coef.pos.len(),
        max_residual,
        supercritical: coef.supercritical,
    });
    Ok(p)
}

/// Exact partial-wave series; a supercritical edge channel enters through
/// the mean of its two continued solutions.
pub fn amplitude_series(
    kin: &Kinematics,
    split: FluxSplit,
    gamma: f64,
    grid: &AngularGrid,
    accel: &AccelConfig,
) -> Result<AmplitudeProfile> {
    accel.validate()?;
    let coef = exact_coefficients(kin, split, gamma, accel.terms_needed())?;
    series_profile(coef, kin, grid, accel, AmplitudeMethod::SeriesExact)
}

/// Series with the small-coupling `S_j`; sums to `f₀ + f₁`.
pub fn amplitude_series_approx(
    kin: &Kinematics,
    split: FluxSplit,
    grid: &AngularGrid,
    accel: &AccelConfig,
) -> Result<AmplitudeProfile> {
    accel.validate()?;
    let coef = approx_coefficients(kin, split, accel.terms_needed())?;
    series_profile(coef, kin, grid, accel, AmplitudeMethod::SeriesApprox)
}

fn check_theta(theta: f64) -> Result<()> {
    if !(theta > 0.0 && theta < 2.0 * PI) {
        return Err(Error::ForwardDirection { theta, theta_min: 0.0 });
    }
    Ok(())
}

fn check_nu(nu: f64) -> Result<()> {
    if !(nu > -0.5 && nu <= 0.5) {
        return Err(Error::invalid(format!("nu = {nu} outside (-1/2, 1/2]")));
    }
    Ok(())
}

/// `Γ(a)/Γ(b)` through logs.
fn gr(a: Complex64, b: Complex64) -> Result<Complex64> {
    Ok(ln_gamma_ratio(a, b)?.exp())
}

/// `Γ(1/2-ν+iβ) Γ(1/2+ν-iβ) / (Γ(iβ) Γ(1/2+iβ))`, for `β != 0`.
fn pole_prefactor(nu: f64, beta: f64) -> Result<Complex64> {
    let l = log_gamma(c(0.5 - nu, beta))? + log_gamma(c(0.5 + nu, -beta))?
        - log_gamma(c(0.0, beta))?
        - log_gamma(c(0.5, beta))?;
    Ok(l.exp())
}

/// `exp(iβ ln sin²(θ/2))`.
fn coulomb_log_phase(theta: f64, beta: f64) -> Complex64 {
    let s = (0.5 * theta).sin();
    Complex64::from_polar(1.0, beta * (s * s).ln())
}

/// Nonrelativistic part `f₀` of the small-coupling amplitude, in the form
/// with a single hypergeometric term on `e^{-iθ}`.
pub fn amplitude_closed_f0(theta: f64, nu: f64, beta: f64, k: f64, accel: &AccelConfig) -> Result<Complex64> {
    check_theta(theta)?;
    check_nu(nu)?;
    let z = Complex64::from_polar(1.0, -theta);
    let norm = (2.0 * PI * k).sqrt();
    if beta == 0.0 {
        return Ok(-I / norm * 2.0 * I * (nu * PI).sin() * z / (1.0 - z));
    }
    let s2 = (0.5 * theta).sin();
    let pole = -I * Complex64::from_polar(1.0, -nu * theta) * pole_prefactor(nu, beta)?
        * coulomb_log_phase(theta, beta)
        / ((2.0 * k).sqrt() * s2);
    let br = Complex64::from_polar(1.0, nu * PI) * gr(c(1.5 - nu, -beta), c(1.5 - nu, beta))?
        - Complex64::from_polar(1.0, -nu * PI) * gr(c(nu - 0.5, -beta), c(nu - 0.5, beta))?;
    let hyp = gauss_f1ab(c(1.5 - nu, -beta), c(1.5 - nu, beta), z, accel)?.value;
    Ok(pole - I / norm * br * z * hyp)
}

/// Relativistic correction `f₁`, single-hypergeometric form.
///
/// At `β = 0` the correction vanishes for `ν ≠ 1/2`; at `ν = 1/2` its
/// limit depends on `1 - β'/β` and cannot be formed from `(β, β')`.
pub fn amplitude_closed_f1(
    theta: f64,
    nu: f64,
    beta: f64,
    beta_prime: f64,
    k: f64,
    accel: &AccelConfig,
) -> Result<Complex64> {
    check_theta(theta)?;
    check_nu(nu)?;
    if beta == 0.0 {
        if nu == 0.5 {
            return Err(Error::invalid("relativistic correction at beta = 0, nu = 1/2 is a limit; use the half-flux closed form"));
        }
        return Ok(c(0.0, 0.0));
    }
    let z = Complex64::from_polar(1.0, -theta);
    let rel = 1.0 - beta_prime / beta;
    let pole = -rel * pole_prefactor(nu, beta)?
        * Complex64::from_polar(1.0, -0.5 * theta - nu * theta)
        * coulomb_log_phase(theta, beta)
        / (2.0 * k).sqrt();
    let br = Complex64::from_polar(1.0, nu * PI) * gr(c(0.5 - nu, -beta), c(1.5 - nu, beta))?
        + Complex64::from_polar(1.0, -nu * PI) * gr(c(nu - 0.5, -beta), c(0.5 + nu, beta))?;
    let hyp = gauss_f1ab(c(0.5 - nu, -beta), c(1.5 - nu, beta), z, accel)?.value;
    Ok(pole + (beta - beta_prime) / (2.0 * PI * k).sqrt() * br * z * hyp)
}

/// `f₀` as the sum of two unit-circle hypergeometric series on `e^{±iθ}`.
pub fn amplitude_f0_two_series(theta: f64, nu: f64, beta: f64, k: f64, accel: &AccelConfig) -> Result<Complex64> {
    check_theta(theta)?;
    check_nu(nu)?;
    let z = Complex64::from_polar(1.0, theta);
    let t1 = Complex64::from_polar(1.0, -nu * PI)
        * gr(c(0.5 + nu, -beta), c(0.5 + nu, beta))?
        * gauss_f1ab(c(0.5 + nu, -beta), c(0.5 + nu, beta), z, accel)?.value;
    let t2 = Complex64::from_polar(1.0, nu * PI)
        * gr(c(1.5 - nu, -beta), c(1.5 - nu, beta))?
        * z.conj()
        * gauss_f1ab(c(1.5 - nu, -beta), c(1.5 - nu, beta), z.conj(), accel)?.value;
    Ok(-I / (2.0 * PI * k).sqrt() * (t1 + t2))
}

/// `f₁` as the difference of two unit-circle hypergeometric series.
pub fn amplitude_f1_two_series(
    theta: f64,
    nu: f64,
    beta: f64,
    beta_prime: f64,
    k: f64,
    accel: &AccelConfig,
) -> Result<Complex64> {
    check_theta(theta)?;
    check_nu(nu)?;
    if beta == 0.0 {
        return amplitude_closed_f1(theta, nu, beta, beta_prime, k, accel);
    }
    let z = Complex64::from_polar(1.0, theta);
    let t1 = Complex64::from_polar(1.0, -nu * PI)
        * gr(c(0.5 + nu, -beta), c(1.5 + nu, beta))?
        * gauss_f1ab(c(0.5 + nu, -beta), c(1.5 + nu, beta), z, accel)?.value;
    let t2 = Complex64::from_polar(1.0, nu * PI)
        * gr(c(0.5 - nu, -beta), c(1.5 - nu, beta))?
        * z.conj()
        * gauss_f1ab(c(0.5 - nu, -beta), c(1.5 - nu, beta), z.conj(), accel)?.value;
    Ok(-(beta - beta_prime) / (2.0 * PI * k).sqrt() * (t1 - t2))
}

/// Common closed-form shape at `ν = 0` and `ν = 1/2`:
/// `pref · e^{iβ ln sin²(θ/2)} / (√(2k) sin(θ/2)) · [1 - i e^{-iθ/2} sin(θ/2) (1 - β'/β)]`.
fn closed_shape(kin: &Kinematics, theta: f64, pref: Complex64) -> Complex64 {
    let s2 = (0.5 * theta).sin();
    let rel = kin.relativistic_factor();
    let bracket = 1.0 - I * Complex64::from_polar(1.0, -0.5 * theta) * s2 * rel;
    pref * coulomb_log_phase(theta, kin.beta) / ((2.0 * kin.k).sqrt() * s2) * bracket
}

/// Closed amplitude at integer flux; identical to pure Coulomb scattering.
pub fn amplitude_closed_nu0(kin: &Kinematics, grid: &AngularGrid) -> Result<AmplitudeProfile> {
    let b = kin.beta;
    let pref = -I * log_gamma(c(0.5, -b))?.exp() * recip_gamma(c(0.0, b))?;
    let f = grid.values().iter().map(|&t| closed_shape(kin, t, pref)).collect();
    Ok(AmplitudeProfile::from_values(grid, f, AmplitudeMethod::ClosedNu0))
}

/// Closed amplitude at half-integer flux.
pub fn amplitude_closed_nu_half(kin: &Kinematics, grid: &AngularGrid) -> Result<AmplitudeProfile> {
    let b = kin.beta;
    // βΓ(-iβ) = iΓ(1-iβ)
    let pref = -I * gr(c(1.0, -b), c(0.5, b))?;
    let f = grid
        .values()
        .iter()
        .map(|&t| Complex64::from_polar(1.0, -0.5 * t) * closed_shape(kin, t, pref))
        .collect();
    Ok(AmplitudeProfile::from_values(grid, f, AmplitudeMethod::ClosedNuHalf))
}

/// `f₀ + f₁` at arbitrary `ν`.
pub fn amplitude_closed_generic(
    kin: &Kinematics,
    nu: f64,
    grid: &AngularGrid,
    accel: &AccelConfig,
) -> Result<AmplitudeProfile> {
    if kin.beta == 0.0 && nu == 0.5 {
        let mut p = amplitude_closed_nu_half(kin, grid)?;
        p.method = AmplitudeMethod::ClosedGeneric;
        return Ok(p);
    }
    let f = grid
        .values()
        .iter()
        .map(|&t| {
            Ok(amplitude_closed_f0(t, nu, kin.beta, kin.k, accel)?
                + amplitude_closed_f1(t, nu, kin.beta, kin.beta_prime, kin.k, accel)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AmplitudeProfile::from_values(grid, f, AmplitudeMethod::ClosedGeneric))
}

/// `β tanh(βπ) / (2k sin²(θ/2)) · (1 - v² sin²(θ/2))`.
pub fn cross_section_nu0(kin: &Kinematics, theta: f64) -> f64 {
    let s2 = (0.5 * theta).sin().powi(2);
    let b = kin.beta;
    b * (b * PI).tanh() / (2.0 * kin.k * s2) * (1.0 - kin.v_over_c.powi(2) * s2)
}

/// `β coth(βπ) / (2k sin²(θ/2)) · (1 - v² sin²(θ/2))`.
pub fn cross_section_nu_half(kin: &Kinematics, theta: f64) -> f64 {
    let s2 = (0.5 * theta).sin().powi(2);
    let b = kin.beta;
    let bc = if b == 0.0 { 1.0 / PI } else { b / (b * PI).tanh() };
    bc / (2.0 * kin.k * s2) * (1.0 - kin.v_over_c.powi(2) * s2)
}

/// Mean-S correction term for the half-flux series:
/// `-(i/√(2πk)) (S - S^a_{-1/2}) e^{-iθ}`.
pub fn supercritical_correction(kin: &Kinematics, split: FluxSplit, gamma: f64, theta: f64) -> Result<Complex64> {
    let ch = edge_channel(split);
    let mean = s_channel(ch, kin, split, gamma)?.s_value;
    let approx = s_approx(ch, kin, split)?.s_value;
    let e = Complex64::from_polar(1.0, ch.m as f64 * theta);
    Ok(-I / (2.0 * PI * kin.k).sqrt() * (mean - approx) * e)
}
