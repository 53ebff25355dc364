//! Partial-wave S-matrix: exact, small-coupling approximation, supercritical
//! mean, and the analytic radial solutions behind them.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::physics::{channel_exponent, edge_channel, Channel, ChannelExponent, FluxSplit, Kinematics};
use crate::specfun::{c, ensure_finite, kummer_phi, ln_gamma_ratio, log_gamma, I};
use crate::{Error, Result};

/// A channel is flagged near-critical once `|γ|` exceeds half of `|j+ν|`.
pub const NEAR_CRITICAL_RATIO: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SMethod {
    Exact,
    Approx,
    SupercriticalMean,
}

impl SMethod {
    pub fn name(&self) -> &'static str {
        match self {
            SMethod::Exact => "Exact",
            SMethod::Approx => "Approx",
            SMethod::SupercriticalMean => "SupercriticalMean",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelResult {
    pub channel: Channel,
    pub exponent: ChannelExponent,
    pub s_value: Complex64,
    /// `arg(S)/2` in `(-π/2, π/2]`; `None` for the supercritical mean.
    pub phase_shift: Option<f64>,
    pub method: SMethod,
    /// Subcritical, but `|γ|` is comparable to `|j+ν|`.
    pub near_critical: bool,
}

/// `η = arg(S)/2`, folded to `(-π/2, π/2]`.
pub fn phase_shift_of(s: Complex64) -> f64 {
    let eta = 0.5 * s.arg();
    if eta <= -0.5 * PI {
        eta + PI
    } else {
        eta
    }
}

/// `(κ + iβ') Γ(s-iβ)/Γ(s+1+iβ) e^{iπ(j-s)}` for complex `s`.
///
/// For real `s` the phase `j - s` is formed without cancellation; for
/// `s = ±iγ'` this is the analytic continuation used by the supercritical
/// prescription.
fn s_formula(ch: Channel, kin: &Kinematics, nu: f64, s: Complex64) -> Result<Complex64> {
    let kappa = ch.kappa(nu);
    let (b, bp) = (kin.beta, kin.beta_prime);
    let ratio = ln_gamma_ratio(s - I * b, s + 1.0 + I * b)?;
    let phase = if s.im == 0.0 {
        let k = kappa.abs();
        let g2 = kin.gamma * kin.gamma;
        let shift = if k + s.re > 0.0 { g2 / (k + s.re) } else { 0.0 };
        if kappa >= 0.0 {
            Complex64::from_polar(1.0, PI * (shift - nu))
        } else {
            -Complex64::from_polar(1.0, PI * (nu + shift))
        }
    } else {
        // e^{iπ(j - s)} with complex s
        let jm = ch.m.rem_euclid(2) as f64 + 0.5;
        (I * PI * (c(jm, 0.0) - s)).exp()
    };
    let val = (c(kappa, bp) * ratio.exp()) * phase;
    ensure_finite(val, "S-matrix")
}

fn near_critical(ch: Channel, split: FluxSplit, gamma: f64) -> bool {
    gamma.abs() > NEAR_CRITICAL_RATIO * ch.kappa(split.nu).abs()
}

pub fn s_exact(ch: Channel, kin: &Kinematics, split: FluxSplit, gamma: f64) -> Result<ChannelResult> {
    let exponent = channel_exponent(ch, split, gamma)?;
    let s = match exponent {
        ChannelExponent::Subcritical { s } => s,
        ChannelExponent::Supercritical { .. } => return Err(Error::SupercriticalChannel { j: ch.j() }),
    };
    let kin = with_gamma(kin, gamma);
    let val = s_formula(ch, &kin, split.nu, c(s, 0.0))?;
    Ok(ChannelResult {
        channel: ch,
        exponent,
        s_value: val,
        phase_shift: Some(phase_shift_of(val)),
        method: SMethod::Exact,
        near_critical: near_critical(ch, split, gamma),
    })
}

fn with_gamma(kin: &Kinematics, gamma: f64) -> Kinematics {
    if kin.gamma == gamma {
        *kin
    } else {
        let mut k = *kin;
        k.gamma = gamma;
        k.beta = gamma * kin.energy / kin.k;
        k.beta_prime = gamma * kin.rest_energy / kin.k;
        k
    }
}

/// Two-term small-coupling form of `S_j` (first order in `γ`).
///
/// The exponent `s` is replaced by `|j+ν|`. The result is not of unit
/// modulus; its phase shift is still reported.
pub fn s_approx(ch: Channel, kin: &Kinematics, split: FluxSplit) -> Result<ChannelResult> {
    let nu = split.nu;
    let kappa = ch.kappa(nu);
    let (b, bp) = (kin.beta, kin.beta_prime);
    let x = kappa.abs();
    let val = if ch.m >= 0 {
        let r0 = ln_gamma_ratio(c(x, -b), c(x, b))?.exp();
        let r1 = ln_gamma_ratio(c(x, -b), c(x + 1.0, b))?.exp();
        Complex64::from_polar(1.0, -nu * PI) * (r0 - I * (b - bp) * r1)
    } else {
        let r0 = ln_gamma_ratio(c(x + 1.0, -b), c(x + 1.0, b))?.exp();
        let second = if x == 0.0 {
            // (β - β') Γ(-iβ) = i (1 - β'/β) Γ(1 - iβ)
            -kin.relativistic_factor() * r0
        } else {
            I * (b - bp) * ln_gamma_ratio(c(x, -b), c(x + 1.0, b))?.exp()
        };
        Complex64::from_polar(1.0, nu * PI) * (r0 + second)
    };
    let exponent = match channel_exponent(ch, split, kin.gamma) {
        Ok(e) => e,
        Err(_) => ChannelExponent::Subcritical { s: 0.0 },
    };
    Ok(ChannelResult {
        channel: ch,
        exponent,
        s_value: val,
        phase_shift: Some(phase_shift_of(val)),
        method: SMethod::Approx,
        near_critical: near_critical(ch, split, kin.gamma),
    })
}

/// The two continued solutions `(S⁽¹⁾, S⁽²⁾)` at `s = ±iγ'` of a supercritical channel.
pub fn s_supercritical_pair(ch: Channel, kin: &Kinematics, split: FluxSplit, gamma: f64) -> Result<(Complex64, Complex64)> {
    let gp = match channel_exponent(ch, split, gamma)? {
        ChannelExponent::Supercritical { gamma_prime } => gamma_prime,
        ChannelExponent::Subcritical { .. } => return Err(Error::NotSupercritical { j: ch.j() }),
    };
    let kin = with_gamma(kin, gamma);
    let s1 = s_formula(ch, &kin, split.nu, c(0.0, gp))?;
    let s2 = s_formula(ch, &kin, split.nu, c(0.0, -gp))?;
    Ok((s1, s2))
}

/// Mean of the two supercritical solutions for the edge channel
/// (`j = -1/2` when `ν > 0`, `j = +1/2` when `ν < 0`).
pub fn s_supercritical(kin: &Kinematics, split: FluxSplit, gamma: f64) -> Result<ChannelResult> {
    let ch = edge_channel(split);
    let exponent = channel_exponent(ch, split, gamma)?;
    let (s1, s2) = s_supercritical_pair(ch, kin, split, gamma)?;
    Ok(ChannelResult {
        channel: ch,
        exponent,
        s_value: 0.5 * (s1 + s2),
        phase_shift: None,
        method: SMethod::SupercriticalMean,
        near_critical: true,
    })
}

/// Exact S for subcritical channels, the mean prescription otherwise.
pub fn s_channel(ch: Channel, kin: &Kinematics, split: FluxSplit, gamma: f64) -> Result<ChannelResult> {
    match channel_exponent(ch, split, gamma)? {
        ChannelExponent::Subcritical { .. } => s_exact(ch, kin, split, gamma),
        ChannelExponent::Supercritical { .. } => {
            if ch != edge_channel(split) {
                // only reachable for |γ| >= 1/2, which the config forbids
                return Err(Error::SupercriticalChannel { j: ch.j() });
            }
            s_supercritical(kin, split, gamma)
        }
    }
}

/// Radial functions `(f, g)` at `ρ = kr` of the regular analytic solution,
/// normalised so that the large-`ρ` form carries the incident wave with
/// unit weight.
pub fn radial_wavefunction_analytic(
    ch: Channel,
    kin: &Kinematics,
    split: FluxSplit,
    gamma: f64,
    rho: f64,
) -> Result<(Complex64, Complex64)> {
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::invalid("rho must be positive"));
    }
    let s = match channel_exponent(ch, split, gamma)? {
        ChannelExponent::Subcritical { s } => s,
        ChannelExponent::Supercritical { .. } => return Err(Error::SupercriticalChannel { j: ch.j() }),
    };
    let kin = with_gamma(kin, gamma);
    let (b, bp) = (kin.beta, kin.beta_prime);
    let kappa = ch.kappa(split.nu);
    let big_a = I * (2.0 / (PI * kin.k)).sqrt() / (kin.k1 + kin.k2).sqrt();
    let ln_a = big_a.ln()
        + s * std::f64::consts::LN_2
        + c(kappa, bp).ln()
        + log_gamma(c(s, -b))?
        - log_gamma(c(2.0 * s + 1.0, 0.0))?
        + c(0.5 * b * PI, PI * (0.25 - 0.5 * s));
    let a = ln_a.exp() * ch.parity();
    let z = c(0.0, -2.0 * rho);
    let rs = rho.powf(s);
    let u = a * rs * kummer_phi(c(s, -b), c(2.0 * s + 1.0, 0.0), z)?;
    let v = a * c(s, -b) / c(kappa, bp) * rs * kummer_phi(c(s + 1.0, -b), c(2.0 * s + 1.0, 0.0), z)?;
    let e = Complex64::from_polar(1.0, rho);
    let f = 0.5 * kin.k1.sqrt() * e * (u + v);
    let g = -0.5 * I * kin.k2.sqrt() * e * (u - v);
    Ok((f, g))
}
