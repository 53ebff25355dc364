//! Problem definition and kinematics.
//!
//! Natural units throughout: `ħ = c = 1`, energies measured in the same unit
//! as `rest_energy` (usually 1).

use crate::{Error, Result};

/// Channels with `(j+ν)² - γ²` closer to zero than this are rejected.
pub const CRITICAL_TOLERANCE: f64 = 1e-12;

/// Coupling, flux and mass scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConfig {
    pub gamma: f64,
    pub alpha: f64,
    pub rest_energy: f64,
}

impl PhysicalConfig {
    pub fn new(gamma: f64, alpha: f64, rest_energy: f64) -> Result<Self> {
        let cfg = PhysicalConfig { gamma, alpha, rest_energy };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.gamma.is_finite() || self.gamma.abs() >= 0.5 {
            return Err(Error::invalid(format!("coupling must satisfy |gamma| < 1/2, got {}", self.gamma)));
        }
        if !self.alpha.is_finite() {
            return Err(Error::invalid("flux parameter must be finite"));
        }
        if !(self.rest_energy > 0.0 && self.rest_energy.is_finite()) {
            return Err(Error::invalid("rest energy must be positive"));
        }
        Ok(())
    }

    pub fn split(&self) -> FluxSplit {
        split_flux(self.alpha)
    }
}

/// `alpha = m0 + nu` with `-1/2 < nu <= 1/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxSplit {
    pub m0: i64,
    pub nu: f64,
}

pub fn split_flux(alpha: f64) -> FluxSplit {
    let mut m0 = alpha.round();
    let mut nu = alpha - m0;
    // round() sends x.5 away from zero; fold back into (-1/2, 1/2]
    if nu <= -0.5 {
        m0 -= 1.0;
        nu = alpha - m0;
    } else if nu > 0.5 {
        m0 += 1.0;
        nu = alpha - m0;
    }
    FluxSplit { m0: m0 as i64, nu }
}

/// Wave numbers and Coulomb parameters at a fixed energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kinematics {
    pub energy: f64,
    pub rest_energy: f64,
    pub gamma: f64,
    pub k1: f64,
    pub k2: f64,
    pub k: f64,
    pub beta: f64,
    pub beta_prime: f64,
    pub v_over_c: f64,
}

impl Kinematics {
    /// `1 - β'/β = 1 - μ/E`, well defined even at `γ = 0`.
    pub fn relativistic_factor(&self) -> f64 {
        self.k2 / self.energy
    }
}

pub fn kinematics(cfg: &PhysicalConfig, energy: f64) -> Result<Kinematics> {
    cfg.validate()?;
    let mu = cfg.rest_energy;
    if !energy.is_finite() {
        return Err(Error::invalid("energy must be finite"));
    }
    if energy <= mu {
        return Err(Error::SubThreshold { energy, rest_energy: mu });
    }
    let k1 = energy + mu;
    let k2 = energy - mu;
    let k = (k1 * k2).sqrt();
    Ok(Kinematics {
        energy,
        rest_energy: mu,
        gamma: cfg.gamma,
        k1,
        k2,
        k,
        beta: cfg.gamma * energy / k,
        beta_prime: cfg.gamma * mu / k,
        v_over_c: k / energy,
    })
}

/// Partial wave labelled by `j = m + 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Channel {
    pub m: i64,
}

impl Channel {
    pub fn new(m: i64) -> Self {
        Channel { m }
    }

    /// From `2j`, which must be odd.
    pub fn from_twice_j(two_j: i64) -> Result<Self> {
        if two_j.rem_euclid(2) != 1 {
            return Err(Error::invalid(format!("2j = {two_j} is not odd")));
        }
        Ok(Channel { m: (two_j - 1) / 2 })
    }

    pub fn j(&self) -> f64 {
        self.m as f64 + 0.5
    }

    pub fn twice_j(&self) -> i64 {
        2 * self.m + 1
    }

    /// `j + ν`.
    pub fn kappa(&self, nu: f64) -> f64 {
        self.j() + nu
    }

    /// `(-1)^m`.
    pub fn parity(&self) -> f64 {
        if self.m.rem_euclid(2) == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelExponent {
    Subcritical { s: f64 },
    Supercritical { gamma_prime: f64 },
}

impl ChannelExponent {
    pub fn is_subcritical(&self) -> bool {
        matches!(self, ChannelExponent::Subcritical { .. })
    }
}

pub fn channel_exponent(ch: Channel, split: FluxSplit, gamma: f64) -> Result<ChannelExponent> {
    let kappa = ch.kappa(split.nu).abs();
    let g = gamma.abs();
    let d = (kappa - g) * (kappa + g);
    if d.abs() <= CRITICAL_TOLERANCE {
        return Err(Error::CriticalBoundary { j: ch.j() });
    }
    if d > 0.0 {
        Ok(ChannelExponent::Subcritical { s: d.sqrt() })
    } else {
        Ok(ChannelExponent::Supercritical { gamma_prime: (-d).sqrt() })
    }
}

/// The channel that turns supercritical first as `|ν| -> 1/2`.
pub fn edge_channel(split: FluxSplit) -> Channel {
    if split.nu >= 0.0 {
        Channel::new(-1)
    } else {
        Channel::new(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn unit(gamma: f64) -> PhysicalConfig {
        PhysicalConfig::new(gamma, 0.0, 1.0).unwrap()
    }

    #[test]
    fn flux_examples() {
        assert_eq!(split_flux(0.0), FluxSplit { m0: 0, nu: 0.0 });
        let s = split_flux(2.3);
        assert_eq!(s.m0, 2);
        assert!((s.nu - 0.3).abs() < 1e-15);
        assert_eq!(split_flux(-0.5), FluxSplit { m0: -1, nu: 0.5 });
        assert_eq!(split_flux(0.5), FluxSplit { m0: 0, nu: 0.5 });
        assert_eq!(split_flux(1.5), FluxSplit { m0: 1, nu: 0.5 });
        assert_eq!(split_flux(-2.5), FluxSplit { m0: -3, nu: 0.5 });
    }

    #[test]
    fn kinematics_at_five_quarters() {
        let kin = kinematics(&unit(0.06), 1.25).unwrap();
        assert!((kin.k1 - 2.25).abs() < 1e-15);
        assert!((kin.k2 - 0.25).abs() < 1e-15);
        assert!((kin.k - 0.75).abs() < 1e-15);
        assert!((kin.v_over_c - 0.6).abs() < 1e-15);
        assert!((kin.beta - 0.1).abs() < 1e-15);
        assert!((kin.beta_prime - 0.08).abs() < 1e-15);
    }

    #[test]
    fn threshold_and_high_energy() {
        assert!(kinematics(&unit(0.1), 1.000001).is_ok());
        assert!(matches!(kinematics(&unit(0.1), 1.0), Err(Error::SubThreshold { .. })));
        let kin = kinematics(&unit(0.1), 1e8).unwrap();
        assert!(kin.beta_prime / kin.beta < 1e-7);
    }

    #[test]
    fn config_rejects_strong_coupling() {
        assert!(PhysicalConfig::new(0.5, 0.0, 1.0).is_err());
        assert!(PhysicalConfig::new(0.1, f64::NAN, 1.0).is_err());
        assert!(PhysicalConfig::new(0.1, 0.0, 0.0).is_err());
    }

    #[test]
    fn exponent_examples() {
        let s = |nu| FluxSplit { m0: 0, nu };
        match channel_exponent(Channel::new(0), s(0.0), 0.3).unwrap() {
            ChannelExponent::Subcritical { s } => assert!((s - 0.4).abs() < 1e-15),
            e => panic!("{e:?}"),
        }
        match channel_exponent(Channel::new(-1), s(0.5), 0.1).unwrap() {
            ChannelExponent::Supercritical { gamma_prime } => assert!((gamma_prime - 0.1).abs() < 1e-15),
            e => panic!("{e:?}"),
        }
        match channel_exponent(Channel::new(-1), s(0.4), 0.3).unwrap() {
            ChannelExponent::Supercritical { gamma_prime } => {
                assert!((gamma_prime - 0.08f64.sqrt()).abs() < 1e-15)
            }
            e => panic!("{e:?}"),
        }
        assert!(matches!(
            channel_exponent(Channel::new(-1), s(0.25), 0.25),
            Err(Error::CriticalBoundary { .. })
        ));
    }

    #[test]
    fn channel_labels() {
        assert_eq!(Channel::from_twice_j(-3).unwrap(), Channel::new(-2));
        assert_eq!(Channel::from_twice_j(5).unwrap().j(), 2.5);
        assert!(Channel::from_twice_j(4).is_err());
        assert_eq!(Channel::new(-3).parity(), -1.0);
    }

    proptest! {
        #[test]
        fn beta_identity(gamma in -0.499f64..0.499, e in 1.0001f64..50.0) {
            let kin = kinematics(&unit(gamma), e).unwrap();
            let lhs = kin.beta * kin.beta - kin.beta_prime * kin.beta_prime;
            prop_assert!((lhs - gamma * gamma).abs() <= 1e-13 * (gamma * gamma).max(1e-300) + 1e-300);
            prop_assert!((kin.k * kin.k - kin.k1 * kin.k2).abs() <= 1e-14 * kin.k * kin.k);
            let bp = kin.beta * (1.0 - kin.v_over_c * kin.v_over_c).sqrt();
            prop_assert!((bp - kin.beta_prime).abs() <= 1e-12 * kin.beta.abs().max(1e-300));
        }

        #[test]
        fn flux_periodicity(alpha in -1e3f64..1e3) {
            let a = split_flux(alpha);
            let b = split_flux(alpha + 1.0);
            prop_assert!(a.nu > -0.5 && a.nu <= 0.5);
            prop_assert!((a.nu - b.nu).abs() < 1e-12 || (a.nu - b.nu).abs() > 1.0 - 1e-12);
            prop_assert!((a.m0 as f64 + a.nu - alpha).abs() < 1e-12);
        }

        #[test]
        fn exponent_depends_on_kappa_squared(m in -20i64..20, nu in -0.49f64..0.5, gamma in 0.0f64..0.49) {
            let split = FluxSplit { m0: 0, nu };
            let ch = Channel::new(m);
            // mirror channel with j + ν -> -(j + ν) under ν -> -ν
            let mirror = Channel::new(-m - 1);
            let back = FluxSplit { m0: 0, nu: -nu };
            let a = channel_exponent(ch, split, gamma);
            let b = channel_exponent(mirror, back, gamma);
            prop_assert_eq!(a.clone(), b);
            if let Ok(e) = a {
                prop_assert_eq!(e.is_subcritical(), ch.kappa(nu).abs() > gamma);
            }
        }
    }
}
