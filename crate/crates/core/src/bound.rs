//! Bound-state levels of the attractive problem.

use crate::physics::{channel_exponent, Channel, ChannelExponent, FluxSplit};
use crate::{Error, Result};

/// Relative tie tolerance (in units of the rest energy) for merging `±j` levels.
pub const DEGENERACY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundLevel {
    pub n: u32,
    /// Representative channel; the positive member of a merged `±j` pair.
    pub channel: Channel,
    pub energy: f64,
    pub degeneracy: u8,
}

/// `E = μ / √(1 + γ²/(n+s)²)`.
pub fn energy_level(n: u32, ch: Channel, split: FluxSplit, gamma: f64, rest_energy: f64) -> Result<f64> {
    if !(gamma > 0.0 && gamma < 0.5) {
        return Err(Error::invalid("bound states need an attractive coupling 0 < gamma < 1/2"));
    }
    if !(rest_energy > 0.0 && rest_energy.is_finite()) {
        return Err(Error::invalid("rest energy must be positive"));
    }
    if n == 0 && ch.m < 0 {
        return Err(Error::invalid(format!("no n = 0 level with negative j = {}", ch.j())));
    }
    let s = match channel_exponent(ch, split, gamma)? {
        ChannelExponent::Subcritical { s } => s,
        ChannelExponent::Supercritical { .. } => return Err(Error::SupercriticalChannel { j: ch.j() }),
    };
    let x = gamma / (n as f64 + s);
    Ok(rest_energy / (1.0 + x * x).sqrt())
}

/// All levels with `n <= n_max` and `|j| <= j_max`, ascending in energy.
///
/// `j_max` is passed as `2 j_max` (a positive odd integer). At `ν = 0` the
/// `±j` levels with `n >= 1` coincide and are merged with degeneracy 2.
pub fn spectrum(n_max: u32, twice_j_max: i64, split: FluxSplit, gamma: f64, rest_energy: f64) -> Result<Vec<BoundLevel>> {
    if twice_j_max < 1 || twice_j_max % 2 == 0 {
        return Err(Error::invalid("j_max must be a positive half-odd integer"));
    }
    let mut levels: Vec<BoundLevel> = Vec::new();
    for n in 0..=n_max {
        for two_j in (-twice_j_max..=twice_j_max).step_by(2) {
            let ch = Channel::from_twice_j(two_j)?;
            if n == 0 && ch.m < 0 {
                continue;
            }
            let energy = energy_level(n, ch, split, gamma, rest_energy)?;
            levels.push(BoundLevel { n, channel: ch, energy, degeneracy: 1 });
        }
    }
    if split.nu == 0.0 {
        let tol = DEGENERACY_TOLERANCE * rest_energy;
        let mut merged: Vec<BoundLevel> = Vec::new();
        for lv in &levels {
            if lv.channel.m < 0 {
                let partner = levels.iter().any(|p| {
                    p.n == lv.n && p.channel.m == -lv.channel.m - 1 && (p.energy - lv.energy).abs() <= tol
                });
                if partner {
                    continue;
                }
            } else if lv.n >= 1 {
                let partner = levels.iter().any(|p| {
                    p.n == lv.n && p.channel.m == -lv.channel.m - 1 && (p.energy - lv.energy).abs() <= tol
                });
                if partner {
                    merged.push(BoundLevel { degeneracy: 2, ..*lv });
                    continue;
                }
            }
            merged.push(*lv);
        }
        levels = merged;
    }
    levels.sort_by(|a, b| {
        a.energy
            .total_cmp(&b.energy)
            .then(a.n.cmp(&b.n))
            .then(a.channel.cmp(&b.channel))
    });
    Ok(levels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sp(nu: f64) -> FluxSplit {
        FluxSplit { m0: 0, nu }
    }

    #[test]
    fn ground_level_oracle() {
        let e = energy_level(0, Channel::new(0), sp(0.0), 0.1, 1.0).unwrap();
        assert!((e - 0.97979589711327124).abs() < 1e-15, "{e}");
    }

    #[test]
    fn weak_coupling_limit() {
        for n in 0..4 {
            let e = energy_level(n, Channel::new(2), sp(0.2), 1e-6, 1.0).unwrap();
            assert!((1.0 - e) < 1e-10);
        }
    }

    #[test]
    fn integer_flux_pairs() {
        for n in 1..4 {
            for m in 0..3 {
                let a = energy_level(n, Channel::new(m), sp(0.0), 0.2, 1.0).unwrap();
                let b = energy_level(n, Channel::new(-m - 1), sp(0.0), 0.2, 1.0).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn degeneracy_rules() {
        let lv = spectrum(3, 5, sp(0.0), 0.1, 1.0).unwrap();
        for l in &lv {
            assert_eq!(l.degeneracy, if l.n >= 1 { 2 } else { 1 });
            assert!(l.channel.m >= 0);
        }
        assert_eq!(lv.len(), 3 + 3 * 3);
        let lv = spectrum(3, 5, sp(0.3), 0.1, 1.0).unwrap();
        assert!(lv.iter().all(|l| l.degeneracy == 1));
        assert_eq!(lv.len(), 3 + 3 * 6);
        assert!(lv.iter().filter(|l| l.n == 0).all(|l| l.channel.m >= 0));
        for w in lv.windows(2) {
            assert!(w[0].energy <= w[1].energy);
        }
    }

    #[test]
    fn errors() {
        assert!(energy_level(0, Channel::new(-1), sp(0.0), 0.1, 1.0).is_err());
        assert!(energy_level(1, Channel::new(0), sp(0.0), 0.0, 1.0).is_err());
        assert!(energy_level(1, Channel::new(0), sp(0.0), -0.1, 1.0).is_err());
        assert!(matches!(
            energy_level(1, Channel::new(-1), sp(0.5), 0.1, 1.0),
            Err(Error::SupercriticalChannel { .. })
        ));
        assert!(spectrum(2, 4, sp(0.0), 0.1, 1.0).is_err());
        assert!(spectrum(2, 3, sp(0.5), 0.1, 1.0).is_err());
    }

    #[test]
    fn nonrelativistic_residual_is_fourth_order() {
        let ch = Channel::new(1);
        let mut r = vec![];
        for g in [0.2, 0.1, 0.05] {
            let e = energy_level(2, ch, sp(0.2), g, 1.0).unwrap();
            let s = match channel_exponent(ch, sp(0.2), g).unwrap() {
                ChannelExponent::Subcritical { s } => s,
                _ => unreachable!(),
            };
            r.push((e - 1.0) + g * g / (2.0 * (2.0 + s).powi(2)));
        }
        for w in r.windows(2) {
            assert!((w[0] / w[1] - 16.0).abs() < 2.0, "{r:?}");
        }
    }

    proptest! {
        #[test]
        fn monotone_and_in_range(n in 0u32..20, m in 0i64..10, nu in -0.2f64..0.2, g in 0.001f64..0.29) {
            let ch = Channel::new(m);
            let e0 = energy_level(n, ch, sp(nu), g, 1.0).unwrap();
            let e1 = energy_level(n + 1, ch, sp(nu), g, 1.0).unwrap();
            let e2 = energy_level(n, Channel::new(m + 1), sp(nu), g, 1.0).unwrap();
            prop_assert!(e0 > 0.0 && e0 < 1.0);
            prop_assert!(e1 > e0);
            prop_assert!(e2 > e0);
        }
    }
}
