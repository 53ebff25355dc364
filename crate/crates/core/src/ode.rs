//! Numerical S-matrix from the radial equations.
//!
//! The real first-order system is integrated outward from a power-law seed
//! with an adaptive Dormand–Prince 5(4) scheme; `S_j` is then read off by a
//! least-squares fit to incoming and outgoing Coulomb-distorted waves whose
//! `1/ρ` corrections are generated to high order.

use std::io::{self, Write};

use num_complex::Complex64;

use crate::physics::{channel_exponent, Channel, ChannelExponent, FluxSplit, Kinematics};
use crate::specfun::{c, I};
use crate::{Error, Result};

pub const DEFAULT_RTOL: f64 = 1e-10;
/// Fits with a larger relative RMS misfit are rejected.
pub const MAX_FIT_RESIDUAL: f64 = 1e-3;
/// Uniform sample spacing beyond `ρ = 1`.
pub const SAMPLE_SPACING: f64 = 0.1;
const LOG_SAMPLES: usize = 60;
const MAX_STEPS: usize = 5_000_000;
const ASYMPTOTIC_ORDER: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeConfig {
    pub rho_start: f64,
    pub rho_end: f64,
    pub rtol: f64,
    pub window: (f64, f64),
}

impl Default for OdeConfig {
    fn default() -> Self {
        OdeConfig {
            rho_start: 1e-6,
            rho_end: 100.0,
            rtol: DEFAULT_RTOL,
            window: (40.0, 100.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialTrajectory {
    pub rho_samples: Vec<f64>,
    pub f_samples: Vec<Complex64>,
    pub g_samples: Vec<Complex64>,
    pub channel: Channel,
    pub kin: Kinematics,
    pub nu: f64,
    pub gamma: f64,
}

impl RadialTrajectory {
    /// Columns `rho, re_f, im_f, re_g, im_g`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "rho,re_f,im_f,re_g,im_g")?;
        for ((r, f), g) in self.rho_samples.iter().zip(&self.f_samples).zip(&self.g_samples) {
            writeln!(out, "{:.14e},{:.14e},{:.14e},{:.14e},{:.14e}", r, f.re, f.im, g.re, g.im)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchResult {
    pub s_extracted: Complex64,
    /// Inner edge of the fitting window.
    pub match_radius: f64,
    /// RMS misfit of the fit relative to the RMS of the data.
    pub residual: f64,
}

/// Output radii: log-spaced up to 1, then uniform.
pub fn sample_points(rho_start: f64, rho_end: f64) -> Vec<f64> {
    let mut pts = Vec::new();
    let l0 = rho_start.ln();
    for i in 0..LOG_SAMPLES {
        pts.push((l0 * (1.0 - i as f64 / LOG_SAMPLES as f64)).exp());
    }
    let n = ((rho_end - 1.0) / SAMPLE_SPACING).round() as usize;
    for i in 0..=n {
        pts.push(1.0 + (rho_end - 1.0) * i as f64 / n as f64);
    }
    pts
}

struct Rhs {
    kappa: f64,
    a1: f64,
    a2: f64,
    gamma: f64,
}

impl Rhs {
    #[inline]
    fn eval(&self, rho: f64, y: [f64; 2]) -> [f64; 2] {
        let [f, g] = y;
        let inv = 1.0 / rho;
        [
            self.kappa * f * inv - self.a1 * g - self.gamma * g * inv,
            -self.kappa * g * inv + self.a2 * f + self.gamma * f * inv,
        ]
    }
}

// Dormand–Prince 5(4) tableau
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn axpy(y: [f64; 2], terms: &[(f64, [f64; 2])], h: f64) -> [f64; 2] {
    let mut out = y;
    for (a, k) in terms {
        out[0] += h * a * k[0];
        out[1] += h * a * k[1];
    }
    out
}

/// One DP5 step; returns `(y_new, k7, error estimate)`.
fn dp_step(rhs: &Rhs, x: f64, y: [f64; 2], k1: [f64; 2], h: f64) -> ([f64; 2], [f64; 2], [f64; 2]) {
    let k2 = rhs.eval(x + C2 * h, axpy(y, &[(A21, k1)], h));
    let k3 = rhs.eval(x + C3 * h, axpy(y, &[(A31, k1), (A32, k2)], h));
    let k4 = rhs.eval(x + C4 * h, axpy(y, &[(A41, k1), (A42, k2), (A43, k3)], h));
    let k5 = rhs.eval(x + C5 * h, axpy(y, &[(A51, k1), (A52, k2), (A53, k3), (A54, k4)], h));
    let k6 = rhs.eval(x + h, axpy(y, &[(A61, k1), (A62, k2), (A63, k3), (A64, k4), (A65, k5)], h));
    let y_new = axpy(y, &[(B1, k1), (B3, k3), (B4, k4), (B5, k5), (B6, k6)], h);
    let k7 = rhs.eval(x + h, y_new);
    let err = axpy([0.0, 0.0], &[(E1, k1), (E3, k3), (E4, k4), (E5, k5), (E6, k6), (E7, k7)], h);
    (y_new, k7, err)
}

fn subcritical_s(ch: Channel, split: FluxSplit, gamma: f64) -> Result<f64> {
    match channel_exponent(ch, split, gamma)? {
        ChannelExponent::Subcritical { s } => Ok(s),
        ChannelExponent::Supercritical { .. } => Err(Error::SupercriticalChannel { j: ch.j() }),
    }
}

/// Integrates the radial system from `rho_start` to `rho_end`, seeded with
/// `f = ρ^s`, `g = ρ^s (j+ν-s)/γ`.
pub fn integrate_radial(
    ch: Channel,
    kin: &Kinematics,
    split: FluxSplit,
    gamma: f64,
    rho_start: f64,
    rho_end: f64,
    tol: f64,
) -> Result<RadialTrajectory> {
    if gamma == 0.0 || !gamma.is_finite() {
        return Err(Error::invalid("the radial seed needs gamma != 0"));
    }
    if !(1e-8..=1e-3).contains(&rho_start) {
        return Err(Error::invalid("rho_start must lie in [1e-8, 1e-3]"));
    }
    if !(rho_end >= 50.0 && rho_end.is_finite()) {
        return Err(Error::invalid("rho_end must be at least 50"));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("tolerance must be positive"));
    }
    let s = subcritical_s(ch, split, gamma)?;
    let kappa = ch.kappa(split.nu);
    let rhs = Rhs {
        kappa,
        a1: kin.k1 / kin.k,
        a2: kin.k2 / kin.k,
        gamma,
    };
    let targets = sample_points(rho_start, rho_end);
    let mut x = rho_start;
    let f0 = rho_start.powf(s);
    let mut y = [f0, f0 * (kappa - s) / gamma];
    let mut k1 = rhs.eval(x, y);
    let mut h = 1e-2 * rho_start;
    let mut steps = 0usize;
    let mut rho_samples = Vec::with_capacity(targets.len());
    let mut f_samples = Vec::with_capacity(targets.len());
    let mut g_samples = Vec::with_capacity(targets.len());
    for &target in &targets {
        while x < target {
            let landing = h >= target - x;
            let step = if landing { target - x } else { h };
            let (y_new, k7, err) = dp_step(&rhs, x, y, k1, step);
            let scale = tol * y[0].hypot(y[1]).max(y_new[0].hypot(y_new[1]));
            let e = err[0].hypot(err[1]) / scale;
            steps += 1;
            if steps > MAX_STEPS {
                return Err(Error::StepSizeUnderflow { rho: x });
            }
            let factor = if e == 0.0 { 5.0 } else { (0.9 * e.powf(-0.2)).clamp(0.2, 5.0) };
            if e <= 1.0 {
                x = if landing { target } else { x + step };
                y = y_new;
                k1 = k7;
                if !landing || factor < 1.0 {
                    h = step * factor;
                }
            } else {
                h = step * factor;
            }
            if h < 1e-14 * x {
                return Err(Error::StepSizeUnderflow { rho: x });
            }
        }
        rho_samples.push(target);
        f_samples.push(c(y[0], 0.0));
        g_samples.push(c(y[1], 0.0));
    }
    Ok(RadialTrajectory {
        rho_samples,
        f_samples,
        g_samples,
        channel: ch,
        kin: *kin,
        nu: split.nu,
        gamma,
    })
}

/// Coefficients `(F_n, G_n)` of `e^{iσΨ} Σ (F_n, G_n) ρ^{-n}`, `Ψ = ρ + β ln 2ρ`.
fn asymptotic_coefficients(kappa: f64, beta: f64, gamma: f64, b: f64, sigma: f64) -> Vec<(Complex64, Complex64)> {
    let is = I * sigma;
    let mut out = vec![(c(1.0, 0.0), -is * b)];
    for n in 1..=ASYMPTOTIC_ORDER {
        let nf = n as f64;
        let (fp, gp) = out[n - 1];
        let r1 = (kappa + nf - 1.0 - is * beta) * fp - gamma * gp;
        let gpn = b * r1;
        let cn = gpn * (-kappa + nf - is * beta + is * b * gamma) / (2.0 * is * b * nf);
        out.push((cn, gpn - is * b * cn));
    }
    out
}

fn asymptotic_wave(coef: &[(Complex64, Complex64)], rho: f64, beta: f64, sigma: f64) -> (Complex64, Complex64) {
    let phase = Complex64::from_polar(1.0, sigma * (rho + beta * (2.0 * rho).ln()));
    let mut f = c(0.0, 0.0);
    let mut g = c(0.0, 0.0);
    let mut p = 1.0;
    let mut last = f64::INFINITY;
    for (fc, gc) in coef {
        let size = fc.norm().max(gc.norm()) * p;
        if size > last {
            break;
        }
        f += fc * p;
        g += gc * p;
        last = size;
        if size < 1e-17 {
            break;
        }
        p /= rho;
    }
    (phase * f, phase * g)
}

/// Fits `(f, g)` on `window` to outgoing plus incoming distorted waves and
/// returns `S_j`.
pub fn extract_s(traj: &RadialTrajectory, window: (f64, f64)) -> Result<MatchResult> {
    let (lo, hi) = window;
    if !(lo >= 30.0 && hi > lo) {
        return Err(Error::invalid("matching window must start at rho >= 30"));
    }
    let last = *traj.rho_samples.last().unwrap_or(&0.0);
    if hi > last + 1e-9 {
        return Err(Error::invalid("matching window exceeds the trajectory"));
    }
    let kin = &traj.kin;
    let gamma = traj.gamma;
    let beta = gamma * kin.energy / kin.k;
    let b = (kin.k2 / kin.k1).sqrt();
    let kappa = traj.channel.kappa(traj.nu);
    let out = asymptotic_coefficients(kappa, beta, gamma, b, 1.0);
    let inc = asymptotic_coefficients(kappa, beta, gamma, b, -1.0);

    let (mut app, mut apq, mut aqq) = (0.0, c(0.0, 0.0), 0.0);
    let (mut rp, mut rq) = (c(0.0, 0.0), c(0.0, 0.0));
    let mut rows = Vec::new();
    for (i, &rho) in traj.rho_samples.iter().enumerate() {
        if rho < lo - 1e-9 || rho > hi + 1e-9 {
            continue;
        }
        let (pf, pg) = asymptotic_wave(&out, rho, beta, 1.0);
        let (qf, qg) = asymptotic_wave(&inc, rho, beta, -1.0);
        for (p, q, d) in [(pf, qf, traj.f_samples[i]), (pg, qg, traj.g_samples[i])] {
            app += p.norm_sqr();
            aqq += q.norm_sqr();
            apq += p.conj() * q;
            rp += p.conj() * d;
            rq += q.conj() * d;
            rows.push((p, q, d));
        }
    }
    if rows.len() < 400 {
        return Err(Error::invalid("matching window holds fewer than 200 samples"));
    }
    let det = app * aqq - apq.norm_sqr();
    if det <= 1e-12 * app * aqq {
        return Err(Error::IllConditionedFit { relative_residual: f64::INFINITY });
    }
    let x = (aqq * rp - apq * rq) / det;
    let y = (app * rq - apq.conj() * rp) / det;
    let (mut miss, mut norm) = (0.0, 0.0);
    for (p, q, d) in &rows {
        miss += (d - x * p - y * q).norm_sqr();
        norm += d.norm_sqr();
    }
    let residual = (miss / norm).sqrt();
    if residual > MAX_FIT_RESIDUAL || y.norm() == 0.0 {
        return Err(Error::IllConditionedFit { relative_residual: residual });
    }
    Ok(MatchResult {
        s_extracted: I * traj.channel.parity() * x / y,
        match_radius: lo,
        residual,
    })
}

/// Integrates and matches in one call.
pub fn ode_s_matrix(ch: Channel, kin: &Kinematics, split: FluxSplit, gamma: f64, cfg: &OdeConfig) -> Result<MatchResult> {
    let traj = integrate_radial(ch, kin, split, gamma, cfg.rho_start, cfg.rho_end, cfg.rtol)?;
    extract_s(&traj, cfg.window)
}
