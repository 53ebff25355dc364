//! Command-line front end.
//!
//! [`run`] is the whole pipeline from a validated [`RunSpec`] to the bytes
//! written on stdout and stderr; the binary only parses arguments and
//! forwards. Output is assembled completely before anything is printed, so
//! a failing run never leaves a partial table behind.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::amplitude::{
    amplitude_closed_f0, amplitude_closed_f1, amplitude_closed_generic, amplitude_closed_nu0,
    amplitude_closed_nu_half, amplitude_f0_two_series, amplitude_f1_two_series, amplitude_series,
    amplitude_series_approx, AmplitudeMethod, AmplitudeProfile, AngularGrid,
};
use crate::bound::spectrum;
use crate::ode::{ode_s_matrix, OdeConfig};
use crate::physics::{channel_exponent, edge_channel, kinematics, Channel, ChannelExponent, FluxSplit, Kinematics, PhysicalConfig};
use crate::smatrix::{s_approx, s_channel, ChannelResult};
use crate::specfun::AccelConfig;
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_BREACH: i32 = 4;

pub const TOL_UNITARITY: f64 = 1e-10;
pub const TOL_RESUMMATION: f64 = 1e-5;
pub const TOL_DUAL_FORM: f64 = 1e-7;
pub const TOL_ODE: f64 = 1e-5;
/// Channels compared against the ODE oracle in `validate`: `|j| <= 5/2`.
pub const ODE_TWICE_J_MAX: i64 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodChoice {
    Auto,
    Series,
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    PhaseShifts,
    Amplitude,
    CrossSection,
    BoundStates,
    Validate,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::PhaseShifts => "phase-shifts",
            Command::Amplitude => "amplitude",
            Command::CrossSection => "cross-section",
            Command::BoundStates => "bound-states",
            Command::Validate => "validate",
        }
    }
}

/// Everything a run depends on; there is no hidden state or seed.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub gamma: f64,
    pub alpha: f64,
    pub energy_over_mc2: f64,
    /// `(min, max, count)` in degrees, inclusive.
    pub theta_grid: (f64, f64, usize),
    /// Forward cone half-width in degrees.
    pub theta_min_deg: f64,
    /// `2 j_max`.
    pub channel_cutoff: i64,
    pub n_max: u32,
    pub method: MethodChoice,
    pub output_format: OutputFormat,
}

impl Default for RunSpec {
    fn default() -> Self {
        RunSpec {
            gamma: 0.05,
            alpha: 0.0,
            energy_over_mc2: 1.25,
            theta_grid: (30.0, 180.0, 16),
            theta_min_deg: 5.0,
            channel_cutoff: 11,
            n_max: 3,
            method: MethodChoice::Auto,
            output_format: OutputFormat::Csv,
        }
    }
}

impl RunSpec {
    pub fn validate(&self, cmd: Command) -> Result<()> {
        let cfg = PhysicalConfig::new(self.gamma, self.alpha, 1.0)?;
        if self.channel_cutoff < 1 || self.channel_cutoff % 2 == 0 {
            return Err(Error::invalid("jmax must be a positive half-odd integer"));
        }
        if cmd == Command::BoundStates {
            if self.gamma <= 0.0 {
                return Err(Error::invalid("bound states need gamma > 0"));
            }
            return Ok(());
        }
        kinematics(&cfg, self.energy_over_mc2)?;
        self.grid()?;
        Ok(())
    }

    fn config(&self) -> Result<PhysicalConfig> {
        PhysicalConfig::new(self.gamma, self.alpha, 1.0)
    }

    fn kin(&self) -> Result<Kinematics> {
        kinematics(&self.config()?, self.energy_over_mc2)
    }

    fn accel(&self) -> Result<AccelConfig> {
        AccelConfig::default().with_theta_min(self.theta_min_deg.to_radians())
    }

    fn grid(&self) -> Result<AngularGrid> {
        let (a, b, n) = self.theta_grid;
        if !(self.theta_min_deg > 0.0 && self.theta_min_deg < 180.0) {
            return Err(Error::invalid("theta-min must lie in (0, 180) degrees"));
        }
        AngularGrid::from_degrees(a, b, n, self.theta_min_deg.to_radians())
    }

    fn channels(&self) -> impl Iterator<Item = Channel> {
        let t = self.channel_cutoff;
        (-t..=t).step_by(2).map(|two_j| Channel::new((two_j - 1) / 2))
    }

    fn to_json(&self, cmd: Command) -> Value {
        let (a, b, n) = self.theta_grid;
        json!({
            "command": cmd.name(),
            "gamma": num(self.gamma),
            "alpha": num(self.alpha),
            "energy": num(self.energy_over_mc2),
            "theta": {"min": num(a), "max": num(b), "count": n},
            "theta_min": num(self.theta_min_deg),
            "jmax": format!("{}/2", self.channel_cutoff),
            "nmax": self.n_max,
            "method": format!("{:?}", self.method).to_lowercase(),
        })
    }
}

/// Parses `5/2`, `2.5` or `-1/2` style half-odd integers into `2j`.
pub fn parse_half_odd(text: &str) -> std::result::Result<i64, String> {
    let t = text.trim();
    let twice = if let Some((n, d)) = t.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| format!("bad numerator in {t:?}"))?;
        let d: i64 = d.trim().parse().map_err(|_| format!("bad denominator in {t:?}"))?;
        if d != 2 {
            return Err(format!("{t:?} is not of the form n/2"));
        }
        n
    } else {
        let x: f64 = t.parse().map_err(|_| format!("cannot parse {t:?}"))?;
        let tw = 2.0 * x;
        if tw.fract() != 0.0 {
            return Err(format!("{t:?} is not a half-odd integer"));
        }
        tw as i64
    };
    if twice.rem_euclid(2) != 1 {
        return Err(format!("{t:?} is not a half-odd integer"));
    }
    Ok(twice)
}

/// Parses `min:max:count` (degrees).
pub fn parse_theta(text: &str) -> std::result::Result<(f64, f64, usize), String> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected min:max:count, got {text:?}"));
    }
    let a: f64 = parts[0].trim().parse().map_err(|_| format!("bad minimum in {text:?}"))?;
    let b: f64 = parts[1].trim().parse().map_err(|_| format!("bad maximum in {text:?}"))?;
    let n: usize = parts[2].trim().parse().map_err(|_| format!("bad count in {text:?}"))?;
    Ok((a, b, n))
}

/// Rounds to 15 significant digits, the precision of every emitted number.
fn num(x: f64) -> f64 {
    format!("{x:.14e}").parse().unwrap_or(x)
}

#[derive(Debug, Clone, PartialEq)]
enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    Null,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => format!("{x:.14e}"),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Null => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => json!(num(*x)),
            Cell::Int(i) => json!(i),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
            Cell::Null => Value::Null,
        }
    }
}

fn text(s: &str) -> Cell {
    Cell::Text(s.to_string())
}

fn half(twice: i64) -> Cell {
    Cell::Text(format!("{twice}/2"))
}

#[derive(Debug, Default)]
struct Report {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
    diagnostics: Vec<(String, Cell)>,
    warnings: Vec<String>,
    breach: bool,
}

impl Report {
    fn new(columns: &[&'static str]) -> Self {
        Report { columns: columns.to_vec(), ..Default::default() }
    }

    fn diag(&mut self, key: &str, val: Cell) {
        self.diagnostics.push((key.to_string(), val));
    }
}

/// Bytes destined for stdout and stderr, plus the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

pub fn run(spec: &RunSpec, cmd: Command) -> RunOutput {
    let result = spec.validate(cmd).and_then(|_| match cmd {
        Command::PhaseShifts => phase_shifts(spec),
        Command::Amplitude => amplitude(spec, false),
        Command::CrossSection => amplitude(spec, true),
        Command::BoundStates => bound_states(spec),
        Command::Validate => validate(spec),
    });
    match result {
        Ok(rep) => render(spec, cmd, rep),
        Err(e) => RunOutput {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            exit_code: if e.is_numerical() { EXIT_NUMERICAL } else { EXIT_INVALID },
        },
    }
}

fn render(spec: &RunSpec, cmd: Command, rep: Report) -> RunOutput {
    let mut stdout = String::new();
    let mut stderr = String::new();
    for w in &rep.warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
    match spec.output_format {
        OutputFormat::Csv => {
            let _ = writeln!(stdout, "{}", rep.columns.join(","));
            for row in &rep.rows {
                let line: Vec<String> = row.iter().map(Cell::csv).collect();
                let _ = writeln!(stdout, "{}", line.join(","));
            }
            for (k, v) in &rep.diagnostics {
                let _ = writeln!(stderr, "# {k}: {}", v.csv());
            }
        }
        OutputFormat::Json => {
            let rows: Vec<Value> = rep
                .rows
                .iter()
                .map(|row| {
                    let mut m = Map::new();
                    for (c, v) in rep.columns.iter().zip(row) {
                        m.insert(c.to_string(), v.json());
                    }
                    Value::Object(m)
                })
                .collect();
            let mut diag = Map::new();
            for (k, v) in &rep.diagnostics {
                diag.insert(k.clone(), v.json());
            }
            diag.insert("warnings".into(), json!(rep.warnings));
            let doc = json!({"spec": spec.to_json(cmd), "rows": rows, "diagnostics": diag});
            let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&doc).unwrap_or_default());
        }
    }
    RunOutput {
        stdout,
        stderr,
        exit_code: if rep.breach { EXIT_BREACH } else { EXIT_OK },
    }
}

fn kinematic_diagnostics(rep: &mut Report, kin: &Kinematics, split: FluxSplit) {
    rep.diag("m0", Cell::Int(split.m0));
    rep.diag("nu", Cell::Num(split.nu));
    rep.diag("k", Cell::Num(kin.k));
    rep.diag("beta", Cell::Num(kin.beta));
    rep.diag("beta_prime", Cell::Num(kin.beta_prime));
    rep.diag("v_over_c", Cell::Num(kin.v_over_c));
}

fn channel_row(r: &ChannelResult) -> Vec<Cell> {
    let (kind, val) = match r.exponent {
        ChannelExponent::Subcritical { s } => ("subcritical", s),
        ChannelExponent::Supercritical { gamma_prime } => ("supercritical", gamma_prime),
    };
    vec![
        half(r.channel.twice_j()),
        Cell::Int(r.channel.m),
        text(kind),
        Cell::Num(val),
        Cell::Num(r.s_value.re),
        Cell::Num(r.s_value.im),
        Cell::Num(r.s_value.norm()),
        r.phase_shift.map_or(Cell::Null, Cell::Num),
        text(r.method.name()),
        Cell::Bool(r.near_critical),
    ]
}

fn phase_shifts(spec: &RunSpec) -> Result<Report> {
    let kin = spec.kin()?;
    let split = spec.config()?.split();
    let mut rep = Report::new(&[
        "j", "m", "regime", "exponent", "re_s", "im_s", "abs_s", "eta", "method", "near_critical",
    ]);
    for ch in spec.channels() {
        let r = match spec.method {
            MethodChoice::Closed => s_approx(ch, &kin, split)?,
            _ => s_channel(ch, &kin, split, spec.gamma)?,
        };
        if spec.method != MethodChoice::Closed {
            if !r.exponent.is_subcritical() {
                rep.warnings.push(format!("channel j = {}/2 is supercritical; mean-S prescription used", ch.twice_j()));
            } else if r.near_critical {
                rep.warnings.push(format!("channel j = {}/2 is near-critical", ch.twice_j()));
            }
        }
        rep.rows.push(channel_row(&r));
    }
    kinematic_diagnostics(&mut rep, &kin, split);
    Ok(rep)
}

/// Picks the amplitude method for a run.
pub fn select_method(spec: &RunSpec, nu: f64) -> AmplitudeMethod {
    match (spec.method, nu) {
        (MethodChoice::Series, _) => AmplitudeMethod::SeriesExact,
        (_, 0.0) => AmplitudeMethod::ClosedNu0,
        (_, 0.5) => AmplitudeMethod::ClosedNuHalf,
        (MethodChoice::Closed, _) => AmplitudeMethod::ClosedGeneric,
        (MethodChoice::Auto, _) => AmplitudeMethod::SeriesExact,
    }
}

fn edge_warning(kin: &Kinematics, split: FluxSplit, gamma: f64) -> Option<String> {
    let ch = edge_channel(split);
    match channel_exponent(ch, split, gamma) {
        Ok(ChannelExponent::Supercritical { .. }) => Some(format!(
            "channel j = {}/2 is supercritical; mean-S prescription used",
            ch.twice_j()
        )),
        Ok(ChannelExponent::Subcritical { .. }) => s_channel(ch, kin, split, gamma)
            .ok()
            .filter(|r| r.near_critical)
            .map(|_| format!("channel j = {}/2 is near-critical", ch.twice_j())),
        Err(_) => None,
    }
}

fn compute_profile(spec: &RunSpec, method: AmplitudeMethod) -> Result<AmplitudeProfile> {
    let kin = spec.kin()?;
    let split = spec.config()?.split();
    let grid = spec.grid()?;
    let accel = spec.accel()?;
    match method {
        AmplitudeMethod::SeriesExact => amplitude_series(&kin, split, spec.gamma, &grid, &accel),
        AmplitudeMethod::SeriesApprox => amplitude_series_approx(&kin, split, &grid, &accel),
        AmplitudeMethod::ClosedNu0 => amplitude_closed_nu0(&kin, &grid),
        AmplitudeMethod::ClosedNuHalf => amplitude_closed_nu_half(&kin, &grid),
        AmplitudeMethod::ClosedGeneric => amplitude_closed_generic(&kin, split.nu, &grid, &accel),
    }
}

fn amplitude(spec: &RunSpec, sigma_only: bool) -> Result<Report> {
    let kin = spec.kin()?;
    let split = spec.config()?.split();
    let method = select_method(spec, split.nu);
    let mut rep = if sigma_only {
        Report::new(&["theta_deg", "sigma", "method"])
    } else {
        Report::new(&["theta_deg", "re_f", "im_f", "abs_f", "sigma", "method"])
    };
    if method == AmplitudeMethod::SeriesExact {
        if let Some(w) = edge_warning(&kin, split, spec.gamma) {
            rep.warnings.push(w);
        }
    }
    let p = compute_profile(spec, method)?;
    for ((t, f), s) in p.grid.values().iter().zip(&p.f_values).zip(&p.sigma_values) {
        let deg = Cell::Num(t.to_degrees());
        let m = text(method.name());
        rep.rows.push(if sigma_only {
            vec![deg, Cell::Num(*s), m]
        } else {
            vec![deg, Cell::Num(f.re), Cell::Num(f.im), Cell::Num(f.norm()), Cell::Num(*s), m]
        });
    }
    rep.diag("method", text(method.name()));
    kinematic_diagnostics(&mut rep, &kin, split);
    if let Some(d) = &p.series_diagnostics {
        rep.diag("series_terms", Cell::Int(d.terms as i64));
        rep.diag("series_residual", Cell::Num(d.max_residual));
        if let Some(sc) = &d.supercritical {
            rep.diag("supercritical_j", half(sc.channel.twice_j()));
            rep.diag("supercritical_re_s", Cell::Num(sc.s_value.re));
            rep.diag("supercritical_im_s", Cell::Num(sc.s_value.im));
            rep.diag("supercritical_abs_s", Cell::Num(sc.s_value.norm()));
        }
    }
    Ok(rep)
}

fn bound_states(spec: &RunSpec) -> Result<Report> {
    let split = spec.config()?.split();
    let levels = spectrum(spec.n_max, spec.channel_cutoff, split, spec.gamma, 1.0)?;
    let mut rep = Report::new(&["n", "j", "energy", "binding", "degeneracy"]);
    for l in levels {
        rep.rows.push(vec![
            Cell::Int(l.n as i64),
            half(l.channel.twice_j()),
            Cell::Num(l.energy),
            Cell::Num(1.0 - l.energy),
            Cell::Int(l.degeneracy as i64),
        ]);
    }
    rep.diag("m0", Cell::Int(split.m0));
    rep.diag("nu", Cell::Num(split.nu));
    Ok(rep)
}

struct Check {
    name: &'static str,
    deviation: Option<f64>,
    tolerance: Option<f64>,
    note: String,
}

/// `max |a - b| / max |b|` over paired samples (absolute if `b` vanishes).
fn profile_deviation(a: &[Complex64], b: &[Complex64]) -> f64 {
    let scale = b.iter().map(|x| x.norm()).fold(0.0, f64::max);
    let d = a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    if scale > 0.0 {
        d / scale
    } else {
        d
    }
}

fn validate(spec: &RunSpec) -> Result<Report> {
    let kin = spec.kin()?;
    let split = spec.config()?.split();
    let grid = spec.grid()?;
    let accel = spec.accel()?;
    let mut checks = Vec::new();

    // unitarity of the exact S over subcritical channels
    let mut worst: f64 = 0.0;
    for ch in spec.channels() {
        if let Ok(ChannelExponent::Subcritical { .. }) = channel_exponent(ch, split, spec.gamma) {
            let r = s_channel(ch, &kin, split, spec.gamma)?;
            worst = worst.max((r.s_value.norm() - 1.0).abs());
        }
    }
    checks.push(Check { name: "unitarity", deviation: Some(worst), tolerance: Some(TOL_UNITARITY), note: String::new() });

    // Abel-summed small-coupling series against f0 + f1
    let series = amplitude_series_approx(&kin, split, &grid, &accel)?;
    let closed = amplitude_closed_generic(&kin, split.nu, &grid, &accel)?;
    checks.push(Check {
        name: "resummation_identity",
        deviation: Some(profile_deviation(&series.f_values, &closed.f_values)),
        tolerance: Some(TOL_RESUMMATION),
        note: String::new(),
    });

    // one- and two-hypergeometric forms of f0 and f1
    let mut dual: f64 = 0.0;
    let corner = kin.beta == 0.0 && split.nu == 0.5;
    for &t in grid.values() {
        let a = amplitude_closed_f0(t, split.nu, kin.beta, kin.k, &accel)?;
        let b = amplitude_f0_two_series(t, split.nu, kin.beta, kin.k, &accel)?;
        dual = dual.max((a - b).norm() / b.norm().max(f64::MIN_POSITIVE));
        if !corner {
            let a = amplitude_closed_f1(t, split.nu, kin.beta, kin.beta_prime, kin.k, &accel)?;
            let b = amplitude_f1_two_series(t, split.nu, kin.beta, kin.beta_prime, kin.k, &accel)?;
            if b.norm() > 0.0 {
                dual = dual.max((a - b).norm() / b.norm());
            }
        }
    }
    checks.push(Check { name: "dual_form_identity", deviation: Some(dual), tolerance: Some(TOL_DUAL_FORM), note: String::new() });

    // ODE oracle
    if spec.gamma == 0.0 {
        checks.push(Check { name: "ode_vs_exact", deviation: None, tolerance: Some(TOL_ODE), note: "skipped: gamma = 0".into() });
    } else {
        let mut worst: f64 = 0.0;
        let mut used = 0;
        let cut = spec.channel_cutoff.min(ODE_TWICE_J_MAX);
        for two_j in (-cut..=cut).step_by(2) {
            let ch = Channel::new((two_j - 1) / 2);
            if !matches!(channel_exponent(ch, split, spec.gamma), Ok(ChannelExponent::Subcritical { .. })) {
                continue;
            }
            let m = ode_s_matrix(ch, &kin, split, spec.gamma, &OdeConfig::default())?;
            let e = s_channel(ch, &kin, split, spec.gamma)?.s_value;
            worst = worst.max((m.s_extracted - e).norm());
            used += 1;
        }
        checks.push(Check {
            name: "ode_vs_exact",
            deviation: Some(worst),
            tolerance: Some(TOL_ODE),
            note: format!("{used} channels"),
        });
    }

    // closed form against the exact series, informational
    let method = match split.nu {
        0.0 => AmplitudeMethod::ClosedNu0,
        0.5 => AmplitudeMethod::ClosedNuHalf,
        _ => AmplitudeMethod::ClosedGeneric,
    };
    let info = compute_profile(spec, AmplitudeMethod::SeriesExact)
        .and_then(|s| compute_profile(spec, method).map(|c| profile_deviation(&s.f_values, &c.f_values)));
    checks.push(match info {
        Ok(d) => Check { name: "closed_vs_series", deviation: Some(d), tolerance: None, note: method.name().into() },
        Err(e) => Check { name: "closed_vs_series", deviation: None, tolerance: None, note: format!("skipped: {e}") },
    });

    let mut rep = Report::new(&["check", "max_deviation", "tolerance", "status", "note"]);
    for c in checks {
        let status = match (c.deviation, c.tolerance) {
            (None, _) => "skipped",
            (Some(_), None) => "info",
            (Some(d), Some(t)) if d <= t => "pass",
            _ => {
                rep.breach = true;
                "fail"
            }
        };
        rep.rows.push(vec![
            text(c.name),
            c.deviation.map_or(Cell::Null, Cell::Num),
            c.tolerance.map_or(Cell::Null, Cell::Num),
            text(status),
            text(&c.note),
        ]);
    }
    kinematic_diagnostics(&mut rep, &kin, split);
    Ok(rep)
}

#[derive(Debug, Parser)]
#[command(name = "abc-scatter", version, about = "Relativistic Aharonov-Bohm-Coulomb scattering in two dimensions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Per-channel S-matrix elements and phase shifts
    PhaseShifts(CliArgs),
    /// Scattering amplitude on an angular grid
    Amplitude(CliArgs),
    /// Differential cross section on an angular grid
    CrossSection(CliArgs),
    /// Bound-state levels
    BoundStates(CliArgs),
    /// Cross-checks between independent evaluation routes
    Validate(CliArgs),
}

#[derive(Debug, Args)]
pub struct CliArgs {
    /// Coupling gamma, |gamma| < 1/2
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: f64,
    /// Flux parameter alpha
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub alpha: f64,
    /// Energy in units of the rest energy
    #[arg(long, default_value_t = 1.25)]
    pub energy: f64,
    /// Angular grid min:max:count in degrees
    #[arg(long, default_value = "30:180:16", value_parser = parse_theta)]
    pub theta: (f64, f64, usize),
    /// Forward cone excluded from angular grids, degrees
    #[arg(long, default_value_t = 5.0)]
    pub theta_min: f64,
    /// Channel cutoff |j| <= jmax, e.g. 5/2
    #[arg(long, default_value = "11/2", value_parser = parse_half_odd)]
    pub jmax: i64,
    /// Largest radial quantum number for bound-states
    #[arg(long, default_value_t = 3)]
    pub nmax: u32,
    #[arg(long, value_enum, default_value_t = MethodChoice::Auto)]
    pub method: MethodChoice,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
}

impl CliCommand {
    pub fn into_spec(self) -> (RunSpec, Command) {
        let (cmd, a) = match self {
            CliCommand::PhaseShifts(a) => (Command::PhaseShifts, a),
            CliCommand::Amplitude(a) => (Command::Amplitude, a),
            CliCommand::CrossSection(a) => (Command::CrossSection, a),
            CliCommand::BoundStates(a) => (Command::BoundStates, a),
            CliCommand::Validate(a) => (Command::Validate, a),
        };
        let spec = RunSpec {
            gamma: a.gamma,
            alpha: a.alpha,
            energy_over_mc2: a.energy,
            theta_grid: a.theta,
            theta_min_deg: a.theta_min,
            channel_cutoff: a.jmax,
            n_max: a.nmax,
            method: a.method,
            output_format: a.format,
        };
        (spec, cmd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> RunSpec {
        RunSpec::default()
    }

    #[test]
    fn half_odd_parsing() {
        assert_eq!(parse_half_odd("5/2"), Ok(5));
        assert_eq!(parse_half_odd("2.5"), Ok(5));
        assert_eq!(parse_half_odd("-1/2"), Ok(-1));
        assert!(parse_half_odd("2").is_err());
        assert!(parse_half_odd("4/2").is_err());
        assert!(parse_half_odd("5/3").is_err());
        assert_eq!(parse_theta("30:180:16"), Ok((30.0, 180.0, 16)));
        assert!(parse_theta("30:180").is_err());
    }

    #[test]
    fn cross_section_table() {
        let out = run(&spec(), Command::CrossSection);
        assert_eq!(out.exit_code, 0, "{}", out.stderr);
        let lines: Vec<&str> = out.stdout.lines().collect();
        assert_eq!(lines[0], "theta_deg,sigma,method");
        assert_eq!(lines.len(), 17);
        assert!(lines[1..].iter().all(|l| l.ends_with(",ClosedNu0")));
        assert!(lines[1].starts_with("3.00000000000000e1,"));
    }

    #[test]
    fn json_and_csv_carry_the_same_numbers() {
        let mut s = spec();
        s.alpha = 0.5;
        let csv = run(&s, Command::Amplitude);
        s.output_format = OutputFormat::Json;
        let js = run(&s, Command::Amplitude);
        let doc: Value = serde_json::from_str(&js.stdout).unwrap();
        let rows = doc["rows"].as_array().unwrap();
        for (line, row) in csv.stdout.lines().skip(1).zip(rows) {
            let cells: Vec<&str> = line.split(',').collect();
            assert_eq!(cells[1].parse::<f64>().unwrap(), row["re_f"].as_f64().unwrap());
            assert_eq!(cells[4].parse::<f64>().unwrap(), row["sigma"].as_f64().unwrap());
            assert_eq!(cells[5], row["method"].as_str().unwrap());
        }
        assert!(doc["spec"].is_object() && doc["diagnostics"].is_object());
    }

    #[test]
    fn exit_codes() {
        let mut s = spec();
        s.gamma = 0.7;
        assert_eq!(run(&s, Command::PhaseShifts).exit_code, EXIT_INVALID);
        let mut s = spec();
        s.energy_over_mc2 = 1.0;
        let out = run(&s, Command::Amplitude);
        assert_eq!(out.exit_code, EXIT_INVALID);
        assert!(out.stdout.is_empty());
        let mut s = spec();
        s.theta_grid = (1.0, 90.0, 5);
        assert_eq!(run(&s, Command::CrossSection).exit_code, EXIT_INVALID);
        // starved summation budget
        let mut s = spec();
        s.alpha = 0.2;
        s.theta_grid = (90.0, 90.0, 1);
        let kin = s.kin().unwrap();
        let grid = s.grid().unwrap();
        let cfg = AccelConfig::new(64, vec![0.9, 0.99], 1e-8).unwrap();
        let err = amplitude_series(&kin, s.config().unwrap().split(), s.gamma, &grid, &cfg).unwrap_err();
        assert!(err.is_numerical());
    }

    #[test]
    fn bound_states_table() {
        let mut s = spec();
        s.gamma = 0.1;
        s.channel_cutoff = 5;
        let out = run(&s, Command::BoundStates);
        assert_eq!(out.exit_code, 0);
        let first = out.stdout.lines().nth(1).unwrap();
        assert!(first.starts_with("0,1/2,9.79795897113271e-1,"), "{first}");
    }

    #[test]
    fn method_selection() {
        let s = spec();
        assert_eq!(select_method(&s, 0.0), AmplitudeMethod::ClosedNu0);
        assert_eq!(select_method(&s, 0.5), AmplitudeMethod::ClosedNuHalf);
        assert_eq!(select_method(&s, 0.2), AmplitudeMethod::SeriesExact);
        let mut s = spec();
        s.method = MethodChoice::Closed;
        assert_eq!(select_method(&s, 0.2), AmplitudeMethod::ClosedGeneric);
        s.method = MethodChoice::Series;
        assert_eq!(select_method(&s, 0.0), AmplitudeMethod::SeriesExact);
    }

    #[test]
    fn near_critical_warning() {
        let mut s = spec();
        s.alpha = 0.45;
        s.gamma = 0.1;
        s.theta_grid = (90.0, 90.0, 1);
        let out = run(&s, Command::Amplitude);
        assert_eq!(out.exit_code, 0, "{}", out.stderr);
        assert!(out.stderr.contains("warning: channel j = -1/2 is supercritical"));
    }

    #[test]
    fn phase_shift_rows() {
        let mut s = spec();
        s.alpha = 0.5;
        s.channel_cutoff = 3;
        let out = run(&s, Command::PhaseShifts);
        assert_eq!(out.exit_code, 0);
        let lines: Vec<&str> = out.stdout.lines().collect();
        assert_eq!(lines.len(), 5);
        let sc = lines.iter().find(|l| l.starts_with("-1/2,")).unwrap();
        assert!(sc.contains(",supercritical,") && sc.contains(",,SupercriticalMean,"), "{sc}");
        assert!(out.stderr.contains("j = -1/2 is supercritical"), "{}", out.stderr);
    }
}
