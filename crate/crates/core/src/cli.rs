//! Command-line surface of the `gkstates` binary.
//!
//! Output is deterministic: floats in CSV use 17 significant digits, lines
//! end in LF, and JSON omits absent fields. Exit codes: 0 success, 2 usage
//! error, 1 numerical or I/O error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::coherent::build_state;
use crate::dynamics::{autocorrelation, detect_revivals, time_grid, timescales, RevivalEvent, Timescales};
use crate::error::Error;
use crate::spectrum::{ShapeInvarianceChain, SpectrumModel};
use crate::statistics::{distribution, solve_j, verify_measure_moments, WeightingDistribution};
use crate::wavefunctions::{coherent_density, deformation_mu, eigenfunction, hamiltonian_residual, GridSpec};

#[derive(Debug, Parser)]
#[command(name = "gkstates", version, about = "Gazeau-Klauder coherent states of nonlinear oscillators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelChoice {
    #[value(alias = "quasi-harmonic", alias = "qh")]
    Quasiharmonic,
    Morse,
    #[value(alias = "ml", alias = "mathewslakshmanan")]
    MathewsLakshmanan,
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Spectrum model.
    #[arg(long, value_enum)]
    pub model: ModelChoice,
    /// Energy scale α (quasi-harmonic and Mathews-Lakshmanan).
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    /// Nonlinearity υ of the quasi-harmonic model.
    #[arg(long)]
    pub upsilon: Option<f64>,
    /// Morse nonlinearity μ.
    #[arg(long)]
    pub mu: Option<f64>,
    /// Mathews-Lakshmanan parameter λ̃.
    #[arg(long = "lambda-tilde", allow_negative_numbers = true)]
    pub lambda_tilde: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    /// Action parameter J.
    #[arg(long = "J", alias = "j", conflicts_with = "n0", allow_negative_numbers = true)]
    pub j: Option<f64>,
    /// Target mean excitation n₀; J is solved for.
    #[arg(long)]
    pub n0: Option<f64>,
    /// Angle parameter γ.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub gamma: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energies Eₙ and dimensionless levels eₙ.
    Spectrum {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 20)]
        n_max: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Weighting distribution Pₙ.
    Dist {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Mean, variance and Mandel Q at one J or over a logarithmic J sweep.
    Moments {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, requires = "j_max")]
        j_min: Option<f64>,
        #[arg(long, requires = "j_min")]
        j_max: Option<f64>,
        #[arg(long, default_value_t = 50)]
        j_points: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// J giving mean excitation n₀.
    SolveJ {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        n0: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Autocorrelation A(t) on a uniform grid.
    Autocorr {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        grid: TimeArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Full and fractional revivals found in |A(t)|².
    Revivals {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        grid: TimeArgs,
        #[arg(long, default_value_t = 0.2)]
        threshold: f64,
        #[arg(long, default_value_t = 4)]
        q_max: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Position-space eigenfunction ψₙ(ϱ) of the quasi-harmonic model.
    Eigenfunction {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = crate::wavefunctions::DEFAULT_POINTS)]
        points: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Probability density of the evolved coherent state.
    Density {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        state: StateArgs,
        /// Time in absolute units.
        #[arg(long, conflicts_with = "t_rev", allow_negative_numbers = true)]
        t: Option<f64>,
        /// Time as a fraction of T_rev.
        #[arg(long, allow_negative_numbers = true)]
        t_rev: Option<f64>,
        #[arg(long, default_value_t = crate::wavefunctions::DEFAULT_POINTS)]
        points: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Resolution-of-unity moments ∫w̃(J)Jⁿ dJ against ρₙ.
    VerifyMeasure {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Levels from the shape-invariance chain next to the model levels.
    SiChain {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 20)]
        n_max: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Clone, Args)]
pub struct TimeArgs {
    /// Horizon in units of T_rev (10 T_cl when there is no revival time).
    #[arg(long, default_value_t = crate::dynamics::DEFAULT_HORIZON_REV)]
    pub tmax_rev: f64,
    #[arg(long, default_value_t = crate::dynamics::DEFAULT_SAMPLES_PER_TCL)]
    pub samples_per_tcl: usize,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Numeric(Error),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Numeric(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// JSON summary; absent quantities are omitted.
#[derive(Debug, Default, Serialize)]
struct Summary {
    #[serde(skip_serializing_if = "Option::is_none")]
    model: Option<SpectrumModel>,
    #[serde(rename = "J", skip_serializing_if = "Option::is_none")]
    j: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    gamma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mean: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    variance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mandel_q: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    t_classical: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    t_revival: Option<f64>,
}

impl Summary {
    fn with_moments(mut self, d: &WeightingDistribution) -> Self {
        self.mean = Some(d.mean);
        self.variance = Some(d.variance);
        self.mandel_q = Some(d.mandel_q);
        self
    }

    fn with_timescales(mut self, ts: &Timescales) -> Self {
        self.t_classical = Some(ts.t_classical);
        self.t_revival = ts.t_revival;
        self
    }
}

/// Summary plus command-specific payload.
#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    #[serde(flatten)]
    summary: Summary,
    #[serde(flatten)]
    extra: &'a T,
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// CSV with a header row; every cell is pre-formatted.
struct Table {
    text: String,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Self { text: format!("{}\n", header.join(",")) }
    }

    fn row(&mut self, cells: &[String]) {
        let _ = writeln!(self.text, "{}", cells.join(","));
    }
}

fn json<T: Serialize>(summary: Summary, extra: &T) -> String {
    let mut s = serde_json::to_string_pretty(&Report { summary, extra }).expect("plain data serialises");
    s.push('\n');
    s
}

fn build_model(args: &ModelArgs) -> CliResult<SpectrumModel> {
    let need = |v: Option<f64>, flag: &str| v.ok_or_else(|| CliError::Usage(format!("--{flag} is required for this model")));
    let model = match args.model {
        ModelChoice::Quasiharmonic => SpectrumModel::quasi_harmonic(args.alpha, need(args.upsilon, "upsilon")?)?,
        ModelChoice::Morse => SpectrumModel::morse(need(args.mu, "mu")?)?,
        ModelChoice::MathewsLakshmanan => {
            SpectrumModel::mathews_lakshmanan(args.alpha, need(args.lambda_tilde, "lambda-tilde")?)?
        }
    };
    Ok(model)
}

/// (J, n₀ if given) from exactly one of --J / --n0.
fn resolve_j(model: &SpectrumModel, state: &StateArgs) -> CliResult<(f64, Option<f64>)> {
    match (state.j, state.n0) {
        (Some(j), None) => Ok((j, None)),
        (None, Some(n0)) => Ok((solve_j(model, n0)?, Some(n0))),
        _ => Err(CliError::Usage("exactly one of --J and --n0 is required".into())),
    }
}

fn state_summary(model: &SpectrumModel, j: f64, gamma: f64, n0: Option<f64>) -> Summary {
    Summary { model: Some(*model), j: Some(j), gamma: Some(gamma), n0, ..Summary::default() }
}

fn execute(command: &Command, err: &mut dyn Write) -> CliResult<(String, Option<PathBuf>)> {
    let warn = |model: &SpectrumModel, err: &mut dyn Write| {
        for w in model.warnings() {
            let _ = writeln!(err, "warning: {w}");
        }
    };
    let (text, out) = match command {
        Command::Spectrum { model, n_max, output } => {
            let model = build_model(model)?;
            warn(&model, err);
            let top = model.n_max_valid().map_or(*n_max, |m| m.min(*n_max));
            let mut rows = Vec::new();
            for n in 0..=top {
                rows.push((n, model.energy(n)?, model.e_n(n)?));
            }
            let text = match output.format {
                Format::Csv => {
                    let mut t = Table::new(&["n", "E_n", "e_n"]);
                    for (n, e, d) in &rows {
                        t.row(&[n.to_string(), num(*e), num(*d)]);
                    }
                    t.text
                }
                Format::Json => {
                    #[derive(Serialize)]
                    struct Levels {
                        omega: f64,
                        ground_energy: f64,
                        #[serde(skip_serializing_if = "Option::is_none")]
                        n_max_valid: Option<usize>,
                        energies: Vec<f64>,
                        levels: Vec<f64>,
                    }
                    let extra = Levels {
                        omega: model.omega(),
                        ground_energy: model.ground_energy(),
                        n_max_valid: model.n_max_valid(),
                        energies: rows.iter().map(|r| r.1).collect(),
                        levels: rows.iter().map(|r| r.2).collect(),
                    };
                    json(Summary { model: Some(model), ..Summary::default() }, &extra)
                }
            };
            (text, output.out.clone())
        }
        Command::Dist { model, state, output } => {
            let model = build_model(model)?;
            warn(&model, err);
            let (j, n0) = resolve_j(&model, state)?;
            build_state(&model, j, state.gamma)?;
            let d = distribution(&model, j)?;
            let text = match output.format {
                Format::Csv => {
                    let mut t = Table::new(&["n", "P_n"]);
                    for (n, p) in d.probs.iter().enumerate() {
                        t.row(&[n.to_string(), num(*p)]);
                    }
                    t.text
                }
                Format::Json => {
                    #[derive(Serialize)]
                    struct Probs<'a> {
                        probs: &'a [f64],
                    }
                    json(state_summary(&model, j, state.gamma, n0).with_moments(&d), &Probs { probs: &d.probs })
                }
            };
            (text, output.out.clone())
        }
        Command::Moments { model, state, j_min, j_max, j_points, output } => {
            let model = build_model(model)?;
            warn(&model, err);
            let text = match (j_min, j_max) {
                (Some(lo), Some(hi)) => {
                    if state.j.is_some() || state.n0.is_some() {
                        return Err(CliError::Usage("a J sweep cannot be combined with --J or --n0".into()));
                    }
                    if !(*lo > 0.0 && hi > lo) || *j_points < 2 {
                        return Err(CliError::Usage("sweep needs 0 < j-min < j-max and j-points >= 2".into()));
                    }
                    let step = (hi / lo).ln() / (*j_points - 1) as f64;
                    let mut rows = Vec::new();
                    for k in 0..*j_points {
                        let j = if k + 1 == *j_points { *hi } else { lo * (step * k as f64).exp() };
                        let d = distribution(&model, j)?;
                        rows.push((j, d.mean, d.variance, d.mandel_q));
                    }
                    match output.format {
                        Format::Csv => {
                            let mut t = Table::new(&["J", "mean", "variance", "mandel_q"]);
                            for (j, m, v, q) in rows {
                                t.row(&[num(j), num(m), num(v), num(q)]);
                            }
                            t.text
                        }
                        Format::Json => {
                            #[derive(Serialize)]
                            struct Row {
                                #[serde(rename = "J")]
                                j: f64,
                                mean: f64,
                                variance: f64,
                                mandel_q: f64,
                            }
                            #[derive(Serialize)]
                            struct Sweep {
                                rows: Vec<Row>,
                            }
                            let rows = rows.into_iter().map(|(j, mean, variance, mandel_q)| Row { j, mean, variance, mandel_q }).collect();
                            json(Summary { model: Some(model), ..Summary::default() }, &Sweep { rows })
                        }
                    }
                }
                _ => {
                    let (j, n0) = resolve_j(&model, state)?;
                    let d = distribution(&model, j)?;
                    let summary = state_summary(&model, j, state.gamma, n0).with_moments(&d);
                    match output.format {
                        Format::Csv => {
                            let mut t = Table::new(&["J", "mean", "variance", "mandel_q"]);
                            t.row(&[num(j), num(d.mean), num(d.variance), num(d.mandel_q)]);
                            t.text
                        }
                        Format::Json => json(summary, &()),
                    }
                }
            };
            (text, output.out.clone())
        }
        Command::SolveJ { model, n0, output } => {
            let model = build_model(model)?;
            warn(&model, err);
            let j = solve_j(&model, *n0)?;
            let text = match output.format {
                Format::Csv => format!("{}\n", num(j)),
                Format::Json => {
                    let d = distribution(&model, j)?;
                    json(state_summary(&model, j, 0.0, Some(*n0)).with_moments(&d), &())
                }
            };
            (text, output.out.clone())
        }
        Command::Autocorr { model, state, grid, output } => {
            let model = build_model(model)?;
            warn(&model, err);
            let (j, n0) = resolve_j(&model, state)?;
            let s = build_state(&model, j, state.gamma)?;
            let mean = s.probabilities().iter().enumerate().map(|(n, p)| n as f64 * p).sum::<f64>();
            let ts = timescales(&model, n0.unwrap_or(mean))?;
            let times = grid_for(&ts, grid)?;
            let series = autocorrelation(&s, &times, Some(n0.unwrap_or(mean)))?;
            let text = match output.format {
                Format::Csv => {
                    let mut t = Table::new(&["t", "tau", "re_A", "im_A", "abs2_A", "tau_cl"]);
                    for (time, a) in series.times.iter().zip(&series.values) {
                        t.row(&[
                            num(*time),
                            num(series.tau(*time)),
                            num(a.re),
                            num(a.im),
                            num(a.norm_sqr()),
                            num(series.tau_classical(*time)),
                        ]);
                    }
                    t.text
                }
                Format::Json => {
                    #[derive(Serialize)]
                    struct Series {
                        t: Vec<f64>,
                        tau: Vec<f64>,
                        re_a: Vec<f64>,
                        im_a: Vec<f64>,
                        abs2_a: Vec<f64>,
                    }
                    let extra = Series {
                        tau: series.times.iter().map(|t| series.tau(*t)).collect(),
                        t: series.times.clone(),
                        re_a: series.values.iter().map(|a| a.re).collect(),
                        im_a: series.values.iter().map(|a| a.im).collect(),
                        abs2_a: series.abs2(),
                    };
                    let d = distribution(&model, j)?;
                    json(state_summary(&model, j, state.gamma, n0).with_moments(&d).with_timescales(&ts), &extra)
                }
            };
            (text, output.out.clone())
        }
        Command::Revivals { model, state, grid, threshold, q_max, output } => {
            let model = build_model(model)?;
            warn(&model, err);
            let (j, n0) = resolve_j(&model, state)?;
            let s = build_state(&model, j, state.gamma)?;
            let mean = s.probabilities().iter().enumerate().map(|(n, p)| n as f64 * p).sum::<f64>();
            let ts = timescales(&model, n0.unwrap_or(mean))?;
            let times = grid_for(&ts, grid)?;
            let series = autocorrelation(&s, &times, Some(n0.unwrap_or(mean)))?;
            let events = detect_revivals(&series, *threshold, *q_max)?;
            let text = match output.format {
                Format::Csv => {
                    let mut t = Table::new(&["time", "tau", "abs2", "p", "q"]);
                    for e in &events {
                        let (p, q) = e.label.map_or((String::new(), String::new()), |(p, q)| (p.to_string(), q.to_string()));
                        t.row(&[num(e.time), num(e.tau), num(e.amplitude_sq), p, q]);
                    }
                    t.text
                }
                Format::Json => {
                    #[derive(Serialize)]
                    struct Events<'a> {
                        events: &'a [RevivalEvent],
                    }
                    json(state_summary(&model, j, state.gamma, n0).with_timescales(&ts), &Events { events: &events })
                }
            };
            (text, output.out.clone())
        }
        Command::Eigenfunction { model, n, points, output } => {
            let model = build_model(model)?;
            warn(&model, err);
            let grid = GridSpec::new(deformation_mu(&model)?, *points, 1e-6 / deformation_mu(&model)?)?;
            let psi = eigenfunction(*n, &model, &grid)?;
            let text = match output.format {
                Format::Csv => two_columns("rho", "psi", &psi.x, &psi.values),
                Format::Json => {
                    #[derive(Serialize)]
                    struct Eigen<'a> {
                        n: usize,
                        mu: f64,
                        energy: f64,
                        #[serde(skip_serializing_if = "Option::is_none")]
                        residual: Option<f64>,
                        rho: &'a [f64],
                        psi: &'a [f64],
                    }
                    let residual = hamiltonian_residual(*n, &model, &grid).ok();
                    let extra = Eigen { n: *n, mu: grid.mu(), energy: model.energy(*n)?, residual, rho: &psi.x, psi: &psi.values };
                    json(Summary { model: Some(model), ..Summary::default() }, &extra)
                }
            };
            (text, output.out.clone())
        }
        Command::Density { model, state, t, t_rev, points, output } => {
            let model = build_model(model)?;
            warn(&model, err);
            let mu = deformation_mu(&model)?;
            let (j, n0) = resolve_j(&model, state)?;
            let s = build_state(&model, j, state.gamma)?;
            let time = match (t, t_rev) {
                (Some(t), _) => *t,
                (None, Some(f)) => {
                    let ts = timescales(&model, n0.unwrap_or(0.0))?;
                    let tr = ts.t_revival.ok_or_else(|| CliError::Usage("--t-rev needs a model with a revival time".into()))?;
                    f * tr
                }
                (None, None) => 0.0,
            };
            let grid = GridSpec::new(mu, *points, 1e-6 / mu)?;
            let density = coherent_density(&s, &grid, time)?;
            let text = match output.format {
                Format::Csv => two_columns("rho", "density", &density.x, &density.values),
                Format::Json => {
                    #[derive(Serialize)]
                    struct Density<'a> {
                        t: f64,
                        rho: &'a [f64],
                        density: &'a [f64],
                    }
                    json(state_summary(&model, j, state.gamma, n0), &Density { t: time, rho: &density.x, density: &density.values })
                }
            };
            (text, output.out.clone())
        }
        Command::VerifyMeasure { model, n_max, output } => {
            let model = build_model(model)?;
            warn(&model, err);
            let check = verify_measure_moments(&model, *n_max)?;
            let worst = check.reduction.points.iter().map(|p| p.rel_err).fold(0.0, f64::max);
            let verdict = if check.reduction.passed { "passed" } else { "FAILED" };
            let _ = writeln!(err, "Bessel reduction of the Meijer G weight: {verdict} (max rel err {worst:.3e})");
            let text = match output.format {
                Format::Csv => {
                    let mut t = Table::new(&["n", "lhs", "rhs", "rel_err", "quadrature_estimate"]);
                    for r in &check.rows {
                        t.row(&[r.n.to_string(), num(r.lhs), num(r.rhs), num(r.rel_err), num(r.quadrature_estimate)]);
                    }
                    t.text
                }
                Format::Json => json(Summary { model: Some(model), ..Summary::default() }, &check),
            };
            (text, output.out.clone())
        }
        Command::SiChain { model, n_max, output } => {
            let model = build_model(model)?;
            warn(&model, err);
            let chain = match model {
                SpectrumModel::Morse { mu } => ShapeInvarianceChain::morse(mu),
                _ => match model.as_quasi_harmonic() {
                    Some((_, u)) => ShapeInvarianceChain::quasi_harmonic(u),
                    None => return Err(CliError::Numeric(Error::Unsupported(format!("no shape-invariance chain for {model}")))),
                },
            };
            let levels = chain.spectrum(*n_max)?;
            let text = match output.format {
                Format::Csv => {
                    let mut t = Table::new(&["n", "si_level", "e_n", "abs_diff"]);
                    for (n, l) in levels.iter().enumerate() {
                        let e = model.e_n(n)?;
                        t.row(&[n.to_string(), num(*l), num(e), num((l - e).abs())]);
                    }
                    t.text
                }
                Format::Json => {
                    #[derive(Serialize)]
                    struct Chain {
                        si_levels: Vec<f64>,
                        levels: Vec<f64>,
                    }
                    let model_levels = (0..=*n_max).map(|n| model.e_n(n)).collect::<Result<Vec<_>, _>>()?;
                    json(Summary { model: Some(model), ..Summary::default() }, &Chain { si_levels: levels, levels: model_levels })
                }
            };
            (text, output.out.clone())
        }
    };
    Ok((text, out))
}

fn grid_for(ts: &Timescales, args: &TimeArgs) -> CliResult<Vec<f64>> {
    if !(args.tmax_rev > 0.0) || args.samples_per_tcl == 0 {
        return Err(CliError::Usage("--tmax-rev must be > 0 and --samples-per-tcl >= 1".into()));
    }
    let horizon = match ts.t_revival {
        Some(tr) => args.tmax_rev * tr,
        None => crate::dynamics::FALLBACK_HORIZON_CL * ts.t_classical,
    };
    Ok(time_grid(ts.t_classical, args.samples_per_tcl, horizon)?)
}

fn two_columns(a: &str, b: &str, x: &[f64], y: &[f64]) -> String {
    let mut t = Table::new(&[a, b]);
    for (u, v) in x.iter().zip(y) {
        t.row(&[num(*u), num(*v)]);
    }
    t.text
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    2
                }
            };
        }
    };
    let result = execute(&cli.command, err).and_then(|(text, path)| {
        match path {
            Some(p) => std::fs::write(p, text.as_bytes())?,
            None => out.write_all(text.as_bytes())?,
        }
        Ok(())
    });
    match result {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}\n\nFor more information, try '--help'.");
            2
        }
        Err(CliError::Numeric(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
        // A closed downstream pipe (e.g. `| head`) is not a failure.
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
