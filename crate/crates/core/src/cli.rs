//! The `ultraspec` command line: `spectrum`, `verify`, `simulate` and `sweep`.
//!
//! Settings come from flags, then from an optional TOML file given with
//! `--config`, then from built-in defaults. `--show-config` prints the
//! resolved settings instead of running. The `APP_THREADS` environment
//! variable caps the worker threads used by simulations.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hiermat::{CoeffForm, HierParams, DEFAULT_DENSE_CAP};
use crate::noise::{
    beta_sweep, simulate_full_cycle, simulate_histogram, write_sweep_csv, BetaGrid, DiscState, Frame, MomentReport,
    NoiseModel, SweepOptions,
};
use crate::oracle::{verify_spectrum, VerificationReport, Which};
use crate::spectra::{spectrum_q, spectrum_qrect, spectrum_qrect_power, SpectrumReport};

const THREADS_VAR: &str = "APP_THREADS";
const DEFAULT_BETA: &str = "1";
const DEFAULT_GRID: &str = "0.1:8:80:log";

#[derive(Debug, Parser)]
#[command(
    name = "ultraspec",
    version,
    about = "Spectra of hierarchical matrices and the rotating-disc error model"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form spectrum of Q, (T·Q)^r or T·Q
    Spectrum(Flags),
    /// Check a closed-form spectrum against dense linear algebra
    Verify(Flags),
    /// Monte Carlo moments of the error count after one full turn
    Simulate(Flags),
    /// Boltzmann moments across a grid of inverse temperatures
    Sweep(Flags),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Spectrum,
    Verify,
    Simulate,
    Sweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Default, Args)]
struct Flags {
    #[arg(short = 'p', long)]
    p: Option<usize>,
    #[arg(short = 'r', long)]
    r: Option<usize>,
    /// Comma-separated coefficients, or `boltzmann:BETA`
    #[arg(long, allow_hyphen_values = true)]
    coeffs: Option<String>,
    /// Form of `--coeffs`: a, q, b or c
    #[arg(long)]
    form: Option<String>,
    /// Boltzmann noise at BETA, or a grid START:STOP:POINTS[:linear|log] for `sweep`
    #[arg(long, visible_alias = "beta")]
    boltzmann: Option<String>,
    /// Operator: Q, Qr (= (T·Q)^r) or Qrect (= T·Q)
    #[arg(long)]
    which: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<u64>,
    /// Initial disc content for `simulate`, e.g. 0110
    #[arg(long)]
    initial: Option<String>,
    /// Frame in which `simulate` places the noise zone
    #[arg(long, value_enum)]
    frame: Option<Frame>,
    /// Largest p^r handled by dense and exact-oracle code
    #[arg(long)]
    dense_cap: Option<usize>,
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// TOML file with any of the settings above
    #[arg(long)]
    config: Option<PathBuf>,
    /// Print the resolved settings and exit
    #[arg(long)]
    show_config: bool,
}

impl clap::ValueEnum for Frame {
    fn value_variants<'a>() -> &'a [Self] {
        &[Frame::Lab, Frame::Disc]
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(match self {
            Frame::Lab => "lab",
            Frame::Disc => "disc",
        }))
    }
}

/// Settings as read from a `--config` file. Every key is optional.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    p: Option<usize>,
    r: Option<usize>,
    coeffs: Option<Vec<f64>>,
    form: Option<CoeffForm>,
    boltzmann: Option<toml::Value>,
    which: Option<String>,
    seed: Option<u64>,
    trials: Option<u64>,
    initial: Option<String>,
    frame: Option<Frame>,
    dense_cap: Option<usize>,
    output: Option<PathBuf>,
    format: Option<Format>,
}

/// Coefficients of the operator or noise model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoeffSpec {
    Inline { values: Vec<f64>, form: CoeffForm },
    Boltzmann { beta: f64 },
    Grid(BetaGrid),
}

/// Fully resolved settings of one invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub p: usize,
    pub r: usize,
    pub coeffs: CoeffSpec,
    pub which: String,
    pub seed: u64,
    pub trials: u64,
    pub initial: Option<String>,
    pub frame: Frame,
    pub dense_cap: usize,
    pub output: Option<PathBuf>,
    pub format: Format,
}

fn parse_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::Usage(format!("cannot parse coefficient `{}`", x.trim())))
        })
        .collect()
}

fn parse_beta(s: &str) -> Result<f64> {
    s.trim()
        .parse()
        .map_err(|_| Error::Usage(format!("cannot parse beta `{s}`")))
}

/// `boltzmann:BETA`, `boltzmann:GRID` or a plain grid / β.
fn parse_boltzmann(s: &str, command: CommandKind) -> Result<CoeffSpec> {
    let s = s.strip_prefix("boltzmann:").unwrap_or(s);
    if s.contains(':') {
        let grid = s.parse::<BetaGrid>().map_err(|e| Error::Usage(e.to_string()))?;
        return Ok(CoeffSpec::Grid(grid));
    }
    let beta = parse_beta(s)?;
    if command == CommandKind::Sweep {
        let grid =
            BetaGrid::new(beta, beta, 1, crate::noise::Spacing::Linear).map_err(|e| Error::Usage(e.to_string()))?;
        return Ok(CoeffSpec::Grid(grid));
    }
    Ok(CoeffSpec::Boltzmann { beta })
}

impl RunConfig {
    fn resolve(command: CommandKind, flags: &Flags) -> Result<Self> {
        let file = match &flags.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)?;
                toml::from_str::<FileConfig>(&text).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))?
            }
            None => FileConfig::default(),
        };

        let form = match &flags.form {
            Some(f) => f.parse()?,
            None => file.form.unwrap_or(CoeffForm::A),
        };
        let flag_coeffs = match (&flags.coeffs, &flags.boltzmann) {
            (Some(_), Some(_)) => return Err(Error::Usage("give either --coeffs or --boltzmann, not both".into())),
            (Some(c), None) if c.starts_with("boltzmann:") => Some(parse_boltzmann(c, command)?),
            (Some(c), None) => Some(CoeffSpec::Inline {
                values: parse_list(c)?,
                form,
            }),
            (None, Some(b)) => Some(parse_boltzmann(b, command)?),
            (None, None) => None,
        };
        let coeffs = match flag_coeffs {
            Some(c) => c,
            None => match (file.coeffs, file.boltzmann) {
                (Some(_), Some(_)) => return Err(Error::Usage("config sets both coeffs and boltzmann".into())),
                (Some(values), None) => CoeffSpec::Inline { values, form },
                (None, Some(toml::Value::String(s))) => parse_boltzmann(&s, command)?,
                (None, Some(v)) => parse_boltzmann(&v.to_string(), command)?,
                (None, None) => parse_boltzmann(
                    match command {
                        CommandKind::Sweep => DEFAULT_GRID,
                        _ => DEFAULT_BETA,
                    },
                    command,
                )?,
            },
        };

        let config = Self {
            command,
            p: flags.p.or(file.p).unwrap_or(2),
            r: flags.r.or(file.r).unwrap_or(8),
            coeffs,
            which: flags.which.clone().or(file.which).unwrap_or_else(|| "Q".into()),
            seed: flags.seed.or(file.seed).unwrap_or(0),
            trials: flags.trials.or(file.trials).unwrap_or(100_000),
            initial: flags.initial.clone().or(file.initial),
            frame: flags.frame.or(file.frame).unwrap_or_default(),
            dense_cap: flags.dense_cap.or(file.dense_cap).unwrap_or(DEFAULT_DENSE_CAP),
            output: flags.output.clone().or(file.output),
            format: flags.format.or(file.format).unwrap_or(match command {
                CommandKind::Sweep => Format::Csv,
                _ => Format::Json,
            }),
        };
        config.check()?;
        Ok(config)
    }

    fn check(&self) -> Result<()> {
        self.which.parse::<Which>()?;
        match (&self.coeffs, self.command) {
            (CoeffSpec::Grid(_), CommandKind::Sweep) => Ok(()),
            (_, CommandKind::Sweep) => Err(Error::Usage(
                "sweep needs a beta grid, e.g. --boltzmann 0.1:8:80:log".into(),
            )),
            (CoeffSpec::Grid(_), _) => Err(Error::Usage("a beta grid is only accepted by sweep".into())),
            _ => Ok(()),
        }
    }

    fn params(&self) -> Result<HierParams> {
        let params = match &self.coeffs {
            CoeffSpec::Inline { values, form } => HierParams::new(self.p, self.r, values.clone(), *form)?,
            CoeffSpec::Boltzmann { beta } => NoiseModel::boltzmann(self.p, self.r, *beta)?.params(),
            CoeffSpec::Grid(_) => unreachable!("rejected by check"),
        };
        Ok(params.with_dense_cap(self.dense_cap))
    }

    fn model(&self) -> Result<NoiseModel> {
        match &self.coeffs {
            CoeffSpec::Inline { .. } => NoiseModel::new(self.p, self.r, self.params()?.a_coeffs()?),
            CoeffSpec::Boltzmann { beta } => NoiseModel::boltzmann(self.p, self.r, *beta),
            CoeffSpec::Grid(_) => unreachable!("rejected by check"),
        }
    }
}

/// Runs one resolved configuration, writing its result to `out`. Returns
/// `false` when a verification check failed.
pub fn run(config: &RunConfig, out: &mut dyn Write) -> Result<bool> {
    let mut ok = true;
    match config.command {
        CommandKind::Spectrum => {
            let params = config.params()?;
            let lines = match config.which.parse::<Which>()? {
                Which::Q => spectrum_q(&params)?,
                Which::QrectPower => spectrum_qrect_power(&params)?,
                Which::Qrect => spectrum_qrect(&params)?,
            };
            let report = SpectrumReport::new(&params, &lines);
            match config.format {
                Format::Json => write_json(out, &report)?,
                Format::Csv => write_csv(out, &report.lines)?,
            }
        }
        CommandKind::Verify => {
            let report: VerificationReport = verify_spectrum(&config.params()?, config.which.parse()?)?;
            ok = report.all_passed();
            match config.format {
                Format::Json => write_json(out, &report)?,
                Format::Csv => write_csv(out, &report.checks)?,
            }
        }
        CommandKind::Simulate => {
            let model = config.model()?;
            let initial = match &config.initial {
                Some(word) => DiscState::parse(config.p, word)?,
                None => DiscState::zeros(config.p, config.r),
            };
            let report = if config.frame == Frame::Lab {
                simulate_full_cycle(&model, &initial, config.seed, config.trials)?
            } else {
                let hist = simulate_histogram(&model, &initial, config.seed, config.trials, config.frame)?;
                MomentReport::from_histogram(&hist)
            };
            match config.format {
                Format::Json => write_json(out, &report)?,
                Format::Csv => write_csv(out, std::slice::from_ref(&report))?,
            }
        }
        CommandKind::Sweep => {
            let CoeffSpec::Grid(grid) = &config.coeffs else {
                unreachable!("rejected by check")
            };
            let opts = SweepOptions {
                p: config.p,
                r: config.r,
                n_trials: config.trials,
                seed: config.seed,
                exact_cap: config.dense_cap,
            };
            let rows = beta_sweep(grid, &opts)?;
            match config.format {
                Format::Json => write_json(out, &rows)?,
                Format::Csv => write_sweep_csv(&rows, &mut *out)?,
            }
        }
    }
    out.flush()?;
    Ok(ok)
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn write_csv<T: Serialize>(out: &mut dyn Write, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

fn configure_threads() -> Result<()> {
    let Some(value) = std::env::var_os(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = value
        .to_str()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Usage(format!("{THREADS_VAR} must be a positive integer")))?;
    // a pool may already exist when embedded; the setting is then ignored
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

fn execute(command: Command) -> Result<bool> {
    configure_threads()?;
    let (kind, flags) = match command {
        Command::Spectrum(f) => (CommandKind::Spectrum, f),
        Command::Verify(f) => (CommandKind::Verify, f),
        Command::Simulate(f) => (CommandKind::Simulate, f),
        Command::Sweep(f) => (CommandKind::Sweep, f),
    };
    let config = RunConfig::resolve(kind, &flags)?;
    if flags.show_config {
        let text = toml::to_string(&config).map_err(|e| Error::Usage(e.to_string()))?;
        print!("{text}");
        return Ok(true);
    }
    match &config.output {
        Some(path) => run(&config, &mut BufWriter::new(File::create(path)?)),
        None => run(&config, &mut io::stdout().lock()),
    }
}

/// Parses `args`, runs the command and returns the process exit code:
/// 0 on success, 1 on a numerical or domain error (or a failed
/// verification), 2 on a usage error.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli.command) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {}: {e}", e.name());
            if matches!(e, Error::Usage(_)) {
                2
            } else {
                1
            }
        }
    }
}
