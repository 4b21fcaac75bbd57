//! `qwalk`: run quantum-walk experiments and write CSV/JSON results.

mod commands;
mod output;
mod settings;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;
use settings::*;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(name = "qwalk", version, about = "Discrete-time topological quantum walk experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// TOML settings file; flags override its values
    #[arg(long)]
    config: Option<PathBuf>,
    /// Directory receiving every output file
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// Read angle flags as multiples of pi
    #[arg(long)]
    pi_units: bool,
    /// Print the resolved settings as TOML and exit
    #[arg(long)]
    dump_config: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evolve a walker and write its trajectory
    Simulate {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        args: SimulateArgs,
    },
    /// Quasienergy spectra of cycles, defects and wires
    Spectrum {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        args: SpectrumArgs,
    },
    /// Rabi transport between the ends of a clean wire
    Rabi {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        args: RabiArgs,
    },
    /// Gap energy against wire length
    GapScaling {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        args: GapScalingArgs,
    },
    /// Compare the closed-form wire spectrum with diagonalization
    AnalyticCheck {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        args: AnalyticCheckArgs,
    },
    /// Rabi transport on wires with random bulk coins
    Disorder {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        args: DisorderArgs,
    },
}

/// Failure of a run, mapped onto the process exit code.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numerical(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Numerical(_) => "numerical",
            CliError::Io(_) => "io",
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Numerical(m) | CliError::Io(m) => m,
        }
    }
}

impl From<qwalk::Error> for CliError {
    fn from(e: qwalk::Error) -> Self {
        if e.is_input_error() {
            CliError::Config(e.to_string())
        } else {
            CliError::Numerical(e.to_string())
        }
    }
}

#[derive(Serialize)]
struct ErrorRecord<'a> {
    status: &'a str,
    kind: &'a str,
    exit_code: i32,
    message: &'a str,
}

fn report(err: &CliError, out_dir: Option<&Path>) -> i32 {
    let record = ErrorRecord { status: "error", kind: err.kind(), exit_code: err.exit_code(), message: err.message() };
    if let Ok(text) = output::to_json(&record) {
        eprint!("{text}");
        if let Some(dir) = out_dir.filter(|d| d.is_dir()) {
            let _ = std::fs::write(dir.join("error.json"), text);
        }
    }
    err.exit_code()
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("QWALK_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Config(format!("QWALK_THREADS must be a positive integer, got {value:?}")))?;
    // a second build in the same process (tests) is harmless
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn load<S: DeserializeOwned + Default>(path: Option<&Path>) -> Result<S, CliError> {
    let Some(path) = path else {
        return Ok(S::default());
    };
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

fn execute<S, A, R>(common: &Common, apply: A, run: R) -> Result<(), CliError>
where
    S: Serialize + DeserializeOwned + Default,
    A: FnOnce(&mut S, f64),
    R: FnOnce(&S, &Path) -> Result<(), CliError>,
{
    let mut settings: S = load(common.config.as_deref())?;
    apply(&mut settings, if common.pi_units { std::f64::consts::PI } else { 1.0 });
    if common.dump_config {
        let text = toml::to_string(&settings).map_err(|e| CliError::Io(e.to_string()))?;
        print!("{text}");
        return Ok(());
    }
    std::fs::create_dir_all(&common.out_dir)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", common.out_dir.display())))?;
    run(&settings, &common.out_dir)
}

/// Parses `argv`, runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    0
                }
                _ => {
                    let _ = e.print();
                    let text = e.to_string();
                    let first = text.lines().next().unwrap_or_default().trim_start_matches("error: ");
                    report(&CliError::Config(first.to_string()), None)
                }
            };
        }
    };
    if let Err(e) = configure_threads() {
        return report(&e, None);
    }
    let (common, result) = match &cli.command {
        Command::Simulate { common, args } => {
            (common, execute::<SimulateSettings, _, _>(common, |s, u| args.apply(s, u), commands::simulate))
        }
        Command::Spectrum { common, args } => {
            (common, execute::<SpectrumSettings, _, _>(common, |s, u| args.apply(s, u), commands::spectrum))
        }
        Command::Rabi { common, args } => {
            (common, execute::<RabiSettings, _, _>(common, |s, u| args.apply(s, u), commands::rabi))
        }
        Command::GapScaling { common, args } => {
            (common, execute::<GapScalingSettings, _, _>(common, |s, u| args.apply(s, u), commands::gap_scaling))
        }
        Command::AnalyticCheck { common, args } => (
            common,
            execute::<AnalyticCheckSettings, _, _>(common, |s, u| args.apply(s, u), commands::analytic_check),
        ),
        Command::Disorder { common, args } => {
            (common, execute::<DisorderSettings, _, _>(common, |s, u| args.apply(s, u), commands::disorder))
        }
    };
    match result {
        Ok(()) => 0,
        Err(e) => report(&e, Some(&common.out_dir)),
    }
}

fn main() {
    std::process::exit(run(std::env::args_os()));
}
