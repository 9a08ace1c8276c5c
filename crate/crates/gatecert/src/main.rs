//! Command-line front end. All logic lives in the library; this file parses
//! flags, dispatches, prints and maps errors to exit codes (0 success,
//! 1 verification failure, 2 usage error).

use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};

use gatecert::cli::{self, GateSpec, SweepSpec};
use gatecert::gates::GateName;
use gatecert::qcore::PureState;
use gatecert::{Error, Result};

#[derive(Parser)]
#[command(
    name = "gatecert",
    version,
    about = "Single-copy certification of two-qubit gates under depolarizing noise"
)]
struct Cli {
    /// Cap the worker thread count (results do not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[command(group(ArgGroup::new("gatespec").required(true).args(["gate", "gate_file"])))]
struct GateArgs {
    /// Named gate: cnot, swap, cz, iswap or identity.
    #[arg(long)]
    gate: Option<String>,

    /// JSON gate file {"matrix": [[[re,im],...],...]}, row-major, 4x4.
    #[arg(long)]
    gate_file: Option<PathBuf>,
}

impl GateArgs {
    fn spec(&self) -> Result<GateSpec> {
        match (&self.gate, &self.gate_file) {
            (Some(name), None) => Ok(GateSpec::Named(name.parse::<GateName>()?)),
            (None, Some(path)) => Ok(GateSpec::File(path.clone())),
            _ => Err(Error::Usage("exactly one of --gate/--gate-file is required".into())),
        }
    }
}

fn parse_input(value: Option<&String>) -> Result<Option<PureState>> {
    value.map(|bits| cli::parse_basis_input(bits)).transpose()
}

#[derive(Subcommand)]
enum Command {
    /// Guessing probability three ways: closed form, Helstrom bound, exact LOCC.
    Pguess {
        #[command(flatten)]
        gate: GateArgs,
        /// Prior probability that the noisy channel acted.
        #[arg(long)]
        q: f64,
        /// Depolarizing noise fraction.
        #[arg(long)]
        p: f64,
        /// Basis-state input (00, 01, 10, 11) instead of the constructed one.
        #[arg(long)]
        input: Option<String>,
        /// Machine-readable output.
        #[arg(long)]
        json: bool,
    },
    /// Monte Carlo certification run; prints a JSON report.
    Certify {
        #[command(flatten)]
        gate: GateArgs,
        #[arg(long)]
        q: f64,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        /// Monte Carlo seed; falls back to GATECERT_SEED, then 0.
        #[arg(long, env = "GATECERT_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        input: Option<String>,
    },
    /// Guessing-probability curve over a range of noise fractions; prints CSV.
    Sweep {
        #[command(flatten)]
        gate: GateArgs,
        #[arg(long, default_value_t = 0.5)]
        q: f64,
        #[arg(long, default_value_t = 0.0)]
        p_start: f64,
        #[arg(long, default_value_t = 1.0)]
        p_end: f64,
        #[arg(long, default_value_t = 0.1)]
        p_step: f64,
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, env = "GATECERT_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        input: Option<String>,
        /// CSV output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate a noisy-channel run (q = 1) and estimate the noise fraction.
    Estimate {
        #[command(flatten)]
        gate: GateArgs,
        /// Noise fraction used in the simulation.
        #[arg(long)]
        p_true: f64,
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, env = "GATECERT_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Canonical (KAK) decomposition and the certified product pair, as JSON.
    Kak {
        #[command(flatten)]
        gate: GateArgs,
    },
}

fn run(command: &Command) -> Result<()> {
    match command {
        Command::Pguess { gate, q, p, input, json } => {
            let (gate, label) = gate.spec()?.resolve()?;
            let input = parse_input(input.as_ref())?;
            let report = cli::cmd_pguess(&gate, &label, *q, *p, input.as_ref())?;
            if *json {
                println!("{}", cli::to_json(&report)?);
            } else {
                print!("{}", report.render_human());
            }
            match report.consistency_error() {
                Some(err) => Err(err),
                None => Ok(()),
            }
        }
        Command::Certify { gate, q, p, trials, seed, input } => {
            let (gate, label) = gate.spec()?.resolve()?;
            let input = parse_input(input.as_ref())?;
            let report = cli::cmd_certify(&gate, &label, *q, *p, *trials, *seed, input.as_ref())?;
            println!("{}", cli::to_json(&report)?);
            Ok(())
        }
        Command::Sweep { gate, q, p_start, p_end, p_step, trials, seed, input, out } => {
            let (gate, _) = gate.spec()?.resolve()?;
            let input = parse_input(input.as_ref())?;
            let spec = SweepSpec {
                q: *q,
                p_start: *p_start,
                p_end: *p_end,
                p_step: *p_step,
                trials: *trials,
                seed: *seed,
            };
            let result = cli::cmd_sweep(&gate, &spec, input.as_ref())?;
            cli::write_sweep(&result, out.as_deref())
        }
        Command::Estimate { gate, p_true, trials, seed } => {
            let (gate, label) = gate.spec()?.resolve()?;
            let report = cli::cmd_estimate(&gate, &label, *p_true, *trials, *seed)?;
            println!("{}", cli::to_json(&report)?);
            Ok(())
        }
        Command::Kak { gate } => {
            let (gate, label) = gate.spec()?.resolve()?;
            let report = cli::cmd_kak(&gate, &label)?;
            println!("{}", cli::to_json(&report)?);
            Ok(())
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: could not configure thread pool: {e}");
            std::process::exit(2);
        }
    }
    if let Err(error) = run(&cli.command) {
        eprintln!("error: {error}");
        std::process::exit(cli::exit_code(&error));
    }
}
