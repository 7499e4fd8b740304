use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use zigzag_core::quadrature::{Kernel, Parity};
use zigzag_core::report::{
    cmd_asymptotics, cmd_compute, cmd_congruence, cmd_period, cmd_quadrature, cmd_verify, render,
    OutputFormat, QuadratureOp, QuadratureParams, Run, VerifyParams,
};
use zigzag_core::{Error, Oracle};

const EXIT_REGRESSION: u8 = 1;
const EXIT_INVALID: u8 = 2;

#[derive(Parser)]
#[command(name = "zigzag-lab", version, about = "Verification lab for alternating (zigzag) numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalOpts,
}

#[derive(Args)]
struct GlobalOpts {
    /// Output format.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Exit 1 when results regress against frozen expectations.
    #[arg(long, global = true)]
    check: bool,
    /// TOML file with default values for flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleArg {
    Entringer,
    #[value(name = "egf_series", alias = "egf-series")]
    EgfSeries,
}

#[derive(Subcommand)]
enum Command {
    /// Emit A_0..A_N.
    Compute {
        #[arg(long)]
        max_index: Option<usize>,
        #[arg(long, value_enum)]
        oracle: Option<OracleArg>,
    },
    /// Run every representation and fill the formula-status ledger.
    Verify {
        #[arg(long)]
        max_index: Option<usize>,
        #[arg(long)]
        rel_tol: Option<f64>,
        #[arg(long)]
        nodes: Option<usize>,
        #[arg(long)]
        radius: Option<f64>,
    },
    /// Congruence claims over a grid of primes.
    Congruence {
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
        #[arg(long)]
        max_index: Option<usize>,
    },
    /// Eventual periods of A_n modulo each modulus.
    Period {
        #[arg(long, value_delimiter = ',')]
        modulus: Option<Vec<u64>>,
        #[arg(long)]
        max_index: Option<usize>,
    },
    /// One floating-point evaluation: `quadrature <op> [parity|kernel] <index>`.
    Quadrature {
        /// hyper_sinh_literal, hyper_classical, hyper_calibrated, mellin_check, contour,
        /// fourier, spectral_literal, spectral_calibrated, half_integer_zeta, dirichlet_beta
        op: String,
        #[arg(num_args = 1..=2)]
        args: Vec<String>,
        #[arg(long)]
        rel_tol: Option<f64>,
        #[arg(long)]
        nodes: Option<usize>,
        #[arg(long)]
        radius: Option<f64>,
    },
    /// Leading-order asymptotic law against exact values.
    Asymptotics {
        #[arg(long)]
        max_index: Option<usize>,
    },
}

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    format: Option<String>,
    max_index: Option<usize>,
    oracle: Option<String>,
    primes: Option<Vec<u64>>,
    modulus: Option<Vec<u64>>,
    rel_tol: Option<f64>,
    nodes: Option<usize>,
    radius: Option<f64>,
}

fn load_config(path: Option<&PathBuf>) -> Result<FileConfig, String> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn run(command: Command, cfg: &FileConfig) -> Result<Run, Error> {
    let max_index = |flag: Option<usize>, default: usize| flag.or(cfg.max_index).unwrap_or(default);
    let rel_tol = |flag: Option<f64>| flag.or(cfg.rel_tol);
    match command {
        Command::Compute { max_index: n, oracle } => {
            let oracle = match (oracle, &cfg.oracle) {
                (Some(OracleArg::Entringer), _) => Oracle::Entringer,
                (Some(OracleArg::EgfSeries), _) => Oracle::EgfSeries,
                (None, Some(name)) => name.parse()?,
                (None, None) => Oracle::Entringer,
            };
            cmd_compute(max_index(n, 10), oracle)
        }
        Command::Verify {
            max_index: n,
            rel_tol: tol,
            nodes,
            radius,
        } => {
            let mut params = VerifyParams::new(max_index(n, 10));
            if let Some(t) = rel_tol(tol) {
                params.rel_tol = t;
            }
            params.nodes = nodes.or(cfg.nodes);
            if let Some(r) = radius.or(cfg.radius) {
                params.radius = r;
            }
            cmd_verify(&params)
        }
        Command::Congruence { primes, max_index: n } => {
            let primes = primes.or_else(|| cfg.primes.clone()).unwrap_or(vec![3, 5, 7]);
            cmd_congruence(&primes, max_index(n, 30))
        }
        Command::Period { modulus, max_index: n } => {
            let moduli = modulus.or_else(|| cfg.modulus.clone()).unwrap_or(vec![2, 3]);
            cmd_period(&moduli, max_index(n, 200))
        }
        Command::Quadrature {
            op,
            args,
            rel_tol: tol,
            nodes,
            radius,
        } => {
            let op: QuadratureOp = op.parse()?;
            let (variant, index) = match (op.variant_kind(), args.as_slice()) {
                (Some(_), [v, i]) => (Some(v.as_str()), i),
                (None, [i]) => (None, i),
                (Some(kind), _) => {
                    return Err(Error::InvalidInput(format!(
                        "{} expects <{kind}> <index>",
                        op.as_str()
                    )))
                }
                (None, _) => {
                    return Err(Error::InvalidInput(format!("{} expects <index>", op.as_str())))
                }
            };
            let index: usize = index
                .parse()
                .map_err(|_| Error::InvalidInput(format!("index {index:?} is not a nonnegative integer")))?;
            let mut params = QuadratureParams::new(op, index);
            match op.variant_kind() {
                Some("parity") => params.parity = variant.map(str::parse::<Parity>).transpose()?,
                Some(_) => params.kernel = variant.map(str::parse::<Kernel>).transpose()?,
                None => {}
            }
            if let Some(t) = rel_tol(tol) {
                params.rel_tol = t;
            }
            params.nodes = nodes.or(cfg.nodes);
            params.radius = radius.or(cfg.radius);
            cmd_quadrature(&params)
        }
        Command::Asymptotics { max_index: n } => cmd_asymptotics(max_index(n, 60)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match load_config(cli.global.config.as_ref()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: config {e}");
            return ExitCode::from(EXIT_INVALID);
        }
    };
    let format = match (cli.global.format, cfg.format.as_deref()) {
        (Some(Format::Json), _) => Ok(OutputFormat::Json),
        (Some(Format::Csv), _) => Ok(OutputFormat::Csv),
        (Some(Format::Human), _) => Ok(OutputFormat::Human),
        (None, Some(name)) => name.parse(),
        (None, None) => Ok(OutputFormat::Json),
    };
    let is_verify = matches!(cli.command, Command::Verify { .. });
    let outcome = format.and_then(|format| {
        let run = run(cli.command, &cfg)?;
        let text = render(&run, format)?;
        Ok((run, text))
    });
    let (run, text) = match outcome {
        Ok(ok) => ok,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INVALID);
        }
    };
    match &cli.global.output {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(EXIT_INVALID);
            }
        }
        None => print!("{text}"),
    }
    // verify always gates on the frozen ledger; other commands only under --check
    if (is_verify || cli.global.check) && !run.regressions.is_empty() {
        for r in &run.regressions {
            eprintln!("regression: {r}");
        }
        return ExitCode::from(EXIT_REGRESSION);
    }
    ExitCode::SUCCESS
}
