use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use biangle::experiments::{self, DeltaSpec, ExperimentConfig, TestFunction};
use biangle::quadrature::biangle_rule;
use biangle::Error;

#[derive(Parser)]
#[command(name = "biangle", version, about = "Cesaro kernels and product formula on the parabolic biangle")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// L1 norm, minimum and closed-form residual of K_n^delta for n = 0..=n_max
    KernelTable(Common),
    /// Error of the Cesaro means of a built-in function
    Approx {
        #[command(flatten)]
        common: Common,
        /// smooth_exp, abs_edge, dist_cusp or poly3
        #[arg(long, default_value = "smooth_exp")]
        function: String,
    },
    /// Identity checks as a JSON report
    Verify(Common),
    /// Log-log slope of the growth integral on 8, 16, ..., n_max
    GrowthSlope(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    beta: f64,
    /// number, critical+EPS or positivity
    #[arg(long, default_value = "critical+0.1", allow_negative_numbers = true)]
    delta: String,
    #[arg(long, default_value_t = 16)]
    n_max: usize,
    #[arg(long, default_value_t = 100)]
    quad_m: usize,
    /// scan grid points per axis [default: max(4 n_max, 16)]
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// output file [default: stdout]
    #[arg(long)]
    out: Option<PathBuf>,
    /// also write the quad_m biangle rule as CSV
    #[arg(long)]
    dump_rule: Option<PathBuf>,
}

impl Common {
    fn config(&self) -> Result<ExperimentConfig, Error> {
        Ok(ExperimentConfig {
            alpha: self.alpha,
            beta: self.beta,
            delta: self.delta.parse::<DeltaSpec>()?,
            n_max: self.n_max,
            quad_m: self.quad_m,
            grid_size: self.grid,
            seed: self.seed,
        })
    }
}

enum Failure {
    Config(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_config_error() {
            Failure::Config(e.to_string())
        } else {
            Failure::Numerical(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Config(format!("i/o: {e}"))
    }
}

fn open_out(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("BIANGLE_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| Failure::Config(format!("BIANGLE_THREADS must be a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Config(e.to_string()))
}

fn dump_rule(common: &Common, config: &ExperimentConfig) -> Result<(), Failure> {
    if let Some(path) = &common.dump_rule {
        let rule = biangle_rule(config.params()?, config.quad_m)?;
        let mut out = BufWriter::new(File::create(path)?);
        rule.write_csv(&mut out)?;
        out.flush()?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    configure_threads()?;
    let common = match &cli.command {
        Command::KernelTable(c) | Command::Verify(c) | Command::GrowthSlope(c) => c,
        Command::Approx { common, .. } => common,
    };
    let config = common.config()?;
    dump_rule(common, &config)?;

    let table = match &cli.command {
        Command::KernelTable(_) => experiments::kernel_table(&config)?,
        Command::Approx { function, .. } => experiments::approx(&config, function.parse::<TestFunction>()?)?,
        Command::GrowthSlope(_) => experiments::growth_slope(&config)?,
        Command::Verify(_) => {
            let report = experiments::verify(&config)?;
            let mut out = open_out(&common.out)?;
            serde_json::to_writer_pretty(&mut out, &report).map_err(|e| Failure::Config(e.to_string()))?;
            writeln!(out)?;
            out.flush()?;
            if !report.passed() {
                return Err(Failure::Numerical(format!("threshold exceeded: {}", report.failed.join(", "))));
            }
            return Ok(());
        }
    };
    let mut out = open_out(&common.out)?;
    experiments::write_csv(&table, &mut out)?;
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
