//! `outcap`: SNR sweeps and figure datasets for fixed-outage capacity.
//!
//! Exit codes: 0 success, 2 invalid arguments, 3 numerical failure, 4 I/O failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use outcap_core::analytic::{AntennaConfig, OutageTarget};
use outcap_core::harq::Strategy;
use outcap_core::montecarlo::{DEFAULT_CHUNK_SIZE, DEFAULT_SAMPLES};
use outcap_core::report::{self, Figure, Format, Scheme, SnrGrid, SweepRequest};
use outcap_core::{Error, Execution, McConfig};

#[derive(Parser, Debug)]
#[command(name = "outcap", version, about = "Fixed-outage capacity over iid Rayleigh block fading")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Antenna diversity (Nt x 1 or 1 x Nr), closed form.
    Antenna {
        /// Configuration such as 1x1, 2x1 or 1x2.
        #[arg(long, default_value = "1x1")]
        config: String,
        #[command(flatten)]
        common: Common,
    },
    /// Time/frequency diversity of order L, Monte Carlo.
    TfDiv {
        /// Number of coherence blocks the codeword spans.
        #[arg(long = "blocks", short = 'L', default_value_t = 2)]
        blocks: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Hybrid-ARQ throughput at the ε operating point.
    Harq {
        #[arg(long, value_enum, default_value_t = StrategyArg::Ir)]
        strategy: StrategyArg,
        /// Maximum number of rounds.
        #[arg(long, short = 'L', default_value_t = 2)]
        rounds: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Gap-to-capacity table.
    Gap {
        /// Comma-separated configurations.
        #[arg(long, value_delimiter = ',', default_value = "1x1,2x1,1x2")]
        configs: Vec<String>,
        #[arg(long, default_value_t = 0.01)]
        eps: f64,
        /// Also write the table as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Datasets for one of the preset figures.
    Figure {
        /// Figure id: 1b, 2, 3, 4 or 5.
        #[arg(long)]
        id: String,
        /// Override the preset outage target.
        #[arg(long)]
        eps: Option<f64>,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        mc: McArgs,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        /// Output directory.
        #[arg(long, default_value = "figures")]
        out: PathBuf,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Target outage probability.
    #[arg(long, default_value_t = 0.01)]
    eps: f64,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    mc: McArgs,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Output file; a `.meta.json` sidecar is written next to it. Prints to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GridArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    snr_start: f64,
    #[arg(long, default_value_t = 45.0, allow_negative_numbers = true)]
    snr_stop: f64,
    #[arg(long, default_value_t = 1.0)]
    snr_step: f64,
}

#[derive(Args, Debug)]
struct McArgs {
    /// Monte Carlo samples per grid point.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Samples per RNG substream; part of the reproducibility key.
    #[arg(long, default_value_t = DEFAULT_CHUNK_SIZE)]
    chunk_size: usize,
    /// Worker threads (default: all cores). Does not affect results.
    #[arg(long, conflicts_with = "sequential")]
    workers: Option<usize>,
    /// Run on the calling thread only.
    #[arg(long)]
    sequential: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum StrategyArg {
    Ir,
    Cc,
    NoArq,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Csv,
    Json,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Ir => Strategy::Ir,
            StrategyArg::Cc => Strategy::Cc,
            StrategyArg::NoArq => Strategy::NoArq,
        }
    }
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

impl GridArgs {
    fn grid(&self) -> Result<SnrGrid, Error> {
        SnrGrid::new(self.snr_start, self.snr_stop, self.snr_step)
    }
}

impl McArgs {
    fn config(&self) -> Result<McConfig, Error> {
        let execution = if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel {
                workers: self.workers,
            }
        };
        let mc = McConfig::new(self.samples, self.seed)
            .with_chunk_size(self.chunk_size)
            .with_execution(execution);
        mc.validate()?;
        Ok(mc)
    }
}

fn sweep(scheme: Scheme, common: &Common) -> Result<(), Error> {
    let eps = OutageTarget::new(common.eps)?;
    let grid = common.grid.grid()?;
    let mc = if scheme.needs_monte_carlo() {
        Some(common.mc.config()?)
    } else {
        None
    };
    let format = Format::from(common.format);
    match &common.out {
        Some(path) => {
            let request = SweepRequest {
                scheme,
                grid,
                epsilon: eps,
                mc,
                output_path: path.clone(),
                format,
            };
            let curve = report::run_sweep(&request)?;
            eprintln!("wrote {} rows to {}", curve.records.len(), path.display());
        }
        None => {
            let curve = report::compute_curve(&scheme.to_string(), scheme, &grid, eps, mc.as_ref())?;
            print!("{}", curve.render(format)?);
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Antenna { config, common } => {
            let cfg: AntennaConfig = config.parse()?;
            sweep(Scheme::Antenna(cfg), &common)
        }
        Command::TfDiv { blocks, common } => sweep(Scheme::TfDiversity(blocks), &common),
        Command::Harq {
            strategy,
            rounds,
            common,
        } => sweep(
            Scheme::Harq {
                strategy: strategy.into(),
                rounds,
            },
            &common,
        ),
        Command::Gap { configs, eps, out } => {
            let eps = OutageTarget::new(eps)?;
            let configs = configs
                .iter()
                .map(|c| c.parse())
                .collect::<Result<Vec<AntennaConfig>, _>>()?;
            let rows = report::run_gap_report(eps, &configs)?;
            println!(
                "{:<8} {:>12} {:>10} {:>12} {:>10} {:>12}",
                "config", "gamma", "gamma_db", "approx", "approx_db", "vs_1x1_db"
            );
            for r in &rows {
                println!(
                    "{:<8} {:>12.6} {:>10.3} {:>12.6} {:>10.3} {:>12.3}",
                    r.config, r.gamma_linear, r.gamma_db, r.approx_linear, r.approx_db, r.gap_vs_1x1_db
                );
            }
            if let Some(path) = out {
                std::fs::write(&path, report::gap_table_csv(&rows))?;
            }
            Ok(())
        }
        Command::Figure {
            id,
            eps,
            grid,
            mc,
            format,
            out,
        } => {
            let figure: Figure = id.parse()?;
            let eps = match eps {
                Some(e) => OutageTarget::new(e)?,
                None => figure.epsilon(),
            };
            let files = report::run_figure_preset_at(
                figure,
                eps,
                &mc.config()?,
                &grid.grid()?,
                format.into(),
                &out,
            )?;
            for f in files {
                eprintln!("wrote {}", f.display());
            }
            Ok(())
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::InvalidParameter(_) => 2,
        Error::Io(_) | Error::Json(_) => 4,
        e if e.is_numerical() => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
