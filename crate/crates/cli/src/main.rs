//! `netwalk`: classical and quantum walks on small graphs from the command line.

mod commands;
mod error;
mod source;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use netwalk::{QuantityTag, ReportConfig, TimeGrid, DEFAULT_DEG_TOL};

use commands::{EvolveArgs, Format};
use error::CliError;
use source::GraphSource;

const DEFAULT_QUANTITIES: &str = "classical_avg_return,quantum_avg_return,alpha_bar_sq,approx_alpha_bar_sq";

#[derive(Parser)]
#[command(name = "netwalk", version, about = "Classical and quantum continuous-time walks on graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph as an edge list and print its size and symmetry degree.
    Gen {
        /// family:<a-e>, path:<n>, star:<n>, cycle:<n>, broom:<p>:<k>, spider:<l1,l2,..>
        #[arg(long)]
        graph: String,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Sample transport quantities on a time grid.
    Evolve {
        /// Generator spec or edge-list file.
        #[arg(long)]
        graph: String,
        /// start:stop:step
        #[arg(long, default_value = "0:50:0.01")]
        times: TimeGrid,
        /// Initial node for the pairwise quantities.
        #[arg(long, default_value_t = 1)]
        start_node: usize,
        #[arg(long, default_value_t = DEFAULT_DEG_TOL)]
        deg_tol: f64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Comma-separated list of quantities.
        #[arg(long, value_delimiter = ',', default_value = DEFAULT_QUANTITIES)]
        quantities: Vec<QuantityTag>,
    },
    /// Write the long-time-average transition matrix.
    Lta {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = DEFAULT_DEG_TOL)]
        deg_tol: f64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Compare classical and quantum transport efficiency; `family:all` runs the whole family.
    Report {
        /// May be repeated.
        #[arg(long, required = true)]
        graph: Vec<String>,
        #[arg(long, default_value = "0:50:0.01")]
        times: TimeGrid,
        #[arg(long, default_value_t = DEFAULT_DEG_TOL)]
        deg_tol: f64,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Gen { graph, out } => commands::gen(&GraphSource::parse(&graph)?, &out),
        Command::Evolve { graph, times, start_node, deg_tol, format, out, mut quantities } => {
            let mut seen = Vec::new();
            quantities.retain(|q| if seen.contains(q) { false } else { seen.push(*q); true });
            commands::evolve(&EvolveArgs {
                source: &GraphSource::parse(&graph)?,
                grid: &times,
                start: start_node,
                deg_tol,
                format,
                out: &out,
                quantities: &quantities,
            })
        }
        Command::Lta { graph, deg_tol, format, out } => {
            commands::lta(&GraphSource::parse(&graph)?, deg_tol, format, &out)
        }
        Command::Report { graph, times, deg_tol, out } => {
            let mut sources = Vec::new();
            for spec in &graph {
                sources.extend(GraphSource::parse_many(spec)?);
            }
            let config = ReportConfig { deg_tol, grid: times, ..ReportConfig::default() };
            commands::report(&sources, &config, &out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
