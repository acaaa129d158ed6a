use std::fs;
use std::path::{Path, PathBuf};

use netwalk::analysis::render_table;
use netwalk::export::{matrix_json, series_json, write_matrix_csv, write_series_csv};
use netwalk::transport::{self, lta_matrix};
use netwalk::{efficiency_report, Graph, Quantity, QuantityTag, ReportConfig, Spectrum, TimeGrid, TransportSeries};

use crate::error::CliError;
use crate::source::GraphSource;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    fn ext(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

fn write_file(dir: &Path, name: &str, bytes: &[u8]) -> Result<PathBuf, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let path = dir.join(name);
    fs::write(&path, bytes).map_err(|e| CliError::io(&path, e))?;
    println!("wrote {}", path.display());
    Ok(path)
}

fn load(source: &GraphSource, deg_tol: f64) -> Result<(Graph, Spectrum), CliError> {
    let g = source.build()?;
    let s = Spectrum::of_graph(&g, deg_tol)?;
    Ok((g, s))
}

pub fn gen(source: &GraphSource, out: &Path) -> Result<(), CliError> {
    let (g, s) = load(source, netwalk::DEFAULT_DEG_TOL)?;
    write_file(out, &format!("{}.edges", source.slug()), g.to_edge_list().as_bytes())?;
    println!("n={} q={} D_l={}", g.node_count(), g.edge_count(), s.symmetry_degree());
    Ok(())
}

pub struct EvolveArgs<'a> {
    pub source: &'a GraphSource,
    pub grid: &'a TimeGrid,
    pub start: usize,
    pub deg_tol: f64,
    pub format: Format,
    pub out: &'a Path,
    pub quantities: &'a [QuantityTag],
}

fn emit_series(
    args: &EvolveArgs,
    stem: &str,
    series: &TransportSeries,
    approx: Option<&TransportSeries>,
) -> Result<(), CliError> {
    let bytes = match args.format {
        Format::Csv => {
            let mut buf = Vec::new();
            write_series_csv(&mut buf, series, approx)?;
            buf
        }
        Format::Json => series_json(series, approx)?.into_bytes(),
    };
    write_file(args.out, &format!("{stem}.{}", args.format.ext()), &bytes)?;
    Ok(())
}

pub fn evolve(args: &EvolveArgs) -> Result<(), CliError> {
    let (g, s) = load(args.source, args.deg_tol)?;
    let n = g.node_count();
    if !(1..=n).contains(&args.start) {
        return Err(CliError::Usage(format!("start node {} out of range 1..={n}", args.start)));
    }
    if !g.is_connected() {
        eprintln!("warning: graph is disconnected; walks do not equipartition");
    }
    let j = args.start;
    let wants = |tag| args.quantities.contains(&tag);
    let approx_class = s.nearest_class(1.0);
    let approx = if wants(QuantityTag::ApproxAlphaBarSq) {
        Some(transport::series(&s, args.grid, Quantity::ApproxAlphaBarSq { class: approx_class })?)
    } else {
        None
    };

    for &tag in args.quantities {
        match tag {
            QuantityTag::ClassicalPair | QuantityTag::QuantumPair => {
                for k in 1..=n {
                    let q = if tag == QuantityTag::ClassicalPair {
                        Quantity::ClassicalPair { k, j }
                    } else {
                        Quantity::QuantumPair { k, j }
                    };
                    let series = transport::series(&s, args.grid, q)?;
                    emit_series(args, &format!("{tag}_k{k}_j{j}"), &series, None)?;
                }
            }
            QuantityTag::ClassicalAvgReturn | QuantityTag::QuantumAvgReturn => {
                let q = if tag == QuantityTag::ClassicalAvgReturn {
                    Quantity::ClassicalAvgReturn
                } else {
                    Quantity::QuantumAvgReturn
                };
                emit_series(args, tag.as_str(), &transport::series(&s, args.grid, q)?, None)?;
            }
            QuantityTag::AlphaBarSq => {
                let series = transport::series(&s, args.grid, Quantity::AlphaBarSq)?;
                emit_series(args, tag.as_str(), &series, approx.as_ref())?;
            }
            // co-emitted with alpha_bar_sq when both are requested
            QuantityTag::ApproxAlphaBarSq if wants(QuantityTag::AlphaBarSq) => {}
            QuantityTag::ApproxAlphaBarSq => {
                emit_series(args, tag.as_str(), approx.as_ref().expect("computed above"), None)?;
            }
        }
    }
    Ok(())
}

pub fn lta(source: &GraphSource, deg_tol: f64, format: Format, out: &Path) -> Result<(), CliError> {
    let (_, s) = load(source, deg_tol)?;
    let chi = lta_matrix(&s);
    let bytes = match format {
        Format::Csv => {
            let mut buf = Vec::new();
            write_matrix_csv(&mut buf, &chi)?;
            buf
        }
        Format::Json => matrix_json(&chi)?.into_bytes(),
    };
    write_file(out, &format!("lta.{}", format.ext()), &bytes)?;
    Ok(())
}

pub fn report(sources: &[GraphSource], config: &ReportConfig, out: &Path) -> Result<(), CliError> {
    let mut reports = Vec::with_capacity(sources.len());
    for source in sources {
        let g = source.build()?;
        let r = efficiency_report(&g, &source.name(), config)
            .map_err(|e| CliError::from(e).with_context(&source.name()))?;
        write_file(out, &format!("report_{}.json", source.slug()), r.to_json()?.as_bytes())?;
        reports.push(r);
    }
    print!("{}", render_table(&reports));
    Ok(())
}
