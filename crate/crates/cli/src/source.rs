//! `--graph` argument: a generator spec or an edge-list path.

use std::path::{Path, PathBuf};

use netwalk::{gen_broom, gen_cycle, gen_family, gen_path, gen_spider, gen_star, Family, Graph};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSource {
    Family(Family),
    Path(usize),
    Star(usize),
    Cycle(usize),
    Broom(usize, usize),
    Spider(Vec<usize>),
    File(PathBuf),
}

const GENERATORS: [&str; 6] = ["family", "path", "star", "cycle", "broom", "spider"];

fn number(field: &str, spec: &str) -> Result<usize, CliError> {
    field
        .parse()
        .map_err(|_| CliError::Usage(format!("bad number {field:?} in graph spec {spec:?}")))
}

impl GraphSource {
    /// Parses one `--graph` value. `family:all` expands to the five family members.
    pub fn parse_many(spec: &str) -> Result<Vec<GraphSource>, CliError> {
        if spec == "family:all" {
            return Ok(Family::ALL.iter().map(|&f| GraphSource::Family(f)).collect());
        }
        Ok(vec![GraphSource::parse(spec)?])
    }

    pub fn parse(spec: &str) -> Result<GraphSource, CliError> {
        let Some((kind, rest)) = spec.split_once(':') else {
            return Ok(GraphSource::File(PathBuf::from(spec)));
        };
        if !GENERATORS.contains(&kind) {
            if Path::new(spec).exists() {
                return Ok(GraphSource::File(PathBuf::from(spec)));
            }
            return Err(CliError::Usage(format!(
                "unknown graph spec {spec:?} (expected family:<a-e>, path:<n>, star:<n>, cycle:<n>, broom:<p>:<k>, spider:<l1,l2,..> or an edge-list file)"
            )));
        }
        let fields: Vec<&str> = rest.split(':').collect();
        let arity = |want: usize| {
            if fields.len() == want {
                Ok(())
            } else {
                Err(CliError::Usage(format!("graph spec {spec:?} expects {want} parameter(s)")))
            }
        };
        let source = match kind {
            "family" => {
                arity(1)?;
                GraphSource::Family(fields[0].parse().map_err(|e: netwalk::Error| CliError::Usage(e.to_string()))?)
            }
            "path" | "star" | "cycle" => {
                arity(1)?;
                let n = number(fields[0], spec)?;
                match kind {
                    "path" => GraphSource::Path(n),
                    "star" => GraphSource::Star(n),
                    _ => GraphSource::Cycle(n),
                }
            }
            "broom" => {
                arity(2)?;
                GraphSource::Broom(number(fields[0], spec)?, number(fields[1], spec)?)
            }
            _ => {
                arity(1)?;
                let legs = fields[0]
                    .split(',')
                    .map(|f| number(f, spec))
                    .collect::<Result<Vec<_>, _>>()?;
                GraphSource::Spider(legs)
            }
        };
        Ok(source)
    }

    pub fn build(&self) -> Result<Graph, CliError> {
        let g = match self {
            GraphSource::Family(f) => gen_family(*f),
            GraphSource::Path(n) => gen_path(*n),
            GraphSource::Star(n) => gen_star(*n),
            GraphSource::Cycle(n) => gen_cycle(*n),
            GraphSource::Broom(p, k) => gen_broom(*p, *k),
            GraphSource::Spider(legs) => gen_spider(legs),
            GraphSource::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
                return Graph::parse_edge_list(&text)
                    .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())));
            }
        };
        Ok(g?)
    }

    /// File-name friendly name, e.g. `family-e` or `broom-5-5`.
    pub fn slug(&self) -> String {
        match self {
            GraphSource::Family(f) => format!("family-{f}"),
            GraphSource::Path(n) => format!("path-{n}"),
            GraphSource::Star(n) => format!("star-{n}"),
            GraphSource::Cycle(n) => format!("cycle-{n}"),
            GraphSource::Broom(p, k) => format!("broom-{p}-{k}"),
            GraphSource::Spider(legs) => {
                let parts: Vec<String> = legs.iter().map(usize::to_string).collect();
                format!("spider-{}", parts.join("-"))
            }
            GraphSource::File(path) => path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "graph".to_string()),
        }
    }

    /// Human-readable name for reports, e.g. `family:e`.
    pub fn name(&self) -> String {
        match self {
            GraphSource::Family(f) => format!("family:{f}"),
            GraphSource::File(path) => path.display().to_string(),
            other => other.slug().replacen('-', ":", 1).replace('-', if matches!(other, GraphSource::Spider(_)) { "," } else { ":" }),
        }
    }
}
