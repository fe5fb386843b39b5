//! Resolving matrix sources and probe specifications from flags.
//!
//! Flags use 1-based vertex and eigenvalue numbers, matching edge-list
//! files; JSON output keeps the library's 0-based indices.

use clap::{Args, ValueEnum};
use spectral_certify::analysis::{InputDescriptor, Operator, Probe};
use spectral_certify::graphs::{fixture, Graph};
use spectral_certify::linalg::{parse_rational, IntMatrix};
use spectral_certify::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OperatorArg {
    Adjacency,
    Laplacian,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false, id = "source")]
pub struct SourceArgs {
    /// Built-in graph: fig1, fig2, fig3, shift, cycle, path.
    #[arg(long)]
    pub fixture: Option<String>,
    /// Graph file: edge list (1-based vertices) or JSON.
    #[arg(long, value_name = "FILE")]
    pub graph: Option<std::path::PathBuf>,
    /// Integer matrix file: "rows cols" header, then entries.
    #[arg(long, value_name = "FILE")]
    pub matrix: Option<std::path::PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct GraphOptions {
    /// Size of parameterized fixtures (shift, cycle, path).
    #[arg(long, visible_alias = "p")]
    pub size: Option<usize>,
    /// Matrix built from a graph source.
    #[arg(long, value_enum, default_value_t = OperatorArg::Adjacency)]
    pub operator: OperatorArg,
}

fn read(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn load(source: &SourceArgs, opts: &GraphOptions) -> Result<(IntMatrix, InputDescriptor)> {
    let (graph, label) = match (&source.fixture, &source.graph, &source.matrix) {
        (Some(name), _, _) => {
            let label = match opts.size {
                Some(k) => format!("fixture:{name}:{k}"),
                None => format!("fixture:{name}"),
            };
            (fixture(name, opts.size)?, label)
        }
        (_, Some(path), _) => (Graph::parse(&read(path)?)?, format!("graph:{}", path.display())),
        (_, _, Some(path)) => {
            let m = IntMatrix::parse(&read(path)?)?;
            if !m.is_square() {
                return Err(Error::DimensionMismatch(format!("{}x{} matrix is not square", m.rows(), m.cols())));
            }
            let input = InputDescriptor::new(format!("matrix:{}", path.display()), Operator::Matrix, &m);
            return Ok((m, input));
        }
        _ => unreachable!("clap requires one source"),
    };
    let (m, operator) = match opts.operator {
        OperatorArg::Adjacency => (graph.adjacency(), Operator::Adjacency),
        OperatorArg::Laplacian => (graph.laplacian()?, Operator::Laplacian),
    };
    let input = InputDescriptor::new(label, operator, &m);
    Ok((m, input))
}

/// `e<i>` (1-based), `ones`, `random:<seed>`, or a comma-separated list of
/// rationals such as `1,-2,1/3`.
pub fn parse_probe(spec: &str) -> Result<Probe> {
    let spec = spec.trim();
    if spec == "ones" {
        return Ok(Probe::Ones);
    }
    if let Some(seed) = spec.strip_prefix("random:") {
        let seed = seed.parse().map_err(|e| Error::Parse(format!("probe seed {seed:?}: {e}")))?;
        return Ok(Probe::Random { seed });
    }
    if let Some(i) = spec.strip_prefix('e') {
        let i: usize = i.parse().map_err(|e| Error::Parse(format!("unit probe {spec:?}: {e}")))?;
        if i == 0 {
            return Err(Error::Parse("unit probes are numbered from e1".into()));
        }
        return Ok(Probe::Unit { index: i - 1 });
    }
    let values = spec.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
    Ok(Probe::Explicit { values })
}

/// Comma-separated 1-based numbers, returned 0-based.
pub fn parse_one_based(list: &str, what: &str) -> Result<Vec<usize>> {
    list.split(',')
        .map(|t| match t.trim().parse::<usize>() {
            Ok(0) | Err(_) => Err(Error::Parse(format!("{what} {t:?}: expected a number from 1"))),
            Ok(k) => Ok(k - 1),
        })
        .collect()
}

/// `lo..hi` (inclusive) uniform entries.
pub fn parse_range(s: &str) -> Result<(i64, i64)> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| Error::Parse(format!("range {s:?}: expected lo..hi")))?;
    let lo: i64 = lo.trim().parse().map_err(|e| Error::Parse(format!("range start {lo:?}: {e}")))?;
    let hi: i64 = hi.trim().parse().map_err(|e| Error::Parse(format!("range end {hi:?}: {e}")))?;
    if lo > hi {
        return Err(Error::Parse(format!("empty range {s:?}")));
    }
    Ok((lo, hi))
}
