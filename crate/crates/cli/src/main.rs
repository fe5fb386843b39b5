mod human;
mod input;

use clap::{Parser, Subcommand};
use input::{load, parse_one_based, parse_probe, parse_range, GraphOptions, SourceArgs};
use spectral_certify::analysis::{analyze, AnalysisOptions, BallJson, Operator};
use spectral_certify::arith::Precision;
use spectral_certify::campaign::{run_campaign, CampaignOptions};
use spectral_certify::exec::Exec;
use spectral_certify::galois::DEFAULT_PRIME_BUDGET;
use spectral_certify::graphs::{fixture, EntryDistribution, FIXTURE_NAMES};
use spectral_certify::harness::{run_reproduction_suite, SuiteOptions};
use spectral_certify::krylov::{block_krylov_fullrank, gram_identity, walk_rank, walk_rank_with, BlockKrylovSpec};
use spectral_certify::linalg::parse_rational;
use spectral_certify::minors::MinorEngine;
use spectral_certify::spectral::SpectralData;
use spectral_certify::Error;
use std::process::ExitCode;

const EXIT_FAILURE: u8 = 1;
const EXIT_PRECISION: u8 = 2;
const EXIT_PARSE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "spectral-certify", version, about = "Certified Galois and eigenvector-minor analysis of integer matrices and graphs")]
struct Cli {
    /// Machine-readable JSON instead of the condensed table.
    #[arg(long, global = true)]
    json: bool,
    /// Run data-parallel loops on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Characteristic polynomial, Galois data, minor scan and walk probes.
    Analyze {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        graph: GraphOptions,
        /// Largest minor size scanned (default: all).
        #[arg(long)]
        max_minor_size: Option<usize>,
        /// Skip the minor scan.
        #[arg(long)]
        skip_minors: bool,
        /// Walk-matrix probe: e<i>, ones, random:<seed>, or a rational list. Repeatable.
        #[arg(long = "probe", value_name = "SPEC")]
        probes: Vec<String>,
        /// Uncertainty witnesses built for vanishing supports.
        #[arg(long, default_value_t = 8)]
        max_witnesses: usize,
        /// Primes sampled for Frobenius cycle types.
        #[arg(long, default_value_t = DEFAULT_PRIME_BUDGET)]
        prime_budget: usize,
        /// Recorded in the report for replay.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Seeded random matrices: certify >= A_n, then scan every minor.
    Campaign {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        samples: usize,
        /// Uniform entries over an inclusive range.
        #[arg(long, value_name = "LO..HI", default_value = "-10..10", conflicts_with = "support")]
        entries: String,
        /// Explicit entry support, e.g. 0,1.
        #[arg(long, allow_hyphen_values = true)]
        support: Option<String>,
        /// Rational weights for --support summing to 1, e.g. 1/3,2/3. Uniform if omitted.
        #[arg(long, requires = "support")]
        weights: Option<String>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Run above the desk-scale limit on n.
        #[arg(long)]
        force: bool,
        /// Primes sampled for Frobenius cycle types.
        #[arg(long, default_value_t = DEFAULT_PRIME_BUDGET)]
        prime_budget: usize,
    },
    /// Walk matrix W(x) = (x, Mx, ..., M^(n-1)x): rank, annihilator, spectral support.
    Walk {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        graph: GraphOptions,
        /// e<i>, ones, random:<seed>, or a rational list such as 1,-1/2,0.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Block-Krylov full-rank check around vertices with radii.
    Krylov {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        graph: GraphOptions,
        /// 1-based vertices.
        #[arg(long)]
        vertices: String,
        /// One radius per vertex.
        #[arg(long)]
        radii: String,
        /// 1-based eigenvalue numbers, as many as the total row count.
        #[arg(long)]
        columns: String,
        /// Also check one Gram entry: v,a,w,b (vertices 1-based).
        #[arg(long, value_name = "V,A,W,B")]
        gram: Option<String>,
    },
    /// List or dump built-in graphs.
    Fixtures {
        /// Fixture to dump; lists all when omitted.
        name: Option<String>,
        #[arg(long, visible_alias = "p")]
        size: Option<usize>,
        /// Dump format.
        #[arg(long, value_enum, default_value_t = DumpFormat::Edges)]
        format: DumpFormat,
    },
    /// Reproduction suite: one ledger row per acceptance criterion.
    Selfcheck {
        /// Comma-separated criterion numbers (default: all ten).
        #[arg(long)]
        only: Option<String>,
        /// Write the ledger as TSV.
        #[arg(long, value_name = "FILE")]
        ledger_tsv: Option<std::path::PathBuf>,
        /// Write the ledger as JSON.
        #[arg(long, value_name = "FILE")]
        ledger_json: Option<std::path::PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum DumpFormat {
    Edges,
    Json,
    Adjacency,
    Laplacian,
}

/// Outcome of a command that produced output.
enum Done {
    Complete,
    /// Output was produced but some decision stayed open.
    Undecided,
    Failed,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_PARSE),
            };
        }
    };
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    match run(&cli, exec) {
        Ok(Done::Complete) => ExitCode::SUCCESS,
        Ok(Done::Undecided) => ExitCode::from(EXIT_PRECISION),
        Ok(Done::Failed) => ExitCode::from(EXIT_FAILURE),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::PrecisionExhausted { .. } | Error::UndecidedSingular => EXIT_PRECISION,
                Error::Parse(_) | Error::UnknownFixture(_) => EXIT_PARSE,
                _ => EXIT_FAILURE,
            })
        }
    }
}

fn emit<T: serde::Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
    } else {
        print!("{}", text());
    }
}

fn run(cli: &Cli, exec: Exec) -> spectral_certify::Result<Done> {
    match &cli.command {
        Command::Analyze { source, graph, max_minor_size, skip_minors, probes, max_witnesses, prime_budget, seed } => {
            let (m, input) = load(source, graph)?;
            let probes = probes.iter().map(|p| parse_probe(p)).collect::<spectral_certify::Result<Vec<_>>>()?;
            let opts = AnalysisOptions {
                max_minor_size: *max_minor_size,
                probes,
                max_witnesses: *max_witnesses,
                prime_budget: *prime_budget,
                precision: Precision::from_env(),
                exec,
                seed: *seed,
                skip_minors: *skip_minors,
            };
            let report = analyze(&m, input, &opts)?;
            emit(cli.json, &report, || human::analysis(&report));
            Ok(if report.complete { Done::Complete } else { Done::Undecided })
        }
        Command::Campaign { n, samples, entries, support, weights, seed, force, prime_budget } => {
            let distribution = match support {
                Some(s) => {
                    let support = s
                        .split(',')
                        .map(|t| t.trim().parse::<i64>().map_err(|e| Error::Parse(format!("support {t:?}: {e}"))))
                        .collect::<spectral_certify::Result<Vec<_>>>()?;
                    let weights = match weights {
                        Some(w) => w.split(',').map(parse_rational).collect::<spectral_certify::Result<Vec<_>>>()?,
                        None => vec![parse_rational(&format!("1/{}", support.len().max(1)))?; support.len()],
                    };
                    EntryDistribution::new(support, weights, *seed)?
                }
                None => {
                    let (lo, hi) = parse_range(entries)?;
                    EntryDistribution::uniform(lo, hi, *seed)
                }
            };
            let opts = CampaignOptions {
                force: *force,
                prime_budget: *prime_budget,
                exec,
                ..CampaignOptions::new(*n, *samples, distribution)
            };
            let summary = run_campaign(&opts)?;
            emit(cli.json, &summary, || human::campaign(&summary));
            Ok(if !summary.violations.is_empty() {
                Done::Failed
            } else if !summary.undecided.is_empty() {
                Done::Undecided
            } else {
                Done::Complete
            })
        }
        Command::Walk { source, graph, x } => {
            let (m, input) = load(source, graph)?;
            let x = parse_probe(x)?.vector(m.rows())?;
            let report = if input.operator == Operator::Laplacian {
                walk_rank_with(&SpectralData::build_laplacian(&m, Precision::from_env())?, &x)?
            } else {
                walk_rank(&m, &x, Precision::from_env())?
            };
            emit(cli.json, &report, || format!("{}\n", human::walk_line(&report)));
            let undecided = report.spectral.as_ref().is_some_and(|s| s.undecided > 0);
            Ok(if !report.consistent() {
                Done::Failed
            } else if undecided {
                Done::Undecided
            } else {
                Done::Complete
            })
        }
        Command::Krylov { source, graph, vertices, radii, columns, gram } => {
            let (m, input) = load(source, graph)?;
            let sd = if input.operator == Operator::Laplacian {
                SpectralData::build_laplacian(&m, Precision::from_env())?
            } else {
                SpectralData::build(&m, Precision::from_env())?
            };
            let radii = radii
                .split(',')
                .map(|t| t.trim().parse::<u32>().map_err(|e| Error::Parse(format!("radius {t:?}: {e}"))))
                .collect::<spectral_certify::Result<Vec<_>>>()?;
            let spec =
                BlockKrylovSpec::new(parse_one_based(vertices, "vertex")?, radii, parse_one_based(columns, "column")?)?;
            let engine = MinorEngine::with_options(&sd, DEFAULT_PRIME_BUDGET, exec);
            let verdict = block_krylov_fullrank(&engine, &spec)?;
            let gram = match gram {
                Some(g) => {
                    let parts: Vec<&str> = g.split(',').collect();
                    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("gram entry {t:?}: {e}")));
                    if parts.len() != 4 {
                        return Err(Error::Parse("--gram takes v,a,w,b".into()));
                    }
                    let v = parse_one_based(parts[0], "vertex")?[0];
                    let w = parse_one_based(parts[2], "vertex")?[0];
                    Some(gram_identity(&sd, v, num(parts[1])? as u32, w, num(parts[3])? as u32)?)
                }
                None => None,
            };
            let json = serde_json::json!({
                "verdict": verdict,
                "gram": gram.as_ref().map(|g| serde_json::json!({
                    "value": BallJson::from(&g.value),
                    "expected": g.expected.to_string(),
                    "contains": g.contains,
                })),
            });
            emit(cli.json, &json, || human::krylov(&verdict, gram.as_ref()));
            let gram_ok = gram.as_ref().is_none_or(|g| g.contains);
            Ok(if !verdict.status.is_decided() {
                Done::Undecided
            } else if gram_ok {
                Done::Complete
            } else {
                Done::Failed
            })
        }
        Command::Fixtures { name: None, .. } => {
            emit(cli.json, &FIXTURE_NAMES, || {
                let mut s = String::new();
                for name in FIXTURE_NAMES {
                    let line = match fixture(name, None) {
                        Ok(g) => format!("{name:<6} n = {}, {} edges\n", g.n(), g.edge_count()),
                        Err(_) => format!("{name:<6} parameterized: pass --size\n"),
                    };
                    s.push_str(&line);
                }
                s
            });
            Ok(Done::Complete)
        }
        Command::Fixtures { name: Some(name), size, format } => {
            let g = fixture(name, *size)?;
            let text = match format {
                DumpFormat::Edges => g.to_edge_list(),
                DumpFormat::Json => g.to_json(),
                DumpFormat::Adjacency => g.adjacency().to_text(),
                DumpFormat::Laplacian => g.laplacian()?.to_text(),
            };
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(Done::Complete)
        }
        Command::Selfcheck { only, ledger_tsv, ledger_json } => {
            let only = match only {
                Some(list) => list
                    .split(',')
                    .map(|t| t.trim().parse::<u8>().map_err(|e| Error::Parse(format!("criterion {t:?}: {e}"))))
                    .collect::<spectral_certify::Result<Vec<_>>>()?,
                None => Vec::new(),
            };
            let ledger = run_reproduction_suite(&SuiteOptions { exec, only }, |row| {
                if !cli.json {
                    println!("{}", row.line());
                }
            });
            let write = |path: &std::path::Path, body: String| {
                std::fs::write(path, body).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
            };
            if let Some(p) = ledger_tsv {
                write(p, ledger.to_tsv())?;
            }
            if let Some(p) = ledger_json {
                write(p, ledger.to_json())?;
            }
            if cli.json {
                println!("{}", ledger.to_json());
            }
            Ok(if ledger.all_pass() { Done::Complete } else { Done::Failed })
        }
    }
}
