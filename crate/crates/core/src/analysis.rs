//! End-to-end analysis of one matrix: spectrum, Galois certificates, minor
//! scan with witnesses, and walk-matrix probes, gathered into a single
//! serializable report.
//!
//! Indices in the report (vertices, roots) are 0-based. Integers that may
//! exceed 64 bits are decimal strings; balls are center and radius strings.

use crate::arith::{Ball, Precision};
use crate::exec::Exec;
use crate::galois::{certify_an_with, homogeneity, AnCertificate, Homogeneity, DEFAULT_PRIME_BUDGET};
use crate::graphs::SeededStream;
use crate::krylov::{walk_rank, walk_rank_with, WalkMatrixReport};
use crate::linalg::IntMatrix;
use crate::minors::{MinorEngine, ScanOptions, ScanReport, UncertaintyWitness};
use crate::poly::{factor_over_z, IntPolynomial};
use crate::spectral::SpectralData;
use crate::{Error, Result};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::time::Instant;

pub const TOOL: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Operator {
    Adjacency,
    Laplacian,
    /// A matrix given directly.
    Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDescriptor {
    pub source: String,
    pub operator: Operator,
    pub n: usize,
    /// SHA-256 of the matrix in text form.
    pub sha256: String,
}

impl InputDescriptor {
    pub fn new(source: impl Into<String>, operator: Operator, matrix: &IntMatrix) -> InputDescriptor {
        InputDescriptor {
            source: source.into(),
            operator,
            n: matrix.rows(),
            sha256: hex::encode(Sha256::digest(matrix.to_text().as_bytes())),
        }
    }
}

/// Walk-matrix probe vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Probe {
    /// `e_i`, 0-based.
    Unit { index: usize },
    Ones,
    Explicit {
        #[serde(with = "crate::serde_util::rationals")]
        values: Vec<BigRational>,
    },
    /// Nonzero integer vector with entries in `-5..=5`.
    Random { seed: u64 },
}

impl Probe {
    pub fn vector(&self, n: usize) -> Result<Vec<BigRational>> {
        let int = |k: i64| BigRational::from_integer(k.into());
        match self {
            Probe::Unit { index } if *index < n => Ok((0..n).map(|j| int(i64::from(j == *index))).collect()),
            Probe::Unit { index } => Err(Error::DimensionMismatch(format!("unit vector {index} in dimension {n}"))),
            Probe::Ones => Ok(vec![int(1); n]),
            Probe::Explicit { values } if values.len() == n => Ok(values.clone()),
            Probe::Explicit { values } => Err(Error::DimensionMismatch(format!("{} values in dimension {n}", values.len()))),
            Probe::Random { seed } => {
                let mut rng = SeededStream::new(*seed, 4);
                loop {
                    let v: Vec<i64> = (0..n).map(|_| rng.below(11) as i64 - 5).collect();
                    if v.iter().any(|&x| x != 0) {
                        return Ok(v.into_iter().map(int).collect());
                    }
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct AnalysisOptions {
    pub max_minor_size: Option<usize>,
    pub probes: Vec<Probe>,
    pub max_witnesses: usize,
    pub prime_budget: usize,
    pub precision: Precision,
    pub exec: Exec,
    pub seed: u64,
    pub skip_minors: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            max_minor_size: None,
            probes: Vec::new(),
            max_witnesses: 8,
            prime_budget: DEFAULT_PRIME_BUDGET,
            precision: Precision::from_env(),
            exec: Exec::default(),
            seed: 0,
            skip_minors: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallJson {
    pub re: String,
    pub im: String,
    pub rad: String,
}

impl From<&Ball> for BallJson {
    fn from(b: &Ball) -> Self {
        let digits = (b.prec() as f64 * std::f64::consts::LOG10_2) as usize;
        BallJson {
            re: b.re().to_decimal(digits.clamp(6, 60)),
            im: b.im().to_decimal(digits.clamp(6, 60)),
            rad: format!("{:e}", b.rad().to_f64()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorEntry {
    #[serde(with = "crate::serde_util::polynomial")]
    pub poly: IntPolynomial,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomogeneityRow {
    pub m: usize,
    pub verdict: Option<Homogeneity>,
    pub orbit_sizes: Vec<usize>,
    /// Why the row is undecided.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorGalois {
    #[serde(with = "crate::serde_util::polynomial")]
    pub poly: IntPolynomial,
    pub certificate: AnCertificate,
    pub homogeneity: Vec<HomogeneityRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisSection {
    pub irreducible: bool,
    /// Nonlinear irreducible factors.
    pub factors: Vec<FactorGalois>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub coefficients: Vec<BallJson>,
    /// `null` on the rows, where the signal is zero by construction.
    pub vertex_values: Vec<Option<BallJson>>,
    pub spectral_support: usize,
    pub spectral_support_certified: usize,
    pub vertex_support_bound: usize,
    pub vertex_support_certified: usize,
    pub bound: usize,
    pub residual_contains_zero: bool,
    pub bits: u32,
}

impl From<&UncertaintyWitness> for WitnessJson {
    fn from(w: &UncertaintyWitness) -> Self {
        WitnessJson {
            rows: w.rows.clone(),
            cols: w.cols.clone(),
            coefficients: w.coefficients.iter().map(BallJson::from).collect(),
            vertex_values: w.vertex_values.iter().map(|v| v.as_ref().map(BallJson::from)).collect(),
            spectral_support: w.spectral_support,
            spectral_support_certified: w.spectral_support_certified,
            vertex_support_bound: w.vertex_support_bound,
            vertex_support_certified: w.vertex_support_certified,
            bound: w.bound,
            residual_contains_zero: w.residual_contains_zero,
            bits: w.bits,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorsSection {
    pub scan: ScanReport,
    pub witnesses: Vec<WitnessJson>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timings {
    pub spectral_ms: u64,
    pub galois_ms: u64,
    pub minors_ms: u64,
    pub walk_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub tool: String,
    pub input: InputDescriptor,
    pub seed: u64,
    #[serde(with = "crate::serde_util::polynomial")]
    pub charpoly: IntPolynomial,
    pub factorization: Vec<FactorEntry>,
    pub squarefree: bool,
    pub spectrum: Vec<BallJson>,
    pub galois: GaloisSection,
    pub minors: Option<MinorsSection>,
    pub walk: Vec<WalkMatrixReport>,
    pub notes: Vec<String>,
    /// Every requested decision was made (no undecided minor or coefficient).
    pub complete: bool,
    pub timings: Timings,
}

impl AnalysisReport {
    /// JSON with timings zeroed: identical inputs and flags give identical bytes.
    pub fn canonical_json(&self) -> String {
        let mut r = self.clone();
        r.timings = Timings::default();
        serde_json::to_string_pretty(&r).expect("report serializes")
    }

    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_json().as_bytes()))
    }
}

fn elapsed_ms(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

fn galois_section(factors: &[FactorEntry], opts: &AnalysisOptions) -> Result<GaloisSection> {
    let irreducible = factors.len() == 1 && factors[0].multiplicity == 1;
    let mut out = Vec::new();
    for fe in factors.iter().filter(|f| f.poly.degree() >= 2) {
        let f = &fe.poly;
        let certificate = certify_an_with(f, opts.prime_budget, opts.exec);
        let roots = crate::poly::isolate_roots(f, opts.precision)?;
        let homogeneity = (1..=f.degree() / 2)
            .map(|m| match homogeneity(f, m, &roots, Some(&certificate)) {
                Ok(h) => HomogeneityRow { m, verdict: Some(h.verdict), orbit_sizes: h.orbit_sizes, error: None },
                Err(e) => HomogeneityRow { m, verdict: None, orbit_sizes: Vec::new(), error: Some(e.to_string()) },
            })
            .collect();
        out.push(FactorGalois { poly: f.clone(), certificate, homogeneity });
    }
    Ok(GaloisSection { irreducible, factors: out })
}

/// Runs the full pipeline on `matrix`. `operator` selects Laplacian mode
/// (exact kernel vector) for [`Operator::Laplacian`].
pub fn analyze(matrix: &IntMatrix, input: InputDescriptor, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    let mut timings = Timings::default();
    let mut notes = Vec::new();
    let t = Instant::now();
    let charpoly = matrix.char_poly();
    let fz = factor_over_z(&charpoly);
    let factorization: Vec<FactorEntry> =
        fz.factors.iter().map(|(g, k)| FactorEntry { poly: g.clone(), multiplicity: *k }).collect();
    let squarefree = factorization.iter().all(|f| f.multiplicity == 1);
    let sd = if squarefree {
        Some(match input.operator {
            Operator::Laplacian => SpectralData::build_laplacian(matrix, opts.precision)?,
            _ => SpectralData::build(matrix, opts.precision)?,
        })
    } else {
        notes.push("characteristic polynomial has repeated roots; eigenvector minors are not defined".into());
        None
    };
    timings.spectral_ms = elapsed_ms(t);

    let t = Instant::now();
    let galois = galois_section(&factorization, opts)?;
    timings.galois_ms = elapsed_ms(t);

    let t = Instant::now();
    let mut complete = true;
    let minors = match &sd {
        Some(sd) if !opts.skip_minors => {
            let engine = MinorEngine::with_options(sd, opts.prime_budget, opts.exec);
            let scan = engine.scan_all_minors(ScanOptions { max_size: opts.max_minor_size, ..Default::default() })?;
            complete &= scan.total_undecided() == 0;
            let mut witnesses = Vec::new();
            for idx in scan.sizes.iter().flat_map(|s| &s.vanishing_supports).take(opts.max_witnesses) {
                match engine.uncertainty_witness(idx) {
                    Ok(w) => witnesses.push(WitnessJson::from(&w)),
                    Err(e) => notes.push(format!("no witness for rows {:?} cols {:?}: {e}", idx.rows, idx.cols)),
                }
            }
            Some(MinorsSection { scan, witnesses })
        }
        _ => None,
    };
    timings.minors_ms = elapsed_ms(t);

    let t = Instant::now();
    let mut walk = Vec::new();
    for probe in &opts.probes {
        let x = probe.vector(matrix.rows())?;
        let report = match &sd {
            Some(sd) => walk_rank_with(sd, &x)?,
            None => walk_rank(matrix, &x, opts.precision)?,
        };
        complete &= report.spectral.as_ref().is_none_or(|s| s.undecided == 0);
        walk.push(report);
    }
    timings.walk_ms = elapsed_ms(t);

    Ok(AnalysisReport {
        tool: TOOL.into(),
        input,
        seed: opts.seed,
        charpoly,
        factorization,
        squarefree,
        spectrum: sd.as_ref().map(|sd| (0..sd.dim()).map(|i| BallJson::from(sd.eigenvalue(i))).collect()).unwrap_or_default(),
        galois,
        minors,
        walk,
        notes,
        complete,
        timings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::fixture;

    fn fig3() -> (IntMatrix, InputDescriptor) {
        let l = fixture("fig3", None).unwrap().laplacian().unwrap();
        let input = InputDescriptor::new("fixture:fig3", Operator::Laplacian, &l);
        (l, input)
    }

    #[test]
    fn report_round_trips_and_replays() {
        let (l, input) = fig3();
        let opts = AnalysisOptions { probes: vec![Probe::Unit { index: 0 }, Probe::Ones, Probe::Random { seed: 9 }], ..Default::default() };
        let a = analyze(&l, input.clone(), &opts).unwrap();
        let json = serde_json::to_string(&a).unwrap();
        let back: AnalysisReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
        let b = analyze(&l, input, &AnalysisOptions { exec: Exec::Sequential, ..opts }).unwrap();
        assert_eq!(a.canonical_json(), b.canonical_json());
        assert!(a.complete);
        let minors = a.minors.unwrap();
        assert_eq!(minors.scan.sizes[2].vanishing, minors.scan.sizes[3].vanishing);
        assert!(!minors.witnesses.is_empty());
        assert!(a.walk.iter().all(WalkMatrixReport::consistent));
    }

    #[test]
    fn repeated_roots_skip_minors() {
        let a = crate::graphs::Graph::cycle(4).adjacency();
        let input = InputDescriptor::new("cycle4", Operator::Adjacency, &a);
        let r = analyze(&a, input, &AnalysisOptions { probes: vec![Probe::Ones], ..Default::default() }).unwrap();
        assert!(!r.squarefree && r.minors.is_none());
        assert_eq!(r.walk[0].rank, 1);
    }

    #[test]
    fn probes_validate_dimension() {
        assert!(Probe::Unit { index: 3 }.vector(3).is_err());
        assert_eq!(Probe::Random { seed: 1 }.vector(4).unwrap(), Probe::Random { seed: 1 }.vector(4).unwrap());
    }
}
