//! Exact decisions on the vanishing of eigenvector-matrix minors.
//!
//! A minor `det U[W, S]` is certified nonzero when its ball excludes zero.
//! It is certified zero only through the squared orbit norm
//! `N = ∏_{S' ∈ B} det(U[W, S'])²` over a Galois-stable block `B ∋ S`:
//! conjugation permutes the factors, so `N` is a rational integer and a
//! ball around it of radius below 1/2 identifies it. Vanishing is constant
//! on an orbit, so `N = 0` on a single-orbit block zeroes every minor in it.

mod orbits;
mod witness;

pub use orbits::{ColumnOrbits, GaloisStructure};
pub use witness::UncertaintyWitness;

use crate::arith::{Ball, Precision};
use crate::exec::Exec;
use crate::galois::DEFAULT_PRIME_BUDGET;
use crate::linalg::BallMatrix;
use crate::spectral::SpectralData;
use crate::{Error, Result};
use itertools::Itertools;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::sync::{Arc, Mutex};

/// Row set `W` (vertex indices) and column set `S` (root indices), both
/// 0-based and ascending, `|W| = |S|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MinorIndex {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl MinorIndex {
    pub fn new(mut rows: Vec<usize>, mut cols: Vec<usize>) -> Result<MinorIndex> {
        rows.sort_unstable();
        cols.sort_unstable();
        if rows.len() != cols.len() {
            return Err(Error::DimensionMismatch(format!("{} rows vs {} columns", rows.len(), cols.len())));
        }
        if rows.windows(2).any(|w| w[0] == w[1]) || cols.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("repeated index in minor".into()));
        }
        Ok(MinorIndex { rows, cols })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// `([n] \ W, [n] \ S)`.
    pub fn complement(&self, n: usize) -> MinorIndex {
        MinorIndex { rows: complement(&self.rows, n), cols: complement(&self.cols, n) }
    }
}

fn complement(set: &[usize], n: usize) -> Vec<usize> {
    (0..n).filter(|i| !set.contains(i)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MinorStatus {
    NonzeroCertified,
    ZeroCertified,
    Undecided,
}

impl MinorStatus {
    pub fn is_decided(self) -> bool {
        self != MinorStatus::Undecided
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Evidence {
    /// A determinant ball of this block excluded zero.
    BallExclusion { bits: u32 },
    /// The squared orbit norm, recognized as this integer.
    OrbitNorm { value: String, bits: u32 },
    /// Inferred from the complementary minor of a symmetric matrix.
    Complement,
    /// Every term of the Leibniz expansion contains an exactly zero entry.
    Structural,
    PrecisionExhausted { bits: u32 },
}

/// Decision for one row set against one block of column sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitVerdict {
    pub rows: Vec<usize>,
    pub block: usize,
    pub exact_orbit: bool,
    /// Aligned with the block's column sets.
    pub statuses: Vec<MinorStatus>,
    pub evidence: Evidence,
}

impl OrbitVerdict {
    /// The common status when uniform.
    pub fn uniform(&self) -> Option<MinorStatus> {
        let first = *self.statuses.first()?;
        self.statuses.iter().all(|&s| s == first).then_some(first)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorVerdict {
    pub index: MinorIndex,
    pub block: usize,
    pub exact_orbit: bool,
    pub status: MinorStatus,
    pub evidence: Evidence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeSummary {
    pub m: usize,
    pub minors: u64,
    pub vanishing: u64,
    pub undecided: u64,
    pub blocks: usize,
    pub exact_blocks: bool,
    /// Sizes above `n/2` of a symmetric matrix, from the complement lemma.
    pub inferred: bool,
    /// Row sets re-decided directly to cross-check an inferred size.
    pub spot_checked: usize,
    pub vanishing_supports: Vec<MinorIndex>,
    pub undecided_supports: Vec<MinorIndex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub n: usize,
    pub sizes: Vec<SizeSummary>,
    pub notes: Vec<String>,
}

impl ScanReport {
    pub fn total_minors(&self) -> u64 {
        self.sizes.iter().map(|s| s.minors).sum()
    }

    pub fn total_vanishing(&self) -> u64 {
        self.sizes.iter().map(|s| s.vanishing).sum()
    }

    pub fn total_undecided(&self) -> u64 {
        self.sizes.iter().map(|s| s.undecided).sum()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ScanOptions {
    pub max_size: Option<usize>,
    /// Infer sizes above `n/2` by the complement lemma (symmetric input).
    pub use_complement: bool,
    pub spot_checks: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { max_size: None, use_complement: true, spot_checks: 4 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementCheck {
    pub verdict: MinorStatus,
    pub complement: MinorStatus,
    pub holds: bool,
}

/// Row of a generalized minor: `λ^power · u(vertex)`. Plain minors use
/// power 0.
pub type RowSpec = (usize, u32);

/// Minor decisions over one spectral decomposition, with lazily refined
/// precision levels and cached orbit structures.
pub struct MinorEngine<'a> {
    base: &'a SpectralData,
    ladder: Precision,
    levels: Mutex<Vec<Arc<SpectralData>>>,
    galois: GaloisStructure,
    /// `zeros[v][i]`: `u_i(v) = 0` exactly, from a zero norm over `i`'s factor.
    zeros: Vec<Vec<bool>>,
    exec: Exec,
}

impl<'a> MinorEngine<'a> {
    pub fn new(sd: &'a SpectralData) -> MinorEngine<'a> {
        Self::with_options(sd, DEFAULT_PRIME_BUDGET, Exec::default())
    }

    pub fn with_options(sd: &'a SpectralData, prime_budget: usize, exec: Exec) -> MinorEngine<'a> {
        MinorEngine {
            base: sd,
            ladder: Precision { bits: sd.prec(), ..sd.ladder() },
            levels: Mutex::new(vec![Arc::new(sd.clone())]),
            galois: GaloisStructure::new(sd, prime_budget, exec),
            zeros: exact_zeros(sd),
            exec,
        }
    }

    pub fn spectral(&self) -> &SpectralData {
        self.base
    }

    pub fn galois(&self) -> &GaloisStructure {
        &self.galois
    }

    pub fn n(&self) -> usize {
        self.base.dim()
    }

    /// Spectral data at rung `k` of the ladder; `None` past the cap.
    pub(crate) fn level(&self, k: usize) -> Result<Option<Arc<SpectralData>>> {
        let mut levels = self.levels.lock().expect("level lock");
        while levels.len() <= k {
            let last = levels.last().expect("base level").clone();
            let p = Precision { bits: last.prec(), ..self.ladder };
            let Some(next) = p.escalate() else { return Ok(None) };
            levels.push(Arc::new(last.at_precision(next.bits)?));
        }
        Ok(Some(levels[k].clone()))
    }

    pub(crate) fn submatrix(sd: &SpectralData, rows: &[RowSpec], cols: &[usize]) -> BallMatrix {
        let columns: Vec<Vec<Ball>> = cols
            .iter()
            .map(|&c| {
                let u = sd.eigenvector(c);
                let lambda = sd.eigenvalue(c);
                rows.iter()
                    .map(|&(v, t)| if t == 0 { u[v].clone() } else { lambda.pow(t).mul(&u[v]) })
                    .collect()
            })
            .collect();
        BallMatrix::from_columns(&columns)
    }

    pub(crate) fn det(sd: &SpectralData, rows: &[RowSpec], cols: &[usize]) -> Ball {
        if rows.is_empty() {
            return Ball::one(sd.prec());
        }
        Self::submatrix(sd, rows, cols).determinant()
    }

    fn entry_is_zero(&self, (v, t): RowSpec, i: usize) -> bool {
        self.zeros[v][i] || (t > 0 && *self.base.factor(self.base.factor_of(i)) == crate::poly::IntPolynomial::x())
    }

    /// No perfect matching through entries that may be nonzero.
    fn structurally_zero(&self, rows: &[RowSpec], cols: &[usize]) -> bool {
        let allowed = |r: usize, c: usize| !self.entry_is_zero(rows[r], cols[c]);
        let mut matched: Vec<Option<usize>> = vec![None; cols.len()];
        fn augment(
            r: usize,
            allowed: &dyn Fn(usize, usize) -> bool,
            seen: &mut [bool],
            matched: &mut [Option<usize>],
        ) -> bool {
            for c in 0..matched.len() {
                if allowed(r, c) && !seen[c] {
                    seen[c] = true;
                    if matched[c].is_none_or(|r2| augment(r2, allowed, seen, matched)) {
                        matched[c] = Some(r);
                        return true;
                    }
                }
            }
            false
        }
        !(0..rows.len()).all(|r| augment(r, &allowed, &mut vec![false; cols.len()], &mut matched))
    }

    /// Decides every column set of `block` against the rows.
    ///
    /// On a block that may hold several orbits, sets that are structurally
    /// zero are removed first; they form a Galois-stable subset, so the norm
    /// over the rest is still a rational integer.
    pub fn decide_block(&self, rows: &[RowSpec], orbits: &ColumnOrbits, block: usize) -> Result<OrbitVerdict> {
        let all_sets = &orbits.blocks[block];
        let exact = orbits.exact[block];
        let structural: Vec<bool> = all_sets.iter().map(|s| self.structurally_zero(rows, s)).collect();
        if structural.iter().any(|&z| z) {
            let mut statuses: Vec<MinorStatus> = structural
                .iter()
                .map(|&z| if z { MinorStatus::ZeroCertified } else { MinorStatus::Undecided })
                .collect();
            let rest: Vec<usize> = (0..all_sets.len()).filter(|&k| !structural[k]).collect();
            if rest.is_empty() {
                return Ok(OrbitVerdict {
                    rows: rows.iter().map(|r| r.0).collect(),
                    block,
                    exact_orbit: exact,
                    statuses,
                    evidence: Evidence::Structural,
                });
            }
            let sets: Vec<Vec<usize>> = rest.iter().map(|&k| all_sets[k].clone()).collect();
            let sub = self.decide_sets(rows, &sets, false, block)?;
            for (&k, st) in rest.iter().zip(sub.statuses) {
                statuses[k] = st;
            }
            return Ok(OrbitVerdict { statuses, exact_orbit: exact, ..sub });
        }
        self.decide_sets(rows, all_sets, exact, block)
    }

    fn decide_sets(&self, rows: &[RowSpec], sets: &[Vec<usize>], exact: bool, block: usize) -> Result<OrbitVerdict> {
        let plain_rows: Vec<usize> = rows.iter().map(|r| r.0).collect();
        let verdict = |statuses, evidence| OrbitVerdict {
            rows: plain_rows.clone(),
            block,
            exact_orbit: exact,
            statuses,
            evidence,
        };
        let mut statuses = vec![MinorStatus::Undecided; sets.len()];
        let mut last_bits = self.base.prec();
        for rung in 0.. {
            let Some(sd) = self.level(rung)? else { break };
            let bits = sd.prec();
            last_bits = bits;
            let mut dets = Vec::with_capacity(sets.len());
            for (k, s) in sets.iter().enumerate() {
                let d = Self::det(&sd, rows, s);
                if d.excludes_zero() {
                    if exact {
                        return Ok(verdict(vec![MinorStatus::NonzeroCertified; sets.len()], Evidence::BallExclusion { bits }));
                    }
                    statuses[k] = MinorStatus::NonzeroCertified;
                }
                dets.push(d);
            }
            if statuses.iter().all(|&s| s == MinorStatus::NonzeroCertified) {
                return Ok(verdict(statuses, Evidence::BallExclusion { bits }));
            }
            let norm = dets.iter().fold(Ball::one(bits), |acc, d| acc.mul(&d.sqr()));
            if let Some(value) = norm.recognize_integer() {
                let evidence = Evidence::OrbitNorm { value: value.to_string(), bits };
                if value != 0.into() {
                    return Ok(verdict(vec![MinorStatus::NonzeroCertified; sets.len()], evidence));
                }
                if exact {
                    return Ok(verdict(vec![MinorStatus::ZeroCertified; sets.len()], evidence));
                }
                let open: Vec<usize> = (0..sets.len()).filter(|&k| statuses[k] == MinorStatus::Undecided).collect();
                if let [k] = open.as_slice() {
                    statuses[*k] = MinorStatus::ZeroCertified;
                    return Ok(verdict(statuses, evidence));
                }
            }
        }
        Ok(verdict(statuses, Evidence::PrecisionExhausted { bits: last_bits }))
    }

    /// Verdicts of row set `rows` against every block of `m`-sets.
    pub fn certify_rowset(&self, rows: &[usize]) -> Result<Vec<OrbitVerdict>> {
        let orbits = self.galois.column_orbits(rows.len());
        let spec: Vec<RowSpec> = rows.iter().map(|&v| (v, 0)).collect();
        (0..orbits.blocks.len()).map(|b| self.decide_block(&spec, &orbits, b)).collect()
    }

    /// Ball first; the block decision when the ball straddles zero.
    pub fn certify_minor(&self, idx: &MinorIndex) -> Result<MinorVerdict> {
        let spec: Vec<RowSpec> = idx.rows.iter().map(|&v| (v, 0)).collect();
        self.certify_generalized(&spec, &idx.cols).map(|(block, exact, status, evidence)| MinorVerdict {
            index: idx.clone(),
            block,
            exact_orbit: exact,
            status,
            evidence,
        })
    }

    /// `(block, exact, status, evidence)` for rows given as `(vertex, power)`.
    pub(crate) fn certify_generalized(
        &self,
        rows: &[RowSpec],
        cols: &[usize],
    ) -> Result<(usize, bool, MinorStatus, Evidence)> {
        let orbits = self.galois.column_orbits(cols.len());
        let block = orbits
            .block_of(cols)
            .ok_or_else(|| Error::InvalidInput(format!("column set {cols:?} out of range")))?;
        let d = Self::det(self.base, rows, cols);
        if d.excludes_zero() {
            let bits = self.base.prec();
            return Ok((block, orbits.exact[block], MinorStatus::NonzeroCertified, Evidence::BallExclusion { bits }));
        }
        let v = self.decide_block(rows, &orbits, block)?;
        let pos = orbits.blocks[block].iter().position(|s| s == cols).expect("set lies in its block");
        Ok((block, v.exact_orbit, v.statuses[pos], v.evidence))
    }

    /// Verdict equality under complementation (symmetric matrices).
    pub fn complement_check(&self, idx: &MinorIndex) -> Result<ComplementCheck> {
        if !self.base.is_symmetric() {
            return Err(Error::Precondition("the complement lemma needs a symmetric matrix".into()));
        }
        let verdict = self.certify_minor(idx)?.status;
        let complement = self.certify_minor(&idx.complement(self.n()))?.status;
        Ok(ComplementCheck { verdict, complement, holds: verdict.is_decided() && verdict == complement })
    }

    pub fn uncertainty_witness(&self, idx: &MinorIndex) -> Result<UncertaintyWitness> {
        witness::build(self, idx)
    }

    /// Decides all minors of sizes `1..=max_size` by row set and block.
    pub fn scan_all_minors(&self, opts: ScanOptions) -> Result<ScanReport> {
        let n = self.n();
        let max = opts.max_size.unwrap_or(n).min(n);
        let infer = opts.use_complement && self.base.is_symmetric();
        let mut sizes: Vec<SizeSummary> = Vec::new();
        for m in 1..=max {
            let summary = if infer && 2 * m > n && m < n {
                let mirror = sizes.iter().find(|s| s.m == n - m).expect("smaller sizes come first");
                self.inferred_size(m, mirror, opts.spot_checks)?
            } else {
                self.direct_size(m)?
            };
            sizes.push(summary);
        }
        Ok(ScanReport { n, sizes, notes: self.galois.notes() })
    }

    fn direct_size(&self, m: usize) -> Result<SizeSummary> {
        let n = self.n();
        let orbits = self.galois.column_orbits(m);
        let rowsets = colex_subsets(n, m);
        let results = self.exec.map(&rowsets, |w| self.certify_rowset(w));
        let mut s = SizeSummary {
            m,
            minors: 0,
            vanishing: 0,
            undecided: 0,
            blocks: orbits.blocks.len(),
            exact_blocks: orbits.all_exact(),
            inferred: false,
            spot_checked: 0,
            vanishing_supports: Vec::new(),
            undecided_supports: Vec::new(),
        };
        for (w, verdicts) in rowsets.iter().zip(results) {
            for v in verdicts? {
                for (cols, status) in orbits.blocks[v.block].iter().zip(&v.statuses) {
                    s.minors += 1;
                    let idx = || MinorIndex { rows: w.clone(), cols: cols.clone() };
                    match status {
                        MinorStatus::ZeroCertified => {
                            s.vanishing += 1;
                            s.vanishing_supports.push(idx());
                        }
                        MinorStatus::Undecided => {
                            s.undecided += 1;
                            s.undecided_supports.push(idx());
                        }
                        MinorStatus::NonzeroCertified => {}
                    }
                }
            }
        }
        s.vanishing_supports.sort();
        s.undecided_supports.sort();
        Ok(s)
    }

    fn inferred_size(&self, m: usize, mirror: &SizeSummary, spot_checks: usize) -> Result<SizeSummary> {
        let n = self.n();
        let flip = |v: &[MinorIndex]| -> Vec<MinorIndex> { v.iter().map(|i| i.complement(n)).sorted().collect() };
        let vanishing = flip(&mirror.vanishing_supports);
        let undecided = flip(&mirror.undecided_supports);
        let zero_set: HashSet<&MinorIndex> = vanishing.iter().collect();
        let open_set: HashSet<&MinorIndex> = undecided.iter().collect();
        let orbits = self.galois.column_orbits(m);
        let rowsets = colex_subsets(n, m);
        let checked: Vec<Vec<usize>> = spread(&rowsets, spot_checks);
        for w in &checked {
            for v in self.certify_rowset(w)? {
                for (cols, status) in orbits.blocks[v.block].iter().zip(&v.statuses) {
                    let idx = MinorIndex { rows: w.clone(), cols: cols.clone() };
                    if open_set.contains(&idx) || !status.is_decided() {
                        continue;
                    }
                    let expect_zero = zero_set.contains(&idx);
                    if expect_zero != (*status == MinorStatus::ZeroCertified) {
                        return Err(Error::InvalidInput(format!(
                            "complement lemma violated at rows {:?}, cols {:?}",
                            idx.rows, idx.cols
                        )));
                    }
                }
            }
        }
        Ok(SizeSummary {
            m,
            minors: mirror.minors,
            vanishing: mirror.vanishing,
            undecided: mirror.undecided,
            blocks: orbits.blocks.len(),
            exact_blocks: orbits.all_exact(),
            inferred: true,
            spot_checked: checked.len(),
            vanishing_supports: vanishing,
            undecided_supports: undecided,
        })
    }
}

fn exact_zeros(sd: &SpectralData) -> Vec<Vec<bool>> {
    let n = sd.dim();
    let mut by_factor = vec![vec![false; sd.factor_count()]; n];
    for (v, row) in by_factor.iter_mut().enumerate() {
        for (k, z) in row.iter_mut().enumerate() {
            let mut p = sd.ladder();
            let mut fine = None;
            loop {
                let data = fine.as_ref().unwrap_or(sd);
                if let Some(norm) = data.entry_norm(v, k) {
                    *z = norm.is_zero();
                    break;
                }
                let Some(next) = p.escalate() else { break };
                p = next;
                match sd.at_precision(p.bits) {
                    Ok(d) => fine = Some(d),
                    Err(_) => break,
                }
            }
        }
    }
    (0..n).map(|v| (0..n).map(|i| by_factor[v][sd.factor_of(i)]).collect()).collect()
}

/// `m`-subsets of `0..n` in colexicographic order.
pub fn colex_subsets(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = (0..n).combinations(m).collect();
    all.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    all
}

/// Up to `k` evenly spaced items, always including the first.
fn spread<T: Clone>(items: &[T], k: usize) -> Vec<T> {
    if k == 0 || items.is_empty() {
        return Vec::new();
    }
    let k = k.min(items.len());
    (0..k).map(|i| items[i * items.len() / k].clone()).collect()
}
