//! Walk matrices `W(x) = (x, Mx, …, M^{n-1}x)` with exact rank, the
//! annihilator of `x`, and an independent count of its nonzero spectral
//! coefficients.
//!
//! With simple eigenvalues `x = Σ c_i u_i` and the Krylov space of `x` is
//! spanned by the `u_i` with `c_i ≠ 0`, so `rank W(x) = ‖U⁻¹x‖₀`. The
//! coefficient `c_i` is a nonzero multiple of `⟨w_i, x⟩` for the left
//! eigenvector `w_i`.

use crate::arith::Ball;
use crate::linalg::{IntMatrix, RatMatrix};
use crate::minors::{Evidence, MinorStatus};
use crate::poly::{factor_over_z, IntPolynomial};
use crate::spectral::SpectralData;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralCoefficient {
    pub root: usize,
    pub status: MinorStatus,
    pub evidence: Evidence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralSparsity {
    /// Certified-nonzero coefficients.
    pub nonzero: usize,
    pub undecided: usize,
    pub coefficients: Vec<SpectralCoefficient>,
}

/// The full-rank statement that applies to this input, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WalkClaim {
    /// Irreducible characteristic polynomial, or for a Laplacian irreducible
    /// `ξ` with `⟨x, 𝟙⟩ ≠ 0` and `x ∉ span(𝟙)`: the rank must be `n`.
    FullRank { holds: bool },
    /// Laplacian with irreducible `ξ` and `⟨x, 𝟙⟩ = 0`: the annihilator
    /// loses the factor `λ`, so the rank is `n - 1` rather than `n`.
    OnesOrthogonal { rank: usize, expected: usize },
    /// Laplacian with `x ∈ span(𝟙)`: the kernel eigenvector, rank 1.
    OnesMultiple { rank: usize },
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkMatrixReport {
    #[serde(with = "crate::serde_util::rationals")]
    pub x: Vec<BigRational>,
    pub n: usize,
    pub rank: usize,
    /// Monic, of minimal degree with `Q(M)x = 0`.
    #[serde(with = "crate::serde_util::polynomial")]
    pub annihilator: IntPolynomial,
    /// `Q(M)x = 0`, checked in exact arithmetic.
    pub annihilates: bool,
    pub divides_charpoly: bool,
    /// Absent when the characteristic polynomial has repeated roots.
    pub spectral: Option<SpectralSparsity>,
    /// `rank = ‖U⁻¹x‖₀`; absent when some coefficient is undecided.
    pub rank_identity: Option<bool>,
    pub claim: WalkClaim,
}

impl WalkMatrixReport {
    /// Every exact identity that applies holds.
    pub fn consistent(&self) -> bool {
        self.annihilates
            && self.divides_charpoly
            && self.annihilator.degree() == self.rank
            && self.rank_identity != Some(false)
            && self.claim != WalkClaim::FullRank { holds: false }
            && !matches!(self.claim, WalkClaim::OnesMultiple { rank } if rank != 1)
    }
}

/// Columns `x, Mx, …, M^{k-1}x`.
pub fn krylov_columns(m: &IntMatrix, x: &[BigRational], k: usize) -> Vec<Vec<BigRational>> {
    let mut cols = Vec::with_capacity(k);
    let mut v = x.to_vec();
    for _ in 0..k {
        let next = m.mul_rational_vec(&v);
        cols.push(std::mem::replace(&mut v, next));
    }
    cols
}

pub fn walk_matrix(m: &IntMatrix, x: &[BigRational]) -> RatMatrix {
    RatMatrix::from_columns(&krylov_columns(m, x, m.rows()))
}

fn check_vector(m: &IntMatrix, x: &[BigRational]) -> Result<()> {
    if !m.is_square() || x.len() != m.rows() {
        return Err(Error::DimensionMismatch(format!("{}x{} matrix, vector of length {}", m.rows(), m.cols(), x.len())));
    }
    if x.iter().all(Zero::is_zero) {
        return Err(Error::Precondition("x must be nonzero".into()));
    }
    Ok(())
}

/// Exact rank and annihilator of `x` under `M`.
fn rank_and_annihilator(m: &IntMatrix, x: &[BigRational]) -> (usize, IntPolynomial, bool) {
    let n = m.rows();
    let cols = krylov_columns(m, x, n + 1);
    let rank = RatMatrix::from_columns(&cols[..n]).rank();
    // The first `rank` columns are independent and column `rank` depends on them.
    let kernel = RatMatrix::from_columns(&cols[..=rank]).kernel();
    debug_assert_eq!(kernel.len(), 1);
    let a = &kernel[0];
    let lead = a[rank].clone();
    let monic: Vec<BigRational> = a.iter().map(|c| c / &lead).collect();
    let annihilates = (0..n).all(|row| {
        monic.iter().zip(&cols).fold(BigRational::zero(), |acc, (c, col)| acc + c * &col[row]).is_zero()
    });
    // Q divides the monic integer φ_M, so by Gauss's lemma its coefficients are integers.
    let coeffs: Vec<BigInt> = monic
        .iter()
        .map(|c| {
            assert!(c.is_integer(), "annihilator of an integer matrix has integer coefficients");
            c.to_integer()
        })
        .collect();
    (rank, IntPolynomial::new(coeffs), annihilates)
}

/// `x` times the lcm of its denominators.
fn integer_multiple(x: &[BigRational]) -> Vec<BigInt> {
    let l = x.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    x.iter().map(|q| (q * BigRational::from_integer(l.clone())).to_integer()).collect()
}

/// Certified zero pattern of `⟨w_i, x⟩` over all roots, factor by factor.
pub fn spectral_sparsity(sd: &SpectralData, x: &[BigRational]) -> Result<SpectralSparsity> {
    let xi = integer_multiple(x);
    let mut coefficients: Vec<Option<SpectralCoefficient>> = vec![None; sd.dim()];
    for k in 0..sd.factor_count() {
        let (status, evidence) = decide_factor(sd, k, &xi)?;
        for &i in sd.factor_roots(k) {
            coefficients[i] = Some(SpectralCoefficient { root: i, status, evidence: evidence.clone() });
        }
    }
    let coefficients: Vec<SpectralCoefficient> = coefficients.into_iter().map(|c| c.expect("roots cover")).collect();
    Ok(SpectralSparsity {
        nonzero: coefficients.iter().filter(|c| c.status == MinorStatus::NonzeroCertified).count(),
        undecided: coefficients.iter().filter(|c| c.status == MinorStatus::Undecided).count(),
        coefficients,
    })
}

/// Conjugation permutes a factor's coefficients, so they vanish together;
/// their product is a rational integer.
fn decide_factor(sd: &SpectralData, k: usize, x: &[BigInt]) -> Result<(MinorStatus, Evidence)> {
    let mut level = sd.clone();
    let mut p = sd.ladder();
    p.bits = sd.prec();
    loop {
        let bits = level.prec();
        let pairings: Vec<Ball> = level
            .factor_roots(k)
            .iter()
            .map(|&i| {
                level
                    .left_eigenvector(i)
                    .iter()
                    .zip(x)
                    .filter(|(_, xv)| !xv.is_zero())
                    .fold(Ball::zero(bits), |acc, (w, xv)| acc.add(&w.mul(&Ball::from_bigint(xv, bits))))
            })
            .collect();
        if pairings.iter().any(Ball::excludes_zero) {
            return Ok((MinorStatus::NonzeroCertified, Evidence::BallExclusion { bits }));
        }
        let norm = pairings.iter().fold(Ball::one(bits), |acc, b| acc.mul(b));
        if let Some(value) = norm.recognize_integer() {
            let status = if value.is_zero() { MinorStatus::ZeroCertified } else { MinorStatus::NonzeroCertified };
            return Ok((status, Evidence::OrbitNorm { value: value.to_string(), bits }));
        }
        let Some(next) = p.escalate() else {
            return Ok((MinorStatus::Undecided, Evidence::PrecisionExhausted { bits }));
        };
        p = next;
        level = level.at_precision(p.bits)?;
    }
}

fn assemble(
    m: &IntMatrix,
    charpoly: &IntPolynomial,
    x: &[BigRational],
    spectral: Option<SpectralSparsity>,
    claim: impl FnOnce(usize) -> WalkClaim,
) -> WalkMatrixReport {
    let (rank, annihilator, annihilates) = rank_and_annihilator(m, x);
    let rank_identity = spectral.as_ref().filter(|s| s.undecided == 0).map(|s| s.nonzero == rank);
    WalkMatrixReport {
        x: x.to_vec(),
        n: m.rows(),
        rank,
        divides_charpoly: charpoly.div_exact(&annihilator).is_some(),
        annihilator,
        annihilates,
        spectral,
        rank_identity,
        claim: claim(rank),
    }
}

/// Walk-matrix analysis of `x` under `M`. The spectral count needs simple
/// eigenvalues and is omitted otherwise.
pub fn walk_rank(m: &IntMatrix, x: &[BigRational], prec: crate::arith::Precision) -> Result<WalkMatrixReport> {
    check_vector(m, x)?;
    match SpectralData::build(m, prec) {
        Ok(sd) => walk_rank_with(&sd, x),
        Err(Error::NotSquarefree(_)) => {
            let charpoly = m.char_poly();
            let irreducible = factor_over_z(&charpoly).is_irreducible();
            Ok(assemble(m, &charpoly, x, None, |rank| full_rank_claim(irreducible, rank, m.rows())))
        }
        Err(e) => Err(e),
    }
}

fn full_rank_claim(applies: bool, rank: usize, n: usize) -> WalkClaim {
    if applies {
        WalkClaim::FullRank { holds: rank == n }
    } else {
        WalkClaim::NotApplicable
    }
}

/// As [`walk_rank`] over prebuilt spectral data. In Laplacian mode the
/// claim is the one for irreducible `ξ`.
pub fn walk_rank_with(sd: &SpectralData, x: &[BigRational]) -> Result<WalkMatrixReport> {
    let m = sd.matrix();
    check_vector(m, x)?;
    let spectral = spectral_sparsity(sd, x)?;
    let n = sd.dim();
    let laplacian = sd.kernel_root().is_some();
    let irreducible = if laplacian { sd.factor_count() == 2 } else { sd.factor_count() == 1 };
    let ones_orthogonal = x.iter().fold(BigRational::zero(), |acc, v| acc + v).is_zero();
    let ones_multiple = x.windows(2).all(|w| w[0] == w[1]);
    Ok(assemble(m, sd.charpoly(), x, Some(spectral), |rank| match (laplacian, irreducible) {
        (true, _) if ones_multiple => WalkClaim::OnesMultiple { rank },
        (true, true) if ones_orthogonal => WalkClaim::OnesOrthogonal { rank, expected: n - 1 },
        (_, irr) => full_rank_claim(irr, rank, n),
    }))
}

/// Walk matrix of the Laplacian of a connected graph.
pub fn walk_rank_laplacian(
    g: &crate::graphs::Graph,
    x: &[BigRational],
    prec: crate::arith::Precision,
) -> Result<WalkMatrixReport> {
    let l = g.laplacian()?;
    check_vector(&l, x)?;
    let sd = SpectralData::build_laplacian(&l, prec)?;
    walk_rank_with(&sd, x)
}
