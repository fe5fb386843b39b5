//! Block-Krylov matrices: rows `λ_i^t · u_i(v_j)` for `t < r_j`, against a
//! column set `S`. With all radii 1 this is the minor `U[W, S]`.

use crate::arith::Ball;
use crate::minors::{Evidence, MinorEngine, MinorStatus, RowSpec};
use crate::spectral::SpectralData;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockKrylovSpec {
    pub vertices: Vec<usize>,
    pub radii: Vec<u32>,
    pub columns: Vec<usize>,
}

impl BlockKrylovSpec {
    pub fn new(vertices: Vec<usize>, radii: Vec<u32>, mut columns: Vec<usize>) -> Result<BlockKrylovSpec> {
        columns.sort_unstable();
        if vertices.len() != radii.len() {
            return Err(Error::DimensionMismatch(format!("{} vertices, {} radii", vertices.len(), radii.len())));
        }
        if radii.contains(&0) {
            return Err(Error::InvalidInput("radii must be positive".into()));
        }
        let rows: u32 = radii.iter().sum();
        if rows as usize != columns.len() {
            return Err(Error::DimensionMismatch(format!("radii sum to {rows}, {} columns", columns.len())));
        }
        let distinct = |v: &[usize]| {
            let mut s = v.to_vec();
            s.sort_unstable();
            s.windows(2).all(|w| w[0] != w[1])
        };
        if !distinct(&vertices) || !distinct(&columns) {
            return Err(Error::InvalidInput("repeated vertex or column".into()));
        }
        Ok(BlockKrylovSpec { vertices, radii, columns })
    }

    pub fn rows(&self) -> Vec<RowSpec> {
        self.vertices.iter().zip(&self.radii).flat_map(|(&v, &r)| (0..r).map(move |t| (v, t))).collect()
    }
}

/// A pair violating `d(v_i, v_j) > r_i + r_j`; `None` distance means
/// disconnected, which never violates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceViolation {
    pub pair: (usize, usize),
    pub distance: usize,
    pub required_above: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockKrylovVerdict {
    pub spec: BlockKrylovSpec,
    pub distance_condition: bool,
    pub violations: Vec<DistanceViolation>,
    pub full_rank: bool,
    pub status: MinorStatus,
    pub exact_orbit: bool,
    pub evidence: Evidence,
}

/// Graph distances on the support of the off-diagonal entries.
#[allow(clippy::needless_range_loop)]
pub fn support_distances(sd: &SpectralData, from: usize) -> Vec<Option<usize>> {
    let m = sd.matrix();
    let n = m.rows();
    let mut dist = vec![None; n];
    dist[from] = Some(0);
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].expect("queued vertices have distances");
        for w in 0..n {
            if w != v && dist[w].is_none() && !m.get(v, w).is_zero() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Decides whether the block-Krylov matrix is nonsingular. Distance
/// violations are recorded, not rejected.
pub fn block_krylov_fullrank(engine: &MinorEngine<'_>, spec: &BlockKrylovSpec) -> Result<BlockKrylovVerdict> {
    let sd = engine.spectral();
    if !sd.is_symmetric() {
        return Err(Error::Precondition("block-Krylov checks need a symmetric matrix".into()));
    }
    if spec.vertices.iter().any(|&v| v >= sd.dim()) || spec.columns.iter().any(|&c| c >= sd.dim()) {
        return Err(Error::DimensionMismatch("vertex or column out of range".into()));
    }
    let mut violations = Vec::new();
    for (a, (&v, &rv)) in spec.vertices.iter().zip(&spec.radii).enumerate() {
        let dist = support_distances(sd, v);
        for (&w, &rw) in spec.vertices.iter().zip(&spec.radii).skip(a + 1) {
            if let Some(d) = dist[w] {
                if d as u64 <= u64::from(rv + rw) {
                    violations.push(DistanceViolation { pair: (v, w), distance: d, required_above: rv + rw });
                }
            }
        }
    }
    let (_, exact_orbit, status, evidence) = engine.certify_generalized(&spec.rows(), &spec.columns)?;
    if status == MinorStatus::Undecided {
        return Err(match evidence {
            Evidence::PrecisionExhausted { bits } => Error::precision(bits, "block-Krylov determinant"),
            _ => Error::UndecidedSingular,
        });
    }
    Ok(BlockKrylovVerdict {
        spec: spec.clone(),
        distance_condition: violations.is_empty(),
        violations,
        full_rank: status == MinorStatus::NonzeroCertified,
        status,
        exact_orbit,
        evidence,
    })
}

#[derive(Clone, Debug)]
pub struct GramCheck {
    pub value: Ball,
    pub expected: BigInt,
    pub contains: bool,
}

/// `Σ_i λ_i^{a+b} û_i(v) conj(û_i(w))` for unit eigenvectors `û_i`, against
/// `(M^{a+b})_{v,w}`. Normalization divides by `⟨u_i, u_i⟩`, which avoids
/// square roots.
pub fn gram_identity(sd: &SpectralData, v: usize, a: u32, w: usize, b: u32) -> Result<GramCheck> {
    if !sd.is_symmetric() {
        return Err(Error::Precondition("the Gram identity needs a symmetric matrix".into()));
    }
    let bits = sd.prec();
    let mut value = Ball::zero(bits);
    for i in 0..sd.dim() {
        let u = sd.eigenvector(i);
        let norm = u.iter().fold(Ball::zero(bits), |acc, z| acc.add(&z.mul(&z.conj())));
        let term = sd.eigenvalue(i).pow(a + b).mul(&u[v]).mul(&u[w].conj());
        value = value.add(&term.div(&norm)?);
    }
    let expected = sd.matrix().pow(a + b).get(v, w).clone();
    let contains = value.contains(&Ball::from_bigint(&expected, bits));
    Ok(GramCheck { value, expected, contains })
}
