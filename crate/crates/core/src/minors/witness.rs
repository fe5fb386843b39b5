//! Sparse pairs `(f, f̂)` from a vanishing minor: a kernel vector `a` of
//! `U[W, S]` placed on `S` gives `f = U·f̂` vanishing on `W`, so
//! `‖f̂‖₀ + ‖f‖₀ ≤ |S| + (n - |W|) = n`.

use super::{MinorEngine, MinorIndex, MinorStatus, RowSpec};
use crate::arith::Ball;
use crate::spectral::SpectralData;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct UncertaintyWitness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// `f̂` on `cols`.
    pub coefficients: Vec<Ball>,
    /// `f = U·f̂`; `None` on `rows`, where it is zero by construction.
    pub vertex_values: Vec<Option<Ball>>,
    /// `|S|`, an upper bound on `‖f̂‖₀`.
    pub spectral_support: usize,
    pub spectral_support_certified: usize,
    /// `n - |W|`, an upper bound on `‖f‖₀`.
    pub vertex_support_bound: usize,
    pub vertex_support_certified: usize,
    pub bound: usize,
    /// Consistency: the balls of `f` on `rows` contain zero.
    pub residual_contains_zero: bool,
    pub bits: u32,
}

/// Cofactor ladder depth before searching for a smaller vanishing minor.
const COFACTOR_RUNGS: usize = 3;

pub(super) fn build(engine: &MinorEngine<'_>, idx: &MinorIndex) -> Result<UncertaintyWitness> {
    let verdict = engine.certify_minor(idx)?;
    if verdict.status != MinorStatus::ZeroCertified {
        return Err(Error::Precondition(format!(
            "minor rows {:?} cols {:?} is not certified zero ({:?})",
            idx.rows, idx.cols, verdict.status
        )));
    }
    let m = idx.size();
    for rung in 0..COFACTOR_RUNGS {
        let Some(sd) = engine.level(rung)? else { break };
        for r in 0..m {
            let a = cofactor_column(&sd, idx, r);
            if a.iter().any(Ball::excludes_zero) {
                return Ok(assemble(&sd, idx, a));
            }
        }
    }
    // Kernel dimension above one: some (m-1)-minor inside also vanishes.
    for r in 0..m {
        for i in 0..m {
            let sub = MinorIndex { rows: drop_at(&idx.rows, r), cols: drop_at(&idx.cols, i) };
            if engine.certify_minor(&sub)?.status == MinorStatus::ZeroCertified {
                return build(engine, &sub);
            }
        }
    }
    Err(Error::precision(engine.spectral().ladder().max_bits, "no certified kernel vector for the vanishing minor"))
}

fn drop_at(v: &[usize], k: usize) -> Vec<usize> {
    v.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &x)| x).collect()
}

/// Column `r` of `adj(U[W, S])`: `a_i = (-1)^{i+r} det U[W \ w_r, S \ s_i]`.
/// `U[W, S]·a = det(U[W, S])·e_r = 0`.
fn cofactor_column(sd: &SpectralData, idx: &MinorIndex, r: usize) -> Vec<Ball> {
    let m = idx.size();
    let rows: Vec<RowSpec> = drop_at(&idx.rows, r).into_iter().map(|v| (v, 0)).collect();
    (0..m)
        .map(|i| {
            let d = MinorEngine::det(sd, &rows, &drop_at(&idx.cols, i));
            if (i + r) % 2 == 1 {
                d.neg()
            } else {
                d
            }
        })
        .collect()
}

fn assemble(sd: &SpectralData, idx: &MinorIndex, a: Vec<Ball>) -> UncertaintyWitness {
    let n = sd.dim();
    let m = idx.size();
    let values: Vec<Ball> = (0..n)
        .map(|v| {
            idx.cols
                .iter()
                .zip(&a)
                .fold(Ball::zero(sd.prec()), |acc, (&c, ac)| acc.add(&ac.mul(&sd.eigenvector(c)[v])))
        })
        .collect();
    let residual_contains_zero = idx.rows.iter().all(|&v| values[v].contains_zero());
    let vertex_values: Vec<Option<Ball>> =
        (0..n).map(|v| (!idx.rows.contains(&v)).then(|| values[v].clone())).collect();
    UncertaintyWitness {
        rows: idx.rows.clone(),
        cols: idx.cols.clone(),
        spectral_support: m,
        spectral_support_certified: a.iter().filter(|b| b.excludes_zero()).count(),
        vertex_support_bound: n - m,
        vertex_support_certified: vertex_values.iter().flatten().filter(|b| b.excludes_zero()).count(),
        bound: n,
        coefficients: a,
        vertex_values,
        residual_contains_zero,
        bits: sd.prec(),
    }
}
