//! Floating-point sparse recovery demos; nothing here is certified.
//!
//! [`prony_recover`] treats the walk samples `(M^k g)(v) = Σ c_i λ_i^k û_i(v)`
//! of a spectrally `s`-sparse `g` as an exponential sum in `k`: a Hankel
//! solve gives the annihilating filter, whose roots are matched against the
//! known eigenvalues. [`sparse_recover`] goes the other way and finds an
//! `s`-sparse vertex signal from `2s` spectral samples by support search;
//! uniqueness rests on the relevant minors being nonzero.

use crate::spectral::SpectralData;
use crate::{Error, Result};
use itertools::Itertools;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Relative residual above which a recovery is rejected.
pub const RESIDUAL_TOLERANCE: f64 = 1e-8;

/// Entries below this are treated as invisible to a vertex sample.
const VISIBILITY: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Recovery {
    /// Root indices for [`prony_recover`], vertices for [`sparse_recover`].
    pub support: Vec<usize>,
    pub coefficients: Vec<Complex64>,
    pub residual: f64,
}

/// Unit-norm eigenvectors in double precision, one per root.
pub fn unit_eigenvectors(sd: &SpectralData) -> Vec<Vec<Complex64>> {
    (0..sd.dim())
        .map(|i| {
            let u: Vec<Complex64> = sd.eigenvector(i).iter().map(|b| b.to_complex64()).collect();
            let norm = u.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
            u.into_iter().map(|z| z / norm).collect()
        })
        .collect()
}

fn eigenvalues(sd: &SpectralData) -> Vec<Complex64> {
    (0..sd.dim()).map(|i| sd.eigenvalue(i).to_complex64()).collect()
}

/// `(M^k g)(vertex)` for `k < count`, `g = Σ c_i û_i` over `terms = (i, c_i)`.
pub fn walk_samples(sd: &SpectralData, vertex: usize, terms: &[(usize, Complex64)], count: usize) -> Vec<Complex64> {
    let u = unit_eigenvectors(sd);
    let lambda = eigenvalues(sd);
    (0..count)
        .map(|k| terms.iter().map(|&(i, c)| c * lambda[i].powu(k as u32) * u[i][vertex]).sum())
        .collect()
}

/// `⟨û_j, f⟩` for `j` in `frequencies`, `f` given by `(vertex, value)` terms.
pub fn spectral_samples(sd: &SpectralData, frequencies: &[usize], terms: &[(usize, Complex64)]) -> Vec<Complex64> {
    let u = unit_eigenvectors(sd);
    frequencies.iter().map(|&j| terms.iter().map(|&(v, c)| u[j][v].conj() * c).sum()).collect()
}

fn relative_residual(a: &DMatrix<Complex64>, x: &DVector<Complex64>, y: &DVector<Complex64>) -> f64 {
    let scale = y.iter().map(|z| z.norm()).fold(1.0, f64::max);
    (a * x - y).iter().map(|z| z.norm()).fold(0.0, f64::max) / scale
}

fn least_squares(a: &DMatrix<Complex64>, y: &DVector<Complex64>) -> Result<DVector<Complex64>> {
    a.clone().svd(true, true).solve(y, 1e-14).map_err(|e| Error::IllConditioned(e.to_string()))
}

/// Recovers a spectrally `s`-sparse signal from `2s` walk samples at `vertex`.
pub fn prony_recover(sd: &SpectralData, vertex: usize, samples: &[Complex64], s: usize) -> Result<Recovery> {
    if samples.len() < 2 * s {
        return Err(Error::Precondition(format!("{} samples for sparsity {s}", samples.len())));
    }
    if s == 0 {
        let residual = samples.iter().map(|z| z.norm()).fold(0.0, f64::max);
        return Ok(Recovery { support: Vec::new(), coefficients: Vec::new(), residual });
    }
    let hankel = DMatrix::from_fn(s, s, |k, j| samples[k + j]);
    let rhs = DVector::from_fn(s, |k, _| -samples[k + s]);
    let filter = hankel.lu().solve(&rhs).ok_or_else(|| Error::IllConditioned("singular Hankel system".into()))?;
    let lambda = eigenvalues(sd);
    let u = unit_eigenvectors(sd);
    let score = |z: Complex64| {
        let p = (0..s).fold(z.powu(s as u32), |acc, j| acc + filter[j] * z.powu(j as u32));
        p.norm() / (1.0 + z.norm()).powi(s as i32)
    };
    let support: Vec<usize> = (0..sd.dim())
        .filter(|&i| u[i][vertex].norm() > VISIBILITY)
        .sorted_by(|&a, &b| score(lambda[a]).total_cmp(&score(lambda[b])))
        .take(s)
        .sorted()
        .collect();
    if support.len() < s {
        return Err(Error::IllConditioned(format!("only {} eigenvalues visible at vertex {vertex}", support.len())));
    }
    let m = 2 * s;
    let vandermonde = DMatrix::from_fn(m, s, |k, c| lambda[support[c]].powu(k as u32));
    let y = DVector::from_column_slice(&samples[..m]);
    let d = least_squares(&vandermonde, &y)?;
    let residual = relative_residual(&vandermonde, &d, &y);
    if residual > RESIDUAL_TOLERANCE {
        return Err(Error::IllConditioned(format!("Vandermonde residual {residual:e}")));
    }
    let coefficients = support.iter().zip(d.iter()).map(|(&i, di)| di / u[i][vertex]).collect();
    Ok(Recovery { support, coefficients, residual })
}

/// Recovers an `s`-sparse vertex signal from its coefficients on
/// `frequencies` by exhaustive support search.
pub fn sparse_recover(sd: &SpectralData, frequencies: &[usize], samples: &[Complex64], s: usize) -> Result<Recovery> {
    if samples.len() != frequencies.len() || samples.len() < 2 * s {
        return Err(Error::Precondition(format!("{} samples on {} frequencies for sparsity {s}", samples.len(), frequencies.len())));
    }
    let y = DVector::from_column_slice(samples);
    if s == 0 {
        let residual = samples.iter().map(|z| z.norm()).fold(0.0, f64::max);
        return Ok(Recovery { support: Vec::new(), coefficients: Vec::new(), residual });
    }
    let u = unit_eigenvectors(sd);
    let mut best: Option<Recovery> = None;
    for support in (0..sd.dim()).combinations(s) {
        let a = DMatrix::from_fn(frequencies.len(), s, |r, c| u[frequencies[r]][support[c]].conj());
        let Ok(x) = least_squares(&a, &y) else { continue };
        let residual = relative_residual(&a, &x, &y);
        if best.as_ref().is_none_or(|b| residual < b.residual) {
            best = Some(Recovery { support, coefficients: x.iter().copied().collect(), residual });
        }
    }
    match best {
        Some(r) if r.residual <= RESIDUAL_TOLERANCE => Ok(r),
        Some(r) => Err(Error::IllConditioned(format!("best support residual {:e}", r.residual))),
        None => Err(Error::IllConditioned("no solvable support".into())),
    }
}
