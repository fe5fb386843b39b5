//! Certified spectral data of an integer matrix with simple eigenvalues.
//!
//! Each eigenvector is a fixed adjugate column `adj(λI - M)[:, j]`
//! evaluated at the eigenvalue, with one `j` per irreducible factor of the
//! characteristic polynomial. Since the column is a polynomial vector with
//! integer coefficients, conjugate eigenvalues get conjugate eigenvectors,
//! and every symmetric function of a factor's eigenvector entries is a
//! rational integer. Rows of the adjugate give left eigenvectors the same
//! way.

use crate::arith::{Ball, Precision};
use crate::linalg::{IntMatrix, PolyMatrix};
use crate::poly::{factor_over_z, isolate_roots, FactorizationZ, IntPolynomial, RootSystem};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Clone, Debug)]
pub struct SpectralData {
    matrix: IntMatrix,
    charpoly: IntPolynomial,
    factorization: FactorizationZ,
    adjugate: PolyMatrix,
    roots: RootSystem,
    root_factor: Vec<usize>,
    factor_roots: Vec<Vec<usize>>,
    columns: Vec<usize>,
    rows: Vec<usize>,
    eigenvectors: Vec<Vec<Ball>>,
    left_eigenvectors: Vec<Vec<Ball>>,
    symmetric: bool,
    kernel_root: Option<usize>,
    ladder: Precision,
}

/// `φ_L = λ·ξ` for the Laplacian of a connected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaplacianSplit {
    pub xi: IntPolynomial,
}

/// `λ·ξ(λ) = φ_L(λ)`; zero must be a simple root.
pub fn laplacian_split(phi: &IntPolynomial) -> Result<LaplacianSplit> {
    if phi.is_zero() || !phi.coeff(0).is_zero() {
        return Err(Error::Precondition("φ_L(0) must vanish".into()));
    }
    let xi = IntPolynomial::new(phi.coeffs()[1..].to_vec());
    if xi.coeff(0).is_zero() {
        return Err(Error::ZeroNotSimpleRoot);
    }
    Ok(LaplacianSplit { xi })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Orthogonality {
    /// The decision: exact symmetry of the integer matrix.
    pub symmetric: bool,
    /// Every ball inner product of distinct eigenvectors contains zero.
    /// Only meaningful when `symmetric`.
    pub consistent: bool,
}

impl SpectralData {
    pub fn build(matrix: &IntMatrix, prec: Precision) -> Result<SpectralData> {
        Self::build_inner(matrix, prec, false)
    }

    /// Laplacian mode: the eigenvector of the simple eigenvalue 0 is the
    /// exact all-ones vector.
    pub fn build_laplacian(laplacian: &IntMatrix, prec: Precision) -> Result<SpectralData> {
        let n = laplacian.rows();
        if !laplacian.is_square() || (0..n).any(|i| !laplacian.row(i).iter().sum::<BigInt>().is_zero()) {
            return Err(Error::Precondition("Laplacian rows must sum to zero".into()));
        }
        laplacian_split(&laplacian.char_poly()).map_err(|e| match e {
            Error::ZeroNotSimpleRoot => Error::DisconnectedGraph,
            e => e,
        })?;
        Self::build_inner(laplacian, prec, true)
    }

    fn build_inner(matrix: &IntMatrix, prec: Precision, kernel_ones: bool) -> Result<SpectralData> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch(format!("{}x{} matrix has no spectrum", matrix.rows(), matrix.cols())));
        }
        let (charpoly, adjugate) = matrix.char_poly_and_adjugate();
        let g = charpoly.gcd(&charpoly.derivative());
        if g.degree() > 0 {
            return Err(Error::NotSquarefree(g.to_string()));
        }
        let factorization = factor_over_z(&charpoly);
        let mut roots = isolate_roots(&charpoly, prec)?;
        let mut p = Precision { bits: roots.prec(), ..prec };
        loop {
            if let Some(sd) = Self::assemble(matrix, &charpoly, &factorization, &adjugate, &roots, kernel_ones, prec) {
                return Ok(sd);
            }
            p = p.escalate().ok_or_else(|| Error::NoNonzeroAdjugateColumn(format!("at {} bits", p.bits)))?;
            roots = roots.refine(p.bits)?;
        }
    }

    /// `None` when the current precision cannot separate factors or
    /// certify a nonzero adjugate column.
    fn assemble(
        matrix: &IntMatrix,
        charpoly: &IntPolynomial,
        factorization: &FactorizationZ,
        adjugate: &PolyMatrix,
        roots: &RootSystem,
        kernel_ones: bool,
        ladder: Precision,
    ) -> Option<SpectralData> {
        let n = roots.len();
        let factors: Vec<&IntPolynomial> = factorization.factors.iter().map(|(g, _)| g).collect();
        let mut root_factor = Vec::with_capacity(n);
        for r in roots.roots() {
            let hits: Vec<usize> = (0..factors.len()).filter(|&k| factors[k].eval_ball(r).contains_zero()).collect();
            match hits.as_slice() {
                [k] => root_factor.push(*k),
                _ => return None,
            }
        }
        let factor_roots: Vec<Vec<usize>> =
            (0..factors.len()).map(|k| (0..n).filter(|&i| root_factor[i] == k).collect()).collect();
        if factor_roots.iter().zip(&factors).any(|(rs, g)| rs.len() != g.degree()) {
            return None;
        }
        let first_nonzero = |eval: &dyn Fn(usize) -> Vec<Ball>| (0..n).find(|&j| eval(j).iter().any(Ball::excludes_zero));
        let mut columns = Vec::new();
        let mut rows = Vec::new();
        for rs in &factor_roots {
            let lambda = roots.root(rs[0]);
            columns.push(first_nonzero(&|j| adjugate.eval_column(j, lambda))?);
            rows.push(first_nonzero(&|i| adjugate.eval_row(i, lambda))?);
        }
        let kernel_root = if kernel_ones {
            let k = factors.iter().position(|g| *g == &IntPolynomial::x())?;
            Some(factor_roots[k][0])
        } else {
            None
        };
        let mut sd = SpectralData {
            matrix: matrix.clone(),
            charpoly: charpoly.clone(),
            factorization: factorization.clone(),
            adjugate: adjugate.clone(),
            roots: roots.clone(),
            root_factor,
            factor_roots,
            columns,
            rows,
            eigenvectors: Vec::new(),
            left_eigenvectors: Vec::new(),
            symmetric: matrix.is_symmetric(),
            kernel_root,
            ladder,
        };
        sd.evaluate();
        Some(sd)
    }

    fn evaluate(&mut self) {
        let n = self.roots.len();
        let prec = self.roots.prec();
        let ones = vec![Ball::one(prec); n];
        self.eigenvectors = (0..n)
            .map(|i| {
                if Some(i) == self.kernel_root {
                    ones.clone()
                } else {
                    self.adjugate.eval_column(self.columns[self.root_factor[i]], self.roots.root(i))
                }
            })
            .collect();
        self.left_eigenvectors = (0..n)
            .map(|i| {
                if Some(i) == self.kernel_root {
                    ones.clone()
                } else {
                    self.adjugate.eval_row(self.rows[self.root_factor[i]], self.roots.root(i))
                }
            })
            .collect();
    }

    /// Same roots, order and column choices at working precision `bits`.
    pub fn at_precision(&self, bits: u32) -> Result<SpectralData> {
        if bits <= self.roots.prec() {
            return Ok(self.clone());
        }
        let mut sd = SpectralData { roots: self.roots.refine(bits)?, ..self.clone() };
        sd.evaluate();
        Ok(sd)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.roots.len()
    }

    pub fn charpoly(&self) -> &IntPolynomial {
        &self.charpoly
    }

    pub fn factorization(&self) -> &FactorizationZ {
        &self.factorization
    }

    pub fn adjugate(&self) -> &PolyMatrix {
        &self.adjugate
    }

    pub fn roots(&self) -> &RootSystem {
        &self.roots
    }

    pub fn eigenvalue(&self, i: usize) -> &Ball {
        self.roots.root(i)
    }

    pub fn prec(&self) -> u32 {
        self.roots.prec()
    }

    /// The precision ladder this data was built with.
    pub fn ladder(&self) -> Precision {
        self.ladder
    }

    /// Index of the irreducible factor that root `i` belongs to.
    pub fn factor_of(&self, i: usize) -> usize {
        self.root_factor[i]
    }

    /// Root indices of factor `k`, ascending.
    pub fn factor_roots(&self, k: usize) -> &[usize] {
        &self.factor_roots[k]
    }

    pub fn factor(&self, k: usize) -> &IntPolynomial {
        &self.factorization.factors[k].0
    }

    pub fn factor_count(&self) -> usize {
        self.factor_roots.len()
    }

    /// Adjugate column used for factor `k`.
    pub fn column_choice(&self, k: usize) -> usize {
        self.columns[k]
    }

    pub fn row_choice(&self, k: usize) -> usize {
        self.rows[k]
    }

    /// Right eigenvector of root `i` (unnormalized).
    pub fn eigenvector(&self, i: usize) -> &[Ball] {
        &self.eigenvectors[i]
    }

    /// Left eigenvector of root `i`: `w·M = λ_i·w`.
    pub fn left_eigenvector(&self, i: usize) -> &[Ball] {
        &self.left_eigenvectors[i]
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// Root whose eigenvector is the exact all-ones vector (Laplacian mode).
    pub fn kernel_root(&self) -> Option<usize> {
        self.kernel_root
    }

    /// Whether `(M - λ_i I)·u_i` ball-contains the zero vector for all `i`.
    pub fn residuals_contain_zero(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            let u = &self.eigenvectors[i];
            let lambda = self.eigenvalue(i);
            (0..n).all(|r| {
                let mut acc = lambda.mul(&u[r]).neg();
                for (c, uc) in u.iter().enumerate() {
                    let m = self.matrix.get(r, c);
                    if !m.is_zero() {
                        acc = acc.add(&uc.mul(&Ball::from_bigint(m, self.prec())));
                    }
                }
                acc.contains_zero()
            })
        })
    }

    /// `∏_{i ∈ factor k} u_i(v)`, recognized as the rational integer it is.
    pub fn entry_norm(&self, v: usize, k: usize) -> Option<BigInt> {
        self.factor_roots[k]
            .iter()
            .fold(Ball::one(self.prec()), |acc, &i| acc.mul(&self.eigenvectors[i][v]))
            .recognize_integer()
    }

    pub fn orthogonality_check(&self) -> Orthogonality {
        let n = self.dim();
        let consistent = self.symmetric
            && (0..n).all(|i| {
                (i + 1..n).all(|j| {
                    self.eigenvectors[i]
                        .iter()
                        .zip(&self.eigenvectors[j])
                        .fold(Ball::zero(self.prec()), |acc, (a, b)| acc.add(&a.mul(b)))
                        .contains_zero()
                })
            });
        Orthogonality { symmetric: self.symmetric, consistent }
    }

    /// Integer vector of all ones, the kernel direction of a Laplacian.
    pub fn ones(&self) -> Vec<BigInt> {
        vec![BigInt::one(); self.dim()]
    }
}
