use crate::arith::Ball;
use crate::poly::IntPolynomial;

/// Square matrix of integer polynomials (the adjugate `adj(xI - M)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<IntPolynomial>,
}

impl PolyMatrix {
    pub fn new(n: usize, entries: Vec<IntPolynomial>) -> PolyMatrix {
        assert_eq!(entries.len(), n * n, "square polynomial matrix");
        PolyMatrix { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &IntPolynomial {
        &self.entries[i * self.n + j]
    }

    pub fn trace(&self) -> IntPolynomial {
        (0..self.n).fold(IntPolynomial::zero(), |acc, i| &acc + self.get(i, i))
    }

    pub fn max_degree(&self) -> usize {
        self.entries.iter().map(IntPolynomial::degree).max().unwrap_or(0)
    }

    /// Column `j` evaluated at `x`.
    pub fn eval_column(&self, j: usize, x: &Ball) -> Vec<Ball> {
        (0..self.n).map(|i| self.get(i, j).eval_ball(x)).collect()
    }

    /// Row `i` evaluated at `x`.
    pub fn eval_row(&self, i: usize, x: &Ball) -> Vec<Ball> {
        (0..self.n).map(|j| self.get(i, j).eval_ball(x)).collect()
    }
}
