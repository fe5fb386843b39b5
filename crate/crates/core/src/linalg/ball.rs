use super::RatMatrix;
use crate::arith::Ball;
use num_rational::BigRational;
use num_traits::{One, Pow};

/// Dense row-major matrix of complex balls.
#[derive(Clone, Debug)]
pub struct BallMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Ball>,
}

impl BallMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Ball>) -> BallMatrix {
        assert_eq!(data.len(), rows * cols, "ball matrix shape");
        BallMatrix { rows, cols, data }
    }

    pub fn from_columns(columns: &[Vec<Ball>]) -> BallMatrix {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        let data = (0..rows).flat_map(|i| columns.iter().map(move |c| c[i].clone())).collect();
        BallMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Ball {
        &self.data[i * self.cols + j]
    }

    /// Determinant enclosure. Gaussian elimination with partial pivoting on
    /// the largest certified-nonzero pivot; when no pivot excludes zero the
    /// subset-expansion formula is used instead.
    pub fn determinant(&self) -> Ball {
        assert_eq!(self.rows, self.cols, "determinant of a non-square ball matrix");
        let n = self.rows;
        let prec = self.data.first().map_or(64, Ball::prec);
        if n == 0 {
            return Ball::one(prec);
        }
        let mut a = self.data.clone();
        let mut det = Ball::one(prec);
        for k in 0..n {
            let best = (k..n)
                .filter(|&r| a[r * n + k].excludes_zero())
                .max_by(|&x, &y| {
                    a[x * n + k].abs_lower().partial_cmp(&a[y * n + k].abs_lower()).unwrap_or(std::cmp::Ordering::Equal)
                });
            let Some(p) = best else {
                return self.determinant_by_expansion();
            };
            if p != k {
                for j in 0..n {
                    a.swap(p * n + j, k * n + j);
                }
                det = det.neg();
            }
            let pivot = a[k * n + k].clone();
            let inv = pivot.inv().expect("pivot excludes zero");
            det = det.mul(&pivot);
            for r in k + 1..n {
                let factor = a[r * n + k].mul(&inv);
                for j in k + 1..n {
                    let t = factor.mul(&a[k * n + j]);
                    a[r * n + j] = a[r * n + j].sub(&t);
                }
            }
        }
        det
    }

    /// `Σ_σ sgn σ ∏ a[i][σ(i)]` by dynamic programming over column subsets.
    fn determinant_by_expansion(&self) -> Ball {
        let n = self.rows;
        assert!(n <= 20, "subset expansion limited to n <= 20");
        let prec = self.data[0].prec();
        let mut dp = vec![Ball::zero(prec); 1 << n];
        dp[0] = Ball::one(prec);
        for mask in 0usize..(1 << n) {
            if dp[mask].abs_upper().is_zero() && mask != 0 {
                continue;
            }
            let i = mask.count_ones() as usize;
            if i == n {
                continue;
            }
            for j in 0..n {
                if mask & (1 << j) != 0 {
                    continue;
                }
                let above = (mask >> (j + 1)).count_ones();
                let mut term = dp[mask].mul(self.get(i, j));
                if above % 2 == 1 {
                    term = term.neg();
                }
                let next = mask | (1 << j);
                dp[next] = dp[next].add(&term);
            }
        }
        dp[(1 << n) - 1].clone()
    }
}

/// `V[i][j] = b_j^i`, `i = 0..k-1`.
pub fn vandermonde_rational(b: &[BigRational]) -> RatMatrix {
    let k = b.len();
    let data = (0..k)
        .flat_map(|i| b.iter().map(move |x| if i == 0 { BigRational::one() } else { Pow::pow(x, i as u32) }))
        .collect();
    RatMatrix::new(k, k, data).expect("square")
}

pub fn vandermonde_ball(b: &[Ball]) -> BallMatrix {
    let k = b.len();
    let data = (0..k).flat_map(|i| b.iter().map(move |x| x.pow(i as u32))).collect();
    BallMatrix::new(k, k, data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::IntMatrix;
    use num_bigint::BigInt;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn vandermonde_examples() {
        assert_eq!(vandermonde_rational(&[q(1)]).determinant(), q(1));
        assert!(vandermonde_rational(&[q(1), q(1)]).determinant().is_zero());
        assert_eq!(vandermonde_rational(&[q(0), q(1), q(2)]).determinant(), q(2));
        let vb = vandermonde_ball(&[Ball::from_i64(0, 128), Ball::from_i64(1, 128), Ball::from_i64(2, 128)]);
        assert_eq!(vb.determinant().recognize_integer(), Some(BigInt::from(2)));
    }

    proptest! {
        #[test]
        fn ball_determinant_encloses_exact(v in proptest::collection::vec(-9i64..10, 25)) {
            let n = 5;
            let a = IntMatrix::new(n, n, v.iter().map(|&x| BigInt::from(x)).collect()).unwrap();
            let b = BallMatrix::new(n, n, v.iter().map(|&x| Ball::from_i64(x, 96)).collect());
            let exact = Ball::from_bigint(&a.determinant(), 96);
            prop_assert!(b.determinant().contains(&exact));
            prop_assert!(b.determinant_by_expansion().contains(&exact));
        }
    }
}
