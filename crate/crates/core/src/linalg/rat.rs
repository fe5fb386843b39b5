use super::bareiss;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigRational>) -> Result<RatMatrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(RatMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> RatMatrix {
        RatMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<BigRational>]) -> RatMatrix {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        let mut m = RatMatrix::zeros(rows, cols);
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "columns of equal length");
            for (i, v) in c.iter().enumerate() {
                m.data[i * cols + j] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> Vec<BigRational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns_prefix(&self, k: usize) -> RatMatrix {
        let cols: Vec<Vec<BigRational>> = (0..k).map(|j| self.column(j)).collect();
        let mut m = RatMatrix::from_columns(&cols);
        m.rows = self.rows;
        m
    }

    pub fn mul_vec(&self, x: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(x.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &x[j]).sum())
            .collect()
    }

    /// Rows scaled by the lcm of their denominators; same row space.
    fn cleared(&self) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(self.data.len());
        for i in 0..self.rows {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            out.extend(row.iter().map(|q| q.numer() * (&l / q.denom())));
        }
        out
    }

    /// Exact rank over ℚ via Bareiss on the denominator-cleared rows.
    pub fn rank(&self) -> usize {
        bareiss(self.rows, self.cols, self.cleared()).0
    }

    pub fn determinant(&self) -> BigRational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let scale: BigInt = (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].iter().fold(BigInt::one(), |a, q| a.lcm(q.denom())))
            .product();
        let (rank, det) = bareiss(self.rows, self.cols, self.cleared());
        if rank < self.rows {
            BigRational::zero()
        } else {
            BigRational::new(det, scale)
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut a = self.clone();
        let (r, c) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..c {
            if row == r {
                break;
            }
            let Some(p) = (row..r).find(|&i| !a.get(i, col).is_zero()) else {
                continue;
            };
            for j in 0..c {
                a.data.swap(p * c + j, row * c + j);
            }
            let inv = a.get(row, col).recip();
            for j in 0..c {
                a.data[row * c + j] *= &inv;
            }
            for i in 0..r {
                if i == row || a.get(i, col).is_zero() {
                    continue;
                }
                let f = a.get(i, col).clone();
                for j in 0..c {
                    let v = &f * &a.data[row * c + j];
                    a.data[i * c + j] -= v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    /// Basis of the right kernel, one vector per free column, with a 1 in
    /// that free position.
    pub fn kernel(&self) -> Vec<Vec<BigRational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivots.contains(j)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[f] = BigRational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f).clone();
                }
                v
            })
            .collect()
    }

    /// Text format: `"r c"` then rows of integers or `p/q` tokens.
    pub fn parse(text: &str) -> Result<RatMatrix> {
        let (r, c, tokens) = super::parse_header(text)?;
        let data = tokens.iter().map(|t| parse_rational(t)).collect::<Result<Vec<_>>>()?;
        RatMatrix::new(r, c, data)
    }
}

pub fn parse_rational(t: &str) -> Result<BigRational> {
    let err = |e: String| Error::Parse(format!("rational {t:?}: {e}"));
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.parse().map_err(|e: num_bigint::ParseBigIntError| err(e.to_string()))?;
            let q: BigInt = q.parse().map_err(|e: num_bigint::ParseBigIntError| err(e.to_string()))?;
            if q.is_zero() {
                return Err(err("zero denominator".into()));
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(
            t.parse().map_err(|e: num_bigint::ParseBigIntError| err(e.to_string()))?,
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn kernels() {
        let i3 = crate::linalg::IntMatrix::identity(3).to_rational();
        assert!(i3.kernel().is_empty());
        let ones = RatMatrix::parse("2 2\n1 1\n1 1").unwrap();
        let k = ones.kernel();
        assert_eq!(k, vec![vec![q(-1, 1), q(1, 1)]]);
        assert!(ones.mul_vec(&k[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn rational_parsing_and_determinant() {
        let a = RatMatrix::parse("2 2\n1/2 1\n1/3 -2/6").unwrap();
        // 1/2·(-1/3) - 1·1/3 = -1/2
        assert_eq!(a.determinant(), q(-1, 2));
        assert_eq!(a.rank(), 2);
        assert!(RatMatrix::parse("1 1\n1/0").is_err());
    }
}
