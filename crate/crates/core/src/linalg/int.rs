use super::{PolyMatrix, RatMatrix};
use crate::poly::IntPolynomial;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<IntMatrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> IntMatrix {
        IntMatrix::try_from_rows(rows).expect("rows of equal length")
    }

    pub fn try_from_rows(rows: Vec<Vec<BigInt>>) -> Result<IntMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        IntMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> IntMatrix {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = IntMatrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self).expect("square");
        }
        acc
    }

    pub fn mul_rational_vec(&self, x: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(x.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, b)| b * BigRational::from_integer(a.clone()))
                    .sum()
            })
            .collect()
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix::new(
            self.rows,
            self.cols,
            self.data.iter().map(|a| BigRational::from_integer(a.clone())).collect(),
        )
        .expect("same shape")
    }

    /// `self[rows, cols]` for index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        IntMatrix {
            rows: rows.len(),
            cols: cols.len(),
            data: rows.iter().flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone())).collect(),
        }
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let (rank, det) = bareiss(self.rows, self.cols, self.data.clone());
        if rank < self.rows {
            BigInt::zero()
        } else {
            det
        }
    }

    pub fn rank(&self) -> usize {
        bareiss(self.rows, self.cols, self.data.clone()).0
    }

    /// Characteristic polynomial `det(xI - M)` and adjugate `adj(xI - M)`
    /// by the Faddeev–LeVerrier recurrence.
    pub fn char_poly_and_adjugate(&self) -> (IntPolynomial, PolyMatrix) {
        assert!(self.is_square() && self.rows > 0, "char poly needs a nonempty square matrix");
        let n = self.rows;
        // coeffs[k] is the coefficient of x^k.
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut layers: Vec<IntMatrix> = Vec::with_capacity(n);
        let mut prev = IntMatrix::zeros(n, n);
        for k in 1..=n {
            let mut mk = self.mul(&prev).expect("square");
            for i in 0..n {
                mk.data[i * n + i] += &coeffs[n - k + 1];
            }
            let t = self.mul(&mk).expect("square").trace();
            let (q, r) = t.div_rem(&BigInt::from(k));
            assert!(r.is_zero(), "Faddeev–LeVerrier division must be exact");
            coeffs[n - k] = -q;
            layers.push(mk.clone());
            prev = mk;
        }
        // adj(xI - M) = sum_{k=1..n} M_k x^{n-k}
        let entries = (0..n * n)
            .map(|idx| {
                let mut c = vec![BigInt::zero(); n];
                for (k, layer) in layers.iter().enumerate() {
                    c[n - 1 - k] = layer.data[idx].clone();
                }
                IntPolynomial::new(c)
            })
            .collect();
        (IntPolynomial::new(coeffs), PolyMatrix::new(n, entries))
    }

    pub fn char_poly(&self) -> IntPolynomial {
        self.char_poly_and_adjugate().0
    }

    /// Text format: `"r c"` then `r` lines of `c` integers.
    pub fn parse(text: &str) -> Result<IntMatrix> {
        let (r, c, tokens) = super::parse_header(text)?;
        let data = tokens
            .iter()
            .map(|t| t.parse::<BigInt>().map_err(|e| Error::Parse(format!("entry {t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        IntMatrix::new(r, c, data)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix({}x{}; ", self.rows, self.cols)?;
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", line.join(" "))?;
        }
        write!(f, ")")
    }
}

/// Fraction-free elimination. Pivot: first nonzero entry of the current
/// column at the lowest row index. Returns `(rank, last pivot · sign)`,
/// which is the determinant when the matrix is square and nonsingular.
pub(crate) fn bareiss(rows: usize, cols: usize, mut a: Vec<BigInt>) -> (usize, BigInt) {
    let mut prev = BigInt::one();
    let mut sign = 1i32;
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot_row) = (rank..rows).find(|&r| !a[r * cols + col].is_zero()) else {
            continue;
        };
        if pivot_row != rank {
            for j in 0..cols {
                a.swap(pivot_row * cols + j, rank * cols + j);
            }
            sign = -sign;
        }
        let pivot = a[rank * cols + col].clone();
        for r in rank + 1..rows {
            let factor = a[r * cols + col].clone();
            for j in col + 1..cols {
                let v = &pivot * &a[r * cols + j] - &factor * &a[rank * cols + j];
                let (q, rem) = v.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                a[r * cols + j] = q;
            }
            a[r * cols + col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    let det = if sign < 0 { -prev } else { prev };
    (rank, det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    /// Cofactor expansion along the first row: the independent oracle.
    fn cofactor_det(a: &IntMatrix) -> BigInt {
        let n = a.rows();
        if n == 0 {
            return BigInt::one();
        }
        if n == 1 {
            return a.get(0, 0).clone();
        }
        let mut acc = BigInt::zero();
        for j in 0..n {
            let rows: Vec<usize> = (1..n).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let term = a.get(0, j) * cofactor_det(&a.submatrix(&rows, &cols));
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    /// det(xI - M) by cofactor expansion over ℤ[x].
    fn cofactor_charpoly(a: &IntMatrix) -> IntPolynomial {
        fn det(entries: &[Vec<IntPolynomial>]) -> IntPolynomial {
            let n = entries.len();
            if n == 1 {
                return entries[0][0].clone();
            }
            let mut acc = IntPolynomial::zero();
            for j in 0..n {
                let minor: Vec<Vec<IntPolynomial>> = entries[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, e)| e.clone()).collect())
                    .collect();
                let term = &entries[0][j] * &det(&minor);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
        let n = a.rows();
        let entries: Vec<Vec<IntPolynomial>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = IntPolynomial::constant(-a.get(i, j));
                        if i == j {
                            &c + &IntPolynomial::x()
                        } else {
                            c
                        }
                    })
                    .collect()
            })
            .collect();
        det(&entries)
    }

    fn arb_matrix(n: std::ops::Range<usize>) -> impl Strategy<Value = IntMatrix> {
        n.prop_flat_map(|n| {
            proptest::collection::vec(-5i64..6, n * n).prop_map(move |v| {
                IntMatrix::new(n, n, v.into_iter().map(BigInt::from).collect()).unwrap()
            })
        })
    }

    #[test]
    fn identity_charpoly_and_adjugate() {
        let (phi, adj) = IntMatrix::identity(2).char_poly_and_adjugate();
        assert_eq!(phi, IntPolynomial::from_i64s(&[1, -2, 1]));
        let x_minus_1 = IntPolynomial::from_i64s(&[-1, 1]);
        assert_eq!(adj.get(0, 0), &x_minus_1);
        assert_eq!(adj.get(1, 1), &x_minus_1);
        assert!(adj.get(0, 1).is_zero());
    }

    #[test]
    fn ranks() {
        assert_eq!(IntMatrix::zeros(3, 3).rank(), 0);
        assert_eq!(IntMatrix::identity(4).rank(), 4);
        let v = m(&[&[1, 1, 1], &[1, 2, 3], &[1, 4, 9]]);
        assert_eq!(v.rank(), 3);
        assert_eq!(v.determinant(), BigInt::from(2));
    }

    #[test]
    fn parse_round_trip() {
        let a = IntMatrix::parse("2 3\n1 -2 3\n4 5 6\n").unwrap();
        assert_eq!(a, m(&[&[1, -2, 3], &[4, 5, 6]]));
        assert_eq!(IntMatrix::parse(&a.to_text()).unwrap(), a);
        assert!(IntMatrix::parse("2 2\n1 2\n3").is_err());
        assert!(IntMatrix::parse("1 1\nx").is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn adjugate_identity(a in arb_matrix(1..9)) {
            let n = a.rows();
            let (phi, adj) = a.char_poly_and_adjugate();
            // (xI - M)·B(x) == φ(x)·I
            for i in 0..n {
                for j in 0..n {
                    let mut acc = IntPolynomial::zero();
                    for k in 0..n {
                        let mut e = IntPolynomial::constant(-a.get(i, k));
                        if i == k {
                            e = &e + &IntPolynomial::x();
                        }
                        acc = &acc + &(&e * adj.get(k, j));
                    }
                    let expect = if i == j { phi.clone() } else { IntPolynomial::zero() };
                    prop_assert_eq!(acc, expect);
                }
            }
            prop_assert_eq!(adj.trace(), phi.derivative());
        }

        #[test]
        fn charpoly_matches_cofactor_oracle(a in arb_matrix(1..7)) {
            prop_assert_eq!(a.char_poly(), cofactor_charpoly(&a));
        }

        #[test]
        fn bareiss_matches_cofactor_oracle(a in arb_matrix(1..7)) {
            prop_assert_eq!(a.determinant(), cofactor_det(&a));
        }

        #[test]
        fn rank_nullity(rows in 1usize..6, cols in 1usize..6, seed in proptest::collection::vec(-2i64..3, 36)) {
            let a = IntMatrix::new(rows, cols, seed[..rows * cols].iter().map(|&x| BigInt::from(x)).collect()).unwrap();
            let r = a.to_rational();
            prop_assert_eq!(a.rank() + r.kernel().len(), cols);
            prop_assert_eq!(a.rank(), r.rank());
        }
    }
}
