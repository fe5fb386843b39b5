use super::IntPolynomial;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

/// Resultant via the subresultant PRS (Collins/Brown, as in Cohen 3.3.7).
pub fn resultant(f: &IntPolynomial, g: &IntPolynomial) -> BigInt {
    if f.is_zero() || g.is_zero() {
        return BigInt::zero();
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut s = BigInt::one();
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
        if a.degree() % 2 == 1 && b.degree() % 2 == 1 {
            s = -s;
        }
    }
    let ca = a.content();
    let cb = b.content();
    let t = Pow::pow(&ca, b.degree() as u32) * Pow::pow(&cb, a.degree() as u32);
    a = IntPolynomial::new(a.coeffs().iter().map(|c| c / &ca).collect());
    b = IntPolynomial::new(b.coeffs().iter().map(|c| c / &cb).collect());
    let mut g_ = BigInt::one();
    let mut h = BigInt::one();
    loop {
        if b.degree() == 0 {
            break;
        }
        let delta = a.degree() - b.degree();
        if a.degree() % 2 == 1 && b.degree() % 2 == 1 {
            s = -s;
        }
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return BigInt::zero();
        }
        a = b;
        let div = &g_ * Pow::pow(&h, delta as u32);
        b = IntPolynomial::new(
            r.coeffs()
                .iter()
                .map(|c| {
                    let (q, rem) = c.div_rem(&div);
                    debug_assert!(rem.is_zero(), "subresultant division must be exact");
                    q
                })
                .collect(),
        );
        g_ = a.leading();
        // h <- h^(1-delta) g^delta
        h = if delta == 0 {
            h
        } else {
            let num = Pow::pow(&g_, delta as u32);
            let den = Pow::pow(&h, (delta - 1) as u32);
            debug_assert!((&num % &den).is_zero());
            num / den
        };
    }
    // deg b == 0
    let lb = b.leading();
    let da = a.degree() as u32;
    let hres = if da == 0 {
        h
    } else {
        let num = Pow::pow(&lb, da);
        let den = Pow::pow(&h, da - 1);
        debug_assert!((&num % &den).is_zero());
        num / den
    };
    s * t * hres
}

/// `(-1)^(n(n-1)/2) res(f, f') / lc(f)`.
pub fn discriminant(f: &IntPolynomial) -> BigInt {
    let n = f.degree();
    if n == 0 {
        return BigInt::zero();
    }
    if n == 1 {
        return BigInt::one();
    }
    let r = resultant(f, &f.derivative());
    let q = r / f.leading();
    if (n * (n - 1) / 2) % 2 == 1 {
        -q
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::IntMatrix;
    use proptest::prelude::*;

    fn p(cs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(cs)
    }

    /// Sylvester-matrix determinant: the independent oracle.
    fn sylvester_resultant(f: &IntPolynomial, g: &IntPolynomial) -> BigInt {
        let (m, n) = (f.degree(), g.degree());
        let size = m + n;
        if size == 0 {
            return BigInt::one();
        }
        let mut rows = vec![vec![BigInt::zero(); size]; size];
        for i in 0..n {
            for (j, c) in f.coeffs().iter().rev().enumerate() {
                rows[i][i + j] = c.clone();
            }
        }
        for i in 0..m {
            for (j, c) in g.coeffs().iter().rev().enumerate() {
                rows[n + i][i + j] = c.clone();
            }
        }
        IntMatrix::from_rows(rows).determinant()
    }

    #[test]
    fn small_discriminants() {
        assert_eq!(discriminant(&p(&[-2, 0, 1])), BigInt::from(8));
        assert_eq!(discriminant(&p(&[1, 0, 1])), BigInt::from(-4));
        // (x-1)(x-2)(x-3): disc = (1*2*1)^2 = 4
        assert_eq!(discriminant(&p(&[-6, 11, -6, 1])), BigInt::from(4));
    }

    #[test]
    fn linear_resultant() {
        assert_eq!(resultant(&p(&[-2, 1]), &p(&[-3, 1])), BigInt::from(-1));
        assert_eq!(sylvester_resultant(&p(&[-2, 1]), &p(&[-3, 1])), BigInt::from(-1));
    }

    proptest! {
        #[test]
        fn matches_sylvester_oracle(
            a in proptest::collection::vec(-6i64..7, 1..6),
            b in proptest::collection::vec(-6i64..7, 1..6),
        ) {
            let (f, g) = (p(&a), p(&b));
            prop_assume!(!f.is_zero() && !g.is_zero());
            prop_assert_eq!(resultant(&f, &g), sylvester_resultant(&f, &g));
        }

        #[test]
        fn disc_vanishes_iff_not_squarefree(a in proptest::collection::vec(-5i64..6, 2..7)) {
            let f = p(&a);
            prop_assume!(f.degree() >= 1);
            let sf = f.squarefree_part();
            prop_assert_eq!(discriminant(&f).is_zero(), sf.degree() != f.degree());
        }
    }
}
