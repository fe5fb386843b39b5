use crate::arith::{Ball, Precision};
use crate::poly::{IntPolynomial, RootSystem};
use crate::{Error, Result};
use itertools::Itertools;
use num_bigint::BigInt;

pub const MAX_SHIFT: u32 = 32;

/// Subset sums of transformed roots and the resolvent they define.
#[derive(Clone, Debug)]
pub struct ResolventData {
    pub poly: IntPolynomial,
    pub shift: u32,
    /// m-subsets of root indices in lexicographic order.
    pub subsets: Vec<Vec<usize>>,
    /// `Σ_{i∈S} μ_i` for each subset, pairwise disjoint.
    pub sums: Vec<Ball>,
    /// Roots at the precision the sums were computed with.
    pub roots: RootSystem,
}

/// `ν_i = lc·λ_i` are algebraic integers; `μ_i = ν_i + t·ν_i²`.
fn transformed_roots(f: &IntPolynomial, roots: &RootSystem, t: u32) -> Vec<Ball> {
    let prec = roots.prec();
    let lc = Ball::from_bigint(&f.leading(), prec);
    let tb = Ball::from_i64(t as i64, prec);
    roots
        .roots()
        .iter()
        .map(|r| {
            let nu = r.mul(&lc);
            nu.add(&tb.mul(&nu.sqr()))
        })
        .collect()
}

fn subset_sums(mu: &[Ball], subsets: &[Vec<usize>], prec: u32) -> Vec<Ball> {
    subsets
        .iter()
        .map(|s| s.iter().fold(Ball::zero(prec), |acc, &i| acc.add(&mu[i])))
        .collect()
}

fn pairwise_disjoint(balls: &[Ball]) -> bool {
    (0..balls.len()).all(|i| (i + 1..balls.len()).all(|j| balls[i].disjoint(&balls[j])))
}

/// `∏ (x - s)` with each coefficient recognized as an integer.
fn integer_product(sums: &[Ball], prec: u32) -> Option<IntPolynomial> {
    let mut coeffs = vec![Ball::one(prec)];
    for s in sums {
        let mut next = vec![Ball::zero(prec); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] = next[k + 1].add(c);
            next[k] = next[k].sub(&c.mul(s));
        }
        coeffs = next;
    }
    coeffs
        .iter()
        .map(Ball::recognize_integer)
        .collect::<Option<Vec<BigInt>>>()
        .map(IntPolynomial::new)
}

/// `R_m(x) = ∏_{|S|=m} (x - Σ_{i∈S} μ_i)` for the smallest shift `t` that
/// separates all subset sums.
pub fn set_resolvent_data(f: &IntPolynomial, m: usize, roots: &RootSystem, ladder: Precision) -> Result<ResolventData> {
    let n = roots.len();
    if m == 0 || m > n {
        return Err(Error::InvalidInput(format!("subset size {m} for degree {n}")));
    }
    let subsets: Vec<Vec<usize>> = (0..n).combinations(m).collect();
    let base = Precision { bits: roots.prec().max(ladder.bits), ..ladder };
    for t in 0..=MAX_SHIFT {
        // A collision that survives two precision rungs is treated as an
        // exact coincidence of subset sums.
        let mut separated = None;
        let mut p = base;
        for _ in 0..2 {
            let rs = roots.refine(p.bits)?;
            let sums = subset_sums(&transformed_roots(f, &rs, t), &subsets, p.bits);
            if pairwise_disjoint(&sums) {
                separated = Some(p);
                break;
            }
            match p.escalate().and_then(|q| q.escalate()) {
                Some(q) => p = q,
                None => break,
            }
        }
        let Some(mut p) = separated else { continue };
        loop {
            let rs = roots.refine(p.bits)?;
            let sums = subset_sums(&transformed_roots(f, &rs, t), &subsets, p.bits);
            if let Some(poly) = integer_product(&sums, p.bits) {
                debug_assert!(poly.is_squarefree());
                return Ok(ResolventData { poly, shift: t, subsets, sums, roots: rs });
            }
            p = p
                .escalate()
                .ok_or_else(|| Error::precision(p.bits, format!("resolvent coefficients for m={m}")))?;
        }
    }
    Err(Error::ShiftSearchExhausted(MAX_SHIFT))
}

/// Just the polynomial and shift.
pub fn set_resolvent(f: &IntPolynomial, m: usize, roots: &RootSystem) -> Result<(IntPolynomial, u32)> {
    let d = set_resolvent_data(f, m, roots, Precision::from_env())?;
    Ok((d.poly, d.shift))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::isolate_roots;
    use proptest::prelude::*;

    fn p(cs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(cs)
    }

    #[test]
    fn first_resolvent_is_the_polynomial() {
        for f in [p(&[-2, 0, 1]), p(&[1, -4, -12, 12, 23, -4, -10, 0, 1]), p(&[7, -50, 115, -114, 54, -12, 1])] {
            let rs = isolate_roots(&f, Precision::default()).unwrap();
            let (r1, t) = set_resolvent(&f, 1, &rs).unwrap();
            assert_eq!((r1, t), (f, 0));
        }
    }

    #[test]
    fn second_resolvent_of_biquadratic() {
        // Roots ±√2 ± √3; pair sums include 0 twice, so t = 0 collides.
        let f = p(&[1, 0, -10, 0, 1]);
        let rs = isolate_roots(&f, Precision::default()).unwrap();
        let (r2, t) = set_resolvent(&f, 2, &rs).unwrap();
        assert!(t >= 1);
        assert_eq!(r2.degree(), 6);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn resolvent_degree_is_binomial(cs in proptest::collection::vec(-5i64..6, 4..7)) {
            let mut cs = cs;
            cs.push(1);
            let f = p(&cs);
            prop_assume!(f.is_squarefree());
            let rs = isolate_roots(&f, Precision::default()).unwrap();
            let n = f.degree();
            for m in 1..=n / 2 {
                let (r, _) = set_resolvent(&f, m, &rs).unwrap();
                prop_assert_eq!(r.degree(), (0..n).combinations(m).count());
            }
        }
    }
}
