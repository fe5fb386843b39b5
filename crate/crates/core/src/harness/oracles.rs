//! Slow, independent reference computations: cofactor expansion, float
//! companion roots and Sturm chains. Only plain polynomial division is
//! shared with the certified paths they are compared against.

use crate::poly::IntPolynomial;
use itertools::Itertools;
use nalgebra::{DMatrix, Schur};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type RatRows = Vec<Vec<BigRational>>;

pub fn rat(k: i64) -> BigRational {
    BigRational::from_integer(k.into())
}

/// Laplace expansion along the first row.
pub fn cofactor_det(a: &RatRows) -> BigRational {
    let n = a.len();
    if n == 0 {
        return BigRational::one();
    }
    let mut total = BigRational::zero();
    for j in 0..n {
        if a[0][j].is_zero() {
            continue;
        }
        let minor: RatRows =
            a[1..].iter().map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, v)| v.clone()).collect()).collect();
        let term = &a[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Largest `k` with a nonzero `k × k` minor.
pub fn cofactor_rank(a: &RatRows) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    for k in (1..=rows.min(cols)).rev() {
        for rs in (0..rows).combinations(k) {
            for cs in (0..cols).combinations(k) {
                let sub: RatRows = rs.iter().map(|&r| cs.iter().map(|&c| a[r][c].clone()).collect()).collect();
                if !cofactor_det(&sub).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

/// Complex roots of a polynomial from the eigenvalues of its companion matrix.
///
/// QR can stall on permutation-like companions such as that of `x^6 - 1`,
/// so a failed attempt is retried on a dense similar matrix. `None` if
/// neither converges.
pub fn float_roots(f: &IntPolynomial) -> Option<Vec<num_complex::Complex64>> {
    let d = f.degree();
    let lead = f.leading().to_f64().expect("finite leading coefficient");
    let mut c = DMatrix::<f64>::zeros(d, d);
    for i in 1..d {
        c[(i, i - 1)] = 1.0;
    }
    for i in 0..d {
        c[(i, d - 1)] = -f.coeff(i).to_f64().expect("finite coefficient") / lead;
    }
    // Unit upper triangular with a fixed irregular pattern: exactly invertible.
    let mixer = DMatrix::from_fn(d, d, |i, j| match j.cmp(&i) {
        std::cmp::Ordering::Equal => 1.0,
        std::cmp::Ordering::Greater => 0.25 * (((3 * i + 5 * j) % 7) as f64 - 3.0),
        std::cmp::Ordering::Less => 0.0,
    });
    let mixed = mixer.clone() * &c * mixer.try_inverse()?;
    [c, mixed].into_iter().find_map(|m| {
        Schur::try_new(m, 1e-14, 50_000).map(|schur| schur.complex_eigenvalues().iter().copied().collect())
    })
}

/// Monic integer polynomial with the given roots, if the rounded
/// coefficients are within `tol` of integers.
fn integer_poly_from_roots(roots: &[num_complex::Complex64], tol: f64) -> Option<IntPolynomial> {
    let mut c = vec![num_complex::Complex64::new(1.0, 0.0)];
    for r in roots {
        let mut next = vec![num_complex::Complex64::new(0.0, 0.0); c.len() + 1];
        for (k, ck) in c.iter().enumerate() {
            next[k + 1] += ck;
            next[k] -= ck * r;
        }
        c = next;
    }
    let mut out = Vec::with_capacity(c.len());
    for z in c {
        let k = z.re.round();
        if (z.re - k).abs() > tol * k.abs().max(1.0) || z.im.abs() > tol * k.abs().max(1.0) {
            return None;
        }
        out.push(BigInt::from(k as i64));
    }
    Some(IntPolynomial::new(out))
}

/// Irreducible factors of a monic squarefree polynomial, found by trying
/// root subsets in order of size: the first subset whose product divides
/// what is left is an irreducible factor. `None` outside that domain.
pub fn degree_split_factors(f: &IntPolynomial) -> Option<Vec<IntPolynomial>> {
    if !f.is_monic() || f.degree() > 8 || f.gcd(&f.derivative()).degree() > 0 {
        return None;
    }
    let mut remaining = float_roots(f)?;
    let mut rest = f.clone();
    let mut factors = Vec::new();
    let mut size = 1;
    while !remaining.is_empty() {
        let mut found = None;
        for subset in (0..remaining.len()).combinations(size) {
            let roots: Vec<_> = subset.iter().map(|&i| remaining[i]).collect();
            if let Some(g) = integer_poly_from_roots(&roots, 1e-6) {
                if let Some(q) = rest.div_exact(&g) {
                    found = Some((subset, g, q));
                    break;
                }
            }
        }
        match found {
            Some((subset, g, q)) => {
                for &i in subset.iter().rev() {
                    remaining.remove(i);
                }
                factors.push(g);
                rest = q;
            }
            None if size >= remaining.len() => return None,
            None => size += 1,
        }
    }
    Some(factors)
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn rat_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    while r.len() > db {
        let k = r.len() - 1 - db;
        let q = r.last().expect("nonempty") / &b[db];
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &q * bj;
        }
        r.pop();
        r = trim(r);
    }
    r
}

fn rat_eval(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Sturm chain `f, f', -rem(f, f'), …`.
pub fn sturm_chain(f: &IntPolynomial) -> Vec<Vec<BigRational>> {
    let to_rat = |p: &IntPolynomial| -> Vec<BigRational> { p.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect() };
    let mut chain = vec![to_rat(f), to_rat(&f.derivative())];
    loop {
        let len = chain.len();
        if chain[len - 1].is_empty() {
            chain.pop();
            break;
        }
        if chain[len - 1].len() == 1 {
            break;
        }
        let r: Vec<BigRational> = rat_rem(&chain[len - 2], &chain[len - 1]).into_iter().map(|c| -c).collect();
        chain.push(r);
    }
    chain
}

fn sign_changes(chain: &[Vec<BigRational>], x: &BigRational) -> usize {
    let signs: Vec<bool> =
        chain.iter().map(|p| rat_eval(p, x)).filter(|v| !v.is_zero()).map(|v| v.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Distinct real roots in `(lo, hi]`.
pub fn sturm_count(chain: &[Vec<BigRational>], lo: &BigRational, hi: &BigRational) -> usize {
    sign_changes(chain, lo) - sign_changes(chain, hi)
}

/// Cauchy bound: every root has modulus below `1 + max |c_i / c_n|`.
pub fn root_bound(f: &IntPolynomial) -> BigRational {
    let lead = BigRational::from_integer(f.leading().abs());
    let max = f.coeffs()[..f.degree()].iter().map(|c| BigRational::from_integer(c.abs())).max().unwrap_or_else(BigRational::zero);
    BigRational::one() + max / lead
}

/// Eigenvectors of an upper-triangular matrix with distinct diagonal, by
/// back substitution. Column `i` belongs to the eigenvalue `t[i][i]`.
pub fn triangular_eigenvectors(t: &[Vec<i64>]) -> RatRows {
    let n = t.len();
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        let lambda = rat(t[i][i]);
        let mut u = vec![BigRational::zero(); n];
        u[i] = BigRational::one();
        for j in (0..i).rev() {
            let s = (j + 1..=i).fold(BigRational::zero(), |acc, k| acc + rat(t[j][k]) * &u[k]);
            u[j] = -s / (rat(t[j][j]) - &lambda);
        }
        cols.push(u);
    }
    cols
}

/// Inverse of a unit lower-triangular integer matrix, by forward substitution.
#[allow(clippy::needless_range_loop)]
pub fn unit_lower_inverse(s: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = s.len();
    let mut inv = vec![vec![0i64; n]; n];
    for c in 0..n {
        inv[c][c] = 1;
        for r in c + 1..n {
            inv[r][c] = -(c..r).map(|k| s[r][k] * inv[k][c]).sum::<i64>();
        }
    }
    inv
}

pub fn int_product(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = b[0].len();
    (0..n).map(|i| (0..m).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(v: &[&[i64]]) -> RatRows {
        v.iter().map(|r| r.iter().map(|&k| rat(k)).collect()).collect()
    }

    #[test]
    fn cofactor_basics() {
        assert_eq!(cofactor_det(&rows(&[&[2, 1], &[7, 4]])), rat(1));
        assert_eq!(cofactor_det(&rows(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]])), rat(-3));
        assert_eq!(cofactor_rank(&rows(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]])), 2);
        assert_eq!(cofactor_rank(&rows(&[&[0, 0], &[0, 0]])), 0);
    }

    #[test]
    fn splits_by_root_subsets() {
        // x⁴ + 4 = (x² - 2x + 2)(x² + 2x + 2); x⁴ - 10x² + 1 is irreducible.
        let mut f = degree_split_factors(&IntPolynomial::from_i64s(&[4, 0, 0, 0, 1])).unwrap();
        f.sort_by_key(|g| g.coeff(1));
        assert_eq!(f, vec![IntPolynomial::from_i64s(&[2, -2, 1]), IntPolynomial::from_i64s(&[2, 2, 1])]);
        assert_eq!(degree_split_factors(&IntPolynomial::from_i64s(&[1, 0, -10, 0, 1])).unwrap().len(), 1);
        assert!(degree_split_factors(&IntPolynomial::from_i64s(&[1, -2, 1])).is_none());
    }

    #[test]
    fn sturm_counts_roots() {
        // (x - 1)(x - 2)(x + 3)
        let f = IntPolynomial::from_i64s(&[6, -7, 0, 1]);
        let chain = sturm_chain(&f);
        let b = root_bound(&f);
        assert_eq!(sturm_count(&chain, &-b.clone(), &b), 3);
        assert_eq!(sturm_count(&chain, &rat(0), &rat(1)), 1);
        assert_eq!(sturm_count(&chain, &rat(1), &rat(2)), 1);
        assert_eq!(sturm_count(&chain, &rat(-2), &rat(0)), 0);
        // x² + 1 has no real roots.
        let g = IntPolynomial::from_i64s(&[1, 0, 1]);
        assert_eq!(sturm_count(&sturm_chain(&g), &rat(-5), &rat(5)), 0);
    }

    #[test]
    fn triangular_eigenpairs() {
        let t = vec![vec![1, 2, 0], vec![0, 3, 1], vec![0, 0, -2]];
        let u = triangular_eigenvectors(&t);
        for (i, col) in u.iter().enumerate() {
            for r in 0..3 {
                let tu = (0..3).fold(BigRational::zero(), |acc, k| acc + rat(t[r][k]) * &col[k]);
                assert_eq!(tu, rat(t[i][i]) * &col[r]);
            }
        }
        let s = vec![vec![1, 0, 0], vec![2, 1, 0], vec![-1, 3, 1]];
        let id = int_product(&s, &unit_lower_inverse(&s));
        assert_eq!(id, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }
}
