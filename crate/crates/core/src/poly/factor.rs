//! Factorization over ℤ: squarefree decomposition, modular factorization at
//! a few good primes, Hensel lifting and Zassenhaus recombination.

use super::hensel::multifactor_lift;
use super::modp::{primes_from, ModPoly};
use super::IntPolynomial;
use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `content · ∏ factor^multiplicity`; factors primitive with positive
/// leading coefficient, ordered by degree then ascending coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationZ {
    pub content: BigInt,
    pub factors: Vec<(IntPolynomial, u32)>,
}

impl FactorizationZ {
    pub fn expand(&self) -> IntPolynomial {
        self.factors
            .iter()
            .fold(IntPolynomial::constant(self.content.clone()), |acc, (f, k)| &acc * &f.pow(*k))
    }

    /// Exactly one nonconstant factor, with multiplicity one.
    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.factors.iter().flat_map(|(f, k)| std::iter::repeat_n(f.degree(), *k as usize)).collect()
    }
}

/// Complete factorization into irreducibles over ℚ. Panics on the zero
/// polynomial.
pub fn factor_over_z(f: &IntPolynomial) -> FactorizationZ {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let mut content = f.content();
    if f.leading().is_negative() {
        content = -content;
    }
    let prim = f.primitive_part();
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(&prim) {
        for g in factor_squarefree(&part) {
            factors.push((g, mult));
        }
    }
    factors.sort_by(|(a, _), (b, _)| cmp_poly(a, b));
    FactorizationZ { content, factors }
}

pub fn is_irreducible(f: &IntPolynomial) -> bool {
    if f.degree() == 0 {
        return false;
    }
    let prim = f.primitive_part();
    if !prim.is_squarefree() {
        return false;
    }
    if prim.degree() == 1 {
        return true;
    }
    if let Some(plan) = ModularPlan::new(&prim) {
        if plan.proves_irreducible() {
            return true;
        }
    }
    factor_squarefree(&prim).len() == 1
}

pub(crate) fn cmp_poly(a: &IntPolynomial, b: &IntPolynomial) -> std::cmp::Ordering {
    a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs()))
}

/// Pairs `(g_i, i)` with `f = ∏ g_i^i`, each `g_i` squarefree, primitive
/// and coprime to the others. Input must be primitive.
fn squarefree_decomposition(f: &IntPolynomial) -> Vec<(IntPolynomial, u32)> {
    let mut out = Vec::new();
    if f.degree() == 0 {
        return out;
    }
    let mut g = f.gcd(&f.derivative()).primitive_part();
    let mut w = f.div_exact(&g).expect("gcd divides f").primitive_part();
    let mut i = 1;
    while w.degree() > 0 {
        let y = w.gcd(&g).primitive_part();
        let z = w.div_exact(&y).expect("gcd divides w").primitive_part();
        if z.degree() > 0 {
            out.push((z, i));
        }
        i += 1;
        g = g.div_exact(&y).expect("gcd divides g").primitive_part();
        w = y;
    }
    out
}

const SELECTION_PRIMES: usize = 5;
const PRUNING_PRIMES: usize = 20;

/// Modular data used both for irreducibility proofs and for lifting.
struct ModularPlan {
    prime: u64,
    factor_count: usize,
    /// `allowed[d]`: a factor of degree `d` is compatible with every
    /// sampled factorization pattern.
    allowed: Vec<bool>,
}

fn subset_sum_degrees(degs: &[usize], n: usize) -> Vec<bool> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for &d in degs {
        for s in (d..=n).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach
}

/// Odd primes `p ∤ lc(f)` with `f mod p` squarefree.
pub(crate) fn good_primes(f: &IntPolynomial) -> impl Iterator<Item = u64> + '_ {
    let lc = f.leading();
    primes_from(3).filter(move |&p| {
        if (&lc % BigInt::from(p)).is_zero() {
            return false;
        }
        ModPoly::from_int(f, p).is_squarefree()
    })
}

impl ModularPlan {
    fn new(f: &IntPolynomial) -> Option<ModularPlan> {
        let n = f.degree();
        let mut allowed = vec![true; n + 1];
        let mut best: Option<(u64, usize)> = None;
        for (k, p) in good_primes(f).take(PRUNING_PRIMES).enumerate() {
            let degs = ModPoly::from_int(f, p).factor_degrees();
            let reach = subset_sum_degrees(&degs, n);
            for (a, r) in allowed.iter_mut().zip(reach) {
                *a &= r;
            }
            if k < SELECTION_PRIMES && best.is_none_or(|(_, c)| degs.len() < c) {
                best = Some((p, degs.len()));
            }
            let plan_done = k + 1 >= SELECTION_PRIMES;
            let proven = allowed.iter().filter(|&&a| a).count() == 2;
            if proven || (plan_done && best.is_some_and(|(_, c)| c <= 6)) {
                break;
            }
        }
        best.map(|(prime, factor_count)| ModularPlan { prime, factor_count, allowed })
    }

    fn proves_irreducible(&self) -> bool {
        self.factor_count == 1 || self.allowed.iter().filter(|&&a| a).count() == 2
    }
}

fn symmetric_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Irreducible factors of a primitive squarefree polynomial with positive
/// leading coefficient.
fn factor_squarefree(f: &IntPolynomial) -> Vec<IntPolynomial> {
    let f = f.primitive_part();
    let n = f.degree();
    if n <= 1 {
        return if n == 1 { vec![f] } else { Vec::new() };
    }
    let plan = ModularPlan::new(&f).expect("infinitely many good primes exist");
    if plan.proves_irreducible() {
        return vec![f];
    }
    let p = plan.prime;
    let modular = ModPoly::from_int(&f, p).factor_squarefree();

    // Coefficients of lc·g/lc(g) for any factor g are below `bound`.
    let lc = f.leading();
    let bound = (BigInt::from(n + 1).sqrt() + 1u32) * (BigInt::one() << n) * f.max_norm() * lc.abs();
    let twice = &bound * 2u32;
    let mut doublings = 0u32;
    let mut modulus = BigInt::from(p);
    while modulus <= twice {
        modulus = &modulus * &modulus;
        doublings += 1;
    }
    let lifted = multifactor_lift(&f, &modular, p, doublings);
    recombine(f, lifted, &modulus, &plan.allowed)
}

fn recombine(mut f: IntPolynomial, mut lifted: Vec<IntPolynomial>, modulus: &BigInt, allowed: &[bool]) -> Vec<IntPolynomial> {
    let mut found = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        let lc = f.leading();
        let f0 = f.coeff(0);
        let target0 = &lc * &f0;
        for subset in (0..lifted.len()).combinations(size) {
            let deg: usize = subset.iter().map(|&i| lifted[i].degree()).sum();
            let rest = f.degree() - deg;
            if !allowed[deg] || !allowed[rest] {
                continue;
            }
            let c0 = subset
                .iter()
                .fold(lc.clone(), |acc, &i| (acc * lifted[i].coeff(0)).mod_floor(modulus));
            let c0 = symmetric_mod(&c0, modulus);
            if !f0.is_zero() && (c0.is_zero() || !(&target0 % &c0).is_zero()) {
                continue;
            }
            let mut g = IntPolynomial::constant(lc.clone());
            for &i in &subset {
                g = &g * &lifted[i];
                g = IntPolynomial::new(g.coeffs().iter().map(|c| symmetric_mod(c, modulus)).collect());
            }
            let g = g.primitive_part();
            if let Some(q) = f.div_exact(&g) {
                found.push(g);
                f = q.primitive_part();
                let mut k = 0;
                lifted.retain(|_| {
                    let keep = !subset.contains(&k);
                    k += 1;
                    keep
                });
                continue 'outer;
            }
        }
        size += 1;
    }
    if f.degree() > 0 {
        found.push(f);
    }
    found.sort_by(cmp_poly);
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn p(cs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(cs)
    }

    fn divisors(k: &BigInt) -> Vec<BigInt> {
        let a = k.abs();
        let mut out = Vec::new();
        let mut d = BigInt::one();
        while &d * &d <= a {
            if (&a % &d).is_zero() {
                out.push(d.clone());
                out.push(-d.clone());
                let e = &a / &d;
                if e != d {
                    out.push(e.clone());
                    out.push(-e);
                }
            }
            d += 1;
        }
        out
    }

    /// Kronecker's method: a degree-d factor is pinned down by its values
    /// at d+1 integer points, each dividing the value of f there.
    fn kronecker_reducible(f: &IntPolynomial) -> bool {
        let n = f.degree();
        for d in 1..=n / 2 {
            // Points with the fewest divisors keep the search small.
            let mut cands = Vec::new();
            for x in -8i64..=8 {
                let v = f.eval(&BigInt::from(x));
                if v.is_zero() {
                    return true;
                }
                let ds = divisors(&v);
                cands.push((ds.len(), BigInt::from(x), v, ds));
            }
            cands.sort_by_key(|c| c.0);
            cands.truncate(d + 1);
            let pts: Vec<(BigInt, BigInt)> = cands.iter().map(|c| (c.1.clone(), c.2.clone())).collect();
            let mut choices: Vec<Vec<BigInt>> = cands.into_iter().map(|c| c.3).collect();
            // g and -g are the same factor.
            choices[0].retain(|v| v.is_positive());
            for vals in choices.iter().multi_cartesian_product() {
                // Lagrange interpolation over ℚ.
                let mut coeffs = vec![BigRational::zero(); d + 1];
                for (i, yi) in vals.iter().enumerate() {
                    let mut basis = vec![BigRational::one()];
                    let mut denom = BigRational::one();
                    for (j, (xj, _)) in pts.iter().enumerate() {
                        if i == j {
                            continue;
                        }
                        let mut next = vec![BigRational::zero(); basis.len() + 1];
                        for (k, b) in basis.iter().enumerate() {
                            next[k + 1] += b;
                            next[k] -= b * BigRational::from_integer(xj.clone());
                        }
                        basis = next;
                        denom *= BigRational::from_integer(&pts[i].0 - xj);
                    }
                    for (k, b) in basis.iter().enumerate() {
                        coeffs[k] += b * BigRational::from_integer((*yi).clone()) / &denom;
                    }
                }
                if coeffs.iter().all(|c| c.is_integer()) {
                    let g = IntPolynomial::new(coeffs.iter().map(|c| c.to_integer()).collect());
                    if g.degree() == d && f.div_exact(&g).is_some() {
                        return true;
                    }
                }
            }
        }
        false
    }

    #[test]
    fn x5_minus_1() {
        let fz = factor_over_z(&p(&[-1, 0, 0, 0, 0, 1]));
        assert_eq!(fz.content, BigInt::one());
        assert_eq!(fz.factors, vec![(p(&[-1, 1]), 1), (p(&[1, 1, 1, 1, 1]), 1)]);
    }

    #[test]
    fn x2_minus_1_and_multiplicities() {
        let fz = factor_over_z(&p(&[-1, 0, 1]));
        assert_eq!(fz.factors, vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1)]);
        let f = (&p(&[-1, 1]).pow(3) * &p(&[2, 0, 1])).scale(&BigInt::from(-6));
        let fz = factor_over_z(&f);
        assert_eq!(fz.content, BigInt::from(-6));
        assert_eq!(fz.factors, vec![(p(&[-1, 1]), 3), (p(&[2, 0, 1]), 1)]);
        assert_eq!(fz.expand(), f);
    }

    #[test]
    fn figure_two_laplacian_factors() {
        let xi = p(&[6957, -22288, 29105, -20440, 8516, -2170, 332, -28, 1]);
        let phi = &p(&[0, 1]) * &xi;
        let fz = factor_over_z(&phi);
        assert_eq!(fz.factors, vec![(p(&[0, 1]), 1), (xi.clone(), 1)]);
        assert!(is_irreducible(&xi));
    }

    #[test]
    fn swinnerton_dyer_needs_recombination() {
        // sqrt2+sqrt3 minimal polynomial: x^4 - 10x^2 + 1 splits into
        // linear or quadratic factors modulo every prime.
        let f = p(&[1, 0, -10, 0, 1]);
        assert!(is_irreducible(&f));
        let g = &f * &p(&[1, 0, -10, 0, 1]).shift(&BigInt::from(1));
        let fz = factor_over_z(&g);
        assert_eq!(fz.factors.len(), 2);
        assert_eq!(fz.expand(), g);
    }

    #[test]
    fn kronecker_oracle_sanity() {
        assert!(kronecker_reducible(&p(&[-1, 0, 1])));
        assert!(!kronecker_reducible(&p(&[-2, 0, 1])));
        assert!(kronecker_reducible(&p(&[1, 0, 2, 0, 1])));
        assert!(!kronecker_reducible(&p(&[1, 0, -10, 0, 1])));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn irreducibility_matches_kronecker(cs in proptest::collection::vec(-4i64..5, 3..7)) {
            let f = p(&cs);
            prop_assume!(f.degree() >= 2 && f.is_squarefree() && f.content().is_one());
            prop_assert_eq!(is_irreducible(&f), !kronecker_reducible(&f));
        }

        #[test]
        fn products_reassemble(
            a in proptest::collection::vec(-5i64..6, 2..5),
            b in proptest::collection::vec(-5i64..6, 2..5),
            c in proptest::collection::vec(-5i64..6, 1..4),
        ) {
            let f = &(&p(&a) * &p(&b)) * &p(&c);
            prop_assume!(!f.is_zero());
            let fz = factor_over_z(&f);
            prop_assert_eq!(fz.expand(), f);
            for (g, _) in &fz.factors {
                prop_assert!(g.degree() > 6 || !kronecker_reducible(g));
            }
        }
    }
}
