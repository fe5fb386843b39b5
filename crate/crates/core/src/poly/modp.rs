//! Dense polynomials over a prime field 𝔽ₚ with word-sized `p`, with
//! distinct-degree and equal-degree (Cantor–Zassenhaus) factorization.

use super::IntPolynomial;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPoly {
    p: u64,
    c: Vec<u64>,
}

#[inline]
fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverse of zero mod p");
    powm(a, p - 2, p)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes in increasing order starting at `from`.
pub fn primes_from(from: u64) -> impl Iterator<Item = u64> {
    (from.max(2)..).filter(|&n| is_prime(n))
}

impl ModPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> ModPoly {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        ModPoly { p, c }
    }

    pub fn from_int(f: &IntPolynomial, p: u64) -> ModPoly {
        let pb = BigInt::from(p);
        ModPoly::new(
            p,
            f.coeffs().iter().map(|a| a.mod_floor(&pb).to_u64().unwrap()).collect(),
        )
    }

    /// Coefficients lifted to `[0, p)`.
    pub fn to_int(&self) -> IntPolynomial {
        IntPolynomial::new(self.c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(p: u64) -> ModPoly {
        ModPoly { p, c: vec![] }
    }

    pub fn one(p: u64) -> ModPoly {
        ModPoly::new(p, vec![1])
    }

    pub fn x(p: u64) -> ModPoly {
        ModPoly::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn monic(&self) -> ModPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.leading(), self.p);
        self.scale(inv)
    }

    pub fn scale(&self, k: u64) -> ModPoly {
        ModPoly::new(self.p, self.c.iter().map(|&x| mulm(x, k, self.p)).collect())
    }

    pub fn add(&self, o: &ModPoly) -> ModPoly {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        ModPoly::new(
            p,
            (0..n)
                .map(|i| {
                    let a = self.c.get(i).copied().unwrap_or(0);
                    let b = o.c.get(i).copied().unwrap_or(0);
                    (a + b) % p
                })
                .collect(),
        )
    }

    pub fn sub(&self, o: &ModPoly) -> ModPoly {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        ModPoly::new(
            p,
            (0..n)
                .map(|i| {
                    let a = self.c.get(i).copied().unwrap_or(0);
                    let b = o.c.get(i).copied().unwrap_or(0);
                    (a + p - b) % p
                })
                .collect(),
        )
    }

    pub fn mul(&self, o: &ModPoly) -> ModPoly {
        if self.is_zero() || o.is_zero() {
            return ModPoly::zero(self.p);
        }
        let p = self.p;
        let mut acc = vec![0u128; self.c.len() + o.c.len() - 1];
        let pp = p as u128;
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u128 * b as u128) % pp;
            }
        }
        ModPoly::new(p, acc.into_iter().map(|x| x as u64).collect())
    }

    pub fn div_rem(&self, d: &ModPoly) -> (ModPoly, ModPoly) {
        assert!(!d.is_zero(), "division by zero polynomial mod p");
        let p = self.p;
        if self.degree() < d.degree() || self.is_zero() {
            return (ModPoly::zero(p), self.clone());
        }
        let inv = inv_mod(d.leading(), p);
        let dd = d.degree();
        let mut r = self.c.clone();
        let mut q = vec![0u64; self.degree() - dd + 1];
        for i in (0..q.len()).rev() {
            let t = mulm(r[i + dd], inv, p);
            if t == 0 {
                continue;
            }
            q[i] = t;
            for (j, &dc) in d.c.iter().enumerate() {
                r[i + j] = (r[i + j] + p - mulm(t, dc, p)) % p;
            }
        }
        (ModPoly::new(p, q), ModPoly::new(p, r))
    }

    pub fn rem(&self, d: &ModPoly) -> ModPoly {
        self.div_rem(d).1
    }

    pub fn mul_mod(&self, o: &ModPoly, m: &ModPoly) -> ModPoly {
        self.mul(o).rem(m)
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, o: &ModPoly) -> ModPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s·self + t·o = g`, `g` monic.
    pub fn ext_gcd(&self, o: &ModPoly) -> (ModPoly, ModPoly, ModPoly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (ModPoly::one(p), ModPoly::zero(p));
        let (mut t0, mut t1) = (ModPoly::zero(p), ModPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s2 = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t2);
        }
        let inv = inv_mod(r0.leading(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> ModPoly {
        let p = self.p;
        ModPoly::new(
            p,
            self.c.iter().enumerate().skip(1).map(|(i, &a)| mulm(a, i as u64 % p, p)).collect(),
        )
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &ModPoly) -> ModPoly {
        let mut result = ModPoly::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            result = result.mul_mod(&result, m);
            if e.bit(i) {
                result = result.mul_mod(&base, m);
            }
        }
        result
    }

    pub fn is_squarefree(&self) -> bool {
        let d = self.derivative();
        if d.is_zero() {
            return self.degree() == 0;
        }
        self.gcd(&d).degree() == 0
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(g_d, d)` where `g_d` is the product of all irreducible
    /// factors of degree `d`.
    pub fn distinct_degree(&self) -> Vec<(ModPoly, usize)> {
        let p = self.p;
        let mut out = Vec::new();
        let mut f = self.monic();
        let mut h = ModPoly::x(p).rem(&f);
        let pe = BigUint::from(p);
        let mut d = 1;
        while f.degree() >= 2 * d {
            h = h.pow_mod(&pe, &f);
            let g = h.sub(&ModPoly::x(p)).gcd(&f);
            if g.degree() > 0 {
                f = f.div_rem(&g).0;
                h = h.rem(&f);
                out.push((g, d));
            }
            d += 1;
        }
        if f.degree() > 0 {
            let deg = f.degree();
            out.push((f, deg));
        }
        out
    }

    /// Degrees of the irreducible factors (the Frobenius cycle type).
    pub fn factor_degrees(&self) -> Vec<usize> {
        let mut degs = Vec::new();
        for (g, d) in self.distinct_degree() {
            for _ in 0..g.degree() / d {
                degs.push(d);
            }
        }
        degs.sort_unstable();
        degs
    }

    /// Splits a product of distinct irreducibles of common degree `d`
    /// (odd `p` only).
    pub fn equal_degree(&self, d: usize, rng: &mut ChaCha8Rng) -> Vec<ModPoly> {
        let p = self.p;
        assert!(p % 2 == 1, "equal-degree splitting needs odd p");
        let f = self.monic();
        let n = f.degree();
        if n == d {
            return vec![f];
        }
        let e: BigUint = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1;
        loop {
            let a = ModPoly::new(p, (0..n).map(|_| rng.next_u64() % p).collect());
            if a.degree() == 0 {
                continue;
            }
            let g = a.gcd(&f);
            let split = if g.degree() > 0 && g.degree() < n {
                g
            } else {
                let b = a.pow_mod(&e, &f).sub(&ModPoly::one(p));
                let g = b.gcd(&f);
                if g.degree() == 0 || g.degree() == n {
                    continue;
                }
                g
            };
            let other = f.div_rem(&split).0;
            let mut out = split.equal_degree(d, rng);
            out.extend(other.equal_degree(d, rng));
            return out;
        }
    }

    /// Complete factorization of a squarefree polynomial into monic
    /// irreducibles, sorted by (degree, coefficients).
    pub fn factor_squarefree(&self) -> Vec<ModPoly> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.p ^ ((self.degree() as u64) << 32));
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree() {
            out.extend(g.equal_degree(d, &mut rng));
        }
        out.sort_by(|a, b| a.degree().cmp(&b.degree()).then(a.c.cmp(&b.c)));
        out
    }

    /// Product of a list of polynomials.
    pub fn product(p: u64, fs: &[ModPoly]) -> ModPoly {
        fs.iter().fold(ModPoly::one(p), |acc, f| acc.mul(f))
    }

    pub fn from_int_coeffs_mod(f: &IntPolynomial, m: &BigInt) -> Vec<BigInt> {
        f.coeffs().iter().map(|c| c.mod_floor(m)).collect()
    }

    pub fn is_zero_const(x: &BigInt) -> bool {
        x.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(p: u64, c: &[u64]) -> ModPoly {
        ModPoly::new(p, c.to_vec())
    }

    #[test]
    fn ext_gcd_identity() {
        let p = 7;
        let a = mp(p, &[1, 2, 3, 1]);
        let b = mp(p, &[3, 0, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn x5_minus_1_mod_11_splits_completely() {
        // 11 ≡ 1 mod 5, so x^5 - 1 has five linear factors mod 11.
        let f = ModPoly::from_int(&IntPolynomial::from_i64s(&[-1, 0, 0, 0, 0, 1]), 11);
        assert_eq!(f.factor_degrees(), vec![1, 1, 1, 1, 1]);
        let fs = f.factor_squarefree();
        assert_eq!(fs.len(), 5);
        assert_eq!(ModPoly::product(11, &fs), f);
    }

    #[test]
    fn cyclotomic_mod_2_and_3() {
        // Φ5 mod 2 is irreducible (order of 2 mod 5 is 4); mod 3 as well.
        let phi5 = IntPolynomial::from_i64s(&[1, 1, 1, 1, 1]);
        assert_eq!(ModPoly::from_int(&phi5, 2).factor_degrees(), vec![4]);
        assert_eq!(ModPoly::from_int(&phi5, 3).factor_degrees(), vec![4]);
        // mod 19: order of 19 mod 5 is 2 -> two quadratics.
        let f = ModPoly::from_int(&phi5, 19);
        assert_eq!(f.factor_degrees(), vec![2, 2]);
        let fs = f.factor_squarefree();
        assert_eq!(ModPoly::product(19, &fs), f);
    }

    #[test]
    fn squarefree_detection() {
        assert!(!mp(5, &[1, 2, 1]).is_squarefree());
        assert!(mp(5, &[4, 0, 1]).is_squarefree());
    }
}
