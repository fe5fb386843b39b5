//! Quadratic Hensel lifting of a modular factorization, two factors at a
//! time along a balanced split of the factor list.

use super::modp::ModPoly;
use super::IntPolynomial;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Polynomial over ℤ/mℤ, coefficients in `[0, m)`, ascending, trimmed.
type Zm = Vec<BigInt>;

fn trim(mut v: Zm) -> Zm {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn reduce(v: &[BigInt], m: &BigInt) -> Zm {
    trim(v.iter().map(|c| c.mod_floor(m)).collect())
}

fn add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Zm {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|i| (a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).mod_floor(m)).collect())
}

fn sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Zm {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|i| (a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).mod_floor(m)).collect())
}

fn mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Zm {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    reduce(&out, m)
}

/// Division by a monic divisor modulo `m`.
fn div_rem_monic(a: &[BigInt], d: &[BigInt], m: &BigInt) -> (Zm, Zm) {
    debug_assert!(d.last().is_some_and(|c| c.is_one()), "divisor must be monic");
    if a.len() < d.len() {
        return (Vec::new(), a.to_vec());
    }
    let dd = d.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - dd];
    for i in (0..q.len()).rev() {
        let t = r[i + dd].mod_floor(m);
        if t.is_zero() {
            continue;
        }
        for (j, c) in d.iter().enumerate() {
            r[i + j] = (&r[i + j] - &t * c).mod_floor(m);
        }
        q[i] = t;
    }
    (trim(q), reduce(&r, m))
}

fn from_modp(f: &ModPoly) -> Zm {
    f.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

#[cfg(test)]
fn scalar(c: &BigInt, m: &BigInt) -> Zm {
    trim(vec![c.mod_floor(m)])
}

/// One quadratic step: from `f ≡ g·h`, `s·g + t·h ≡ 1 (mod m)` to the same
/// relations modulo `m²`. `h` stays monic and `lc(g) ≡ lc(f)`.
fn lift_step(f: &[BigInt], g: &Zm, h: &Zm, s: &Zm, t: &Zm, m: &BigInt) -> (Zm, Zm, Zm, Zm, BigInt) {
    let m2 = m * m;
    let e = sub(&reduce(f, &m2), &mul(g, h, &m2), &m2);
    let (q, r) = div_rem_monic(&mul(s, &e, &m2), h, &m2);
    let g_new = add(&add(g, &mul(t, &e, &m2), &m2), &mul(&q, g, &m2), &m2);
    let h_new = add(h, &r, &m2);
    let b = sub(&add(&mul(s, &g_new, &m2), &mul(t, &h_new, &m2), &m2), &[BigInt::one()], &m2);
    let (c, d) = div_rem_monic(&mul(s, &b, &m2), &h_new, &m2);
    let s_new = sub(s, &d, &m2);
    let t_new = sub(&sub(t, &mul(t, &b, &m2), &m2), &mul(&c, &g_new, &m2), &m2);
    (g_new, h_new, s_new, t_new, m2)
}

/// Lifts `f ≡ lc(f)·∏ factors (mod p)` with monic pairwise coprime modular
/// factors to monic factors modulo `p^(2^doublings)`, in input order.
pub fn multifactor_lift(f: &IntPolynomial, factors: &[ModPoly], p: u64, doublings: u32) -> Vec<IntPolynomial> {
    let mut target = BigInt::from(p);
    for _ in 0..doublings {
        target = &target * &target;
    }
    lift_rec(f.coeffs(), factors, p, doublings, &target)
        .into_iter()
        .map(IntPolynomial::new)
        .collect()
}

fn lift_rec(f: &[BigInt], factors: &[ModPoly], p: u64, doublings: u32, target: &BigInt) -> Vec<Zm> {
    let lc = f.last().cloned().unwrap_or_else(BigInt::zero);
    if factors.len() == 1 {
        let inv = lc.modinv(target).expect("leading coefficient is a unit mod p");
        let v: Vec<BigInt> = f.iter().map(|c| c * &inv).collect();
        return vec![reduce(&v, target)];
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let pb = BigInt::from(p);
    let lc_p = lc.mod_floor(&pb);
    let g0 = ModPoly::product(p, left).scale(lc_p.try_into().expect("word-sized"));
    let h0 = ModPoly::product(p, right);
    let (one, s0, t0) = g0.ext_gcd(&h0);
    assert!(one.is_one(), "modular factors must be coprime");
    let (mut g, mut h, mut s, mut t) = (from_modp(&g0), from_modp(&h0), from_modp(&s0), from_modp(&t0));
    let mut m = pb;
    for _ in 0..doublings {
        let step = lift_step(f, &g, &h, &s, &t, &m);
        (g, h, s, t, m) = step;
    }
    debug_assert_eq!(&m, target);
    let mut out = lift_rec(&g, left, p, doublings, target);
    out.extend(lift_rec(&h, right, p, doublings, target));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lifts_cyclotomic_split() {
        // x^4 - 1 = (x-1)(x+1)(x^2+1); mod 5 it splits completely.
        let f = IntPolynomial::from_i64s(&[-1, 0, 0, 0, 1]);
        let fp = ModPoly::from_int(&f, 5).factor_squarefree();
        assert_eq!(fp.len(), 4);
        let lifted = multifactor_lift(&f, &fp, 5, 3);
        let m = BigInt::from(5u32).pow(8);
        let prod = lifted.iter().fold(vec![BigInt::one()], |acc, g| mul(&acc, g.coeffs(), &m));
        assert_eq!(prod, reduce(f.coeffs(), &m));
    }

    #[test]
    fn lifts_with_nonunit_leading_coefficient() {
        // (2x+1)(3x-1)(x+4)
        let f = &(&IntPolynomial::from_i64s(&[1, 2]) * &IntPolynomial::from_i64s(&[-1, 3]))
            * &IntPolynomial::from_i64s(&[4, 1]);
        let p = 11;
        let fp = ModPoly::from_int(&f, p).factor_squarefree();
        let lifted = multifactor_lift(&f, &fp, p, 4);
        let m = BigInt::from(p).pow(16);
        let prod = lifted.iter().fold(scalar(&f.leading(), &m), |acc, g| mul(&acc, g.coeffs(), &m));
        assert_eq!(prod, reduce(f.coeffs(), &m));
    }
}
