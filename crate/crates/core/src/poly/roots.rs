//! Certified isolation of all complex roots of a squarefree integer
//! polynomial.
//!
//! Approximations come from double-precision Aberth iteration followed by
//! multiprecision Weierstrass (Durand–Kerner) steps. Certification uses the
//! fact that `f/lc` is the characteristic polynomial of
//! `diag(z) - w·1ᵀ`, where `w_i = f(z_i) / (lc·∏_{j≠i}(z_i - z_j))`: the
//! Gerschgorin discs `D(z_i - w_i, (n-1)|w_i|)` contain the roots, and when
//! they are pairwise disjoint each holds exactly one.

use super::IntPolynomial;
use crate::arith::{Ball, Float, Mag, Precision};
use crate::{Error, Result};
use num_complex::Complex64;
use num_traits::Zero;

/// Disjoint root discs of a squarefree polynomial in a fixed order.
#[derive(Clone, Debug)]
pub struct RootSystem {
    poly: IntPolynomial,
    roots: Vec<Ball>,
    real: Vec<bool>,
    conjugate: Vec<usize>,
    prec: u32,
}

impl RootSystem {
    pub fn poly(&self) -> &IntPolynomial {
        &self.poly
    }

    pub fn roots(&self) -> &[Ball] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &Ball {
        &self.roots[i]
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Certified real root (the disc's center lies on the real axis).
    pub fn is_real(&self, i: usize) -> bool {
        self.real[i]
    }

    /// Index of the complex-conjugate root (`i` itself for real roots).
    pub fn conjugate(&self, i: usize) -> usize {
        self.conjugate[i]
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn max_radius(&self) -> Mag {
        self.roots.iter().fold(Mag::ZERO, |m, r| m.max(r.rad()))
    }

    /// Same roots, same order, certified at working precision `bits`.
    pub fn refine(&self, bits: u32) -> Result<RootSystem> {
        if bits <= self.prec || self.is_empty() {
            return Ok(self.clone());
        }
        let seeds: Vec<Ball> = self.roots.iter().map(|r| r.center().with_prec(bits)).collect();
        let fresh = certify_from(&self.poly, seeds, bits)
            .ok_or_else(|| Error::precision(bits, "root refinement did not certify"))?;
        // Each fresh disc holds one root, so it must meet exactly one old disc.
        let mut order = vec![usize::MAX; self.len()];
        for (k, disc) in fresh.roots.iter().enumerate() {
            let hits: Vec<usize> = (0..self.len()).filter(|&i| !disc.disjoint(&self.roots[i])).collect();
            if hits.len() != 1 || order[hits[0]] != usize::MAX {
                return Err(Error::precision(bits, "refined roots could not be matched"));
            }
            order[hits[0]] = k;
        }
        let mut inverse = vec![0; self.len()];
        for (i, &k) in order.iter().enumerate() {
            inverse[k] = i;
        }
        Ok(RootSystem {
            poly: self.poly.clone(),
            roots: order.iter().map(|&k| fresh.roots[k].clone()).collect(),
            real: order.iter().map(|&k| fresh.real[k]).collect(),
            conjugate: order.iter().map(|&k| inverse[fresh.conjugate[k]]).collect(),
            prec: bits,
        })
    }

    /// The roots at `indices` (ascending) as a root system of the factor
    /// `g` that vanishes on them. `g` must be real and its roots exactly
    /// these.
    pub(crate) fn restrict(&self, g: &IntPolynomial, indices: &[usize]) -> RootSystem {
        debug_assert_eq!(g.degree(), indices.len());
        let local = |global: usize| indices.iter().position(|&i| i == global).expect("factor roots are closed under conjugation");
        RootSystem {
            poly: g.clone(),
            roots: indices.iter().map(|&i| self.roots[i].clone()).collect(),
            real: indices.iter().map(|&i| self.real[i]).collect(),
            conjugate: indices.iter().map(|&i| local(self.conjugate[i])).collect(),
            prec: self.prec,
        }
    }

    /// Refines until every radius is below `2^-target_bits`, escalating
    /// along the ladder.
    pub fn refine_until(&self, target_bits: i64, ladder: Precision) -> Result<RootSystem> {
        let mut current = self.clone();
        let mut prec = Precision { bits: self.prec.max(ladder.bits), ..ladder };
        loop {
            if current.max_radius().log2_floor().is_none_or(|e| e < -target_bits) {
                return Ok(current);
            }
            prec = prec
                .escalate()
                .ok_or_else(|| Error::precision(prec.bits, "root radii did not shrink below the target"))?;
            current = current.refine(prec.bits)?;
        }
    }
}

/// Isolates all roots of a squarefree polynomial, escalating precision as
/// needed.
pub fn isolate_roots(f: &IntPolynomial, prec: Precision) -> Result<RootSystem> {
    if f.is_zero() {
        return Err(Error::InvalidInput("roots of the zero polynomial".into()));
    }
    let g = f.gcd(&f.derivative());
    if g.degree() > 0 {
        return Err(Error::NotSquarefree(g.to_string()));
    }
    let n = f.degree();
    if n == 0 {
        return Ok(RootSystem { poly: f.clone(), roots: vec![], real: vec![], conjugate: vec![], prec: prec.bits });
    }
    let seeds = aberth_seeds(f);
    let mut p = prec;
    loop {
        let start: Vec<Ball> = seeds
            .iter()
            .map(|&z| Ball::from_complex64(z, p.bits).unwrap_or_else(|_| Ball::zero(p.bits)))
            .collect();
        if let Some(sys) = certify_from(f, start, p.bits) {
            return Ok(sys);
        }
        p = p.escalate().ok_or_else(|| Error::precision(p.bits, format!("isolating roots of {f}")))?;
    }
}

fn to_f64_ratio(a: &num_bigint::BigInt, lc: &num_bigint::BigInt) -> f64 {
    let (q, _) = Float::div_round(&Float::from_bigint(a), &Float::from_bigint(lc), 64);
    q.to_f64()
}

/// Double-precision Aberth–Ehrlich approximations.
fn aberth_seeds(f: &IntPolynomial) -> Vec<Complex64> {
    let n = f.degree();
    let lc = f.leading();
    let a: Vec<f64> = f.coeffs().iter().map(|c| to_f64_ratio(c, &lc)).collect();
    let radius = (1..=n)
        .map(|k| (2.0 * a[n - k].abs()).powf(1.0 / k as f64))
        .fold(0.0f64, f64::max)
        .max(1.0);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / n as f64 + 0.4))
        .collect();
    let eval = |x: Complex64| {
        let mut p = Complex64::zero();
        let mut dp = Complex64::zero();
        for c in a.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    };
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p == Complex64::zero() {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / z[i].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z.iter().map(|x| if x.is_finite() { *x } else { Complex64::new(radius, 0.0) }).collect()
}

/// Weierstrass corrections `w_i` as balls around the exact points `z`.
fn weierstrass(f: &IntPolynomial, z: &[Ball], lc: &Ball) -> Option<Vec<Ball>> {
    let n = z.len();
    (0..n)
        .map(|i| {
            let mut den = lc.clone();
            for j in 0..n {
                if j != i {
                    den = den.mul(&z[i].sub(&z[j]));
                }
            }
            f.eval_ball(&z[i]).div(&den).ok()
        })
        .collect()
}

fn certify_from(f: &IntPolynomial, mut z: Vec<Ball>, prec: u32) -> Option<RootSystem> {
    let n = f.degree();
    let lc = Ball::from_bigint(&f.leading(), prec);
    let target = -(prec as i64) + 8;
    let mut discs = None;
    for _ in 0..200 {
        let w = weierstrass(f, &z, &lc)?;
        let scale = z.iter().map(|x| x.abs_upper()).fold(Mag::pow2(0), Mag::max);
        // Stop once the corrections are below the working precision or
        // drowned in their own evaluation error.
        let converged = w.iter().all(|x| {
            let step = x.center().abs_upper();
            let rel = step.div(&scale).log2_floor().is_none_or(|e| e < target);
            rel || step <= x.rad().mul_u64(4)
        });
        if converged {
            let d: Vec<Ball> = z
                .iter()
                .zip(&w)
                .map(|(zi, wi)| zi.sub(wi).inflate(wi.abs_upper().mul_u64(n as u64 - 1)))
                .collect();
            discs = Some(d);
            break;
        }
        z = z.iter().zip(&w).map(|(zi, wi)| zi.sub(wi).center()).collect();
    }
    let discs = discs?;
    for i in 0..n {
        for j in i + 1..n {
            if !discs[i].disjoint(&discs[j]) {
                return None;
            }
        }
    }
    classify(f, discs, prec)
}

/// Real/conjugate structure, conjugate symmetrization and canonical order.
fn classify(f: &IntPolynomial, mut discs: Vec<Ball>, prec: u32) -> Option<RootSystem> {
    let n = discs.len();
    let mut conjugate = vec![usize::MAX; n];
    for i in 0..n {
        let mirrored = discs[i].conj();
        let hits: Vec<usize> = (0..n).filter(|&j| !mirrored.disjoint(&discs[j])).collect();
        match hits.as_slice() {
            [j] => conjugate[i] = *j,
            _ => return None,
        }
    }
    for i in 0..n {
        let j = conjugate[i];
        if conjugate[j] != i {
            return None;
        }
        if i == j {
            discs[i] = discs[i].real_part_ball();
        } else if i < j {
            // The conjugate root lies in the mirrored disc; keep the tighter one.
            if discs[i].rad() <= discs[j].rad() {
                discs[j] = discs[i].conj();
            } else {
                discs[i] = discs[j].conj();
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| discs[a].re().cmp(discs[b].re()).then_with(|| discs[a].im().cmp(discs[b].im())));
    let mut inverse = vec![0; n];
    for (k, &i) in order.iter().enumerate() {
        inverse[i] = k;
    }
    Some(RootSystem {
        poly: f.clone(),
        roots: order.iter().map(|&i| discs[i].clone()).collect(),
        real: order.iter().map(|&i| conjugate[i] == i).collect(),
        conjugate: order.iter().map(|&i| inverse[conjugate[i]]).collect(),
        prec,
    })
}
