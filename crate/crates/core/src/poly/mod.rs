//! Univariate polynomials with exact integer coefficients: arithmetic,
//! gcd, resultants, factorization over ℤ and certified root isolation.

mod factor;
mod hensel;
pub mod modp;
mod resultant;
mod roots;

pub use factor::{factor_over_z, is_irreducible, FactorizationZ};
pub use resultant::{discriminant, resultant};
pub use roots::{isolate_roots, RootSystem};

use crate::arith::Ball;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial with integer coefficients in ascending degree order.
/// The leading coefficient is nonzero unless the polynomial is zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> IntPolynomial {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> IntPolynomial {
        IntPolynomial::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> IntPolynomial {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> IntPolynomial {
        IntPolynomial::constant(BigInt::one())
    }

    pub fn x() -> IntPolynomial {
        IntPolynomial::from_i64s(&[0, 1])
    }

    pub fn constant(c: BigInt) -> IntPolynomial {
        IntPolynomial::new(vec![c])
    }

    /// `c · x^k`.
    pub fn monomial(c: BigInt, k: usize) -> IntPolynomial {
        let mut v = vec![BigInt::zero(); k];
        v.push(c);
        IntPolynomial::new(v)
    }

    /// `x - r`.
    pub fn linear_root(r: &BigInt) -> IntPolynomial {
        IntPolynomial::new(vec![-r, BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, k: &BigInt) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> IntPolynomial {
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    /// Horner evaluation in ball arithmetic.
    pub fn eval_ball(&self, x: &Ball) -> Ball {
        let prec = x.prec();
        let mut acc = Ball::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&Ball::from_bigint(c, prec));
        }
        acc
    }

    /// Value and derivative at `x` in one Horner pass.
    pub fn eval_ball_with_derivative(&self, x: &Ball) -> (Ball, Ball) {
        let prec = x.prec();
        let mut p = Ball::zero(prec);
        let mut dp = Ball::zero(prec);
        for c in self.coeffs.iter().rev() {
            dp = dp.mul(x).add(&p);
            p = p.mul(x).add(&Ball::from_bigint(c, prec));
        }
        (p, dp)
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> IntPolynomial {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        IntPolynomial::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Largest coefficient magnitude.
    pub fn max_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
    }

    /// Division with remainder by a divisor whose leading coefficient
    /// divides every intermediate leading term; returns `None` otherwise.
    pub fn div_rem_exact(&self, d: &IntPolynomial) -> Option<(IntPolynomial, IntPolynomial)> {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.degree() < d.degree() || self.is_zero() {
            return Some((IntPolynomial::zero(), self.clone()));
        }
        let mut r = self.coeffs.clone();
        let dl = d.leading();
        let dd = d.degree();
        let mut q = vec![BigInt::zero(); self.degree() - dd + 1];
        for i in (0..q.len()).rev() {
            let top = &r[i + dd];
            if top.is_zero() {
                continue;
            }
            let (qi, rem) = top.div_rem(&dl);
            if !rem.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i + j] -= &qi * dc;
            }
            q[i] = qi;
        }
        Some((IntPolynomial::new(q), IntPolynomial::new(r)))
    }

    /// Exact quotient `self / d` if `d` divides `self` in ℤ[x].
    pub fn div_exact(&self, d: &IntPolynomial) -> Option<IntPolynomial> {
        match self.div_rem_exact(d) {
            Some((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// Pseudo-remainder `lc(d)^(deg self - deg d + 1) · self mod d`.
    pub fn pseudo_rem(&self, d: &IntPolynomial) -> IntPolynomial {
        assert!(!d.is_zero(), "pseudo-remainder by zero");
        if self.degree() < d.degree() || self.is_zero() {
            return self.clone();
        }
        let dl = d.leading();
        let dd = d.degree();
        let mut r = self.coeffs.clone();
        let steps = self.degree() - dd + 1;
        let mut deg = self.degree();
        for _ in 0..steps {
            let top = r[deg].clone();
            for c in r.iter_mut() {
                *c *= &dl;
            }
            if !top.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[deg - dd + j] -= &top * dc;
                }
            }
            r.pop();
            if deg == 0 {
                break;
            }
            deg -= 1;
        }
        IntPolynomial::new(r)
    }

    /// Greatest common divisor in ℤ[x] (primitive PRS), positive leading
    /// coefficient.
    pub fn gcd(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let c = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = if r.is_zero() { r } else { r.primitive_part() };
        }
        a.primitive_part().scale(&c)
    }

    /// `f / gcd(f, f')`, primitive.
    pub fn squarefree_part(&self) -> IntPolynomial {
        assert!(!self.is_zero(), "squarefree part of zero");
        if self.degree() == 0 {
            return IntPolynomial::one();
        }
        let g = self.gcd(&self.derivative());
        self.primitive_part()
            .div_exact(&g.primitive_part())
            .expect("gcd divides its argument")
            .primitive_part()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }

    /// `lc^(n-1) f(x / lc)`: monic, with roots scaled by `lc`.
    pub fn monic_associate(&self) -> IntPolynomial {
        let n = self.degree();
        let lc = self.leading();
        let mut pow = BigInt::one();
        let mut out = vec![BigInt::zero(); n + 1];
        // coefficient of x^i becomes a_i * lc^(n-1-i) for i < n, and 1 at i = n.
        for i in (0..n).rev() {
            out[i] = &self.coeffs[i] * &pow;
            pow *= &lc;
        }
        out[n] = BigInt::one();
        IntPolynomial::new(out)
    }

    /// `self(x + c)`.
    pub fn shift(&self, c: &BigInt) -> IntPolynomial {
        let mut acc = IntPolynomial::zero();
        let lin = IntPolynomial::new(vec![c.clone(), BigInt::one()]);
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &IntPolynomial::constant(a.clone());
        }
        acc
    }

    /// `"c0 c1 ... cn"`.
    pub fn to_ascending_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
    }

    /// Parses ascending whitespace-separated integer coefficients.
    pub fn parse_ascending(s: &str) -> Result<IntPolynomial> {
        let coeffs = s
            .split_whitespace()
            .map(|t| t.parse::<BigInt>().map_err(|e| Error::Parse(format!("coefficient {t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        if coeffs.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        Ok(IntPolynomial::new(coeffs))
    }

    /// Ascending coefficients as decimal strings (JSON report form).
    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn from_decimal_strings(v: &[String]) -> Result<IntPolynomial> {
        IntPolynomial::parse_ascending(&v.join(" "))
    }

    pub fn pow(&self, k: u32) -> IntPolynomial {
        let mut acc = IntPolynomial::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let a = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{a}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{a}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(cs)
    }

    /// The Figure-1 adjacency characteristic polynomial.
    fn fig1() -> IntPolynomial {
        p(&[1, -4, -12, 12, 23, -4, -10, 0, 1])
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(p(&[1, -2, 1]).squarefree_part(), p(&[-1, 1]));
        assert_eq!(fig1().squarefree_part(), fig1());
        assert_eq!(p(&[0, -1, 0, 1]).squarefree_part(), p(&[0, -1, 0, 1]));
        // gcd(f, f') = 1 by Euclid for the Figure-1 polynomial.
        assert_eq!(fig1().gcd(&fig1().derivative()), IntPolynomial::one());
    }

    #[test]
    fn gcd_and_exact_division() {
        let a = &p(&[-1, 1]) * &p(&[2, 0, 1]);
        let b = &p(&[-1, 1]) * &p(&[3, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(a.div_exact(&p(&[-1, 1])), Some(p(&[2, 0, 1])));
        assert_eq!(a.div_exact(&p(&[3, 1])), None);
        assert_eq!(p(&[4, 0, 2]).gcd(&p(&[6, 0, 3])), p(&[2, 0, 1]));
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(fig1().to_string(), "x^8 - 10*x^6 - 4*x^5 + 23*x^4 + 12*x^3 - 12*x^2 - 4*x + 1");
        let q = IntPolynomial::parse_ascending("1 -4 -12 12 23 -4 -10 0 1").unwrap();
        assert_eq!(q, fig1());
        assert!(IntPolynomial::parse_ascending("1 x").is_err());
    }

    #[test]
    fn monic_associate_scales_roots() {
        // 2x - 3 has root 3/2; associate is x - 3.
        assert_eq!(p(&[-3, 2]).monic_associate(), p(&[-3, 1]));
        // 2x^2 - 3x + 1 = (2x-1)(x-1): roots 1/2, 1 -> 1, 2.
        assert_eq!(p(&[1, -3, 2]).monic_associate(), p(&[2, -3, 1]));
    }

    #[test]
    fn pseudo_remainder_identity() {
        let a = p(&[1, 2, 3, 4]);
        let b = p(&[1, 0, 2]);
        let r = a.pseudo_rem(&b);
        // lc(b)^2 * a - r must be divisible by b.
        let lhs = &a.scale(&BigInt::from(4)) - &r;
        assert!(lhs.div_exact(&b).is_some());
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn shift_matches_evaluation() {
        let f = fig1();
        let g = f.shift(&BigInt::from(3));
        for x in -3..4 {
            assert_eq!(g.eval(&BigInt::from(x)), f.eval(&BigInt::from(x + 3)));
        }
    }
}
