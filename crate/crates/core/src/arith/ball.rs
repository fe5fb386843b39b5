//! Complex disc balls: a [`Float`] center pair and a [`Mag`] radius.
//!
//! Every operation returns a disc containing the exact image of all points
//! of its inputs. Centers are rounded to the ball's working precision and
//! the rounding error is folded into the radius.

use super::{ArithError, Float, Mag};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use std::fmt;

#[derive(Clone)]
pub struct Ball {
    re: Float,
    im: Float,
    rad: Mag,
    prec: u32,
}

impl Ball {
    /// Exact point `re + i·im` (rounded to `prec` if the mantissas are longer).
    pub fn point(re: Float, im: Float, prec: u32) -> Ball {
        let (re, e1) = re.round(prec);
        let (im, e2) = im.round(prec);
        Ball { re, im, rad: e1.add(&e2), prec }
    }

    pub fn new(re: Float, im: Float, rad: Mag, prec: u32) -> Ball {
        let b = Ball::point(re, im, prec);
        Ball { rad: b.rad.add(&rad), ..b }
    }

    pub fn zero(prec: u32) -> Ball {
        Ball { re: Float::zero(), im: Float::zero(), rad: Mag::ZERO, prec }
    }

    pub fn one(prec: u32) -> Ball {
        Ball::from_i64(1, prec)
    }

    pub fn from_i64(n: i64, prec: u32) -> Ball {
        Ball::point(Float::from_i64(n), Float::zero(), prec)
    }

    pub fn from_bigint(n: &BigInt, prec: u32) -> Ball {
        Ball::point(Float::from_bigint(n), Float::zero(), prec)
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Ball {
        let (c, err) = Float::from_rational(q, prec);
        Ball { re: c, im: Float::zero(), rad: err, prec }
    }

    /// Real ball `c ± r` from f64 values; NaN and infinities are rejected.
    pub fn from_f64(c: f64, r: f64, prec: u32) -> Result<Ball, ArithError> {
        if !c.is_finite() || !r.is_finite() || r < 0.0 {
            return Err(ArithError::NonFinite);
        }
        Ok(Ball::new(Float::from_f64(c), Float::zero(), Mag::from_f64(r), prec))
    }

    pub fn from_complex64(z: Complex64, prec: u32) -> Result<Ball, ArithError> {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(ArithError::NonFinite);
        }
        Ok(Ball::point(Float::from_f64(z.re), Float::from_f64(z.im), prec))
    }

    pub fn re(&self) -> &Float {
        &self.re
    }

    pub fn im(&self) -> &Float {
        &self.im
    }

    pub fn rad(&self) -> Mag {
        self.rad
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Ball {
        Ball::new(self.re.clone(), self.im.clone(), self.rad, prec)
    }

    pub fn with_radius(&self, rad: Mag) -> Ball {
        Ball { rad, ..self.clone() }
    }

    /// Same ball with its radius enlarged by `extra`.
    pub fn inflate(&self, extra: Mag) -> Ball {
        Ball { rad: self.rad.add(&extra), ..self.clone() }
    }

    /// Drops the radius (used when iterating on approximations only).
    pub fn center(&self) -> Ball {
        Ball { rad: Mag::ZERO, ..self.clone() }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Replaces the center's imaginary part by zero, keeping the radius.
    /// Only sound when the enclosed value is known to be real.
    pub fn real_part_ball(&self) -> Ball {
        Ball { re: self.re.clone(), im: Float::zero(), rad: self.rad, prec: self.prec }
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    fn center_abs_upper(&self) -> Mag {
        self.re.abs_upper().hypot(&self.im.abs_upper())
    }

    fn center_abs_lower(&self) -> Mag {
        self.re.abs_lower().hypot_lower(&self.im.abs_lower())
    }

    /// Upper bound of `|z|` over the ball.
    pub fn abs_upper(&self) -> Mag {
        self.center_abs_upper().add(&self.rad)
    }

    /// Lower bound of `|z|` over the ball (zero if the ball touches 0).
    pub fn abs_lower(&self) -> Mag {
        self.center_abs_lower().sub_lower(&self.rad).unwrap_or(Mag::ZERO)
    }

    /// Certified: every point of the ball is nonzero.
    pub fn excludes_zero(&self) -> bool {
        self.center_abs_lower().sub_lower(&self.rad).is_some()
    }

    pub fn contains_zero(&self) -> bool {
        !self.excludes_zero()
    }

    /// Conservative superset test: `true` only if `other ⊆ self`.
    pub fn contains(&self, other: &Ball) -> bool {
        let dre = Float::sub_exact(&self.re, &other.re);
        let dim = Float::sub_exact(&self.im, &other.im);
        let d = dre.abs_upper().hypot(&dim.abs_upper()).add(&other.rad);
        d <= self.rad
    }

    /// Certified disjointness of two balls.
    pub fn disjoint(&self, other: &Ball) -> bool {
        let dre = Float::sub_exact(&self.re, &other.re);
        let dim = Float::sub_exact(&self.im, &other.im);
        let d = dre.abs_lower().hypot_lower(&dim.abs_lower());
        d.sub_lower(&self.rad.add(&other.rad)).is_some()
    }

    pub fn neg(&self) -> Ball {
        Ball { re: self.re.neg(), im: self.im.neg(), rad: self.rad, prec: self.prec }
    }

    pub fn conj(&self) -> Ball {
        Ball { im: self.im.neg(), ..self.clone() }
    }

    pub fn add(&self, other: &Ball) -> Ball {
        let prec = self.prec.max(other.prec);
        let (re, e1) = Float::add_round(&self.re, &other.re, prec);
        let (im, e2) = Float::add_round(&self.im, &other.im, prec);
        let rad = self.rad.add(&other.rad).add(&e1).add(&e2);
        Ball { re, im, rad, prec }
    }

    pub fn sub(&self, other: &Ball) -> Ball {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Ball) -> Ball {
        let prec = self.prec.max(other.prec);
        let (re, im, err) = if self.is_real() && other.is_real() {
            let (re, e) = Float::mul_round(&self.re, &other.re, prec);
            (re, Float::zero(), e)
        } else {
            let rr = Float::sub_exact(
                &Float::mul_exact(&self.re, &other.re),
                &Float::mul_exact(&self.im, &other.im),
            );
            let ii = Float::add_exact(
                &Float::mul_exact(&self.re, &other.im),
                &Float::mul_exact(&self.im, &other.re),
            );
            let (re, e1) = rr.round(prec);
            let (im, e2) = ii.round(prec);
            (re, im, e1.add(&e2))
        };
        let rad = if self.rad.is_zero() && other.rad.is_zero() {
            err
        } else {
            let a = self.center_abs_upper();
            let b = other.center_abs_upper();
            a.mul(&other.rad)
                .add(&b.mul(&self.rad))
                .add(&self.rad.mul(&other.rad))
                .add(&err)
        };
        Ball { re, im, rad, prec }
    }

    pub fn sqr(&self) -> Ball {
        self.mul(self)
    }

    pub fn mul_i64(&self, k: i64) -> Ball {
        self.mul(&Ball::from_i64(k, self.prec))
    }

    /// `1 / self`.
    pub fn inv(&self) -> Result<Ball, ArithError> {
        let lower = self.center_abs_lower();
        let gap = lower.sub_lower(&self.rad).ok_or(ArithError::DivisorContainsZero)?;
        let prec = self.prec;
        // 1/c = conj(c) / |c|^2, each part rounded.
        let norm = Float::add_exact(
            &Float::mul_exact(&self.re, &self.re),
            &Float::mul_exact(&self.im, &self.im),
        );
        let (re, e1) = Float::div_round(&self.re, &norm, prec);
        let (im, e2) = if self.im.is_zero() {
            (Float::zero(), Mag::ZERO)
        } else {
            let (q, e) = Float::div_round(&self.im, &norm, prec);
            (q.neg(), e)
        };
        // |1/z - 1/c| <= r / (|c| (|c| - r)) for |z - c| <= r.
        let spread = if self.rad.is_zero() {
            Mag::ZERO
        } else {
            self.rad.div(&lower.mul_lower(&gap))
        };
        Ok(Ball { re, im, rad: spread.add(&e1).add(&e2), prec })
    }

    pub fn div(&self, other: &Ball) -> Result<Ball, ArithError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: u32) -> Ball {
        let mut result = Ball::one(self.prec);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        result
    }

    /// Returns `k` iff the ball lies strictly inside the open disc of radius
    /// 1/2 around the rational integer `k`. When the enclosed value is known
    /// to be a rational integer, a `Some(k)` answer proves it equals `k`.
    pub fn recognize_integer(&self) -> Option<BigInt> {
        let half = Mag::pow2(-1);
        if self.rad >= half {
            return None;
        }
        let k = self.re.round_to_integer();
        let dre = Float::sub_exact(&self.re, &Float::from_bigint(&k)).abs_upper();
        let dist = dre.hypot(&self.im.abs_upper()).add(&self.rad);
        if dist < half {
            Some(k)
        } else {
            None
        }
    }

    /// Whether the (known rational integer) value is certified to be zero.
    pub fn is_certified_zero_integer(&self) -> bool {
        matches!(self.recognize_integer(), Some(k) if k.is_zero())
    }
}

impl fmt::Debug for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "[{} +/- {}]", self.re.to_decimal(12), self.rad)
        } else {
            write!(
                f,
                "[{} + {}i +/- {}]",
                self.re.to_decimal(12),
                self.im.to_decimal(12),
                self.rad
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 128;

    fn real(c: f64, r: f64) -> Ball {
        Ball::from_f64(c, r, P).unwrap()
    }

    fn encloses_interval(b: &Ball, lo: f64, hi: f64) -> bool {
        b.contains(&real((lo + hi) / 2.0, (hi - lo) / 2.0))
    }

    #[test]
    fn identity_product() {
        let one = real(1.0, 0.0);
        let p = one.mul(&one);
        assert_eq!(p.recognize_integer(), Some(BigInt::from(1)));
        assert!(p.rad().is_zero());
    }

    #[test]
    fn interval_addition() {
        let s = real(2.0, 0.1).add(&real(3.0, 0.1));
        assert!(encloses_interval(&s, 4.8, 5.2));
    }

    #[test]
    fn interval_product_endpoints() {
        // [0.5,1.5]^2 = [0.25, 2.25]
        let p = real(1.0, 0.5).mul(&real(1.0, 0.5));
        assert!(encloses_interval(&p, 0.25, 2.25));
    }

    #[test]
    fn division_requires_zero_free_divisor() {
        assert!(matches!(real(1.0, 0.0).div(&real(0.1, 0.2)), Err(ArithError::DivisorContainsZero)));
        let q = real(1.0, 0.0).div(&real(4.0, 1.0)).unwrap();
        assert!(encloses_interval(&q, 0.2, 1.0 / 3.0));
    }

    #[test]
    fn recognize_integer_cases() {
        assert_eq!(real(5.0001, 0.001).recognize_integer(), Some(BigInt::from(5)));
        assert_eq!(real(5.4, 0.2).recognize_integer(), None);
        assert_eq!(real(0.3, 0.4).recognize_integer(), None);
        assert_eq!(real(-3.0, 0.0).recognize_integer(), Some(BigInt::from(-3)));
    }

    #[test]
    fn complex_powers() {
        let i = Ball::point(Float::zero(), Float::from_i64(1), P);
        let m1 = i.pow(2);
        assert_eq!(m1.recognize_integer(), Some(BigInt::from(-1)));
        assert_eq!(i.pow(4).recognize_integer(), Some(BigInt::from(1)));
        assert!(i.inv().unwrap().add(&i).contains_zero());
    }

    #[test]
    fn rejects_non_finite() {
        assert!(Ball::from_f64(f64::NAN, 0.0, P).is_err());
        assert!(Ball::from_f64(1.0, f64::INFINITY, P).is_err());
    }
}
