//! Binary floating-point numbers with arbitrary-precision mantissas.
//!
//! `Float` arithmetic here is *exact* unless a method takes a precision, in
//! which case it returns the rounded value together with an upper bound on
//! the rounding error. Error tracking is left to the caller ([`super::Ball`]).

use super::Mag;
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

/// `mant · 2^exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Float {
    mant: BigInt,
    exp: i64,
}

impl Float {
    pub fn zero() -> Float {
        Float { mant: BigInt::zero(), exp: 0 }
    }

    pub fn from_parts(mant: BigInt, exp: i64) -> Float {
        if mant.is_zero() {
            Float::zero()
        } else {
            Float { mant, exp }
        }
    }

    pub fn from_bigint(n: &BigInt) -> Float {
        Float::from_parts(n.clone(), 0)
    }

    pub fn from_i64(n: i64) -> Float {
        Float::from_parts(BigInt::from(n), 0)
    }

    /// Exact conversion of a finite f64.
    pub fn from_f64(x: f64) -> Float {
        assert!(x.is_finite(), "non-finite value cannot seed a Float");
        if x == 0.0 {
            return Float::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Float::from_parts(BigInt::from(m) * sign, e)
    }

    /// Rounds a rational to `prec` bits; returns the value and an error bound.
    pub fn from_rational(q: &BigRational, prec: u32) -> (Float, Mag) {
        let num = Float::from_bigint(q.numer());
        let den = Float::from_bigint(q.denom());
        Float::div_round(&num, &den, prec)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Smallest `t` with `|self| < 2^t` (meaningless for zero).
    pub fn top_exp(&self) -> i64 {
        self.exp + self.mant.bits() as i64
    }

    pub fn neg(&self) -> Float {
        Float { mant: -&self.mant, exp: self.exp }
    }

    pub fn abs(&self) -> Float {
        Float { mant: self.mant.abs(), exp: self.exp }
    }

    pub fn mul_pow2(&self, k: i64) -> Float {
        Float::from_parts(self.mant.clone(), self.exp + k)
    }

    pub fn add_exact(a: &Float, b: &Float) -> Float {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        let e = a.exp.min(b.exp);
        let ma = &a.mant << ((a.exp - e) as usize);
        let mb = &b.mant << ((b.exp - e) as usize);
        Float::from_parts(ma + mb, e)
    }

    pub fn sub_exact(a: &Float, b: &Float) -> Float {
        Float::add_exact(a, &b.neg())
    }

    pub fn mul_exact(a: &Float, b: &Float) -> Float {
        Float::from_parts(&a.mant * &b.mant, a.exp + b.exp)
    }

    /// Truncates to at most `prec` significant bits.
    pub fn round(&self, prec: u32) -> (Float, Mag) {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return (self.clone(), Mag::ZERO);
        }
        let k = bits - prec as u64;
        let m = &self.mant >> (k as usize);
        let e = self.exp + k as i64;
        (Float::from_parts(m, e), Mag::pow2(e))
    }

    /// `a + b` rounded to `prec` bits. Operands far below the other's last
    /// bit are absorbed into the error term without materialising the sum.
    pub fn add_round(a: &Float, b: &Float, prec: u32) -> (Float, Mag) {
        if a.is_zero() {
            return b.round(prec);
        }
        if b.is_zero() {
            return a.round(prec);
        }
        let (ta, tb) = (a.top_exp(), b.top_exp());
        let gap = prec as i64 + 4;
        if tb < ta - gap {
            let (r, err) = a.round(prec);
            return (r, err.add(&b.abs_upper()));
        }
        if ta < tb - gap {
            let (r, err) = b.round(prec);
            return (r, err.add(&a.abs_upper()));
        }
        Float::add_exact(a, b).round(prec)
    }

    pub fn sub_round(a: &Float, b: &Float, prec: u32) -> (Float, Mag) {
        Float::add_round(a, &b.neg(), prec)
    }

    pub fn mul_round(a: &Float, b: &Float, prec: u32) -> (Float, Mag) {
        Float::mul_exact(a, b).round(prec)
    }

    /// `a / b` to `prec` bits; `b` must be nonzero.
    pub fn div_round(a: &Float, b: &Float, prec: u32) -> (Float, Mag) {
        assert!(!b.is_zero(), "Float division by zero");
        if a.is_zero() {
            return (Float::zero(), Mag::ZERO);
        }
        let shift = (prec as i64 + 2 + b.mant.bits() as i64 - a.mant.bits() as i64).max(0);
        let num = &a.mant << (shift as usize);
        let q = &num / &b.mant; // truncates toward zero
        let e = a.exp - shift - b.exp;
        let (r, err) = Float::from_parts(q, e).round(prec);
        (r, err.add(&Mag::pow2(e)))
    }

    /// Upper bound of `|self|`.
    pub fn abs_upper(&self) -> Mag {
        let bits = self.mant.bits();
        if bits == 0 {
            return Mag::ZERO;
        }
        let mag = self.mant.magnitude();
        if bits <= 64 {
            Mag::from_parts_up(mag.to_u64().unwrap(), self.exp, false)
        } else {
            let k = bits - 64;
            let top = (mag >> (k as usize)).to_u64().unwrap();
            Mag::from_parts_up(top, self.exp + k as i64, true)
        }
    }

    /// Lower bound of `|self|`.
    pub fn abs_lower(&self) -> Mag {
        let bits = self.mant.bits();
        if bits == 0 {
            return Mag::ZERO;
        }
        let mag = self.mant.magnitude();
        if bits <= 64 {
            Mag::from_parts_down(mag.to_u64().unwrap(), self.exp)
        } else {
            let k = bits - 64;
            let top = (mag >> (k as usize)).to_u64().unwrap();
            Mag::from_parts_down(top, self.exp + k as i64)
        }
    }

    /// Exact value of a magnitude.
    pub fn from_mag(m: &Mag) -> Float {
        if m.is_zero() {
            return Float::zero();
        }
        let (f, e) = m.mantissa_exponent();
        let scaled = (f * (1u64 << 53) as f64) as u64; // exact: f has 53 bits
        Float::from_parts(BigInt::from(scaled), e - 53)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let (m, e) = if bits > 60 {
            let k = bits - 60;
            ((&self.mant >> (k as usize)).to_f64().unwrap(), self.exp + k)
        } else {
            (self.mant.to_f64().unwrap(), self.exp)
        };
        if e > 2000 {
            return m.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0;
        }
        // Split the scaling to stay within powi range without overflow.
        let half = e / 2;
        m * 2f64.powi(half as i32) * 2f64.powi((e - half) as i32)
    }

    /// Nearest integer (ties away from zero is not guaranteed; ties go up).
    pub fn round_to_integer(&self) -> BigInt {
        if self.exp >= 0 {
            return &self.mant << (self.exp as usize);
        }
        let k = (-self.exp) as usize;
        let half = BigInt::one() << (k - 1);
        (&self.mant + half) >> k
    }

    /// Floor of `self`.
    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << (self.exp as usize)
        } else {
            self.mant.div_floor(&(BigInt::one() << ((-self.exp) as usize)))
        }
    }

    /// Exact rational value.
    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << (self.exp as usize))
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << ((-self.exp) as usize))
        }
    }

    /// Scientific decimal rendering with `digits` significant digits
    /// (truncated, so not an enclosure by itself).
    pub fn to_decimal(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let neg = self.signum() < 0;
        let a = self.abs().to_rational();
        // Find d with 10^d <= a < 10^(d+1).
        let approx = self.top_exp() as f64 * std::f64::consts::LOG10_2;
        let mut d = approx.floor() as i64;
        let ten = BigRational::from_integer(BigInt::from(10));
        let pow = |k: i64| -> BigRational {
            if k >= 0 {
                num_traits::pow(ten.clone(), k as usize)
            } else {
                num_traits::pow(ten.clone(), (-k) as usize).recip()
            }
        };
        while pow(d) > a {
            d -= 1;
        }
        while pow(d + 1) <= a {
            d += 1;
        }
        let scaled = (a / pow(d - digits as i64 + 1)).floor().to_integer();
        let s = scaled.to_string();
        let (head, tail) = s.split_at(1);
        let tail = tail.trim_end_matches('0');
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push_str(head);
        if !tail.is_empty() {
            out.push('.');
            out.push_str(tail);
        }
        if d != 0 {
            out.push_str(&format!("e{d}"));
        }
        out
    }
}

impl PartialOrd for Float {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Float {
    fn cmp(&self, other: &Self) -> Ordering {
        Float::sub_exact(self, other).signum().cmp(&0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_roundtrip_is_exact() {
        for x in [1.0, -0.1, 3.5e-300, 1e300, 5e-324, 123456.789] {
            assert_eq!(Float::from_f64(x).to_f64(), x);
        }
    }

    #[test]
    fn rounding_error_is_bounded() {
        let third = Float::from_rational(&BigRational::new(1.into(), 3.into()), 64);
        let back = Float::mul_exact(&third.0, &Float::from_i64(3));
        let diff = Float::sub_exact(&back, &Float::from_i64(1)).abs_upper();
        assert!(diff <= third.1.mul(&Mag::from_f64(3.0)));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(Float::from_f64(1.5).to_decimal(10), "1.5");
        assert_eq!(Float::from_i64(-1234).to_decimal(3), "-1.23e3");
        assert_eq!(Float::from_f64(0.125).to_decimal(5), "1.25e-1");
    }

    #[test]
    fn integer_rounding() {
        assert_eq!(Float::from_f64(2.49).round_to_integer(), BigInt::from(2));
        assert_eq!(Float::from_f64(-2.6).round_to_integer(), BigInt::from(-3));
        assert_eq!(Float::from_f64(-2.6).floor(), BigInt::from(-3));
        assert_eq!(Float::from_i64(7).round_to_integer(), BigInt::from(7));
    }

    #[test]
    fn absorbed_addend_goes_to_error() {
        let big = Float::from_i64(1);
        let tiny = Float::from_parts(BigInt::from(3), -500);
        let (r, err) = Float::add_round(&big, &tiny, 64);
        assert_eq!(r, big);
        assert!(err >= tiny.abs_upper());
    }
}
