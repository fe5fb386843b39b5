//! Low-precision nonnegative magnitudes with directed rounding.
//!
//! A [`Mag`] is `m · 2^e` with `m` an `f64` in `[0.5, 1)` (or exactly zero)
//! and an unbounded `i64` exponent, so radii never underflow even at
//! 16384-bit working precision. Every operation rounds *up* unless the
//! method name says otherwise.

use std::cmp::Ordering;
use std::fmt;

/// `1 + 2^-50`: one multiplication by this after a round-to-nearest f64 op
/// yields a guaranteed upper bound.
const UP: f64 = 1.0 + 1.0 / (1u64 << 50) as f64;
/// `1 - 2^-50`, the lower-bound counterpart of [`UP`].
const DOWN: f64 = 1.0 - 1.0 / (1u64 << 50) as f64;

#[derive(Clone, Copy, PartialEq)]
pub struct Mag {
    m: f64,
    e: i64,
}

/// Splits a finite positive f64 into `(mantissa in [0.5,1), exponent)`.
fn frexp(x: f64) -> (f64, i64) {
    debug_assert!(x.is_finite() && x > 0.0);
    let (x, bias) = if x < f64::MIN_POSITIVE {
        (x * 2f64.powi(64), -64)
    } else {
        (x, 0)
    };
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64 - 1022;
    let mant = f64::from_bits((bits & !(0x7ffu64 << 52)) | (1022u64 << 52));
    (mant, exp + bias)
}

impl Mag {
    pub const ZERO: Mag = Mag { m: 0.0, e: 0 };

    fn normalized(m: f64, e: i64) -> Mag {
        if m == 0.0 {
            return Mag::ZERO;
        }
        let (mm, de) = frexp(m);
        Mag { m: mm, e: e + de }
    }

    /// Upper bound of `|x|`.
    pub fn from_f64(x: f64) -> Mag {
        assert!(x.is_finite(), "magnitude from non-finite value");
        Mag::normalized(x.abs(), 0)
    }

    /// Exactly `2^e`.
    pub fn pow2(e: i64) -> Mag {
        Mag { m: 0.5, e: e + 1 }
    }

    /// Upper bound of `|mant| · 2^exp` for an integer mantissa given by its
    /// top 64 bits (`top`) and the number of discarded low bits.
    pub(crate) fn from_parts_up(top: u64, shift: i64, truncated: bool) -> Mag {
        if top == 0 && !truncated {
            return Mag::ZERO;
        }
        // u64 -> f64 rounds to nearest; push up by one ulp-ish and for truncation.
        let mut v = top as f64 * UP;
        if truncated {
            v = (v + 1.0) * UP;
        }
        Mag::normalized(v, shift)
    }

    /// Lower bound counterpart of [`Mag::from_parts_up`] (truncation ignored).
    pub(crate) fn from_parts_down(top: u64, shift: i64) -> Mag {
        if top == 0 {
            return Mag::ZERO;
        }
        Mag::normalized(top as f64 * DOWN, shift)
    }

    pub fn is_zero(&self) -> bool {
        self.m == 0.0
    }

    pub fn mantissa_exponent(&self) -> (f64, i64) {
        (self.m, self.e)
    }

    /// Upper bound of `self + other`.
    pub fn add(&self, other: &Mag) -> Mag {
        if self.is_zero() {
            return *other;
        }
        if other.is_zero() {
            return *self;
        }
        let (hi, lo) = if self.e >= other.e { (self, other) } else { (other, self) };
        let d = hi.e - lo.e;
        if d > 60 {
            // lo < 2^-60 * hi: absorb into one rounding step.
            return Mag::normalized(hi.m * (1.0 + 2f64.powi(-58)) * UP, hi.e);
        }
        let v = (hi.m + lo.m * 2f64.powi(-(d as i32))) * UP;
        Mag::normalized(v, hi.e)
    }

    /// Upper bound of `self * other`.
    pub fn mul(&self, other: &Mag) -> Mag {
        if self.is_zero() || other.is_zero() {
            return Mag::ZERO;
        }
        Mag::normalized(self.m * other.m * UP, self.e + other.e)
    }

    /// Lower bound of `self * other`.
    pub fn mul_lower(&self, other: &Mag) -> Mag {
        if self.is_zero() || other.is_zero() {
            return Mag::ZERO;
        }
        Mag::normalized(self.m * other.m * DOWN, self.e + other.e)
    }

    pub fn mul_u64(&self, k: u64) -> Mag {
        self.mul(&Mag::from_f64(k as f64))
    }

    /// Upper bound of `self / other`; `other` must be nonzero.
    pub fn div(&self, other: &Mag) -> Mag {
        assert!(!other.is_zero(), "Mag division by zero");
        if self.is_zero() {
            return Mag::ZERO;
        }
        Mag::normalized(self.m / other.m * UP, self.e - other.e)
    }

    /// Lower bound of `self / other`; `other` must be nonzero.
    pub fn div_lower(&self, other: &Mag) -> Mag {
        assert!(!other.is_zero(), "Mag division by zero");
        if self.is_zero() {
            return Mag::ZERO;
        }
        Mag::normalized(self.m / other.m * DOWN, self.e - other.e)
    }

    /// Lower bound of `self - other`, or `None` when it cannot be shown positive.
    pub fn sub_lower(&self, other: &Mag) -> Option<Mag> {
        if self.is_zero() {
            return None;
        }
        if other.is_zero() {
            return Some(*self);
        }
        if self.e < other.e {
            return None;
        }
        let d = self.e - other.e;
        if d > 60 {
            return Some(Mag::normalized(self.m * (1.0 - 2f64.powi(-58)) * DOWN, self.e));
        }
        let v = (self.m * DOWN - other.m * 2f64.powi(-(d as i32)) * UP) * DOWN;
        if v > 0.0 {
            Some(Mag::normalized(v, self.e))
        } else {
            None
        }
    }

    /// Upper bound of `sqrt(self^2 + other^2)`.
    pub fn hypot(&self, other: &Mag) -> Mag {
        if self.is_zero() {
            return *other;
        }
        if other.is_zero() {
            return *self;
        }
        let (hi, lo) = if self.e >= other.e { (self, other) } else { (other, self) };
        let d = hi.e - lo.e;
        if d > 60 {
            return Mag::normalized(hi.m * (1.0 + 2f64.powi(-58)) * UP, hi.e);
        }
        let l = lo.m * 2f64.powi(-(d as i32));
        let v = (hi.m * hi.m * UP + l * l * UP) * UP;
        Mag::normalized(v.sqrt() * UP, hi.e)
    }

    /// Lower bound of `sqrt(self^2 + other^2)`.
    pub fn hypot_lower(&self, other: &Mag) -> Mag {
        let (hi, lo) = if self.e >= other.e { (self, other) } else { (other, self) };
        if lo.is_zero() || hi.e - lo.e > 60 {
            return *hi;
        }
        let l = lo.m * 2f64.powi(-((hi.e - lo.e) as i32));
        let v = (hi.m * hi.m * DOWN + l * l * DOWN) * DOWN;
        Mag::normalized(v.sqrt() * DOWN, hi.e)
    }

    /// Upper bound of `self^k`.
    pub fn powi(&self, k: u32) -> Mag {
        let mut acc = Mag::from_f64(1.0);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Lossy conversion, saturating to `f64::MAX` / `0.0`.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        if self.e > 1023 {
            return f64::MAX;
        }
        if self.e < -1070 {
            return 0.0;
        }
        self.m * 2f64.powi(self.e as i32)
    }

    /// `floor(log2(self))`, or `None` for zero.
    pub fn log2_floor(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.e - 1)
        }
    }

    pub fn max(self, other: Mag) -> Mag {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl PartialOrd for Mag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(match (self.is_zero(), other.is_zero()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => self.e.cmp(&other.e).then(self.m.partial_cmp(&other.m).unwrap()),
        })
    }
}

impl fmt::Debug for Mag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "{}*2^{}", self.m, self.e)
        }
    }
}

impl fmt::Display for Mag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Decimal upper bound: m*2^e = 10^(e*log10(2)) * m.
        let l = (self.e as f64) * std::f64::consts::LOG10_2 + self.m.log10();
        let exp10 = l.floor();
        let mant = 10f64.powf(l - exp10) * (1.0 + 1e-12);
        write!(f, "{:.3}e{}", (mant * 1000.0).ceil() / 1000.0, exp10 as i64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_bounds_are_upper() {
        let a = Mag::from_f64(0.1);
        let b = Mag::from_f64(0.2);
        assert!(a.add(&b).to_f64() >= 0.30000000000000004);
        assert!(a.mul(&b).to_f64() >= 0.020000000000000004);
        let h = Mag::from_f64(3.0).hypot(&Mag::from_f64(4.0));
        assert!(h.to_f64() >= 5.0 && h.to_f64() < 5.0 + 1e-12);
        let hl = Mag::from_f64(3.0).hypot_lower(&Mag::from_f64(4.0));
        assert!(hl.to_f64() <= 5.0 && hl.to_f64() > 5.0 - 1e-12);
    }

    #[test]
    fn exponents_beyond_f64_range() {
        let tiny = Mag::pow2(-20000);
        let t2 = tiny.mul(&tiny);
        assert_eq!(t2.log2_floor(), Some(-40000));
        assert!(t2 < tiny);
        assert!(tiny.add(&Mag::pow2(0)) > Mag::pow2(0));
    }

    #[test]
    fn sub_lower_refuses_nonpositive() {
        assert!(Mag::from_f64(1.0).sub_lower(&Mag::from_f64(1.0)).is_none());
        let d = Mag::from_f64(1.0).sub_lower(&Mag::from_f64(0.25)).unwrap();
        assert!(d.to_f64() <= 0.75);
    }
}
