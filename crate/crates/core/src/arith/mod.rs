//! Exact and certified arithmetic: re-exported big integers/rationals,
//! binary floats, outward-rounded magnitudes and complex disc balls.

mod ball;
mod float;
mod mag;

pub use ball::Ball;
pub use float::Float;
pub use mag::Mag;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("divisor ball contains zero")]
    DivisorContainsZero,
    #[error("non-finite value cannot be enclosed")]
    NonFinite,
}

/// Working-precision ladder for certified computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precision {
    pub bits: u32,
    pub factor: u32,
    pub max_bits: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Precision { bits: 128, factor: 2, max_bits: 16384 }
    }
}

impl Precision {
    pub fn new(bits: u32, factor: u32, max_bits: u32) -> Precision {
        assert!(bits > 0 && factor >= 2 && bits <= max_bits, "invalid precision ladder");
        Precision { bits, factor, max_bits }
    }

    /// Default ladder with a different cap.
    pub fn with_max_bits(max_bits: u32) -> Precision {
        let d = Precision::default();
        Precision { bits: d.bits.min(max_bits), max_bits, ..d }
    }

    /// Reads `SPECTRAL_CERTIFY_MAX_BITS` to override the cap.
    pub fn from_env() -> Precision {
        std::env::var("SPECTRAL_CERTIFY_MAX_BITS")
            .ok()
            .and_then(|s| s.trim().parse::<u32>().ok())
            .filter(|&b| b >= 64)
            .map(Precision::with_max_bits)
            .unwrap_or_default()
    }

    /// Next rung of the ladder, or `None` at the cap.
    pub fn escalate(&self) -> Option<Precision> {
        if self.bits >= self.max_bits {
            return None;
        }
        let next = (self.bits.saturating_mul(self.factor)).min(self.max_bits);
        Some(Precision { bits: next, ..*self })
    }

    pub fn at_least(&self, bits: u32) -> Precision {
        Precision { bits: self.bits.max(bits).min(self.max_bits), ..*self }
    }
}

pub fn recognize_integer(b: &Ball) -> Option<BigInt> {
    b.recognize_integer()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ladder_escalates_to_cap() {
        let mut p = Precision::default();
        let mut rungs = vec![p.bits];
        while let Some(n) = p.escalate() {
            p = n;
            rungs.push(p.bits);
        }
        assert_eq!(rungs, vec![128, 256, 512, 1024, 2048, 4096, 8192, 16384]);
    }

    fn arb_ball() -> impl Strategy<Value = (f64, f64, f64, f64)> {
        (-100.0..100.0f64, -100.0..100.0f64, 0.0..5.0f64, 0.0..1.0f64)
    }

    fn nested(c_re: f64, c_im: f64, r: f64, shrink: f64) -> (Ball, Ball) {
        let outer = Ball::new(Float::from_f64(c_re), Float::from_f64(c_im), Mag::from_f64(r), 96);
        // Inner ball: shifted center and smaller radius, still inside.
        let inner_r = r * shrink * 0.5;
        let shift = r * 0.25 * shrink;
        let inner = Ball::new(
            Float::from_f64(c_re + shift),
            Float::from_f64(c_im),
            Mag::from_f64(inner_r),
            96,
        );
        (outer, inner)
    }

    proptest! {
        #[test]
        fn inclusion_monotone((a_re, a_im, ar, s1) in arb_ball(), (b_re, b_im, br, s2) in arb_ball()) {
            let (a, a_in) = nested(a_re, a_im, ar, s1);
            let (b, b_in) = nested(b_re, b_im, br, s2);
            prop_assume!(a.contains(&a_in) && b.contains(&b_in));
            prop_assert!(a.add(&b).contains(&a_in.add(&b_in)));
            prop_assert!(a.sub(&b).contains(&a_in.sub(&b_in)));
            prop_assert!(a.mul(&b).contains(&a_in.mul(&b_in)));
            if b.excludes_zero() {
                prop_assert!(a.div(&b).unwrap().contains(&a_in.div(&b_in).unwrap()));
            }
            prop_assert!(a.pow(3).contains(&a_in.pow(3)));
        }

        #[test]
        fn rational_arithmetic_is_exact(p in -1000i64..1000, q in 1i64..1000, r in -1000i64..1000, s in 1i64..1000) {
            let a = BigRational::new(p.into(), q.into());
            let b = BigRational::new(r.into(), s.into());
            prop_assert_eq!(&(&a + &b) - &b, a);
        }

        #[test]
        fn recognition_never_lies(k in -10_000i64..10_000, off in -0.49f64..0.49, r in 0.0f64..0.6) {
            // The true value is k; a ball around k+off of radius r encloses k
            // only when |off| <= r, and then recognition may only say k.
            let b = Ball::from_f64(k as f64 + off, r, 64).unwrap();
            if off.abs() <= r {
                if let Some(found) = b.recognize_integer() {
                    prop_assert_eq!(found, BigInt::from(k));
                }
            }
        }
    }
}
