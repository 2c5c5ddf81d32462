//! Scaled floating-point representation `mantissa * 2^exponent`.
//!
//! The Gaussian weight inside the Hermite functions underflows f64 once
//! `y^2/2` exceeds about 708, while the functions themselves can still be
//! O(1) at high order. Carrying an explicit binary exponent absorbs that
//! dynamic range.

use crate::util::{frexp, ldexp};

/// A real number stored as `mantissa * 2^exponent`.
///
/// Normalized values keep `|mantissa|` in `[1/2, 1)` (zero is stored as
/// `(0, 0)`), so any value representable in f64 round-trips exactly through
/// [`ScaledValue::to_f64`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledValue {
    mantissa: f64,
    exponent: i64,
}

impl ScaledValue {
    /// Builds `mantissa * 2^exponent`, renormalizing the mantissa.
    pub fn new(mantissa: f64, exponent: i64) -> Self {
        debug_assert!(mantissa.is_finite());
        if mantissa == 0.0 {
            return Self {
                mantissa: 0.0,
                exponent: 0,
            };
        }
        let (m, e) = frexp(mantissa);
        Self {
            mantissa: m,
            exponent: e + exponent,
        }
    }

    pub fn zero() -> Self {
        Self {
            mantissa: 0.0,
            exponent: 0,
        }
    }

    pub fn from_f64(x: f64) -> Self {
        Self::new(x, 0)
    }

    pub fn mantissa(&self) -> f64 {
        self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == 0.0
    }

    /// Collapses to a plain f64; out-of-range exponents saturate to
    /// `0` or `±inf`.
    pub fn to_f64(&self) -> f64 {
        ldexp(self.mantissa, self.exponent)
    }

    /// `ln |value|`; `-inf` for zero. Usable far outside f64 range.
    pub fn ln_abs(&self) -> f64 {
        if self.mantissa == 0.0 {
            return f64::NEG_INFINITY;
        }
        self.mantissa.abs().ln() + self.exponent as f64 * std::f64::consts::LN_2
    }

    pub fn signum(&self) -> f64 {
        if self.mantissa == 0.0 {
            0.0
        } else {
            self.mantissa.signum()
        }
    }

    pub fn mul(&self, other: &ScaledValue) -> ScaledValue {
        ScaledValue::new(self.mantissa * other.mantissa, self.exponent + other.exponent)
    }

    pub fn square(&self) -> ScaledValue {
        self.mul(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalization_and_round_trip() {
        let v = ScaledValue::new(-48.0, 3);
        assert!((0.5..1.0).contains(&v.mantissa().abs()));
        assert_eq!(v.to_f64(), -384.0);
        assert_eq!(ScaledValue::zero().to_f64(), 0.0);
    }

    #[test]
    fn out_of_range_saturates() {
        let tiny = ScaledValue::new(1.0, -5000);
        assert_eq!(tiny.to_f64(), 0.0);
        let huge = ScaledValue::new(1.0, 5000);
        assert!(huge.to_f64().is_infinite());
        // ln_abs still meaningful out of range
        assert!((tiny.ln_abs() - (-5000.0 * std::f64::consts::LN_2)).abs() < 1e-6);
    }

    #[test]
    fn product_tracks_exponents() {
        let a = ScaledValue::new(0.75, 100);
        let b = ScaledValue::new(-0.5, -40);
        let p = a.mul(&b);
        assert!((p.to_f64() - a.to_f64() * b.to_f64()).abs() < 1e-10 * p.to_f64().abs());
        assert_eq!(p.signum(), -1.0);
    }

    proptest! {
        #[test]
        fn round_trips_any_normal_f64(x in prop::num::f64::NORMAL) {
            let v = ScaledValue::from_f64(x);
            prop_assert_eq!(v.to_f64(), x);
            prop_assert!((0.5..1.0).contains(&v.mantissa().abs()));
        }

        #[test]
        fn ln_abs_matches_direct(x in 1e-200f64..1e200) {
            let v = ScaledValue::from_f64(x);
            prop_assert!((v.ln_abs() - x.ln()).abs() < 1e-9);
        }
    }
}
