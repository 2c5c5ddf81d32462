//! Small numeric helpers shared across modules.

/// Decompose a finite nonzero `x` as `m * 2^e` with `|m| in [1/2, 1)`.
/// Returns `(x, 0)` for zero.
pub(crate) fn frexp(x: f64) -> (f64, i64) {
    if x == 0.0 {
        return (x, 0);
    }
    debug_assert!(x.is_finite());
    let bits = x.to_bits();
    let exp_field = ((bits >> 52) & 0x7ff) as i64;
    if exp_field == 0 {
        // Subnormal: scale into the normal range first.
        let (m, e) = frexp(x * 2f64.powi(64));
        return (m, e - 64);
    }
    let e = exp_field - 1022;
    let m = f64::from_bits((bits & !(0x7ffu64 << 52)) | (1022u64 << 52));
    (m, e)
}

/// `m * 2^e` with graceful overflow to infinity and underflow to zero.
pub(crate) fn ldexp(m: f64, e: i64) -> f64 {
    if m == 0.0 {
        return m;
    }
    if e > 2100 {
        return f64::INFINITY.copysign(m);
    }
    if e < -2200 {
        return 0.0f64.copysign(m);
    }
    // Split so each factor stays representable.
    let e1 = (e / 2) as i32;
    let e2 = (e - i64::from(e1)) as i32;
    m * 2f64.powi(e1) * 2f64.powi(e2)
}

/// Neumaier-compensated accumulator. Summation order still matters for
/// bit-reproducibility, so callers feed it in a fixed order.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frexp_ldexp_round_trip() {
        for &x in &[1.0, -3.5, 1e-300, 7.25e123, -2.2250738585072014e-308, 0.5] {
            let (m, e) = frexp(x);
            assert!(m == 0.0 || (0.5..1.0).contains(&m.abs()), "m = {m}");
            assert_eq!(ldexp(m, e), x);
        }
        assert_eq!(frexp(0.0), (0.0, 0));
    }

    #[test]
    fn frexp_subnormal() {
        let x = 4.9e-324; // smallest positive subnormal
        let (m, e) = frexp(x);
        assert!((0.5..1.0).contains(&m));
        assert_eq!(ldexp(m, e), x);
    }

    #[test]
    fn kahan_recovers_cancellation() {
        let mut s = KahanSum::new();
        s.add(1e16);
        for _ in 0..10 {
            s.add(0.1);
        }
        s.add(-1e16);
        assert!((s.value() - 1.0).abs() < 1e-12);
    }
}
