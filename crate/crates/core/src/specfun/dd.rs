//! Minimal double-double arithmetic (~31 significant digits) for the Airy
//! power series, whose partial sums cancel down from O(1e7) to O(1e-1) near
//! the ends of the series region.

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    // Requires |a| >= |b|.
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

impl Dd {
    pub(crate) const fn new(hi: f64, lo: f64) -> Self {
        Self { hi, lo }
    }

    pub(crate) fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    pub(crate) fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub(crate) fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let e = e + self.lo + o.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    pub(crate) fn sub(self, o: Dd) -> Dd {
        self.add(Dd::new(-o.hi, -o.lo))
    }

    pub(crate) fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + self.hi * o.lo + self.lo * o.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub(crate) fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let e = e + self.lo * b;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub(crate) fn div_f64(self, b: f64) -> Dd {
        let q0 = self.hi / b;
        let (p, e) = two_prod(q0, b);
        let (s, e2) = two_sum(self.hi, -p);
        let r = s + (e2 + self.lo - e);
        let q1 = r / b;
        let (hi, lo) = quick_two_sum(q0, q1);
        Dd { hi, lo }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_keeps_extra_precision() {
        // (1 + 2^-30)^2 = 1 + 2^-29 + 2^-60; plain f64 drops the last term.
        let x = Dd::from_f64(1.0 + 2f64.powi(-30));
        let p = x.mul(x);
        let exact_lo = 2f64.powi(-60);
        assert_eq!(p.hi, 1.0 + 2f64.powi(-29));
        assert!((p.lo - exact_lo).abs() < 1e-25);
    }

    #[test]
    fn div_inverts_mul() {
        let x = Dd::new(3.141592653589793, 1.2246467991473532e-16);
        let y = x.mul_f64(7.0).div_f64(7.0);
        assert_eq!(y.hi, x.hi);
        assert!((y.lo - x.lo).abs() < 1e-30);
    }

    #[test]
    fn add_cancellation() {
        let big = Dd::from_f64(1e16);
        let s = big.add(Dd::from_f64(1.0)).sub(big);
        assert_eq!(s.to_f64(), 1.0);
    }
}
