//! Orthonormal Hermite functions `φ_k(y)` (the L²(ℝ) orthonormalization of
//! `y^k e^{-y²/2}`), evaluated by the scaled forward recurrence
//! `φ_{k+1}(y) = y √(2/(k+1)) φ_k(y) − √(k/(k+1)) φ_{k−1}(y)`.
//!
//! The live pair of the recurrence shares one binary exponent and is pulled
//! back into `[2^-512, 2^512]` whenever it drifts out, so the Gaussian start
//! value can sit far below the f64 range without poisoning later orders.

use super::scaled::ScaledValue;
use crate::util::KahanSum;
use crate::{Error, Result};

/// π^{-1/4}, the L² normalization of φ_0.
const PI_POW_NEG_QUARTER: f64 = 7.51125544464942507e-1;

/// Cody–Waite split of ln 2 so that `t - e·ln2` keeps full precision for
/// exponents up to ~2^32.
const LN2_HI: f64 = 6.931_471_803_691_238_164_90e-1;
const LN2_LO: f64 = 1.908_214_929_270_587_700_02e-10;

const RESCALE_UP: f64 = 1.340_780_792_994_259_7e154; // 2^512
const RESCALE_DOWN: f64 = 7.458_340_731_200_207e-155; // 2^-512

/// φ_0(y) = π^{-1/4} e^{-y²/2} in scaled form.
fn phi0(y: f64) -> ScaledValue {
    let t = 0.5 * y * y;
    let e2 = (t / std::f64::consts::LN_2).floor();
    let r = (t - e2 * LN2_HI) - e2 * LN2_LO;
    ScaledValue::new(PI_POW_NEG_QUARTER * (-r).exp(), -(e2 as i64))
}

/// All Hermite functions `φ_0(y) .. φ_n(y)`.
pub fn hermite_phi_all(y: f64, n: usize) -> Result<Vec<ScaledValue>> {
    if !y.is_finite() {
        return Err(Error::Domain(format!(
            "hermite_phi_all: non-finite input {y}"
        )));
    }
    if n > 10_000 {
        return Err(Error::InvalidArgument(format!(
            "hermite_phi_all: order {n} exceeds the supported 10^4"
        )));
    }
    let mut out = Vec::with_capacity(n + 1);
    let mut state = RecurrenceState::start(y);
    out.push(state.current());
    for _ in 0..n {
        state.advance();
        out.push(state.current());
    }
    Ok(out)
}

/// Last two functions `(φ_{n-1}, φ_n)` without materializing the sequence.
pub(crate) fn hermite_phi_pair(y: f64, n: usize) -> (ScaledValue, ScaledValue) {
    debug_assert!(n >= 1);
    let mut state = RecurrenceState::start(y);
    for _ in 0..n {
        state.advance();
    }
    (state.previous(), state.current())
}

/// `Σ_{k<n} φ_k(y)²`, accumulated in f64 (the squares are representable
/// whenever they matter).
pub(crate) fn hermite_sq_sum(y: f64, n: usize) -> f64 {
    let mut state = RecurrenceState::start(y);
    let mut acc = KahanSum::new();
    acc.add(state.current().square().to_f64());
    for _ in 1..n {
        state.advance();
        acc.add(state.current().square().to_f64());
    }
    acc.value()
}

/// `Σ_{k<n} φ_k(x) φ_k(y)` from two simultaneous recurrences.
pub(crate) fn hermite_cross_sum(x: f64, y: f64, n: usize) -> f64 {
    let mut sx = RecurrenceState::start(x);
    let mut sy = RecurrenceState::start(y);
    let mut acc = KahanSum::new();
    acc.add(sx.current().mul(&sy.current()).to_f64());
    for _ in 1..n {
        sx.advance();
        sy.advance();
        acc.add(sx.current().mul(&sy.current()).to_f64());
    }
    acc.value()
}

struct RecurrenceState {
    y: f64,
    k: usize,
    prev: f64, // mantissa of φ_{k-1}
    cur: f64,  // mantissa of φ_k
    exp2: i64, // shared binary exponent
}

impl RecurrenceState {
    fn start(y: f64) -> Self {
        let p0 = phi0(y);
        Self {
            y,
            k: 0,
            prev: 0.0,
            cur: p0.mantissa(),
            exp2: p0.exponent(),
        }
    }

    fn current(&self) -> ScaledValue {
        ScaledValue::new(self.cur, self.exp2)
    }

    fn previous(&self) -> ScaledValue {
        ScaledValue::new(self.prev, self.exp2)
    }

    fn advance(&mut self) {
        let kf = self.k as f64;
        let a = self.y * (2.0 / (kf + 1.0)).sqrt();
        let b = (kf / (kf + 1.0)).sqrt();
        // Pre-scale so a*cur cannot overflow even for extreme y.
        let amax = a.abs() + 1.0;
        while self.cur.abs().max(self.prev.abs()) * amax > 8.9e300 {
            self.cur *= RESCALE_DOWN;
            self.prev *= RESCALE_DOWN;
            self.exp2 += 512;
        }
        let next = a * self.cur - b * self.prev;
        self.prev = self.cur;
        self.cur = next;
        self.k += 1;
        let mag = self.cur.abs().max(self.prev.abs());
        if mag > RESCALE_UP {
            self.cur *= RESCALE_DOWN;
            self.prev *= RESCALE_DOWN;
            self.exp2 += 512;
        } else if mag > 0.0 && mag < RESCALE_DOWN {
            self.cur *= RESCALE_UP;
            self.prev *= RESCALE_UP;
            self.exp2 -= 512;
        }
    }
}
