//! The Airy function `Ai` on the real line and its upper tail integral.
//!
//! Evaluation strategy: the Maclaurin series, accumulated in double-double
//! arithmetic to survive its cancellation, is exact but slow; it is sampled
//! once into piecewise Chebyshev tables on `[-10, 8]`. Outside that range the
//! usual asymptotic expansions take over. A plain asymptotic expansion cannot
//! reach 1e-12 absolute error until roughly `|x| > 7` (its optimally truncated
//! error is ~exp(-4|x|^{3/2}/3)), which fixes the switch points.

use std::f64::consts::PI;
use std::sync::OnceLock;

use super::dd::Dd;
use crate::quadrature;
use crate::{Error, Result};

/// `Ai(0) = 3^{-2/3}/Γ(2/3)` in double-double precision.
const AI_0: Dd = Dd::new(3.550_280_538_878_172_2e-1, 2.052_336_324_362_119_9e-17);
/// `-Ai'(0) = 3^{-1/3}/Γ(1/3)` in double-double precision.
const AI_D0_NEG: Dd = Dd::new(2.588_194_037_928_068_2e-1, -2.522_243_111_610_832_1e-17);

const SERIES_LO: f64 = -10.0;
const SERIES_HI: f64 = 8.0;
const SEGMENTS: usize = 18;
const CHEB_N: usize = 25;

/// Airy function of the first kind.
///
/// Absolute error below 1e-12 for `x` in `[-10, 40]`; beyond 40 the value
/// decays like `exp(-2x^{3/2}/3)` and may underflow to zero.
pub fn airy_ai(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("airy_ai: non-finite input {x}")));
    }
    Ok(ai(x))
}

/// Infallible evaluation path for internal integrands (input already finite).
pub(crate) fn ai(x: f64) -> f64 {
    if x > SERIES_HI {
        asymptotic_positive(x)
    } else if x < SERIES_LO {
        asymptotic_negative(x)
    } else {
        cheb_eval(x)
    }
}

/// Tail integral `∫_x^∞ Ai(z) dz`.
///
/// Anchored to the exact value 1/3 at x = 0: for finite windows the integral
/// is carried between 0 and `x` by adaptive quadrature, which avoids
/// truncating the semi-infinite range; for `x ≥ 8` the (tiny) tail is
/// integrated directly.
pub fn airy_tail(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("airy_tail: non-finite input {x}")));
    }
    const THIRD: f64 = 1.0 / 3.0;
    if x >= SERIES_HI {
        quadrature::integrate_semiinf(ai, x, 1e-13)
    } else if x >= 0.0 {
        Ok(THIRD - quadrature::integrate_finite(ai, 0.0, x, 5e-12)?)
    } else {
        Ok(THIRD + quadrature::integrate_finite(ai, x, 0.0, 5e-12)?)
    }
}

pub(crate) fn tail_unchecked(x: f64) -> f64 {
    airy_tail(x).expect("airy tail quadrature converges for finite input")
}

/// Maclaurin series in double-double arithmetic.
///
/// `Ai(x) = Ai(0) f(x) + Ai'(0) g(x)` with the standard pair of entire
/// series; partial sums reach ~6e7 at x = -10 while the value is O(0.05),
/// so f64 accumulation alone would lose the target digits.
fn maclaurin_dd(x: f64) -> Dd {
    let x_dd = Dd::from_f64(x);
    let x3 = x_dd.mul(x_dd).mul(x_dd);
    let mut term_f = Dd::from_f64(1.0);
    let mut term_g = x_dd;
    let mut sum_f = term_f;
    let mut sum_g = term_g;
    for k in 0..200 {
        let kf = k as f64;
        term_f = term_f.mul(x3).div_f64((3.0 * kf + 2.0) * (3.0 * kf + 3.0));
        term_g = term_g.mul(x3).div_f64((3.0 * kf + 3.0) * (3.0 * kf + 4.0));
        sum_f = sum_f.add(term_f);
        sum_g = sum_g.add(term_g);
        if term_f.hi.abs() < 1e-40 && term_g.hi.abs() < 1e-40 {
            break;
        }
    }
    AI_0.mul(sum_f).sub(AI_D0_NEG.mul(sum_g))
}

fn cheb_table() -> &'static Vec<[f64; CHEB_N]> {
    static TABLE: OnceLock<Vec<[f64; CHEB_N]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (0..SEGMENTS)
            .map(|s| {
                let a = SERIES_LO + s as f64;
                let mid = a + 0.5;
                let nodes: Vec<Dd> = (0..CHEB_N)
                    .map(|j| {
                        let theta = PI * (j as f64 + 0.5) / CHEB_N as f64;
                        maclaurin_dd(mid + 0.5 * theta.cos())
                    })
                    .collect();
                let mut coeffs = [0.0; CHEB_N];
                for (i, c) in coeffs.iter_mut().enumerate() {
                    let mut acc = Dd::from_f64(0.0);
                    for (j, f) in nodes.iter().enumerate() {
                        let theta = PI * i as f64 * (j as f64 + 0.5) / CHEB_N as f64;
                        acc = acc.add(f.mul_f64(theta.cos()));
                    }
                    *c = acc.mul_f64(2.0 / CHEB_N as f64).to_f64();
                }
                coeffs
            })
            .collect()
    })
}

fn cheb_eval(x: f64) -> f64 {
    let seg = ((x - SERIES_LO).floor() as usize).min(SEGMENTS - 1);
    let a = SERIES_LO + seg as f64;
    let u = 2.0 * (x - a) - 1.0;
    let c = &cheb_table()[seg];
    let u2 = 2.0 * u;
    let mut b1 = 0.0;
    let mut b2 = 0.0;
    for &ci in c[1..].iter().rev() {
        let b = u2 * b1 - b2 + ci;
        b2 = b1;
        b1 = b;
    }
    u * b1 - b2 + 0.5 * c[0]
}

/// Coefficient step of the Airy asymptotic series:
/// `u_0 = 1`, `u_{k+1} = u_k (6k+1)(6k+5) / (72 (k+1))`.
#[inline]
fn asy_ratio(k: usize) -> f64 {
    let kf = k as f64;
    (6.0 * kf + 1.0) * (6.0 * kf + 5.0) / (72.0 * (kf + 1.0))
}

fn asymptotic_positive(x: f64) -> f64 {
    let xi = 2.0 / 3.0 * x.powf(1.5);
    let mut sum = 1.0;
    let mut term = 1.0; // u_k ξ^{-k}
    let mut sign = 1.0;
    for k in 0..60 {
        let next = term * asy_ratio(k) / xi;
        if next >= term {
            break; // past optimal truncation
        }
        term = next;
        sign = -sign;
        sum += sign * term;
        if term < 1e-18 {
            break;
        }
    }
    (-xi).exp() / (2.0 * PI.sqrt() * x.powf(0.25)) * sum
}

fn asymptotic_negative(x: f64) -> f64 {
    let t = -x;
    let xi = 2.0 / 3.0 * t.powf(1.5);
    // Ai(-t) = [cos(ξ-π/4) Σ(-1)^k u_{2k} ξ^{-2k}
    //           + sin(ξ-π/4) Σ(-1)^k u_{2k+1} ξ^{-2k-1}] / (√π t^{1/4})
    let mut even = 1.0;
    let mut odd = 0.0;
    let mut term = 1.0; // u_j ξ^{-j}
    for j in 0..60 {
        let next = term * asy_ratio(j) / xi;
        if next >= term && j > 0 {
            break;
        }
        term = next;
        let j1 = j + 1; // index of the term just computed
        let sign = if (j1 / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if j1 % 2 == 0 {
            even += sign * term;
        } else {
            odd += sign * term;
        }
        if term < 1e-19 {
            break;
        }
    }
    let phase = xi - PI / 4.0;
    (phase.cos() * even + phase.sin() * odd) / (PI.sqrt() * t.powf(0.25))
}
