//! Gamma function on the positive half line via a 14-term Lanczos series
//! (g = 671/128), which carries ln Γ to near machine precision there.

use crate::{Error, Result};

const LANCZOS_G_PLUS_HALF: f64 = 5.242_187_5;
const SQRT_2PI: f64 = 2.506_628_274_631_000_5;
const LANCZOS_SER_0: f64 = 0.999_999_999_999_997_092;
const LANCZOS_COF: [f64; 14] = [
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_494e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];

pub(crate) fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let tmp = x + LANCZOS_G_PLUS_HALF;
    let tmp = (x + 0.5) * tmp.ln() - tmp;
    let mut y = x;
    let mut ser = LANCZOS_SER_0;
    for c in LANCZOS_COF {
        y += 1.0;
        ser += c / y;
    }
    tmp + (SQRT_2PI * ser / x).ln()
}

/// Γ(x) for x > 0, relative error below 1e-12 on (0, 50].
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!(
            "gamma_fn requires a positive finite argument, got {x}"
        )));
    }
    Ok(ln_gamma(x).exp())
}
