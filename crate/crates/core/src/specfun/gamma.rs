use core::f64::consts::PI;
#[allow(unused_imports)] // unused when std is linked
use num_traits::Float;

use crate::error::{Error, Result};

// Rational Lanczos approximation, N = 13 (Boost's `lanczos13m53`).
const LANCZOS_G: f64 = 6.024_680_040_776_729_583_740_234_375;
const LANCZOS_NUM: [f64; 13] = [
    23_531_376_880.410_759_688_572_007_674_451_636_754_73,
    42_919_803_642.649_098_768_957_899_047_001_988_850_93,
    35_711_959_237.355_668_049_440_185_451_547_166_705_96,
    17_921_034_426.037_209_699_919_755_754_458_931_112_67,
    6_039_542_586.352_028_005_064_291_644_307_297_921_07,
    1_439_720_407.311_721_673_663_223_072_794_912_393_972,
    248_874_557.862_054_156_511_460_386_413_229_423_216_3,
    31_426_415.585_400_194_380_614_231_628_318_205_362_87,
    2_876_370.628_935_372_441_225_409_051_620_849_613_599,
    186_056.265_395_223_495_040_294_989_716_045_699_282_2,
    8_071.672_002_365_816_210_638_002_902_272_250_613_822,
    210.824_277_751_579_345_872_509_733_920_713_362_711_7,
    2.506_628_274_631_000_270_164_908_177_133_837_338_626,
];
const LANCZOS_DEN: [f64; 13] = [
    0.0,
    39_916_800.0,
    120_543_840.0,
    150_917_976.0,
    105_258_076.0,
    45_995_730.0,
    13_339_535.0,
    2_637_558.0,
    357_423.0,
    32_670.0,
    1_925.0,
    66.0,
    1.0,
];

/// Above this the direct product overflows and the log form is used.
const DIRECT_LIMIT: f64 = 171.0;

fn lanczos_sum(z: f64) -> f64 {
    if z <= 1.0 {
        let mut num = 0.0;
        let mut den = 0.0;
        for (n, d) in LANCZOS_NUM.iter().zip(LANCZOS_DEN.iter()).rev() {
            num = num * z + n;
            den = den * z + d;
        }
        num / den
    } else {
        // same ratio in powers of 1/z, safe for large z
        let w = 1.0 / z;
        let mut num = 0.0;
        let mut den = 0.0;
        for (n, d) in LANCZOS_NUM.iter().zip(LANCZOS_DEN.iter()) {
            num = num * w + n;
            den = den * w + d;
        }
        num / den
    }
}

/// `Γ(z)` for `0.5 ≤ z < DIRECT_LIMIT`.
fn lanczos_direct(z: f64) -> f64 {
    let t = z + LANCZOS_G - 0.5;
    // split the power so t^(z−½) never overflows on its own
    let half = t.powf(0.5 * (z - 0.5));
    lanczos_sum(z) * half * (-t).exp() * half
}

/// `ln Γ(z)` for `z ≥ 0.5`.
fn lanczos_ln(z: f64) -> f64 {
    if z < DIRECT_LIMIT {
        return lanczos_direct(z).ln();
    }
    let t = z + LANCZOS_G - 0.5;
    (z - 0.5) * t.ln() - t + lanczos_sum(z).ln()
}

/// `ln Γ(z)` for `z > 0`.
pub fn log_gamma(z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::Domain { what: "log_gamma", value: z });
    }
    if z < 0.5 {
        // reflection; sin(πz) > 0 on (0, ½)
        Ok((PI / sin_pi(z)).ln() - lanczos_ln(1.0 - z))
    } else {
        Ok(lanczos_ln(z))
    }
}

/// `sin(πx)` with exact reduction of the argument modulo 2.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let r = x % 2.0; // exact in floating point
    let r = if r > 1.0 {
        r - 2.0
    } else if r < -1.0 {
        r + 2.0
    } else {
        r
    };
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0;
    }
    if r.abs() == 0.5 {
        return r.signum();
    }
    (PI * r).sin()
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// `Γ(x)` on the whole real line except the poles.
pub(crate) fn gamma(x: f64) -> Result<f64> {
    if is_nonpositive_integer(x) {
        return Err(Error::Pole { what: "gamma", at: x });
    }
    if (0.5..DIRECT_LIMIT).contains(&x) {
        Ok(lanczos_direct(x))
    } else if x >= 0.5 {
        Ok(lanczos_ln(x).exp())
    } else {
        // Γ(x)Γ(1−x) = π / sin(πx)
        Ok(PI / (sin_pi(x) * lanczos_ln(1.0 - x).exp()))
    }
}

/// `1/Γ(x)`, zero at the poles of `Γ`.
pub(crate) fn recip_gamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if (0.5..DIRECT_LIMIT).contains(&x) {
        1.0 / lanczos_direct(x)
    } else if x >= 0.5 {
        (-lanczos_ln(x)).exp()
    } else {
        sin_pi(x) * lanczos_ln(1.0 - x).exp() / PI
    }
}
