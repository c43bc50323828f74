use super::gamma::log_gamma;
use super::{SeriesControl, BESSEL_MAX_ORDER, BESSEL_WINDOW};
use crate::error::{Error, Result};
#[allow(unused_imports)] // unused when std is linked
use num_traits::Float;

/// Modified Bessel function `I_ν(z)` from its ascending series,
/// `0 ≤ ν ≤ 100`, `0 ≤ z ≤ 60`.
pub fn bessel_i(nu: f64, z: f64) -> Result<f64> {
    if !(0.0..=BESSEL_MAX_ORDER).contains(&nu) {
        return Err(Error::OutOfWindow { what: "bessel_i order", value: nu });
    }
    if !(0.0..=BESSEL_WINDOW).contains(&z) {
        return Err(Error::OutOfWindow { what: "bessel_i", value: z });
    }
    if z == 0.0 {
        return Ok(if nu == 0.0 { 1.0 } else { 0.0 });
    }
    let ctl = SeriesControl::default();
    let q = 0.25 * z * z;
    let mut sum = 1.0;
    let mut term = 1.0;
    let mut converged = false;
    for k in 0..ctl.max_terms {
        let kf = k as f64;
        term *= q / ((kf + 1.0) * (nu + kf + 1.0));
        sum += term;
        let next_ratio = q / ((kf + 2.0) * (nu + kf + 2.0));
        if term <= ctl.tol_rel * sum && next_ratio < 1.0 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NotConverged { what: "bessel_i", iterations: ctl.max_terms });
    }
    let log_prefactor = nu * (0.5 * z).ln() - log_gamma(nu + 1.0)?;
    Ok((log_prefactor + sum.ln()).exp())
}
