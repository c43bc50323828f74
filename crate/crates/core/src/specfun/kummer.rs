//! Confluent hypergeometric functions and the Whittaker functions built on
//! them.

use super::gamma::{gamma, log_gamma, recip_gamma};
use super::{SeriesControl, SeriesResult, CONFLUENT_WINDOW};
use crate::error::{Error, Result};
#[allow(unused_imports)] // unused when std is linked
use num_traits::Float;

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// Kummer's `M(a, b, z) = Σ (a)_n/(b)_n zⁿ/n!` with the default control.
pub fn kummer_m(a: f64, b: f64, z: f64) -> Result<SeriesResult> {
    kummer_m_with(a, b, z, &SeriesControl::default())
}

pub fn kummer_m_with(a: f64, b: f64, z: f64, ctl: &SeriesControl) -> Result<SeriesResult> {
    m_tracked(a, b, z, ctl).map(|(m, _)| m)
}

/// `M` together with `Σ|term|` on the same scale, to measure cancellation.
fn m_tracked(a: f64, b: f64, z: f64, ctl: &SeriesControl) -> Result<(SeriesResult, f64)> {
    if is_nonpositive_integer(b) {
        return Err(Error::Domain { what: "kummer_m: b", value: b });
    }
    if !(z.abs() <= CONFLUENT_WINDOW) {
        return Err(Error::OutOfWindow { what: "kummer_m", value: z });
    }
    if z < 0.0 {
        // Kummer transformation keeps the series free of alternation in z
        let (inner, mag) = m_series(b - a, b, -z, ctl)?;
        let ez = z.exp();
        return Ok((SeriesResult { value: ez * inner.value, ..inner }, ez * mag));
    }
    m_series(a, b, z, ctl)
}

fn m_series(a: f64, b: f64, z: f64, ctl: &SeriesControl) -> Result<(SeriesResult, f64)> {
    let mut sum = 1.0;
    let mut term = 1.0;
    let mut mag = 1.0;
    if z == 0.0 {
        return Ok((SeriesResult { value: 1.0, terms_used: 1, converged: true }, 1.0));
    }
    for n in 0..ctl.max_terms {
        let nf = n as f64;
        term *= (a + nf) / (b + nf) * z / (nf + 1.0);
        sum += term;
        mag += term.abs();
        if term == 0.0 {
            return Ok((SeriesResult { value: sum, terms_used: n + 2, converged: true }, mag));
        }
        // only stop once the terms are past their maximum
        let next_ratio = ((a + nf + 1.0) / (b + nf + 1.0)).abs() * z / (nf + 2.0);
        if term.abs() <= ctl.tol_rel * sum.abs() + ctl.tol_abs && next_ratio < 1.0 {
            return Ok((SeriesResult { value: sum, terms_used: n + 2, converged: true }, mag));
        }
    }
    Err(Error::NotConverged { what: "kummer_m", iterations: ctl.max_terms })
}

/// Half-width of the band around an integer `b` where the connection
/// formula is replaced by the average of `b ± PERTURB`.
const PERTURB: f64 = 1e-6;
/// Largest tolerated ratio `(|t₁|+|t₂|)/|t₁+t₂|` in the connection formula.
const MAX_CANCELLATION: f64 = 1e4;

/// Tricomi's `U(a, b, z)` for `0 < z ≤ 50`.
///
/// The two-term connection formula through [`kummer_m`] is used whenever its
/// cancellation is mild. Otherwise `U` is taken from its integral
/// representation (trapezoidal rule after `t = eˣ`, exponentially accurate
/// for this analytic integrand), shifted into `a ∈ [1, 2)` and carried back
/// by the three-term recurrence in `a`, which is stable downwards because
/// `U` is its minimal solution.
pub fn kummer_u(a: f64, b: f64, z: f64) -> Result<SeriesResult> {
    kummer_u_with(a, b, z, &SeriesControl::default())
}

pub fn kummer_u_with(a: f64, b: f64, z: f64, ctl: &SeriesControl) -> Result<SeriesResult> {
    if !(z > 0.0) || z > CONFLUENT_WINDOW {
        return Err(Error::OutOfWindow { what: "kummer_u", value: z });
    }
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain { what: "kummer_u", value: if a.is_finite() { b } else { a } });
    }
    if a == 0.0 {
        return Ok(SeriesResult { value: 1.0, terms_used: 1, converged: true });
    }
    if let Some(r) = u_connection(a, b, z, ctl)? {
        return Ok(r);
    }
    u_integral(a, b, z)
}

/// Connection formula; `None` when cancellation would eat the accuracy.
fn u_connection(a: f64, b: f64, z: f64, ctl: &SeriesControl) -> Result<Option<SeriesResult>> {
    let nearest = b.round();
    if (b - nearest).abs() < PERTURB {
        let lo = u_connection_raw(a, b - PERTURB, z, ctl)?;
        let hi = u_connection_raw(a, b + PERTURB, z, ctl)?;
        return Ok(match (lo, hi) {
            (Some(l), Some(h)) => Some(SeriesResult {
                value: 0.5 * (l.value + h.value),
                terms_used: l.terms_used.max(h.terms_used),
                converged: l.converged && h.converged,
            }),
            _ => None,
        });
    }
    u_connection_raw(a, b, z, ctl)
}

fn u_connection_raw(a: f64, b: f64, z: f64, ctl: &SeriesControl) -> Result<Option<SeriesResult>> {
    let g1 = match gamma(1.0 - b) {
        Ok(g) => g,
        Err(_) => return Err(Error::Pole { what: "kummer_u: Γ(1−b)", at: 1.0 - b }),
    };
    let g2 = match gamma(b - 1.0) {
        Ok(g) => g,
        Err(_) => return Err(Error::Pole { what: "kummer_u: Γ(b−1)", at: b - 1.0 }),
    };
    let c1 = g1 * recip_gamma(a - b + 1.0);
    let c2 = g2 * recip_gamma(a);
    let mut terms = 0;
    let mut mag = 0.0;
    let t1 = if c1 != 0.0 {
        let Some((m1, mag1)) = m_or_none(a, b, z, ctl)? else { return Ok(None) };
        terms += m1.terms_used;
        mag += c1.abs() * mag1;
        c1 * m1.value
    } else {
        0.0
    };
    let t2 = if c2 != 0.0 {
        let Some((m2, mag2)) = m_or_none(a - b + 1.0, 2.0 - b, z, ctl)? else { return Ok(None) };
        terms += m2.terms_used;
        let c = c2 * z.powf(1.0 - b);
        mag += c.abs() * mag2;
        c * m2.value
    } else {
        0.0
    };
    let value = t1 + t2;
    if !value.is_finite() || value == 0.0 {
        return Ok(None);
    }
    // covers cancellation between the two terms and inside each series
    let cancellation = mag / value.abs();
    if cancellation > MAX_CANCELLATION {
        return Ok(None);
    }
    Ok(Some(SeriesResult { value, terms_used: terms, converged: true }))
}

fn m_or_none(a: f64, b: f64, z: f64, ctl: &SeriesControl) -> Result<Option<(SeriesResult, f64)>> {
    match m_tracked(a, b, z, ctl) {
        Ok(m) => Ok(Some(m)),
        Err(Error::NotConverged { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// `U` through the integral route plus downward recurrence in `a`.
fn u_integral(a: f64, b: f64, z: f64) -> Result<SeriesResult> {
    if a >= 1.0 {
        let (v, n) = u_quadrature(a, b, z)?;
        return Ok(SeriesResult { value: v, terms_used: n, converged: true });
    }
    let shift = (1.0 - a).ceil();
    let a_top = a + shift;
    let (mut u_hi, n1) = u_quadrature(a_top + 1.0, b, z)?;
    let (mut u_cur, n2) = u_quadrature(a_top, b, z)?;
    let mut ac = a_top;
    let steps = shift as usize;
    for _ in 0..steps {
        // U(a−1) = −(b − 2a − z) U(a) − a(a − b + 1) U(a+1)
        let u_lo = -(b - 2.0 * ac - z) * u_cur - ac * (ac - b + 1.0) * u_hi;
        u_hi = u_cur;
        u_cur = u_lo;
        ac -= 1.0;
    }
    Ok(SeriesResult { value: u_cur, terms_used: n1 + n2 + steps, converged: true })
}

fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// `U(a,b,z) = Γ(a)⁻¹ ∫ exp(a x − z eˣ + (b−a−1) ln(1+eˣ)) dx` over ℝ, `a ≥ 1`.
fn u_quadrature(a: f64, b: f64, z: f64) -> Result<(f64, usize)> {
    let c = b - a - 1.0;
    let phi = |x: f64| a * x - z * x.exp() + c * softplus(x);
    let dphi = |x: f64| {
        let ex = x.exp();
        a - z * ex + c * ex / (1.0 + ex)
    };
    // the peak: φ' is strictly decreasing at large x, bisect on its sign
    let (mut lo, mut hi) = (-60.0, 10.0);
    while dphi(lo) <= 0.0 && lo > -1e4 {
        lo *= 2.0;
    }
    while dphi(hi) >= 0.0 && hi < 1e3 {
        hi += 10.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if dphi(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let peak = 0.5 * (lo + hi);
    let phi_max = phi(peak);
    let ex = peak.exp();
    let curvature = (z * ex - c * ex / ((1.0 + ex) * (1.0 + ex))).abs().max(1e-12);
    let h = (0.25 / curvature.sqrt()).min(0.05);
    const DROP: f64 = 42.0;
    const MAX_STEPS: usize = 2_000_000;
    let mut sum = 1.0;
    let mut steps = 1;
    for dir in [1.0, -1.0] {
        let mut k = 1usize;
        loop {
            let x = peak + dir * (k as f64) * h;
            let v = phi(x) - phi_max;
            sum += v.exp();
            steps += 1;
            if v < -DROP || k > MAX_STEPS {
                break;
            }
            k += 1;
        }
    }
    if steps > MAX_STEPS {
        return Err(Error::NotConverged { what: "kummer_u quadrature", iterations: steps });
    }
    let log_u = phi_max + (h * sum).ln() - log_gamma(a)?;
    Ok((log_u.exp(), steps))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Whittaker {
    M,
    W,
}

/// Whittaker functions `M_{κ,μ}(z) = e^{−z/2} z^{μ+½} M(μ−κ+½, 1+2μ, z)` and
/// `W_{κ,μ}(z) = e^{−z/2} z^{μ+½} U(μ−κ+½, 1+2μ, z)` for `0 < z ≤ 50`.
pub fn whittaker(kind: Whittaker, kappa: f64, mu: f64, z: f64) -> Result<f64> {
    whittaker_with(kind, kappa, mu, z, &SeriesControl::default())
}

pub fn whittaker_with(kind: Whittaker, kappa: f64, mu: f64, z: f64, ctl: &SeriesControl) -> Result<f64> {
    if !(z > 0.0) || z > CONFLUENT_WINDOW {
        return Err(Error::OutOfWindow { what: "whittaker", value: z });
    }
    // grouped so that κ = μ+½ gives a = 0 exactly
    let a = (mu + 0.5) - kappa;
    let b = 1.0 + 2.0 * mu;
    let series = match kind {
        Whittaker::M => kummer_m_with(a, b, z, ctl)?,
        Whittaker::W => kummer_u_with(a, b, z, ctl)?,
    };
    Ok((-0.5 * z + (mu + 0.5) * z.ln()).exp() * series.value)
}
