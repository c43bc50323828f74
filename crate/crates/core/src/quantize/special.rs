//! Closed-form special cases, the Coulomb asymptote and the printed
//! variants of some formulas that are kept for comparison only.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
#[allow(unused_imports)] // unused when std is linked
use num_traits::Float;

use super::{condition_value, EnergyLevel, Method};
use crate::error::{Error, Result};
use crate::model::{Constants, QuantumNumbers, Space, SpaceSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum SpecialCase {
    /// K_I with `α = β = γ = 0`.
    FlatKI,
    /// K_II with `α = β = γ = 0`.
    FlatKII,
    /// K_III with `α₁ = β = γ = 0`.
    HydrogenlikeKIII,
    /// K_III with `k₁ = k₂ = 0`: a quadratic in `s = √(−E)`.
    QuadKIIIk0,
    /// K_III with `k₁ = k₂ = ½`, `α₂ = 0`, `β = γ`.
    ZeropotKIII,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ClosedForm {
    pub levels: Vec<EnergyLevel>,
    pub warnings: Vec<String>,
}

fn level(spec: &SpaceSpec, qn: &QuantumNumbers, energy: f64) -> EnergyLevel {
    let residual = condition_value(spec, qn, energy).map(f64::abs).unwrap_or(f64::NAN);
    EnergyLevel { energy, qn: *qn, residual, bracket: (energy, energy), method: Method::ClosedForm }
}

/// Positive roots of `a s² + b s + c = 0`, ascending.
fn positive_quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    let mut out = Vec::new();
    if a == 0.0 {
        if b != 0.0 && -c / b > 0.0 {
            out.push(-c / b);
        }
        return out;
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return out;
    }
    // cancellation-free pair
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let mut roots = if q != 0.0 { [q / a, c / q] } else { [0.0, 0.0] };
    roots.sort_by(f64::total_cmp);
    for r in roots {
        if r > 0.0 && !out.contains(&r) {
            out.push(r);
        }
    }
    out
}

pub fn closed_form_special(spec: &SpaceSpec, qn: &QuantumNumbers, case: SpecialCase) -> Result<ClosedForm> {
    if qn.kind() != spec.kind() {
        return Err(Error::PatternMismatch("quantum numbers belong to another space"));
    }
    let Constants { m, hbar } = spec.constants;
    let n = qn.principal();
    let mut out = ClosedForm::default();
    match (case, spec.space) {
        (SpecialCase::FlatKI, Space::KI { alpha, beta, gamma, delta, omega, kx, ky }) => {
            if alpha != 0.0 || beta != 0.0 || gamma != 0.0 {
                return Err(Error::PatternMismatch("flat K_I needs alpha = beta = gamma = 0"));
            }
            let e = hbar * omega * (2.0 * n + kx + ky) / delta;
            let prose = hbar * omega * (n + kx + ky) / delta;
            out.levels.push(level(spec, qn, e));
            out.warnings.push(format!(
                "flat K_I: the prose variant ħω(N+k_x+k_y)/δ gives {prose} instead of {e}; \
                 read as a relabeling of N and not used"
            ));
        }
        (SpecialCase::FlatKII, Space::KII { alpha, beta, gamma, delta, omega, kx, ky_lin }) => {
            if alpha != 0.0 || beta != 0.0 || gamma != 0.0 {
                return Err(Error::PatternMismatch("flat K_II needs alpha = beta = gamma = 0"));
            }
            if omega == 0.0 {
                return Err(Error::Degenerate("flat K_II needs omega > 0"));
            }
            let e = hbar * omega * (n + kx) / delta + ky_lin * ky_lin / (8.0 * m * delta * omega * omega);
            out.levels.push(level(spec, qn, e));
        }
        (SpecialCase::HydrogenlikeKIII, Space::KIII { alpha1, beta, gamma, delta, alpha2, k1, k2 }) => {
            if alpha1 != 0.0 || beta != 0.0 || gamma != 0.0 {
                return Err(Error::PatternMismatch("hydrogen-like K_III needs alpha1 = beta = gamma = 0"));
            }
            // κ = N + (k₁+k₂)/2 > 0 needs α₂ > 0
            if alpha2 > 0.0 {
                let nn = n + 0.5 * (k1 + k2);
                let e = -m * alpha2 * alpha2 / (2.0 * delta * hbar * hbar * nn * nn);
                out.levels.push(level(spec, qn, e));
            }
        }
        (SpecialCase::QuadKIIIk0, Space::KIII { alpha1, beta, gamma, delta, alpha2, k1, k2 }) => {
            if k1 != 0.0 || k2 != 0.0 {
                return Err(Error::PatternMismatch("quadratic K_III case needs k1 = k2 = 0"));
            }
            if !(delta > 0.0) || beta < 0.0 || gamma < 0.0 {
                return Err(Error::PatternMismatch("quadratic K_III case needs delta > 0 and beta, gamma >= 0"));
            }
            let c = (m / (2.0 * delta)).sqrt();
            let a = alpha1 * c - 0.5 * ((2.0 * m * beta).sqrt() + (2.0 * m * gamma).sqrt());
            for s in positive_quadratic_roots(a, -n * hbar, alpha2 * c) {
                out.levels.push(level(spec, qn, -s * s));
            }
            let printed = printed_quadratic_kiii(spec, n)?;
            out.warnings.push(format!(
                "quadratic K_III case: printed coefficients (reading a1 = alpha1) A = {}, B = {}, C = {} \
                 give roots {:?}; they contain an unexplained symbol and are not used",
                printed.a, printed.b, printed.c, printed.roots
            ));
        }
        (SpecialCase::ZeropotKIII, Space::KIII { alpha1, beta, gamma, delta, alpha2, k1, k2 }) => {
            if k1 != 0.5 || k2 != 0.5 || alpha2 != 0.0 || beta != gamma {
                return Err(Error::PatternMismatch(
                    "zero-potential K_III needs k1 = k2 = 1/2, alpha2 = 0, beta = gamma",
                ));
            }
            if !(delta > 0.0) {
                return Err(Error::PatternMismatch("zero-potential K_III needs delta > 0"));
            }
            // a s − N = √(¼ + b s²) with s = √(−E)
            let a = alpha1 * (m / (2.0 * delta)).sqrt() / hbar;
            let b = 2.0 * m * beta / (hbar * hbar);
            for s in positive_quadratic_roots(a * a - b, -2.0 * a * n, n * n - 0.25) {
                if a * s - n >= 0.0 && 0.25 + b * s * s >= 0.0 {
                    out.levels.push(level(spec, qn, -s * s));
                }
            }
            let printed = printed_zeropot_kiii(spec, n)?;
            out.warnings.push(format!(
                "zero-potential K_III: printed coefficients A = {}, B = {}, C = {} give roots {:?}; not used",
                printed.a, printed.b, printed.c, printed.roots
            ));
        }
        _ => return Err(Error::PatternMismatch("special case does not belong to this space")),
    }
    out.levels.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    Ok(out)
}

/// `−mα₂²/(2δħ²N²)`; `None` for spaces other than K_III.
pub fn coulomb_asymptote(spec: &SpaceSpec, n: u32) -> Option<f64> {
    let Space::KIII { delta, alpha2, .. } = spec.space else { return None };
    let Constants { m, hbar } = spec.constants;
    let nf = f64::from(n);
    Some(-m * alpha2 * alpha2 / (2.0 * delta * hbar * hbar * nf * nf))
}

/// A printed quadratic `A E² + B E + C = 0` and its real roots.
#[derive(Debug, Clone, PartialEq)]
pub struct PrintedQuadratic {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub roots: Vec<f64>,
}

fn quadratic_all_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    if a == 0.0 {
        return if b != 0.0 { alloc::vec![-c / b] } else { Vec::new() };
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Vec::new();
    }
    let mut r = alloc::vec![(-b - disc.sqrt()) / (2.0 * a), (-b + disc.sqrt()) / (2.0 * a)];
    r.sort_by(f64::total_cmp);
    r
}

/// The printed coefficients of the `k₁ = k₂ = 0` quadratic in `E`. They
/// carry a symbol `a₁` that is defined nowhere; it is read as `α₁` here.
pub fn printed_quadratic_kiii(spec: &SpaceSpec, n: f64) -> Result<PrintedQuadratic> {
    let Space::KIII { alpha1, beta, gamma, delta, alpha2, .. } = spec.space else {
        return Err(Error::PatternMismatch("printed quadratic belongs to K_III"));
    };
    let Constants { m, hbar } = spec.constants;
    let a1 = alpha1;
    let a = m * alpha1 * (a1 - 2.0) + 2.0 * m * delta * (beta.sqrt() + gamma.sqrt()).powi(2);
    let b = 2.0 * delta * hbar * hbar * n * n + 2.0 * alpha2 * (m - alpha1);
    let c = m * alpha2 * alpha2;
    Ok(PrintedQuadratic { a, b, c, roots: quadratic_all_roots(a, b, c) })
}

/// The printed coefficients of the zero-potential quadratic in `E`.
pub fn printed_zeropot_kiii(spec: &SpaceSpec, n: f64) -> Result<PrintedQuadratic> {
    let Space::KIII { alpha1, beta, delta, .. } = spec.space else {
        return Err(Error::PatternMismatch("printed quadratic belongs to K_III"));
    };
    let Constants { m, hbar } = spec.constants;
    let h2 = hbar * hbar;
    let inner = alpha1 * alpha1 / (2.0 * delta) - 4.0 * beta * n;
    let a = (m * m / (h2 * h2)) * inner * inner;
    let c = (n * n + n).powi(2) - 4.0 * n * n;
    let b = (2.0 * m / h2) * ((n * n + n) * inner + 8.0 * beta);
    Ok(PrintedQuadratic { a, b, c, roots: quadratic_all_roots(a, b, c) })
}

/// The printed K_II condition `8mδE ω̃² − (k_y−γE)² = ħ ω̃³ (2N + k̃_x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrintedEnergyKii {
    pub lhs: f64,
    pub rhs: f64,
    /// Its own flat-space root, when the spec is flat.
    pub printed_flat_root: Option<f64>,
    /// The stated flat-space spectrum `ħω(N+k_x)/δ + k_y²/(8mδω²)`.
    pub stated_flat_root: Option<f64>,
}

impl PrintedEnergyKii {
    /// `(lhs − rhs)/max(|lhs|, |rhs|)`.
    pub fn relative_mismatch(&self) -> f64 {
        let s = self.lhs.abs().max(self.rhs.abs());
        if s == 0.0 {
            0.0
        } else {
            (self.lhs - self.rhs) / s
        }
    }
}

pub fn printed_energy_kii(spec: &SpaceSpec, qn: &QuantumNumbers, energy: f64) -> Result<PrintedEnergyKii> {
    let Space::KII { alpha, beta, gamma, delta, omega, kx, ky_lin } = spec.space else {
        return Err(Error::PatternMismatch("printed K_II condition belongs to K_II"));
    };
    let Constants { m, hbar } = spec.constants;
    let n = qn.principal();
    let w2 = omega * omega - 2.0 * alpha * energy / m;
    let x2 = kx * kx - 2.0 * m * beta * energy / (hbar * hbar);
    if w2 < 0.0 || x2 < 0.0 {
        return Err(Error::Domain { what: "printed K_II condition", value: energy });
    }
    let c = ky_lin - gamma * energy;
    let lhs = 8.0 * m * delta * energy * w2 - c * c;
    let rhs = hbar * w2.powf(1.5) * (2.0 * n + x2.sqrt());
    let flat = alpha == 0.0 && beta == 0.0 && gamma == 0.0 && omega > 0.0;
    let w = omega;
    let printed_flat_root =
        flat.then(|| (hbar * w * w * w * (2.0 * n + kx) + ky_lin * ky_lin) / (8.0 * m * delta * w * w));
    let stated_flat_root = flat.then(|| hbar * w * (n + kx) / delta + ky_lin * ky_lin / (8.0 * m * delta * w * w));
    Ok(PrintedEnergyKii { lhs, rhs, printed_flat_root, stated_flat_root })
}
