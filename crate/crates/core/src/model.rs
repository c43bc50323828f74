//! Domain types for the three Koenigs spaces: metric functions,
//! energy-dependent effective parameters, physical energy domains and the
//! Darboux-space classification.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
#[allow(unused_imports)] // unused when std is linked
use num_traits::Float;

use crate::error::{Error, Result};

/// Mass and reduced Planck constant.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Constants {
    pub m: f64,
    pub hbar: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Constants { m: 1.0, hbar: 1.0 }
    }
}

/// Metric and potential constants of one Koenigs space.
///
/// `K_I`:   `f = α(x²+y²) + β/x² + γ/y² + δ` with the singular isotropic oscillator.
/// `K_II`:  `f = α(x²+4y²) + β/x² + γy + δ` with the Holt potential.
/// `K_III`: `f = −α₁/r + (β/cos²(φ/2) + γ/sin²(φ/2))/(4r²) + δ` with the Coulomb potential.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Space {
    KI { alpha: f64, beta: f64, gamma: f64, delta: f64, omega: f64, kx: f64, ky: f64 },
    KII { alpha: f64, beta: f64, gamma: f64, delta: f64, omega: f64, kx: f64, ky_lin: f64 },
    KIII { alpha1: f64, beta: f64, gamma: f64, delta: f64, alpha2: f64, k1: f64, k2: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum SpaceKind {
    KI,
    KII,
    KIII,
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpaceKind::KI => "K_I",
            SpaceKind::KII => "K_II",
            SpaceKind::KIII => "K_III",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpaceSpec {
    pub constants: Constants,
    pub space: Space,
}

impl SpaceSpec {
    /// Spec with `m = ħ = 1`.
    pub fn new(space: Space) -> Self {
        SpaceSpec { constants: Constants::default(), space }
    }

    pub fn with_constants(mut self, constants: Constants) -> Self {
        self.constants = constants;
        self
    }

    pub fn kind(&self) -> SpaceKind {
        match self.space {
            Space::KI { .. } => SpaceKind::KI,
            Space::KII { .. } => SpaceKind::KII,
            Space::KIII { .. } => SpaceKind::KIII,
        }
    }

    pub fn delta(&self) -> f64 {
        match self.space {
            Space::KI { delta, .. } | Space::KII { delta, .. } | Space::KIII { delta, .. } => delta,
        }
    }

    /// The three metric constants besides `δ`: `(α, β, γ)` or `(α₁, β, γ)`.
    pub fn metric_constants(&self) -> (f64, f64, f64) {
        match self.space {
            Space::KI { alpha, beta, gamma, .. } | Space::KII { alpha, beta, gamma, .. } => (alpha, beta, gamma),
            Space::KIII { alpha1, beta, gamma, .. } => (alpha1, beta, gamma),
        }
    }
}

/// Quantum numbers labelling one bound state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum QuantumNumbers {
    KI { n_r: u32, n_phi: u32 },
    KII { n_x: u32, n_y: u32 },
    KIII { n_r: u32, n_phi: u32 },
}

impl QuantumNumbers {
    /// Builds the variant matching `kind` from the two constituent integers
    /// `(n_r, n_φ)` or `(n_x, n_y)`.
    pub fn for_kind(kind: SpaceKind, n1: u32, n2: u32) -> Self {
        match kind {
            SpaceKind::KI => QuantumNumbers::KI { n_r: n1, n_phi: n2 },
            SpaceKind::KII => QuantumNumbers::KII { n_x: n1, n_y: n2 },
            SpaceKind::KIII => QuantumNumbers::KIII { n_r: n1, n_phi: n2 },
        }
    }

    pub fn kind(&self) -> SpaceKind {
        match self {
            QuantumNumbers::KI { .. } => SpaceKind::KI,
            QuantumNumbers::KII { .. } => SpaceKind::KII,
            QuantumNumbers::KIII { .. } => SpaceKind::KIII,
        }
    }

    /// Constituent integers in CSV order: `(n_r, n_φ)` or `(n_x, n_y)`.
    pub fn pair(&self) -> (u32, u32) {
        match *self {
            QuantumNumbers::KI { n_r, n_phi } | QuantumNumbers::KIII { n_r, n_phi } => (n_r, n_phi),
            QuantumNumbers::KII { n_x, n_y } => (n_x, n_y),
        }
    }

    /// Principal label `N`: `n_r+n_φ+1` (K_I, K_III) or `n_x+2n_y+3/2` (K_II).
    pub fn principal(&self) -> f64 {
        match *self {
            QuantumNumbers::KI { n_r, n_phi } | QuantumNumbers::KIII { n_r, n_phi } => {
                f64::from(n_r) + f64::from(n_phi) + 1.0
            }
            QuantumNumbers::KII { n_x, n_y } => f64::from(n_x) + 2.0 * f64::from(n_y) + 1.5,
        }
    }
}

/// Solver knobs shared by the spectrum, quadrature and series code.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct SolverSettings {
    pub scan_points: usize,
    pub tol_abs: f64,
    pub tol_rel: f64,
    pub max_iter: usize,
    pub quad_points: usize,
    pub series_terms_max: usize,
}

impl Default for SolverSettings {
    fn default() -> Self {
        SolverSettings {
            scan_points: 2000,
            tol_abs: 1e-12,
            tol_rel: 1e-12,
            max_iter: 200,
            quad_points: 256,
            series_terms_max: 500,
        }
    }
}

impl SolverSettings {
    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.scan_points < 100 {
            out.push(format!("scan_points must be at least 100, got {}", self.scan_points));
        }
        if !(self.tol_abs > 0.0) {
            out.push(format!("tol_abs must be positive, got {}", self.tol_abs));
        }
        if !(self.tol_rel > 0.0) {
            out.push(format!("tol_rel must be positive, got {}", self.tol_rel));
        }
        if self.max_iter == 0 {
            out.push("max_iter must be positive".into());
        }
        if self.quad_points == 0 {
            out.push("quad_points must be positive".into());
        }
        if self.series_terms_max == 0 {
            out.push("series_terms_max must be positive".into());
        }
        out
    }
}

/// Axis-aligned coordinate rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Window {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Window {
    pub fn square(lo: f64, hi: f64) -> Self {
        Window { x_min: lo, x_max: hi, y_min: lo, y_max: hi }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the parameter assumptions and samples metric positivity on a
/// 32×32 grid spanning `window` (endpoints included). Singular points are
/// skipped.
pub fn validate_spec(spec: &SpaceSpec, window: &Window) -> ValidationReport {
    let mut violations = Vec::new();
    let Constants { m, hbar } = spec.constants;
    if !(m > 0.0) {
        violations.push(format!("mass m must be positive, got {m}"));
    }
    if !(hbar > 0.0) {
        violations.push(format!("hbar must be positive, got {hbar}"));
    }
    if spec.delta() == 0.0 {
        violations.push("delta must be nonzero".into());
    }
    let nonneg: &[(&str, f64)] = match spec.space {
        Space::KI { omega, kx, ky, .. } => &[("omega", omega), ("kx", kx), ("ky", ky)],
        Space::KII { omega, kx, .. } => &[("omega", omega), ("kx", kx)],
        Space::KIII { k1, k2, .. } => &[("k1", k1), ("k2", k2)],
    };
    for &(name, v) in nonneg {
        if !(v >= 0.0) {
            violations.push(format!("{name} must be nonnegative, got {v}"));
        }
    }
    let all = all_parameters(spec);
    if all.iter().any(|v| !v.is_finite()) {
        violations.push("parameters must be finite".into());
    }
    if !(window.x_max > window.x_min && window.y_max > window.y_min) {
        violations.push("window must have x_max > x_min and y_max > y_min".into());
        return ValidationReport { violations };
    }

    const SAMPLES: usize = 32;
    let mut negative = 0usize;
    let mut worst = (f64::INFINITY, 0.0, 0.0);
    for i in 0..SAMPLES {
        let x = lerp(window.x_min, window.x_max, i, SAMPLES);
        for j in 0..SAMPLES {
            let y = lerp(window.y_min, window.y_max, j, SAMPLES);
            match metric_value(spec, x, y) {
                Ok(f) => {
                    if !(f > 0.0) {
                        negative += 1;
                        if f < worst.0 {
                            worst = (f, x, y);
                        }
                    }
                }
                Err(_) => continue,
            }
        }
    }
    if negative > 0 {
        violations.push(format!(
            "metric f not positive at {negative} of {} samples (f = {} at ({}, {}))",
            SAMPLES * SAMPLES,
            worst.0,
            worst.1,
            worst.2
        ));
    }
    ValidationReport { violations }
}

fn lerp(lo: f64, hi: f64, i: usize, n: usize) -> f64 {
    lo + (hi - lo) * (i as f64) / ((n - 1) as f64)
}

fn all_parameters(spec: &SpaceSpec) -> [f64; 9] {
    let c = spec.constants;
    match spec.space {
        Space::KI { alpha, beta, gamma, delta, omega, kx, ky } => {
            [c.m, c.hbar, alpha, beta, gamma, delta, omega, kx, ky]
        }
        Space::KII { alpha, beta, gamma, delta, omega, kx, ky_lin } => {
            [c.m, c.hbar, alpha, beta, gamma, delta, omega, kx, ky_lin]
        }
        Space::KIII { alpha1, beta, gamma, delta, alpha2, k1, k2 } => {
            [c.m, c.hbar, alpha1, beta, gamma, delta, alpha2, k1, k2]
        }
    }
}

/// Conformal factor `f(x, y)` of the metric.
///
/// For `K_III` the half-angle terms are evaluated through
/// `cos²(φ/2) = (r+x)/2r`, `sin²(φ/2) = (r−x)/2r`, which keeps the walls at
/// `y = 0` exact.
pub fn metric_value(spec: &SpaceSpec, x: f64, y: f64) -> Result<f64> {
    let singular = Error::SingularCoordinate { x, y };
    match spec.space {
        Space::KI { alpha, beta, gamma, delta, .. } => {
            if (beta != 0.0 && x == 0.0) || (gamma != 0.0 && y == 0.0) {
                return Err(singular);
            }
            let bx = if beta != 0.0 { beta / (x * x) } else { 0.0 };
            let gy = if gamma != 0.0 { gamma / (y * y) } else { 0.0 };
            // grouped so that β = γ gives f(x, y) = f(y, x) bit for bit
            Ok(alpha * (x * x + y * y) + (bx + gy) + delta)
        }
        Space::KII { alpha, beta, gamma, delta, .. } => {
            if beta != 0.0 && x == 0.0 {
                return Err(singular);
            }
            let mut f = alpha * (x * x + 4.0 * y * y) + gamma * y + delta;
            if beta != 0.0 {
                f += beta / (x * x);
            }
            Ok(f)
        }
        Space::KIII { alpha1, beta, gamma, delta, .. } => {
            let r = x.hypot(y);
            if r == 0.0 {
                if alpha1 != 0.0 || beta != 0.0 || gamma != 0.0 {
                    return Err(singular);
                }
                return Ok(delta);
            }
            // r + x and r − x without cancellation
            let (r_plus_x, r_minus_x) = if x >= 0.0 { (r + x, y * y / (r + x)) } else { (y * y / (r - x), r - x) };
            if (beta != 0.0 && r_plus_x == 0.0) || (gamma != 0.0 && r_minus_x == 0.0) {
                return Err(singular);
            }
            let mut f = delta;
            if alpha1 != 0.0 {
                f -= alpha1 / r;
            }
            let mut angular = 0.0;
            if beta != 0.0 {
                angular += beta / r_plus_x;
            }
            if gamma != 0.0 {
                angular += gamma / r_minus_x;
            }
            Ok(f + angular / (2.0 * r))
        }
    }
}

/// Energy-dependent parameters of the time-transformed problem.
///
/// The `kx_*` slots hold `k̃_x` (K_I, K_II) or `k̃₁` (K_III); the `ky_*`
/// slots hold `k̃_y` (K_I) or `k̃₂` (K_III). A field is `None` when its
/// defining radicand is negative or the quantity does not exist for the
/// variant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveParams {
    pub energy: f64,
    pub omega_tilde_sq: Option<f64>,
    pub omega_tilde: Option<f64>,
    pub kx_tilde_sq: f64,
    pub kx_tilde: Option<f64>,
    pub ky_tilde_sq: Option<f64>,
    pub ky_tilde: Option<f64>,
    /// `α̃ = α₂ − α₁E` (K_III).
    pub alpha_tilde: Option<f64>,
    pub lambda: Option<f64>,
    pub kappa: Option<f64>,
    /// Oscillator shift `y_E = (k_y − γE)/(4mω̃²)` (K_II).
    pub y_shift: Option<f64>,
}

fn real_sqrt(v: f64) -> Option<f64> {
    if v >= 0.0 {
        Some(v.sqrt())
    } else {
        None
    }
}

pub fn effective_params(spec: &SpaceSpec, energy: f64, qn: Option<&QuantumNumbers>) -> EffectiveParams {
    let Constants { m, hbar } = spec.constants;
    let e = energy;
    let centrifugal = |k: f64, coeff: f64| k * k - 2.0 * m * coeff * e / (hbar * hbar);
    match spec.space {
        Space::KI { alpha, beta, gamma, omega, kx, ky, .. } => {
            let w2 = omega * omega - 2.0 * alpha * e / m;
            let kx2 = centrifugal(kx, beta);
            let ky2 = centrifugal(ky, gamma);
            let kxt = real_sqrt(kx2);
            let kyt = real_sqrt(ky2);
            let lambda = match (qn, kxt, kyt) {
                (Some(QuantumNumbers::KI { n_phi, .. }), Some(a), Some(b)) => {
                    Some(2.0 * f64::from(*n_phi) + a + b + 1.0)
                }
                _ => None,
            };
            EffectiveParams {
                energy,
                omega_tilde_sq: Some(w2),
                omega_tilde: real_sqrt(w2),
                kx_tilde_sq: kx2,
                kx_tilde: kxt,
                ky_tilde_sq: Some(ky2),
                ky_tilde: kyt,
                alpha_tilde: None,
                lambda,
                kappa: None,
                y_shift: None,
            }
        }
        Space::KII { alpha, beta, gamma, omega, kx, ky_lin, .. } => {
            let w2 = omega * omega - 2.0 * alpha * e / m;
            let kx2 = centrifugal(kx, beta);
            let y_shift = if w2 > 0.0 { Some((ky_lin - gamma * e) / (4.0 * m * w2)) } else { None };
            EffectiveParams {
                energy,
                omega_tilde_sq: Some(w2),
                omega_tilde: real_sqrt(w2),
                kx_tilde_sq: kx2,
                kx_tilde: real_sqrt(kx2),
                ky_tilde_sq: None,
                ky_tilde: None,
                alpha_tilde: None,
                lambda: None,
                kappa: None,
                y_shift,
            }
        }
        Space::KIII { alpha1, beta, gamma, delta, alpha2, k1, k2 } => {
            let k12 = centrifugal(k1, beta);
            let k22 = centrifugal(k2, gamma);
            let k1t = real_sqrt(k12);
            let k2t = real_sqrt(k22);
            let alpha_tilde = alpha2 - alpha1 * e;
            let de = delta * e;
            let kappa = if de < 0.0 { Some(alpha_tilde / hbar * (-m / (2.0 * de)).sqrt()) } else { None };
            let lambda = match (qn, k1t, k2t) {
                (Some(QuantumNumbers::KIII { n_phi, .. }), Some(a), Some(b)) => {
                    Some(f64::from(*n_phi) + 0.5 * a + 0.5 * b + 0.5)
                }
                _ => None,
            };
            EffectiveParams {
                energy,
                omega_tilde_sq: None,
                omega_tilde: None,
                kx_tilde_sq: k12,
                kx_tilde: k1t,
                ky_tilde_sq: Some(k22),
                ky_tilde: k2t,
                alpha_tilde: Some(alpha_tilde),
                lambda,
                kappa,
                y_shift: None,
            }
        }
    }
}

/// A real interval with optional infinite ends.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EnergyInterval {
    pub lo: f64,
    pub hi: f64,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl EnergyInterval {
    pub fn contains(&self, e: f64) -> bool {
        let above = if self.lo_open { e > self.lo } else { e >= self.lo };
        let below = if self.hi_open { e < self.hi } else { e <= self.hi };
        above && below
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && (self.lo_open || self.hi_open))
    }
}

/// One linear constraint `c0 + c1·E ≥ 0` (or `> 0` when strict).
#[derive(Debug, Clone, Copy)]
struct Linear {
    c0: f64,
    c1: f64,
    strict: bool,
}

fn radicand_constraints(spec: &SpaceSpec) -> Vec<Linear> {
    let Constants { m, hbar } = spec.constants;
    let h2 = hbar * hbar;
    let weak = |c0: f64, c1: f64| Linear { c0, c1, strict: false };
    match spec.space {
        Space::KI { alpha, beta, gamma, omega, kx, ky, .. } => alloc::vec![
            weak(omega * omega, -2.0 * alpha / m),
            weak(kx * kx, -2.0 * m * beta / h2),
            weak(ky * ky, -2.0 * m * gamma / h2),
        ],
        // ω̃² sits in a denominator of the K_II condition
        Space::KII { alpha, beta, omega, kx, .. } => alloc::vec![
            Linear { c0: omega * omega, c1: -2.0 * alpha / m, strict: true },
            weak(kx * kx, -2.0 * m * beta / h2),
        ],
        Space::KIII { beta, gamma, delta, k1, k2, .. } => alloc::vec![
            weak(k1 * k1, -2.0 * m * beta / h2),
            weak(k2 * k2, -2.0 * m * gamma / h2),
            Linear { c0: 0.0, c1: -delta, strict: true },
        ],
    }
}

/// Maximal set of energies on which every radicand of the quantization
/// condition is nonnegative (and `δE < 0` for `K_III`). The constraints are
/// linear in `E`, so the result is empty or a single interval.
pub fn physical_energy_domain(spec: &SpaceSpec) -> Vec<EnergyInterval> {
    let mut iv = EnergyInterval { lo: f64::NEG_INFINITY, hi: f64::INFINITY, lo_open: true, hi_open: true };
    for c in radicand_constraints(spec) {
        if c.c1 == 0.0 {
            let ok = if c.strict { c.c0 > 0.0 } else { c.c0 >= 0.0 };
            if !ok {
                return Vec::new();
            }
            continue;
        }
        let edge = -c.c0 / c.c1;
        if c.c1 > 0.0 {
            if edge > iv.lo || (edge == iv.lo && c.strict) {
                iv.lo = edge;
                iv.lo_open = c.strict;
            }
        } else if edge < iv.hi || (edge == iv.hi && c.strict) {
            iv.hi = edge;
            iv.hi_open = c.strict;
        }
    }
    if iv.is_empty() {
        Vec::new()
    } else {
        alloc::vec![iv]
    }
}

/// Darboux-space specializations of the Koenigs metrics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Darboux {
    /// `K_II` with `α = β = δ = 0`, `γ ≠ 0`: `f = γy`.
    DI,
    /// Only `β ≠ 0`: the pure `1/x²` metric.
    DII,
    Flat,
    Generic,
}

impl fmt::Display for Darboux {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Darboux::DI => "D_I",
            Darboux::DII => "D_II",
            Darboux::Flat => "flat",
            Darboux::Generic => "generic",
        })
    }
}

pub fn darboux_classify(spec: &SpaceSpec) -> Darboux {
    let (a, b, g) = spec.metric_constants();
    let d = spec.delta();
    match spec.space {
        Space::KII { .. } if a == 0.0 && b == 0.0 && d == 0.0 && g != 0.0 => Darboux::DI,
        Space::KI { .. } | Space::KII { .. } if a == 0.0 && g == 0.0 && d == 0.0 && b != 0.0 => Darboux::DII,
        _ if a == 0.0 && b == 0.0 && g == 0.0 && d != 0.0 => Darboux::Flat,
        _ => Darboux::Generic,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ki(alpha: f64, beta: f64, gamma: f64, delta: f64, omega: f64, kx: f64, ky: f64) -> SpaceSpec {
        SpaceSpec::new(Space::KI { alpha, beta, gamma, delta, omega, kx, ky })
    }

    #[test]
    fn validate_flat_passes() {
        let spec = ki(0.0, 0.0, 0.0, 1.0, 1.0, 0.5, 0.5);
        assert!(validate_spec(&spec, &Window::square(0.1, 2.0)).passed());
    }

    #[test]
    fn validate_rejects_zero_delta() {
        let spec = ki(0.0, 0.0, 0.0, 0.0, 1.0, 0.5, 0.5);
        let report = validate_spec(&spec, &Window::square(0.1, 2.0));
        assert!(report.violations.iter().any(|v| v == "delta must be nonzero"));
    }

    #[test]
    fn validate_catches_negative_metric() {
        // f = r² − 10 < 0 everywhere on [0.1, 0.5]²
        let spec = ki(1.0, 0.0, 0.0, -10.0, 1.0, 0.5, 0.5);
        let report = validate_spec(&spec, &Window::square(0.1, 0.5));
        assert!(!report.passed());
        assert!(report.violations[0].contains("not positive at 1024"));
    }

    #[test]
    fn validate_skips_singular_axes() {
        let spec = ki(0.0, 1.0, 1.0, 1.0, 1.0, 0.5, 0.5);
        assert!(validate_spec(&spec, &Window::square(0.0, 1.0)).passed());
    }

    #[test]
    fn metric_examples() {
        let spec = ki(1.0, 1.0, 1.0, 1.0, 1.0, 0.5, 0.5);
        assert_eq!(metric_value(&spec, 1.0, 1.0).unwrap(), 5.0);
        let spec = SpaceSpec::new(Space::KII {
            alpha: 1.0,
            beta: 0.0,
            gamma: 0.0,
            delta: 0.0,
            omega: 1.0,
            kx: 0.5,
            ky_lin: 0.0,
        });
        assert_eq!(metric_value(&spec, 1.0, 1.0).unwrap(), 5.0);
        let spec = SpaceSpec::new(Space::KIII {
            alpha1: 0.0,
            beta: 0.0,
            gamma: 0.0,
            delta: 2.5,
            alpha2: 1.0,
            k1: 0.5,
            k2: 0.5,
        });
        for (x, y) in [(0.0, 0.0), (1.0, -3.0), (-2.0, 0.0)] {
            assert_eq!(metric_value(&spec, x, y).unwrap(), 2.5);
        }
    }

    #[test]
    fn metric_kiii_half_angles() {
        let spec = SpaceSpec::new(Space::KIII {
            alpha1: 0.3,
            beta: 0.7,
            gamma: 0.2,
            delta: 1.0,
            alpha2: 1.0,
            k1: 0.5,
            k2: 0.5,
        });
        let (x, y) = (0.4, 1.3);
        let r = x.hypot(y);
        let phi = y.atan2(x);
        let c = (0.5 * phi).cos();
        let s = (0.5 * phi).sin();
        let expected = -0.3 / r + (0.7 / (c * c) + 0.2 / (s * s)) / (4.0 * r * r) + 1.0;
        let got = metric_value(&spec, x, y).unwrap();
        assert!((got - expected).abs() < 1e-14 * expected.abs());
        assert_eq!(metric_value(&spec, 1.0, 0.0), Err(Error::SingularCoordinate { x: 1.0, y: 0.0 }));
        assert!(metric_value(&spec, -1.0, 0.0).is_err());
        assert!(metric_value(&spec, 0.0, 0.0).is_err());
    }

    #[test]
    fn metric_singular_axes() {
        let spec = ki(0.0, 1.0, 0.0, 1.0, 1.0, 0.5, 0.5);
        assert!(metric_value(&spec, 0.0, 1.0).is_err());
        assert!(metric_value(&spec, 1.0, 0.0).is_ok());
    }

    #[test]
    fn effective_params_examples() {
        let spec = ki(0.0, 0.0, 0.0, 1.0, 1.0, 0.5, 0.5);
        assert_eq!(effective_params(&spec, 7.3, None).omega_tilde, Some(1.0));

        let spec = ki(0.1, 0.0, 0.0, 1.0, 1.0, 0.5, 0.5);
        let p = effective_params(&spec, 2.2320919, None);
        assert!((p.omega_tilde.unwrap() - 0.744030).abs() < 1e-6);

        let spec = SpaceSpec::new(Space::KIII {
            alpha1: 0.0,
            beta: 0.0,
            gamma: 0.0,
            delta: 1.0,
            alpha2: 1.0,
            k1: 0.5,
            k2: 0.5,
        });
        let qn = QuantumNumbers::KIII { n_r: 0, n_phi: 0 };
        let p = effective_params(&spec, -2.0 / 9.0, Some(&qn));
        assert!((p.kappa.unwrap() - 1.5).abs() < 1e-14);
        assert_eq!(p.lambda, Some(1.0));
        assert_eq!(effective_params(&spec, 0.1, None).kappa, None);
    }

    #[test]
    fn effective_params_undefined_fields() {
        let spec = ki(1.0, 1.0, 0.0, 1.0, 1.0, 0.5, 0.5);
        let qn = QuantumNumbers::KI { n_r: 0, n_phi: 1 };
        let p = effective_params(&spec, 2.0, Some(&qn));
        assert!(p.omega_tilde_sq.unwrap() < 0.0 && p.omega_tilde.is_none());
        assert!(p.kx_tilde.is_none());
        assert!(p.lambda.is_none());
        let p = effective_params(&spec, 0.1, Some(&qn));
        let expected = 2.0 + (0.25f64 - 0.2).sqrt() + 0.5 + 1.0;
        assert!((p.lambda.unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn kii_shift() {
        let spec = SpaceSpec::new(Space::KII {
            alpha: 0.1,
            beta: 0.0,
            gamma: 0.3,
            delta: 1.0,
            omega: 1.0,
            kx: 0.5,
            ky_lin: 0.7,
        });
        let p = effective_params(&spec, 1.0, None);
        let expected = (0.7 - 0.3) / (4.0 * 0.8);
        assert!((p.y_shift.unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn domain_examples() {
        let spec = ki(0.0, 0.0, 0.0, 1.0, 1.0, 0.5, 0.5);
        let d = physical_energy_domain(&spec);
        assert_eq!(d.len(), 1);
        assert_eq!((d[0].lo, d[0].hi), (f64::NEG_INFINITY, f64::INFINITY));

        let spec = ki(0.1, 0.5, 0.0, 1.0, 1.0, 0.5, 0.5);
        let d = physical_energy_domain(&spec);
        assert_eq!(d[0].lo, f64::NEG_INFINITY);
        assert_eq!(d[0].hi, 0.25);
        assert!(!d[0].hi_open);

        let spec = SpaceSpec::new(Space::KIII {
            alpha1: 0.0,
            beta: 0.0,
            gamma: 0.0,
            delta: 1.0,
            alpha2: 1.0,
            k1: 0.5,
            k2: 0.5,
        });
        let d = physical_energy_domain(&spec);
        assert_eq!((d[0].lo, d[0].hi, d[0].hi_open), (f64::NEG_INFINITY, 0.0, true));
        assert!(!d[0].contains(0.0));
    }

    #[test]
    fn domain_can_be_empty() {
        // k_x² − 2βE ≥ 0 forces E ≤ 0.125, K_III needs E < 0 for δ > 0, and
        // γ < 0 with k₂ = 0 forces E ≥ 0
        let spec = SpaceSpec::new(Space::KIII {
            alpha1: 0.0,
            beta: 1.0,
            gamma: -1.0,
            delta: 1.0,
            alpha2: 1.0,
            k1: 0.5,
            k2: 0.0,
        });
        assert!(physical_energy_domain(&spec).is_empty());
    }

    #[test]
    fn darboux_examples() {
        let d1 = SpaceSpec::new(Space::KII {
            alpha: 0.0,
            beta: 0.0,
            gamma: 1.0,
            delta: 0.0,
            omega: 1.0,
            kx: 0.5,
            ky_lin: 0.0,
        });
        assert_eq!(darboux_classify(&d1), Darboux::DI);
        assert_eq!(darboux_classify(&ki(0.0, 2.0, 0.0, 0.0, 1.0, 0.5, 0.5)), Darboux::DII);
        assert_eq!(darboux_classify(&ki(0.0, 0.0, 0.0, 1.0, 1.0, 0.5, 0.5)), Darboux::Flat);
        assert_eq!(darboux_classify(&ki(0.1, 0.0, 0.0, 1.0, 1.0, 0.5, 0.5)), Darboux::Generic);
    }

    #[test]
    fn principal_labels() {
        assert_eq!(QuantumNumbers::KI { n_r: 2, n_phi: 1 }.principal(), 4.0);
        assert_eq!(QuantumNumbers::KII { n_x: 1, n_y: 2 }.principal(), 6.5);
        assert_eq!(QuantumNumbers::KIII { n_r: 0, n_phi: 0 }.principal(), 1.0);
    }
}
