//! Quantization conditions and the bound-state solvers.
//!
//! For each space the condition `F(E) = 0` comes from the poles of the Gamma
//! factor in the Green function (K_I, K_III) or from the phase of the
//! bound-state expansion of the kernel (K_II):
//!
//! - K_I:   `F = δE − ħω̃ (2N + k̃_x + k̃_y)`
//! - K_II:  `F = δE − (k_y − γE)²/(8mω̃²) − ħω̃ (N + k̃_x)`
//! - K_III: `F = (α₂ − α₁E)/ħ · √(−m/2δE) − (N + ½k̃₁ + ½k̃₂)`
//!
//! Roots are bracketed on a grid over a finite search window and refined by
//! bisection. [`eliminate_radicals`] gives an independent route through the
//! real roots of the conjugate-product polynomial.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
#[allow(unused_imports)] // unused when std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::model::{
    effective_params, physical_energy_domain, Constants, QuantumNumbers, SolverSettings, Space, SpaceKind, SpaceSpec,
};

mod eliminate;
mod special;

pub use eliminate::{
    cross_validate, cross_validation_report, eliminate_radicals, poly_real_roots, CrossValidation, PolyRoot,
    PolynomialForm,
};
pub use special::{
    closed_form_special, coulomb_asymptote, printed_energy_kii, printed_quadratic_kiii, printed_zeropot_kiii,
    ClosedForm, PrintedEnergyKii, PrintedQuadratic, SpecialCase,
};

/// How an energy was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Method {
    Bracketing,
    Polynomial,
    ClosedForm,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Bracketing => "bracketing",
            Method::Polynomial => "polynomial",
            Method::ClosedForm => "closed-form",
        }
    }
}

/// One bound state.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EnergyLevel {
    pub energy: f64,
    pub qn: QuantumNumbers,
    /// `|F(E)|`.
    pub residual: f64,
    pub bracket: (f64, f64),
    pub method: Method,
}

impl EnergyLevel {
    pub fn principal(&self) -> f64 {
        self.qn.principal()
    }
}

/// The quantization condition of one state, ready for evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralCondition {
    pub spec: SpaceSpec,
    pub qn: QuantumNumbers,
}

impl SpectralCondition {
    pub fn new(spec: &SpaceSpec, qn: QuantumNumbers) -> Result<Self> {
        if qn.kind() != spec.kind() {
            return Err(Error::PatternMismatch("quantum numbers belong to another space"));
        }
        Ok(SpectralCondition { spec: *spec, qn })
    }

    pub fn value(&self, energy: f64) -> Result<f64> {
        condition_value(&self.spec, &self.qn, energy)
    }
}

/// `F(E)`; a domain error when a radicand is negative at `E`.
pub fn condition_value(spec: &SpaceSpec, qn: &QuantumNumbers, energy: f64) -> Result<f64> {
    if qn.kind() != spec.kind() {
        return Err(Error::PatternMismatch("quantum numbers belong to another space"));
    }
    let Constants { m, hbar } = spec.constants;
    let n = qn.principal();
    let p = effective_params(spec, energy, None);
    let need = |v: Option<f64>, what: &'static str| v.ok_or(Error::Domain { what, value: energy });
    match spec.space {
        Space::KI { delta, .. } => {
            let w = need(p.omega_tilde, "condition: ω̃² < 0")?;
            let kx = need(p.kx_tilde, "condition: k̃_x² < 0")?;
            let ky = need(p.ky_tilde, "condition: k̃_y² < 0")?;
            Ok(delta * energy - hbar * w * (2.0 * n + kx + ky))
        }
        Space::KII { delta, gamma, ky_lin, .. } => {
            let w2 = p.omega_tilde_sq.unwrap_or(-1.0);
            if !(w2 > 0.0) {
                return Err(Error::Domain { what: "condition: ω̃² ≤ 0", value: energy });
            }
            let kx = need(p.kx_tilde, "condition: k̃_x² < 0")?;
            let c = ky_lin - gamma * energy;
            Ok(delta * energy - c * c / (8.0 * m * w2) - hbar * w2.sqrt() * (n + kx))
        }
        Space::KIII { delta, .. } => {
            if !(delta * energy < 0.0) {
                return Err(Error::Domain { what: "condition: δE ≥ 0", value: energy });
            }
            let k1 = need(p.kx_tilde, "condition: k̃₁² < 0")?;
            let k2 = need(p.ky_tilde, "condition: k̃₂² < 0")?;
            let kappa = p.kappa.expect("δE < 0 checked above");
            Ok(kappa - (n + 0.5 * k1 + 0.5 * k2))
        }
    }
}

/// Finite energy interval searched for the roots of one condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchWindow {
    pub lo: f64,
    pub hi: f64,
    pub lo_open: bool,
    pub hi_open: bool,
    /// The window was cut at an arbitrary cap rather than a proven bound.
    pub capped: bool,
}

/// Doubling limit for the unbounded directions.
const MAX_DOUBLINGS: usize = 200;

/// Search window for the roots of `F`, or `None` when no root can exist.
///
/// K_I and K_II need `δE ≥ 0` (the right-hand sides are nonnegative), K_III
/// needs `δE < 0`. In an unbounded direction the window is closed by a
/// bound beyond which `F` keeps one sign.
pub fn search_window(spec: &SpaceSpec, qn: &QuantumNumbers) -> Result<Option<SearchWindow>> {
    if qn.kind() != spec.kind() {
        return Err(Error::PatternMismatch("quantum numbers belong to another space"));
    }
    let delta = spec.delta();
    if delta == 0.0 {
        return Err(Error::Degenerate("delta must be nonzero"));
    }
    let Some(dom) = physical_energy_domain(spec).into_iter().next() else {
        return Ok(None);
    };
    let sigma = delta.signum();
    // the domain in u = σE
    let (mut u_lo, mut u_hi, mut lo_open, mut hi_open) = if sigma > 0.0 {
        (dom.lo, dom.hi, dom.lo_open, dom.hi_open)
    } else {
        (-dom.hi, -dom.lo, dom.hi_open, dom.lo_open)
    };
    let to_window = |a: f64, b: f64, ao: bool, bo: bool, capped: bool| {
        let (lo, hi, lo_open, hi_open) = if sigma > 0.0 { (a, b, ao, bo) } else { (-b, -a, bo, ao) };
        SearchWindow { lo, hi, lo_open, hi_open, capped }
    };
    match spec.kind() {
        SpaceKind::KI | SpaceKind::KII => {
            if u_lo < 0.0 || (u_lo == 0.0 && !lo_open) {
                u_lo = 0.0;
                lo_open = false;
            }
            if u_hi < u_lo || (u_hi == u_lo && (lo_open || hi_open)) {
                return Ok(None);
            }
            let mut capped = false;
            if u_hi.is_infinite() {
                match unbounded_cap(spec, qn, sigma)? {
                    Cap::Proven(u) => u_hi = u,
                    Cap::Guess(u) => {
                        u_hi = u;
                        capped = true;
                    }
                    Cap::NoRoots => return Ok(None),
                }
                hi_open = false;
            }
            Ok(Some(to_window(u_lo, u_hi, lo_open, hi_open, capped)))
        }
        SpaceKind::KIII => {
            // E = −σt², t > 0
            let t_edge = if u_lo.is_finite() { (-u_lo).sqrt() } else { f64::INFINITY };
            let edge_open = lo_open;
            let Some((t_min, t_max)) = kiii_t_bounds(spec, qn) else { return Ok(None) };
            let (t_hi, t_hi_open) = if t_max < t_edge { (t_max, false) } else { (t_edge, edge_open) };
            if !(t_min < t_hi) {
                return Ok(None);
            }
            let _ = (u_hi, hi_open);
            Ok(Some(to_window(-t_hi * t_hi, -t_min * t_min, t_hi_open, false, false)))
        }
    }
}

enum Cap {
    Proven(f64),
    Guess(f64),
    NoRoots,
}

/// Upper end in `u = σE` for K_I / K_II when the domain is unbounded.
fn unbounded_cap(spec: &SpaceSpec, qn: &QuantumNumbers, sigma: f64) -> Result<Cap> {
    let Constants { m, hbar } = spec.constants;
    let n = qn.principal();
    let f = |u: f64| condition_value(spec, qn, sigma * u);
    match spec.space {
        Space::KI { alpha, beta, gamma, delta, omega, kx, ky } => {
            // F is convex in u and F(0) ≤ 0: at most one root for u > 0.
            let w1 = -2.0 * alpha * sigma / m;
            let x1 = -2.0 * m * beta * sigma / (hbar * hbar);
            let y1 = -2.0 * m * gamma * sigma / (hbar * hbar);
            let growth = hbar * w1.max(0.0).sqrt() * (x1.max(0.0).sqrt() + y1.max(0.0).sqrt());
            let slope = delta.abs() - growth;
            let scale = (hbar * omega * (2.0 * n + kx + ky) / delta.abs()).max(1.0);
            if slope <= 0.0 {
                // F is nonincreasing; only F(0) = 0 could be a root
                return Ok(if f(0.0)? == 0.0 { Cap::Proven(scale) } else { Cap::NoRoots });
            }
            let mut u = scale;
            for _ in 0..MAX_DOUBLINGS {
                if f(u)? > 0.0 {
                    return Ok(Cap::Proven(u));
                }
                u *= 2.0;
            }
            Ok(Cap::Guess(u))
        }
        Space::KII { alpha, beta, gamma, delta, omega, kx, ky_lin } => {
            let w1 = -2.0 * alpha * sigma / m;
            let x1 = -2.0 * m * beta * sigma / (hbar * hbar);
            let q = -gamma * sigma;
            let p = ky_lin;
            let d = delta.abs();
            let w0 = omega * omega;
            let scale = (hbar * omega * (n + kx) / d + p * p / (8.0 * m * d * w0.max(1e-300))).clamp(1.0, 1e150);
            if w1 == 0.0 && q != 0.0 {
                // F ≤ d·u − (p+qu)²/(8mω²), a concave quadratic
                let a = q * q / (8.0 * m * w0);
                let b = 2.0 * p * q / (8.0 * m * w0) - d;
                let c = p * p / (8.0 * m * w0);
                let disc = b * b - 4.0 * a * c;
                if disc < 0.0 {
                    return Ok(Cap::NoRoots);
                }
                let r = (-b + disc.sqrt()) / (2.0 * a);
                return Ok(if r <= 0.0 { Cap::NoRoots } else { Cap::Proven(r) });
            }
            if w1 == 0.0 {
                // constant shift term: F is convex with F(0) < 0
                let mut u = scale;
                for _ in 0..MAX_DOUBLINGS {
                    if f(u)? > 0.0 {
                        return Ok(Cap::Proven(u));
                    }
                    u *= 2.0;
                }
                return Ok(Cap::Guess(u));
            }
            // w1 > 0: F is asymptotically linear with this slope
            let slope = d - q * q / (8.0 * m * w1) - hbar * (w1 * x1.max(0.0)).sqrt();
            let mut crossover = scale.max(w0 / w1);
            if x1 > 0.0 {
                crossover = crossover.max(kx * kx / x1);
            }
            if q != 0.0 {
                crossover = crossover.max((p / q).abs());
            }
            if slope == 0.0 {
                return Ok(Cap::Guess(1e3 * crossover));
            }
            let mut u = 1e3 * crossover;
            for _ in 0..MAX_DOUBLINGS {
                let v = f(u)?;
                if v.signum() == slope.signum() && v.abs() > 0.5 * slope.abs() * u {
                    return Ok(Cap::Proven(u));
                }
                u *= 2.0;
            }
            Ok(Cap::Guess(u))
        }
        Space::KIII { .. } => unreachable!("K_III windows are always finite"),
    }
}

/// Interval `(t_min, t_max)` in `t = √|E|` outside which the K_III
/// condition provably keeps one sign, from linear bounds on the radicals.
fn kiii_t_bounds(spec: &SpaceSpec, qn: &QuantumNumbers) -> Option<(f64, f64)> {
    let Space::KIII { alpha1, beta, gamma, delta, alpha2, k1, k2 } = spec.space else {
        return None;
    };
    let Constants { m, hbar } = spec.constants;
    let sigma = delta.signum();
    let n = qn.principal();
    let c = (m / (2.0 * delta.abs())).sqrt() / hbar;
    // F(t) = a0/t + a1·t − (N + ½√(k₁² + b1 t²) + ½√(k₂² + b2 t²))
    let a0 = alpha2 * c;
    let a1 = alpha1 * sigma * c;
    let b1 = 2.0 * m * beta * sigma / (hbar * hbar);
    let b2 = 2.0 * m * gamma * sigma / (hbar * hbar);
    let slope_rhs = 0.5 * (b1.max(0.0).sqrt() + b2.max(0.0).sqrt());
    let kk = 0.5 * (k1 + k2);
    let d = a1 - slope_rhs;
    // positive root of A t² + B t + C, largest one
    let largest_root = |a: f64, b: f64, c: f64| -> Option<f64> {
        if a == 0.0 {
            return if b != 0.0 { Some(-c / b) } else { None };
        }
        let disc = b * b - 4.0 * a * c;
        if disc < 0.0 {
            return None;
        }
        let s = disc.sqrt();
        let r1 = (-b + s) / (2.0 * a);
        let r2 = (-b - s) / (2.0 * a);
        Some(r1.max(r2))
    };
    let smallest_positive_root = |a: f64, b: f64, c: f64| -> Option<f64> {
        if a == 0.0 {
            let r = -c / b;
            return if b != 0.0 && r > 0.0 { Some(r) } else { None };
        }
        let disc = b * b - 4.0 * a * c;
        if disc < 0.0 {
            return None;
        }
        let s = disc.sqrt();
        let mut rs = [(-b + s) / (2.0 * a), (-b - s) / (2.0 * a)];
        rs.sort_by(|x, y| x.partial_cmp(y).unwrap());
        rs.into_iter().find(|r| *r > 0.0)
    };
    // upper bound: F ≤ (d t² − N t + a0)/t; lower bound: F ≥ (d t² − (N+K) t + a0)/t
    let t_max = if d < 0.0 {
        if a0 <= 0.0 {
            return None;
        }
        largest_root(d, -n, a0)?
    } else if d > 0.0 {
        largest_root(d, -(n + kk), a0)?
    } else {
        if a0 <= 0.0 {
            return None;
        }
        a0 / n
    };
    let t_min = if a0 > 0.0 {
        // lower bound with |d|: positive for t below this root
        let r = if d == 0.0 { a0 / (n + kk) } else { smallest_positive_root(-d.abs(), -(n + kk), a0)? };
        0.5 * r
    } else if a0 < 0.0 {
        // upper bound negative below its first positive root
        0.5 * smallest_positive_root(d, -n, a0)?
    } else {
        if d <= 0.0 {
            return None;
        }
        0.5 * n / d
    };
    // the bounds can be tight (hydrogen-like case): widen the top
    let t_max = 1.01 * t_max;
    if !(t_max > t_min) || !t_max.is_finite() {
        return None;
    }
    Some((t_min, t_max))
}

/// Scan abscissae: `n` uniform cells plus geometric refinement toward both
/// ends, where roots of the oscillator-type conditions accumulate.
fn scan_grid(w: &SearchWindow, n: usize) -> Vec<f64> {
    let (a, b) = (w.lo, w.hi);
    let width = b - a;
    let mut pts = Vec::with_capacity(n + 130);
    for i in 0..=n {
        pts.push(a + width * (i as f64) / (n as f64));
    }
    let mut frac = 1.0 / (n as f64);
    for _ in 0..60 {
        frac *= 0.5;
        pts.push(a + width * frac);
        pts.push(b - width * frac);
    }
    if w.lo_open {
        pts.retain(|&x| x > a);
    }
    if w.hi_open {
        pts.retain(|&x| x < b);
    }
    pts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    pts.dedup();
    pts
}

/// Bisection on `[lo, hi]` with `f(lo)·f(hi) < 0` down to adjacent doubles.
fn bisect<F: Fn(f64) -> Result<f64>>(f: F, mut lo: f64, mut hi: f64, settings: &SolverSettings) -> Result<f64> {
    let mut f_lo = f(lo)?;
    for _ in 0..settings.max_iter {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Ok(if f_lo.abs() <= f(hi)?.abs() { lo } else { hi });
        }
        let v = f(mid)?;
        if v == 0.0 {
            return Ok(mid);
        }
        if (v < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = v;
        } else {
            hi = mid;
        }
    }
    let mid = 0.5 * (lo + hi);
    if hi - lo <= settings.tol_abs + settings.tol_rel * mid.abs() {
        return Ok(mid);
    }
    Err(Error::NotConverged { what: "bisection", iterations: settings.max_iter })
}

/// Roots of one condition plus anything worth reporting.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LevelSolution {
    pub levels: Vec<EnergyLevel>,
    pub warnings: Vec<String>,
}

/// Residual tolerance of a level: `tol_abs + tol_rel·|δE|`.
pub fn residual_tolerance(spec: &SpaceSpec, energy: f64, settings: &SolverSettings) -> f64 {
    settings.tol_abs + settings.tol_rel * (spec.delta() * energy).abs()
}

/// All roots of the condition for `qn` found by scanning the search window.
pub fn solve_level(spec: &SpaceSpec, qn: &QuantumNumbers, settings: &SolverSettings) -> Result<LevelSolution> {
    solve_with_density(spec, qn, settings, settings.scan_points)
}

pub(crate) fn solve_with_density(
    spec: &SpaceSpec,
    qn: &QuantumNumbers,
    settings: &SolverSettings,
    points: usize,
) -> Result<LevelSolution> {
    let mut out = LevelSolution::default();
    let Some(window) = search_window(spec, qn)? else { return Ok(out) };
    if window.capped {
        out.warnings.push(format!(
            "{qn:?}: no proven root bound; search capped at E = {:e}",
            if spec.delta() > 0.0 { window.hi } else { window.lo }
        ));
    }
    let f = |e: f64| condition_value(spec, qn, e);
    let grid = scan_grid(&window, points.max(2));
    let mut samples = Vec::with_capacity(grid.len());
    for &e in &grid {
        if let Ok(v) = f(e) {
            if v.is_finite() {
                samples.push((e, v));
            }
        }
    }
    let mut roots: Vec<(f64, (f64, f64))> = Vec::new();
    for (i, &(e, v)) in samples.iter().enumerate() {
        if v == 0.0 {
            roots.push((e, (e, e)));
            continue;
        }
        if let Some(&(e2, v2)) = samples.get(i + 1) {
            if v2 != 0.0 && (v < 0.0) != (v2 < 0.0) {
                let root = bisect(f, e, e2, settings)?;
                roots.push((root, (e, e2)));
            }
        }
    }
    for (energy, bracket) in roots {
        let residual = f(energy)?.abs();
        if residual >= residual_tolerance(spec, energy, settings) {
            out.warnings
                .push(format!("{qn:?}: residual {residual:e} at E = {energy} exceeds tolerance (steep condition)"));
        }
        out.levels.push(EnergyLevel { energy, qn: *qn, residual, bracket, method: Method::Bracketing });
    }
    if out.levels.len() > 1 {
        out.warnings.push(format!(
            "{qn:?}: {} roots of one quantization condition: {:?}",
            out.levels.len(),
            out.levels.iter().map(|l| l.energy).collect::<Vec<_>>()
        ));
    }
    Ok(out)
}

/// Whether a scan `factor` times denser finds the same number of roots, at
/// the same energies within the residual tolerance scale.
pub fn denser_scan_agrees(
    spec: &SpaceSpec,
    qn: &QuantumNumbers,
    settings: &SolverSettings,
    factor: usize,
) -> Result<bool> {
    let base = solve_level(spec, qn, settings)?;
    let dense = solve_with_density(spec, qn, settings, settings.scan_points * factor.max(1))?;
    if base.levels.len() != dense.levels.len() {
        return Ok(false);
    }
    Ok(base
        .levels
        .iter()
        .zip(dense.levels.iter())
        .all(|(a, b)| (a.energy - b.energy).abs() <= 1e-9 * a.energy.abs().max(1.0)))
}

/// Levels of every quantum-number tuple with constituents `≤ qn_bound`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Spectrum {
    pub levels: Vec<EnergyLevel>,
    pub spec: SpaceSpec,
    pub settings: SolverSettings,
    pub warnings: Vec<String>,
}

pub fn enumerate_spectrum(spec: &SpaceSpec, qn_bound: u32, settings: &SolverSettings) -> Result<Spectrum> {
    let kind = spec.kind();
    let mut levels = Vec::new();
    let mut warnings = Vec::new();
    for n1 in 0..=qn_bound {
        for n2 in 0..=qn_bound {
            let qn = QuantumNumbers::for_kind(kind, n1, n2);
            let sol = solve_level(spec, &qn, settings)?;
            levels.extend(sol.levels);
            warnings.extend(sol.warnings);
        }
    }
    levels.sort_by(|a, b| a.energy.total_cmp(&b.energy).then(a.qn.cmp(&b.qn)));
    if kind != SpaceKind::KII {
        // the condition depends on N only
        for (i, a) in levels.iter().enumerate() {
            for b in &levels[i + 1..] {
                if a.principal() == b.principal() {
                    let tol = 10.0 * residual_tolerance(spec, a.energy, settings).max(settings.tol_abs);
                    if (a.energy - b.energy).abs() > tol {
                        warnings.push(format!(
                            "N = {}: {:?} and {:?} differ by {:e}",
                            a.principal(),
                            a.qn,
                            b.qn,
                            (a.energy - b.energy).abs()
                        ));
                    }
                }
            }
        }
    }
    Ok(Spectrum { levels, spec: *spec, settings: *settings, warnings })
}
