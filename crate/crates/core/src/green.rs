//! Truncated Green functions of `K_I` and `K_III`, the Euclidean kernel of
//! `K_I`, and pole scans against a computed spectrum.
//!
//! Both Green functions are sums over the angular quantum number of a
//! Pöschl–Teller pair times a radial Whittaker product `W(z_>)·M(z_<)`.
//! The radial prefactor carries `Γ(g(E))`, whose poles `g = −n_r` are the
//! bound-state energies.

use alloc::string::String;
use alloc::vec::Vec;
#[allow(unused_imports)] // unused when std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::model::{darboux_classify, effective_params, Constants, Darboux, QuantumNumbers, SpaceKind, SpaceSpec};
use crate::quantize::{EnergyLevel, Spectrum};
use crate::specfun::{bessel_i, gamma, recip_gamma, whittaker, Whittaker};
use crate::wavefun::{angular_pt, assemble_and_normalize, GridSpec};

/// Conventions that depart from the printed formulas, echoed in reports.
pub const CONVENTIONS: [&str; 2] = [
    "K_I Whittaker first index taken as dE/(2 hbar omega~) (hbar restored)",
    "K_III radial product taken as W(z_>) M(z_<); the printed form repeats r_>",
];

/// Closest allowed approach of a Γ argument to a nonpositive integer.
pub const POLE_GUARD: f64 = 1e-6;

/// Relative size of the last term above which an evaluation is flagged.
pub const TRUNCATION_TOLERANCE: f64 = 1e-8;

/// Fewest angular terms accepted by [`green_value`].
pub const MIN_TERMS: usize = 8;

/// Two points `(r′, φ′)` and `(r″, φ″)` in polar coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Points {
    pub r1: f64,
    pub phi1: f64,
    pub r2: f64,
    pub phi2: f64,
}

impl Points {
    pub fn new(r1: f64, phi1: f64, r2: f64, phi2: f64) -> Self {
        Points { r1, phi1, r2, phi2 }
    }

    pub fn swapped(&self) -> Self {
        Points { r1: self.r2, phi1: self.phi2, r2: self.r1, phi2: self.phi1 }
    }

    fn radii(&self) -> (f64, f64) {
        // ordered by value so that the swap gives bitwise-identical sums
        (self.r1.min(self.r2), self.r1.max(self.r2))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GreenEvaluation {
    pub value: f64,
    pub terms: usize,
    /// `|last retained term|`.
    pub truncation_error_estimate: f64,
    pub energy: f64,
    /// Set when the last term exceeds `1e-8·|value|`.
    pub flagged: bool,
}

/// Energy-dependent ingredients shared by the Green function and the scans.
#[derive(Debug, Clone, Copy)]
enum Radial {
    /// `s = mω̃/ℏ`, `κ = δE/(2ℏω̃)`, and `λ` without the `2n_φ` part.
    KI { omega: f64, hbar_omega: f64, s: f64, kappa: f64, a: f64, b: f64, lambda0: f64 },
    /// `z = q·r`, `λ` without the `n_φ` part.
    KIII { q: f64, kappa: f64, a: f64, b: f64, lambda0: f64, pref: f64 },
}

impl Radial {
    fn new(spec: &SpaceSpec, energy: f64) -> Result<Self> {
        let Constants { m, hbar } = spec.constants;
        let p = effective_params(spec, energy, None);
        let domain = |what| Error::Domain { what, value: energy };
        let a = p.kx_tilde.ok_or(domain("kx tilde"))?;
        let b = p.ky_tilde.ok_or(domain("ky tilde"))?;
        match spec.kind() {
            SpaceKind::KI => {
                let omega = p.omega_tilde.filter(|w| *w > 0.0).ok_or(domain("omega tilde"))?;
                let de = spec.delta() * energy;
                Ok(Radial::KI {
                    omega,
                    hbar_omega: hbar * omega,
                    s: m * omega / hbar,
                    kappa: de / (2.0 * hbar * omega),
                    a,
                    b,
                    lambda0: a + b + 1.0,
                })
            }
            SpaceKind::KIII => {
                let kappa = p.kappa.ok_or(domain("kappa"))?;
                let de = spec.delta() * energy;
                Ok(Radial::KIII {
                    q: (-8.0 * m * de).sqrt() / hbar,
                    kappa,
                    a,
                    b,
                    lambda0: 0.5 * (a + b) + 0.5,
                    pref: (-m / (2.0 * de)).sqrt() / hbar,
                })
            }
            SpaceKind::KII => Err(Error::PatternMismatch("no Green function for K_II")),
        }
    }

    fn lambda(&self, n_phi: u32) -> f64 {
        match *self {
            Radial::KI { lambda0, .. } => lambda0 + 2.0 * f64::from(n_phi),
            Radial::KIII { lambda0, .. } => lambda0 + f64::from(n_phi),
        }
    }

    /// Argument of the pole-carrying Γ factor.
    fn gamma_argument(&self, n_phi: u32) -> f64 {
        let lambda = self.lambda(n_phi);
        match *self {
            Radial::KI { kappa, .. } => 0.5 * (1.0 + lambda) - kappa,
            Radial::KIII { kappa, .. } => 0.5 + lambda - kappa,
        }
    }

    fn angular(&self, n_phi: u32, phi: f64) -> Result<f64> {
        match *self {
            Radial::KI { a, b, .. } => angular_pt(n_phi, b, a, phi),
            Radial::KIII { a, b, .. } => angular_pt(n_phi, b, a, 0.5 * phi),
        }
    }

    fn term(&self, n_phi: u32, r_lo: f64, r_hi: f64) -> Result<f64> {
        let lambda = self.lambda(n_phi);
        let g = self.gamma_argument(n_phi);
        if g <= 0.0 && (g - g.round()).abs() < POLE_GUARD {
            return Err(Error::Pole { what: "green_value", at: g });
        }
        match *self {
            Radial::KI { hbar_omega, s, kappa, .. } => {
                let mu = 0.5 * lambda;
                let w = whittaker(Whittaker::W, kappa, mu, s * r_hi * r_hi)?;
                let mm = whittaker(Whittaker::M, kappa, mu, s * r_lo * r_lo)?;
                Ok(gamma(g)? * recip_gamma(1.0 + lambda) / (hbar_omega * (r_lo * r_hi).sqrt()) * w * mm)
            }
            Radial::KIII { q, kappa, pref, .. } => {
                let w = whittaker(Whittaker::W, kappa, lambda, q * r_hi)?;
                let mm = whittaker(Whittaker::M, kappa, lambda, q * r_lo)?;
                Ok(pref * gamma(g)? * recip_gamma(2.0 * lambda + 1.0) * w * mm)
            }
        }
    }
}

fn check_points(spec: &SpaceSpec, points: &Points) -> Result<()> {
    let top = if spec.kind() == SpaceKind::KI { core::f64::consts::FRAC_PI_2 } else { core::f64::consts::PI };
    for r in [points.r1, points.r2] {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::Domain { what: "green radius", value: r });
        }
    }
    for phi in [points.phi1, points.phi2] {
        if !(phi > 0.0 && phi < top) {
            return Err(Error::Domain { what: "green angle", value: phi });
        }
    }
    Ok(())
}

/// Partial sum over `n_φ = 0..=n_max` of the Green function at energy `E`.
pub fn green_value(spec: &SpaceSpec, points: &Points, energy: f64, n_max: u32) -> Result<GreenEvaluation> {
    check_points(spec, points)?;
    if (n_max as usize) + 1 < MIN_TERMS {
        return Err(Error::Degenerate("green_value needs at least 8 angular terms"));
    }
    let radial = Radial::new(spec, energy)?;
    let (r_lo, r_hi) = points.radii();
    let mut value = 0.0;
    let mut last = 0.0;
    for n in 0..=n_max {
        // product of the two angular factors is symmetric in the points
        let pair = radial.angular(n, points.phi1)? * radial.angular(n, points.phi2)?;
        let term = if pair == 0.0 { 0.0 } else { pair * radial.term(n, r_lo, r_hi)? };
        value += term;
        last = term;
    }
    let truncation_error_estimate = last.abs();
    Ok(GreenEvaluation {
        value,
        terms: n_max as usize + 1,
        truncation_error_estimate,
        energy,
        flagged: !(truncation_error_estimate < TRUNCATION_TOLERANCE * value.abs()),
    })
}

/// Argument `g(E)` of the Γ factor of the `n_φ` term, `None` outside the
/// region where the energy-dependent indices are real.
pub fn gamma_argument(spec: &SpaceSpec, energy: f64, n_phi: u32) -> Option<f64> {
    Radial::new(spec, energy).ok().map(|r| r.gamma_argument(n_phi))
}

/// Largest `ω̃τ` accepted by [`kernel_value`].
pub const KERNEL_MAX_PHASE: f64 = 350.0;

/// Euclidean (`s = −iτ`) kernel of the time-transformed `K_I` problem with
/// the parameters frozen at `energy`.
pub fn kernel_value(spec: &SpaceSpec, points: &Points, tau: f64, n_max: u32, energy: f64) -> Result<f64> {
    if spec.kind() != SpaceKind::KI {
        return Err(Error::PatternMismatch("kernel_value is defined for K_I"));
    }
    check_points(spec, points)?;
    if !(tau > 0.0) {
        return Err(Error::Domain { what: "kernel time", value: tau });
    }
    let radial = Radial::new(spec, energy)?;
    let Radial::KI { omega, s, .. } = radial else { unreachable!() };
    let phase = omega * tau;
    if phase > KERNEL_MAX_PHASE {
        return Err(Error::Overflow("kernel_value: omega tilde times tau too large"));
    }
    let (r_lo, r_hi) = points.radii();
    let sh = phase.sinh();
    let coth = 1.0 / phase.tanh();
    let z = s * r_lo * r_hi / sh;
    let pref = s * (r_lo * r_hi).sqrt() / sh * (-0.5 * s * (r_lo * r_lo + r_hi * r_hi) * coth).exp();
    let mut value = 0.0;
    for n in 0..=n_max {
        let pair = radial.angular(n, points.phi1)? * radial.angular(n, points.phi2)?;
        value += pair * pref * bessel_i(radial.lambda(n), z)?;
    }
    Ok(value)
}

/// A pole of the Green function matched (or not) to a spectrum level.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Pole {
    pub energy: f64,
    /// Quantum numbers read off the pole: `g = −n_r` in the `n_φ` term.
    pub qn: QuantumNumbers,
    pub level: Option<EnergyLevel>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PoleReport {
    pub range: (f64, f64),
    pub poles: Vec<Pole>,
    /// Poles with no spectrum level within tolerance.
    pub unmatched_poles: Vec<Pole>,
    /// Spectrum levels inside the range with no pole.
    pub missed_levels: Vec<EnergyLevel>,
    pub notes: Vec<String>,
}

impl PoleReport {
    pub fn passed(&self) -> bool {
        self.unmatched_poles.is_empty() && self.missed_levels.is_empty()
    }

    pub fn matches(&self) -> impl Iterator<Item = &Pole> {
        self.poles.iter().filter(|p| p.level.is_some())
    }
}

/// Pole–level agreement demanded by [`pole_scan`].
pub const POLE_MATCH_TOLERANCE: f64 = 1e-8;

fn bisect(f: impl Fn(f64) -> Option<f64>, mut lo: f64, mut hi: f64) -> Option<f64> {
    let flo = f(lo)?;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Some(mid);
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Locates the poles of the Green function on `range` by watching the Γ
/// argument of every angular term cross the nonpositive integers, and
/// matches them to `spectrum`. Angular and radial quantum numbers are
/// limited to the largest one present in the spectrum.
///
/// `points` only decide visibility: a pole whose angular pair vanishes at
/// the points is still reported. They are validated but otherwise unused.
pub fn pole_scan(
    spec: &SpaceSpec,
    points: &Points,
    range: (f64, f64),
    n_points: usize,
    spectrum: &Spectrum,
) -> PoleReport {
    let (lo, hi) = (range.0.min(range.1), range.0.max(range.1));
    let mut report = PoleReport {
        range: (lo, hi),
        poles: Vec::new(),
        unmatched_poles: Vec::new(),
        missed_levels: Vec::new(),
        notes: Vec::new(),
    };
    match spec.kind() {
        SpaceKind::KI => report.notes.push(CONVENTIONS[0].into()),
        SpaceKind::KIII => report.notes.push(CONVENTIONS[1].into()),
        SpaceKind::KII => {}
    }
    if check_points(spec, points).is_err() {
        report.notes.push("points outside the domain; scan done without them".into());
    }
    let kind = spec.kind();
    if kind == SpaceKind::KII {
        report.notes.push("K_II has no Green function here".into());
        return report;
    }
    let bound = spectrum.levels.iter().map(|l| {
        let (a, b) = l.qn.pair();
        a.max(b)
    });
    let bound = bound.max().unwrap_or(0);
    let n = n_points.max(2);
    let grid: Vec<f64> = (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect();
    for n_phi in 0..=bound {
        let g = |e: f64| gamma_argument(spec, e, n_phi);
        let samples: Vec<Option<f64>> = grid.iter().map(|&e| g(e)).collect();
        for k in 0..n - 1 {
            let (Some(g0), Some(g1)) = (samples[k], samples[k + 1]) else { continue };
            let (gmin, gmax) = (g0.min(g1), g0.max(g1));
            // nonpositive integers −j strictly crossed, or hit at the left node
            let mut j = (-gmax).ceil().max(0.0);
            while -j >= gmin {
                let target = -j;
                let hit_right = g1 == target && k + 1 < n - 1;
                if target <= gmax && !hit_right && (g0 - target) * (g1 - target) <= 0.0 {
                    let nr = j as u32;
                    if nr <= bound {
                        let e = if g0 == target {
                            grid[k]
                        } else if g1 == target {
                            grid[k + 1]
                        } else {
                            match bisect(|e| g(e).map(|v| v - target), grid[k], grid[k + 1]) {
                                Some(e) => e,
                                None => {
                                    j += 1.0;
                                    continue;
                                }
                            }
                        };
                        report.poles.push(Pole {
                            energy: e,
                            qn: QuantumNumbers::for_kind(kind, nr, n_phi),
                            level: None,
                        });
                    }
                }
                j += 1.0;
            }
        }
    }
    report.poles.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    let close = |a: f64, b: f64| (a - b).abs() <= POLE_MATCH_TOLERANCE * a.abs().max(1.0);
    for pole in &mut report.poles {
        let same = spectrum.levels.iter().find(|l| l.qn == pole.qn && close(l.energy, pole.energy));
        let any = spectrum.levels.iter().find(|l| close(l.energy, pole.energy));
        pole.level = same.or(any).copied();
    }
    report.unmatched_poles = report.poles.iter().filter(|p| p.level.is_none()).copied().collect();
    report.missed_levels = spectrum
        .levels
        .iter()
        .filter(|l| l.energy > lo && l.energy < hi)
        .filter(|l| !report.poles.iter().any(|p| close(l.energy, p.energy)))
        .copied()
        .collect();
    report
}

/// Numerical residue of the Green function against the normalized states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidueCheck {
    pub energy: f64,
    /// `lim (E − E_N)·G(E)` estimated from four points around `E_N`.
    pub residue: f64,
    /// `−√(r′r″) Σ Ψ(x′)Ψ(x″)` over the levels degenerate at `E_N`. The
    /// Green function is taken in the radial `dr dφ` measure, hence the
    /// `√(r′r″)`.
    pub expected: f64,
    pub relative_error: f64,
}

/// Tolerance of the residue cross-check.
pub const RESIDUE_TOLERANCE: f64 = 1e-3;

/// Residue cross-check at a level of a flat `K_I` space. The states are
/// normalized by quadrature on `grid`.
pub fn residue_check(
    spec: &SpaceSpec,
    points: &Points,
    level_energy: f64,
    spectrum: &Spectrum,
    grid: &GridSpec,
    n_max: u32,
) -> Result<ResidueCheck> {
    if spec.kind() != SpaceKind::KI || darboux_classify(spec) != Darboux::Flat {
        return Err(Error::PatternMismatch("residue check needs a flat K_I space"));
    }
    let e0 = level_energy;
    let eps = 1e-4 * e0.abs().max(1.0);
    let g = |e: f64| green_value(spec, points, e, n_max).map(|v| v.value);
    let r = |h: f64| -> Result<f64> { Ok(0.5 * h * (g(e0 + h)? - g(e0 - h)?)) };
    // symmetric differences cancel the regular part; Richardson removes O(h²)
    let residue = (4.0 * r(eps)? - r(2.0 * eps)?) / 3.0;
    let mut expected = 0.0;
    for lv in spectrum.levels.iter().filter(|l| (l.energy - e0).abs() <= 1e-9 * e0.abs().max(1.0)) {
        let psi = assemble_and_normalize(spec, lv, grid)?;
        expected -= psi.value_at(spec, points.r1, points.phi1)? * psi.value_at(spec, points.r2, points.phi2)?;
    }
    expected *= (points.r1 * points.r2).sqrt();
    if expected == 0.0 {
        return Err(Error::Degenerate("no normalized state at the requested energy"));
    }
    Ok(ResidueCheck { energy: e0, residue, expected, relative_error: ((residue - expected) / expected).abs() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{SolverSettings, Space};
    use crate::quantize::enumerate_spectrum;
    use core::f64::consts::FRAC_PI_4;

    fn flat() -> SpaceSpec {
        SpaceSpec::new(Space::KI { alpha: 0.0, beta: 0.0, gamma: 0.0, delta: 1.0, omega: 1.0, kx: 0.5, ky: 0.5 })
    }

    fn hydrogen() -> SpaceSpec {
        SpaceSpec::new(Space::KIII { alpha1: 0.0, beta: 0.0, gamma: 0.0, delta: 1.0, alpha2: 1.0, k1: 0.5, k2: 0.5 })
    }

    const P: Points = Points { r1: 1.0, phi1: FRAC_PI_4, r2: 2.0, phi2: FRAC_PI_4 };

    #[test]
    fn pole_approach() {
        let far = green_value(&flat(), &P, 2.9, 12).unwrap();
        let near = green_value(&flat(), &P, 2.999, 12).unwrap();
        assert!(far.value.is_finite());
        assert!(near.value.abs() > 10.0 * far.value.abs());
        assert_eq!(far.terms, 13);
        assert!(matches!(green_value(&flat(), &P, 3.0, 12), Err(Error::Pole { .. })));
        assert!(matches!(green_value(&flat(), &P, 3.0 + 1e-7, 12), Err(Error::Pole { .. })));
    }

    #[test]
    fn swap_symmetry() {
        let p = Points::new(0.7, 0.3, 1.9, 1.1);
        for (spec, e) in [(flat(), 2.4), (hydrogen(), -0.3)] {
            let a = green_value(&spec, &p, e, 12).unwrap();
            let b = green_value(&spec, &p.swapped(), e, 12).unwrap();
            assert_eq!(a.value.to_bits(), b.value.to_bits());
        }
        let a = kernel_value(&flat(), &p, 1.3, 12, 2.0).unwrap();
        let b = kernel_value(&flat(), &p.swapped(), 1.3, 12, 2.0).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn truncation_converges() {
        let p = Points::new(0.8, 0.4, 1.6, 1.0);
        let curved =
            SpaceSpec::new(Space::KI { alpha: 0.1, beta: 0.05, gamma: 0.02, delta: 1.0, omega: 1.0, kx: 0.7, ky: 0.4 });
        // K_III terms fall off like (r_</r_>)^n, half as fast as K_I
        let far = Points::new(0.5, 0.4, 3.0, 2.0);
        for (spec, e, p) in [(flat(), 2.5, p), (curved, 1.7, p), (hydrogen(), -0.15, far)] {
            let a = green_value(&spec, &p, e, 12).unwrap();
            let b = green_value(&spec, &p, e, 24).unwrap();
            assert!(((a.value - b.value) / b.value).abs() < 1e-8, "{} {}", a.value, b.value);
            assert!(!b.flagged);
        }
        let a = kernel_value(&flat(), &p, 0.8, 12, 2.0).unwrap();
        let b = kernel_value(&flat(), &p, 0.8, 24, 2.0).unwrap();
        assert!(((a - b) / b).abs() < 1e-8);
    }

    #[test]
    fn kernel_decay_rate() {
        let spec =
            SpaceSpec::new(Space::KI { alpha: 0.1, beta: 0.0, gamma: 0.0, delta: 1.0, omega: 1.0, kx: 0.5, ky: 0.5 });
        let e = 1.0;
        let p = Points::new(1.0, 0.5, 1.5, 0.9);
        let k6 = kernel_value(&spec, &p, 6.0, 12, e).unwrap();
        let k8 = kernel_value(&spec, &p, 8.0, 12, e).unwrap();
        let pe = effective_params(&spec, e, None);
        let w = pe.omega_tilde.unwrap();
        let lambda_min = pe.kx_tilde.unwrap() + pe.ky_tilde.unwrap() + 1.0;
        let slope = (k6 / k8).ln() / 2.0;
        assert!((slope / (w * (lambda_min + 1.0)) - 1.0).abs() < 0.01, "{slope}");
        assert!(matches!(kernel_value(&spec, &p, 1e4, 12, e), Err(Error::Overflow(_))));
    }

    #[test]
    fn pole_scan_examples() {
        let s = SolverSettings::default();
        let spec = flat();
        let sp = enumerate_spectrum(&spec, 3, &s).unwrap();
        let rep = pole_scan(&spec, &P, (2.5, 3.5), 64, &sp);
        assert_eq!(rep.poles.len(), 1);
        assert!((rep.poles[0].energy - 3.0).abs() < 1e-12);
        assert_eq!(rep.poles[0].level.unwrap().principal(), 1.0);
        assert!(rep.passed());

        let spec = hydrogen();
        let sp = enumerate_spectrum(&spec, 3, &s).unwrap();
        let p = Points::new(1.0, 1.0, 2.0, 2.0);
        let rep = pole_scan(&spec, &p, (-0.3, -0.1), 64, &sp);
        assert!(rep.passed());
        assert_eq!(rep.poles.len(), 1);
        assert!((rep.poles[0].energy + 2.0 / 9.0).abs() < 1e-12);

        let rep = pole_scan(&flat(), &P, (3.2, 4.8), 64, &enumerate_spectrum(&flat(), 3, &s).unwrap());
        assert!(rep.poles.is_empty() && rep.missed_levels.is_empty());
    }

    #[test]
    fn residue_matches_quadrature_states() {
        let spec = flat();
        let sp = enumerate_spectrum(&spec, 2, &SolverSettings::default()).unwrap();
        let grid = GridSpec::Polar { r_max: 8.0, n_r: 128, n_angle: 128 };
        for e in [3.0, 5.0] {
            let c = residue_check(&spec, &P, e, &sp, &grid, 24).unwrap();
            assert!(c.relative_error < RESIDUE_TOLERANCE, "{c:?}");
        }
    }
}
