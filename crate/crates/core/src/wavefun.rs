//! Separated bound-state wavefunctions and their quadrature.
//!
//! `K_I` and `K_III` separate in polar coordinates (a Pöschl–Teller angular
//! factor times a radial oscillator or Coulomb factor), `K_II` in Cartesian
//! ones (singular oscillator in `x`, shifted oscillator in `y`). All indices
//! are evaluated at the level energy. States are normalized by quadrature
//! of `|Ψ|² f dA`, which is the inner product in which eigenstates of
//! `HΨ = E f Ψ` are orthogonal.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};
#[allow(unused_imports)] // unused when std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::model::{effective_params, metric_value, Constants, QuantumNumbers, Space, SpaceKind, SpaceSpec};
use crate::quad::{pairwise_sum, AxisRule};
use crate::quantize::EnergyLevel;
use crate::specfun::{log_gamma, orthopoly, OrthoFamily};

/// Normalized Pöschl–Teller state on `(0, π/2)`,
/// `C (sin u)^{a+½}(cos u)^{b+½} P_n^{(a,b)}(cos 2u)` with `∫Φ² du = 1`.
pub fn angular_pt(n: u32, a: f64, b: f64, u: f64) -> Result<f64> {
    if !(a > -0.5) {
        return Err(Error::Domain { what: "angular_pt a", value: a });
    }
    if !(b > -0.5) {
        return Err(Error::Domain { what: "angular_pt b", value: b });
    }
    if !(u > 0.0 && u < FRAC_PI_2) {
        return Err(Error::Domain { what: "angular_pt u", value: u });
    }
    let nf = f64::from(n);
    let log_c2 = 2f64.ln() + (2.0 * nf + a + b + 1.0).ln() + log_gamma(nf + 1.0)? + log_gamma(nf + a + b + 1.0)?
        - log_gamma(nf + a + 1.0)?
        - log_gamma(nf + b + 1.0)?;
    let (s, c) = u.sin_cos();
    let p = orthopoly(OrthoFamily::Jacobi { a, b }, n as usize, (2.0 * u).cos())?;
    Ok((0.5 * log_c2 + (a + 0.5) * s.ln() + (b + 0.5) * c.ln()).exp() * p)
}

/// One-dimensional radial or oscillator factors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadialBasis {
    /// Radial oscillator `−u″ + [s²r² + (λ²−¼)/r²]u = 2s(2n+λ+1)u`,
    /// normalized on `(0, ∞)`.
    Rho { lambda: f64, s: f64 },
    /// Oscillator state in `y` with `σ = mΩ/ℏ`, centred at `center`,
    /// normalized on the line.
    ShiftedHo { sigma: f64, center: f64 },
    /// Coulomb radial shape `ρ^λ e^{−ρ/2} L_n^{(2λ)}(ρ)`,
    /// `ρ = 2r/(a(n+λ+½))`, with the textbook prefactor
    /// `(n+λ+½)^{−1} √(n!/(aΓ(n+2λ+1)))`. Not normalized.
    Coulomb { lambda: f64, a: f64 },
}

pub fn radial_basis(basis: RadialBasis, n: u32, r: f64) -> Result<f64> {
    let nf = f64::from(n);
    match basis {
        RadialBasis::Rho { lambda, s } => {
            if !(lambda > -1.0) {
                return Err(Error::Domain { what: "rho lambda", value: lambda });
            }
            if !(s > 0.0) {
                return Err(Error::Domain { what: "rho scale", value: s });
            }
            if !(r > 0.0) {
                return Err(Error::Domain { what: "rho radius", value: r });
            }
            let z = s * r * r;
            let log_norm =
                0.5 * (2f64.ln() + log_gamma(nf + 1.0)? + (lambda + 1.0) * s.ln() - log_gamma(nf + lambda + 1.0)?);
            let l = orthopoly(OrthoFamily::Laguerre { alpha: lambda }, n as usize, z)?;
            Ok((log_norm + (lambda + 0.5) * r.ln() - 0.5 * z).exp() * l)
        }
        RadialBasis::ShiftedHo { sigma, center } => {
            if !(sigma > 0.0) {
                return Err(Error::Domain { what: "shifted_ho sigma", value: sigma });
            }
            // normalized Hermite functions by their own recurrence
            let xi = sigma.sqrt() * (r - center);
            let mut prev = 0.0;
            let mut cur = PI.powf(-0.25) * (-0.5 * xi * xi).exp();
            for k in 0..n {
                let kf = f64::from(k);
                let next = (2.0 / (kf + 1.0)).sqrt() * xi * cur - (kf / (kf + 1.0)).sqrt() * prev;
                prev = cur;
                cur = next;
            }
            Ok(sigma.powf(0.25) * cur)
        }
        RadialBasis::Coulomb { lambda, a } => {
            if !(lambda > -0.5) {
                return Err(Error::Domain { what: "coulomb lambda", value: lambda });
            }
            if !(a > 0.0) {
                return Err(Error::Domain { what: "coulomb length", value: a });
            }
            if !(r > 0.0) {
                return Err(Error::Domain { what: "coulomb radius", value: r });
            }
            let big_n = nf + lambda + 0.5;
            let rho = 2.0 * r / (a * big_n);
            let log_pref = -big_n.ln() + 0.5 * (log_gamma(nf + 1.0)? - a.ln() - log_gamma(nf + 2.0 * lambda + 1.0)?);
            let l = orthopoly(OrthoFamily::Laguerre { alpha: 2.0 * lambda }, n as usize, rho)?;
            Ok((log_pref + lambda * rho.ln() - 0.5 * rho).exp() * l)
        }
    }
}

/// Quadrature grid request. Polar grids cover `r ∈ (0, r_max]` and the
/// full angular range of the space (`(0, π/2)` for `K_I`, `(0, π)` for
/// `K_III`); Cartesian grids cover `x ∈ (0, x_max]`, `y ∈ [y_min, y_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridSpec {
    Polar { r_max: f64, n_r: usize, n_angle: usize },
    Cartesian { x_max: f64, y_min: f64, y_max: f64, n_x: usize, n_y: usize },
}

impl GridSpec {
    /// Default grid for a space: `points` Gauss nodes per axis.
    pub fn for_space(kind: SpaceKind, extent: f64, points: usize) -> Self {
        match kind {
            SpaceKind::KII => {
                GridSpec::Cartesian { x_max: extent, y_min: -extent, y_max: extent, n_x: points, n_y: points }
            }
            _ => GridSpec::Polar { r_max: extent, n_r: points, n_angle: points },
        }
    }
}

/// Tensor-product quadrature nodes.
#[derive(Debug, Clone, PartialEq)]
pub enum Coordinates {
    Polar { r: AxisRule, phi: AxisRule },
    Cartesian { x: AxisRule, y: AxisRule },
}

impl Coordinates {
    fn axes(&self) -> (&AxisRule, &AxisRule) {
        match self {
            Coordinates::Polar { r, phi } => (r, phi),
            Coordinates::Cartesian { x, y } => (x, y),
        }
    }

    /// Cartesian position of node `(i, j)`.
    pub fn point(&self, i: usize, j: usize) -> (f64, f64) {
        match self {
            Coordinates::Polar { r, phi } => {
                let (s, c) = phi.nodes[j].sin_cos();
                (r.nodes[i] * c, r.nodes[i] * s)
            }
            Coordinates::Cartesian { x, y } => (x.nodes[i], y.nodes[j]),
        }
    }

    /// Nodes of the two axes, `(coord1, coord2)` of node `(i, j)`.
    pub fn coords(&self, i: usize, j: usize) -> (f64, f64) {
        let (a, b) = self.axes();
        (a.nodes[i], b.nodes[j])
    }

    pub fn shape(&self) -> (usize, usize) {
        let (a, b) = self.axes();
        (a.len(), b.len())
    }

    /// Quadrature weight including the area element.
    fn weight(&self, i: usize, j: usize) -> f64 {
        match self {
            Coordinates::Polar { r, phi } => r.weights[i] * phi.weights[j] * r.nodes[i],
            Coordinates::Cartesian { x, y } => x.weights[i] * y.weights[j],
        }
    }
}

/// A sampled, normalized bound state. `values` and `f_weight` are stored
/// row-major: index `i·n2 + j` for node `(i, j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WavefunctionGrid {
    pub coordinates: Coordinates,
    pub values: Vec<f64>,
    pub f_weight: Vec<f64>,
    pub level: EnergyLevel,
    pub norm_estimate: f64,
    /// Share of the density in the outermost panel(s) of the window.
    pub boundary_fraction: f64,
    /// Factor applied to the raw separated product.
    pub norm_factor: f64,
}

impl WavefunctionGrid {
    /// The normalized state at an arbitrary point, in the grid's own
    /// coordinates (`(r, φ)` or `(x, y)`).
    pub fn value_at(&self, spec: &SpaceSpec, c1: f64, c2: f64) -> Result<f64> {
        let (f1, f2) = factor_fns(spec, &self.level)?;
        Ok(self.norm_factor * f1(c1)? * f2(c2)?)
    }

    /// The same normalized state sampled on another grid. The norm factor
    /// and boundary fraction are kept from `self`; `norm_estimate` is the
    /// quadrature on the new grid.
    pub fn resample(&self, spec: &SpaceSpec, grid: &GridSpec) -> Result<WavefunctionGrid> {
        let coords = coordinates(spec, grid)?;
        let (g1, g2) = factors(spec, &self.level, &coords)?;
        let (values, f_weight) = tensor(spec, &coords, &g1, &g2, self.norm_factor)?;
        let (norm_estimate, _) = density(&coords, &values, &f_weight);
        Ok(WavefunctionGrid { coordinates: coords, values, f_weight, norm_estimate, ..self.clone() })
    }
}

fn tensor(spec: &SpaceSpec, coords: &Coordinates, g1: &[f64], g2: &[f64], scale: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut values = Vec::with_capacity(g1.len() * g2.len());
    let mut f_weight = Vec::with_capacity(g1.len() * g2.len());
    for (i, a) in g1.iter().enumerate() {
        for (j, b) in g2.iter().enumerate() {
            let (x, y) = coords.point(i, j);
            values.push(scale * a * b);
            f_weight.push(metric_value(spec, x, y)?);
        }
    }
    Ok((values, f_weight))
}

/// Largest tolerated share of the density in the outer panels.
pub const BOUNDARY_TOLERANCE: f64 = 1e-8;

fn coordinates(spec: &SpaceSpec, grid: &GridSpec) -> Result<Coordinates> {
    match (spec.kind(), *grid) {
        (SpaceKind::KII, GridSpec::Cartesian { x_max, y_min, y_max, n_x, n_y }) => {
            if !(x_max > 0.0 && y_max > y_min) || n_x == 0 || n_y == 0 {
                return Err(Error::Degenerate("empty Cartesian grid"));
            }
            Ok(Coordinates::Cartesian {
                x: AxisRule::with_points(0.0, x_max, n_x),
                y: AxisRule::with_points(y_min, y_max, n_y),
            })
        }
        (kind @ (SpaceKind::KI | SpaceKind::KIII), GridSpec::Polar { r_max, n_r, n_angle }) => {
            if !(r_max > 0.0) || n_r == 0 || n_angle == 0 {
                return Err(Error::Degenerate("empty polar grid"));
            }
            let top = if kind == SpaceKind::KI { FRAC_PI_2 } else { PI };
            Ok(Coordinates::Polar {
                r: AxisRule::with_points(0.0, r_max, n_r),
                phi: AxisRule::with_points(0.0, top, n_angle),
            })
        }
        _ => Err(Error::PatternMismatch("grid type does not fit the space")),
    }
}

fn defined(v: Option<f64>, what: &'static str, energy: f64) -> Result<f64> {
    v.ok_or(Error::Domain { what, value: energy })
}

type Factor = Box<dyn Fn(f64) -> Result<f64>>;

/// Unnormalized separated factors of a level, one per axis.
fn factor_fns(spec: &SpaceSpec, level: &EnergyLevel) -> Result<(Factor, Factor)> {
    let e = level.energy;
    let Constants { m, hbar } = spec.constants;
    let p = effective_params(spec, e, Some(&level.qn));
    match (spec.space, level.qn) {
        (Space::KI { .. }, QuantumNumbers::KI { n_r, n_phi }) => {
            let w = defined(p.omega_tilde, "omega tilde", e)?;
            let kx = defined(p.kx_tilde, "kx tilde", e)?;
            let ky = defined(p.ky_tilde, "ky tilde", e)?;
            let lambda = defined(p.lambda, "lambda", e)?;
            let basis = RadialBasis::Rho { lambda, s: m * w / hbar };
            Ok((
                Box::new(move |r| Ok(radial_basis(basis, n_r, r)? / r.sqrt())),
                Box::new(move |phi| angular_pt(n_phi, ky, kx, phi)),
            ))
        }
        (Space::KII { ky_lin, gamma, .. }, QuantumNumbers::KII { n_x, n_y }) => {
            let w2 = defined(p.omega_tilde_sq.filter(|w2| *w2 > 0.0), "omega tilde", e)?;
            let w = w2.sqrt();
            let kx = defined(p.kx_tilde, "kx tilde", e)?;
            let xs = RadialBasis::Rho { lambda: kx, s: m * w / hbar };
            // minimum of 2mω̃²y² + (k_y − γE)y
            let center = -(ky_lin - gamma * e) / (4.0 * m * w2);
            let ys = RadialBasis::ShiftedHo { sigma: 2.0 * m * w / hbar, center };
            Ok((Box::new(move |x| radial_basis(xs, n_x, x)), Box::new(move |y| radial_basis(ys, n_y, y))))
        }
        (Space::KIII { .. }, QuantumNumbers::KIII { n_r, n_phi }) => {
            let k1 = defined(p.kx_tilde, "k1 tilde", e)?;
            let k2 = defined(p.ky_tilde, "k2 tilde", e)?;
            let lambda = defined(p.lambda, "lambda", e)?;
            let at = defined(p.alpha_tilde.filter(|a| *a > 0.0), "alpha tilde", e)?;
            let basis = RadialBasis::Coulomb { lambda, a: hbar * hbar / (m * at) };
            Ok((
                Box::new(move |r| radial_basis(basis, n_r, r)),
                Box::new(move |phi| angular_pt(n_phi, k2, k1, 0.5 * phi)),
            ))
        }
        _ => Err(Error::PatternMismatch("quantum numbers belong to another space")),
    }
}

/// Separated factors of a level sampled along the two axes.
fn factors(spec: &SpaceSpec, level: &EnergyLevel, coords: &Coordinates) -> Result<(Vec<f64>, Vec<f64>)> {
    let (f1, f2) = factor_fns(spec, level)?;
    let (ax1, ax2) = coords.axes();
    let g1 = ax1.nodes.iter().map(|&x| f1(x)).collect::<Result<Vec<_>>>()?;
    let g2 = ax2.nodes.iter().map(|&x| f2(x)).collect::<Result<Vec<_>>>()?;
    Ok((g1, g2))
}

/// Density integral over the whole grid and over its outer panels.
fn density(coords: &Coordinates, values: &[f64], f: &[f64]) -> (f64, f64) {
    let (n1, n2) = coords.shape();
    let (ax1, ax2) = coords.axes();
    let outer1 = n1 - ax1.order;
    let edge2 = matches!(coords, Coordinates::Cartesian { .. });
    let mut all = Vec::with_capacity(n1 * n2);
    let mut edge = Vec::new();
    for i in 0..n1 {
        for j in 0..n2 {
            let k = i * n2 + j;
            let d = coords.weight(i, j) * values[k] * values[k] * f[k];
            all.push(d);
            if i >= outer1 || (edge2 && (j < ax2.order || j >= n2 - ax2.order)) {
                edge.push(d);
            }
        }
    }
    (pairwise_sum(&all), pairwise_sum(&edge))
}

/// Samples the separated product of `level` on `grid` and scales it to
/// unit norm under the weight `f`.
pub fn assemble_and_normalize(spec: &SpaceSpec, level: &EnergyLevel, grid: &GridSpec) -> Result<WavefunctionGrid> {
    if level.qn.kind() != spec.kind() {
        return Err(Error::PatternMismatch("quantum numbers belong to another space"));
    }
    let coords = coordinates(spec, grid)?;
    let (g1, g2) = factors(spec, level, &coords)?;
    let (mut values, f_weight) = tensor(spec, &coords, &g1, &g2, 1.0)?;
    let (norm, edge) = density(&coords, &values, &f_weight);
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(Error::Degenerate("wavefunction density is not positive on the grid"));
    }
    let boundary_fraction = edge / norm;
    if boundary_fraction > BOUNDARY_TOLERANCE {
        return Err(Error::WindowTooSmall { boundary_fraction });
    }
    let scale = 1.0 / norm.sqrt();
    for v in &mut values {
        *v *= scale;
    }
    let (norm_estimate, _) = density(&coords, &values, &f_weight);
    Ok(WavefunctionGrid {
        coordinates: coords,
        values,
        f_weight,
        level: *level,
        norm_estimate,
        boundary_fraction,
        norm_factor: scale,
    })
}

/// `∫ Ψ₁Ψ₂ f dA` on a shared grid.
pub fn overlap(g1: &WavefunctionGrid, g2: &WavefunctionGrid, spec: &SpaceSpec) -> Result<f64> {
    if g1.coordinates != g2.coordinates || g1.values.len() != g2.values.len() {
        return Err(Error::GridMismatch);
    }
    let coords = &g1.coordinates;
    let (n1, n2) = coords.shape();
    let mut terms = Vec::with_capacity(n1 * n2);
    for i in 0..n1 {
        for j in 0..n2 {
            let k = i * n2 + j;
            let (x, y) = coords.point(i, j);
            let f = metric_value(spec, x, y)?;
            terms.push(coords.weight(i, j) * (g1.values[k] * g2.values[k]) * f);
        }
    }
    Ok(pairwise_sum(&terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::SolverSettings;
    use crate::quantize::{solve_level, Method};

    fn level(spec: &SpaceSpec, qn: QuantumNumbers) -> EnergyLevel {
        solve_level(spec, &qn, &SolverSettings::default()).unwrap().levels[0]
    }

    #[test]
    fn angular_examples() {
        let v = angular_pt(0, 0.5, 0.5, PI / 4.0).unwrap();
        assert!((v - 2.0 / PI.sqrt()).abs() < 1e-14);
        assert!((v - 1.1283792).abs() < 1e-7);
        assert!(angular_pt(2, 0.7, 1.3, 1e-9).unwrap().abs() < 1e-8);
        let rule = AxisRule::with_points(0.0, FRAC_PI_2, 256);
        let o = rule.integrate(|u| angular_pt(0, 0.5, 0.5, u).unwrap() * angular_pt(1, 0.5, 0.5, u).unwrap());
        assert!(o.abs() < 1e-10);
        for u in [0.0, FRAC_PI_2, -0.1, 2.0] {
            assert!(matches!(angular_pt(0, 0.5, 0.5, u), Err(Error::Domain { .. })));
        }
    }

    #[test]
    fn angular_normalized() {
        let rule = AxisRule::with_points(0.0, FRAC_PI_2, 512);
        // half-integer indices keep the integrand smooth at the walls
        for (n, a, b) in [(0, 0.5, 0.5), (3, 1.5, 0.5), (5, 2.5, 0.0)] {
            let s = rule.integrate(|u| angular_pt(n, a, b, u).unwrap().powi(2));
            assert!((s - 1.0).abs() < 1e-12, "{n} {a} {b}: {s}");
        }
        // u^{1.8} at the wall limits Gauss–Legendre to ~1e-10 here
        let s = rule.integrate(|u| angular_pt(3, 1.2, 0.4, u).unwrap().powi(2));
        assert!((s - 1.0).abs() < 1e-9, "{s}");
    }

    #[test]
    fn radial_examples() {
        let rho = RadialBasis::Rho { lambda: 1.0, s: 1.0 };
        let v = radial_basis(rho, 0, 1.0).unwrap();
        assert!((v - 2f64.sqrt() * (-0.5f64).exp()).abs() < 1e-14);
        assert!((v - 0.8577639).abs() < 1e-7);

        // ω̃ = 0.7, m = ℏ = 1: σ = 2mω̃/ℏ
        let w = 0.7;
        let ho = RadialBasis::ShiftedHo { sigma: 2.0 * w, center: 0.3 };
        let peak = radial_basis(ho, 0, 0.3).unwrap();
        assert!((peak - (2.0 * w / PI).powf(0.25)).abs() < 1e-14);
        for d in [0.1, 0.9, 2.0] {
            for n in 0..4 {
                let l = radial_basis(ho, n, 0.3 - d).unwrap();
                let r = radial_basis(ho, n, 0.3 + d).unwrap();
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                assert!((l - sign * r).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn coulomb_extremum() {
        // n = 0: r·R peaks at a(λ+½)(λ+1)
        let (lambda, a) = (1.3, 0.8);
        let basis = RadialBasis::Coulomb { lambda, a };
        let h = 1e-3;
        let rs: Vec<f64> = (1..20000).map(|k| k as f64 * h).collect();
        let vals: Vec<f64> = rs.iter().map(|&r| r * radial_basis(basis, 0, r).unwrap()).collect();
        let k = (1..vals.len() - 1).find(|&k| vals[k] >= vals[k - 1] && vals[k] >= vals[k + 1]).unwrap();
        let expected = a * (lambda + 0.5) * (lambda + 1.0);
        assert!((rs[k] - expected).abs() <= h, "{} vs {expected}", rs[k]);
    }

    #[test]
    fn radial_domain_errors() {
        assert!(radial_basis(RadialBasis::Rho { lambda: -1.0, s: 1.0 }, 0, 1.0).is_err());
        assert!(radial_basis(RadialBasis::Rho { lambda: 1.0, s: 0.0 }, 0, 1.0).is_err());
        assert!(radial_basis(RadialBasis::Rho { lambda: 1.0, s: 1.0 }, 0, 0.0).is_err());
        assert!(radial_basis(RadialBasis::ShiftedHo { sigma: -1.0, center: 0.0 }, 0, 1.0).is_err());
        assert!(radial_basis(RadialBasis::Coulomb { lambda: -0.5, a: 1.0 }, 0, 1.0).is_err());
        assert!(radial_basis(RadialBasis::Coulomb { lambda: 1.0, a: -1.0 }, 0, 1.0).is_err());
    }

    fn flat_ki() -> SpaceSpec {
        SpaceSpec::new(Space::KI { alpha: 0.0, beta: 0.0, gamma: 0.0, delta: 1.0, omega: 1.0, kx: 0.5, ky: 0.5 })
    }

    #[test]
    fn flat_ki_ground_state_norm() {
        let spec = flat_ki();
        let lv = level(&spec, QuantumNumbers::KI { n_r: 0, n_phi: 0 });
        assert!((lv.energy - 3.0).abs() < 1e-12);
        let g = assemble_and_normalize(&spec, &lv, &GridSpec::Polar { r_max: 8.0, n_r: 256, n_angle: 256 }).unwrap();
        assert!((g.norm_estimate - 1.0).abs() < 1e-6);
        assert!((overlap(&g, &g, &spec).unwrap() - 1.0).abs() < 1e-6);
        // rows and columns next to r = 0 and the angular walls are small
        let (n1, n2) = g.coordinates.shape();
        let max = g.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for j in 0..n2 {
            assert!(g.values[j].abs() < 1e-4 * max);
        }
        for i in 0..n1 {
            assert!(g.values[i * n2].abs() < 1e-2 * max);
            assert!(g.values[i * n2].abs() < g.values[i * n2 + 1].abs() + f64::MIN_POSITIVE);
            assert!(g.values[i * n2 + n2 - 1].abs() < 1e-2 * max);
        }
    }

    #[test]
    fn hydrogenlike_norm() {
        let spec = SpaceSpec::new(Space::KIII {
            alpha1: 0.0,
            beta: 0.0,
            gamma: 0.0,
            delta: 1.0,
            alpha2: 1.0,
            k1: 0.5,
            k2: 0.5,
        });
        let lv = level(&spec, QuantumNumbers::KIII { n_r: 0, n_phi: 0 });
        assert!((lv.energy + 2.0 / 9.0).abs() < 1e-12);
        let g = assemble_and_normalize(&spec, &lv, &GridSpec::Polar { r_max: 60.0, n_r: 256, n_angle: 256 }).unwrap();
        assert!((g.norm_estimate - 1.0).abs() < 1e-6);
    }

    #[test]
    fn curved_ki_orthogonal_levels() {
        let spec =
            SpaceSpec::new(Space::KI { alpha: 0.1, beta: 0.0, gamma: 0.0, delta: 1.0, omega: 1.0, kx: 0.5, ky: 0.5 });
        let grid = GridSpec::Polar { r_max: 10.0, n_r: 256, n_angle: 256 };
        let g1 = assemble_and_normalize(&spec, &level(&spec, QuantumNumbers::KI { n_r: 0, n_phi: 0 }), &grid).unwrap();
        let g2 = assemble_and_normalize(&spec, &level(&spec, QuantumNumbers::KI { n_r: 1, n_phi: 0 }), &grid).unwrap();
        let o = overlap(&g1, &g2, &spec).unwrap();
        assert!(o.abs() < 1e-6, "{o}");
        assert_eq!(o.to_bits(), overlap(&g2, &g1, &spec).unwrap().to_bits());
    }

    #[test]
    fn window_too_small_and_mismatch() {
        let spec = flat_ki();
        let lv = level(&spec, QuantumNumbers::KI { n_r: 0, n_phi: 0 });
        let small = assemble_and_normalize(&spec, &lv, &GridSpec::Polar { r_max: 2.0, n_r: 64, n_angle: 32 });
        assert!(matches!(small, Err(Error::WindowTooSmall { .. })));
        let a = assemble_and_normalize(&spec, &lv, &GridSpec::Polar { r_max: 8.0, n_r: 64, n_angle: 32 }).unwrap();
        let b = assemble_and_normalize(&spec, &lv, &GridSpec::Polar { r_max: 9.0, n_r: 64, n_angle: 32 }).unwrap();
        assert_eq!(overlap(&a, &b, &spec), Err(Error::GridMismatch));
        let cart = GridSpec::Cartesian { x_max: 5.0, y_min: -5.0, y_max: 5.0, n_x: 16, n_y: 16 };
        assert!(matches!(assemble_and_normalize(&spec, &lv, &cart), Err(Error::PatternMismatch(_))));
    }

    #[test]
    fn kii_state_normalizes() {
        let spec = SpaceSpec::new(Space::KII {
            alpha: 0.05,
            beta: 0.02,
            gamma: 0.1,
            delta: 1.0,
            omega: 1.0,
            kx: 0.8,
            ky_lin: 0.4,
        });
        let lv = level(&spec, QuantumNumbers::KII { n_x: 1, n_y: 1 });
        assert_eq!(lv.method, Method::Bracketing);
        let grid = GridSpec::Cartesian { x_max: 8.0, y_min: -6.0, y_max: 6.0, n_x: 192, n_y: 192 };
        let g = assemble_and_normalize(&spec, &lv, &grid).unwrap();
        assert!((g.norm_estimate - 1.0).abs() < 1e-6);
    }
}
