//! Radical elimination: the conjugate product of a quantization condition
//! over every sign branch of its square roots is a polynomial in `E`.
//! It is sampled at Chebyshev nodes (complex arithmetic, so negative
//! radicands are harmless), interpolated, and its real roots are found by
//! bracketing between the critical points of the derivative chain.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)] // unused when std is linked
use num_traits::Float;

use super::{condition_value, search_window, solve_level, EnergyLevel, Method};
use crate::error::{Error, Result};
use crate::model::{physical_energy_domain, Constants, QuantumNumbers, SolverSettings, Space, SpaceSpec};

/// Largest degree the interpolation is prepared for.
pub const MAX_DEGREE: usize = 10;
const NODES: usize = MAX_DEGREE + 3;
/// Chebyshev coefficients below this fraction of the largest are noise.
const DEGREE_CUTOFF: f64 = 1e-10;

/// Real polynomial from radical elimination.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PolynomialForm {
    /// Ascending coefficients in `E`.
    pub coefficients: Vec<f64>,
    /// Ascending coefficients in `t = E/scale`; better conditioned.
    pub scaled_coefficients: Vec<f64>,
    pub scale: f64,
    pub declared_degree: usize,
    /// Largest discarded imaginary part, relative to the largest sample.
    pub max_imag_residue: f64,
    /// Energies at which the conjugate product was sampled.
    pub sample_nodes: Vec<f64>,
}

impl PolynomialForm {
    /// Builds a form from plain ascending coefficients (unit scale).
    pub fn from_coefficients(coefficients: Vec<f64>) -> Self {
        let declared_degree = trimmed_degree(&coefficients, 0.0);
        PolynomialForm {
            scaled_coefficients: coefficients.clone(),
            coefficients,
            scale: 1.0,
            declared_degree,
            max_imag_residue: 0.0,
            sample_nodes: Vec::new(),
        }
    }

    pub fn eval(&self, energy: f64) -> f64 {
        horner(&self.scaled_coefficients[..=self.declared_degree], energy / self.scale)
    }
}

fn trimmed_degree(c: &[f64], rel: f64) -> usize {
    let max = c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    c.iter().rposition(|v| v.abs() > rel * max).unwrap_or(0)
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

/// `Σ|c_k||x|^k`, the scale of rounding errors in [`horner`].
fn horner_abs(c: &[f64], x: f64) -> f64 {
    let ax = x.abs();
    c.iter().rev().fold(0.0, |acc, &a| acc * ax + a.abs())
}

fn csqrt(v: f64) -> Complex64 {
    Complex64::new(v, 0.0).sqrt()
}

const SIGNS: [f64; 2] = [1.0, -1.0];

/// The conjugate product at `center + d`. Every linear piece is expanded
/// about `center`, so near a branch point the small radicand comes out
/// smooth in `d` instead of as the rounding residue of a cancellation.
fn conjugate_product_near(spec: &SpaceSpec, qn: &QuantumNumbers, center: f64, d: f64) -> Complex64 {
    let Constants { m, hbar } = spec.constants;
    let n = qn.principal();
    let h2 = hbar * hbar;
    // a − b·E about the center
    let lin = |a: f64, b: f64| (a - b * center) - b * d;
    let e = center + d;
    let mut prod = Complex64::new(1.0, 0.0);
    match spec.space {
        Space::KI { alpha, beta, gamma, delta, omega, kx, ky } => {
            let w = csqrt(lin(omega * omega, 2.0 * alpha / m));
            let x = csqrt(lin(kx * kx, 2.0 * m * beta / h2));
            let y = csqrt(lin(ky * ky, 2.0 * m * gamma / h2));
            for sw in SIGNS {
                for sx in SIGNS {
                    for sy in SIGNS {
                        prod *= delta * e - sw * hbar * w * (2.0 * n + sx * x + sy * y);
                    }
                }
            }
        }
        Space::KII { alpha, beta, gamma, delta, omega, kx, ky_lin } => {
            // 8mω̃²·F, so the 1/ω̃² is cleared
            let w2 = lin(omega * omega, 2.0 * alpha / m);
            let w = csqrt(w2);
            let x = csqrt(lin(kx * kx, 2.0 * m * beta / h2));
            let c = lin(ky_lin, gamma);
            let lead = 8.0 * m * w2 * delta * e - c * c;
            for sw in SIGNS {
                for sx in SIGNS {
                    prod *= lead - 8.0 * m * hbar * w2 * sw * w * (n + sx * x);
                }
            }
        }
        Space::KIII { alpha1, beta, gamma, delta, alpha2, k1, k2 } => {
            // √(−2δE/m)·F, so the 1/√E is cleared
            let q = csqrt(lin(0.0, 2.0 * delta / m));
            let x = csqrt(lin(k1 * k1, 2.0 * m * beta / h2));
            let y = csqrt(lin(k2 * k2, 2.0 * m * gamma / h2));
            let a = lin(alpha2, alpha1) / hbar;
            for sq in SIGNS {
                for sx in SIGNS {
                    for sy in SIGNS {
                        prod *= a - sq * q * (n + 0.5 * sx * x + 0.5 * sy * y);
                    }
                }
            }
        }
    }
    prod
}

/// Energy scale used to map the sample nodes: the root search window when
/// there is one, otherwise a natural unit of the spec.
fn elimination_scale(spec: &SpaceSpec, qn: &QuantumNumbers) -> Result<f64> {
    if let Some(w) = search_window(spec, qn)? {
        let s = 1.1 * w.lo.abs().max(w.hi.abs());
        if s.is_finite() && s > 0.0 {
            return Ok(s);
        }
    }
    let Constants { m, hbar } = spec.constants;
    let n = qn.principal();
    let d = spec.delta().abs();
    let s = match spec.space {
        Space::KI { omega, kx, ky, .. } => hbar * omega * (2.0 * n + kx + ky) / d,
        Space::KII { omega, kx, .. } => hbar * omega * (n + kx) / d,
        Space::KIII { alpha2, .. } => m * alpha2 * alpha2 / (2.0 * d * hbar * hbar * n * n),
    };
    Ok(if s.is_finite() && s > 0.0 { s } else { 1.0 })
}

/// Algebraic degree of the conjugate product in every space.
const FULL_DEGREE: usize = 8;
const WIDEN_STEPS: i32 = 8;

/// Polynomial whose real roots contain every root of the condition.
pub fn eliminate_radicals(spec: &SpaceSpec, qn: &QuantumNumbers) -> Result<PolynomialForm> {
    if qn.kind() != spec.kind() {
        return Err(Error::PatternMismatch("quantum numbers belong to another space"));
    }
    if spec.delta() == 0.0 {
        return Err(Error::Degenerate("delta must be nonzero"));
    }
    let mut h = elimination_scale(spec, qn)?;
    let mut fit = interpolate(spec, qn, 0.0, h, DEGREE_CUTOFF, NODES - 1)?;
    // Far roots leave the top coefficients under the cutoff on a small
    // interval; widen until the full degree shows.
    for k in 1..=WIDEN_STEPS {
        if fit.scaled.len() - 1 >= FULL_DEGREE {
            break;
        }
        let wide = h * 10f64.powi(k);
        if let Ok(f) = interpolate(spec, qn, 0.0, wide, DEGREE_CUTOFF, NODES - 1) {
            if f.scaled.len() > fit.scaled.len() {
                fit = f;
                h = wide;
            }
        }
    }
    if fit.scaled.len() - 1 > MAX_DEGREE {
        return Err(Error::Degenerate("conjugate product exceeds the supported degree"));
    }
    let degree = fit.scaled.len() - 1;
    let coefficients = fit.scaled.iter().enumerate().map(|(k, c)| c / h.powi(k as i32)).collect();
    Ok(PolynomialForm {
        coefficients,
        scaled_coefficients: fit.scaled,
        scale: h,
        declared_degree: degree,
        max_imag_residue: fit.max_imag,
        sample_nodes: fit.nodes,
    })
}

struct Fit {
    /// Ascending monomial coefficients in `t = (E − center)/half`.
    scaled: Vec<f64>,
    max_imag: f64,
    nodes: Vec<f64>,
}

/// Chebyshev interpolation of the conjugate product on `center ± half`.
fn interpolate(spec: &SpaceSpec, qn: &QuantumNumbers, center: f64, half: f64, cutoff: f64, cap: usize) -> Result<Fit> {
    let xs: Vec<f64> = (0..NODES).map(|j| (PI * (j as f64 + 0.5) / NODES as f64).cos()).collect();
    let mut values = Vec::with_capacity(NODES);
    let mut max_abs = 0.0f64;
    let mut max_imag = 0.0f64;
    for &x in &xs {
        let v = conjugate_product_near(spec, qn, center, half * x);
        max_abs = max_abs.max(v.norm());
        max_imag = max_imag.max(v.im.abs());
        values.push(v.re);
    }
    if max_abs == 0.0 || !max_abs.is_finite() {
        return Err(Error::Degenerate("conjugate product vanishes or overflows on the sample nodes"));
    }
    // Chebyshev coefficients by the discrete orthogonality of T_k at the nodes
    let mut cheb = vec![0.0; NODES];
    for (k, ck) in cheb.iter_mut().enumerate() {
        let mut s = 0.0;
        for (j, v) in values.iter().enumerate() {
            s += v * (PI * k as f64 * (j as f64 + 0.5) / NODES as f64).cos();
        }
        *ck = 2.0 * s / NODES as f64;
    }
    cheb[0] *= 0.5;
    // past `cap` the coefficients are rounding noise
    let degree = trimmed_degree(&cheb[..=cap], cutoff);
    if degree == 0 {
        return Err(Error::Degenerate("conjugate product is constant in E"));
    }
    // T_k as monomials in t, accumulated
    let mut scaled = vec![0.0; degree + 1];
    let mut t_prev = vec![0.0; degree + 1];
    let mut t_cur = vec![0.0; degree + 1];
    t_prev[0] = 1.0;
    t_cur[1] = 1.0;
    for (k, &ck) in cheb.iter().enumerate().take(degree + 1) {
        let basis = if k == 0 { &t_prev } else { &t_cur };
        for (s, b) in scaled.iter_mut().zip(basis.iter()) {
            *s += ck * b;
        }
        if k >= 1 && k < degree {
            let mut next = vec![0.0; degree + 1];
            for i in 0..degree {
                next[i + 1] += 2.0 * t_cur[i];
            }
            for (nx, p) in next.iter_mut().zip(t_prev.iter()) {
                *nx -= p;
            }
            t_prev = core::mem::replace(&mut t_cur, next);
        }
    }
    Ok(Fit { scaled, max_imag: max_imag / max_abs, nodes: xs.iter().map(|x| center + half * x).collect() })
}

/// Real roots of a local fit on `center ± half`, inside that window.
/// Degrees beyond `cap` are rounding noise here and are dropped.
fn local_roots(spec: &SpaceSpec, qn: &QuantumNumbers, center: f64, half: f64, cap: usize) -> Vec<f64> {
    let Ok(fit) = interpolate(spec, qn, center, half, 1e-13, cap) else {
        return Vec::new();
    };
    real_roots_rec(&fit.scaled).into_iter().filter(|r| r.value.abs() <= 1.0).map(|r| center + half * r.value).collect()
}

/// Energies where one of the radicands vanishes. Roots crowd next to
/// these (as the root of a small `ω̃`, say), so they get nested zooms.
fn branch_points(spec: &SpaceSpec) -> Vec<f64> {
    let Constants { m, hbar } = spec.constants;
    let h2 = hbar * hbar;
    // radicand a − b·E vanishes at a/b
    let pairs: Vec<(f64, f64)> = match spec.space {
        Space::KI { alpha, beta, gamma, omega, kx, ky, .. } => {
            vec![(omega * omega, 2.0 * alpha / m), (kx * kx, 2.0 * m * beta / h2), (ky * ky, 2.0 * m * gamma / h2)]
        }
        Space::KII { alpha, beta, omega, kx, .. } => {
            vec![(omega * omega, 2.0 * alpha / m), (kx * kx, 2.0 * m * beta / h2)]
        }
        Space::KIII { beta, gamma, k1, k2, .. } => {
            vec![(0.0, 1.0), (k1 * k1, 2.0 * m * beta / h2), (k2 * k2, 2.0 * m * gamma / h2)]
        }
    };
    pairs.into_iter().filter(|&(_, b)| b != 0.0).map(|(a, b)| a / b).filter(|e| e.is_finite()).collect()
}

/// Depth of the nested zooms around branch points (factor 10 each).
const ZOOM_LEVELS: i32 = 16;

const MAX_CLUSTER_DEPTH: usize = 12;

/// Roots in a cluster closer than this (relative to the scale) are
/// resolved again on a local interpolation.
const CLUSTER_GAP: f64 = 1e-3;

/// Re-interpolates around groups of nearby roots. A global fit only holds
/// the polynomial to rounding of its largest value, which cannot separate
/// roots packed next to a branch point; on a small window the values are
/// small too and the cluster spreads over the whole interval.
/// Windows nest until the cluster separates or the depth runs out.
fn resolve_clusters(
    spec: &SpaceSpec,
    qn: &QuantumNumbers,
    roots: &[f64],
    scale: f64,
    cap: usize,
    depth: usize,
) -> Vec<f64> {
    let mut out = Vec::with_capacity(roots.len());
    let mut i = 0;
    while i < roots.len() {
        let mut j = i;
        while j + 1 < roots.len() && roots[j + 1] - roots[j] < CLUSTER_GAP * scale {
            j += 1;
        }
        if j == i || depth >= MAX_CLUSTER_DEPTH {
            out.extend_from_slice(&roots[i..=j]);
        } else {
            let (a, b) = (roots[i], roots[j]);
            let center = 0.5 * (a + b);
            let half = (2.0 * (b - a)).max(64.0 * f64::EPSILON * center.abs());
            let rs = local_roots(spec, qn, center, half, cap);
            match rs.len() >= j - i + 1 {
                true => out.extend(resolve_clusters(spec, qn, &rs, half, cap, depth + 1)),
                false => out.extend_from_slice(&roots[i..=j]),
            }
        }
        i = j + 1;
    }
    out
}

/// A real root and its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PolyRoot {
    pub value: f64,
    pub multiplicity: usize,
}

fn derivative(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(k, v)| k as f64 * v).collect()
}

fn bisect_poly(c: &[f64], mut lo: f64, mut hi: f64) -> f64 {
    let mut f_lo = horner(c, lo);
    for _ in 0..2200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = horner(c, mid);
        if v == 0.0 {
            return mid;
        }
        if (v < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = v;
        } else {
            hi = mid;
        }
    }
    if horner(c, lo).abs() <= horner(c, hi).abs() {
        lo
    } else {
        hi
    }
}

/// Whether `p(x)` is indistinguishable from zero at rounding level.
fn is_numerical_zero(c: &[f64], x: f64) -> bool {
    let d = c.len().max(1) as f64;
    horner(c, x).abs() <= 64.0 * d * f64::EPSILON * horner_abs(c, x)
}

/// Real roots of `c` (ascending, nonzero leading coefficient), sorted.
fn real_roots_rec(c: &[f64]) -> Vec<PolyRoot> {
    let d = c.len() - 1;
    if d == 0 {
        return Vec::new();
    }
    if d == 1 {
        return vec![PolyRoot { value: -c[0] / c[1], multiplicity: 1 }];
    }
    let lead = c[d];
    let bound = 1.0 + c[..d].iter().fold(0.0f64, |m, v| m.max((v / lead).abs()));
    let crit = real_roots_rec(&derivative(c));
    let mut knots: Vec<(f64, usize)> = vec![(-bound, 0)];
    for r in &crit {
        if r.value > -bound && r.value < bound {
            knots.push((r.value, r.multiplicity));
        }
    }
    knots.push((bound, 0));
    let mut out = Vec::new();
    let zero_at: Vec<bool> = knots.iter().map(|&(x, mult)| mult > 0 && is_numerical_zero(c, x)).collect();
    for (i, &(x, mult)) in knots.iter().enumerate() {
        if zero_at[i] {
            out.push(PolyRoot { value: x, multiplicity: mult + 1 });
        }
        if let Some(&(x2, _)) = knots.get(i + 1) {
            if zero_at[i] || zero_at[i + 1] {
                continue;
            }
            let (a, b) = (horner(c, x), horner(c, x2));
            if a == 0.0 {
                if i == 0 {
                    out.push(PolyRoot { value: x, multiplicity: 1 });
                }
                continue;
            }
            if b == 0.0 {
                out.push(PolyRoot { value: x2, multiplicity: 1 });
                continue;
            }
            if (a < 0.0) != (b < 0.0) {
                out.push(PolyRoot { value: bisect_poly(c, x, x2), multiplicity: 1 });
            }
        }
    }
    out.sort_by(|a, b| a.value.total_cmp(&b.value));
    out
}

/// Tolerance (relative to the scale) for merging near-coincident roots.
const MERGE_TOL: f64 = 1e-9;

/// All real roots with multiplicity; roots closer than `1e-9·scale` merged.
pub fn poly_real_roots(p: &PolynomialForm) -> Result<Vec<PolyRoot>> {
    if p.declared_degree == 0 {
        return Err(Error::Degenerate("polynomial of degree zero has no roots"));
    }
    let c = &p.scaled_coefficients[..=p.declared_degree];
    if c[p.declared_degree] == 0.0 {
        return Err(Error::Degenerate("leading coefficient vanishes"));
    }
    let roots = real_roots_rec(c);
    let mut merged: Vec<PolyRoot> = Vec::with_capacity(roots.len());
    for r in roots {
        match merged.last_mut() {
            Some(last) if (r.value - last.value).abs() < MERGE_TOL => {
                last.multiplicity += r.multiplicity;
            }
            _ => merged.push(r),
        }
    }
    let max_coef = c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    for r in &merged {
        let resid = horner(c, r.value).abs();
        let allowed = 1e-8 * max_coef * r.value.abs().max(1.0).powi(p.declared_degree as i32);
        if !(resid < allowed) {
            return Err(Error::NotConverged { what: "poly_real_roots residual", iterations: 0 });
        }
    }
    Ok(merged.into_iter().map(|r| PolyRoot { value: r.value * p.scale, ..r }).collect())
}

/// Refines a root of the interpolated coefficients against the conjugate
/// product itself, which evaluates the same polynomial in factored form
/// without the coefficient rounding. Roots in tight clusters (next to a
/// branch point of `ω̃`, say) move noticeably; isolated roots barely do.
fn polish_root(spec: &SpaceSpec, qn: &QuantumNumbers, r: f64, scale: f64) -> f64 {
    // offsets from r, evaluated about r
    let q = |d: f64| conjugate_product_near(spec, qn, r, d).re;
    let q0 = q(0.0);
    if q0 == 0.0 || !q0.is_finite() {
        return r;
    }
    let mut rho = 1e-14 * if r == 0.0 { scale } else { r.abs() };
    while rho < 1e-2 * scale {
        for side in [-1.0, 1.0] {
            let x = side * rho;
            let v = q(x);
            if v.is_finite() && (v < 0.0) != (q0 < 0.0) {
                let (mut lo, mut hi) = if side < 0.0 { (x, 0.0) } else { (0.0, x) };
                let mut f_lo = q(lo);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi || r + lo == r + hi {
                        break;
                    }
                    let vm = q(mid);
                    if vm == 0.0 {
                        return r + mid;
                    }
                    if (vm < 0.0) == (f_lo < 0.0) {
                        lo = mid;
                        f_lo = vm;
                    } else {
                        hi = mid;
                    }
                }
                return r + 0.5 * (lo + hi);
            }
        }
        rho *= 2.0;
    }
    r
}

/// Outcome of comparing the bracketing and the polynomial routes.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossValidation {
    pub polynomial: PolynomialForm,
    /// `(bracketing root, polynomial root)` pairs.
    pub matched: Vec<(f64, f64)>,
    /// Polynomial roots that fail the domain or residual filter.
    pub spurious: Vec<f64>,
    /// Physical polynomial roots with no bracketing counterpart.
    pub extra_physical: Vec<f64>,
    /// Bracketing roots with no polynomial counterpart (a failure).
    pub unmatched: Vec<f64>,
    /// Largest move of a root during polishing, relative to the scale.
    pub max_polish_shift: f64,
}

impl CrossValidation {
    pub fn passed(&self) -> bool {
        self.unmatched.is_empty()
    }

    /// Physical polynomial roots as levels.
    pub fn polynomial_levels(&self, spec: &SpaceSpec, qn: &QuantumNumbers) -> Vec<EnergyLevel> {
        self.matched
            .iter()
            .map(|&(_, e)| EnergyLevel {
                energy: e,
                qn: *qn,
                residual: condition_value(spec, qn, e).map(f64::abs).unwrap_or(f64::NAN),
                bracket: (e, e),
                method: Method::Polynomial,
            })
            .collect()
    }
}

/// Residual filter for polynomial roots.
const ROOT_RESIDUAL: f64 = 1e-8;
/// Relative agreement required between the two routes.
const MATCH_TOL: f64 = 1e-8;

/// Both routes side by side; never fails on a mismatch.
pub fn cross_validation_report(
    spec: &SpaceSpec,
    qn: &QuantumNumbers,
    settings: &SolverSettings,
) -> Result<CrossValidation> {
    let bracketing = solve_level(spec, qn, settings)?;
    let polynomial = eliminate_radicals(spec, qn)?;
    let roots = poly_real_roots(&polynomial)?;
    let domain = physical_energy_domain(spec);
    let mut physical = Vec::new();
    let mut spurious = Vec::new();
    let mut max_polish_shift = 0.0f64;
    let raw: Vec<f64> = roots.iter().map(|r| r.value).collect();
    let scale = elimination_scale(spec, qn)?;
    let cap = polynomial.declared_degree;
    let mut candidates = resolve_clusters(spec, qn, &raw, scale, cap, 0);
    if polynomial.scale != scale {
        let rs = local_roots(spec, qn, 0.0, scale, cap);
        candidates.extend(resolve_clusters(spec, qn, &rs, scale, cap, 0));
    }
    for b in branch_points(spec) {
        if b.abs() > 10.0 * scale {
            continue;
        }
        for k in 1..=ZOOM_LEVELS {
            let half = scale * 10f64.powi(-k);
            let rs = local_roots(spec, qn, b, half, cap);
            candidates.extend(resolve_clusters(spec, qn, &rs, half, cap, 0));
        }
    }
    let mut polished: Vec<f64> = Vec::with_capacity(candidates.len());
    for r in candidates {
        let e = polish_root(spec, qn, r, scale);
        max_polish_shift = max_polish_shift.max((e - r).abs() / scale);
        if polished.iter().any(|p| (p - e).abs() <= 1e-12 * e.abs()) {
            continue;
        }
        polished.push(e);
        let inside = domain.iter().any(|iv| iv.contains(e));
        let ok = inside && condition_value(spec, qn, e).map(|v| v.abs() < ROOT_RESIDUAL).unwrap_or(false);
        if ok {
            physical.push(e);
        } else {
            spurious.push(e);
        }
    }
    let mut matched = Vec::new();
    let mut unmatched = Vec::new();
    let mut used = vec![false; physical.len()];
    for level in &bracketing.levels {
        let e = level.energy;
        let best = physical
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .min_by(|a, b| (a.1 - e).abs().total_cmp(&(b.1 - e).abs()));
        match best {
            Some((i, &p)) if (p - e).abs() <= MATCH_TOL * e.abs().max(f64::MIN_POSITIVE) => {
                used[i] = true;
                matched.push((e, p));
            }
            _ => unmatched.push(e),
        }
    }
    let extra_physical = physical.iter().zip(used.iter()).filter(|(_, u)| !**u).map(|(p, _)| *p).collect();
    Ok(CrossValidation { polynomial, matched, spurious, extra_physical, unmatched, max_polish_shift })
}

/// [`cross_validation_report`], failing when a bracketing root is unmatched.
pub fn cross_validate(spec: &SpaceSpec, qn: &QuantumNumbers, settings: &SolverSettings) -> Result<CrossValidation> {
    let report = cross_validation_report(spec, qn, settings)?;
    if report.passed() {
        Ok(report)
    } else {
        Err(Error::UnmatchedRoots(report.unmatched))
    }
}
