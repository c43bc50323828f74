//! The subcommands, as functions from a validated config to output text.

use std::f64::consts::{FRAC_PI_2, PI};

use koenigs::green::{self, gamma_argument, green_value, pole_scan, Points};
use koenigs::model::darboux_classify;
use koenigs::quantize::{
    closed_form_special, coulomb_asymptote, cross_validation_report, enumerate_spectrum, printed_energy_kii,
    printed_quadratic_kiii, solve_level, SpecialCase,
};
use koenigs::wavefun::{assemble_and_normalize, GridSpec};
use koenigs::{Error, QuantumNumbers, Space, SpaceKind, SpaceSpec};

use crate::config::RunConfig;
use crate::output::{real, spectrum_csv, spectrum_json, wavefunction_csv};
use crate::{CliError, Format};

pub fn spectrum(cfg: &RunConfig, qn_bound: u32, format: Format) -> Result<String, CliError> {
    let sp = enumerate_spectrum(&cfg.spec, qn_bound, &cfg.solver)?;
    for w in &sp.warnings {
        eprintln!("warning: {w}");
    }
    match format {
        Format::Csv => Ok(spectrum_csv(&sp)),
        Format::Json => spectrum_json(&sp).map_err(|e| CliError::solver(e.to_string())),
    }
}

pub fn parse_grid(text: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::config(format!("grid must look like NxM with positive integers, got `{text}`"));
    let (a, b) = text.split_once(['x', 'X']).ok_or_else(bad)?;
    let n1: usize = a.trim().parse().map_err(|_| bad())?;
    let n2: usize = b.trim().parse().map_err(|_| bad())?;
    if n1 == 0 || n2 == 0 {
        return Err(bad());
    }
    Ok((n1, n2))
}

/// Doublings tried when the config gives no window.
const EXTENT_DOUBLINGS: usize = 24;

fn grid_for(cfg: &RunConfig, extent: f64, n1: usize, n2: usize) -> GridSpec {
    match (cfg.spec.kind(), cfg.window) {
        (SpaceKind::KII, Some(w)) => {
            GridSpec::Cartesian { x_max: w.x_max, y_min: w.y_min, y_max: w.y_max, n_x: n1, n_y: n2 }
        }
        (SpaceKind::KII, None) => {
            GridSpec::Cartesian { x_max: extent, y_min: -extent, y_max: extent, n_x: n1, n_y: n2 }
        }
        (_, Some(w)) => GridSpec::Polar { r_max: w.x_max.max(w.y_max), n_r: n1, n_angle: n2 },
        (_, None) => GridSpec::Polar { r_max: extent, n_r: n1, n_angle: n2 },
    }
}

/// Normalizes `level` on a `quad_points`² reference grid (growing the
/// extent when no window is configured), then samples it on `n1 × n2`
/// Gauss nodes of the same extent.
pub fn wavefunction(cfg: &RunConfig, qn_bound: u32, level: usize, n1: usize, n2: usize) -> Result<String, CliError> {
    let sp = enumerate_spectrum(&cfg.spec, qn_bound, &cfg.solver)?;
    let Some(lv) = sp.levels.get(level) else {
        return Err(CliError::config(format!(
            "level {level} out of range: the spectrum up to qn bound {qn_bound} has {} levels",
            sp.levels.len()
        )));
    };
    let q = cfg.solver.quad_points;
    let (reference, extent) = if cfg.window.is_some() {
        (assemble_and_normalize(&cfg.spec, lv, &grid_for(cfg, 0.0, q, q))?, 0.0)
    } else {
        // smallest power-of-two extent that holds the state
        let mut extent = 1.0;
        let mut found = None;
        for _ in 0..EXTENT_DOUBLINGS {
            match assemble_and_normalize(&cfg.spec, lv, &grid_for(cfg, extent, q, q)) {
                Ok(grid) => {
                    found = Some(grid);
                    break;
                }
                Err(Error::WindowTooSmall { .. }) => extent *= 2.0,
                Err(e) => return Err(e.into()),
            }
        }
        let grid =
            found.ok_or_else(|| CliError::solver(format!("no grid extent up to {extent} holds level {level}")))?;
        (grid, extent)
    };
    let out = reference.resample(&cfg.spec, &grid_for(cfg, extent, n1, n2))?;
    Ok(wavefunction_csv(&out))
}

pub struct GreenScan {
    pub csv: String,
    pub summary: String,
}

fn green_points(cfg: &RunConfig) -> (Points, u32) {
    let top = if cfg.spec.kind() == SpaceKind::KI { FRAC_PI_2 } else { PI };
    let g = cfg.green;
    let p =
        Points::new(g.r1.unwrap_or(1.0), g.phi1.unwrap_or(0.4 * top), g.r2.unwrap_or(2.0), g.phi2.unwrap_or(0.6 * top));
    (p, g.n_max.unwrap_or(24))
}

pub fn green_scan(cfg: &RunConfig, qn_bound: u32, emin: f64, emax: f64, points: usize) -> Result<GreenScan, CliError> {
    if cfg.spec.kind() == SpaceKind::KII {
        return Err(CliError::config("green-scan needs a K_I or K_III space"));
    }
    if !(emax > emin) || points < 2 {
        return Err(CliError::config("green-scan needs emin < emax and at least 2 points"));
    }
    let (p, n_max) = green_points(cfg);
    let sp = enumerate_spectrum(&cfg.spec, qn_bound, &cfg.solver)?;
    let report = pole_scan(&cfg.spec, &p, (emin, emax), points.max(64), &sp);
    let step = (emax - emin) / (points - 1) as f64;
    let mut csv = String::from("E,green_value,gamma_argument,is_pole\n");
    for k in 0..points {
        let e = emin + step * k as f64;
        let value = green_value(&cfg.spec, &p, e, n_max).map(|g| g.value).unwrap_or(f64::NAN);
        let g0 = gamma_argument(&cfg.spec, e, 0).unwrap_or(f64::NAN);
        let pole = report.poles.iter().any(|q| (q.energy - e).abs() <= 0.5 * step);
        csv.push_str(&format!("{},{},{},{}\n", real(e), real(value), real(g0), u8::from(pole)));
    }
    let mut summary = format!(
        "poles: {} found, {} unmatched, {} levels missed\n",
        report.poles.len(),
        report.unmatched_poles.len(),
        report.missed_levels.len()
    );
    for q in &report.poles {
        let (n1, n2) = q.qn.pair();
        summary.push_str(&format!("pole E = {:e} (n1 = {n1}, n2 = {n2})\n", q.energy));
    }
    for n in &report.notes {
        summary.push_str(&format!("note: {n}\n"));
    }
    Ok(GreenScan { csv, summary })
}

/// Verification report: one line per check.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub lines: Vec<String>,
    pub failures: usize,
}

impl Report {
    fn check(&mut self, ok: bool, what: impl AsRef<str>) {
        if !ok {
            self.failures += 1;
        }
        self.lines.push(format!("{} {}", if ok { "PASS" } else { "FAIL" }, what.as_ref()));
    }

    fn info(&mut self, what: impl AsRef<str>) {
        self.lines.push(format!("INFO {}", what.as_ref()));
    }

    fn warn(&mut self, what: impl AsRef<str>) {
        self.lines.push(format!("WARNING {}", what.as_ref()));
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn render(&self) -> String {
        let mut s = self.lines.join("\n");
        s.push_str(&format!("\nRESULT {}\n", if self.passed() { "PASS" } else { "FAIL" }));
        s
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

fn special_cases(spec: &SpaceSpec) -> Vec<SpecialCase> {
    let mut out = Vec::new();
    match spec.space {
        Space::KI { alpha: 0.0, beta: 0.0, gamma: 0.0, .. } => out.push(SpecialCase::FlatKI),
        Space::KII { alpha: 0.0, beta: 0.0, gamma: 0.0, .. } => out.push(SpecialCase::FlatKII),
        Space::KIII { alpha1, beta, gamma, delta, alpha2, k1, k2 } => {
            if alpha1 == 0.0 && beta == 0.0 && gamma == 0.0 {
                out.push(SpecialCase::HydrogenlikeKIII);
            }
            if k1 == 0.0 && k2 == 0.0 && delta > 0.0 && beta >= 0.0 && gamma >= 0.0 {
                out.push(SpecialCase::QuadKIIIk0);
            }
            if k1 == 0.5 && k2 == 0.5 && alpha2 == 0.0 && beta == gamma && delta > 0.0 {
                out.push(SpecialCase::ZeropotKIII);
            }
        }
        _ => {}
    }
    out
}

/// `spec` with its curvature constants replaced by `ε·direction`.
fn curved(spec: &SpaceSpec, eps: f64, dir: (f64, f64, f64)) -> SpaceSpec {
    let mut s = *spec;
    match &mut s.space {
        Space::KI { alpha, beta, gamma, .. } | Space::KII { alpha, beta, gamma, .. } => {
            (*alpha, *beta, *gamma) = (eps * dir.0, eps * dir.1, eps * dir.2);
        }
        Space::KIII { alpha1, beta, gamma, .. } => {
            (*alpha1, *beta, *gamma) = (eps * dir.0, eps * dir.1, eps * dir.2);
        }
    }
    s
}

fn lowest(spec: &SpaceSpec, qn: &QuantumNumbers, cfg: &RunConfig) -> Result<Option<f64>, CliError> {
    Ok(solve_level(spec, qn, &cfg.solver)?.levels.first().map(|l| l.energy))
}

fn flat_limit(cfg: &RunConfig, report: &mut Report) -> Result<(), CliError> {
    let spec = &cfg.spec;
    let (consts, ks) = match spec.space {
        Space::KI { alpha, beta, gamma, kx, ky, .. } => ((alpha, beta, gamma), vec![kx, ky]),
        Space::KII { alpha, beta, gamma, kx, .. } => ((alpha, beta, gamma), vec![kx]),
        Space::KIII { alpha1, beta, gamma, k1, k2, .. } => ((alpha1, beta, gamma), vec![k1, k2]),
    };
    if ks.iter().any(|k| *k == 0.0) {
        report.info("flat-limit continuity skipped: a centrifugal constant is zero, so the limit is not analytic");
        return Ok(());
    }
    let scale = consts.0.abs().max(consts.1.abs()).max(consts.2.abs());
    let dir = if scale > 0.0 { (consts.0 / scale, consts.1 / scale, consts.2 / scale) } else { (1.0, 1.0, 1.0) };
    let qn = QuantumNumbers::for_kind(spec.kind(), 0, 0);
    let e = |eps: f64| lowest(&curved(spec, eps, dir), &qn, cfg);
    match (e(0.0)?, e(1e-3)?, e(1e-4)?) {
        (Some(e0), Some(e3), Some(e4)) => {
            let ratio = (e3 - e0).abs() / (e4 - e0).abs();
            report.check(
                (8.0..=12.0).contains(&ratio),
                format!("flat-limit continuity: |E(1e-3)-E(0)|/|E(1e-4)-E(0)| = {ratio:e} (first order wants 8..12)"),
            );
        }
        _ => report.info("flat-limit continuity skipped: no ground level along the flat path"),
    }
    Ok(())
}

fn asymptote(cfg: &RunConfig, report: &mut Report) -> Result<(), CliError> {
    let spec = &cfg.spec;
    let Space::KIII { delta, alpha2, .. } = spec.space else { return Ok(()) };
    if !(delta > 0.0 && alpha2 > 0.0) {
        report.info("Coulomb asymptote skipped: needs delta > 0 and alpha2 > 0");
        return Ok(());
    }
    let dev = |n: u32| -> Result<Option<f64>, CliError> {
        let qn = QuantumNumbers::KIII { n_r: n - 1, n_phi: 0 };
        let a = coulomb_asymptote(spec, n).unwrap_or(f64::NAN);
        Ok(lowest(spec, &qn, cfg)?.map(|e| (e / a - 1.0).abs()))
    };
    match (dev(100)?, dev(200)?) {
        (Some(d1), Some(d2)) => {
            report.check(d2 < d1, format!("Coulomb asymptote: |N^2 E_N/E_inf - 1| = {d1:e} at N=100, {d2:e} at N=200"))
        }
        _ => report.info("Coulomb asymptote skipped: no level at N = 100 or 200"),
    }
    Ok(())
}

pub fn verify(cfg: &RunConfig, qn_bound: u32) -> Result<Report, CliError> {
    let spec = &cfg.spec;
    let kind = spec.kind();
    let mut report = Report::default();
    report.info(format!("space {kind}"));
    report.info(format!("classification {}", darboux_classify(spec)));
    if !cfg.violations.is_empty() {
        // the quantization conditions are not meaningful for such parameters
        for v in &cfg.violations {
            report.check(false, format!("parameter validation: {v}"));
        }
        return Ok(report);
    }
    report.check(true, "parameter validation");

    let mut kii_degrees = Vec::new();
    for n1 in 0..=qn_bound {
        for n2 in 0..=qn_bound {
            let qn = QuantumNumbers::for_kind(kind, n1, n2);
            let cv = cross_validation_report(spec, &qn, &cfg.solver)?;
            kii_degrees.push(cv.polynomial.declared_degree);
            report.check(
                cv.passed(),
                format!(
                    "cross-validation (n1={n1}, n2={n2}): {} matched, {} unmatched, degree {}",
                    cv.matched.len(),
                    cv.unmatched.len(),
                    cv.polynomial.declared_degree
                ),
            );
        }
    }
    if kind == SpaceKind::KII {
        kii_degrees.sort_unstable();
        kii_degrees.dedup();
        report.info(format!("K_II empirical polynomial degrees {kii_degrees:?}"));
    }

    for case in special_cases(spec) {
        for n1 in 0..=qn_bound {
            for n2 in 0..=qn_bound {
                let qn = QuantumNumbers::for_kind(kind, n1, n2);
                let cf = closed_form_special(spec, &qn, case)?;
                let solved = solve_level(spec, &qn, &cfg.solver)?;
                let ok = cf.levels.len() == solved.levels.len()
                    && cf.levels.iter().zip(&solved.levels).all(|(a, b)| close(a.energy, b.energy, 1e-10));
                let energies: Vec<String> = cf.levels.iter().map(|l| format!("{:e}", l.energy)).collect();
                report.check(ok, format!("closed form {case:?} (n1={n1}, n2={n2}): [{}]", energies.join(", ")));
                if n1 == 0 && n2 == 0 {
                    for w in &cf.warnings {
                        report.warn(w);
                    }
                }
            }
        }
    }

    flat_limit(cfg, &mut report)?;
    asymptote(cfg, &mut report)?;

    match spec.space {
        Space::KI { delta, omega, kx, ky, .. } => {
            let (n, hbar) = (1.0, spec.constants.hbar);
            report.warn(format!(
                "K_I flat prose: the printed flat spectrum hbar*omega*(N+kx+ky)/delta gives {:e} at N=1, \
                 the quantization condition gives hbar*omega*(2N+kx+ky)/delta = {:e}; treated as a relabeling of N",
                hbar * omega * (n + kx + ky) / delta,
                hbar * omega * (2.0 * n + kx + ky) / delta
            ));
            report.warn(green::CONVENTIONS[0]);
        }
        Space::KII { .. } => {
            let qn = QuantumNumbers::KII { n_x: 0, n_y: 0 };
            match solve_level(spec, &qn, &cfg.solver)?.levels.first() {
                Some(lv) => {
                    let p = printed_energy_kii(spec, &qn, lv.energy)?;
                    report.warn(format!(
                        "Energy-KII prefactors: the printed condition misses the kernel-derived ground level \
                         {:e} by a relative {:e}; the kernel-derived form is used",
                        lv.energy,
                        p.relative_mismatch()
                    ));
                }
                None => report.warn("Energy-KII prefactors: the printed condition is not used (no ground level here)"),
            }
        }
        Space::KIII { .. } => {
            let printed = printed_quadratic_kiii(spec, 1.0)?;
            report.warn(format!(
                "K_III printed quadratic: coefficients A = {:e}, B = {:e}, C = {:e} at N=1 use an undefined a1 \
                 (read as alpha1); evaluated only, not asserted",
                printed.a, printed.b, printed.c
            ));
            report.warn(green::CONVENTIONS[1]);
        }
    }
    Ok(report)
}
