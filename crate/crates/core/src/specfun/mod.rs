//! Special-function kernel: log-gamma, Kummer `M` and `U`, Whittaker `M`
//! and `W`, modified Bessel `I_ν`, and the classical orthogonal polynomials.
//!
//! Everything is real-valued and restricted to declared accuracy windows
//! (`|z| ≤ 50` for the confluent functions, `z ≤ 60` for `I_ν`). Calls
//! outside a window return [`Error::OutOfWindow`](crate::Error::OutOfWindow)
//! instead of a silently inaccurate number.

mod bessel;
mod gamma;
mod kummer;
mod orthopoly;

pub use bessel::bessel_i;
pub use gamma::log_gamma;
pub(crate) use gamma::{gamma, recip_gamma};
pub use kummer::{kummer_m, kummer_m_with, kummer_u, kummer_u_with, whittaker, whittaker_with, Whittaker};
pub use orthopoly::{orthopoly, OrthoFamily};

/// Outcome of a series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: f64,
    pub terms_used: usize,
    pub converged: bool,
}

/// Termination rule shared by the series routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub tol_rel: f64,
    pub tol_abs: f64,
    pub max_terms: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl { tol_rel: f64::EPSILON, tol_abs: 1e-300, max_terms: 500 }
    }
}

impl SeriesControl {
    pub fn with_max_terms(max_terms: usize) -> Self {
        SeriesControl { max_terms, ..Self::default() }
    }
}

/// Largest `|z|` accepted by the confluent hypergeometric routines.
pub const CONFLUENT_WINDOW: f64 = 50.0;
/// Largest argument accepted by [`bessel_i`].
pub const BESSEL_WINDOW: f64 = 60.0;
/// Largest order accepted by [`bessel_i`].
pub const BESSEL_MAX_ORDER: f64 = 100.0;
