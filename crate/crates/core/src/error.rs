use alloc::vec::Vec;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the mathematical domain of a function.
    Domain { what: &'static str, value: f64 },
    /// Argument outside the declared accuracy window of a series.
    OutOfWindow { what: &'static str, value: f64 },
    /// A series or iteration hit its cap before converging.
    NotConverged { what: &'static str, iterations: usize },
    /// A Gamma factor evaluated at a nonpositive integer.
    Pole { what: &'static str, at: f64 },
    /// A denominator of the metric vanishes at the requested point.
    SingularCoordinate { x: f64, y: f64 },
    /// The parameter set collapses the requested construction.
    Degenerate(&'static str),
    /// A closed-form case was requested for a spec that does not match it.
    PatternMismatch(&'static str),
    /// Two grids that must coincide do not.
    GridMismatch,
    /// The quadrature window cuts off a noticeable part of the density.
    WindowTooSmall { boundary_fraction: f64 },
    /// Exponent would leave the representable range.
    Overflow(&'static str),
    /// Bracketing roots without a polynomial counterpart.
    UnmatchedRoots(Vec<f64>),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => write!(f, "{what}: argument {value} outside domain"),
            Error::OutOfWindow { what, value } => {
                write!(f, "{what}: argument {value} outside accuracy window")
            }
            Error::NotConverged { what, iterations } => {
                write!(f, "{what}: no convergence after {iterations} iterations")
            }
            Error::Pole { what, at } => write!(f, "{what}: pole at {at}"),
            Error::SingularCoordinate { x, y } => {
                write!(f, "metric singular at ({x}, {y})")
            }
            Error::Degenerate(msg) => write!(f, "degenerate parameters: {msg}"),
            Error::PatternMismatch(msg) => write!(f, "parameter pattern mismatch: {msg}"),
            Error::GridMismatch => f.write_str("grids differ"),
            Error::WindowTooSmall { boundary_fraction } => {
                write!(f, "grid window too small: boundary panel carries {boundary_fraction:e} of the density")
            }
            Error::Overflow(msg) => write!(f, "overflow guard: {msg}"),
            Error::UnmatchedRoots(roots) => {
                write!(f, "bracketing roots without polynomial match: {roots:?}")
            }
        }
    }
}

impl core::error::Error for Error {}
