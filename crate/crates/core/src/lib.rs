//! Bound-state spectra, wavefunctions and Green functions for quantum motion
//! on the Koenigs spaces `K_I`, `K_II` and `K_III`.
//!
//! Every space is a conformally flat metric `f(x, y)(dx² + dy²)` carrying a
//! superintegrable potential (singular isotropic oscillator, Holt potential,
//! two-dimensional Coulomb potential). The Hamiltonian `H/f` is handled by a
//! time transformation: the bound states at energy `E` are eigenstates of a
//! flat-space problem whose frequency and centrifugal indices depend on `E`.
//!
//! The crate is `no_std` and only needs `alloc`. IO, configuration and the
//! command-line front end live in the `koenigs-cli` crate.
//!
//! Module map:
//!
//! - [`model`]: space descriptions, metrics, energy-dependent parameters.
//! - [`specfun`]: gamma, Kummer, Whittaker, Bessel and orthogonal polynomials.
//! - [`quantize`]: quantization conditions, bracketing solver, radical
//!   elimination to a polynomial and the closed-form special cases.
//! - [`wavefun`]: separated bound-state wavefunctions and their quadrature.
//! - [`green`]: truncated Green functions, the Euclidean kernel, pole scans.
#![no_std]

extern crate alloc;

mod error;
pub mod green;
pub mod model;
pub mod quad;
pub mod quantize;
pub mod specfun;
pub mod wavefun;

pub use error::{Error, Result};
pub use model::{
    Constants, Darboux, EffectiveParams, EnergyInterval, QuantumNumbers, SolverSettings, Space, SpaceKind, SpaceSpec,
    Window,
};
pub use quantize::{EnergyLevel, Method, Spectrum};
