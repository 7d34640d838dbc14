use thiserror::Error;

use crate::optics::Polarization;

/// Errors raised by the numerical kernels (root finding, quadrature, fitting, continuation).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("no sign change on [{lo}, {hi}] (f(lo) = {f_lo}, f(hi) = {f_hi})")]
    NoBracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },
    #[error("root search did not converge in {iterations} iterations (best estimate {best})")]
    Convergence { iterations: usize, best: f64 },
    #[error("non-finite function value at x = {x}")]
    NonFinite { x: f64 },
    #[error("quadrature exceeded {subdivisions} subdivisions: value {value} with error {error}")]
    Accuracy {
        subdivisions: usize,
        value: f64,
        error: f64,
    },
    #[error("branch lost at parameter {param}; last good point ({last_param}, {last_root})")]
    BranchLost {
        param: f64,
        last_param: f64,
        last_root: f64,
    },
    #[error("domain error: {0}")]
    Domain(String),
}

/// Errors raised by the optics and mode-solver layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModeError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("{pol} polarization has no {what} mode")]
    NoMode { pol: Polarization, what: &'static str },
    #[error("frequency {omega} at k = {k} is not in the {expected} sector")]
    SectorMismatch {
        omega: f64,
        k: f64,
        expected: &'static str,
    },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Errors raised by the energy layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EnergyError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("plasmon branch lost at k = {k}, L = {distance}: {source}")]
    BranchLost {
        k: f64,
        distance: f64,
        source: ModeError,
    },
    #[error("frequency cutoff extrapolation unstable: {0}")]
    Extrapolation(String),
    #[error(transparent)]
    Mode(#[from] ModeError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}
