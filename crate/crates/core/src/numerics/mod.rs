//! Generic numerical machinery: bracketed roots, adaptive quadrature,
//! branch continuation and power-law fitting.

pub mod continuation;
pub mod fit;
pub mod quadrature;
pub mod roots;

pub use continuation::{
    continue_branch, BranchPoint, BranchProblem, BranchTrack, ContinuationConfig, FnProblem,
    Termination,
};
pub use fit::{
    fit_leading_term, fit_power_law, FitResult, LeadingTermFit, PowerLawModel, MIN_FIT_POINTS,
};
pub use quadrature::{
    integrate_adaptive, integrate_segments, integrate_semi_infinite, Integral, QuadratureConfig,
};
pub use roots::{find_root_bracketed, find_root_with_values, Root, RootConfig};
