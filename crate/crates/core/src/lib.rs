//! Casimir energy between two plasma-model mirrors, split into the
//! contributions of the two coupled surface plasmons and of the photonic
//! waveguide modes, with the imaginary-frequency Lifshitz integral as the
//! reference total.
//!
//! Units: `c = ħ = 1`; the plasma frequency is a model parameter, so the
//! plasma wavelength is `λ_p = 2π/ω_p`. Energies are per unit area and
//! reported as reduction factors relative to perfect mirrors.
//!
//! Everything is generic over the scalar ([`scalar::Real`], implemented for
//! `f32` and `f64`); the aliases below fix it to `f64`.
//!
//! ```
//! use plasmon_casimir::{breakdown, Model, Numerics};
//!
//! let b = breakdown(&Model::unit(), 1.0, &Numerics::default()).unwrap();
//! assert!((b.eta_pl + b.eta_ph - b.eta).abs() < 1e-4);
//! ```

pub mod cli;
pub mod config;
pub mod energy;
pub mod error;
pub mod modes;
pub mod numerics;
pub mod optics;
pub mod scalar;

pub use config::{DirectConfig, NumericsConfig};
pub use energy::{
    breakdown, find_plasmonic_crossover, fit_asymptotic_constants, lifshitz_total, log_grid,
    photonic_energy, photonic_energy_direct, plasmonic_energy, sweep_breakdown, IdealCasimir,
};
pub use error::{EnergyError, ModeError, NumericsError};
pub use modes::{
    dispersion_sweep, mode_function, mode_residual, plasmon_shifts, solve_photonic, solve_plasmonic,
    spp_frequency, ModeBranch,
};
pub use optics::{phase_shift, reflection, reflection_imag_axis, FrequencySector, Polarization};
pub use scalar::Real;

pub type Model = optics::MirrorModel<f64>;
pub type Numerics = config::NumericsConfig<f64>;
pub type Breakdown = energy::EnergyBreakdown<f64>;
pub type Fits = energy::AsymptoticFits<f64>;
pub type Windows = energy::FitWindows<f64>;
pub type Mode = modes::ModePoint<f64>;
pub type Curve = modes::DispersionCurve<f64>;
pub type Shifts = modes::PlasmonShifts<f64>;
