//! Numerical settings shared by the energy layer and the CLI.

use crate::error::EnergyError;
use crate::numerics::{ContinuationConfig, QuadratureConfig};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericsConfig<T> {
    pub quadrature: QuadratureConfig<T>,
    pub continuation: ContinuationConfig<T>,
    /// The k-integrals may stop (after `quadrature.tail_panels` negligible
    /// panels) only beyond `kL` = this value.
    pub tail_start_kl: T,
    /// Count only the evanescent part of `ω+` as plasmonic; its propagating
    /// part goes to the photonic share.
    pub split_at_light_line: bool,
    /// Absolute tolerance (in `L/λ_p`) of the crossover search.
    pub crossover_tol: T,
    /// Settings of the real-axis photonic computation.
    pub direct: DirectConfig<T>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectConfig<T> {
    /// Lower bound of the frequency cutoff, in units of ω_p.
    pub cutoff_over_omega_p: T,
    /// Upper end of the k-integral, in units of `1/L`.
    pub k_max_kl: T,
    /// Relative tolerance of the inner frequency integrals.
    pub rel_tol: T,
    /// Maximum relative change between the two cutoffs before the
    /// extrapolation is declared unstable.
    pub max_cutoff_change: T,
}

impl<T: Real> Default for DirectConfig<T> {
    fn default() -> Self {
        Self {
            cutoff_over_omega_p: T::lit(10.0),
            k_max_kl: T::lit(40.0),
            rel_tol: T::lit(1e-7),
            max_cutoff_change: T::lit(0.05),
        }
    }
}

impl<T: Real> Default for NumericsConfig<T> {
    fn default() -> Self {
        Self {
            quadrature: QuadratureConfig::default(),
            continuation: ContinuationConfig::default(),
            tail_start_kl: T::lit(30.0),
            split_at_light_line: false,
            crossover_tol: T::lit(1e-6),
            direct: DirectConfig::default(),
        }
    }
}

impl<T: Real> NumericsConfig<T> {
    pub fn with_split(mut self, split: bool) -> Self {
        self.split_at_light_line = split;
        self
    }

    pub fn with_rel_tol(mut self, rel_tol: T) -> Self {
        self.quadrature.rel_tol = rel_tol;
        self
    }

    pub fn with_abs_tol(mut self, abs_tol: T) -> Self {
        self.quadrature.abs_tol = abs_tol;
        self
    }

    pub fn validate(&self) -> Result<(), EnergyError> {
        let q = &self.quadrature;
        let ok = q.rel_tol > T::zero()
            && q.abs_tol > T::zero()
            && q.max_subdivisions > 0
            && q.tail_panels > 0
            && self.tail_start_kl > T::zero()
            && self.crossover_tol > T::zero()
            && self.direct.cutoff_over_omega_p > T::one()
            && self.direct.k_max_kl > T::zero()
            && self.direct.rel_tol > T::zero();
        if ok {
            Ok(())
        } else {
            Err(EnergyError::Domain(format!("invalid numerical settings: {self:?}")))
        }
    }
}
