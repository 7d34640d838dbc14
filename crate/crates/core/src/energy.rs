//! Casimir energy per unit area and its plasmonic/photonic decomposition.
//!
//! Everything is reported as a reduction factor `η = E / E_ideal` relative to
//! perfect mirrors, `E_ideal/A = −π²/(720 L³)`.
//!
//! * total: imaginary-axis integral in the scaled variables `x = κL`,
//!   `y = ξL`: `η = −(180/π⁴) ∫₀^∞ x dx ∫₀^x dy Σ_pol ln(1 − r² e^{−2x})`;
//! * plasmonic: `E_pl/A = (1/4π) ∫ k dk [ω+ + ω− − 2ω_sp]`, each branch
//!   integrated on its own in `x = kL` with a breakpoint where `ω+` crosses
//!   the light line;
//! * photonic: `η_ph = η − η_pl`, with an independent real-axis
//!   density-of-states computation ([`photonic_energy_direct`]) as a check.

use rayon::prelude::*;

use crate::config::NumericsConfig;
use crate::error::{EnergyError, NumericsError};
use crate::modes::{light_line_crossing, photonic_roots, plasmon_shifts, spp_parts, PlasmonShifts};
use crate::numerics::{
    find_root_bracketed, fit_leading_term, fit_power_law, integrate_adaptive, integrate_segments,
    integrate_semi_infinite, FitResult, LeadingTermFit, PowerLawModel, QuadratureConfig, RootConfig,
};
use crate::optics::{phase_shift_kz, reflection_imag_axis, MirrorModel, Polarization};
use crate::scalar::Real;

/// Energy of perfectly reflecting mirrors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct IdealCasimir;

impl IdealCasimir {
    /// `−π²/(720 L³)` per unit area (ħ = c = 1).
    pub fn energy_per_area<T: Real>(distance: T) -> T {
        -T::PI() * T::PI() / (T::lit(720.0) * distance * distance * distance)
    }
}

/// An energy per unit area with its quadrature error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyValue<T> {
    pub energy_per_area: T,
    pub error: T,
}

impl<T: Real> EnergyValue<T> {
    pub fn eta(&self, distance: T) -> T {
        self.energy_per_area / IdealCasimir::energy_per_area(distance)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlasmonicEnergy<T> {
    pub energy_per_area: T,
    /// `ω+` share (positive: repulsive).
    pub plus: T,
    /// `ω−` share (negative: attractive).
    pub minus: T,
    pub error: T,
}

/// Reduction factors at one distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyBreakdown<T> {
    pub l_over_lambda_p: T,
    pub eta: T,
    pub eta_pl: T,
    pub eta_pl_plus: T,
    pub eta_pl_minus: T,
    pub eta_ph: T,
    pub err_total: T,
    pub err_pl: T,
}

fn check_distance<T: Real>(distance: T) -> Result<(), EnergyError> {
    if distance > T::zero() && distance.is_finite() {
        Ok(())
    } else {
        Err(EnergyError::Domain(format!("distance must be positive and finite, got {distance}")))
    }
}

/// Collects the first failure raised inside an integrand, which must itself
/// return a plain number.
struct Failure<E>(Option<E>);

impl<E> Failure<E> {
    fn record<T: Real>(&mut self, r: Result<T, E>) -> T {
        match r {
            Ok(v) => v,
            Err(e) => {
                if self.0.is_none() {
                    self.0 = Some(e);
                }
                T::zero()
            }
        }
    }

    fn check(self) -> Result<(), E> {
        match self.0 {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }
}

/// Total energy from the imaginary-axis (Lifshitz) integral.
pub fn lifshitz_total<T: Real>(
    model: &MirrorModel<T>,
    distance: T,
    cfg: &NumericsConfig<T>,
) -> Result<EnergyValue<T>, EnergyError> {
    check_distance(distance)?;
    cfg.validate()?;
    let wp = model.omega_p();
    let wl = wp * distance;
    let inner_cfg = cfg.quadrature.with_rel_tol(cfg.quadrature.rel_tol * T::lit(0.1));
    let mut failure = Failure(None);
    let outer = |x: T| -> T {
        if !(x > T::zero()) {
            return T::zero();
        }
        let kappa = x / distance;
        let decay = (-(x + x)).exp();
        if decay == T::zero() {
            return T::zero();
        }
        let f = |y: T| -> T {
            let xi = y / distance;
            let k = ((kappa - xi).max(T::zero()) * (kappa + xi)).sqrt();
            Polarization::ALL
                .iter()
                .map(|&pol| {
                    let r = reflection_imag_axis(model, pol, xi, k);
                    (-(r * r * decay)).ln_1p()
                })
                .sum()
        };
        let points: Vec<T> = if wl < x { vec![T::zero(), wl, x] } else { vec![T::zero(), x] };
        x * failure.record(integrate_segments(f, &points, &inner_cfg).map(|i| i.value))
    };
    let integral = integrate_semi_infinite(outer, T::zero(), T::one(), cfg.tail_start_kl, &cfg.quadrature)?;
    failure.check()?;
    let scale = T::one() / (T::lit(4.0) * T::PI() * T::PI() * distance.powi(3));
    Ok(EnergyValue { energy_per_area: integral.value * scale, error: integral.error * scale })
}

/// `k − ω_sp` without cancellation.
fn light_line_gap<T: Real>(model: &MirrorModel<T>, k: T) -> T {
    let wp = model.omega_p();
    let (w_sp, t_sp) = spp_parts(wp * wp, k);
    t_sp / (k + w_sp.sqrt())
}

/// Plasmonic energy from the two coupled surface plasmons, referenced to
/// the single-interface plasmon at each `k`.
pub fn plasmonic_energy<T: Real>(
    model: &MirrorModel<T>,
    distance: T,
    cfg: &NumericsConfig<T>,
) -> Result<PlasmonicEnergy<T>, EnergyError> {
    check_distance(distance)?;
    cfg.validate()?;
    let x_c = light_line_crossing(model, distance) * distance;
    let split = cfg.split_at_light_line;

    let branch = |plus: bool| -> Result<(T, T), EnergyError> {
        let mut failure: Failure<EnergyError> = Failure(None);
        let mut f = |x: T| -> T {
            if !(x > T::zero()) {
                return T::zero();
            }
            let k = x / distance;
            let r = plasmon_shifts(model, k, distance).map_err(|source| EnergyError::BranchLost {
                k: k.as_f64(),
                distance: distance.as_f64(),
                source,
            });
            let d = failure.record(r.map(|s| {
                if plus {
                    if split && s.plus_propagating() {
                        // only the evanescent part of ω+ counts as plasmonic
                        light_line_gap(model, k)
                    } else {
                        s.delta_plus
                    }
                } else {
                    s.delta_minus
                }
            }));
            x * d
        };
        let head = integrate_adaptive(&mut f, T::zero(), x_c, &cfg.quadrature)?;
        let tail = integrate_semi_infinite(
            &mut f,
            x_c,
            T::one(),
            x_c.max(cfg.tail_start_kl),
            &cfg.quadrature,
        )?;
        failure.check()?;
        Ok((head.value + tail.value, head.error + tail.error))
    };
    let (plus, minus) = rayon::join(|| branch(true), || branch(false));
    let (plus, e_plus) = plus?;
    let (minus, e_minus) = minus?;
    let scale = T::one() / (T::lit(4.0) * T::PI() * distance * distance);
    Ok(PlasmonicEnergy {
        energy_per_area: (plus + minus) * scale,
        plus: plus * scale,
        minus: minus * scale,
        error: (e_plus + e_minus) * scale,
    })
}

/// Photonic energy as total minus plasmonic.
pub fn photonic_energy<T: Real>(
    model: &MirrorModel<T>,
    distance: T,
    cfg: &NumericsConfig<T>,
) -> Result<EnergyValue<T>, EnergyError> {
    let (total, pl) = rayon::join(
        || lifshitz_total(model, distance, cfg),
        || plasmonic_energy(model, distance, cfg),
    );
    let (total, pl) = (total?, pl?);
    Ok(EnergyValue {
        energy_per_area: total.energy_per_area - pl.energy_per_area,
        error: total.error.hypot(pl.error),
    })
}

/// Reduction factors at `L = l_over_lambda_p · λ_p`.
pub fn breakdown<T: Real>(
    model: &MirrorModel<T>,
    l_over_lambda_p: T,
    cfg: &NumericsConfig<T>,
) -> Result<EnergyBreakdown<T>, EnergyError> {
    let distance = l_over_lambda_p * model.lambda_p();
    check_distance(distance)?;
    let (total, pl) = rayon::join(
        || lifshitz_total(model, distance, cfg),
        || plasmonic_energy(model, distance, cfg),
    );
    let (total, pl) = (total?, pl?);
    let ideal = IdealCasimir::energy_per_area(distance);
    let eta = total.energy_per_area / ideal;
    let eta_pl_plus = pl.plus / ideal;
    let eta_pl_minus = pl.minus / ideal;
    let eta_pl = eta_pl_plus + eta_pl_minus;
    Ok(EnergyBreakdown {
        l_over_lambda_p,
        eta,
        eta_pl,
        eta_pl_plus,
        eta_pl_minus,
        eta_ph: eta - eta_pl,
        err_total: (total.error / ideal).abs(),
        err_pl: (pl.error / ideal).abs(),
    })
}

/// `n` logarithmically spaced values from `lo` to `hi` inclusive.
pub fn log_grid<T: Real>(lo: T, hi: T, n: usize) -> Vec<T> {
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    let last = T::from_usize(n - 1).unwrap();
    (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else if i == 0 {
                lo
            } else {
                (a + (b - a) * T::from_usize(i).unwrap() / last).exp()
            }
        })
        .collect()
}

/// Breakdowns over a monotone schedule of `L/λ_p`, computed in parallel and
/// returned in schedule order. Per-point failures do not stop the sweep.
pub fn sweep_breakdown<T: Real>(
    model: &MirrorModel<T>,
    schedule: &[T],
    cfg: &NumericsConfig<T>,
) -> Result<Vec<Result<EnergyBreakdown<T>, EnergyError>>, EnergyError> {
    cfg.validate()?;
    if schedule.iter().any(|&x| !(x > T::zero()) || !x.is_finite()) {
        return Err(EnergyError::Domain("sweep distances must be positive".into()));
    }
    let up = schedule.windows(2).all(|w| w[1] > w[0]);
    let down = schedule.windows(2).all(|w| w[1] < w[0]);
    if !(up || down) {
        return Err(EnergyError::Domain("sweep distances must be strictly monotone".into()));
    }
    Ok(schedule.par_iter().map(|&x| breakdown(model, x, cfg)).collect())
}

/// Distance where `η_pl` changes sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossover<T> {
    pub l_over_lambda_p: T,
    /// Root tolerance plus the quadrature error of `η_pl` mapped through the slope.
    pub uncertainty: T,
    /// `dη_pl / d(L/λ_p)` at the crossover.
    pub slope: T,
}

/// Sign change of `η_pl` on `L/λ_p ∈ [0.01, 0.5]`.
pub fn find_plasmonic_crossover<T: Real>(
    model: &MirrorModel<T>,
    cfg: &NumericsConfig<T>,
) -> Result<Crossover<T>, EnergyError> {
    cfg.validate()?;
    let lambda_p = model.lambda_p();
    let eta_pl = |x: T| -> Result<(T, T), EnergyError> {
        let distance = x * lambda_p;
        let pl = plasmonic_energy(model, distance, cfg)?;
        let ideal = IdealCasimir::energy_per_area(distance);
        Ok((pl.energy_per_area / ideal, (pl.error / ideal).abs()))
    };
    let mut failure = Failure(None);
    let root_cfg = RootConfig { abs_tol: cfg.crossover_tol, rel_tol: T::zero(), max_iter: 200 };
    let root = find_root_bracketed(
        |x| failure.record(eta_pl(x).map(|v| v.0)),
        T::lit(0.01),
        T::lit(0.5),
        &root_cfg,
    );
    failure.check()?;
    let root = root?;
    let x = root.x;
    let h = x * T::lit(1e-3);
    let (hi, err) = eta_pl(x + h)?;
    let (lo, _) = eta_pl(x - h)?;
    let slope = (hi - lo) / (h + h);
    Ok(Crossover {
        l_over_lambda_p: x,
        uncertainty: cfg.crossover_tol + err / slope.abs(),
        slope,
    })
}

/// Windows and sampling of the asymptotic fits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitWindows<T> {
    /// `L/λ_p` range for the short-distance law `η = (3α/2)(L/λ_p)`.
    pub alpha: (T, T),
    /// `L/λ_p` range for the large-distance law `η_ph − 1 ≈ −η_pl ≈ β sqrt(L/λ_p)`.
    pub beta: (T, T),
    pub points: usize,
}

impl<T: Real> Default for FitWindows<T> {
    fn default() -> Self {
        Self { alpha: (T::lit(1e-3), T::lit(1e-2)), beta: (T::lit(30.0), T::lit(300.0)), points: 8 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticFits<T> {
    pub alpha: T,
    pub alpha_fit: FitResult<T>,
    /// `η_ph − 1 = β sqrt(x) + c`.
    pub beta_ph: LeadingTermFit<T>,
    /// `−η_pl = β sqrt(x) + c`.
    pub beta_pl: LeadingTermFit<T>,
    /// Single-term `η_ph − 1 = β sqrt(x)` fit over the same window.
    pub beta_ph_single: FitResult<T>,
    pub beta_pl_single: FitResult<T>,
    pub alpha_samples: Vec<EnergyBreakdown<T>>,
    pub beta_samples: Vec<EnergyBreakdown<T>>,
}

fn samples<T: Real>(
    model: &MirrorModel<T>,
    (lo, hi): (T, T),
    n: usize,
    cfg: &NumericsConfig<T>,
) -> Result<Vec<EnergyBreakdown<T>>, EnergyError> {
    if n < crate::numerics::MIN_FIT_POINTS || !(hi > lo) || !(lo > T::zero()) {
        return Err(EnergyError::Domain(format!(
            "fit window [{lo}, {hi}] with {n} points is degenerate (need ≥ {} points and lo < hi)",
            crate::numerics::MIN_FIT_POINTS
        )));
    }
    sweep_breakdown(model, &log_grid(lo, hi, n), cfg)?.into_iter().collect()
}

/// Fits `α` (short distances) and `β` (large distances).
pub fn fit_asymptotic_constants<T: Real>(
    model: &MirrorModel<T>,
    windows: &FitWindows<T>,
    cfg: &NumericsConfig<T>,
) -> Result<AsymptoticFits<T>, EnergyError> {
    let (short, long) = rayon::join(
        || samples(model, windows.alpha, windows.points, cfg),
        || samples(model, windows.beta, windows.points, cfg),
    );
    let (short, long) = (short?, long?);
    let eta: Vec<(T, T)> = short.iter().map(|b| (b.l_over_lambda_p, b.eta)).collect();
    let alpha_fit = fit_power_law(&eta, PowerLawModel::fixed(T::one()))?;
    let ph: Vec<(T, T)> = long.iter().map(|b| (b.l_over_lambda_p, b.eta_ph - T::one())).collect();
    let pl: Vec<(T, T)> = long.iter().map(|b| (b.l_over_lambda_p, -b.eta_pl)).collect();
    let half = T::lit(0.5);
    Ok(AsymptoticFits {
        alpha: alpha_fit.prefactor * T::lit(2.0) / T::lit(3.0),
        alpha_fit,
        beta_ph: fit_leading_term(&ph, half)?,
        beta_pl: fit_leading_term(&pl, half)?,
        beta_ph_single: fit_power_law(&ph, PowerLawModel::fixed(half))?,
        beta_pl_single: fit_power_law(&pl, PowerLawModel::fixed(half))?,
        alpha_samples: short,
        beta_samples: long,
    })
}

// ---------------------------------------------------------------------------
// Real-axis photonic energy

/// `Arg(1 − r² e^{2 i k_z L})` at real `k_z = q`, principal value.
fn loop_phase<T: Real>(model: &MirrorModel<T>, pol: Polarization, q: T, k: T, distance: T) -> T {
    let wp = model.omega_p();
    let wp2 = wp * wp;
    if q < wp {
        // |r| = 1: D = 1 − e^{iφ} = 2s(s − ic) with s, c = sin, cos(φ/2)
        let half = q * distance + phase_shift_kz(model, pol, q, k);
        let (s, c) = half.sin_cos();
        if s == T::zero() {
            return T::zero();
        }
        (-c * s.signum()).atan2(s.abs())
    } else {
        let qm = ((q - wp) * (q + wp)).sqrt();
        let r = match pol {
            Polarization::TE => wp2 / ((q + qm) * (q + qm)),
            Polarization::TM => {
                let w = k * k + q * q;
                let num = wp2 * (k * k - q * qm) / (q + qm);
                num / ((w - wp2) * q + w * qm)
            }
        };
        let r2 = r * r;
        let (s, c) = (T::lit(2.0) * q * distance).sin_cos();
        (-r2 * s).atan2(T::one() - r2 * c)
    }
}

/// `(1/2π) ∫_k^Ω Arg(1 − r² e^{2ik_zL}) dω` for one polarization, integrated
/// in `k_z` with breakpoints at the cavity modes and at `k_z = ω_p`.
pub(crate) fn photonic_phase_integral<T: Real>(
    model: &MirrorModel<T>,
    pol: Polarization,
    k: T,
    distance: T,
    cutoff: T,
    shifts: Option<&PlasmonShifts<T>>,
    qcfg: &QuadratureConfig<T>,
) -> Result<T, NumericsError> {
    let wp = model.omega_p();
    let q_top = ((cutoff - k).max(T::zero()) * (cutoff + k)).sqrt();
    let mut points = vec![T::zero()];
    points.extend(photonic_roots(model, pol, k, distance, u32::MAX).into_iter().map(|(_, q)| q));
    if let (Polarization::TM, Some(s)) = (pol, shifts) {
        if s.plus_propagating() {
            points.push((-s.t_plus).sqrt());
        }
    }
    let panel = T::FRAC_PI_2() / distance;
    let mut q = wp;
    while q < q_top {
        points.push(q);
        q += panel;
    }
    points.push(q_top);
    points.retain(|&p| p <= q_top);
    points.sort_by(|a, b| a.partial_cmp(b).unwrap());
    points.dedup();
    let f = |q: T| loop_phase(model, pol, q, k, distance) * q / (k * k + q * q).sqrt();
    let i = integrate_segments(f, &points, qcfg)?;
    Ok(i.value / T::TAU())
}

/// Per-k photonic share at frequency cutoff `cutoff`.
fn photonic_per_k<T: Real>(
    model: &MirrorModel<T>,
    k: T,
    distance: T,
    cutoff: T,
    split: bool,
    qcfg: &QuadratureConfig<T>,
) -> Result<T, EnergyError> {
    let shifts = if k > T::zero() {
        Some(plasmon_shifts(model, k, distance).map_err(|source| EnergyError::BranchLost {
            k: k.as_f64(),
            distance: distance.as_f64(),
            source,
        })?)
    } else {
        None
    };
    let mut sum = T::zero();
    for pol in Polarization::ALL {
        sum += photonic_phase_integral(model, pol, k, distance, cutoff, shifts.as_ref(), qcfg)?;
    }
    if let Some(s) = shifts {
        if s.plus_propagating() && !split {
            // the propagating part of ω+ is plasmonic under the default attribution
            sum -= (s.omega_plus - k) / T::lit(2.0);
        }
    }
    Ok(sum)
}

/// Result of [`photonic_energy_direct`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectPhotonic<T> {
    pub energy_per_area: T,
    pub error: T,
    /// Lower of the two frequency cutoffs.
    pub cutoff: T,
    /// Unextrapolated values at `cutoff` and `2·cutoff`.
    pub raw: (T, T),
}

/// Photonic energy from the phase of `1 − r² e^{2ik_zL}` on the real
/// frequency axis, extrapolated in the frequency cutoff `Ω` from `Ω` and `2Ω`
/// assuming an `Ω⁻⁴` remainder.
pub fn photonic_energy_direct<T: Real>(
    model: &MirrorModel<T>,
    distance: T,
    cfg: &NumericsConfig<T>,
) -> Result<DirectPhotonic<T>, EnergyError> {
    check_distance(distance)?;
    cfg.validate()?;
    let d = &cfg.direct;
    let k_max = d.k_max_kl / distance;
    let cutoff = (d.cutoff_over_omega_p * model.omega_p()).max(T::lit(2.0) * k_max);
    let inner = QuadratureConfig { rel_tol: d.rel_tol, abs_tol: T::lit(1e-15), ..cfg.quadrature };
    let outer = QuadratureConfig { rel_tol: d.rel_tol * T::lit(10.0), abs_tol: T::lit(1e-15), ..cfg.quadrature };
    let k_c = light_line_crossing(model, distance);
    let points: Vec<T> = if k_c < k_max { vec![T::zero(), k_c, k_max] } else { vec![T::zero(), k_max] };

    let at = |omega_cut: T| -> Result<(T, T), EnergyError> {
        let mut failure = Failure(None);
        let f = |k: T| {
            k * failure.record(photonic_per_k(model, k, distance, omega_cut, cfg.split_at_light_line, &inner))
        };
        let i = integrate_segments(f, &points, &outer)?;
        failure.check()?;
        Ok((i.value / T::TAU(), i.error / T::TAU()))
    };
    let (lo, hi) = rayon::join(|| at(cutoff), || at(cutoff + cutoff));
    let ((e1, err1), (e2, err2)) = (lo?, hi?);
    let change = (e2 - e1).abs();
    if change > d.max_cutoff_change * e2.abs() {
        return Err(EnergyError::Extrapolation(format!(
            "photonic energy changes from {e1} to {e2} when the cutoff doubles from {cutoff}"
        )));
    }
    let extrapolated = e2 + (e2 - e1) / T::lit(15.0);
    Ok(DirectPhotonic {
        energy_per_area: extrapolated,
        error: change / T::lit(15.0) + err1 + err2,
        cutoff,
        raw: (e1, e2),
    })
}

/// `(1/2π) ∫₀^∞ dξ Σ_pol ln(1 − r² e^{−2κL})` at fixed `k`.
pub fn lifshitz_per_k<T: Real>(
    model: &MirrorModel<T>,
    k: T,
    distance: T,
    qcfg: &QuadratureConfig<T>,
) -> Result<T, NumericsError> {
    let f = |xi: T| -> T {
        let kappa = (k * k + xi * xi).sqrt();
        let decay = (-(kappa + kappa) * distance).exp();
        Polarization::ALL
            .iter()
            .map(|&pol| {
                let r = reflection_imag_axis(model, pol, xi, k);
                (-(r * r * decay)).ln_1p()
            })
            .sum()
    };
    let first = T::one() / distance;
    let i = integrate_semi_infinite(f, T::zero(), first, T::lit(20.0) * first, qcfg)?;
    Ok(i.value / T::TAU())
}
