//! Cavity modes between two plasma mirrors.
//!
//! Photonic modes solve `k_z L + δ(k_z) = mπ` in the propagating sector.
//! The two coupled surface plasmons are solved in factored, pole-free forms
//! of `r² e^{2ik_zL} = 1`, written in `w = ω²` and the signed variable
//! `t = k² − ω²` (`t = κ² > 0` evanescent, `t = −k_z² < 0` propagating),
//! with `κ_m² = t + ω_p²`:
//!
//! * `ω+` (symmetric, `r e^{−κL} = −1`):
//!   `H₊ = (w − ω_p²) + w κ_m tanh(κL/2)/κ` for `t > 0`, continued analytically
//!   to `(w − ω_p²) cos(k_zL/2) + w κ_m sin(k_zL/2)/k_z` for `t ≤ 0`;
//! * `ω−` (antisymmetric, `r e^{−κL} = +1`):
//!   `H₋ = (w − ω_p²) κ tanh(κL/2) + w κ_m`, evanescent only.
//!
//! Both tend to the single-interface plasmon `εκ + κ_m = 0` as `L → ∞`.
//! `ω+` leaves the evanescent sector exactly when `k < k_c`, with
//! `k_c = ω_p / sqrt(1 + ω_p L/2)`.
//!
//! With the phase convention of [`crate::optics`], the TM equation of order
//! `m = 1` is solved (for `k > 0`) by the propagating part of `ω+`, so TM
//! photonic modes start at `m = 2`.

use std::fmt;

use crate::error::{ModeError, NumericsError};
use crate::numerics::{
    continue_branch, find_root_with_values, BranchTrack, ContinuationConfig, FnProblem, RootConfig,
    Termination,
};
use crate::optics::{classify, phase_shift_kz, FrequencySector, MirrorModel, Polarization};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModeBranch {
    Photonic(u32),
    PlasmonPlus,
    PlasmonMinus,
}

impl ModeBranch {
    pub fn label(&self) -> &'static str {
        match self {
            Self::Photonic(_) => "photonic",
            Self::PlasmonPlus => "plasmon+",
            Self::PlasmonMinus => "plasmon-",
        }
    }

    pub fn order(&self) -> Option<u32> {
        match self {
            Self::Photonic(m) => Some(*m),
            _ => None,
        }
    }
}

impl fmt::Display for ModeBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Photonic(m) => write!(f, "photonic({m})"),
            other => f.write_str(other.label()),
        }
    }
}

/// One solved cavity mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModePoint<T> {
    pub pol: Polarization,
    pub branch: ModeBranch,
    pub k: T,
    pub distance: T,
    pub omega: T,
    /// Signed `ω² − k²`: `k_z²` when propagating, `−κ²` when evanescent.
    pub kz_sq: T,
    pub sector: FrequencySector,
}

impl<T: Real> ModePoint<T> {
    /// Real longitudinal wavevector, if propagating.
    pub fn kz(&self) -> Option<T> {
        (self.sector == FrequencySector::Propagating).then(|| self.kz_sq.max(T::zero()).sqrt())
    }
}

/// Single-interface surface-plasmon frequency,
/// `ω_sp² = (ω_p² + 2k² − sqrt(ω_p⁴ + 4k⁴))/2`.
pub fn spp_frequency<T: Real>(model: &MirrorModel<T>, k: T) -> T {
    spp_parts(model.omega_p() * model.omega_p(), k).0.sqrt()
}

/// `(w_sp, t_sp)` = `(ω_sp², k² − ω_sp²)`, both without cancellation.
pub(crate) fn spp_parts<T: Real>(wp2: T, k: T) -> (T, T) {
    let two = T::lit(2.0);
    let k2 = k * k;
    let s = (wp2 * wp2 + T::lit(4.0) * k2 * k2).sqrt();
    let d = wp2 + two * k2 + s;
    let w_sp = two * k2 * wp2 / d;
    // ω_p² − 2 w_sp, rewritten to avoid cancellation at large k
    let gap = wp2 * (wp2 + wp2 * wp2 / (s + two * k2)) / d;
    let t_sp = if gap > T::zero() { w_sp * w_sp / gap } else { k2 - w_sp };
    (w_sp, t_sp)
}

/// Wavevector below which `ω+` is propagating.
pub fn light_line_crossing<T: Real>(model: &MirrorModel<T>, distance: T) -> T {
    let wp = model.omega_p();
    wp / (T::one() + wp * distance / T::lit(2.0)).sqrt()
}

/// `tanh(a)/a` and `sin(a)/a` with series near zero.
fn tanhc<T: Real>(a: T) -> T {
    if a.abs() < T::lit(1e-4) {
        T::one() - a * a / T::lit(3.0)
    } else {
        a.tanh() / a
    }
}

fn sinc<T: Real>(a: T) -> T {
    if a.abs() < T::lit(1e-4) {
        T::one() - a * a / T::lit(6.0)
    } else {
        a.sin() / a
    }
}

pub(crate) fn h_plus<T: Real>(wp2: T, distance: T, w: T, t: T) -> T {
    let half = distance / T::lit(2.0);
    let km = (t + wp2).max(T::zero()).sqrt();
    if t > T::zero() {
        let a = t.sqrt() * half;
        (w - wp2) + w * km * half * tanhc(a)
    } else {
        let a = (-t).sqrt() * half;
        (w - wp2) * a.cos() + w * km * half * sinc(a)
    }
}

pub(crate) fn h_minus<T: Real>(wp2: T, distance: T, w: T, t: T) -> T {
    let kappa = t.max(T::zero()).sqrt();
    let km = (t + wp2).sqrt();
    (w - wp2) * kappa * (kappa * distance / T::lit(2.0)).tanh() + w * km
}

fn check_geometry<T: Real>(k: T, distance: T) -> Result<(), ModeError> {
    if !(k >= T::zero()) || !k.is_finite() {
        return Err(ModeError::Domain(format!("wavevector must be non-negative, got {k}")));
    }
    if !(distance > T::zero()) || !distance.is_finite() {
        return Err(ModeError::Domain(format!("distance must be positive, got {distance}")));
    }
    Ok(())
}

/// Real function whose zeros along `branch` are the cavity modes.
///
/// * `Photonic(m)`: `k_z L + δ − mπ` (propagating sector only);
/// * `PlasmonPlus`: `H₊` (either sector, TM only);
/// * `PlasmonMinus`: `H₋` (evanescent sector, TM only).
pub fn mode_function<T: Real>(
    model: &MirrorModel<T>,
    pol: Polarization,
    branch: ModeBranch,
    omega: T,
    k: T,
    distance: T,
) -> Result<T, ModeError> {
    check_geometry(k, distance)?;
    if !(omega > T::zero()) {
        return Err(ModeError::Domain(format!("frequency must be positive, got {omega}")));
    }
    let wp2 = model.omega_p() * model.omega_p();
    let w = omega * omega;
    let t = k * k - w;
    let sector = classify(omega, k);
    match branch {
        ModeBranch::Photonic(m) => {
            if sector != FrequencySector::Propagating {
                return Err(ModeError::SectorMismatch {
                    omega: omega.as_f64(),
                    k: k.as_f64(),
                    expected: "propagating",
                });
            }
            let q = (-t).max(T::zero()).sqrt();
            Ok(q * distance + phase_shift_kz(model, pol, q, k) - T::from_u32(m).unwrap() * T::PI())
        }
        _ if pol == Polarization::TE => Err(ModeError::NoMode { pol, what: "plasmonic" }),
        ModeBranch::PlasmonPlus => Ok(h_plus(wp2, distance, w, t)),
        ModeBranch::PlasmonMinus => {
            if sector != FrequencySector::Evanescent {
                return Err(ModeError::SectorMismatch {
                    omega: omega.as_f64(),
                    k: k.as_f64(),
                    expected: "evanescent",
                });
            }
            Ok(h_minus(wp2, distance, w, t))
        }
    }
}

/// Scale-free residual of the mode condition: `|f| / Σ|terms of f|`.
pub fn mode_residual<T: Real>(model: &MirrorModel<T>, point: &ModePoint<T>) -> Result<T, ModeError> {
    let f = mode_function(model, point.pol, point.branch, point.omega, point.k, point.distance)?;
    let wp2 = model.omega_p() * model.omega_p();
    let w = point.omega * point.omega;
    let scale = match point.branch {
        ModeBranch::Photonic(m) => T::from_u32(m).unwrap() * T::PI(),
        ModeBranch::PlasmonPlus => (w - wp2).abs() + w * (point.k * point.k - w + wp2).max(T::zero()).sqrt() * point.distance,
        ModeBranch::PlasmonMinus => {
            let t = point.k * point.k - w;
            (w - wp2).abs() * t.sqrt() + w * (t + wp2).sqrt()
        }
    };
    Ok(f.abs() / scale)
}

/// Root of `f` on `[lo, hi]`; known end-point values may be supplied so the
/// single-interface end is evaluated from its precise `(w, t)` pair.
fn root_in<T: Real, F: Fn(T) -> T>(
    f: F,
    (lo, flo): (T, Option<T>),
    (hi, fhi): (T, Option<T>),
) -> Result<T, NumericsError> {
    let cfg = RootConfig::machine(lo.abs().max(hi.abs()));
    let flo = flo.unwrap_or_else(|| f(lo));
    let fhi = fhi.unwrap_or_else(|| f(hi));
    find_root_with_values(f, (lo, flo), (hi, fhi), &cfg).map(|r| r.x)
}

/// Largest longitudinal wavevector scanned for photonic modes.
fn kz_cap<T: Real>(model: &MirrorModel<T>) -> T {
    model.omega_p() * (T::one() - T::lit(1e-12))
}

/// Photonic modes of orders up to `m_max` below the transparency bound
/// `k_z < ω_p`, sorted by order. TM orders start at 2 (see module docs).
pub fn solve_photonic<T: Real>(
    model: &MirrorModel<T>,
    pol: Polarization,
    k: T,
    distance: T,
    m_max: u32,
) -> Result<Vec<ModePoint<T>>, ModeError> {
    check_geometry(k, distance)?;
    if m_max == 0 {
        return Err(ModeError::Domain("m_max must be at least 1".into()));
    }
    let roots = photonic_roots(model, pol, k, distance, m_max);
    Ok(roots
        .into_iter()
        .map(|(m, q)| ModePoint {
            pol,
            branch: ModeBranch::Photonic(m),
            k,
            distance,
            omega: (k * k + q * q).sqrt(),
            kz_sq: q * q,
            sector: FrequencySector::Propagating,
        })
        .collect())
}

/// `(order, k_z)` of photonic modes, found by scanning `k_z L + δ` on a grid
/// of spacing `π/(64L)` and refining each upward crossing of `mπ`.
pub(crate) fn photonic_roots<T: Real>(
    model: &MirrorModel<T>,
    pol: Polarization,
    k: T,
    distance: T,
    m_max: u32,
) -> Vec<(u32, T)> {
    let cap = kz_cap(model);
    let phase = |q: T| q * distance + phase_shift_kz(model, pol, q, k);
    let first = match pol {
        Polarization::TE => 1,
        Polarization::TM => 2,
    };
    let top_order = ((phase(cap) / T::PI()).ceil().to_u32().unwrap_or(0)).saturating_sub(1);
    let last = top_order.min(m_max);
    if last < first {
        return Vec::new();
    }
    let h = (T::PI() / (T::lit(64.0) * distance)).min(cap / T::lit(64.0));
    let n = (cap / h).ceil().to_usize().unwrap_or(64).max(1);
    let mut out = Vec::with_capacity((last - first + 1) as usize);
    let mut next = first;
    let mut q0 = T::zero();
    let mut g0 = phase(q0);
    for i in 1..=n {
        if next > last {
            break;
        }
        let q1 = if i == n { cap } else { h * T::from_usize(i).unwrap() };
        let g1 = phase(q1);
        while next <= last {
            let target = T::from_u32(next).unwrap() * T::PI();
            if g0 < target && g1 >= target {
                let f = |q: T| phase(q) - target;
                if let Ok(q) = find_root_with_values(
                    f,
                    (q0, g0 - target),
                    (q1, g1 - target),
                    &RootConfig::machine(q1),
                ) {
                    out.push((next, q.x));
                }
                next += 1;
            } else {
                break;
            }
        }
        q0 = q1;
        g0 = g1;
    }
    out
}

/// Frequency shifts of the two plasmons from the single-interface value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlasmonShifts<T> {
    pub omega_sp: T,
    pub omega_plus: T,
    pub omega_minus: T,
    /// `ω+ − ω_sp ≥ 0`, computed without cancellation.
    pub delta_plus: T,
    /// `ω− − ω_sp ≤ 0`, computed without cancellation.
    pub delta_minus: T,
    /// Signed `k² − ω²` of each branch.
    pub t_plus: T,
    pub t_minus: T,
}

impl<T: Real> PlasmonShifts<T> {
    pub fn plus_propagating(&self) -> bool {
        self.t_plus <= T::zero()
    }
}

/// Both plasmon frequencies at `(k, L)` for `k > 0`, by sign-bracketed Brent
/// iteration in whichever of `w`, `t` is smaller at the single-interface
/// point, so the shift from `ω_sp` keeps full relative precision.
pub fn plasmon_shifts<T: Real>(model: &MirrorModel<T>, k: T, distance: T) -> Result<PlasmonShifts<T>, ModeError> {
    check_geometry(k, distance)?;
    if !(k > T::zero()) {
        return Err(ModeError::Domain("plasmonic modes need k > 0".into()));
    }
    let wp = model.omega_p();
    let wp2 = wp * wp;
    let k2 = k * k;
    let (w_sp, t_sp) = spp_parts(wp2, k);
    let omega_sp = w_sp.sqrt();
    let by_w = w_sp <= t_sp;

    // ω−: w ∈ (0, w_sp) ⇔ t ∈ (t_sp, k²); H₋(0) < 0 < H₋(sp) unless rounding hides the split.
    let hm = |w: T, t: T| h_minus(wp2, distance, w, t);
    let hm_sp = hm(w_sp, t_sp);
    let (t_minus, dw_minus) = if !(hm_sp > T::zero()) {
        (t_sp, T::zero())
    } else if by_w {
        let w = root_in(|w| hm(w, k2 - w), (T::zero(), None), (w_sp, Some(hm_sp)))?;
        (k2 - w, w - w_sp)
    } else {
        let t = root_in(|t| hm(k2 - t, t), (t_sp, Some(hm_sp)), (k2, None))?;
        (t, t_sp - t)
    };

    let hp = |w: T, t: T| h_plus(wp2, distance, w, t);
    let hp_line = hp(k2, T::zero());
    let (t_plus, dw_plus) = if hp_line > T::zero() {
        // evanescent: w ∈ (w_sp, k²) ⇔ t ∈ (0, t_sp); H₊(sp) < 0
        let hp_sp = hp(w_sp, t_sp);
        if !(hp_sp < T::zero()) {
            (t_sp, T::zero())
        } else if by_w {
            let w = root_in(|w| hp(w, k2 - w), (w_sp, Some(hp_sp)), (k2, Some(hp_line)))?;
            (k2 - w, w - w_sp)
        } else {
            let t = root_in(|t| hp(k2 - t, t), (T::zero(), Some(hp_line)), (t_sp, Some(hp_sp)))?;
            (t, t_sp - t)
        }
    } else {
        let qmax = wp.min(T::PI() / distance) * (T::one() - T::lit(1e-12));
        let t = root_in(|t| hp(k2 - t, t), (-qmax * qmax, None), (T::zero(), Some(hp_line)))?;
        (t, t_sp - t)
    };

    let finish = |dw: T| {
        let omega = (w_sp + dw).sqrt();
        (omega, dw / (omega + omega_sp))
    };
    let (omega_plus, delta_plus) = finish(dw_plus);
    let (omega_minus, delta_minus) = finish(dw_minus);
    Ok(PlasmonShifts { omega_sp, omega_plus, omega_minus, delta_plus, delta_minus, t_plus, t_minus })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlasmonPair<T> {
    pub minus: ModePoint<T>,
    pub plus: ModePoint<T>,
}

/// The two TM plasmonic modes at `(k, L)`, `k > 0`.
pub fn solve_plasmonic<T: Real>(model: &MirrorModel<T>, k: T, distance: T) -> Result<PlasmonPair<T>, ModeError> {
    let s = plasmon_shifts(model, k, distance)?;
    let point = |branch, omega: T, t: T| ModePoint {
        pol: Polarization::TM,
        branch,
        k,
        distance,
        omega,
        kz_sq: -t,
        sector: if t > T::zero() { FrequencySector::Evanescent } else { FrequencySector::Propagating },
    };
    Ok(PlasmonPair {
        minus: point(ModeBranch::PlasmonMinus, s.omega_minus, s.t_minus),
        plus: point(ModeBranch::PlasmonPlus, s.omega_plus, s.t_plus),
    })
}

/// One sample of a dispersion curve at fixed `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionSample<T> {
    pub kl_over_pi: T,
    pub omega: T,
    /// Real longitudinal wavevector when propagating.
    pub kz: Option<T>,
    pub sector: FrequencySector,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DispersionCurve<T> {
    pub branch: ModeBranch,
    pub pol: Polarization,
    pub fixed_k: T,
    /// Ordered by distance.
    pub points: Vec<DispersionSample<T>>,
    pub termination: Termination<T>,
}

/// Follows one branch at fixed `k` along a monotone distance schedule by
/// continuation in `L`.
///
/// The unknown is `k_z` for photonic branches, `t = k² − ω²` for `ω+` (a
/// single smooth residual across the light line) and `w = ω²` for `ω−`.
/// Photonic curves start at the first scheduled distance where the order
/// exists; distances before its birth are omitted.
pub fn dispersion_sweep<T: Real>(
    model: &MirrorModel<T>,
    branch: ModeBranch,
    pol: Polarization,
    k: T,
    schedule: &[T],
) -> Result<DispersionCurve<T>, ModeError> {
    if schedule.is_empty() {
        return Err(ModeError::Domain("empty distance schedule".into()));
    }
    for &l in schedule {
        check_geometry(k, l)?;
    }
    let increasing = schedule.windows(2).all(|w| w[1] > w[0]);
    let decreasing = schedule.windows(2).all(|w| w[1] < w[0]);
    if !(increasing || decreasing) {
        return Err(ModeError::Domain("distance schedule must be strictly monotone".into()));
    }
    if pol == Polarization::TE && !matches!(branch, ModeBranch::Photonic(_)) {
        return Err(ModeError::NoMode { pol, what: "plasmonic" });
    }
    let wp = model.omega_p();
    let wp2 = wp * wp;
    let k2 = k * k;
    let cfg = ContinuationConfig::default();
    let sample = |l: T, omega: T, t: T| DispersionSample {
        kl_over_pi: k * l / T::PI(),
        omega,
        kz: (t <= T::zero()).then(|| (-t).sqrt()),
        sector: if t > T::zero() { FrequencySector::Evanescent } else { FrequencySector::Propagating },
    };

    let (start, track, to_sample): (usize, BranchTrack<T>, Box<dyn Fn(T, T) -> DispersionSample<T> + '_>) =
        match branch {
            ModeBranch::Photonic(m) => {
                if m == 0 {
                    return Err(ModeError::Domain("photonic order must be at least 1".into()));
                }
                let Some((start, q0)) = schedule.iter().enumerate().find_map(|(i, &l)| {
                    photonic_roots(model, pol, k, l, m)
                        .into_iter()
                        .find(|&(mm, _)| mm == m)
                        .map(|(_, q)| (i, q))
                }) else {
                    return Err(ModeError::NoMode { pol, what: "photonic mode of this order in the schedule" });
                };
                let target = T::from_u32(m).unwrap() * T::PI();
                let problem = FnProblem {
                    residual: move |l: T, q: T| q * l + phase_shift_kz(model, pol, q, k) - target,
                    domain: move |_l: T| (T::zero(), kz_cap(model)),
                };
                let track = continue_branch(&problem, schedule[start], q0, &schedule[start + 1..], &cfg)?;
                (start, track, Box::new(move |l, q| sample(l, (k2 + q * q).sqrt(), -q * q)))
            }
            ModeBranch::PlasmonPlus => {
                let s0 = plasmon_shifts(model, k, schedule[0])?;
                let problem = FnProblem {
                    residual: move |l: T, t: T| h_plus(wp2, l, k2 - t, t),
                    domain: move |l: T| {
                        let qmax = wp.min(T::PI() / l) * (T::one() - T::lit(1e-12));
                        (-qmax * qmax, spp_parts(wp2, k).1)
                    },
                };
                let track = continue_branch(&problem, schedule[0], s0.t_plus, &schedule[1..], &cfg)?;
                (0, track, Box::new(move |l, t| sample(l, (k2 - t).sqrt(), t)))
            }
            ModeBranch::PlasmonMinus => {
                let s0 = plasmon_shifts(model, k, schedule[0])?;
                let w_sp = spp_parts(wp2, k).0;
                let problem = FnProblem {
                    residual: move |l: T, w: T| h_minus(wp2, l, w, k2 - w),
                    domain: move |_l: T| (T::zero(), w_sp),
                };
                let w0 = k2 - s0.t_minus;
                let track = continue_branch(&problem, schedule[0], w0, &schedule[1..], &cfg)?;
                (0, track, Box::new(move |l, w| sample(l, w.sqrt(), k2 - w)))
            }
        };

    // the start point itself is re-solved by the tracker only implicitly; add it
    let first = match branch {
        ModeBranch::Photonic(m) => photonic_roots(model, pol, k, schedule[start], m)
            .into_iter()
            .find(|&(mm, _)| mm == m)
            .map(|(_, q)| to_sample(schedule[start], q)),
        ModeBranch::PlasmonPlus => {
            let s = plasmon_shifts(model, k, schedule[0])?;
            Some(to_sample(schedule[0], s.t_plus))
        }
        ModeBranch::PlasmonMinus => {
            let s = plasmon_shifts(model, k, schedule[0])?;
            Some(to_sample(schedule[0], k2 - s.t_minus))
        }
    };
    let mut points: Vec<DispersionSample<T>> = first.into_iter().collect();
    points.extend(track.points.iter().map(|p| to_sample(p.param, p.root)));
    Ok(DispersionCurve { branch, pol, fixed_k: k, points, termination: track.termination })
}
