//! Adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! Finite intervals use global adaptive bisection (largest error first).
//! Semi-infinite intervals are covered by panels of geometrically growing
//! width until a run of negligible panels past a caller-supplied start
//! point ends the sweep.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::NumericsError;
use crate::scalar::Real;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Accuracy controls for [`integrate_adaptive`] and [`integrate_semi_infinite`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig<T> {
    pub rel_tol: T,
    pub abs_tol: T,
    /// Bisection budget per finite interval (per panel for semi-infinite ranges).
    pub max_subdivisions: usize,
    /// Number of consecutive negligible panels that ends a semi-infinite sweep.
    pub tail_panels: usize,
}

impl<T: Real> Default for QuadratureConfig<T> {
    fn default() -> Self {
        Self {
            rel_tol: T::lit(1e-9),
            abs_tol: T::lit(1e-14),
            max_subdivisions: 10_000,
            tail_panels: 3,
        }
    }
}

impl<T: Real> QuadratureConfig<T> {
    pub fn with_rel_tol(self, rel_tol: T) -> Self {
        Self { rel_tol, ..self }
    }

    fn validate(&self) -> Result<(), NumericsError> {
        if !(self.rel_tol > T::zero())
            || !(self.abs_tol > T::zero())
            || self.max_subdivisions == 0
            || self.tail_panels == 0
        {
            return Err(NumericsError::Domain(format!(
                "invalid quadrature config rel_tol={} abs_tol={} max_subdivisions={} tail_panels={}",
                self.rel_tol, self.abs_tol, self.max_subdivisions, self.tail_panels
            )));
        }
        Ok(())
    }
}

/// Value and error estimate of a definite integral.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Integral<T> {
    pub value: T,
    pub error: T,
    pub evaluations: usize,
    pub intervals: usize,
}

impl<T: Real> Integral<T> {
    fn absorb(&mut self, other: Integral<T>) {
        self.value += other.value;
        self.error += other.error;
        self.evaluations += other.evaluations;
        self.intervals += other.intervals;
    }
}

struct Segment<T> {
    a: T,
    b: T,
    value: T,
    error: T,
    seq: usize,
}

impl<T: Real> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<T: Real> Eq for Segment<T> {}
impl<T: Real> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Real> Ord for Segment<T> {
    // Largest error first; ties broken by creation order so the refinement
    // sequence is reproducible.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .partial_cmp(&other.error)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

fn kronrod15<T, F>(f: &mut F, a: T, b: T) -> Result<(T, T), NumericsError>
where
    T: Real,
    F: FnMut(T) -> T,
{
    let half = T::lit(0.5);
    let center = half * (a + b);
    let hlen = half * (b - a);
    let eval = |f: &mut F, x: T| -> Result<T, NumericsError> {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(NumericsError::NonFinite { x: x.as_f64() })
        }
    };

    let fc = eval(f, center)?;
    let mut resg = fc * T::lit(WG[3]);
    let mut resk = fc * T::lit(WGK[7]);
    let mut resabs = resk.abs();
    let mut fv1 = [T::zero(); 7];
    let mut fv2 = [T::zero(); 7];
    for j in 0..7 {
        let dx = hlen * T::lit(XGK[j]);
        let f1 = eval(f, center - dx)?;
        let f2 = eval(f, center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        let wk = T::lit(WGK[j]);
        resk += wk * (f1 + f2);
        resabs += wk * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += T::lit(WG[j / 2]) * (f1 + f2);
        }
    }
    let reskh = resk * half;
    let mut resasc = T::lit(WGK[7]) * (fc - reskh).abs();
    for j in 0..7 {
        resasc += T::lit(WGK[j]) * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }
    let value = resk * hlen;
    let resabs = resabs * hlen.abs();
    let resasc = resasc * hlen.abs();
    let mut err = ((resk - resg) * hlen).abs();
    if resasc != T::zero() && err != T::zero() {
        err = resasc * T::one().min((T::lit(200.0) * err / resasc).powf(T::lit(1.5)));
    }
    if resabs > T::min_positive_value() / (T::lit(50.0) * T::epsilon()) {
        err = err.max(T::lit(50.0) * T::epsilon() * resabs);
    }
    Ok((value, err))
}

/// Adaptive integral over a finite interval with an additional absolute
/// floor on the requested error (used when the interval is one panel of a
/// larger integral).
fn adaptive_finite<T, F>(
    f: &mut F,
    a: T,
    b: T,
    cfg: &QuadratureConfig<T>,
    abs_floor: T,
) -> Result<Integral<T>, NumericsError>
where
    T: Real,
    F: FnMut(T) -> T,
{
    if a == b {
        return Ok(Integral::default());
    }
    let (value, error) = kronrod15(f, a, b)?;
    let mut evaluations = 15;
    let mut heap = BinaryHeap::new();
    let mut done: Vec<Segment<T>> = Vec::new();
    let mut seq = 0usize;
    heap.push(Segment { a, b, value, error, seq });
    let mut total = value;
    let mut total_err = error;
    let mut subdivisions = 0usize;
    let tiny = T::lit(100.0) * T::epsilon();

    loop {
        let target = cfg.abs_tol.max(abs_floor).max(cfg.rel_tol * total.abs());
        if total_err <= target {
            break;
        }
        let Some(worst) = heap.pop() else { break };
        let mid = T::lit(0.5) * (worst.a + worst.b);
        if (worst.b - worst.a).abs() <= tiny * mid.abs().max(T::min_positive_value()) {
            // cannot be resolved further in this precision
            done.push(worst);
            continue;
        }
        if subdivisions >= cfg.max_subdivisions {
            return Err(NumericsError::Accuracy {
                subdivisions,
                value: total.as_f64(),
                error: total_err.as_f64(),
            });
        }
        subdivisions += 1;
        let (v1, e1) = kronrod15(f, worst.a, mid)?;
        let (v2, e2) = kronrod15(f, mid, worst.b)?;
        evaluations += 30;
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        seq += 1;
        heap.push(Segment { a: worst.a, b: mid, value: v1, error: e1, seq });
        seq += 1;
        heap.push(Segment { a: mid, b: worst.b, value: v2, error: e2, seq });
    }

    // Re-sum in a fixed (positional) order so the result does not depend on
    // how the running total drifted.
    done.extend(heap.into_vec());
    done.sort_by(|x, y| x.a.partial_cmp(&y.a).unwrap_or(Ordering::Equal));
    let value = done.iter().map(|s| s.value).sum();
    let error = done.iter().map(|s| s.error).sum();
    Ok(Integral {
        value,
        error,
        evaluations,
        intervals: done.len(),
    })
}

/// Integrates `f` over `[lo, hi]`. `hi` may be `+∞`, in which case the
/// integrand must decay and the tail is handled by [`integrate_semi_infinite`]
/// with unit first panel and the tail rule armed from `lo`.
pub fn integrate_adaptive<T, F>(
    mut f: F,
    lo: T,
    hi: T,
    cfg: &QuadratureConfig<T>,
) -> Result<Integral<T>, NumericsError>
where
    T: Real,
    F: FnMut(T) -> T,
{
    cfg.validate()?;
    if hi == T::infinity() {
        return integrate_semi_infinite(f, lo, T::one(), lo, cfg);
    }
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(NumericsError::Domain(format!(
            "integration limits [{lo}, {hi}] not supported"
        )));
    }
    adaptive_finite(&mut f, lo, hi, cfg, T::zero())
}

/// Integrates over consecutive segments `points[0]..points[1]..…`; useful
/// when integrand kinks or discontinuities are known in advance.
pub fn integrate_segments<T, F>(
    mut f: F,
    points: &[T],
    cfg: &QuadratureConfig<T>,
) -> Result<Integral<T>, NumericsError>
where
    T: Real,
    F: FnMut(T) -> T,
{
    cfg.validate()?;
    let mut acc = Integral::<T>::default();
    for w in points.windows(2) {
        let floor = T::lit(0.1) * cfg.rel_tol * acc.value.abs();
        acc.absorb(adaptive_finite(&mut f, w[0], w[1], cfg, floor)?);
    }
    Ok(acc)
}

/// Integrates `f` over `[lo, ∞)` by panels `[a, a + h]` whose width doubles
/// from `first_width`. The sweep stops once `cfg.tail_panels` consecutive
/// panels starting at or beyond `tail_start` each contribute less than
/// `max(abs_tol, rel_tol·|total|)`. The last of those panels is added to the
/// error estimate as the truncation error.
pub fn integrate_semi_infinite<T, F>(
    mut f: F,
    lo: T,
    first_width: T,
    tail_start: T,
    cfg: &QuadratureConfig<T>,
) -> Result<Integral<T>, NumericsError>
where
    T: Real,
    F: FnMut(T) -> T,
{
    cfg.validate()?;
    if !(first_width > T::zero()) || !lo.is_finite() {
        return Err(NumericsError::Domain(format!(
            "semi-infinite sweep needs finite start and positive first width (lo={lo}, width={first_width})"
        )));
    }
    const MAX_PANELS: usize = 400;
    let mut acc = Integral::<T>::default();
    let mut a = lo;
    let mut h = first_width;
    let mut quiet = 0usize;
    for _ in 0..MAX_PANELS {
        let b = a + h;
        let floor = T::lit(0.1) * cfg.rel_tol * acc.value.abs();
        let panel = adaptive_finite(&mut f, a, b, cfg, floor)?;
        acc.absorb(panel);
        let negligible = panel.value.abs() <= cfg.abs_tol.max(cfg.rel_tol * acc.value.abs());
        if a >= tail_start && negligible {
            quiet += 1;
            if quiet >= cfg.tail_panels {
                acc.error += panel.value.abs();
                return Ok(acc);
            }
        } else {
            quiet = 0;
        }
        a = b;
        h = h + h;
        if !a.is_finite() {
            break;
        }
    }
    Err(NumericsError::Accuracy {
        subdivisions: acc.intervals,
        value: acc.value.as_f64(),
        error: acc.error.as_f64(),
    })
}
