//! Bracketed scalar root finding (Brent's method).
//!
//! Inverse quadratic interpolation and secant steps are tried first and
//! bisection is the fallback, so the bracket always shrinks. No derivatives
//! are used: the cavity mode functions have square-root branch points at the
//! light line.

use crate::error::NumericsError;
use crate::scalar::Real;

/// Tolerances for [`find_root_bracketed`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootConfig<T> {
    /// Absolute tolerance on the root location (frequency units of ω_p).
    pub abs_tol: T,
    /// Relative tolerance on the root location.
    pub rel_tol: T,
    pub max_iter: usize,
}

impl<T: Real> Default for RootConfig<T> {
    fn default() -> Self {
        Self {
            abs_tol: T::lit(1e-12),
            rel_tol: T::lit(4.0) * T::epsilon(),
            max_iter: 200,
        }
    }
}

impl<T: Real> RootConfig<T> {
    /// Tolerances at the resolution limit of `T` for roots of magnitude `scale`.
    pub fn machine(scale: T) -> Self {
        Self {
            abs_tol: T::epsilon() * scale.abs().max(T::min_positive_value()),
            rel_tol: T::lit(2.0) * T::epsilon(),
            max_iter: 400,
        }
    }

    fn validate(&self) -> Result<(), NumericsError> {
        if !(self.abs_tol > T::zero()) || !(self.rel_tol >= T::zero()) || self.max_iter == 0 {
            return Err(NumericsError::Domain(format!(
                "invalid root tolerances abs_tol={} rel_tol={} max_iter={}",
                self.abs_tol, self.rel_tol, self.max_iter
            )));
        }
        Ok(())
    }
}

/// A converged root together with the final bracket.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root<T> {
    pub x: T,
    pub fx: T,
    /// Final bracket `[lo, hi]` containing a sign change (or the exact zero).
    pub bracket: (T, T),
    pub iterations: usize,
}

/// Finds a root of `f` in `[lo, hi]`; `f(lo)` and `f(hi)` must differ in sign.
///
/// The result lies inside the initial bracket and the final bracket width is
/// at most `abs_tol + rel_tol·|x|`. Evaluation order is fixed, so repeated
/// calls return bit-identical results.
pub fn find_root_bracketed<T, F>(
    mut f: F,
    lo: T,
    hi: T,
    cfg: &RootConfig<T>,
) -> Result<Root<T>, NumericsError>
where
    T: Real,
    F: FnMut(T) -> T,
{
    cfg.validate()?;
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(NumericsError::Domain(format!(
            "bracket [{lo}, {hi}] must be finite"
        )));
    }
    let f_lo = f(lo);
    let f_hi = f(hi);
    find_root_with_values(f, (lo, f_lo), (hi, f_hi), cfg)
}

/// Same as [`find_root_bracketed`] when the end-point values are already known.
pub fn find_root_with_values<T, F>(
    mut f: F,
    (lo, f_lo): (T, T),
    (hi, f_hi): (T, T),
    cfg: &RootConfig<T>,
) -> Result<Root<T>, NumericsError>
where
    T: Real,
    F: FnMut(T) -> T,
{
    cfg.validate()?;
    if f_lo.is_nan() {
        return Err(NumericsError::NonFinite { x: lo.as_f64() });
    }
    if f_hi.is_nan() {
        return Err(NumericsError::NonFinite { x: hi.as_f64() });
    }
    if f_lo == T::zero() {
        return Ok(Root { x: lo, fx: f_lo, bracket: (lo, lo), iterations: 0 });
    }
    if f_hi == T::zero() {
        return Ok(Root { x: hi, fx: f_hi, bracket: (hi, hi), iterations: 0 });
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(NumericsError::NoBracket {
            lo: lo.as_f64(),
            hi: hi.as_f64(),
            f_lo: f_lo.as_f64(),
            f_hi: f_hi.as_f64(),
        });
    }

    let two = T::lit(2.0);
    let three = T::lit(3.0);

    // `cur` is the best estimate, `blk` the opposite end of the bracket,
    // `pre` the previous iterate.
    let (mut xpre, mut fpre) = (lo, f_lo);
    let (mut xcur, mut fcur) = (hi, f_hi);
    let (mut xblk, mut fblk) = (T::zero(), T::zero());
    let (mut spre, mut scur) = (T::zero(), T::zero());

    for iter in 1..=cfg.max_iter {
        if fpre != T::zero() && fcur != T::zero() && fpre.signum() != fcur.signum() {
            xblk = xpre;
            fblk = fpre;
            spre = xcur - xpre;
            scur = spre;
        }
        if fblk.abs() < fcur.abs() {
            xpre = xcur;
            xcur = xblk;
            xblk = xpre;
            fpre = fcur;
            fcur = fblk;
            fblk = fpre;
        }

        let delta = (cfg.abs_tol + cfg.rel_tol * xcur.abs()) / two;
        let sbis = (xblk - xcur) / two;
        if fcur == T::zero() || sbis.abs() < delta {
            let bracket = if xcur < xblk { (xcur, xblk) } else { (xblk, xcur) };
            return Ok(Root { x: xcur, fx: fcur, bracket, iterations: iter });
        }

        if spre.abs() > delta && fcur.abs() < fpre.abs() {
            let stry = if xpre == xblk {
                // secant
                -fcur * (xcur - xpre) / (fcur - fpre)
            } else {
                // inverse quadratic
                let dpre = (fpre - fcur) / (xpre - xcur);
                let dblk = (fblk - fcur) / (xblk - xcur);
                -fcur * (fblk * dblk - fpre * dpre) / (dblk * dpre * (fblk - fpre))
            };
            if two * stry.abs() < spre.abs().min(three * sbis.abs() - delta) {
                spre = scur;
                scur = stry;
            } else {
                spre = sbis;
                scur = sbis;
            }
        } else {
            spre = sbis;
            scur = sbis;
        }

        xpre = xcur;
        fpre = fcur;
        if scur.abs() > delta {
            xcur += scur;
        } else {
            xcur += if sbis > T::zero() { delta } else { -delta };
        }
        fcur = f(xcur);
        if fcur.is_nan() {
            return Err(NumericsError::NonFinite { x: xcur.as_f64() });
        }
    }

    Err(NumericsError::Convergence {
        iterations: cfg.max_iter,
        best: xcur.as_f64(),
    })
}
