//! Power-law fits used to extract asymptotic constants from sweeps.

use crate::error::NumericsError;
use crate::scalar::Real;

/// Minimum number of samples accepted by the fits.
pub const MIN_FIT_POINTS: usize = 4;

/// Model for [`fit_power_law`]: `y = a·x^b + offset` with `offset` held fixed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PowerLawModel<T> {
    /// Exponent and prefactor both fitted.
    Free { offset: T },
    /// Only the prefactor is fitted.
    FixedExponent { exponent: T, offset: T },
}

impl<T: Real> PowerLawModel<T> {
    pub fn free() -> Self {
        Self::Free { offset: T::zero() }
    }

    pub fn fixed(exponent: T) -> Self {
        Self::FixedExponent { exponent, offset: T::zero() }
    }

    fn offset(&self) -> T {
        match *self {
            Self::Free { offset } | Self::FixedExponent { offset, .. } => offset,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult<T> {
    pub exponent: T,
    pub prefactor: T,
    /// Root-mean-square residual of the fit in log space.
    pub residual: T,
    /// `[x_min, x_max]` spanned by the data.
    pub window: (T, T),
}

impl<T: Real> FitResult<T> {
    pub fn eval(&self, x: T, offset: T) -> T {
        self.prefactor * x.powf(self.exponent) + offset
    }
}

fn window<T: Real>(points: &[(T, T)]) -> Result<(T, T), NumericsError> {
    if points.len() < MIN_FIT_POINTS {
        return Err(NumericsError::Domain(format!(
            "power-law fit needs at least {MIN_FIT_POINTS} points, got {}",
            points.len()
        )));
    }
    let mut lo = T::infinity();
    let mut hi = T::neg_infinity();
    for &(x, y) in points {
        if !(x > T::zero()) || !x.is_finite() || !y.is_finite() {
            return Err(NumericsError::Domain(format!(
                "power-law fit needs finite samples with x > 0 (got x={x}, y={y})"
            )));
        }
        lo = lo.min(x);
        hi = hi.max(x);
    }
    if !(hi > lo) {
        return Err(NumericsError::Domain("fit window is degenerate".into()));
    }
    Ok((lo, hi))
}

/// Least-squares fit of `y − offset = a·x^b` in log space.
pub fn fit_power_law<T: Real>(
    points: &[(T, T)],
    model: PowerLawModel<T>,
) -> Result<FitResult<T>, NumericsError> {
    let window = window(points)?;
    let offset = model.offset();
    let first = points[0].1 - offset;
    let sign = first.signum();
    if first == T::zero() {
        return Err(NumericsError::Domain("y - offset vanishes".into()));
    }
    let mut logs = Vec::with_capacity(points.len());
    for &(x, y) in points {
        let v = (y - offset) * sign;
        if !(v > T::zero()) {
            return Err(NumericsError::Domain(format!(
                "y - offset changes sign within the data (x={x}, y={y})"
            )));
        }
        logs.push((x.ln(), v.ln()));
    }
    let n = T::from_usize(logs.len()).unwrap();
    let (exponent, ln_a) = match model {
        PowerLawModel::FixedExponent { exponent, .. } => {
            let ln_a = logs.iter().map(|&(lx, ly)| ly - exponent * lx).sum::<T>() / n;
            (exponent, ln_a)
        }
        PowerLawModel::Free { .. } => {
            let mx = logs.iter().map(|p| p.0).sum::<T>() / n;
            let my = logs.iter().map(|p| p.1).sum::<T>() / n;
            let sxx: T = logs.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
            let sxy: T = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
            let b = sxy / sxx;
            (b, my - b * mx)
        }
    };
    let ss: T = logs
        .iter()
        .map(|&(lx, ly)| {
            let r = ly - (ln_a + exponent * lx);
            r * r
        })
        .sum();
    Ok(FitResult {
        exponent,
        prefactor: sign * ln_a.exp(),
        residual: (ss / n).sqrt(),
        window,
    })
}

/// Two-term asymptotic fit `y = a·x^p + c` with the exponent `p` fixed and
/// both `a` and the constant `c` fitted by linear least squares.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeadingTermFit<T> {
    pub exponent: T,
    pub coefficient: T,
    pub constant: T,
    /// Root-mean-square relative residual.
    pub residual: T,
    pub window: (T, T),
}

pub fn fit_leading_term<T: Real>(
    points: &[(T, T)],
    exponent: T,
) -> Result<LeadingTermFit<T>, NumericsError> {
    let window = window(points)?;
    let n = T::from_usize(points.len()).unwrap();
    let us: Vec<T> = points.iter().map(|&(x, _)| x.powf(exponent)).collect();
    let mu = us.iter().copied().sum::<T>() / n;
    let my = points.iter().map(|p| p.1).sum::<T>() / n;
    let suu: T = us.iter().map(|&u| (u - mu) * (u - mu)).sum();
    let suy: T = us.iter().zip(points).map(|(&u, p)| (u - mu) * (p.1 - my)).sum();
    if suu == T::zero() {
        return Err(NumericsError::Domain("fit design matrix is singular".into()));
    }
    let coefficient = suy / suu;
    let constant = my - coefficient * mu;
    let ss: T = us
        .iter()
        .zip(points)
        .map(|(&u, p)| {
            let r = (p.1 - (coefficient * u + constant)) / p.1.abs().max(T::min_positive_value());
            r * r
        })
        .sum();
    Ok(LeadingTermFit {
        exponent,
        coefficient,
        constant,
        residual: (ss / n).sqrt(),
        window,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn quadratic_recovered() {
        let pts: Vec<(f64, f64)> = (1..=4).map(|i| (i as f64, 3.0 * (i * i) as f64)).collect();
        let fit = fit_power_law(&pts, PowerLawModel::free()).unwrap();
        assert!((fit.exponent - 2.0).abs() < 1e-12);
        assert!((fit.prefactor - 3.0).abs() < 1e-12);
        assert!(fit.residual < 1e-12);
        assert_eq!(fit.window, (1.0, 4.0));
    }

    #[test]
    fn fixed_exponent_prefactor() {
        let pts: Vec<(f64, f64)> = (1..=5).map(|i| (i as f64, 0.7 * (i as f64).sqrt() + 1.0)).collect();
        let fit =
            fit_power_law(&pts, PowerLawModel::FixedExponent { exponent: 0.5, offset: 1.0 }).unwrap();
        assert!((fit.prefactor - 0.7).abs() < 1e-12);
    }

    #[test]
    fn negative_data_fits_with_negative_prefactor() {
        let pts: Vec<(f64, f64)> = (1..=4).map(|i| (i as f64, -2.0 * (i as f64).powf(1.5))).collect();
        let fit = fit_power_law(&pts, PowerLawModel::free()).unwrap();
        assert!((fit.prefactor + 2.0).abs() < 1e-12);
        assert!((fit.exponent - 1.5).abs() < 1e-12);
    }

    #[test]
    fn sign_mixed_data_rejected() {
        let pts = [(1.0, 1.0), (2.0, -1.0), (3.0, 2.0), (4.0, 3.0)];
        assert!(matches!(
            fit_power_law(&pts, PowerLawModel::free()),
            Err(NumericsError::Domain(_))
        ));
    }

    #[test]
    fn too_few_points_rejected() {
        let pts = [(1.0, 1.0), (2.0, 2.0)];
        assert!(fit_power_law(&pts, PowerLawModel::free()).is_err());
        assert!(fit_leading_term(&pts, 0.5).is_err());
    }

    #[test]
    fn leading_term_with_constant() {
        let pts: Vec<(f64, f64)> = [30.0, 60.0, 120.0, 300.0]
            .iter()
            .map(|&x: &f64| (x, 74.58 * x.sqrt() - 61.0))
            .collect();
        let fit = fit_leading_term(&pts, 0.5).unwrap();
        assert!((fit.coefficient - 74.58).abs() < 1e-9);
        assert!((fit.constant + 61.0).abs() < 1e-8);
        assert!(fit.residual < 1e-12);
    }

    proptest! {
        #[test]
        fn exact_power_laws_are_recovered(a in 0.01f64..100.0, b in -3.0f64..5.0, x0 in 0.001f64..10.0) {
            let pts: Vec<(f64, f64)> = (0..6).map(|i| {
                let x = x0 * 1.7f64.powi(i);
                (x, a * x.powf(b))
            }).collect();
            let fit = fit_power_law(&pts, PowerLawModel::free()).unwrap();
            prop_assert!((fit.exponent - b).abs() <= 1e-10 * b.abs().max(1.0));
            prop_assert!((fit.prefactor - a).abs() <= 1e-10 * a);
        }
    }
}
