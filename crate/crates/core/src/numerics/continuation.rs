//! Natural-parameter continuation of a single root branch.
//!
//! The root at the previous parameter seeds a local bracket search at the
//! next one. When no sign change is found the parameter step is halved, down
//! to a floor expressed as a fraction of the scheduled step; below the floor
//! the branch is declared lost and the track ends with a
//! [`Termination::Lost`] marker.

use crate::error::NumericsError;
use crate::numerics::roots::{find_root_with_values, RootConfig};
use crate::scalar::Real;

/// A one-parameter family of scalar root problems.
pub trait BranchProblem<T> {
    /// Function whose zero is tracked.
    fn residual(&self, param: T, x: T) -> T;
    /// Closed interval of admissible unknowns at `param`. The residual must
    /// be finite on it.
    fn domain(&self, param: T) -> (T, T);
}

/// Adapter turning two closures into a [`BranchProblem`].
pub struct FnProblem<R, D> {
    pub residual: R,
    pub domain: D,
}

impl<T, R, D> BranchProblem<T> for FnProblem<R, D>
where
    R: Fn(T, T) -> T,
    D: Fn(T) -> (T, T),
{
    fn residual(&self, param: T, x: T) -> T {
        (self.residual)(param, x)
    }
    fn domain(&self, param: T) -> (T, T) {
        (self.domain)(param)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuationConfig<T> {
    pub root: RootConfig<T>,
    /// Initial half-width of the bracket search, as a fraction of the domain width.
    pub seed_width: T,
    /// Number of bracket doublings before the parameter step is halved.
    pub max_expansions: usize,
    /// Smallest parameter step, as a fraction of the scheduled step.
    pub step_floor: T,
}

impl<T: Real> Default for ContinuationConfig<T> {
    fn default() -> Self {
        Self {
            root: RootConfig::default(),
            seed_width: T::lit(1e-3),
            max_expansions: 6,
            step_floor: T::lit(1e-6),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchPoint<T> {
    pub param: T,
    pub root: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Termination<T> {
    Completed,
    /// No root could be re-bracketed beyond `param`; the last point on the
    /// branch is `(last_param, last_root)`.
    Lost { param: T, last_param: T, last_root: T },
}

#[derive(Debug, Clone, PartialEq)]
pub struct BranchTrack<T> {
    /// Roots at the scheduled parameters reached before termination.
    pub points: Vec<BranchPoint<T>>,
    pub termination: Termination<T>,
}

impl<T: Real> BranchTrack<T> {
    /// The loss marker as an error value, if the branch was lost.
    pub fn lost_error(&self) -> Option<NumericsError> {
        match self.termination {
            Termination::Completed => None,
            Termination::Lost { param, last_param, last_root } => Some(NumericsError::BranchLost {
                param: param.as_f64(),
                last_param: last_param.as_f64(),
                last_root: last_root.as_f64(),
            }),
        }
    }
}

/// Root nearest to `seed` found by expanding a symmetric window inside the domain.
fn bracket_near<T: Real, P: BranchProblem<T>>(
    problem: &P,
    param: T,
    seed: T,
    cfg: &ContinuationConfig<T>,
) -> Option<T> {
    let (a, b) = problem.domain(param);
    if !(b > a) {
        return None;
    }
    let seed = seed.max(a).min(b);
    let f = |x: T| problem.residual(param, x);
    let f0 = f(seed);
    if f0 == T::zero() {
        return Some(seed);
    }
    if !f0.is_finite() {
        return None;
    }
    let mut w = cfg.seed_width * (b - a);
    for _ in 0..=cfg.max_expansions {
        let left = (seed - w).max(a);
        let right = (seed + w).min(b);
        let fl = f(left);
        let fr = f(right);
        let mut best: Option<T> = None;
        for (lo, hi, flo, fhi) in [(left, seed, fl, f0), (seed, right, f0, fr)] {
            if lo < hi && flo.is_finite() && fhi.is_finite() && flo.signum() != fhi.signum() {
                if let Ok(r) = find_root_with_values(f, (lo, flo), (hi, fhi), &cfg.root) {
                    let closer = match best {
                        Some(x) => (r.x - seed).abs() < (x - seed).abs(),
                        None => true,
                    };
                    if closer {
                        best = Some(r.x);
                    }
                }
            }
        }
        if best.is_some() {
            return best;
        }
        if left == a && right == b {
            return None;
        }
        w = w + w;
    }
    None
}

/// Tracks the root of `problem` from `(start_param, start_root)` through
/// every value of `schedule` (which must be monotone and lead away from
/// `start_param`). The start root is first re-solved locally; if that fails
/// the start is rejected with a domain error.
pub fn continue_branch<T: Real, P: BranchProblem<T>>(
    problem: &P,
    start_param: T,
    start_root: T,
    schedule: &[T],
    cfg: &ContinuationConfig<T>,
) -> Result<BranchTrack<T>, NumericsError> {
    let direction = match schedule.first() {
        Some(&p) => (p - start_param).signum(),
        None => T::one(),
    };
    let mut prev = start_param;
    for &p in schedule {
        if (p - prev) * direction < T::zero() {
            return Err(NumericsError::Domain(
                "continuation schedule must be monotone away from the start".into(),
            ));
        }
        prev = p;
    }
    let mut x = bracket_near(problem, start_param, start_root, cfg).ok_or_else(|| {
        NumericsError::Domain(format!(
            "start point ({start_param}, {start_root}) is not on a root branch"
        ))
    })?;
    let mut p = start_param;
    let mut points = Vec::with_capacity(schedule.len());
    let mut last_step = schedule.first().map(|&s| s - start_param).unwrap_or(T::zero());

    for &target in schedule {
        let step = target - p;
        if step != T::zero() {
            last_step = step;
        }
        let floor = cfg.step_floor * last_step.abs();
        let mut h = step;
        while p != target {
            let remaining = target - p;
            if h.abs() > remaining.abs() {
                h = remaining;
            }
            let trial = if h == remaining { target } else { p + h };
            match bracket_near(problem, trial, x, cfg) {
                Some(root) => {
                    p = trial;
                    x = root;
                    h = h + h;
                }
                None => {
                    h = h * T::lit(0.5);
                    if h.abs() < floor {
                        return Ok(BranchTrack {
                            points,
                            termination: Termination::Lost { param: trial, last_param: p, last_root: x },
                        });
                    }
                }
            }
        }
        points.push(BranchPoint { param: target, root: x });
    }
    Ok(BranchTrack { points, termination: Termination::Completed })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
    }

    #[test]
    fn linear_branch_is_exact() {
        let problem = FnProblem { residual: |p: f64, x: f64| x - p, domain: |_p: f64| (-1.0, 2.0) };
        let sched = linspace(0.0, 1.0, 21);
        let track = continue_branch(&problem, 0.0, 0.0, &sched[1..], &ContinuationConfig::default()).unwrap();
        assert_eq!(track.termination, Termination::Completed);
        assert_eq!(track.points.len(), 20);
        for pt in &track.points {
            assert!((pt.root - pt.param).abs() < 1e-12);
        }
    }

    #[test]
    fn root_leaving_domain_terminates_branch() {
        // root x(p) = 2p leaves the domain [0, 1] at p = 0.5
        let problem = FnProblem { residual: |p: f64, x: f64| x - 2.0 * p, domain: |_p: f64| (0.0, 1.0) };
        let sched = linspace(0.0, 1.0, 11);
        let track = continue_branch(&problem, 0.0, 0.0, &sched[1..], &ContinuationConfig::default()).unwrap();
        match track.termination {
            Termination::Lost { param, last_param, .. } => {
                assert!((param - 0.5).abs() < 1e-3, "lost at {param}");
                assert!((last_param - 0.5).abs() < 1e-3);
            }
            Termination::Completed => panic!("branch should be lost"),
        }
        assert!(matches!(track.lost_error(), Some(NumericsError::BranchLost { .. })));
        assert!(track.points.iter().all(|pt| pt.param <= 0.5));
    }

    #[test]
    fn step_halving_follows_a_steep_branch() {
        // x(p) = tanh(50 (p - 0.5)) is steep near p = 0.5; other roots of the
        // residual (x - tanh)·(x - 3) sit far away and must not be picked up.
        let problem = FnProblem {
            residual: |p: f64, x: f64| (x - (50.0 * (p - 0.5)).tanh()) * (x - 3.0),
            domain: |_p: f64| (-2.0, 4.0),
        };
        let sched = linspace(0.0, 1.0, 5);
        let track =
            continue_branch(&problem, 0.0, -1.0, &sched[1..], &ContinuationConfig::default()).unwrap();
        assert_eq!(track.termination, Termination::Completed);
        for pt in &track.points {
            assert!((pt.root - (50.0 * (pt.param - 0.5)).tanh()).abs() < 1e-10);
        }
    }

    #[test]
    fn halved_schedule_changes_points_by_less_than_ten_tolerances() {
        let problem = FnProblem {
            residual: |p: f64, x: f64| x.powi(3) + x - p,
            domain: |_p: f64| (-5.0, 5.0),
        };
        let cfg = ContinuationConfig::default();
        let coarse = linspace(0.0, 4.0, 9);
        let fine = linspace(0.0, 4.0, 17);
        let a = continue_branch(&problem, 0.0, 0.0, &coarse[1..], &cfg).unwrap();
        let b = continue_branch(&problem, 0.0, 0.0, &fine[1..], &cfg).unwrap();
        for pa in &a.points {
            let pb = b.points.iter().find(|q| q.param == pa.param).unwrap();
            assert!((pa.root - pb.root).abs() < 10.0 * cfg.root.abs_tol);
        }
    }

    #[test]
    fn bad_start_is_rejected() {
        let problem = FnProblem { residual: |_p: f64, x: f64| x * x + 1.0, domain: |_p: f64| (-1.0, 1.0) };
        assert!(continue_branch(&problem, 0.0, 0.0, &[1.0], &ContinuationConfig::default()).is_err());
    }

    #[test]
    fn non_monotone_schedule_is_rejected() {
        let problem = FnProblem { residual: |p: f64, x: f64| x - p, domain: |_p: f64| (-1.0, 2.0) };
        assert!(continue_branch(&problem, 0.0, 0.0, &[0.5, 0.25], &ContinuationConfig::default()).is_err());
    }
}
