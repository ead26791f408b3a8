//! Predictor-corrector tracking of one homotopy path from `t = 1` to `t = 0`.
//!
//! The predictor is fourth-order Runge-Kutta on the Davidenko ODE
//! `H_x dx/dt = -H_t`; the corrector is a short Newton iteration at fixed
//! `t`. There is no endgame: paths are classified as convergent, divergent
//! (coordinate blowup), or singular (step underflow / failed sharpening),
//! and the tracker records the solution vector at `4 t_min`, `2 t_min`, and
//! `t_min` so callers can extrapolate limits of projections of paths that
//! have no endpoint in the ambient space.

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{Homotopy, PolynomialSystem};
use crate::error::{CoreError, Result};
use crate::linalg;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrackOptions {
    pub step_init: f64,
    pub step_min: f64,
    pub newton_tol: f64,
    pub newton_max_iters: usize,
    pub t_min: f64,
    pub divergence_norm: f64,
    pub max_steps: usize,
}

impl Default for TrackOptions {
    fn default() -> Self {
        TrackOptions {
            step_init: 0.1,
            step_min: 1e-9,
            newton_tol: 1e-10,
            newton_max_iters: 3,
            t_min: 1e-6,
            divergence_norm: 1e8,
            max_steps: 50_000,
        }
    }
}

impl TrackOptions {
    pub fn validate(&self) -> Result<()> {
        if !(0.0 < self.step_min && self.step_min < self.step_init && self.step_init <= 0.5) {
            return Err(CoreError::Input(
                "need 0 < step_min < step_init <= 0.5".into(),
            ));
        }
        if !(0.0 < self.t_min && self.t_min < 1.0) {
            return Err(CoreError::Input("need 0 < t_min < 1".into()));
        }
        Ok(())
    }

    /// Variant with substantially tighter corrector and step control, used
    /// when a batch trips the path-crossing guard.
    pub fn tightened(&self) -> TrackOptions {
        TrackOptions {
            step_init: (self.step_init / 10.0).max(self.step_min * 10.0),
            newton_tol: self.newton_tol / 100.0,
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PathStatus {
    Converged,
    Diverged,
    Singular,
    Truncated,
}

#[derive(Debug, Clone, Serialize)]
pub struct PathResult {
    pub status: PathStatus,
    #[serde(with = "crate::algebra::poly::cpair_vec")]
    pub endpoint: Vec<Complex64>,
    pub t_reached: f64,
    pub residual: f64,
    pub steps_taken: usize,
    pub condition_estimate: f64,
    /// `(t, x)` snapshots at `4 t_min`, `2 t_min`, `t_min` (those reached).
    #[serde(skip)]
    pub samples: Vec<(f64, Vec<Complex64>)>,
}

impl PathResult {
    pub fn converged(&self) -> bool {
        self.status == PathStatus::Converged
    }

    /// Limit of the coordinates selected by `mask` as `t -> 0`.
    ///
    /// Convergent paths report the endpoint directly. Otherwise the three
    /// stored samples are combined by Richardson extrapolation assuming a
    /// first-order-in-`t` approach to the limit.
    pub fn projected_limit(&self, mask: &[usize]) -> Option<Vec<Complex64>> {
        if self.converged() {
            return Some(mask.iter().map(|&i| self.endpoint[i]).collect());
        }
        extrapolate_samples(&self.samples, mask)
    }
}

/// Polynomial extrapolation of masked coordinates to `t = 0` from up to
/// three samples (Lagrange evaluation at zero; nodes need not be evenly
/// spaced).
pub fn extrapolate_samples(
    samples: &[(f64, Vec<Complex64>)],
    mask: &[usize],
) -> Option<Vec<Complex64>> {
    let pick = |v: &Vec<Complex64>| -> Vec<Complex64> { mask.iter().map(|&i| v[i]).collect() };
    let mut sorted: Vec<&(f64, Vec<Complex64>)> = samples.iter().collect();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    sorted.truncate(3);
    match sorted.len() {
        0 => None,
        1 => Some(pick(&sorted[0].1)),
        2 => {
            let (t0, t1) = (sorted[0].0, sorted[1].0);
            if (t1 - t0).abs() < f64::EPSILON * t1.abs() {
                return Some(pick(&sorted[0].1));
            }
            let v0 = pick(&sorted[0].1);
            let v1 = pick(&sorted[1].1);
            // linear Lagrange at zero
            let (w0, w1) = (t1 / (t1 - t0), -t0 / (t1 - t0));
            Some(
                v0.iter()
                    .zip(&v1)
                    .map(|(a, b)| a * w0 + b * w1)
                    .collect(),
            )
        }
        _ => {
            let (t0, t1, t2) = (sorted[0].0, sorted[1].0, sorted[2].0);
            if (t1 - t0).abs() < f64::EPSILON * t1.abs()
                || (t2 - t1).abs() < f64::EPSILON * t2.abs()
            {
                return Some(pick(&sorted[0].1));
            }
            let v0 = pick(&sorted[0].1);
            let v1 = pick(&sorted[1].1);
            let v2 = pick(&sorted[2].1);
            // near-geometric nodes: per-coordinate Aitken handles any
            // dominant power-law approach, fractional rates included
            let geometric = (t1 / t0 - t2 / t1).abs() < 0.2 * (t1 / t0);
            Some(
                (0..v0.len())
                    .map(|i| {
                        if geometric {
                            let denom = v2[i] - v1[i] * 2.0 + v0[i];
                            let diff = v1[i] - v0[i];
                            if denom.norm() > 1e-14 * (1.0 + v0[i].norm()) {
                                let a = v0[i] - diff * diff / denom;
                                if (a - v0[i]).norm() < 1.0 + v0[i].norm() {
                                    return a;
                                }
                            }
                        }
                        // quadratic Lagrange at zero
                        let w0 = (t1 * t2) / ((t1 - t0) * (t2 - t0));
                        let w1 = (t0 * t2) / ((t0 - t1) * (t2 - t1));
                        let w2 = (t0 * t1) / ((t0 - t2) * (t1 - t2));
                        v0[i] * w0 + v1[i] * w1 + v2[i] * w2
                    })
                    .collect(),
            )
        }
    }
}

fn max_coord(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn all_finite(x: &[Complex64]) -> bool {
    x.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Track one path of a square homotopy from `t = 1` down to `t_min`, then
/// sharpen against the target system.
pub fn track(h: &Homotopy, start: &[Complex64], opts: &TrackOptions) -> Result<PathResult> {
    opts.validate()?;
    if h.len() != h.num_vars {
        return Err(CoreError::Input(format!(
            "tracker needs a square homotopy: {} equations, {} variables",
            h.len(),
            h.num_vars
        )));
    }
    let start_res = h.residual(start, 1.0)?;
    if start_res > 1e-8 {
        return Err(CoreError::Precondition(format!(
            "start point residual {start_res:.3e} exceeds 1e-8"
        )));
    }

    let target = h.target();
    let checkpoints = [4.0 * opts.t_min, 2.0 * opts.t_min, opts.t_min];
    let mut next_cp = 0usize;

    let mut x: Vec<Complex64> = start.to_vec();
    let mut t = 1.0f64;
    let mut step = opts.step_init;
    let mut consecutive_ok = 0usize;
    let mut steps_taken = 0usize;
    let mut samples: Vec<(f64, Vec<Complex64>)> = Vec::new();
    // rolling tail of accepted states, the sample fallback for paths that
    // stall before the checkpoint region
    let mut recent: std::collections::VecDeque<(f64, Vec<Complex64>)> =
        std::collections::VecDeque::with_capacity(3);

    let finish = |status: PathStatus,
                  x: Vec<Complex64>,
                  t: f64,
                  steps_taken: usize,
                  samples: Vec<(f64, Vec<Complex64>)>,
                  target: &PolynomialSystem|
     -> PathResult {
        let (residual, condition) = if all_finite(&x) {
            let r = target.residual(&x).unwrap_or(f64::INFINITY);
            let c = target
                .jacobian(&x)
                .map(|j| linalg::condition_estimate(&j))
                .unwrap_or(f64::INFINITY);
            (r, c)
        } else {
            (f64::INFINITY, f64::INFINITY)
        };
        PathResult {
            status,
            endpoint: x,
            t_reached: t,
            residual,
            steps_taken,
            condition_estimate: condition,
            samples,
        }
    };

    while t > opts.t_min {
        if steps_taken >= opts.max_steps {
            if samples.is_empty() {
                samples.extend(recent.drain(..));
            }
            return Ok(finish(PathStatus::Truncated, x, t, steps_taken, samples, &target));
        }
        if max_coord(&x) > opts.divergence_norm || !all_finite(&x) {
            if samples.is_empty() {
                samples.extend(recent.drain(..));
            }
            return Ok(finish(PathStatus::Diverged, x, t, steps_taken, samples, &target));
        }

        // clamp the step so checkpoints are hit exactly
        let mut t_next = (t - step).max(opts.t_min);
        if next_cp < checkpoints.len() && t > checkpoints[next_cp] && t_next < checkpoints[next_cp]
        {
            t_next = checkpoints[next_cp];
        }

        match try_step(h, &x, t, t_next, opts) {
            Some(x_new) if all_finite(&x_new) => {
                x = x_new;
                t = t_next;
                steps_taken += 1;
                consecutive_ok += 1;
                if consecutive_ok >= 5 {
                    step = (step * 1.5).min(opts.step_init);
                    consecutive_ok = 0;
                }
                if recent.len() == 3 {
                    recent.pop_front();
                }
                recent.push_back((t, x.clone()));
                while next_cp < checkpoints.len() && t <= checkpoints[next_cp] {
                    samples.push((t, polish_at_t(h, &x, t)));
                    next_cp += 1;
                }
            }
            _ => {
                consecutive_ok = 0;
                step /= 2.0;
                if step < opts.step_min {
                    let status = if max_coord(&x) > opts.divergence_norm {
                        PathStatus::Diverged
                    } else {
                        PathStatus::Singular
                    };
                    if samples.is_empty() {
                        samples.extend(recent.drain(..));
                    }
                    return Ok(finish(status, x, t, steps_taken, samples, &target));
                }
            }
        }
    }

    // Final sharpening against the exact target system.
    let refined = newton_refine(&target, &x, opts.newton_tol);
    if !refined.singular && refined.residual < 10.0 * opts.newton_tol {
        let cond = target
            .jacobian(&refined.point)
            .map(|j| linalg::condition_estimate(&j))
            .unwrap_or(f64::INFINITY);
        return Ok(PathResult {
            status: PathStatus::Converged,
            endpoint: refined.point,
            t_reached: t,
            residual: refined.residual,
            steps_taken,
            condition_estimate: cond,
            samples,
        });
    }
    Ok(finish(PathStatus::Singular, x, t, steps_taken, samples, &target))
}

/// One predictor-corrector step from `(x, t)` to `t_next`.
fn try_step(
    h: &Homotopy,
    x: &[Complex64],
    t: f64,
    t_next: f64,
    opts: &TrackOptions,
) -> Option<Vec<Complex64>> {
    let dt = t_next - t;
    let xv = DVector::from_column_slice(x);

    let slope = |y: &DVector<Complex64>, t_at: f64| -> Option<DVector<Complex64>> {
        let ys = y.as_slice();
        if !all_finite(ys) {
            return None;
        }
        let jac = h.jacobian_x(ys, t_at).ok()?;
        let ht = DVector::from_vec(h.dt(ys).ok()?);
        linalg::solve(&jac, &(-ht))
    };

    let k1 = slope(&xv, t)?;
    let k2 = slope(&(&xv + &k1 * Complex64::from(dt / 2.0)), t + dt / 2.0)?;
    let k3 = slope(&(&xv + &k2 * Complex64::from(dt / 2.0)), t + dt / 2.0)?;
    let k4 = slope(&(&xv + &k3 * Complex64::from(dt)), t_next)?;
    let mut y = &xv
        + (k1 + k2 * Complex64::from(2.0) + k3 * Complex64::from(2.0) + k4)
            * Complex64::from(dt / 6.0);

    // Newton corrector at fixed t_next. Mid-path corrections only need to
    // preserve the path identity, so the acceptance bar sits well above
    // newton_tol; ill-conditioned stretches would otherwise stall below
    // the floating-point Newton floor. Checkpoints and endpoints are
    // polished separately to full precision.
    let path_tol = opts.newton_tol * 1e4;
    for _ in 0..opts.newton_max_iters {
        let ys = y.as_slice();
        if !all_finite(ys) {
            return None;
        }
        let jac = h.jacobian_x(ys, t_next).ok()?;
        let hval = DVector::from_vec(h.eval(ys, t_next).ok()?);
        let dx = linalg::solve(&jac, &(-hval))?;
        y += &dx;
        if dx.norm() <= path_tol * (1.0 + y.norm()) {
            return Some(y.as_slice().to_vec());
        }
    }
    None
}

/// Polish a point at fixed `t` down to the achievable Newton floor.
fn polish_at_t(h: &Homotopy, x: &[Complex64], t: f64) -> Vec<Complex64> {
    let mut y = DVector::from_column_slice(x);
    let mut last = f64::INFINITY;
    for _ in 0..8 {
        let jac = match h.jacobian_x(y.as_slice(), t) {
            Ok(j) => j,
            Err(_) => break,
        };
        let hval = match h.eval(y.as_slice(), t) {
            Ok(v) => DVector::from_vec(v),
            Err(_) => break,
        };
        let dx = match linalg::solve(&jac, &(-hval)) {
            Some(d) => d,
            None => break,
        };
        let n = dx.norm();
        if !n.is_finite() || n >= last {
            break;
        }
        y += &dx;
        last = n;
    }
    y.as_slice().to_vec()
}

#[derive(Debug, Clone)]
pub struct RefineResult {
    pub point: Vec<Complex64>,
    pub residual: f64,
    pub singular: bool,
}

/// Damped Newton refinement against a (possibly rectangular) system.
///
/// Rank-deficient Jacobians at the input return it unchanged with a
/// singular flag. A root reached with merely linear contraction, or whose
/// Jacobian has a near-zero singular value, is also flagged singular
/// (multiple roots converge linearly and their Jacobians degenerate).
pub fn newton_refine(f: &PolynomialSystem, point: &[Complex64], tol: f64) -> RefineResult {
    let mut x = DVector::from_column_slice(point);
    let mut res = f
        .residual(x.as_slice())
        .unwrap_or(f64::INFINITY);

    let jac0 = match f.jacobian(x.as_slice()) {
        Ok(j) => j,
        Err(_) => {
            return RefineResult {
                point: point.to_vec(),
                residual: res,
                singular: true,
            }
        }
    };
    if linalg::condition_estimate(&jac0) > 1e12 {
        return RefineResult {
            point: point.to_vec(),
            residual: res,
            singular: true,
        };
    }

    let mut correction_norms: Vec<f64> = Vec::new();
    let mut iters = 0usize;
    for _ in 0..20 {
        if res < tol {
            break;
        }
        let jac = match f.jacobian(x.as_slice()) {
            Ok(j) => j,
            Err(_) => break,
        };
        let fv = DVector::from_vec(match f.evaluate(x.as_slice()) {
            Ok(v) => v,
            Err(_) => break,
        });
        let dx = if jac.nrows() == jac.ncols() {
            match linalg::solve(&jac, &(-fv)) {
                Some(d) => d,
                None => {
                    return RefineResult {
                        point: x.as_slice().to_vec(),
                        residual: res,
                        singular: true,
                    }
                }
            }
        } else {
            match jac.svd(true, true).solve(&(-fv), 1e-14) {
                Ok(d) => d,
                Err(_) => break,
            }
        };

        // damping: halve until the residual does not increase
        let mut scale = 1.0;
        let mut improved = false;
        for _ in 0..5 {
            let cand = &x + &dx * Complex64::from(scale);
            let cand_res = f.residual(cand.as_slice()).unwrap_or(f64::INFINITY);
            if cand_res <= res {
                x = cand;
                res = cand_res;
                improved = true;
                break;
            }
            scale /= 2.0;
        }
        if !improved {
            break;
        }
        iters += 1;
        correction_norms.push(dx.norm() * scale);
    }

    // linear contraction over many iterations means a multiple root
    let linear_tail = iters >= 8 && {
        let tail = &correction_norms[correction_norms.len().saturating_sub(3)..];
        tail.len() == 3
            && tail
                .windows(2)
                .all(|w| w[0] > 0.0 && (0.2..0.95).contains(&(w[1] / w[0])))
    };
    // a solution whose Jacobian has collapsed rank is singular; the
    // threshold is conservative so moderately conditioned regular roots
    // (large coefficient scales) are never discarded
    let degenerate_at_root = res < tol
        && f.jacobian(x.as_slice())
            .map(|j| {
                let sv = linalg::singular_values(&j);
                match (sv.first(), sv.last()) {
                    (Some(&max), Some(&min)) => min < 1e-10 * (1.0 + max),
                    _ => true,
                }
            })
            .unwrap_or(true);

    RefineResult {
        point: x.as_slice().to_vec(),
        residual: res,
        singular: linear_tail || degenerate_at_root,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Polynomial, Term};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn univariate(coeffs: &[(f64, u32)]) -> PolynomialSystem {
        let p = Polynomial::from_terms(
            coeffs
                .iter()
                .map(|&(co, e)| Term::new(c(co, 0.0), vec![e]))
                .collect(),
        );
        PolynomialSystem::new(1, vec![p]).unwrap()
    }

    #[test]
    fn stationary_path_converges_to_its_start() {
        let f = univariate(&[(1.0, 2), (-4.0, 0)]); // x^2 = 4
        let h = Homotopy::segment(&f, &f, c(1.0, 0.0)).unwrap();
        let r = track(&h, &[c(2.0, 0.0)], &TrackOptions::default()).unwrap();
        assert_eq!(r.status, PathStatus::Converged);
        assert!((r.endpoint[0] - c(2.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn segment_path_lands_on_target_root() {
        // x^2 - 1 deformed to x^2 - 4: the path from x=1 ends at x=2
        let start = univariate(&[(1.0, 2), (-1.0, 0)]);
        let target = univariate(&[(1.0, 2), (-4.0, 0)]);
        let mut rng = crate::algebra::Rng::from_seed(17);
        let h = crate::algebra::make_segment_homotopy(&start, &target, &mut rng).unwrap();
        let r = track(&h, &[c(1.0, 0.0)], &TrackOptions::default()).unwrap();
        assert_eq!(r.status, PathStatus::Converged);
        assert!((r.endpoint[0] - c(2.0, 0.0)).norm() < 1e-9);
        assert!(r.residual < 1e-9);
    }

    #[test]
    fn divergent_path_is_flagged() {
        // start: x - 1, target: -1 = 0 (no solution): the path escapes like
        // 1/t, crossing a 1e4 divergence threshold around t = 1e-4.
        let start = univariate(&[(1.0, 1), (-1.0, 0)]);
        let target = univariate(&[(-1.0, 0)]);
        let h = Homotopy::segment(&start, &target, c(1.0, 0.0)).unwrap();
        let opts = TrackOptions {
            divergence_norm: 1e4,
            ..Default::default()
        };
        let r = track(&h, &[c(1.0, 0.0)], &opts).unwrap();
        assert_eq!(r.status, PathStatus::Diverged);
        assert!(r.t_reached > opts.t_min);
    }

    #[test]
    fn slow_escape_ends_singular_with_samples() {
        // the same path under the default 1e8 threshold only reaches ~1e6
        // by t_min, so it is classified singular with samples recorded
        let start = univariate(&[(1.0, 1), (-1.0, 0)]);
        let target = univariate(&[(-1.0, 0)]);
        let h = Homotopy::segment(&start, &target, c(1.0, 0.0)).unwrap();
        let r = track(&h, &[c(1.0, 0.0)], &TrackOptions::default()).unwrap();
        assert_eq!(r.status, PathStatus::Singular);
        assert!(!r.samples.is_empty());
    }

    #[test]
    fn start_residual_is_checked() {
        let f = univariate(&[(1.0, 2), (-4.0, 0)]);
        let h = Homotopy::segment(&f, &f, c(1.0, 0.0)).unwrap();
        assert!(track(&h, &[c(1.0, 0.0)], &TrackOptions::default()).is_err());
    }

    #[test]
    fn newton_refine_sqrt2() {
        let f = univariate(&[(1.0, 2), (-2.0, 0)]);
        let r = newton_refine(&f, &[c(1.4, 0.0)], 1e-12);
        assert!(!r.singular);
        assert!((r.point[0].re - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert!(r.residual < 1e-12);
    }

    #[test]
    fn newton_refine_exact_root_is_fixed_point() {
        let f = univariate(&[(1.0, 2), (-4.0, 0)]);
        let r = newton_refine(&f, &[c(2.0, 0.0)], 1e-12);
        assert_eq!(r.point[0], c(2.0, 0.0));
        assert_eq!(r.residual, 0.0);
    }

    #[test]
    fn newton_refine_flags_multiple_root() {
        // x^2 from 0.1: corrections contract linearly (factor 1/2), which
        // is the signature of a multiple root
        let f = univariate(&[(1.0, 2)]);
        let r = newton_refine(&f, &[c(0.1, 0.0)], 1e-12);
        assert!(r.singular);
    }

    #[test]
    fn samples_are_recorded_at_checkpoints() {
        let start = univariate(&[(1.0, 2), (-1.0, 0)]);
        let target = univariate(&[(1.0, 2), (-4.0, 0)]);
        let h = Homotopy::segment(&start, &target, c(0.8, 0.6)).unwrap();
        let r = track(&h, &[c(-1.0, 0.0)], &TrackOptions::default()).unwrap();
        assert_eq!(r.samples.len(), 3);
        let opts = TrackOptions::default();
        let ts: Vec<f64> = r.samples.iter().map(|s| s.0).collect();
        assert!(ts.contains(&opts.t_min));
        assert!(ts.contains(&(2.0 * opts.t_min)));
        assert!(ts.contains(&(4.0 * opts.t_min)));
    }

    #[test]
    fn determinism() {
        let start = univariate(&[(1.0, 3), (-1.0, 0)]);
        let target = univariate(&[(1.0, 3), (2.0, 1), (-5.0, 0)]);
        let h = Homotopy::segment(&start, &target, c(0.28, 0.96)).unwrap();
        let a = track(&h, &[c(1.0, 0.0)], &TrackOptions::default()).unwrap();
        let b = track(&h, &[c(1.0, 0.0)], &TrackOptions::default()).unwrap();
        assert_eq!(a.endpoint, b.endpoint);
        assert_eq!(a.steps_taken, b.steps_taken);
        assert_eq!(a.residual, b.residual);
    }
}
