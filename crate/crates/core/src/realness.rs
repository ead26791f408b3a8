//! Real-decomposition detection via critical points of the distance
//! function.
//!
//! For a real system `F` and a real center `x*` off its zero set, the
//! Lagrange system `{F(x) = 0, lambda_0 (x - x*) + sum lambda_i grad F_i(x)
//! = 0}` has finitely many solutions for generic data, the critical points
//! meet every connected real component, and real points of the variety
//! exist iff a real critical point does.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{Homotopy, Polynomial, PolynomialSystem, Rng, Term};
use crate::error::{CoreError, Result};
use crate::solver::{self, SolutionSet};
use crate::tracker::{self, PathResult, TrackOptions};

const REALITY_TOL: f64 = 1e-8;
const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// The Lagrange critical-point problem for one real system: the distance
/// mask (which variables enter the objective) and a fixed random real
/// affine chart de-projectivizing the multipliers.
#[derive(Debug, Clone)]
pub struct CriticalProblem {
    pub f: PolynomialSystem,
    pub mask: Vec<usize>,
    pub chart: Vec<f64>,
    partials: Vec<Vec<Polynomial>>,
}

impl CriticalProblem {
    /// `mask = None` means the distance runs over every variable of `f`.
    pub fn new(f: &PolynomialSystem, mask: Option<Vec<usize>>, rng: &mut Rng) -> Result<Self> {
        let mask = mask.unwrap_or_else(|| (0..f.num_vars).collect());
        if mask.iter().any(|&j| j >= f.num_vars) {
            return Err(CoreError::Input("distance mask out of range".into()));
        }
        let n_lam = f.len() + 1;
        let mut chart = rng.real_vec(n_lam, -1.0, 1.0);
        // lambda = e_0 must be reachable for gradient-descent starts
        while chart[0].abs() < 0.2 {
            chart[0] = rng.real_in(-1.0, 1.0);
        }
        let partials = f
            .polys
            .iter()
            .map(|p| (0..f.num_vars).map(|v| p.derivative(v)).collect())
            .collect();
        Ok(CriticalProblem {
            f: f.clone(),
            mask,
            chart,
            partials,
        })
    }

    pub fn num_x(&self) -> usize {
        self.f.num_vars
    }

    pub fn num_lambda(&self) -> usize {
        self.f.len() + 1
    }

    pub fn total_vars(&self) -> usize {
        self.num_x() + self.num_lambda()
    }

    /// The square system `G(x, lambda) = 0` for a given center (one entry
    /// per masked variable): `F`, one Lagrange row per variable, and the
    /// chart row.
    pub fn system_for_center(&self, center: &[Complex64]) -> Result<PolynomialSystem> {
        if center.len() != self.mask.len() {
            return Err(CoreError::DimensionMismatch {
                expected: self.mask.len(),
                got: center.len(),
            });
        }
        let nx = self.num_x();
        let total = self.total_vars();
        let xmap: Vec<usize> = (0..nx).collect();
        let mut polys: Vec<Polynomial> = self.f.embed(total, &xmap)?.polys;

        for j in 0..nx {
            let mut terms: Vec<Term> = Vec::new();
            if let Some(pos) = self.mask.iter().position(|&m| m == j) {
                // lambda_0 * (x_j - q_j)
                let mut e = vec![0u32; total];
                e[j] = 1;
                e[nx] = 1;
                terms.push(Term::new(ONE, e));
                let mut e0 = vec![0u32; total];
                e0[nx] = 1;
                terms.push(Term::new(-center[pos], e0));
            }
            for (i, parts) in self.partials.iter().enumerate() {
                let mut lam_e = vec![0u32; total];
                lam_e[nx + 1 + i] = 1;
                let lam = Polynomial::from_terms(vec![Term::new(ONE, lam_e)]);
                let dpoly = parts[j].embed(total, &xmap).mul(&lam);
                terms.extend(dpoly.terms);
            }
            polys.push(Polynomial::from_terms(terms));
        }

        let mut chart_coeffs = vec![ZERO; total];
        for (i, &c) in self.chart.iter().enumerate() {
            chart_coeffs[nx + i] = Complex64::new(c, 0.0);
        }
        polys.push(Polynomial::linear(&chart_coeffs, ONE));
        PolynomialSystem::new(total, polys)
    }

    /// Residual of the chart-free stationarity conditions (the system rows
    /// plus Lagrange rows), usable with any scaling of lambda.
    pub fn stationarity_residual(
        &self,
        x: &[Complex64],
        lambda: &[Complex64],
        center: &[Complex64],
    ) -> Result<f64> {
        let fv = self.f.evaluate(x)?;
        let jac = self.f.jacobian(x)?;
        let mut acc: f64 = fv.iter().map(|v| v.norm_sqr()).sum();
        for j in 0..self.num_x() {
            let mut row = ZERO;
            if let Some(pos) = self.mask.iter().position(|&m| m == j) {
                row += lambda[0] * (x[j] - center[pos]);
            }
            for i in 0..self.f.len() {
                row += lambda[1 + i] * jac[(i, j)];
            }
            acc += row.norm_sqr();
        }
        Ok(acc.sqrt())
    }
}

/// Precondition check and system assembly for the distance problem from a
/// full real center.
pub fn build_critical_system(
    f: &PolynomialSystem,
    x_star: &[f64],
    rng: &mut Rng,
) -> Result<(CriticalProblem, PolynomialSystem)> {
    if x_star.len() != f.num_vars {
        return Err(CoreError::DimensionMismatch {
            expected: f.num_vars,
            got: x_star.len(),
        });
    }
    let cx: Vec<Complex64> = x_star.iter().map(|&r| Complex64::new(r, 0.0)).collect();
    let res = f.residual(&cx)?;
    if res < 1e-6 {
        return Err(CoreError::Precondition(format!(
            "center lies on the variety (residual {res:.3e}); pick x* off V(F)"
        )));
    }
    let problem = CriticalProblem::new(f, None, rng)?;
    let g = problem.system_for_center(&cx)?;
    Ok((problem, g))
}

#[derive(Debug, Clone, Serialize)]
pub struct CriticalPoint {
    #[serde(with = "crate::algebra::poly::cpair_vec")]
    pub x: Vec<Complex64>,
    /// Unit-norm multiplier with first nonzero coordinate real-positive;
    /// empty for projected-limit entries.
    #[serde(with = "crate::algebra::poly::cpair_vec")]
    pub lambda: Vec<Complex64>,
    pub is_real: bool,
    pub borderline: bool,
    /// Set when only the limit of the distance-coordinate projection
    /// exists (the path had no endpoint upstairs).
    pub projected_only: bool,
    pub distance: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriticalPointSet {
    #[serde(with = "crate::algebra::poly::cpair_vec")]
    pub center: Vec<Complex64>,
    pub points: Vec<CriticalPoint>,
    /// Count of distinct `x` projections (the primary convention).
    pub count_x: usize,
    /// Count of distinct `(x, lambda)` pairs before merging multipliers.
    pub count_x_lambda: usize,
    pub seed: u64,
    pub warnings: Vec<String>,
}

impl CriticalPointSet {
    pub fn real_points(&self) -> impl Iterator<Item = &CriticalPoint> {
        self.points.iter().filter(|p| p.is_real)
    }

    pub fn num_real(&self) -> usize {
        self.real_points().count()
    }

    pub fn nearest_real(&self) -> Option<&CriticalPoint> {
        self.real_points()
            .min_by(|a, b| a.distance.unwrap_or(f64::MAX).total_cmp(&b.distance.unwrap_or(f64::MAX)))
    }
}

pub fn normalize_projective(v: &[Complex64]) -> Vec<Complex64> {
    let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return v.to_vec();
    }
    let maxabs = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let phase = v
        .iter()
        .find(|z| z.norm() > 1e-8 * maxabs)
        .map(|z| z / z.norm())
        .unwrap_or(ONE);
    v.iter().map(|z| z / (phase * norm)).collect()
}

fn reality_of(x: &[Complex64]) -> (bool, bool) {
    let rel = x
        .iter()
        .map(|z| z.im.abs() / (1.0 + z.re.abs()))
        .fold(0.0, f64::max);
    let is_real = rel < REALITY_TOL;
    let borderline = rel < 10.0 * REALITY_TOL && rel >= 0.1 * REALITY_TOL;
    (is_real, borderline)
}

fn masked_distance(problem: &CriticalProblem, x: &[Complex64], center: &[Complex64]) -> f64 {
    problem
        .mask
        .iter()
        .zip(center)
        .map(|(&j, q)| (x[j] - q).norm_sqr())
        .sum()
}

/// Assemble a deduplicated, reality-flagged critical point set from raw
/// `(x, lambda)` solutions and projected-only x limits.
fn finalize_set(
    problem: &CriticalProblem,
    center: &[Complex64],
    raw: Vec<(Vec<Complex64>, Vec<Complex64>)>,
    projected: Vec<Vec<Complex64>>,
    seed: u64,
    mut warnings: Vec<String>,
) -> CriticalPointSet {
    let nx = problem.num_x();
    let mask = &problem.mask;
    let masked = |x: &[Complex64]| -> Vec<Complex64> { mask.iter().map(|&j| x[j]).collect() };

    // distinct (x, lambda) first, then merge multipliers per x
    let mut xl: Vec<(Vec<Complex64>, Vec<Complex64>)> = Vec::new();
    'raw: for (x, l) in raw {
        for (px, pl) in &xl {
            if solver::rel_dist(px, &x) < solver::DEDUP_TOL
                && solver::rel_dist(pl, &l) < solver::DEDUP_TOL
            {
                continue 'raw;
            }
        }
        xl.push((x, l));
    }
    let count_x_lambda = xl.len();

    let mut points: Vec<CriticalPoint> = Vec::new();
    'pts: for (x, l) in xl {
        for p in &points {
            if !p.projected_only && solver::rel_dist(&p.x, &x) < solver::DEDUP_TOL {
                continue 'pts;
            }
        }
        let (is_real, borderline) = reality_of(&x);
        let distance = is_real.then(|| masked_distance(problem, &x, center));
        points.push(CriticalPoint {
            lambda: normalize_projective(&l),
            x,
            is_real,
            borderline,
            projected_only: false,
            distance,
        });
    }
    'proj: for x in projected {
        let mx = masked(&x);
        for p in &points {
            if solver::rel_dist(&masked(&p.x), &mx) < solver::DEDUP_TOL {
                continue 'proj;
            }
        }
        let (is_real, borderline) = reality_of(&mx);
        let distance = is_real.then(|| masked_distance(problem, &x, center));
        points.push(CriticalPoint {
            x,
            lambda: Vec::new(),
            is_real,
            borderline,
            projected_only: true,
            distance,
        });
    }
    let count_x = points.len();

    // real points sorted by distance first, then the rest canonically
    points.sort_by(|a, b| match (a.is_real, b.is_real) {
        (true, false) => std::cmp::Ordering::Less,
        (false, true) => std::cmp::Ordering::Greater,
        (true, true) => a
            .distance
            .unwrap_or(f64::MAX)
            .total_cmp(&b.distance.unwrap_or(f64::MAX)),
        (false, false) => a.x[0].re.total_cmp(&b.x[0].re).then(a.x[0].im.total_cmp(&b.x[0].im)),
    });

    let center_real = center.iter().all(|q| q.im == 0.0);
    if center_real {
        // projected-only limits carry extrapolation noise in their
        // imaginary parts and are excluded from the parity check
        let nonreal = points
            .iter()
            .filter(|p| !p.is_real && !p.projected_only)
            .count();
        if nonreal % 2 != 0 {
            warnings.push(format!(
                "conjugation symmetry violated: {nonreal} nonreal critical points (odd)"
            ));
        }
    }
    let _ = nx;

    CriticalPointSet {
        center: center.to_vec(),
        points,
        count_x,
        count_x_lambda,
        seed,
        warnings,
    }
}

#[derive(Debug, Clone)]
pub enum CriticalMethod {
    /// Track the full Bezout count of the Lagrange system.
    TotalDegree,
    /// Grow the solution set by monodromy loops in the center parameter,
    /// seeded with smooth points of the variety.
    MonodromySeeded {
        variety_points: Vec<Vec<Complex64>>,
        stall_limit: usize,
    },
}

/// Global critical-point solve for the distance from a real center.
pub fn solve_critical(
    problem: &CriticalProblem,
    center: &[f64],
    rng: &mut Rng,
    method: CriticalMethod,
    opts: &TrackOptions,
) -> Result<CriticalPointSet> {
    let ccenter: Vec<Complex64> = center.iter().map(|&r| Complex64::new(r, 0.0)).collect();
    let nx = problem.num_x();
    match method {
        CriticalMethod::TotalDegree => {
            let g = problem.system_for_center(&ccenter)?;
            let sols = solver::total_degree_solve(&g, rng, opts)?;
            if sols.is_empty() {
                return Err(CoreError::EmptyCritical(
                    "total-degree solve found no finite critical points".into(),
                ));
            }
            let raw = sols
                .points
                .into_iter()
                .map(|p| (p[..nx].to_vec(), p[nx..].to_vec()))
                .collect();
            Ok(finalize_set(problem, &ccenter, raw, Vec::new(), rng.seed(), Vec::new()))
        }
        CriticalMethod::MonodromySeeded {
            variety_points,
            stall_limit,
        } => {
            let (set, warnings) =
                monodromy_critical(problem, &ccenter, &variety_points, stall_limit, rng, opts)?;
            let raw = set
                .0
                .into_iter()
                .map(|p| (p[..nx].to_vec(), p[nx..].to_vec()))
                .collect();
            Ok(finalize_set(problem, &ccenter, raw, set.1, rng.seed(), warnings))
        }
    }
}

/// Total-degree critical solve at an arbitrary (possibly complex) center.
pub fn solve_critical_complex(
    problem: &CriticalProblem,
    center: &[Complex64],
    rng: &mut Rng,
    opts: &TrackOptions,
) -> Result<CriticalPointSet> {
    let g = problem.system_for_center(center)?;
    let sols = solver::total_degree_solve(&g, rng, opts)?;
    if sols.is_empty() {
        return Err(CoreError::EmptyCritical(
            "total-degree solve found no finite critical points".into(),
        ));
    }
    let nx = problem.num_x();
    let raw = sols
        .points
        .into_iter()
        .map(|p| (p[..nx].to_vec(), p[nx..].to_vec()))
        .collect();
    Ok(finalize_set(problem, center, raw, Vec::new(), rng.seed(), Vec::new()))
}

/// Monodromy in the center parameter: back-solve exact Lagrange seeds from
/// smooth variety points, drift them to one generic complex center, loop
/// until stall, then carry everything to the requested center.
fn monodromy_critical(
    problem: &CriticalProblem,
    center: &[Complex64],
    variety_points: &[Vec<Complex64>],
    stall_limit: usize,
    rng: &mut Rng,
    opts: &TrackOptions,
) -> Result<((Vec<Vec<Complex64>>, Vec<Vec<Complex64>>), Vec<String>)> {
    if variety_points.is_empty() {
        return Err(CoreError::Input("monodromy needs variety seed points".into()));
    }
    let nx = problem.num_x();
    let n = problem.f.len();
    let mut warnings = Vec::new();

    let q0: Vec<Complex64> = rng.unit_complex_vec(problem.mask.len());
    let g0 = problem.system_for_center(&q0)?;

    // seed construction: for v on V(F), any lambda with the unmasked rows
    // vanishing gives an exact critical pair for the back-solved center
    let mut seeds_at_q0: Vec<Vec<Complex64>> = Vec::new();
    for v in variety_points {
        let jac = problem.f.jacobian(v)?;
        let unmasked: Vec<usize> =
            (0..nx).filter(|j| !problem.mask.contains(j)).collect();
        let lam_rest: Vec<Complex64> = if unmasked.is_empty() {
            rng.unit_complex_vec(n)
        } else {
            // random element of the kernel of the unmasked-row constraints
            let m = DMatrix::from_fn(unmasked.len(), n, |r, i| jac[(i, unmasked[r])]);
            let svd = m.svd(false, true);
            let vt = svd.v_t.as_ref().ok_or_else(|| {
                CoreError::Numerical("kernel computation failed".into())
            })?;
            let rank = svd
                .singular_values
                .iter()
                .filter(|&&s| s > 1e-10 * svd.singular_values.max())
                .count();
            if rank >= n {
                warnings.push("no multiplier kernel at a seed; skipped".into());
                continue;
            }
            let mut lam = DVector::from_element(n, ZERO);
            for row in rank..n {
                let coeff = rng.unit_complex();
                for i in 0..n {
                    lam[i] += vt[(row, i)].conj() * coeff;
                }
            }
            lam.as_slice().to_vec()
        };
        // q_j = v_j + sum_i lam_i dF_i/dx_j over the masked coordinates
        let q_seed: Vec<Complex64> = problem
            .mask
            .iter()
            .map(|&j| {
                let grad: Complex64 = (0..n).map(|i| lam_rest[i] * jac[(i, j)]).sum();
                v[j] + grad
            })
            .collect();
        // chart scaling
        let mut lam_full = vec![ONE];
        lam_full.extend(lam_rest);
        let denom: Complex64 = problem
            .chart
            .iter()
            .zip(&lam_full)
            .map(|(&c, l)| l * c)
            .sum();
        if denom.norm() < 1e-10 {
            warnings.push("chart-degenerate seed skipped".into());
            continue;
        }
        for l in lam_full.iter_mut() {
            *l /= denom;
        }
        let mut seed = v.clone();
        seed.extend(lam_full);

        let g_seed = problem.system_for_center(&q_seed)?;
        if g_seed.residual(&seed)? > solver::RESIDUAL_GATE {
            warnings.push("back-solved seed residual too large; skipped".into());
            continue;
        }
        // carry the seed to the common generic center
        let h = Homotopy::segment(&g_seed, &g0, rng.unit_complex())?;
        match tracker::track(&h, &seed, opts) {
            Ok(r) if r.converged() => seeds_at_q0.push(r.endpoint),
            _ => warnings.push("seed transport to the generic center failed".into()),
        }
    }
    if seeds_at_q0.is_empty() {
        return Err(CoreError::EmptyCritical(
            "no usable monodromy seeds survived".into(),
        ));
    }

    let mask_len = problem.mask.len();
    let problem2 = problem.clone();
    let grown = solver::monodromy_engine(
        &g0,
        move |r: &mut Rng| {
            let q = r.unit_complex_vec(mask_len);
            problem2.system_for_center(&q)
        },
        &seeds_at_q0,
        rng,
        solver::MonodromyOptions {
            stall_limit,
            ..Default::default()
        },
        opts,
        None,
    )?;

    // final leg to the requested center
    let g_target = problem.system_for_center(center)?;
    let h = Homotopy::segment(&g0, &g_target, rng.unit_complex())?;
    let batch = solver::track_batch(&h, &grown.points, opts);
    warnings.extend(batch.warnings);
    let mut full_points = Vec::new();
    let mut projected = Vec::new();
    let xmask: Vec<usize> = (0..nx).collect();
    for r in batch.results {
        if r.converged() {
            let rr = tracker::newton_refine(&g_target, &r.endpoint, opts.newton_tol / 10.0);
            if rr.residual < solver::RESIDUAL_GATE {
                full_points.push(rr.point);
                continue;
            }
        }
        if let Some(x) = r.projected_limit(&xmask) {
            projected.push(x);
        } else {
            warnings.push("a critical path was lost in the final transport".into());
        }
    }
    Ok(((full_points, projected), warnings))
}

/// Transport a complete critical point set from one center to another,
/// recording projected x-limits for paths with no endpoint upstairs.
pub fn parameter_homotopy_center(
    problem: &CriticalProblem,
    solved: &CriticalPointSet,
    target_center: &[Complex64],
    rng: &mut Rng,
    opts: &TrackOptions,
) -> Result<CriticalPointSet> {
    let g_from = problem.system_for_center(&solved.center)?;
    let g_to = problem.system_for_center(target_center)?;
    let nx = problem.num_x();

    // rebuild chart-satisfying multipliers from stored normalized ones
    let mut starts = Vec::new();
    for p in &solved.points {
        if p.projected_only {
            continue;
        }
        let denom: Complex64 = problem
            .chart
            .iter()
            .zip(&p.lambda)
            .map(|(&c, l)| l * c)
            .sum();
        if denom.norm() < 1e-12 {
            continue;
        }
        let mut s = p.x.clone();
        s.extend(p.lambda.iter().map(|l| l / denom));
        let refined = tracker::newton_refine(&g_from, &s, opts.newton_tol / 10.0);
        if refined.residual < solver::RESIDUAL_GATE {
            starts.push(refined.point);
        }
    }
    if starts.is_empty() {
        return Err(CoreError::Input(
            "no transportable critical points in the source set".into(),
        ));
    }

    let h = Homotopy::segment(&g_from, &g_to, rng.unit_complex())?;
    let batch = solver::track_batch(&h, &starts, opts);
    let mut warnings = batch.warnings;
    let mut raw = Vec::new();
    let mut projected = Vec::new();
    let xmask: Vec<usize> = (0..nx).collect();
    for r in batch.results {
        if r.converged() {
            let rr = tracker::newton_refine(&g_to, &r.endpoint, opts.newton_tol / 10.0);
            if rr.residual < solver::RESIDUAL_GATE {
                raw.push((rr.point[..nx].to_vec(), rr.point[nx..].to_vec()));
                continue;
            }
        }
        match r.projected_limit(&xmask) {
            Some(x) => projected.push(x),
            None => warnings.push("transport path lost without a projected limit".into()),
        }
    }
    Ok(finalize_set(problem, target_center, raw, projected, rng.seed(), warnings))
}

/// Newton homotopy `F(z) - t F(x*)` with the Lagrange rows held fixed,
/// started at the center itself with multiplier `[1, 0, ..., 0]`. A smooth
/// convergent path certifies a real critical point (real data keep the
/// path real, so no gamma factor is applied).
pub fn gradient_descent_homotopy(
    problem: &CriticalProblem,
    center: &[f64],
    opts: &TrackOptions,
) -> Result<(PathResult, CriticalPoint)> {
    if center.len() != problem.num_x() {
        return Err(CoreError::DimensionMismatch {
            expected: problem.num_x(),
            got: center.len(),
        });
    }
    let ccenter_full: Vec<Complex64> = center.iter().map(|&r| Complex64::new(r, 0.0)).collect();
    let ccenter: Vec<Complex64> = problem.mask.iter().map(|&j| ccenter_full[j]).collect();
    let f_at_center = problem.f.evaluate(&ccenter_full)?;
    let res0: f64 = f_at_center.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    if res0 < 1e-6 {
        return Err(CoreError::Precondition(
            "gradient descent center lies on the variety".into(),
        ));
    }

    let g_target = problem.system_for_center(&ccenter)?;
    // start system: F rows shifted by their value at the center
    let mut start_polys = g_target.polys.clone();
    for (i, val) in f_at_center.iter().enumerate() {
        start_polys[i] = start_polys[i].add(&Polynomial::constant(-val, g_target.num_vars));
    }
    let g_start = PolynomialSystem::new(g_target.num_vars, start_polys)?;
    let h = Homotopy::segment(&g_start, &g_target, ONE)?;

    let mut start = ccenter_full.clone();
    start.push(ONE / Complex64::new(problem.chart[0], 0.0));
    start.extend(vec![ZERO; problem.num_lambda() - 1]);

    let r = tracker::track(&h, &start, opts)?;
    if !r.converged() {
        return Err(CoreError::NoLocalCertificate(format!(
            "gradient descent path ended {:?} at t = {:.3e}",
            r.status, r.t_reached
        )));
    }
    let nx = problem.num_x();
    let x = r.endpoint[..nx].to_vec();
    let lambda = normalize_projective(&r.endpoint[nx..]);
    let (is_real, borderline) = reality_of(&x);
    let distance = masked_distance(problem, &x, &ccenter);
    Ok((
        r,
        CriticalPoint {
            x,
            lambda,
            is_real,
            borderline,
            projected_only: false,
            distance: Some(distance),
        },
    ))
}

/// Variety sampler adapter: fiber points of a join decomposition serve as
/// monodromy seeds for its critical systems.
pub fn seeds_from_solution_set(set: &SolutionSet, take: usize) -> Vec<Vec<Complex64>> {
    set.points.iter().take(take).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn circle() -> PolynomialSystem {
        // x^2 + y^2 - 1
        PolynomialSystem::new(
            2,
            vec![Polynomial::from_terms(vec![
                Term::new(ONE, vec![2, 0]),
                Term::new(ONE, vec![0, 2]),
                Term::new(c(-1.0, 0.0), vec![0, 0]),
            ])],
        )
        .unwrap()
    }

    #[test]
    fn circle_critical_points_from_external_center() {
        let f = circle();
        let mut rng = Rng::from_seed(301);
        let problem = CriticalProblem::new(&f, None, &mut rng).unwrap();
        let set = solve_critical(
            &problem,
            &[0.0, -2.0],
            &mut rng,
            CriticalMethod::TotalDegree,
            &TrackOptions::default(),
        )
        .unwrap();
        assert_eq!(set.count_x, 2);
        assert_eq!(set.num_real(), 2);
        let nearest = set.nearest_real().unwrap();
        assert!((nearest.x[0].re).abs() < 1e-8);
        assert!((nearest.x[1].re + 1.0).abs() < 1e-8);
        assert!((nearest.distance.unwrap() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn point_variety_has_unique_nearest_point() {
        // V(x) in C^1 from center 1: critical point x = 0
        let f = PolynomialSystem::new(
            1,
            vec![Polynomial::from_terms(vec![Term::new(ONE, vec![1])])],
        )
        .unwrap();
        let mut rng = Rng::from_seed(303);
        let problem = CriticalProblem::new(&f, None, &mut rng).unwrap();
        let set = solve_critical(
            &problem,
            &[1.0],
            &mut rng,
            CriticalMethod::TotalDegree,
            &TrackOptions::default(),
        )
        .unwrap();
        assert_eq!(set.count_x, 1);
        assert!(set.points[0].x[0].norm() < 1e-9);
    }

    #[test]
    fn gradient_descent_on_circle() {
        let f = circle();
        let mut rng = Rng::from_seed(307);
        let problem = CriticalProblem::new(&f, None, &mut rng).unwrap();
        let (path, pt) =
            gradient_descent_homotopy(&problem, &[0.0, -2.0], &TrackOptions::default()).unwrap();
        assert!(path.converged());
        assert!(pt.is_real);
        assert!((pt.x[0].re).abs() < 1e-8);
        assert!((pt.x[1].re + 1.0).abs() < 1e-8);
    }

    #[test]
    fn gradient_descent_on_linear_variety() {
        // V(x - 5) from center 0 -> endpoint 5
        let f = PolynomialSystem::new(
            1,
            vec![Polynomial::from_terms(vec![
                Term::new(ONE, vec![1]),
                Term::new(c(-5.0, 0.0), vec![0]),
            ])],
        )
        .unwrap();
        let mut rng = Rng::from_seed(311);
        let problem = CriticalProblem::new(&f, None, &mut rng).unwrap();
        let (_, pt) =
            gradient_descent_homotopy(&problem, &[0.0], &TrackOptions::default()).unwrap();
        assert!((pt.x[0].re - 5.0).abs() < 1e-8);
    }

    #[test]
    fn monodromy_matches_total_degree_on_circle() {
        let f = circle();
        let mut rng = Rng::from_seed(313);
        let problem = CriticalProblem::new(&f, None, &mut rng).unwrap();
        // seed: a random real point on the circle
        let th = 0.7f64;
        let seed = vec![c(th.cos(), 0.0), c(th.sin(), 0.0)];
        let set = solve_critical(
            &problem,
            &[0.3, -1.7],
            &mut rng,
            CriticalMethod::MonodromySeeded {
                variety_points: vec![seed],
                stall_limit: 8,
            },
            &TrackOptions::default(),
        )
        .unwrap();
        assert_eq!(set.count_x, 2, "ED degree of the circle is 2");
        assert_eq!(set.num_real(), 2);
    }

    #[test]
    fn conjugate_pairs_are_even() {
        // cusp curve x^3 - y^2 from a generic center
        let f = PolynomialSystem::new(
            2,
            vec![Polynomial::from_terms(vec![
                Term::new(ONE, vec![3, 0]),
                Term::new(c(-1.0, 0.0), vec![0, 2]),
            ])],
        )
        .unwrap();
        let mut rng = Rng::from_seed(317);
        let problem = CriticalProblem::new(&f, None, &mut rng).unwrap();
        let set = solve_critical(
            &problem,
            &[0.4, 0.9],
            &mut rng,
            CriticalMethod::TotalDegree,
            &TrackOptions::default(),
        )
        .unwrap();
        assert!(set.warnings.is_empty(), "warnings: {:?}", set.warnings);
        assert_eq!((set.count_x - set.num_real()) % 2, 0);
        assert!(set.num_real() >= 1);
    }
}
