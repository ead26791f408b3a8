//! Global root finding and witness-point transport.
//!
//! Everything here manufactures or moves finite solution sets: total-degree
//! starts for square systems, slice-to-slice transport, monodromy loops for
//! populating witness point sets, and the affine trace test used as the
//! completeness certificate.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::poly::cpair_mat;
use crate::algebra::{Homotopy, LinearSlice, Polynomial, PolynomialSystem, Rng, Term};
use crate::error::{CoreError, Result};
use crate::tracker::{self, PathResult, PathStatus, TrackOptions};

pub const RESIDUAL_GATE: f64 = 1e-8;
pub const DEDUP_TOL: f64 = 1e-6;
const MAX_TOTAL_DEGREE_PATHS: usize = 1 << 20;

/// A deduplicated set of solutions of some defining system.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolutionSet {
    #[serde(with = "cpair_mat")]
    pub points: Vec<Vec<Complex64>>,
    pub residuals: Vec<f64>,
    pub dedup_tol: f64,
    pub seed: u64,
}

impl SolutionSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Relative distance normalized by `1 + norm`.
pub fn rel_dist(a: &[Complex64], b: &[Complex64]) -> f64 {
    let diff: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt();
    let na: f64 = a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    diff / (1.0 + na.max(nb))
}

fn canonical_cmp(a: &[Complex64], b: &[Complex64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)) {
            std::cmp::Ordering::Equal => continue,
            ord => return ord,
        }
    }
    std::cmp::Ordering::Equal
}

/// Deduplicate `(point, residual)` pairs at the given relative tolerance.
/// Points are first put in a canonical order so the result is independent of
/// input schedule.
pub fn dedup_points(
    mut items: Vec<(Vec<Complex64>, f64)>,
    tol: f64,
) -> (Vec<Vec<Complex64>>, Vec<f64>) {
    items.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
    let mut points: Vec<Vec<Complex64>> = Vec::new();
    let mut residuals: Vec<f64> = Vec::new();
    'outer: for (p, r) in items {
        for q in &points {
            if rel_dist(&p, q) < tol {
                continue 'outer;
            }
        }
        points.push(p);
        residuals.push(r);
    }
    (points, residuals)
}

/// Replace an overdetermined system by `rows` random complex combinations of
/// its equations. Callers must filter endpoints against the full system.
pub fn square_up(f: &PolynomialSystem, rows: usize, rng: &mut Rng) -> Result<PolynomialSystem> {
    if f.len() == rows {
        return Ok(f.clone());
    }
    if f.len() < rows {
        return Err(CoreError::Input(format!(
            "cannot square {} equations up to {} rows",
            f.len(),
            rows
        )));
    }
    let polys: Vec<Polynomial> = (0..rows)
        .map(|_| {
            let coeffs = rng.unit_complex_vec(f.len());
            let mut acc = Polynomial::zero();
            for (c, p) in coeffs.iter().zip(&f.polys) {
                acc = acc.add(&p.scale(*c));
            }
            acc
        })
        .collect();
    PolynomialSystem::new(f.num_vars, polys)
}

#[derive(Debug)]
pub struct BatchOutcome {
    pub results: Vec<PathResult>,
    pub warnings: Vec<String>,
}

/// Track a batch of paths of one homotopy in parallel.
///
/// Within a batch, two convergent endpoints from distinct starts coinciding
/// at tolerance 1e-6 trips the path-crossing guard: the offending paths are
/// re-run with tightened tolerances before the batch is returned.
pub fn track_batch(h: &Homotopy, starts: &[Vec<Complex64>], opts: &TrackOptions) -> BatchOutcome {
    let mut warnings = Vec::new();
    let run = |o: &TrackOptions, idx: &[usize], prev: &mut Vec<PathResult>| {
        let fresh: Vec<(usize, PathResult)> = idx
            .par_iter()
            .map(|&i| {
                let r = tracker::track(h, &starts[i], o).unwrap_or_else(|_| PathResult {
                    status: PathStatus::Singular,
                    endpoint: starts[i].clone(),
                    t_reached: 1.0,
                    residual: f64::INFINITY,
                    steps_taken: 0,
                    condition_estimate: f64::INFINITY,
                    samples: vec![],
                });
                (i, r)
            })
            .collect();
        for (i, r) in fresh {
            if prev.len() <= i {
                prev.resize_with(i + 1, || r.clone());
            }
            prev[i] = r;
        }
    };

    let all: Vec<usize> = (0..starts.len()).collect();
    let mut results: Vec<PathResult> = Vec::new();
    run(opts, &all, &mut results);

    // path-crossing guard
    let mut suspicious: Vec<usize> = Vec::new();
    for i in 0..results.len() {
        if !results[i].converged() {
            continue;
        }
        for j in (i + 1)..results.len() {
            if !results[j].converged() {
                continue;
            }
            if rel_dist(&results[i].endpoint, &results[j].endpoint) < DEDUP_TOL
                && rel_dist(&starts[i], &starts[j]) > DEDUP_TOL
            {
                suspicious.push(i);
                suspicious.push(j);
            }
        }
    }
    if !suspicious.is_empty() {
        suspicious.sort_unstable();
        suspicious.dedup();
        warnings.push(format!(
            "path-crossing guard: {} coincident endpoints, re-running tightened",
            suspicious.len()
        ));
        run(&opts.tightened(), &suspicious, &mut results);
    }
    BatchOutcome { results, warnings }
}

/// Track all starts from `start_sys` to `target_sys` under a gamma-trick
/// segment. A path stalling far above `t_min` signals an arc passing too
/// close to the discriminant (the Newton floor exceeds any usable
/// tolerance there), so the whole batch is re-run on a fresh random arc —
/// per-arc continuation is injective, and patching single paths across
/// arcs would scramble the endpoint bookkeeping. The cleanest arc wins.
pub fn segment_batch(
    start_sys: &PolynomialSystem,
    target_sys: &PolynomialSystem,
    starts: &[Vec<Complex64>],
    rng: &mut Rng,
    opts: &TrackOptions,
) -> Result<BatchOutcome> {
    let stuck = |r: &PathResult| -> bool {
        !r.converged()
            && r.status != PathStatus::Diverged
            && r.t_reached > 10.0 * opts.t_min
    };
    let mut best: Option<BatchOutcome> = None;
    let mut best_stuck = usize::MAX;
    for attempt in 0..3 {
        let h = Homotopy::segment(start_sys, target_sys, rng.unit_complex())?;
        let mut batch = track_batch(&h, starts, opts);
        let n_stuck = batch.results.iter().filter(|r| stuck(r)).count();
        if n_stuck == 0 {
            return Ok(batch);
        }
        if attempt < 2 {
            batch
                .warnings
                .push(format!("{n_stuck} paths stalled mid-arc; retrying on a fresh arc"));
        }
        if n_stuck < best_stuck {
            best_stuck = n_stuck;
            best = Some(batch);
        }
    }
    Ok(best.expect("at least one arc attempted"))
}

/// Like `segment_batch`, but for consumers that only need the endpoint
/// SET: converged results from every retry arc are appended (continuation
/// per arc is onto the finite endpoints, so the union over independent
/// arcs misses a point only if its path stalls on every one of them).
/// The first `starts.len()` entries are the primary arc's per-path results;
/// callers deduplicate downstream.
pub fn segment_batch_union(
    start_sys: &PolynomialSystem,
    target_sys: &PolynomialSystem,
    starts: &[Vec<Complex64>],
    rng: &mut Rng,
    opts: &TrackOptions,
) -> Result<BatchOutcome> {
    let stuck = |r: &PathResult| -> bool {
        !r.converged()
            && r.status != PathStatus::Diverged
            && r.t_reached > 10.0 * opts.t_min
    };
    let h = Homotopy::segment(start_sys, target_sys, rng.unit_complex())?;
    let mut batch = track_batch(&h, starts, opts);
    let mut n_stuck = batch.results.iter().filter(|r| stuck(r)).count();
    for _ in 0..2 {
        if n_stuck == 0 {
            break;
        }
        batch.warnings.push(format!(
            "{n_stuck} paths stalled mid-arc; adding endpoints from a fresh arc"
        ));
        let h2 = Homotopy::segment(start_sys, target_sys, rng.unit_complex())?;
        let rb = track_batch(&h2, starts, opts);
        n_stuck = rb.results.iter().filter(|r| stuck(r)).count();
        batch
            .results
            .extend(rb.results.into_iter().filter(|r| r.converged()));
        batch.warnings.extend(rb.warnings);
    }
    Ok(batch)
}

fn mixed_radix_roots(degrees: &[u32]) -> Vec<Vec<Complex64>> {
    let total: usize = degrees.iter().map(|&d| d as usize).product();
    let mut out = Vec::with_capacity(total);
    let mut counter = vec![0u32; degrees.len()];
    for _ in 0..total {
        out.push(
            counter
                .iter()
                .zip(degrees)
                .map(|(&k, &d)| {
                    let theta = std::f64::consts::TAU * k as f64 / d as f64;
                    Complex64::new(theta.cos(), theta.sin())
                })
                .collect(),
        );
        for i in 0..counter.len() {
            counter[i] += 1;
            if counter[i] < degrees[i] {
                break;
            }
            counter[i] = 0;
        }
    }
    out
}

/// Solve a square system by tracking all Bezout paths from the
/// roots-of-unity start system `{x_i^(d_i) - 1}` under a gamma-trick
/// segment homotopy.
pub fn total_degree_solve(
    f: &PolynomialSystem,
    rng: &mut Rng,
    opts: &TrackOptions,
) -> Result<SolutionSet> {
    if f.len() != f.num_vars {
        return Err(CoreError::Input(format!(
            "total-degree solve needs a square system: {} equations, {} variables",
            f.len(),
            f.num_vars
        )));
    }
    let degrees: Vec<u32> = f.degrees().iter().map(|&d| d.max(1)).collect();
    let bezout: usize = degrees.iter().map(|&d| d as usize).product();
    if bezout > MAX_TOTAL_DEGREE_PATHS {
        return Err(CoreError::Input(format!(
            "Bezout number {bezout} exceeds the total-degree path cap"
        )));
    }

    let start_polys: Vec<Polynomial> = degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            let mut e = vec![0u32; f.num_vars];
            e[i] = d;
            Polynomial::from_terms(vec![
                Term::new(Complex64::new(1.0, 0.0), e),
                Term::new(Complex64::new(-1.0, 0.0), vec![0; f.num_vars]),
            ])
        })
        .collect();
    let start_system = PolynomialSystem::new(f.num_vars, start_polys)?;
    let starts = mixed_radix_roots(&degrees);
    let batch = segment_batch_union(&start_system, f, &starts, rng, opts)?;
    collect_solutions(f, batch.results, rng.seed(), opts)
}

/// Refine convergent endpoints, filter by residual against `f`, dedup.
pub fn collect_solutions(
    f: &PolynomialSystem,
    results: Vec<PathResult>,
    seed: u64,
    opts: &TrackOptions,
) -> Result<SolutionSet> {
    let refined: Vec<(Vec<Complex64>, f64)> = results
        .into_par_iter()
        .filter(|r| r.converged())
        .map(|r| {
            let rr = tracker::newton_refine(f, &r.endpoint, opts.newton_tol / 10.0);
            (rr.point, rr.residual)
        })
        .filter(|(_, res)| *res < RESIDUAL_GATE)
        .collect();
    let (points, residuals) = dedup_points(refined, DEDUP_TOL);
    Ok(SolutionSet {
        points,
        residuals,
        dedup_tol: DEDUP_TOL,
        seed,
    })
}

/// Transport points on `f ∪ from` to the slice `to`, keeping every path
/// result (membership logic needs the divergent ones too).
///
/// `var_map` embeds slice columns into the system's variable space
/// (identity when `None`).
pub fn move_slice(
    f: &PolynomialSystem,
    from: &LinearSlice,
    points_on_from: &[Vec<Complex64>],
    to: &LinearSlice,
    var_map: Option<&[usize]>,
    rng: &mut Rng,
    opts: &TrackOptions,
) -> Result<Vec<PathResult>> {
    if from.codim() != to.codim() {
        return Err(CoreError::Input(format!(
            "slice codim mismatch: {} vs {}",
            from.codim(),
            to.codim()
        )));
    }
    let nv = f.num_vars;
    let need = nv
        .checked_sub(from.codim())
        .ok_or_else(|| CoreError::Input("slice codim exceeds variable count".into()))?;
    let f_sq = square_up(f, need, rng)?;

    let from_rows = from.rows_as_polys(nv, var_map);
    let to_rows = to.rows_as_polys(nv, var_map);
    let start = f_sq.appended(&from_rows)?;
    let target = f_sq.appended(&to_rows)?;

    for p in points_on_from {
        let res = start.residual(p)?;
        if res > RESIDUAL_GATE {
            return Err(CoreError::Precondition(format!(
                "point residual {res:.3e} on f ∪ from exceeds 1e-8"
            )));
        }
    }

    Ok(segment_batch(&start, &target, points_on_from, rng, opts)?.results)
}

/// `move_slice` with endpoint-set semantics: converged endpoints from
/// retry arcs are appended, so witness transports do not silently drop
/// points to mid-arc stalls. The result may be longer than the input;
/// callers deduplicate.
pub fn move_slice_union(
    f: &PolynomialSystem,
    from: &LinearSlice,
    points_on_from: &[Vec<Complex64>],
    to: &LinearSlice,
    var_map: Option<&[usize]>,
    rng: &mut Rng,
    opts: &TrackOptions,
) -> Result<Vec<PathResult>> {
    if from.codim() != to.codim() {
        return Err(CoreError::Input(format!(
            "slice codim mismatch: {} vs {}",
            from.codim(),
            to.codim()
        )));
    }
    let nv = f.num_vars;
    let need = nv
        .checked_sub(from.codim())
        .ok_or_else(|| CoreError::Input("slice codim exceeds variable count".into()))?;
    let f_sq = square_up(f, need, rng)?;
    let start = f_sq.appended(&from.rows_as_polys(nv, var_map))?;
    let target = f_sq.appended(&to.rows_as_polys(nv, var_map))?;
    for p in points_on_from {
        let res = start.residual(p)?;
        if res > RESIDUAL_GATE {
            return Err(CoreError::Precondition(format!(
                "point residual {res:.3e} on f ∪ from exceeds 1e-8"
            )));
        }
    }
    Ok(segment_batch_union(&start, &target, points_on_from, rng, opts)?.results)
}

#[derive(Debug, Clone, Copy)]
pub struct MonodromyOptions {
    pub stall_limit: usize,
    pub max_loops: usize,
    pub max_points: usize,
}

impl Default for MonodromyOptions {
    fn default() -> Self {
        MonodromyOptions {
            stall_limit: 10,
            max_loops: 200,
            max_points: 100_000,
        }
    }
}

/// Generic monodromy engine: repeatedly deform `base` to a random instance
/// and back along independent gamma-trick segments, accumulating new
/// deduplicated endpoints that satisfy `base` (and `full_check` when given).
///
/// Stops after `stall_limit` consecutive loops without a new point. Loops
/// where every path fails are discarded; five consecutive discards abort.
pub fn monodromy_engine(
    base: &PolynomialSystem,
    mut instance_gen: impl FnMut(&mut Rng) -> Result<PolynomialSystem>,
    seeds: &[Vec<Complex64>],
    rng: &mut Rng,
    mopts: MonodromyOptions,
    opts: &TrackOptions,
    full_check: Option<&PolynomialSystem>,
) -> Result<SolutionSet> {
    if seeds.is_empty() {
        return Err(CoreError::Input("monodromy needs at least one seed".into()));
    }
    for s in seeds {
        let r = base.residual(s)?;
        if r > RESIDUAL_GATE {
            return Err(CoreError::Precondition(format!(
                "monodromy seed residual {r:.3e} exceeds 1e-8"
            )));
        }
    }
    let keep = |p: &[Complex64]| -> bool {
        match full_check {
            Some(full) => full.residual(p).map(|r| r < RESIDUAL_GATE).unwrap_or(false),
            None => true,
        }
    };

    let (mut points, mut residuals) = dedup_points(
        seeds
            .iter()
            .map(|s| (s.clone(), base.residual(s).unwrap_or(f64::INFINITY)))
            .collect(),
        DEDUP_TOL,
    );

    let mut stall = 0usize;
    let mut discarded = 0usize;
    let mut loops = 0usize;
    while stall < mopts.stall_limit && loops < mopts.max_loops && points.len() < mopts.max_points {
        loops += 1;
        // triangle loop through two independent random instances
        let via_a = instance_gen(rng)?;
        let via_b = instance_gen(rng)?;
        let legs = [
            (base.clone(), via_a.clone()),
            (via_a, via_b.clone()),
            (via_b, base.clone()),
        ];
        let mut current = points.clone();
        let mut lost_all = false;
        for (from_sys, to_sys) in &legs {
            current = segment_batch_union(from_sys, to_sys, &current, rng, opts)?
                .results
                .into_iter()
                .filter(|r| r.converged())
                .map(|r| r.endpoint)
                .collect();
            if current.is_empty() {
                lost_all = true;
                break;
            }
        }
        if lost_all {
            discarded += 1;
            if discarded >= 5 {
                return Err(CoreError::MonodromyStalled);
            }
            continue;
        }
        let returned = current;
        discarded = 0;

        let before = points.len();
        let mut all: Vec<(Vec<Complex64>, f64)> = points
            .drain(..)
            .zip(residuals.drain(..))
            .collect();
        for p in returned {
            let rr = tracker::newton_refine(base, &p, opts.newton_tol / 10.0);
            if rr.residual < RESIDUAL_GATE && keep(&rr.point) {
                all.push((rr.point, rr.residual));
            }
        }
        let (np, nr) = dedup_points(all, DEDUP_TOL);
        points = np;
        residuals = nr;
        if points.len() == before {
            stall += 1;
        } else {
            stall = 0;
        }
    }
    Ok(SolutionSet {
        points,
        residuals,
        dedup_tol: DEDUP_TOL,
        seed: rng.seed(),
    })
}

/// Slice-moving monodromy: loops move `slice` to a fresh random slice of the
/// same codimension and back, including any structured embedding via
/// `var_map`.
pub fn monodromy_populate(
    f: &PolynomialSystem,
    slice: &LinearSlice,
    seed_points: &SolutionSet,
    rng: &mut Rng,
    stall_limit: usize,
    opts: &TrackOptions,
) -> Result<SolutionSet> {
    let nv = f.num_vars;
    let need = nv - slice.codim();
    let f_sq = square_up(f, need, rng)?;
    let base = f_sq.appended(&slice.rows_as_polys(nv, None))?;
    let full = f.appended(&slice.rows_as_polys(nv, None))?;
    let codim = slice.codim();
    monodromy_engine(
        &base,
        move |r: &mut Rng| {
            let fresh = LinearSlice::random(nv, codim, None, r)?;
            f_sq.appended(&fresh.rows_as_polys(nv, None))
        },
        &seed_points.points,
        rng,
        MonodromyOptions {
            stall_limit,
            ..Default::default()
        },
        opts,
        Some(&full),
    )
}

/// Affine trace test: translate the moving slice's offset by `±0.1 v` for a
/// random direction `v`, transport the points, and test that the
/// coordinate-wise sum (restricted to `sum_mask` when given) moves
/// affine-linearly. Any transported path failing to converge fails the test.
pub fn trace_test(
    f_fixed: &PolynomialSystem,
    moving: &LinearSlice,
    moving_map: Option<&[usize]>,
    points: &[Vec<Complex64>],
    sum_mask: Option<&[usize]>,
    rng: &mut Rng,
    opts: &TrackOptions,
) -> Result<bool> {
    if points.is_empty() {
        return Err(CoreError::Input("trace test needs points".into()));
    }
    let direction = rng.unit_complex_vec(moving.codim());
    let sum_of = |pts: &[Vec<Complex64>]| -> Vec<Complex64> {
        let idx: Vec<usize> = match sum_mask {
            Some(m) => m.to_vec(),
            None => (0..pts[0].len()).collect(),
        };
        idx.iter()
            .map(|&i| pts.iter().map(|p| p[i]).sum())
            .collect()
    };

    let mut transported: Vec<Vec<Vec<Complex64>>> = Vec::with_capacity(2);
    for s in [-0.1, 0.1] {
        let to = moving.translated(&direction, s);
        let results = move_slice(f_fixed, moving, points, &to, moving_map, rng, opts)?;
        if results.iter().any(|r| !r.converged()) {
            return Ok(false);
        }
        let pts: Vec<Vec<Complex64>> = results.into_iter().map(|r| r.endpoint).collect();
        transported.push(pts);
    }

    let s_minus = sum_of(&transported[0]);
    let s_zero = sum_of(points);
    let s_plus = sum_of(&transported[1]);

    let second: f64 = s_minus
        .iter()
        .zip(&s_zero)
        .zip(&s_plus)
        .map(|((a, b), c)| (a - b * 2.0 + c).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let first: f64 = s_plus
        .iter()
        .zip(&s_zero)
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok(second < 1e-6 * (1.0 + first))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn poly2(terms: &[(f64, f64, [u32; 2])]) -> Polynomial {
        Polynomial::from_terms(
            terms
                .iter()
                .map(|&(re, im, e)| Term::new(c(re, im), e.to_vec()))
                .collect(),
        )
    }

    #[test]
    fn roots_of_x2_minus_1() {
        let f = PolynomialSystem::new(
            1,
            vec![Polynomial::from_terms(vec![
                Term::new(c(1.0, 0.0), vec![2]),
                Term::new(c(-1.0, 0.0), vec![0]),
            ])],
        )
        .unwrap();
        let mut rng = Rng::from_seed(1);
        let sols = total_degree_solve(&f, &mut rng, &TrackOptions::default()).unwrap();
        assert_eq!(sols.len(), 2);
        let mut roots: Vec<f64> = sols.points.iter().map(|p| p[0].re).collect();
        roots.sort_by(f64::total_cmp);
        assert!((roots[0] + 1.0).abs() < 1e-9 && (roots[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn substitution_system() {
        // {x^2 - y, y - 1} -> {(1,1), (-1,1)}
        let f = PolynomialSystem::new(
            2,
            vec![
                poly2(&[(1.0, 0.0, [2, 0]), (-1.0, 0.0, [0, 1])]),
                poly2(&[(1.0, 0.0, [0, 1]), (-1.0, 0.0, [0, 0])]),
            ],
        )
        .unwrap();
        let mut rng = Rng::from_seed(2);
        let sols = total_degree_solve(&f, &mut rng, &TrackOptions::default()).unwrap();
        assert_eq!(sols.len(), 2);
        for p in &sols.points {
            assert!((p[1] - c(1.0, 0.0)).norm() < 1e-9);
            assert!((p[0].norm() - 1.0).abs() < 1e-9);
        }
        assert!(sols.residuals.iter().all(|&r| r < RESIDUAL_GATE));
    }

    #[test]
    fn bezout_bound_respected() {
        let f = PolynomialSystem::new(
            2,
            vec![
                poly2(&[(1.0, 0.0, [2, 0]), (-1.0, 0.0, [0, 0])]),
                poly2(&[(1.0, 0.0, [0, 3]), (-1.0, 0.0, [0, 0])]),
            ],
        )
        .unwrap();
        let mut rng = Rng::from_seed(3);
        let sols = total_degree_solve(&f, &mut rng, &TrackOptions::default()).unwrap();
        assert!(sols.len() <= 6);
        assert_eq!(sols.len(), 6);
    }

    #[test]
    fn move_slice_identity_and_round_trip() {
        // witness-style setup on the parabola x2 = x1^2 in C^2
        let f = PolynomialSystem::new(2, vec![poly2(&[(1.0, 0.0, [2, 0]), (-1.0, 0.0, [0, 1])])])
            .unwrap();
        let mut rng = Rng::from_seed(4);
        let from = LinearSlice::random(2, 1, None, &mut rng).unwrap();
        let sys = f.appended(&from.rows_as_polys(2, None)).unwrap();
        let sols = total_degree_solve(&sys, &mut rng, &TrackOptions::default()).unwrap();
        assert_eq!(sols.len(), 2);

        // identity deformation
        let idr = move_slice(
            &f,
            &from,
            &sols.points,
            &from,
            None,
            &mut rng,
            &TrackOptions::default(),
        )
        .unwrap();
        for (r, p) in idr.iter().zip(&sols.points) {
            assert_eq!(r.status, PathStatus::Converged);
            assert!(rel_dist(&r.endpoint, p) < 1e-8);
        }

        // round trip through a random slice
        let to = LinearSlice::random(2, 1, None, &mut rng).unwrap();
        let out = move_slice(
            &f,
            &from,
            &sols.points,
            &to,
            None,
            &mut rng,
            &TrackOptions::default(),
        )
        .unwrap();
        let mid: Vec<Vec<Complex64>> = out.iter().map(|r| r.endpoint.clone()).collect();
        let back = move_slice(&f, &to, &mid, &from, None, &mut rng, &TrackOptions::default())
            .unwrap();
        let mut found = 0;
        for r in &back {
            if sols.points.iter().any(|p| rel_dist(p, &r.endpoint) < 1e-6) {
                found += 1;
            }
        }
        assert_eq!(found, sols.len());
    }

    #[test]
    fn monodromy_on_a_hyperplane_finds_nothing_new() {
        // degree-1 image: a hyperplane in C^2
        let f = PolynomialSystem::new(
            2,
            vec![poly2(&[(1.0, 0.0, [1, 0]), (1.0, 0.0, [0, 1]), (-1.0, 0.0, [0, 0])])],
        )
        .unwrap();
        let mut rng = Rng::from_seed(5);
        let slice = LinearSlice::random(2, 1, None, &mut rng).unwrap();
        let sys = f.appended(&slice.rows_as_polys(2, None)).unwrap();
        let sols = total_degree_solve(&sys, &mut rng, &TrackOptions::default()).unwrap();
        assert_eq!(sols.len(), 1);
        let grown = monodromy_populate(&f, &slice, &sols, &mut rng, 4, &TrackOptions::default())
            .unwrap();
        assert_eq!(grown.len(), 1);
    }

    #[test]
    fn trace_test_on_linear_variety() {
        let f = PolynomialSystem::new(
            2,
            vec![poly2(&[(1.0, 0.0, [1, 0]), (1.0, 0.0, [0, 1]), (-1.0, 0.0, [0, 0])])],
        )
        .unwrap();
        let mut rng = Rng::from_seed(6);
        let slice = LinearSlice::random(2, 1, None, &mut rng).unwrap();
        let sys = f.appended(&slice.rows_as_polys(2, None)).unwrap();
        let sols = total_degree_solve(&sys, &mut rng, &TrackOptions::default()).unwrap();
        let ok = trace_test(
            &f,
            &slice,
            None,
            &sols.points,
            None,
            &mut rng,
            &TrackOptions::default(),
        )
        .unwrap();
        assert!(ok);
    }
}
