//! Membership of a point in a join variety and its constructible part:
//! path-counted multiplicity, the curve-section reduction, and the cascade
//! computing all decompositions of a point.

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{LinearSlice, Rng};
use crate::error::{CoreError, Result};
use crate::solver::{self, SolutionSet, DEDUP_TOL};
use crate::tracker::TrackOptions;
use crate::varieties::{
    combined_slice, image_dimension, widen_slice, witness_set, AbstractJoin, ProjectionSetup,
    PseudoWitnessSet,
};

const LIMIT_TOL: f64 = 1e-6;
/// Membership of a tracked point in a pinned fiber is decided at near
/// machine scale: the pinning rows hold the image exactly, and a looser
/// tolerance would sweep in points of nearby fibers.
const ON_FIBER_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Serialize, PartialEq)]
pub enum Constructible {
    /// A lift converged inside the incidence variety over the target; the
    /// endpoint decomposes the point.
    InJ0 {
        #[serde(with = "crate::algebra::poly::cpair_vec")]
        witness: Vec<Complex64>,
    },
    NotInJ0,
    /// Divergent lifts over the target: either the point lies in the join
    /// minus the constructible join, or its fiber has excess dimension.
    Inconclusive,
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
pub enum PathEvidence {
    ConvergedAtTarget,
    ConvergedElsewhere,
    LimitAtTargetNoLift,
    LimitElsewhereNoLift,
    NoLimit,
}

#[derive(Debug, Clone, Serialize)]
pub struct MembershipReport {
    pub in_closure: bool,
    pub multiplicity: usize,
    pub constructible: Constructible,
    pub paths_tracked: usize,
    #[serde(with = "crate::algebra::poly::cpair_mat")]
    pub limiting_projections: Vec<Vec<Complex64>>,
    pub evidence: Vec<PathEvidence>,
    pub warnings: Vec<String>,
}

/// The limit of a lifted path inside the incidence variety, when it exists:
/// convergent paths report their endpoint; paths that end singular because
/// the limit lies on a positive-dimensional fiber (a non-isolated solution
/// of the end system) are extrapolated from the recorded samples and
/// polished against the fixed system alone.
fn lift_limit(
    fixed: &crate::algebra::PolynomialSystem,
    proj: &[usize],
    target: &[Complex64],
    r: &crate::tracker::PathResult,
) -> Option<Vec<Complex64>> {
    if r.converged() {
        return Some(r.endpoint.clone());
    }
    let all: Vec<usize> = (0..fixed.num_vars).collect();
    let limit = r.projected_limit(&all)?;
    if !limit
        .iter()
        .all(|z| z.re.is_finite() && z.im.is_finite() && z.norm() < 1e6)
    {
        return None;
    }
    let refined = crate::tracker::newton_refine(fixed, &limit, 1e-10);
    if refined.residual >= 1e-5 {
        return None;
    }
    // polishing a divergent path's extrapolation can land anywhere on the
    // variety; only an endpoint actually over the target counts as a lift
    let image: Vec<Complex64> = proj.iter().map(|&j| refined.point[j]).collect();
    if solver::rel_dist(&image, target) < LIMIT_TOL {
        Some(refined.point)
    } else {
        None
    }
}

fn classify_limit(
    limit: &Option<Vec<Complex64>>,
    converged: bool,
    target: &[Complex64],
) -> PathEvidence {
    match limit {
        None => PathEvidence::NoLimit,
        Some(l) => {
            let at_target = solver::rel_dist(l, target) < LIMIT_TOL;
            match (converged, at_target) {
                (true, true) => PathEvidence::ConvergedAtTarget,
                (true, false) => PathEvidence::ConvergedElsewhere,
                (false, true) => PathEvidence::LimitAtTargetNoLift,
                (false, false) => PathEvidence::LimitElsewhereNoLift,
            }
        }
    }
}

/// Decide membership of `point` (in image coordinates) in the closure of
/// the projection described by `pw`, with multiplicity, by tracking one
/// lifted path per distinct image point of `U` toward a random slice
/// through `point`.
pub fn membership_test(
    pw: &PseudoWitnessSet,
    point: &[Complex64],
    rng: &mut Rng,
    opts: &TrackOptions,
) -> Result<MembershipReport> {
    if point.len() != pw.proj.len() {
        return Err(CoreError::DimensionMismatch {
            expected: pw.proj.len(),
            got: point.len(),
        });
    }
    let mut warnings: Vec<String> = Vec::new();
    for attempt in 0..3 {
        let report = membership_once(pw, point, rng, opts, &mut warnings)?;
        match report {
            Some(r) => {
                let mut r = r;
                r.warnings.append(&mut warnings);
                return Ok(r);
            }
            None if attempt < 2 => {
                warnings.push("singular path before classification; fresh slice".into());
            }
            None => break,
        }
    }
    Err(CoreError::Numerical(
        "membership paths stayed unclassifiable after 3 slices".into(),
    ))
}

fn membership_once(
    pw: &PseudoWitnessSet,
    point: &[Complex64],
    rng: &mut Rng,
    opts: &TrackOptions,
    warnings: &mut Vec<String>,
) -> Result<Option<MembershipReport>> {
    let nv = pw.system.num_vars;
    let slice_p = LinearSlice::random(pw.proj.len(), pw.image_dim, Some(point), rng)?;
    let fixed = pw.fixed_system()?;
    let from = pw.widened_image_slice();
    let to = widen_slice(&slice_p, nv, &pw.proj);

    let rep_idx = pw.lifts_one_per_image();
    let starts: Vec<Vec<Complex64>> = rep_idx
        .iter()
        .map(|&i| pw.points.points[i].clone())
        .collect();
    let results = solver::move_slice(&fixed, &from, &starts, &to, None, rng, opts)?;

    let mut evidence = Vec::with_capacity(results.len());
    let mut limits: Vec<Option<Vec<Complex64>>> = Vec::with_capacity(results.len());
    let mut lifts: Vec<Option<Vec<Complex64>>> = Vec::with_capacity(results.len());
    let mut unclassifiable = 0usize;
    for r in &results {
        let limit = r.projected_limit(&pw.proj);
        let lift = lift_limit(&fixed, &pw.proj, point, r);
        let ev = classify_limit(&limit, lift.is_some(), point);
        if ev == PathEvidence::NoLimit {
            unclassifiable += 1;
        }
        limits.push(limit);
        lifts.push(lift);
        evidence.push(ev);
    }
    if unclassifiable > 0 {
        return Ok(None);
    }

    let multiplicity = evidence
        .iter()
        .filter(|e| matches!(e, PathEvidence::ConvergedAtTarget | PathEvidence::LimitAtTargetNoLift))
        .count();
    let in_closure = multiplicity >= 1;

    let mut constructible = if let Some(w) = lifts
        .iter()
        .zip(&evidence)
        .find(|(_, e)| **e == PathEvidence::ConvergedAtTarget)
        .and_then(|(w, _)| w.clone())
    {
        Constructible::InJ0 { witness: w }
    } else if !in_closure {
        Constructible::NotInJ0
    } else {
        Constructible::Inconclusive
    };

    // A convergent lift over the target may live among the other lifts of
    // the same image point: escalate from one-per-image to the full fiber.
    if constructible == Constructible::Inconclusive {
        let mut extra_starts = Vec::new();
        for (k, ev) in evidence.iter().enumerate() {
            if *ev != PathEvidence::LimitAtTargetNoLift {
                continue;
            }
            let image_pt = pw.project(&starts[k]);
            for j in pw.lifts_of_image_point(&image_pt) {
                if j != rep_idx[k] {
                    extra_starts.push(pw.points.points[j].clone());
                }
            }
        }
        if !extra_starts.is_empty() {
            let extra = solver::move_slice(&fixed, &from, &extra_starts, &to, None, rng, opts)?;
            if let Some(w) = extra.iter().find_map(|r| {
                let at_target = r
                    .projected_limit(&pw.proj)
                    .map(|l| solver::rel_dist(&l, point) < LIMIT_TOL)
                    .unwrap_or(false);
                if at_target {
                    lift_limit(&fixed, &pw.proj, point, r)
                } else {
                    None
                }
            }) {
                constructible = Constructible::InJ0 { witness: w };
            } else {
                warnings.push(
                    "all lifts over the target diverge: point is in the closure minus the \
                     constructible set, or its fiber has excess dimension"
                        .into(),
                );
            }
        }
    }

    let limiting_projections = {
        let items: Vec<(Vec<Complex64>, f64)> = limits
            .into_iter()
            .flatten()
            .map(|l| (l, 0.0))
            .collect();
        solver::dedup_points(items, DEDUP_TOL).0
    };

    Ok(Some(MembershipReport {
        in_closure,
        multiplicity,
        constructible,
        paths_tracked: results.len(),
        limiting_projections,
        evidence,
        warnings: Vec::new(),
    }))
}

/// Reduce membership in the constructible join to the curve case: slice the
/// image to a curve through `point`, build the curve's pseudowitness points
/// by a total-degree solve, and move the image row onto `point`. On a curve
/// the convergent-lift criterion decides constructible membership exactly.
pub fn curve_section_membership(
    setup: &ProjectionSetup,
    image_dim: usize,
    point: &[Complex64],
    rng: &mut Rng,
    opts: &TrackOptions,
) -> Result<MembershipReport> {
    if image_dim < 1 {
        return Err(CoreError::Precondition("image must have dimension >= 1".into()));
    }
    let nv = setup.system.num_vars;
    let fiber_dim = setup.dim_total - image_dim;

    let section = LinearSlice::random(point.len(), image_dim - 1, Some(point), rng)?;
    let sys_sec = setup
        .system
        .appended(&widen_slice(&section, nv, &setup.proj).rows_as_polys(nv, None))?;

    let image_row = LinearSlice::random(point.len(), 1, None, rng)?;
    let fiber_rows = LinearSlice::random(nv, fiber_dim, None, rng)?;
    let u_slice = combined_slice(&image_row, &fiber_rows, nv, &setup.proj);
    let solve_sys = solver::square_up(&sys_sec, nv - u_slice.codim(), rng)?
        .appended(&u_slice.rows_as_polys(nv, None))?;
    let sols = solver::total_degree_solve(&solve_sys, rng, opts)?;
    let full = sys_sec.appended(&u_slice.rows_as_polys(nv, None))?;
    let kept: Vec<Vec<Complex64>> = sols
        .points
        .into_iter()
        .filter(|p| {
            full.residual(p)
                .map(|r| r < solver::RESIDUAL_GATE)
                .unwrap_or(false)
        })
        .collect();
    if kept.is_empty() {
        // every piece of the restricted incidence maps to the point itself
        return Err(CoreError::EmptyWitness);
    }

    // deform the generic image row onto a general row through the point
    let target_row = LinearSlice::random(point.len(), 1, Some(point), rng)?;
    let fixed = sys_sec.appended(&fiber_rows.rows_as_polys(nv, None))?;
    let from = widen_slice(&image_row, nv, &setup.proj);
    let to = widen_slice(&target_row, nv, &setup.proj);
    let results = solver::move_slice(&fixed, &from, &kept, &to, None, rng, opts)?;

    let mut evidence = Vec::new();
    let mut limits = Vec::new();
    let mut lifts: Vec<Option<Vec<Complex64>>> = Vec::new();
    for r in &results {
        let limit = r.projected_limit(&setup.proj);
        let lift = lift_limit(&fixed, &setup.proj, point, r);
        evidence.push(classify_limit(&limit, lift.is_some(), point));
        lifts.push(lift);
        if let Some(l) = limit {
            limits.push((l, 0.0));
        }
    }

    let witness = lifts
        .iter()
        .zip(&evidence)
        .find(|(_, e)| **e == PathEvidence::ConvergedAtTarget)
        .and_then(|(w, _)| w.clone());
    let in_j0 = witness.is_some();

    // multiplicity counts distinct image points whose path limits at the
    // target; lifts of the same image point share one projected path
    let mut hit_sources: Vec<Vec<Complex64>> = Vec::new();
    for (start, ev) in kept.iter().zip(&evidence) {
        let hit = matches!(
            ev,
            PathEvidence::ConvergedAtTarget | PathEvidence::LimitAtTargetNoLift
        );
        if !hit {
            continue;
        }
        let src: Vec<Complex64> = setup.proj.iter().map(|&i| start[i]).collect();
        if !hit_sources
            .iter()
            .any(|s| solver::rel_dist(s, &src) < DEDUP_TOL)
        {
            hit_sources.push(src);
        }
    }
    let multiplicity = hit_sources.len().max(usize::from(in_j0));

    Ok(MembershipReport {
        in_closure: multiplicity >= 1,
        multiplicity,
        constructible: match witness {
            Some(w) => Constructible::InJ0 { witness: w },
            None => Constructible::NotInJ0,
        },
        paths_tracked: results.len(),
        limiting_projections: solver::dedup_points(limits, DEDUP_TOL).0,
        evidence,
        warnings: Vec::new(),
    })
}

/// Curve-section membership for a join, computing the image dimension
/// internally and falling back to the fiber cascade when the section
/// carries no pseudowitness points.
pub fn join_curve_section_membership(
    join: &AbstractJoin,
    point: &[Complex64],
    rng: &mut Rng,
    opts: &TrackOptions,
) -> Result<MembershipReport> {
    let rep = image_dimension(join, rng, opts)?;
    match curve_section_membership(&join.setup(), rep.dim_image, point, rng, opts) {
        Err(CoreError::EmptyWitness) => {
            let fd = fiber_decomposition(join, point, rng, opts)?;
            let constructible = match fd.components.first() {
                Some(c) if !c.witness_points.is_empty() => Constructible::InJ0 {
                    witness: c.witness_points.points[0].clone(),
                },
                _ => Constructible::NotInJ0,
            };
            Ok(MembershipReport {
                in_closure: fd.nonempty,
                multiplicity: usize::from(fd.nonempty),
                constructible,
                paths_tracked: 0,
                limiting_projections: Vec::new(),
                evidence: Vec::new(),
                warnings: vec!["curve section degenerate; report from fiber evidence".into()],
            })
        }
        other => other,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FiberComponent {
    pub dim: usize,
    pub deg: usize,
    pub witness_points: SolutionSet,
}

#[derive(Debug, Clone, Serialize)]
pub struct FiberDecomposition {
    pub components: Vec<FiberComponent>,
    pub nonempty: bool,
    /// `(points tracked, points on the fiber)` per cascade stage.
    pub stage_counts: Vec<(usize, usize)>,
    pub warnings: Vec<String>,
}

/// All decompositions of `point`: a witness set of each piece of the fiber
/// over it, obtained by a cascade that swaps the generic slice rows of a
/// witness set of the incidence variety for general rows through the fiber,
/// one at a time.
pub fn fiber_decomposition(
    join: &AbstractJoin,
    point: &[Complex64],
    rng: &mut Rng,
    opts: &TrackOptions,
) -> Result<FiberDecomposition> {
    let nv = join.system.num_vars;
    let ambient = join.ambient_dim;
    if point.len() != ambient {
        return Err(CoreError::DimensionMismatch {
            expected: ambient,
            got: point.len(),
        });
    }
    let w = witness_set(&join.system, join.dim_total, rng, opts)?;
    let stages = ambient.min(join.dim_total);
    let m_rows = LinearSlice::random(ambient, stages, Some(point), rng)?;

    let mut warnings = Vec::new();
    let mut stage_counts = Vec::new();
    let mut components: Vec<FiberComponent> = Vec::new();
    let mut current = w.points.points.clone();

    let generic_rows = &w.slice;
    let slice_at = |swapped: usize| -> LinearSlice {
        // rows [m_1 .. m_swapped, l_{swapped+1} .. l_dim]
        let mut rows = Vec::with_capacity(join.dim_total);
        let mut offs = Vec::with_capacity(join.dim_total);
        for i in 0..swapped {
            let wide = widen_slice(
                &LinearSlice::from_rows(
                    vec![m_rows.coeff_matrix[i].clone()],
                    vec![m_rows.offset[i]],
                    m_rows.seed,
                ),
                nv,
                &join.proj(),
            );
            rows.push(wide.coeff_matrix[0].clone());
            offs.push(wide.offset[0]);
        }
        for i in swapped..join.dim_total {
            rows.push(generic_rows.coeff_matrix[i].clone());
            offs.push(generic_rows.offset[i]);
        }
        LinearSlice::from_rows(rows, offs, generic_rows.seed)
    };

    for stage in 0..stages {
        if current.is_empty() {
            break;
        }
        let from = slice_at(stage);
        let to = slice_at(stage + 1);
        let results = solver::move_slice_union(&join.system, &from, &current, &to, None, rng, opts)?;
        let full = join.system.appended(&to.rows_as_polys(nv, None))?;
        let sols = solver::collect_solutions(&full, results, rng.seed(), opts)?;

        let mut on_fiber: Vec<(Vec<Complex64>, f64)> = Vec::new();
        let mut off_fiber: Vec<Vec<Complex64>> = Vec::new();
        for (p, r) in sols.points.into_iter().zip(sols.residuals) {
            let image: Vec<Complex64> = p[..ambient].to_vec();
            if solver::rel_dist(&image, point) < ON_FIBER_TOL {
                on_fiber.push((p, r));
            } else {
                off_fiber.push(p);
            }
        }

        let dim = join.dim_total - (stage + 1);
        let mut group = on_fiber;
        {
            // re-certify the stage group by an independent solve on a fresh
            // slice (trace-certified when positive-dimensional): tracked
            // cascades can lose points to an unlucky inherited slice, and
            // an empty tracked group still needs independent confirmation
            let m_prefix: Vec<crate::algebra::Polynomial> = (0..stage + 1)
                .flat_map(|i| {
                    widen_slice(
                        &LinearSlice::from_rows(
                            vec![m_rows.coeff_matrix[i].clone()],
                            vec![m_rows.offset[i]],
                            m_rows.seed,
                        ),
                        nv,
                        &join.proj(),
                    )
                    .rows_as_polys(nv, None)
                })
                .collect();
            match join
                .system
                .appended(&m_prefix)
                .and_then(|fixed| witness_set(&fixed, dim, rng, opts))
            {
                Ok(ws) => {
                    let refreshed: Vec<(Vec<Complex64>, f64)> = ws
                        .points
                        .points
                        .into_iter()
                        .zip(ws.points.residuals)
                        .filter(|(p, _)| {
                            let image: Vec<Complex64> = p[..ambient].to_vec();
                            solver::rel_dist(&image, point) < ON_FIBER_TOL
                        })
                        .collect();
                    if refreshed.len() != group.len() {
                        warnings.push(format!(
                            "stage {} fiber group re-certified: {} tracked vs {} on a fresh slice",
                            stage + 1,
                            group.len(),
                            refreshed.len()
                        ));
                    }
                    group = refreshed;
                }
                Err(CoreError::EmptyWitness) => {
                    if !group.is_empty() {
                        warnings.push(format!(
                            "stage {} re-certification found no points; keeping tracked group",
                            stage + 1
                        ));
                    }
                }
                Err(e) => warnings.push(format!("fiber re-certification failed: {e}")),
            }
        }
        stage_counts.push((group.len() + off_fiber.len(), group.len()));

        if !group.is_empty() {
            // every fiber witness point must reconstruct the target
            let mut ok_points: Vec<(Vec<Complex64>, f64)> = Vec::new();
            for (p, r) in group {
                match join.reconstruction_residual(&p) {
                    Ok(res) if res < LIMIT_TOL => ok_points.push((p, r)),
                    _ => warnings.push("fiber point failed reconstruction check".into()),
                }
            }
            if !ok_points.is_empty() {
                let (points, residuals) = solver::dedup_points(ok_points, DEDUP_TOL);
                let deg = points.len();
                components.push(FiberComponent {
                    dim,
                    deg,
                    witness_points: SolutionSet {
                        points,
                        residuals,
                        dedup_tol: DEDUP_TOL,
                        seed: rng.seed(),
                    },
                });
            }
        }
        current = off_fiber;
    }

    if components.is_empty() && stage_counts.iter().all(|&(tot, _)| tot == 0) {
        return Err(CoreError::EmptyFiber(
            "all cascade paths were lost before any stage completed".into(),
        ));
    }

    // split positive-dimensional groups into monodromy orbits
    let mut refined_components = Vec::new();
    for comp in components {
        if comp.dim == 0 || comp.deg == 1 {
            refined_components.push(comp);
            continue;
        }
        match split_fiber_component(join, point, &m_rows, &w, &comp, rng, opts) {
            Ok(mut parts) => refined_components.append(&mut parts),
            Err(e) => {
                warnings.push(format!("component grouping fell back to one group: {e}"));
                refined_components.push(comp);
            }
        }
    }

    Ok(FiberDecomposition {
        nonempty: !refined_components.is_empty(),
        components: refined_components,
        stage_counts,
        warnings,
    })
}

/// Partition a fiber witness superset into monodromy orbits of the
/// surviving generic rows. Orbits approximate irreducible components.
fn split_fiber_component(
    join: &AbstractJoin,
    point: &[Complex64],
    m_rows: &LinearSlice,
    w: &crate::varieties::WitnessSet,
    comp: &FiberComponent,
    rng: &mut Rng,
    opts: &TrackOptions,
) -> Result<Vec<FiberComponent>> {
    let nv = join.system.num_vars;
    let stages = join.ambient_dim.min(join.dim_total);
    let fixed = join
        .system
        .appended(&widen_slice(m_rows, nv, &join.proj()).rows_as_polys(nv, None))?;
    let surviving = LinearSlice::from_rows(
        w.slice.coeff_matrix[stages..].to_vec(),
        w.slice.offset[stages..].to_vec(),
        w.slice.seed,
    );
    let _ = point;

    let pts = &comp.witness_points.points;
    let n = pts.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }

    for _ in 0..8 {
        let away = LinearSlice::random(nv, surviving.codim(), None, rng)?;
        let out = solver::move_slice(&fixed, &surviving, pts, &away, None, rng, opts)?;
        let mid: Vec<Vec<Complex64>> = out.iter().map(|r| r.endpoint.clone()).collect();
        if out.iter().any(|r| !r.converged()) {
            continue;
        }
        let back = solver::move_slice(&fixed, &away, &mid, &surviving, None, rng, opts)?;
        for (i, r) in back.iter().enumerate() {
            if !r.converged() {
                continue;
            }
            if let Some(j) = pts
                .iter()
                .position(|p| solver::rel_dist(p, &r.endpoint) < DEDUP_TOL)
            {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }

    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    Ok(groups
        .into_values()
        .map(|idx| {
            let points: Vec<Vec<Complex64>> = idx.iter().map(|&i| pts[i].clone()).collect();
            let residuals: Vec<f64> = idx
                .iter()
                .map(|&i| comp.witness_points.residuals[i])
                .collect();
            FiberComponent {
                dim: comp.dim,
                deg: points.len(),
                witness_points: SolutionSet {
                    points,
                    residuals,
                    dedup_tol: DEDUP_TOL,
                    seed: comp.witness_points.seed,
                },
            }
        })
        .collect())
}

/// Border rank of a point: the least `r` whose join contains it. Joins are
/// supplied in ascending rank order; a filling join contains everything.
pub fn border_rank(
    joins: &[&AbstractJoin],
    point: &[Complex64],
    rng: &mut Rng,
    opts: &TrackOptions,
) -> Result<(usize, Vec<MembershipReport>)> {
    let mut reports = Vec::new();
    for (i, join) in joins.iter().enumerate() {
        let rep = image_dimension(join, rng, opts)?;
        if rep.dim_image == join.ambient_dim {
            reports.push(MembershipReport {
                in_closure: true,
                multiplicity: 1,
                constructible: Constructible::Inconclusive,
                paths_tracked: 0,
                limiting_projections: Vec::new(),
                evidence: Vec::new(),
                warnings: vec!["join fills the ambient space".into()],
            });
            return Ok((i + 1, reports));
        }
        let pw = crate::varieties::join_pseudowitness(
            join,
            rng,
            crate::varieties::PwMethod::FromWitness,
            opts,
        )?;
        let report = membership_test(&pw, point, rng, opts)?;
        let found = report.in_closure;
        reports.push(report);
        if found {
            return Ok((i + 1, reports));
        }
    }
    Err(CoreError::Numerical(
        "point not contained in any supplied join".into(),
    ))
}
