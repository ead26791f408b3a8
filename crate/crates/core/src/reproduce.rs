//! End-to-end reproduction pipelines for the worked examples, shared by the
//! command-line `reproduce` subcommand and the acceptance suite. Each
//! pipeline checks its own pinned reference values and reports what it
//! found.

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{LinearSlice, Rng};
use crate::error::{CoreError, Result};
use crate::generic::{
    decompose_generic, decomposition_monodromy, dedup_decompositions, fiber_count_transport,
    same_decomposition, decompose_via_projection, ProjectionOutcome,
};
use crate::membership::{
    fiber_decomposition, join_curve_section_membership, membership_test, Constructible,
};
use crate::models;
use crate::realness::{
    gradient_descent_homotopy, parameter_homotopy_center, solve_critical, solve_critical_complex,
    CriticalMethod, CriticalProblem,
};
use crate::solver::{self, rel_dist, MonodromyOptions};
use crate::tracker::{self, TrackOptions};
use crate::varieties::{
    image_dimension, join_pseudowitness, pseudowitness_set, witness_set, PwMethod,
};
use crate::boundary::{boundary_confirm, join_boundary_candidates, BoundaryResult};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Greedy multiset matching of real 2-vectors at an absolute tolerance.
fn match_form_multiset(found: &[Vec<f64>], expected: &[Vec<f64>], tol: f64) -> bool {
    if found.len() != expected.len() {
        return false;
    }
    let mut pool: Vec<&Vec<f64>> = expected.iter().collect();
    'outer: for f in found {
        for i in 0..pool.len() {
            if f.iter().zip(pool[i]).all(|(a, b)| (a - b).abs() < tol) {
                pool.remove(i);
                continue 'outer;
            }
        }
        return false;
    }
    true
}

// ---------------------------------------------------------------------------
// witness / pseudowitness basics
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct SpaceCurveReport {
    pub witness_count: usize,
    pub real_point_matched: bool,
    pub image_deg: usize,
    pub fiber_deg: usize,
    pub dim_image: usize,
    pub endpoints_matched: bool,
    pub ok: bool,
}

/// Witness set of the space curve and the pseudowitness set of its plane
/// projection, checked against the exposition slices and points.
pub fn space_curve_pipeline(seed: u64, opts: &TrackOptions) -> Result<SpaceCurveReport> {
    let mut rng = Rng::from_seed(seed);
    let f = models::space_curve_system();

    let w = witness_set(&f, 1, &mut rng, opts)?;
    let witness_count = w.deg;

    // exposition slice: contains the real point (-0.299, 0.089, 0.027)
    let slice_l = models::space_curve_slice_l();
    let sys_l = f.appended(&slice_l.rows_as_polys(3, None))?;
    let on_l = solver::total_degree_solve(&sys_l, &mut rng, opts)?;
    let reference = [c(-0.299, 0.0), c(0.089, 0.0), c(0.027, 0.0)];
    let real_point_matched = on_l.points.iter().any(|p| {
        p.iter()
            .zip(&reference)
            .all(|(a, b)| (a - b).norm() < 2e-3)
    });

    // move the exposition slice onto the structured slice 2x1 - 3x2 + 1
    let slice_m = crate::varieties::widen_slice(&models::space_curve_slice_m(), 3, &[0, 1]);
    let moved = solver::move_slice(&f, &slice_l, &on_l.points, &slice_m, None, &mut rng, opts)?;
    let converged: Vec<Vec<Complex64>> = moved
        .iter()
        .filter(|r| r.converged())
        .map(|r| r.endpoint.clone())
        .collect();
    let expected_u = [
        [c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)],
        [c(-1.0 / 3.0, 0.0), c(1.0 / 9.0, 0.0), c(1.0 / 27.0, 0.0)],
    ];
    let endpoints_matched = converged.len() == 2
        && expected_u.iter().all(|e| {
            converged
                .iter()
                .any(|p| p.iter().zip(e).all(|(a, b)| (a - b).norm() < 1e-6))
        });

    // pseudowitness set with random slices
    let setup = crate::varieties::ProjectionSetup {
        system: f.clone(),
        proj: vec![0, 1],
        dim_total: 1,
    };
    let dim_image = crate::varieties::image_dimension_at(&setup, &converged[0])?;
    let pw = pseudowitness_set(&setup, dim_image, &[], &mut rng, PwMethod::FromWitness, opts)?;

    let ok = witness_count == 3
        && real_point_matched
        && endpoints_matched
        && pw.image_deg == 2
        && pw.fiber_deg == 1
        && dim_image == 1;
    Ok(SpaceCurveReport {
        witness_count,
        real_point_matched,
        image_deg: pw.image_deg,
        fiber_deg: pw.fiber_deg,
        dim_image,
        endpoints_matched,
        ok,
    })
}

// ---------------------------------------------------------------------------
// Veronese degrees
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct VeroneseDegreesReport {
    pub degrees: Vec<(usize, u32, usize)>,
    pub sigma2_quartic_deg: usize,
    pub ok: bool,
}

/// Degrees of Veronese cones (`d^n`) and of the second secant of the
/// rational normal quartic curve (3).
pub fn veronese_degrees(seed: u64, opts: &TrackOptions) -> Result<VeroneseDegreesReport> {
    let mut rng = Rng::from_seed(seed);
    let mut degrees = Vec::new();
    for (n, d) in [(1usize, 3u32), (1, 4), (2, 2)] {
        let join = models::veronese_join(n, d, 1, &mut rng)?;
        let pw = join_pseudowitness(&join, &mut rng, PwMethod::FromWitness, opts)?;
        degrees.push((n, d, pw.image_deg));
    }
    let join = models::veronese_join(1, 4, 2, &mut rng)?;
    let pw = join_pseudowitness(
        &join,
        &mut rng,
        PwMethod::Monodromy { stall_limit: 10 },
        opts,
    )?;
    let sigma2_quartic_deg = pw.image_deg;
    let ok = degrees == vec![(1, 3, 3), (1, 4, 4), (2, 2, 4)] && sigma2_quartic_deg == 3;
    Ok(VeroneseDegreesReport {
        degrees,
        sigma2_quartic_deg,
        ok,
    })
}

// ---------------------------------------------------------------------------
// the x^2 y pipeline
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct X2yCascadeReport {
    pub stage_counts: Vec<(usize, usize)>,
    pub component_dims_degs: Vec<(usize, usize)>,
    pub exclusion_counts: (usize, usize),
    pub ok: bool,
}

/// Rank-3 decompositions of `x^2 y`: the cascade yields a 45-point witness
/// set of an irreducible surface, and degenerating two more rows onto
/// `c = 0` (36 then 0 points) rules out rank 2.
pub fn x2y_fiber_cascade(seed: u64, opts: &TrackOptions) -> Result<X2yCascadeReport> {
    let mut rng = Rng::from_seed(seed);
    let join = models::binary_cubic_join(3, &mut rng)?;
    let point = models::x2y_point();
    let fd = fiber_decomposition(&join, &point, &mut rng, opts)?;

    let component_dims_degs: Vec<(usize, usize)> =
        fd.components.iter().map(|g| (g.dim, g.deg)).collect();

    // degenerate the two surviving generic rows onto rows through c = 0
    let comp = fd
        .components
        .first()
        .ok_or_else(|| CoreError::EmptyFiber("no fiber component".into()))?;
    let nv = join.system.num_vars;
    let fiber_points = &comp.witness_points.points;

    // fixed fiber conditions: rows through the point in image coordinates
    let stages = join.ambient_dim.min(join.dim_total);
    let m_rows = LinearSlice::random(join.ambient_dim, stages, Some(&point), &mut rng)?;
    // rebuild the witness rows the component points satisfy: recover the two
    // surviving generic rows by a fresh generic slice through re-solving
    // is unnecessary; instead slice the component directly
    let _ = m_rows;

    // the component is a witness set of the fiber surface: system rows +
    // image rows pinning P + its own two generic rows. Reconstruct those
    // two rows from scratch by slicing the fiber surface again.
    let fsys = join.fiber_system(&point)?;
    let fiber_dim = 2usize;
    let slice = LinearSlice::random(fsys.num_vars, fiber_dim, None, &mut rng)?;
    let sys = solver::square_up(&fsys, fsys.num_vars - fiber_dim, &mut rng)?
        .appended(&slice.rows_as_polys(fsys.num_vars, None))?;
    let sols = solver::total_degree_solve(&sys, &mut rng, opts)?;
    let full = fsys.appended(&slice.rows_as_polys(fsys.num_vars, None))?;
    let witness_pts: Vec<Vec<Complex64>> = sols
        .points
        .into_iter()
        .filter(|p| full.residual(p).map(|r| r < solver::RESIDUAL_GATE).unwrap_or(false))
        .collect();
    let _ = (nv, fiber_points);

    // c-block rows vanishing at c = 0 (the last parameter block)
    let c_block: Vec<usize> = join
        .fiber_blocks()
        .last()
        .map(|b| b.clone().collect())
        .unwrap_or_default();
    let mut stage_a_rows = Vec::new();
    let mut stage_a_offs = Vec::new();
    let mut coeffs = vec![c(0.0, 0.0); fsys.num_vars];
    for &v in &c_block {
        coeffs[v] = rng.unit_complex();
    }
    stage_a_rows.push(coeffs.clone());
    stage_a_offs.push(c(0.0, 0.0));
    stage_a_rows.push(slice.coeff_matrix[1].clone());
    stage_a_offs.push(slice.offset[1]);
    let to_a = LinearSlice::from_rows(stage_a_rows, stage_a_offs, rng.seed());

    let res_a = solver::move_slice_union(&fsys, &slice, &witness_pts, &to_a, None, &mut rng, opts)?;
    let full_a = fsys.appended(&to_a.rows_as_polys(fsys.num_vars, None))?;
    let stage_a = solver::collect_solutions(&full_a, res_a, rng.seed(), opts)?;
    let count_a = stage_a.len();

    let mut coeffs2 = vec![c(0.0, 0.0); fsys.num_vars];
    for &v in &c_block {
        coeffs2[v] = rng.unit_complex();
    }
    let mut stage_b_rows = to_a.coeff_matrix.clone();
    let mut stage_b_offs = to_a.offset.clone();
    stage_b_rows[1] = coeffs2;
    stage_b_offs[1] = c(0.0, 0.0);
    let to_b = LinearSlice::from_rows(stage_b_rows, stage_b_offs, rng.seed());
    let res_b = solver::move_slice_union(&fsys, &to_a, &stage_a.points, &to_b, None, &mut rng, opts)?;
    let full_b = fsys.appended(&to_b.rows_as_polys(fsys.num_vars, None))?;
    let stage_b = solver::collect_solutions(&full_b, res_b, rng.seed(), opts)?;
    let count_b = stage_b.len();

    let ok = fd.stage_counts == vec![(57, 0), (57, 0), (57, 0), (45, 45)]
        && component_dims_degs == vec![(2, 45)]
        && count_a == 36
        && count_b == 0;
    Ok(X2yCascadeReport {
        stage_counts: fd.stage_counts,
        component_dims_degs,
        exclusion_counts: (count_a, count_b),
        ok,
    })
}

#[derive(Debug, Serialize)]
pub struct X2yBorderRankReport {
    pub rank1_paths: usize,
    pub rank1_member: bool,
    pub border_rank: usize,
    pub single_path_escaped: bool,
    pub rank: usize,
    pub real_rank: usize,
    pub ok: bool,
}

/// Border rank, rank, and real rank of `x^2 y`.
pub fn x2y_border_rank(seed: u64, opts: &TrackOptions) -> Result<X2yBorderRankReport> {
    let mut rng = Rng::from_seed(seed);
    let point = models::x2y_point();

    // rank 1: three paths, none of which limits on the point
    let join1 = models::binary_cubic_join(1, &mut rng)?;
    let pw1 = join_pseudowitness(&join1, &mut rng, PwMethod::FromWitness, opts)?;
    let rep1 = membership_test(&pw1, &point, &mut rng, opts)?;

    // rank 2 fills the ambient space; the witnessed path from the stated
    // start decomposition escapes, so the point is border rank 2 and the
    // constructible status falls to the divergence dichotomy
    let join2 = models::binary_cubic_join(2, &mut rng)?;
    let rep2 = image_dimension(&join2, &mut rng, opts)?;
    let border_rank = if !rep1.in_closure && rep2.dim_image == 4 {
        2
    } else {
        0
    };

    let start = models::x2y_rank2_start();
    let p_star = join2.image_of_fiber_point(&start)?;
    let h = crate::algebra::Homotopy::segment(
        &join2.fiber_system(&p_star)?,
        &join2.fiber_system(&point)?,
        rng.unit_complex(),
    )?;
    let path = tracker::track(&h, &start, opts)?;
    let single_path_escaped = !path.converged()
        && path
            .endpoint
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
            > 10.0;

    // rank 3 via the cascade, rank > 2 via the c = 0 exclusion
    let cascade = x2y_fiber_cascade(seed ^ 0x9e37, opts)?;
    let rank = if cascade.ok { 3 } else { 0 };

    // real rank 3 via the critical run
    let real = x2y_real_rank(seed ^ 0x79b9, opts)?;
    let real_rank = if real.ok { 3 } else { 0 };

    let ok = !rep1.in_closure
        && rep1.paths_tracked == 3
        && border_rank == 2
        && single_path_escaped
        && rank == 3
        && real_rank == 3;
    Ok(X2yBorderRankReport {
        rank1_paths: rep1.paths_tracked,
        rank1_member: rep1.in_closure,
        border_rank,
        single_path_escaped,
        rank,
        real_rank,
        ok,
    })
}

#[derive(Debug, Serialize)]
pub struct X2yRealRankReport {
    pub fiber_degree: usize,
    pub count_x: usize,
    pub count_x_lambda: usize,
    pub num_real: usize,
    pub min_dist_matched: bool,
    pub gradient_descent_matched: bool,
    pub ok: bool,
}

/// The critical-point run certifying that the real rank of `x^2 y` is 3.
pub fn x2y_real_rank(seed: u64, opts: &TrackOptions) -> Result<X2yRealRankReport> {
    let mut rng = Rng::from_seed(seed);
    let join = models::binary_cubic_join(3, &mut rng)?;
    let f = join.fiber_system(&models::x2y_point())?;

    // witness points of the fiber surface seed the monodromy
    let w = witness_set(&f, 2, &mut rng, opts)?;
    let fiber_degree = w.deg;

    let problem = CriticalProblem::new(&f, None, &mut rng)?;
    let center = models::x2y_real_center();
    let set = solve_critical(
        &problem,
        &center,
        &mut rng,
        CriticalMethod::MonodromySeeded {
            variety_points: w.points.points.iter().take(3).cloned().collect(),
            stall_limit: 12,
        },
        opts,
    )?;

    let expected_forms: Vec<Vec<f64>> = models::x2y_min_dist_forms()
        .iter()
        .map(|f| f.to_vec())
        .collect();
    let nearest = set.nearest_real();
    let min_dist_matched = nearest
        .map(|p| {
            let found: Vec<Vec<f64>> = (0..3)
                .map(|b| vec![p.x[2 * b].re, p.x[2 * b + 1].re])
                .collect();
            match_form_multiset(&found, &expected_forms, 2e-3)
        })
        .unwrap_or(false);

    let gd = gradient_descent_homotopy(&problem, &center, opts);
    let gradient_descent_matched = match (&gd, nearest) {
        (Ok((path, pt)), Some(near)) => {
            path.converged() && pt.is_real && rel_dist(&pt.x, &near.x) < 1e-6
        }
        _ => false,
    };

    let ok = fiber_degree == 45
        && set.count_x == 234
        && set.num_real() == 8
        && min_dist_matched
        && gradient_descent_matched
        && (set.count_x - set.num_real()) % 2 == 0;
    Ok(X2yRealRankReport {
        fiber_degree,
        count_x: set.count_x,
        count_x_lambda: set.count_x_lambda,
        num_real: set.num_real(),
        min_dist_matched,
        gradient_descent_matched,
        ok,
    })
}

// ---------------------------------------------------------------------------
// boundary of border rank 2
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct TangentialBoundaryReport {
    pub candidate_count: usize,
    pub confirmed_count: usize,
    pub reference_point_matched: bool,
    pub max_quartic_residual: f64,
    pub interpolated_degree: usize,
    pub accounting_closes: bool,
    pub ok: bool,
}

/// The codimension-one boundary of border-rank-2 binary cubics on the
/// exposition line: four points of the tangential quartic.
pub fn tangential_boundary(seed: u64, opts: &TrackOptions) -> Result<TangentialBoundaryReport> {
    let mut rng = Rng::from_seed(seed);
    let join = models::binomial_cubic_join(2, &mut rng)?;
    let section = models::tangential_section();
    let result = join_boundary_candidates(&join, &mut rng, opts, Some(section))?;
    let result = boundary_confirm(&join, result, &mut rng, opts)?;
    summarize_tangential(&result)
}

fn summarize_tangential(result: &BoundaryResult) -> Result<TangentialBoundaryReport> {
    let reference = [c(2.308, 0.0), c(-3.410, 0.0), c(3.794, 0.0), c(-0.103, 0.0)];
    let reference_point_matched = result.confirmed.iter().any(|&i| {
        result.candidates[i]
            .iter()
            .zip(&reference)
            .all(|(a, b)| (a - b).norm() < 2e-3)
    });
    let mut max_quartic_residual = 0.0f64;
    for &i in &result.confirmed {
        max_quartic_residual =
            max_quartic_residual.max(models::tangential_quartic_residual(&result.candidates[i]));
    }
    let interpolated_degree = result.confirmed.len();
    let accounted: usize = result
        .component_groups
        .iter()
        .map(|g| g.paths_per_point * g.deg)
        .sum();
    let confirmed_path_total: usize = result
        .confirmed
        .iter()
        .map(|&i| result.path_counts[i])
        .sum();
    let accounting_closes = accounted == confirmed_path_total;

    let ok = result.confirmed.len() == 4
        && reference_point_matched
        && max_quartic_residual < 1e-6
        && interpolated_degree == 4
        && accounting_closes;
    Ok(TangentialBoundaryReport {
        candidate_count: result.candidates.len(),
        confirmed_count: result.confirmed.len(),
        reference_point_matched,
        max_quartic_residual,
        interpolated_degree,
        accounting_closes,
        ok,
    })
}

// ---------------------------------------------------------------------------
// multiplicity on the circle and the cusp
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct MultiplicityReport {
    pub circle_paths: usize,
    pub circle_multiplicity: usize,
    pub circle_constructible_inconclusive: bool,
    pub cusp_paths: usize,
    pub cusp_multiplicity: usize,
    pub ok: bool,
}

/// Multiplicity 1 at `(0, -1)` on the circle image and 2 at the cusp of
/// `V(x^3 - y^2)`, both by path counting.
pub fn circle_cusp_multiplicity(seed: u64, opts: &TrackOptions) -> Result<MultiplicityReport> {
    let mut rng = Rng::from_seed(seed);

    let circle = models::circle_incidence();
    let w = witness_set(&circle.system, 1, &mut rng, opts)?;
    let pw_circle = pseudowitness_set(
        &circle,
        1,
        &w.points.points,
        &mut rng,
        PwMethod::FromWitness,
        opts,
    )?;
    let p1 = [c(0.0, 0.0), c(-1.0, 0.0)];
    let rep_circle = membership_test(&pw_circle, &p1, &mut rng, opts)?;

    let cusp = models::cusp_incidence();
    let pw_cusp = pseudowitness_set(&cusp, 1, &[], &mut rng, PwMethod::FromWitness, opts)?;
    let p2 = [c(0.0, 0.0), c(0.0, 0.0)];
    let rep_cusp = membership_test(&pw_cusp, &p2, &mut rng, opts)?;

    let ok = rep_circle.in_closure
        && rep_circle.multiplicity == 1
        && rep_circle.paths_tracked == 2
        && rep_circle.constructible == Constructible::Inconclusive
        && rep_cusp.in_closure
        && rep_cusp.multiplicity == 2
        && rep_cusp.paths_tracked == 3
        && rep_cusp.constructible == Constructible::Inconclusive;
    Ok(MultiplicityReport {
        circle_paths: rep_circle.paths_tracked,
        circle_multiplicity: rep_circle.multiplicity,
        circle_constructible_inconclusive: rep_circle.constructible
            == Constructible::Inconclusive,
        cusp_paths: rep_cusp.paths_tracked,
        cusp_multiplicity: rep_cusp.multiplicity,
        ok,
    })
}

// ---------------------------------------------------------------------------
// defectivity table
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct WaringTableReport {
    pub rows: Vec<(usize, usize, usize, usize, usize)>,
    pub mismatches: usize,
    pub ok: bool,
}

/// Expected and actual dimensions of the quadric-square / fourth-power
/// joins over the reference grid.
pub fn waring_dimension_table(seed: u64, opts: &TrackOptions) -> Result<WaringTableReport> {
    let mut rng = Rng::from_seed(seed);
    let mut rows = Vec::new();
    let mut mismatches = 0usize;
    for (r, s, expected_ref, actual_ref) in models::waring_rs_table() {
        let join = models::waring_rs_join(r, s, &mut rng)?;
        let rep = image_dimension(&join, &mut rng, opts)?;
        if rep.expected != expected_ref || rep.dim_image != actual_ref {
            mismatches += 1;
        }
        rows.push((r, s, rep.expected, rep.dim_image, actual_ref));
    }
    Ok(WaringTableReport {
        mismatches,
        ok: mismatches == 0,
        rows,
    })
}

// ---------------------------------------------------------------------------
// complex multiplication
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct ComplexMultReport {
    pub sigma1_deg: usize,
    pub rank1_member: bool,
    pub rank2_residual: f64,
    pub critical_count: usize,
    pub critical_real: usize,
    pub ok: bool,
}

/// The complex-multiplication tensor: degree 6 of the rank-one Segre cone,
/// failure of rank 1, a rank-2 decomposition by one path, and 18 nonreal
/// critical points certifying real rank 3.
pub fn complex_multiplication(seed: u64, opts: &TrackOptions) -> Result<ComplexMultReport> {
    let mut rng = Rng::from_seed(seed);
    let t = models::complex_mult_tensor();

    let join1 = models::segre222_join(1, &mut rng)?;
    let pw1 = join_pseudowitness(
        &join1,
        &mut rng,
        PwMethod::Monodromy { stall_limit: 10 },
        opts,
    )?;
    let rep1 = membership_test(&pw1, &t, &mut rng, opts)?;

    let join2 = models::segre222_join(2, &mut rng)?;
    let dec = decompose_generic(&join2, &t, &mut rng, opts)?;

    // the full bilinear-identity variety is the rank-2 fiber of the tensor
    let f = join2.fiber_system(&t)?;
    let problem = CriticalProblem::new(&f, None, &mut rng)?;
    let dec_point: Vec<Complex64> = dec.parameters.concat();
    let conj_point: Vec<Complex64> = dec_point.iter().map(|z| z.conj()).collect();
    let center: Vec<f64> = rng.real_vec(12, -1.0, 1.0);
    let set = solve_critical(
        &problem,
        &center,
        &mut rng,
        CriticalMethod::MonodromySeeded {
            variety_points: vec![dec_point, conj_point],
            stall_limit: 10,
        },
        opts,
    )?;

    let ok = pw1.image_deg == 6
        && !rep1.in_closure
        && rep1.paths_tracked == 6
        && dec.reconstruction_residual < 1e-8
        && set.count_x == 18
        && set.num_real() == 0;
    Ok(ComplexMultReport {
        sigma1_deg: pw1.image_deg,
        rank1_member: rep1.in_closure,
        rank2_residual: dec.reconstruction_residual,
        critical_count: set.count_x,
        critical_real: set.num_real(),
        ok,
    })
}

// ---------------------------------------------------------------------------
// generic decompositions
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct OsculatingReport {
    pub fermat_residual: f64,
    pub fermat_l2_matched: bool,
    pub witch_residual: f64,
    pub witch_q_matched: bool,
    pub ok: bool,
}

/// Single-path decompositions `C = Q L_1 + L_2^3` of the Fermat cubic and
/// the witch-of-Agnesi cubic.
pub fn osculating_decompositions(seed: u64, opts: &TrackOptions) -> Result<OsculatingReport> {
    let mut rng = Rng::from_seed(seed);
    let join = models::osculating_cubic_join(&mut rng)?;
    let start = models::osculating_start();
    let p_star = join.image_of_fiber_point(&start)?;

    let run = |target: &[Complex64], rng: &mut Rng| -> Result<Vec<Complex64>> {
        let h = crate::algebra::Homotopy::segment(
            &join.fiber_system(&p_star)?,
            &join.fiber_system(target)?,
            rng.unit_complex(),
        )?;
        let r = tracker::track(&h, &start, opts)?;
        if !r.converged() {
            return Err(CoreError::GenericFailure { attempts: 1 });
        }
        Ok(r.endpoint)
    };

    let c1 = models::fermat_cubic();
    let end1 = run(&c1, &mut rng)?;
    let img1 = join.image_of_fiber_point(&end1)?;
    let fermat_residual = rel_dist(&img1, &c1);
    // L2 = x0 + x1 - (1 -/+ i sqrt 3) x2 / 2 (either conjugate)
    let a21 = end1[8];
    let a22 = end1[9];
    let s3 = 3.0f64.sqrt();
    let fermat_l2_matched = (a21 - c(1.0, 0.0)).norm() < 1e-3
        && ((a22 - c(-0.5, s3 / 2.0)).norm() < 1e-3 || (a22 - c(-0.5, -s3 / 2.0)).norm() < 1e-3);

    let c2 = models::witch_of_agnesi_cubic();
    let end2 = run(&c2, &mut rng)?;
    let img2 = join.image_of_fiber_point(&end2)?;
    let witch_residual = rel_dist(&img2, &c2);
    // Q = -9 x0^2 - 9/4 x1^2 in the quadric block (q0, q1, ..., q5)
    let q = &end2[..6];
    let witch_q_matched = (q[0] - c(-9.0, 0.0)).norm() < 2e-3
        && (q[3] - c(-2.25, 0.0)).norm() < 2e-3
        && q[1].norm() < 1e-3
        && q[2].norm() < 1e-3
        && q[4].norm() < 1e-3
        && q[5].norm() < 1e-3;

    let ok = fermat_residual < 1e-8
        && witch_residual < 1e-8
        && fermat_l2_matched
        && witch_q_matched;
    Ok(OsculatingReport {
        fermat_residual,
        fermat_l2_matched,
        witch_residual,
        witch_q_matched,
        ok,
    })
}

#[derive(Debug, Serialize)]
pub struct QuinticReport {
    pub residual: f64,
    pub summands: usize,
    pub matched_reference: bool,
    pub max_coeff_error: f64,
    pub ok: bool,
}

/// One-path decomposition of the reference ternary quintic into seven
/// fifth powers; the decomposition is unique, so the summands must match.
pub fn quintic_decomposition(seed: u64, opts: &TrackOptions) -> Result<QuinticReport> {
    let mut rng = Rng::from_seed(seed);
    let join = models::veronese_join(2, 5, 7, &mut rng)?;
    let t = models::ternary_quintic();
    let dec = decompose_generic(&join, &t, &mut rng, opts)?;

    let fiber_point: Vec<Complex64> = dec.parameters.concat();
    let img = join.image_of_fiber_point(&fiber_point)?;
    let max_coeff_error = img
        .iter()
        .zip(&t)
        .map(|(a, b)| (a - b).norm() / (1.0 + b.norm()))
        .fold(0.0, f64::max);

    let v5 = crate::varieties::Parameterization::veronese(2, 5);
    let expected_fiber: Vec<Complex64> = models::ternary_quintic_forms()
        .iter()
        .flat_map(|f| vec![c(f[0], 0.0), c(f[1], 0.0), c(f[2], 0.0)])
        .collect();
    let _ = v5;
    let matched_reference = same_decomposition(&join, &fiber_point, &expected_fiber, 1e-6)?;

    let ok = dec.reconstruction_residual < 1e-8
        && dec.parameters.len() == 7
        && max_coeff_error < 1e-6
        && matched_reference;
    Ok(QuinticReport {
        residual: dec.reconstruction_residual,
        summands: dec.parameters.len(),
        matched_reference,
        max_coeff_error,
        ok,
    })
}

#[derive(Debug, Serialize)]
pub struct SepticFiberReport {
    pub fiber_classes: usize,
    pub transported: usize,
    pub contains_reference: bool,
    pub routes_agree: bool,
    pub ok: bool,
}

/// Fiber transport on the degree-7 example: the fiber over a generic point
/// carries five decomposition classes; transported to the reference form,
/// they include its constructed decomposition, and two transport routes
/// agree as sets.
pub fn septic_fiber(seed: u64, opts: &TrackOptions) -> Result<SepticFiberReport> {
    let mut rng = Rng::from_seed(seed);
    let join = models::veronese_join(2, 7, 12, &mut rng)?;
    let (t, reference_fiber) = models::septic_with_decomposition();

    // generic center with a known random decomposition
    let z0: Vec<Complex64> = rng.unit_complex_vec(36);
    let p_star = join.image_of_fiber_point(&z0)?;
    let fiber = decomposition_monodromy(
        &join,
        &p_star,
        &[z0],
        &mut rng,
        MonodromyOptions {
            stall_limit: 10,
            max_loops: 60,
            max_points: 40,
        },
        opts,
    )?;
    let fiber_classes = fiber.len();

    let (route_a, _) =
        fiber_count_transport(&join, &p_star, &t, &fiber, None, &mut rng, opts)?;
    let via = {
        let s = join.sample_point(&mut rng, opts)?;
        s[..join.ambient_dim].to_vec()
    };
    let (route_b, _) =
        fiber_count_transport(&join, &p_star, &t, &fiber, Some(&via), &mut rng, opts)?;

    let reps_a = dedup_decompositions(&join, &route_a.points, 1e-6)?;
    let reps_b = dedup_decompositions(&join, &route_b.points, 1e-6)?;
    let mut routes_agree = reps_a.len() == reps_b.len();
    if routes_agree {
        'outer: for a in &reps_a {
            for b in &reps_b {
                if same_decomposition(&join, a, b, 1e-5)? {
                    continue 'outer;
                }
            }
            routes_agree = false;
            break;
        }
    }

    let mut contains_reference = false;
    for p in &reps_a {
        if same_decomposition(&join, p, &reference_fiber, 1e-4)? {
            contains_reference = true;
            break;
        }
    }

    let ok = fiber_classes >= 5 && reps_a.len() >= 5 && contains_reference && routes_agree;
    Ok(SepticFiberReport {
        fiber_classes,
        transported: reps_a.len(),
        contains_reference,
        routes_agree,
        ok,
    })
}

// ---------------------------------------------------------------------------
// center parameter homotopy and projection Newton paths
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct CircleCenterReport {
    pub generic_count: usize,
    pub limits_found: bool,
    pub one_path_projected_only: bool,
    pub ok: bool,
}

/// Critical points of the punctured-circle image from a generic complex
/// center, transported to `(0, -2)`: limits `(0, 1)` and `(0, -1)`, the
/// latter reachable only as a projected limit.
pub fn circle_center_homotopy(seed: u64, opts: &TrackOptions) -> Result<CircleCenterReport> {
    let mut rng = Rng::from_seed(seed);
    let setup = models::circle_incidence();
    let problem = CriticalProblem::new(&setup.system, Some(vec![0, 1]), &mut rng)?;

    let q: Vec<Complex64> = rng.unit_complex_vec(2);
    let generic = solve_critical_complex(&problem, &q, &mut rng, opts)?;
    let target = [c(0.0, 0.0), c(-2.0, 0.0)];
    let moved = parameter_homotopy_center(&problem, &generic, &target, &mut rng, opts)?;

    let limit_hit = |x: f64, y: f64| -> bool {
        moved
            .points
            .iter()
            .any(|p| (p.x[0] - c(x, 0.0)).norm() < 1e-4 && (p.x[1] - c(y, 0.0)).norm() < 1e-4)
    };
    let limits_found = limit_hit(0.0, 1.0) && limit_hit(0.0, -1.0);
    let one_path_projected_only = moved.points.iter().filter(|p| p.projected_only).count() == 1;

    let ok = generic.count_x == 2 && limits_found && one_path_projected_only;
    Ok(CircleCenterReport {
        generic_count: generic.count_x,
        limits_found,
        one_path_projected_only,
        ok,
    })
}

#[derive(Debug, Serialize)]
pub struct CircleProjectionReport {
    pub limit_matched: bool,
    pub real_path: bool,
    pub compactified_matched: bool,
    pub ok: bool,
}

/// Seeded Newton homotopy in a linear projection of the circle: the real
/// path from `(20/101, -99/101, 10)` limits onto `(0, -1)` while the fiber
/// coordinate escapes; the compactified formulation converges with
/// `s = [0, 1]`.
pub fn circle_projection_newton(seed: u64, opts: &TrackOptions) -> Result<CircleProjectionReport> {
    let mut rng = Rng::from_seed(seed);
    let setup = models::circle_incidence();
    let psi = vec![vec![c(2.0, 0.0), c(3.0, 0.0)]];
    let seed_point = vec![c(20.0 / 101.0, 0.0), c(-99.0 / 101.0, 0.0), c(10.0, 0.0)];
    let target = [c(0.0, 0.0), c(-1.0, 0.0)];

    let outcome =
        decompose_via_projection(&setup, &psi, &seed_point, &target, &mut rng, opts, true)?;
    let (limit_matched, real_path) = match outcome {
        ProjectionOutcome::Limit { image, is_real } => {
            (rel_dist(&image, &target) < 1e-5, is_real)
        }
        ProjectionOutcome::Decomposed(_) => (false, false),
    };

    // compactified fiber coordinate: s = [s0 : s1] with a real chart
    let compactified_matched = {
        use crate::algebra::{Polynomial, PolynomialSystem, Term};
        let one = c(1.0, 0.0);
        // x (s0^2 + s1^2) - 2 s0 s1 ; y (s0^2 + s1^2) - (s0^2 - s1^2)
        let f1 = Polynomial::from_terms(vec![
            Term::new(one, vec![1, 0, 2, 0]),
            Term::new(one, vec![1, 0, 0, 2]),
            Term::new(c(-2.0, 0.0), vec![0, 0, 1, 1]),
        ]);
        let f2 = Polynomial::from_terms(vec![
            Term::new(one, vec![0, 1, 2, 0]),
            Term::new(one, vec![0, 1, 0, 2]),
            Term::new(c(-1.0, 0.0), vec![0, 0, 2, 0]),
            Term::new(one, vec![0, 0, 0, 2]),
        ]);
        let chart_c = [rng.real_in(0.3, 1.0), rng.real_in(0.3, 1.0)];
        let chart = Polynomial::linear(
            &[
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(chart_c[0], 0.0),
                c(chart_c[1], 0.0),
            ],
            one,
        );
        let psi_row = |v: Complex64| {
            Polynomial::linear(&[c(2.0, 0.0), c(3.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)], v)
        };
        let psi_seed = c(2.0 * 20.0 / 101.0 + 3.0 * (-99.0 / 101.0), 0.0);
        let psi_target = c(-3.0, 0.0);
        let sys = |v: Complex64| {
            PolynomialSystem::new(4, vec![f1.clone(), f2.clone(), chart.clone(), psi_row(v)])
                .unwrap()
        };
        let h = crate::algebra::Homotopy::segment(&sys(psi_seed), &sys(psi_target), one).unwrap();
        let sigma = 1.0 / (chart_c[0] + 10.0 * chart_c[1]);
        let start = vec![
            c(20.0 / 101.0, 0.0),
            c(-99.0 / 101.0, 0.0),
            c(sigma, 0.0),
            c(10.0 * sigma, 0.0),
        ];
        match tracker::track(&h, &start, opts) {
            Ok(r) if r.converged() => {
                (r.endpoint[0]).norm() < 1e-6
                    && (r.endpoint[1] + one).norm() < 1e-6
                    && r.endpoint[2].norm() / r.endpoint[3].norm() < 1e-6
            }
            _ => false,
        }
    };

    let ok = limit_matched && real_path && compactified_matched;
    Ok(CircleProjectionReport {
        limit_matched,
        real_path,
        compactified_matched,
        ok,
    })
}

// ---------------------------------------------------------------------------
// implicit curve joins
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct CurveJoinReport {
    pub j12_witness_deg: usize,
    pub j12_image_deg: usize,
    pub j12_fiber_deg: usize,
    pub j11_image_deg: usize,
    pub j11_fiber_deg: usize,
    pub ok: bool,
}

/// Joins of complete-intersection curve cones in `C^5`: both incidence
/// varieties have degree 64; the join of two distinct curves is a degree-64
/// hypersurface while the secant of one curve has degree 16 with fibers of
/// two points.
pub fn curve_join_degrees(seed: u64, opts: &TrackOptions) -> Result<CurveJoinReport> {
    let mut rng = Rng::from_seed(seed);
    let c1 = models::random_quadric_curve(&mut rng);
    let c2 = models::random_quadric_curve(&mut rng);

    let j12 = models::implicit_curve_join(&c1, &c2, &mut rng)?;
    let w12 = witness_set(&j12.system, 4, &mut rng, opts)?;
    let pw12 = join_pseudowitness(&j12, &mut rng, PwMethod::FromWitness, opts)?;

    let j11 = models::implicit_curve_join(&c1, &c1, &mut rng)?;
    let pw11 = join_pseudowitness(&j11, &mut rng, PwMethod::FromWitness, opts)?;

    let ok = w12.deg == 64
        && pw12.image_deg == 64
        && pw12.fiber_deg == 1
        && pw11.image_deg == 16
        && pw11.fiber_deg == 2;
    Ok(CurveJoinReport {
        j12_witness_deg: w12.deg,
        j12_image_deg: pw12.image_deg,
        j12_fiber_deg: pw12.fiber_deg,
        j11_image_deg: pw11.image_deg,
        j11_fiber_deg: pw11.fiber_deg,
        ok,
    })
}

// ---------------------------------------------------------------------------
// rank-one cubic membership (the sigma_1 test of the x^2 y story)
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct Rank1CubicReport {
    pub image_deg: usize,
    pub fiber_deg: usize,
    pub member: bool,
    pub paths: usize,
    pub ok: bool,
}

pub fn rank1_cubic_membership(seed: u64, opts: &TrackOptions) -> Result<Rank1CubicReport> {
    let mut rng = Rng::from_seed(seed);
    let join = models::binary_cubic_join(1, &mut rng)?;
    let pw = join_pseudowitness(&join, &mut rng, PwMethod::FromWitness, opts)?;
    let rep = membership_test(&pw, &models::x2y_point(), &mut rng, opts)?;
    let ok = pw.image_deg == 3 && pw.fiber_deg == 3 && !rep.in_closure && rep.paths_tracked == 3;
    Ok(Rank1CubicReport {
        image_deg: pw.image_deg,
        fiber_deg: pw.fiber_deg,
        member: rep.in_closure,
        paths: rep.paths_tracked,
        ok,
    })
}

// ---------------------------------------------------------------------------
// curve-section membership for the rank-one cubic at Q = (1,3,3,1)
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct CurveSectionReport {
    pub x2y_not_in_j0: bool,
    pub q_in_j0: bool,
    pub q_reconstructs: bool,
    pub ok: bool,
}

/// The curve-case reduction on the rank-2 join: `x^2 y` has no rank-2
/// decomposition, while the rank-one cubic `(x + y)^3` does.
pub fn rank2_curve_sections(seed: u64, opts: &TrackOptions) -> Result<CurveSectionReport> {
    let mut rng = Rng::from_seed(seed);
    let join = models::binary_cubic_join(2, &mut rng)?;

    let rep_x2y = join_curve_section_membership(&join, &models::x2y_point(), &mut rng, opts)?;
    let x2y_not_in_j0 = rep_x2y.constructible == Constructible::NotInJ0;

    let q = [c(1.0, 0.0), c(3.0, 0.0), c(3.0, 0.0), c(1.0, 0.0)];
    let rep_q = join_curve_section_membership(&join, &q, &mut rng, opts)?;
    let (q_in_j0, q_reconstructs) = match &rep_q.constructible {
        Constructible::InJ0 { witness } => {
            let res = join.reconstruction_residual(witness)?;
            (true, res < 1e-6)
        }
        _ => (false, false),
    };

    let ok = x2y_not_in_j0 && q_in_j0 && q_reconstructs;
    Ok(CurveSectionReport {
        x2y_not_in_j0,
        q_in_j0,
        q_reconstructs,
        ok,
    })
}

// ---------------------------------------------------------------------------
// dispatcher
// ---------------------------------------------------------------------------

pub const DESK_IDS: &[&str] = &[
    "ex11-witness",
    "ex13-curves",
    "ex21-multiplicity",
    "ex22-curve-section",
    "ex33-boundary",
    "ex42-circle-center",
    "ex51-projection",
    "x2y-rank1",
    "x2y-fiber",
    "x2y-realrank",
    "x2y-borderrank",
    "cmult",
    "veronese-degrees",
    "waring-table",
    "quintic-t",
    "septic-fiber",
    "osculating-c1c2",
];

pub const EXTENDED_IDS: &[&str] = &[
    "cw-tensor",
    "nu3p4-borderrank",
    "hadamard110",
    "lowrank75",
    "skew-grassmann",
    "matmul-zeros",
];

#[derive(Debug, Serialize)]
pub struct PipelineReport {
    pub id: String,
    pub ok: bool,
    pub details: Value,
}

fn wrap<T: Serialize>(id: &str, ok: bool, value: T) -> PipelineReport {
    PipelineReport {
        id: id.to_string(),
        ok,
        details: serde_json::to_value(value).unwrap_or(Value::Null),
    }
}

/// Run one named example end-to-end and report pinned-value checks.
pub fn run(id: &str, seed: u64, opts: &TrackOptions) -> Result<PipelineReport> {
    match id {
        "ex11-witness" => {
            let r = space_curve_pipeline(seed, opts)?;
            Ok(wrap(id, r.ok, r))
        }
        "ex13-curves" => {
            let r = curve_join_degrees(seed, opts)?;
            Ok(wrap(id, r.ok, r))
        }
        "ex21-multiplicity" => {
            let r = circle_cusp_multiplicity(seed, opts)?;
            Ok(wrap(id, r.ok, r))
        }
        "ex22-curve-section" => {
            let r = rank2_curve_sections(seed, opts)?;
            Ok(wrap(id, r.ok, r))
        }
        "ex33-boundary" => {
            let r = tangential_boundary(seed, opts)?;
            Ok(wrap(id, r.ok, r))
        }
        "ex42-circle-center" => {
            let r = circle_center_homotopy(seed, opts)?;
            Ok(wrap(id, r.ok, r))
        }
        "ex51-projection" => {
            let r = circle_projection_newton(seed, opts)?;
            Ok(wrap(id, r.ok, r))
        }
        "x2y-rank1" => {
            let r = rank1_cubic_membership(seed, opts)?;
            Ok(wrap(id, r.ok, r))
        }
        "x2y-fiber" => {
            let r = x2y_fiber_cascade(seed, opts)?;
            Ok(wrap(id, r.ok, r))
        }
        "x2y-realrank" => {
            let r = x2y_real_rank(seed, opts)?;
            Ok(wrap(id, r.ok, r))
        }
        "x2y-borderrank" => {
            let r = x2y_border_rank(seed, opts)?;
            Ok(wrap(id, r.ok, r))
        }
        "cmult" => {
            let r = complex_multiplication(seed, opts)?;
            Ok(wrap(id, r.ok, r))
        }
        "veronese-degrees" => {
            let r = veronese_degrees(seed, opts)?;
            Ok(wrap(id, r.ok, r))
        }
        "waring-table" => {
            let r = waring_dimension_table(seed, opts)?;
            Ok(wrap(id, r.ok, r))
        }
        "quintic-t" => {
            let r = quintic_decomposition(seed, opts)?;
            Ok(wrap(id, r.ok, r))
        }
        "septic-fiber" => {
            let r = septic_fiber(seed, opts)?;
            Ok(wrap(id, r.ok, r))
        }
        "osculating-c1c2" => {
            let r = osculating_decompositions(seed, opts)?;
            Ok(wrap(id, r.ok, r))
        }
        other if EXTENDED_IDS.contains(&other) => run_extended(other, seed, opts),
        other => Err(CoreError::Input(format!("unknown example id: {other}"))),
    }
}

/// Long-running reproductions; hours of compute, never part of the checked
/// suite.
fn run_extended(id: &str, seed: u64, opts: &TrackOptions) -> Result<PipelineReport> {
    let mut rng = Rng::from_seed(seed);
    match id {
        // sigma_3 of C^3 x C^3 x C^3: dimension 21, degree 414 (monodromy)
        "cw-tensor" => {
            let join = crate::varieties::build_abstract_join(
                (0..3)
                    .map(|_| {
                        crate::varieties::Factor::Param(
                            crate::varieties::Parameterization::segre(vec![3, 3, 3]),
                        )
                    })
                    .collect(),
                crate::varieties::JoinMode::AffineCone,
                &mut rng,
            )?;
            let pw = join_pseudowitness(
                &join,
                &mut rng,
                PwMethod::Monodromy { stall_limit: 15 },
                opts,
            )?;
            Ok(wrap(
                id,
                pw.image_deg == 414,
                json!({"image_deg": pw.image_deg, "image_dim": pw.image_dim}),
            ))
        }
        // sigma_4 and sigma_5 of nu_3(P^4): degrees 36,505 and 24,047
        "nu3p4-borderrank" => {
            let join4 = models::veronese_join(4, 3, 4, &mut rng)?;
            let pw4 = join_pseudowitness(
                &join4,
                &mut rng,
                PwMethod::Monodromy { stall_limit: 20 },
                opts,
            )?;
            Ok(wrap(
                id,
                pw4.image_deg == 36_505,
                json!({"sigma4_deg": pw4.image_deg}),
            ))
        }
        // the degree-110 Hadamard-product hypersurface
        "hadamard110" => {
            let join = hadamard_sigma2_squared(&mut rng)?;
            let pw = join_pseudowitness(
                &join,
                &mut rng,
                PwMethod::Monodromy { stall_limit: 15 },
                opts,
            )?;
            Ok(wrap(
                id,
                pw.image_deg == 110,
                json!({"image_deg": pw.image_deg}),
            ))
        }
        // sigma_2 of nu_4(P^2): degree 75, then 195 distance critical points
        "lowrank75" => {
            let join = models::veronese_join(2, 4, 2, &mut rng)?;
            let pw = join_pseudowitness(
                &join,
                &mut rng,
                PwMethod::Monodromy { stall_limit: 14 },
                opts,
            )?;
            Ok(wrap(
                id,
                pw.image_deg == 75,
                json!({"image_deg": pw.image_deg}),
            ))
        }
        // sigma_3(G(3,7)) is a degree-7 hypersurface; sigma_2 has degree 735
        "skew-grassmann" => {
            let join3 = crate::varieties::build_abstract_join(
                (0..3)
                    .map(|_| {
                        crate::varieties::Factor::Param(
                            crate::varieties::Parameterization::wedge(3, 7),
                        )
                    })
                    .collect(),
                crate::varieties::JoinMode::AffineCone,
                &mut rng,
            )?;
            let rep = image_dimension(&join3, &mut rng, opts)?;
            let pw = join_pseudowitness(
                &join3,
                &mut rng,
                PwMethod::Monodromy { stall_limit: 12 },
                opts,
            )?;
            Ok(wrap(
                id,
                rep.defect == 1 && pw.image_deg == 7,
                json!({"sigma3_defect": rep.defect, "sigma3_deg": pw.image_deg}),
            ))
        }
        // matrix multiplication with zeros: defectivity of sigma_5(C3xC4xC4)
        "matmul-zeros" => {
            let join5 = crate::varieties::build_abstract_join(
                (0..5)
                    .map(|_| {
                        crate::varieties::Factor::Param(
                            crate::varieties::Parameterization::segre(vec![3, 4, 4]),
                        )
                    })
                    .collect(),
                crate::varieties::JoinMode::AffineCone,
                &mut rng,
            )?;
            let rep = image_dimension(&join5, &mut rng, opts)?;
            Ok(wrap(
                id,
                rep.dim_image == 44,
                json!({"sigma5_dim": rep.dim_image, "expected": rep.expected}),
            ))
        }
        other => Err(CoreError::Input(format!("unknown extended id: {other}"))),
    }
}

/// The Hadamard product of two rank-2 Segre fourfold tensors: a custom
/// 64-parameter map onto `C^16`.
fn hadamard_sigma2_squared(rng: &mut Rng) -> Result<crate::varieties::AbstractJoin> {
    use crate::algebra::{Polynomial, Term};
    // parameters: two summands of (a,b,c,d) blocks and two of (e,f,g,h)
    let n_x = 0usize;
    let total = 32;
    let _ = n_x;
    let term =
        |vars: [usize; 4]| -> Polynomial {
            let mut e = vec![0u32; total];
            for v in vars {
                e[v] += 1;
            }
            Polynomial::from_terms(vec![Term::new(c(1.0, 0.0), e)])
        };
    // first factor's coordinates p_ijkl = (sum_s a_si b_sj c_sk d_sl) *
    // (sum_r e_ri f_rj g_rk h_rl)
    let block = |g: usize, v: usize, s: usize, i: usize| -> usize {
        // group g in {0 (abcd), 1 (efgh)}, vector v in {a..d}, summand s, entry i
        g * 16 + s * 8 + v * 2 + i
    };
    let mut polys = Vec::with_capacity(16);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    let mut p = Polynomial::zero();
                    for s in 0..2 {
                        for r in 0..2 {
                            p = p.add(&term([block(0, 0, s, i), block(0, 1, s, j), block(0, 2, s, k), block(0, 3, s, l)])
                                .mul(&term([block(1, 0, r, i), block(1, 1, r, j), block(1, 2, r, k), block(1, 3, r, l)])));
                        }
                    }
                    polys.push(p);
                }
            }
        }
    }
    let map = crate::algebra::PolynomialSystem::new(total, polys)?;
    crate::varieties::build_abstract_join(
        vec![crate::varieties::Factor::Param(
            crate::varieties::Parameterization::custom(map),
        )],
        crate::varieties::JoinMode::AffineCone,
        rng,
    )
}
