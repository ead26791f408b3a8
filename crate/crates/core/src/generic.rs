//! Single-path decomposition of generic points.
//!
//! When a join fills its ambient space, one Newton-homotopy path from a
//! random decomposition suffices. When it does not, a generic linear
//! projection onto a space the image does fill, seeded from a nearby
//! decomposition, gives a local method that also certifies real upper
//! bounds: a real seed on a real system with a smooth path has a real
//! endpoint.

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{LinearSlice, Polynomial, PolynomialSystem, Rng};
use crate::error::{CoreError, Result};
use crate::solver::{self, SolutionSet, DEDUP_TOL};
use crate::tracker::{self, TrackOptions};
use crate::varieties::{image_dimension, widen_slice, AbstractJoin, ProjectionSetup};

const RECON_TOL: f64 = 1e-6;
const REALITY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub enum SeedProvenance {
    RandomStart,
    UserSeed(String),
    FiberPoint,
}

/// One decomposition of a point as a sum of factor elements.
#[derive(Debug, Clone, Serialize)]
pub struct Decomposition {
    /// Per-factor parameter (or implicit-block) vectors.
    #[serde(with = "crate::algebra::poly::cpair_mat")]
    pub parameters: Vec<Vec<Complex64>>,
    pub reconstruction_residual: f64,
    pub is_real: bool,
    pub seed_provenance: SeedProvenance,
}

fn is_real_vec(v: &[Complex64]) -> bool {
    v.iter().all(|z| z.im.abs() < REALITY_TOL * (1.0 + z.re.abs()))
}

/// Per-row power-of-two scale factors normalizing the largest coefficient
/// magnitude of each row pair toward one. Row scaling leaves solution sets
/// untouched but conditions Newton steps on badly scaled targets.
fn common_row_scales(a: &PolynomialSystem, b: &PolynomialSystem) -> Vec<f64> {
    a.polys
        .iter()
        .zip(&b.polys)
        .map(|(pa, pb)| {
            let m = pa
                .terms
                .iter()
                .chain(&pb.terms)
                .map(|t| t.coeff.norm())
                .fold(0.0f64, f64::max);
            if m > 0.0 {
                (-m.log2().round()).exp2()
            } else {
                1.0
            }
        })
        .collect()
}

fn scale_rows(sys: &PolynomialSystem, scales: &[f64]) -> PolynomialSystem {
    let polys = sys
        .polys
        .iter()
        .zip(scales)
        .map(|(p, &s)| p.scale(Complex64::new(s, 0.0)))
        .collect();
    PolynomialSystem::new(sys.num_vars, polys).expect("shape preserved")
}

fn fiber_point_to_decomposition(
    join: &AbstractJoin,
    target: &[Complex64],
    fiber_point: &[Complex64],
    provenance: SeedProvenance,
) -> Result<Decomposition> {
    let image = join.image_of_fiber_point(fiber_point)?;
    let np: f64 = target.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let diff: f64 = image
        .iter()
        .zip(target)
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let residual = diff / (1.0 + np);
    let parameters: Vec<Vec<Complex64>> = join
        .fiber_blocks()
        .into_iter()
        .map(|b| fiber_point[b].to_vec())
        .collect();
    let is_real = parameters.iter().all(|p| is_real_vec(p));
    Ok(Decomposition {
        parameters,
        reconstruction_residual: residual,
        is_real,
        seed_provenance: provenance,
    })
}

/// Random fiber-space start: parameters on the unit circle for
/// parameterized factors, witness points for implicit ones.
fn random_fiber_start(
    join: &AbstractJoin,
    rng: &mut Rng,
    opts: &TrackOptions,
) -> Result<Vec<Complex64>> {
    let full = join.sample_point(rng, opts)?;
    Ok(full[join.ambient_dim..].to_vec())
}

/// Decompose a point of a join that fills its ambient space by tracking
/// one Newton-homotopy path from a random decomposition, slicing any
/// positive-dimensional fiber directions through the start.
pub fn decompose_generic(
    join: &AbstractJoin,
    point: &[Complex64],
    rng: &mut Rng,
    opts: &TrackOptions,
) -> Result<Decomposition> {
    let rep = image_dimension(join, rng, opts)?;
    if rep.dim_image != join.ambient_dim {
        return Err(CoreError::Precondition(format!(
            "join image has dimension {} < ambient {}; use decompose_via_projection",
            rep.dim_image, join.ambient_dim
        )));
    }
    let fiber_vars = join.layout.total - join.ambient_dim;
    let fiber_dim = join.dim_total - join.ambient_dim;

    for _ in 0..3 {
        let start = random_fiber_start(join, rng, opts)?;
        let p_star = join.image_of_fiber_point(&start)?;
        let slice = LinearSlice::random(fiber_vars, fiber_dim, Some(&start), rng)?;
        let fs_start = join.fiber_system(&p_star)?;
        let fs_target = join.fiber_system(point)?;
        let scales = common_row_scales(&fs_start, &fs_target);
        let start_sys =
            scale_rows(&fs_start, &scales).appended(&slice.rows_as_polys(fiber_vars, None))?;
        let target_sys =
            scale_rows(&fs_target, &scales).appended(&slice.rows_as_polys(fiber_vars, None))?;
        let h = crate::algebra::Homotopy::segment(&start_sys, &target_sys, rng.unit_complex())?;
        let r = tracker::track(&h, &start, opts)?;
        if r.converged() {
            let d = fiber_point_to_decomposition(join, point, &r.endpoint, SeedProvenance::RandomStart)?;
            if d.reconstruction_residual < RECON_TOL {
                return Ok(d);
            }
        }
    }
    Err(CoreError::GenericFailure { attempts: 3 })
}

#[derive(Debug, Clone, Serialize)]
pub enum ProjectionOutcome {
    /// The path converged in the incidence variety onto a decomposition of
    /// the target itself.
    Decomposed(Decomposition),
    /// The path escaped the incidence variety but its image converged to
    /// the target: an upper bound on border rank, real when the path data
    /// were real.
    Limit {
        #[serde(with = "crate::algebra::poly::cpair_vec")]
        image: Vec<Complex64>,
        is_real: bool,
    },
}

/// Track one Newton homotopy in the coordinates of a generic projection
/// `psi` of the image, starting from a known incidence point, toward the
/// target's projection.
///
/// With `real_path = true` the homotopy is left unscaled (no gamma factor)
/// so real data keep the whole path real. `psi` rows act on the image
/// coordinates of `setup.proj`.
pub fn decompose_via_projection(
    setup: &ProjectionSetup,
    psi: &[Vec<Complex64>],
    seed_point: &[Complex64],
    target_image: &[Complex64],
    rng: &mut Rng,
    opts: &TrackOptions,
    real_path: bool,
) -> Result<ProjectionOutcome> {
    let nv = setup.system.num_vars;
    let m = psi.len();
    if m == 0 || psi.iter().any(|row| row.len() != setup.proj.len()) {
        return Err(CoreError::Input("psi must be m x |proj|".into()));
    }
    let seed_for_slices = rng.seed();
    let psi_slice = |values: &[Complex64]| -> LinearSlice {
        widen_slice(
            &LinearSlice::from_rows(psi.to_vec(), values.to_vec(), seed_for_slices),
            nv,
            &setup.proj,
        )
    };
    let apply_psi = |image: &[Complex64]| -> Vec<Complex64> {
        psi.iter()
            .map(|row| row.iter().zip(image).map(|(a, x)| a * x).sum())
            .collect()
    };

    let seed_image: Vec<Complex64> = setup.proj.iter().map(|&i| seed_point[i]).collect();
    let start_vals = apply_psi(&seed_image);
    let target_vals = apply_psi(target_image);

    let extra = setup.dim_total - m;
    let slice = LinearSlice::random(nv, extra, Some(seed_point), rng)?;
    let f_sq = solver::square_up(&setup.system, nv - m - extra, rng)?;
    let assemble = |vals: &[Complex64]| -> Result<PolynomialSystem> {
        f_sq.appended(&psi_slice(vals).rows_as_polys(nv, None))?
            .appended(&slice.rows_as_polys(nv, None))
    };
    let start_sys = assemble(&start_vals)?;
    let target_sys = assemble(&target_vals)?;
    let gamma = if real_path {
        Complex64::new(1.0, 0.0)
    } else {
        rng.unit_complex()
    };
    let h = crate::algebra::Homotopy::segment(&start_sys, &target_sys, gamma)?;
    let r = tracker::track(&h, seed_point, opts)?;

    if r.converged() {
        let end_image: Vec<Complex64> = setup.proj.iter().map(|&i| r.endpoint[i]).collect();
        if solver::rel_dist(&end_image, target_image) < RECON_TOL {
            let d = Decomposition {
                parameters: vec![r.endpoint.clone()],
                reconstruction_residual: solver::rel_dist(&end_image, target_image),
                is_real: is_real_vec(&r.endpoint),
                seed_provenance: SeedProvenance::UserSeed("projection".into()),
            };
            return Ok(ProjectionOutcome::Decomposed(d));
        }
        // the psi-fiber of the target contains other elements
        return Err(CoreError::FiberMiss { found: r.endpoint });
    }

    match r.projected_limit(&setup.proj) {
        Some(limit) if solver::rel_dist(&limit, target_image) < RECON_TOL => {
            Ok(ProjectionOutcome::Limit {
                is_real: is_real_vec(&limit),
                image: limit,
            })
        }
        _ => Err(CoreError::NoLocalCertificate(
            "projection path neither converged nor limited onto the target".into(),
        )),
    }
}

/// Join wrapper for `decompose_via_projection` working in fiber coordinates.
/// `seed` is a fiber-space point (user-supplied decomposition of a nearby
/// point); when absent a random one is drawn.
pub fn join_decompose_via_projection(
    join: &AbstractJoin,
    point: &[Complex64],
    psi: &[Vec<Complex64>],
    seed: Option<&[Complex64]>,
    rng: &mut Rng,
    opts: &TrackOptions,
) -> Result<Decomposition> {
    let fiber_vars = join.layout.total - join.ambient_dim;
    let m = psi.len();
    let (start, provenance) = match seed {
        Some(s) => {
            if s.len() != fiber_vars {
                return Err(CoreError::DimensionMismatch {
                    expected: fiber_vars,
                    got: s.len(),
                });
            }
            (s.to_vec(), SeedProvenance::UserSeed("file".into()))
        }
        None => (random_fiber_start(join, rng, opts)?, SeedProvenance::RandomStart),
    };
    let p_seed = join.image_of_fiber_point(&start)?;
    let apply_psi = |image: &[Complex64]| -> Vec<Complex64> {
        psi.iter()
            .map(|row| row.iter().zip(image).map(|(a, x)| a * x).sum())
            .collect()
    };
    // zero-length path: the seed already decomposes the target
    if solver::rel_dist(&p_seed, point) < RECON_TOL {
        return fiber_point_to_decomposition(join, point, &start, provenance);
    }

    // rows: psi(sum phi(a)) - value, built by composing psi with the fiber
    // system's image rows
    let image_polys = {
        let fs = join.fiber_system(&vec![Complex64::new(0.0, 0.0); join.ambient_dim])?;
        fs.polys
    };
    let compose = |vals: &[Complex64]| -> Result<PolynomialSystem> {
        let rows: Vec<Polynomial> = psi
            .iter()
            .zip(vals)
            .map(|(row, &v)| {
                let mut acc = Polynomial::constant(v, fiber_vars).scale(Complex64::new(-1.0, 0.0));
                for (c, p) in row.iter().zip(&image_polys) {
                    acc = acc.add(&p.scale(*c));
                }
                acc
            })
            .collect();
        PolynomialSystem::new(fiber_vars, rows)
    };

    let extra = fiber_vars - m;
    let slice = LinearSlice::random(fiber_vars, extra, Some(&start), rng)?;
    let start_sys = compose(&apply_psi(&p_seed))?.appended(&slice.rows_as_polys(fiber_vars, None))?;
    let target_sys = compose(&apply_psi(point))?.appended(&slice.rows_as_polys(fiber_vars, None))?;
    let all_real = start.iter().all(|z| z.im.abs() < REALITY_TOL)
        && point.iter().all(|z| z.im.abs() < REALITY_TOL)
        && psi
            .iter()
            .all(|row| row.iter().all(|z| z.im.abs() < REALITY_TOL));
    let gamma = if all_real {
        Complex64::new(1.0, 0.0)
    } else {
        rng.unit_complex()
    };
    let h = crate::algebra::Homotopy::segment(&start_sys, &target_sys, gamma)?;
    let r = tracker::track(&h, &start, opts)?;
    if !r.converged() {
        return Err(CoreError::NoLocalCertificate(
            "projection path did not converge in the parameter space".into(),
        ));
    }
    let d = fiber_point_to_decomposition(join, point, &r.endpoint, provenance)?;
    if d.reconstruction_residual < RECON_TOL {
        Ok(d)
    } else {
        Err(CoreError::FiberMiss { found: r.endpoint })
    }
}

/// Populate the fiber of a filling join over `p_star` by monodromy in the
/// target point, seeded with known fiber points (e.g. the decomposition
/// `p_star` was built from). Loop targets are random points of the image.
pub fn fiber_monodromy(
    join: &AbstractJoin,
    p_star: &[Complex64],
    seeds: &[Vec<Complex64>],
    rng: &mut Rng,
    mopts: solver::MonodromyOptions,
    opts: &TrackOptions,
) -> Result<SolutionSet> {
    let base = join.fiber_system(p_star)?;
    if base.len() != base.num_vars {
        return Err(CoreError::Input(
            "fiber monodromy needs a square fiber system (filling join, zero-dimensional fibers)"
                .into(),
        ));
    }
    let join2 = join.clone();
    let topts = opts.clone();
    solver::monodromy_engine(
        &base,
        move |r: &mut Rng| {
            let sample = join2.sample_point(r, &topts)?;
            let image: Vec<Complex64> = sample[..join2.ambient_dim].to_vec();
            join2.fiber_system(&image)
        },
        seeds,
        rng,
        mopts,
        opts,
        None,
    )
}

/// Monodromy in the target point of a filling join, accumulating distinct
/// decompositions rather than raw parameter points: the parameter fiber
/// carries large summand-permutation and root-of-unity stabilizers, so the
/// stall criterion counts decomposition classes.
pub fn decomposition_monodromy(
    join: &AbstractJoin,
    p_star: &[Complex64],
    seeds: &[Vec<Complex64>],
    rng: &mut Rng,
    mopts: solver::MonodromyOptions,
    opts: &TrackOptions,
) -> Result<SolutionSet> {
    let base_raw = join.fiber_system(p_star)?;
    if base_raw.len() != base_raw.num_vars {
        return Err(CoreError::Input(
            "decomposition monodromy needs a square fiber system".into(),
        ));
    }
    let scales = common_row_scales(&base_raw, &base_raw);
    let base = scale_rows(&base_raw, &scales);
    for s in seeds {
        if base.residual(s)? > solver::RESIDUAL_GATE {
            return Err(CoreError::Precondition("seed not on the fiber".into()));
        }
    }

    let mut reps: Vec<Vec<Complex64>> = dedup_decompositions(join, seeds, RECON_TOL)?;
    let mut stall = 0usize;
    let mut loops = 0usize;
    let mut discarded = 0usize;
    while stall < mopts.stall_limit && loops < mopts.max_loops && reps.len() < mopts.max_points {
        loops += 1;
        let sample_a = join.sample_point(rng, opts)?;
        let sample_b = join.sample_point(rng, opts)?;
        let img_a: Vec<Complex64> = sample_a[..join.ambient_dim].to_vec();
        let img_b: Vec<Complex64> = sample_b[..join.ambient_dim].to_vec();
        let sys_a = scale_rows(&join.fiber_system(&img_a)?, &scales);
        let sys_b = scale_rows(&join.fiber_system(&img_b)?, &scales);
        let legs = [
            crate::algebra::Homotopy::segment(&base, &sys_a, rng.unit_complex())?,
            crate::algebra::Homotopy::segment(&sys_a, &sys_b, rng.unit_complex())?,
            crate::algebra::Homotopy::segment(&sys_b, &base, rng.unit_complex())?,
        ];
        let mut current = reps.clone();
        for leg in &legs {
            current = solver::track_batch(leg, &current, opts)
                .results
                .into_iter()
                .filter(|r| r.converged())
                .map(|r| r.endpoint)
                .collect();
            if current.is_empty() {
                break;
            }
        }
        if current.is_empty() {
            discarded += 1;
            if discarded >= 5 {
                return Err(CoreError::MonodromyStalled);
            }
            continue;
        }
        discarded = 0;
        let before = reps.len();
        for p in current {
            let rr = tracker::newton_refine(&base, &p, opts.newton_tol / 10.0);
            if rr.residual >= solver::RESIDUAL_GATE {
                continue;
            }
            let mut fresh = true;
            for r in &reps {
                if same_decomposition(join, &rr.point, r, RECON_TOL)? {
                    fresh = false;
                    break;
                }
            }
            if fresh {
                reps.push(rr.point);
            }
        }
        if reps.len() == before {
            stall += 1;
        } else {
            stall = 0;
        }
    }
    let residuals: Vec<f64> = reps
        .iter()
        .map(|p| base_raw.residual(p).unwrap_or(f64::INFINITY))
        .collect();
    Ok(SolutionSet {
        points: reps,
        residuals,
        dedup_tol: RECON_TOL,
        seed: rng.seed(),
    })
}

/// Transport a known fiber over `psi(p_star)` to the fiber over
/// `psi(point)` by one parameter homotopy per fiber element, optionally via
/// a random intermediate image point.
pub fn fiber_count_transport(
    join: &AbstractJoin,
    p_star: &[Complex64],
    point: &[Complex64],
    known_fiber: &SolutionSet,
    via: Option<&[Complex64]>,
    rng: &mut Rng,
    opts: &TrackOptions,
) -> Result<(SolutionSet, Vec<String>)> {
    let mut warnings = Vec::new();
    let mut current = known_fiber.points.clone();
    let mut stations: Vec<Vec<Complex64>> = Vec::new();
    if let Some(v) = via {
        stations.push(v.to_vec());
    }
    stations.push(point.to_vec());

    let mut from_image = p_star.to_vec();
    for station in stations {
        let fs_from = join.fiber_system(&from_image)?;
        let fs_to = join.fiber_system(&station)?;
        let scales = common_row_scales(&fs_from, &fs_to);
        let start_sys = scale_rows(&fs_from, &scales);
        let target_sys = scale_rows(&fs_to, &scales);
        let h = crate::algebra::Homotopy::segment(&start_sys, &target_sys, rng.unit_complex())?;
        let batch = solver::track_batch(&h, &current, opts);
        warnings.extend(batch.warnings);
        let lost = batch.results.iter().filter(|r| !r.converged()).count();
        if lost > 0 {
            warnings.push(format!("{lost} fiber paths were lost in transport"));
        }
        current = batch
            .results
            .into_iter()
            .filter(|r| r.converged())
            .map(|r| r.endpoint)
            .collect();
        from_image = station;
    }

    let target_sys = join.fiber_system(point)?;
    let refined: Vec<(Vec<Complex64>, f64)> = current
        .into_iter()
        .map(|p| {
            let rr = tracker::newton_refine(&target_sys, &p, opts.newton_tol / 10.0);
            (rr.point, rr.residual)
        })
        .filter(|(_, r)| *r < solver::RESIDUAL_GATE)
        .collect();
    let (points, residuals) = solver::dedup_points(refined, DEDUP_TOL);
    Ok((
        SolutionSet {
            points,
            residuals,
            dedup_tol: DEDUP_TOL,
            seed: rng.seed(),
        },
        warnings,
    ))
}

/// Two fiber-space points describe the same decomposition when their
/// summand multisets match at tolerance `tol`.
pub fn same_decomposition(
    join: &AbstractJoin,
    a: &[Complex64],
    b: &[Complex64],
    tol: f64,
) -> Result<bool> {
    let sa = join.summands(a)?;
    let mut sb = join.summands(b)?;
    if sa.len() != sb.len() {
        return Ok(false);
    }
    'outer: for s in &sa {
        for i in 0..sb.len() {
            if solver::rel_dist(s, &sb[i]) < tol {
                sb.remove(i);
                continue 'outer;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

/// Representatives of the distinct decompositions among fiber points.
pub fn dedup_decompositions(
    join: &AbstractJoin,
    points: &[Vec<Complex64>],
    tol: f64,
) -> Result<Vec<Vec<Complex64>>> {
    let mut reps: Vec<Vec<Complex64>> = Vec::new();
    for p in points {
        let mut fresh = true;
        for r in &reps {
            if same_decomposition(join, p, r, tol)? {
                fresh = false;
                break;
            }
        }
        if fresh {
            reps.push(p.clone());
        }
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::varieties::{build_abstract_join, Factor, JoinMode, Parameterization};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn generic_binary_cubic_decomposes_as_two_cubes() {
        let mut rng = Rng::from_seed(211);
        let join = build_abstract_join(
            vec![
                Factor::Param(Parameterization::veronese(1, 3)),
                Factor::Param(Parameterization::veronese(1, 3)),
            ],
            JoinMode::AffineCone,
            &mut rng,
        )
        .unwrap();
        // x^3 + y^3 -> (1, 0, 0, 1)
        let p = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        let d = decompose_generic(&join, &p, &mut rng, &TrackOptions::default()).unwrap();
        assert!(d.reconstruction_residual < 1e-8, "residual {}", d.reconstruction_residual);
        assert_eq!(d.parameters.len(), 2);
    }

    #[test]
    fn decompose_success_rate_on_random_targets() {
        let mut rng = Rng::from_seed(223);
        let join = build_abstract_join(
            vec![
                Factor::Param(Parameterization::veronese(1, 3)),
                Factor::Param(Parameterization::veronese(1, 3)),
            ],
            JoinMode::AffineCone,
            &mut rng,
        )
        .unwrap();
        let mut ok = 0;
        for _ in 0..20 {
            let p = rng.unit_complex_vec(4);
            if let Ok(d) = decompose_generic(&join, &p, &mut rng, &TrackOptions::default()) {
                if d.reconstruction_residual < 1e-6 {
                    ok += 1;
                }
            }
        }
        assert!(ok >= 19, "only {ok}/20 generic decompositions succeeded");
    }

    #[test]
    fn fiber_monodromy_and_transport_on_binary_cubics() {
        // sigma_2 of the twisted cubic: parameters 4 = ambient 4, fibers of
        // the parameterization are the 18 = 2 * 9 swap/scale combinations
        let mut rng = Rng::from_seed(227);
        let join = build_abstract_join(
            vec![
                Factor::Param(Parameterization::veronese(1, 3)),
                Factor::Param(Parameterization::veronese(1, 3)),
            ],
            JoinMode::AffineCone,
            &mut rng,
        )
        .unwrap();
        let start = random_fiber_start(&join, &mut rng, &TrackOptions::default()).unwrap();
        let p_star = join.image_of_fiber_point(&start).unwrap();
        let fiber = fiber_monodromy(
            &join,
            &p_star,
            &[start],
            &mut rng,
            solver::MonodromyOptions {
                stall_limit: 6,
                max_loops: 60,
                max_points: 50,
            },
            &TrackOptions::default(),
        )
        .unwrap();
        assert_eq!(fiber.len(), 18, "9 cube-root scalings times 2 swaps");
        // as decompositions they all coincide
        let reps = dedup_decompositions(&join, &fiber.points, 1e-6).unwrap();
        assert_eq!(reps.len(), 1);

        // transport to another generic target and back
        let target = rng.unit_complex_vec(4);
        let (moved, _w) = fiber_count_transport(
            &join,
            &p_star,
            &target,
            &fiber,
            None,
            &mut rng,
            &TrackOptions::default(),
        )
        .unwrap();
        assert_eq!(moved.len(), 18);
        for p in &moved.points {
            let img = join.image_of_fiber_point(p).unwrap();
            assert!(solver::rel_dist(&img, &target) < 1e-6);
        }
    }
}
