//! Witness points of the codimension-one boundary: the closure of the join
//! minus its constructible part.
//!
//! The image is sliced to a general curve, the fiber coordinates are
//! projectivized with a fresh homogenizing variable, and the slice
//! `{y_0 = beta}` is degenerated onto the hyperplane at infinity
//! `{y_0 = 0}`. Image projections of the surviving paths are a finite
//! superset of the boundary section; each candidate is then confirmed or
//! rejected by deciding membership in the constructible join.

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{LinearSlice, Polynomial, PolynomialSystem, Rng, Term};
use crate::error::{CoreError, Result};
use crate::membership::{curve_section_membership, fiber_decomposition, Constructible};
use crate::solver::{self};
use crate::tracker::TrackOptions;
use crate::varieties::{image_dimension, widen_slice, AbstractJoin, JoinMode, ProjectionSetup};

/// Homogenize every row of `f` with respect to the variables in `block`,
/// appending the homogenizing variable as the new last coordinate. Each
/// term of a row is padded to that row's maximal block degree.
pub fn homogenize_block(f: &PolynomialSystem, block: &[usize]) -> Result<PolynomialSystem> {
    let nv = f.num_vars;
    let in_block = {
        let mut mask = vec![false; nv];
        for &b in block {
            mask[b] = true;
        }
        mask
    };
    let polys = f
        .polys
        .iter()
        .map(|p| {
            let block_deg = |t: &Term| -> u32 {
                t.exponents
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| in_block[*i])
                    .map(|(_, &e)| e)
                    .sum()
            };
            let d_max = p.terms.iter().map(&block_deg).max().unwrap_or(0);
            Polynomial::from_terms(
                p.terms
                    .iter()
                    .map(|t| {
                        let mut e = t.exponents.clone();
                        e.push(d_max - block_deg(t));
                        Term::new(t.coeff, e)
                    })
                    .collect(),
            )
        })
        .collect();
    PolynomialSystem::new(nv + 1, polys)
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentGroup {
    pub paths_per_point: usize,
    pub deg: usize,
    #[serde(with = "crate::algebra::poly::cpair_mat")]
    pub points: Vec<Vec<Complex64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundaryResult {
    #[serde(with = "crate::algebra::poly::cpair_mat")]
    pub candidates: Vec<Vec<Complex64>>,
    /// Paths that converged onto each candidate in the degeneration.
    pub path_counts: Vec<usize>,
    /// Certified escape scale of the refined collapse at each candidate
    /// (zero when the candidate is an unrefined extrapolation).
    pub depths: Vec<f64>,
    /// Indices of candidates confirmed to lie in the boundary.
    pub confirmed: Vec<usize>,
    /// Candidates whose membership test was inconclusive.
    pub unresolved: Vec<usize>,
    pub component_groups: Vec<ComponentGroup>,
    /// The general curve section of the image (witness-set semantics).
    pub section: LinearSlice,
    /// Fiber rows cutting the incidence curve; these quotient out any
    /// positive-dimensional parameterization redundancy.
    pub normalization: LinearSlice,
    pub total_infinity_paths: usize,
    pub seed: u64,
    pub warnings: Vec<String>,
}

/// Candidate boundary points of the projection described by `setup`.
pub fn boundary_candidates(
    setup: &ProjectionSetup,
    image_dim: usize,
    rng: &mut Rng,
    opts: &TrackOptions,
    section: Option<LinearSlice>,
) -> Result<BoundaryResult> {
    if image_dim < 1 {
        return Err(CoreError::Input("boundary needs image dimension >= 1".into()));
    }
    let nv = setup.system.num_vars;
    let fiber_dim = setup.dim_total - image_dim;
    let blocks: Vec<usize> = (0..nv).filter(|v| !setup.proj.contains(v)).collect();
    if blocks.is_empty() {
        return Err(CoreError::Input(
            "no fiber coordinates to projectivize; the projection is the identity".into(),
        ));
    }

    let section = match section {
        Some(s) => {
            if s.codim() != image_dim - 1 {
                return Err(CoreError::Input(format!(
                    "section must have codim {}, got {}",
                    image_dim - 1,
                    s.codim()
                )));
            }
            s
        }
        None => LinearSlice::random(setup.proj.len(), image_dim - 1, None, rng)?,
    };
    let normalization = LinearSlice::random(nv, fiber_dim, None, rng)?;

    // curve system in the original coordinates
    let sys_curve = setup
        .system
        .appended(&widen_slice(&section, nv, &setup.proj).rows_as_polys(nv, None))?
        .appended(&normalization.rows_as_polys(nv, None))?;

    // projectivize the fiber block: y0 is the appended last variable
    let homog = homogenize_block(&sys_curve, &blocks)?;
    let y0 = nv; // index of the homogenizing variable
    let mut chart_coeffs = vec![Complex64::new(0.0, 0.0); nv + 1];
    for &b in &blocks {
        chart_coeffs[b] = rng.unit_complex();
    }
    chart_coeffs[y0] = rng.unit_complex();
    let chart = Polynomial::linear(&chart_coeffs, rng.unit_complex());
    let fixed = homog.appended(&[chart])?;

    // start points on {y0 = beta}, then degenerate beta -> 0
    let beta = rng.unit_complex();
    let mut level_row = vec![Complex64::new(0.0, 0.0); nv + 1];
    level_row[y0] = Complex64::new(1.0, 0.0);
    let from = LinearSlice::from_rows(vec![level_row.clone()], vec![beta], rng.seed());
    let to = LinearSlice::from_rows(
        vec![level_row],
        vec![Complex64::new(0.0, 0.0)],
        rng.seed(),
    );

    // The image-block columns of the homogenized Jacobian scale like a
    // power of y0, so conditioning collapses near the infinity hyperplane.
    // The image coordinates converge smoothly in the deformation parameter,
    // so the degeneration stops at a coarse floor and the candidates come
    // from extrapolated image samples taken where the paths are still
    // well conditioned.
    let deg_opts = TrackOptions {
        t_min: opts.t_min.max(1e-3),
        ..opts.clone()
    };

    let start_sys = solver::square_up(&fixed, (nv + 1) - from.codim(), rng)?
        .appended(&from.rows_as_polys(nv + 1, None))?;
    let sols = solver::total_degree_solve(&start_sys, rng, opts)?;
    let full_start = fixed.appended(&from.rows_as_polys(nv + 1, None))?;
    let starts: Vec<Vec<Complex64>> = sols
        .points
        .into_iter()
        .filter(|p| {
            full_start
                .residual(p)
                .map(|r| r < solver::RESIDUAL_GATE)
                .unwrap_or(false)
        })
        .collect();
    if starts.is_empty() {
        return Err(CoreError::Input(
            "no start points on the compactified curve; the section may be degenerate".into(),
        ));
    }

    let results = solver::move_slice(&fixed, &from, &starts, &to, None, rng, &deg_opts)?;

    // Endpoints at the infinity hyperplane are singular for the limit
    // system and approach their limits at fractional rates, so extrapolated
    // samples alone are coarse. When the image section is an affine line
    // (the image fills its space), each path is sharpened by root-finding
    // on the reciprocal power of its escaping fiber coordinate along the
    // line; otherwise the extrapolated limits are kept with a warning.
    let mut warnings = Vec::new();
    let line = if image_dim == setup.proj.len() {
        line_of_section(&section)
    } else {
        warnings.push(
            "image section is a nonlinear curve; candidates are unrefined extrapolations".into(),
        );
        None
    };

    let mut limits: Vec<(Vec<Complex64>, f64)> = Vec::new();
    let mut infinity_paths = 0usize;
    for r in &results {
        if r.status == crate::tracker::PathStatus::Diverged {
            continue; // the curve itself escapes in the image directions
        }
        // the image coordinates of the path state at the coarse floor are
        // the rough candidate; sample extrapolation is unreliable at the
        // fractional approach rates of these limits
        let rough: Vec<Complex64> = setup.proj.iter().map(|&j| r.endpoint[j]).collect();
        if !rough
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
        {
            warnings.push("a degeneration path ended with non-finite image".into());
            continue;
        }
        if rough.iter().map(|z| z.norm()).fold(0.0, f64::max) > 1e5 {
            continue; // escaping in the image directions, just slowly
        }
        let refined = line.as_ref().and_then(|(p0, dir)| {
            refine_on_line(setup, &normalization, p0, dir, r, y0, &blocks, opts)
        });
        match refined {
            Some((p, escape)) => {
                infinity_paths += 1;
                limits.push((p, escape));
            }
            None => {
                if line.is_some() {
                    warnings.push("a path's collapse refinement failed; kept the rough limit".into());
                }
                infinity_paths += 1;
                limits.push((rough, 0.0));
            }
        }
    }
    if limits.is_empty() {
        return Err(CoreError::Input(
            "no paths reached the infinity hyperplane with finite image".into(),
        ));
    }

    // cluster image limits into candidates, counting paths per candidate;
    // each cluster is represented by its deepest-collapse member
    let mut candidates: Vec<Vec<Complex64>> = Vec::new();
    let mut depths: Vec<f64> = Vec::new();
    let mut path_counts: Vec<usize> = Vec::new();
    for (l, escape) in limits {
        match candidates
            .iter()
            .position(|cnd| solver::rel_dist(cnd, &l) < 1e-4)
        {
            Some(i) => {
                path_counts[i] += 1;
                if escape > depths[i] {
                    candidates[i] = l;
                    depths[i] = escape;
                }
            }
            None => {
                candidates.push(l);
                depths.push(escape);
                path_counts.push(1);
            }
        }
    }

    Ok(BoundaryResult {
        candidates,
        path_counts,
        depths,
        confirmed: Vec::new(),
        unresolved: Vec::new(),
        component_groups: Vec::new(),
        section,
        normalization,
        total_infinity_paths: infinity_paths,
        seed: rng.seed(),
        warnings,
    })
}

/// Affine line cut out by the section rows: minimum-norm point and a unit
/// kernel direction.
fn line_of_section(section: &LinearSlice) -> Option<(Vec<Complex64>, Vec<Complex64>)> {
    use nalgebra::{DMatrix, DVector};
    let rows = section.codim();
    let cols = section.num_vars();
    if cols != rows + 1 {
        return None;
    }
    let a = DMatrix::from_fn(rows, cols, |i, j| section.coeff_matrix[i][j]);
    let b = DVector::from_vec(section.offset.clone());
    let p0 = a.clone().svd(true, true).solve(&b, 1e-12).ok()?;
    // kernel direction from the full SVD of the square Gram matrix
    let gram = a.adjoint() * &a;
    let svd = gram.svd(true, true);
    let vt = svd.v_t.as_ref()?;
    let dir: Vec<Complex64> = (0..cols).map(|j| vt[(cols - 1, j)].conj()).collect();
    let dn: f64 = dir.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if dn < 1e-12 {
        return None;
    }
    let residual: f64 = (0..rows)
        .map(|i| {
            let v: Complex64 = section.coeff_matrix[i]
                .iter()
                .zip(&dir)
                .map(|(c, d)| c * d)
                .sum();
            v.norm_sqr()
        })
        .sum::<f64>()
        .sqrt();
    if residual > 1e-8 * dn {
        return None;
    }
    Some((p0.as_slice().to_vec(), dir))
}

/// Boundary candidate carried by one degeneration path.
///
/// The tracked state at the coarse floor already sits on the collapsing
/// branch with its image a few parts in 1e8 from the limit (deeper
/// tracking only adds conditioning noise, and any local iteration on the
/// nearly-singular fiber family walks away from it). The candidate is the
/// state's image projected exactly onto the section line; the escape scale
/// of its largest fiber coordinate certifies the collapse and calibrates
/// the confirm step.
fn refine_on_line(
    setup: &ProjectionSetup,
    normalization: &LinearSlice,
    p0: &[Complex64],
    dir: &[Complex64],
    path: &crate::tracker::PathResult,
    y0: usize,
    blocks: &[usize],
    opts: &TrackOptions,
) -> Option<(Vec<Complex64>, f64)> {
    let nv = setup.system.num_vars;
    let _ = (normalization, opts);

    // de-homogenize the path state into original coordinates
    let scale = path.endpoint[y0];
    if scale.norm() < 1e-14 {
        return None;
    }
    let mut state = vec![Complex64::new(0.0, 0.0); nv];
    for &j in &setup.proj {
        state[j] = path.endpoint[j];
    }
    for &b in blocks {
        state[b] = path.endpoint[b] / scale;
    }
    let escape = blocks
        .iter()
        .map(|&b| state[b].norm())
        .fold(0.0, f64::max);
    if escape < 50.0 {
        return None;
    }

    let dot = |a: &[Complex64], b: &[Complex64]| -> Complex64 {
        a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
    };
    let image: Vec<Complex64> = setup.proj.iter().map(|&j| state[j]).collect();
    let diff: Vec<Complex64> = image.iter().zip(p0).map(|(a, b)| a - b).collect();
    let u = dot(dir, &diff) / dot(dir, dir);
    let refined: Vec<Complex64> = p0.iter().zip(dir).map(|(a, d)| a + d * u).collect();
    if solver::rel_dist(&refined, &image) > 1e-2 {
        return None;
    }
    Some((refined, escape))
}

/// Candidate boundary points of a join (affine-cone formulation).
pub fn join_boundary_candidates(
    join: &AbstractJoin,
    rng: &mut Rng,
    opts: &TrackOptions,
    section: Option<LinearSlice>,
) -> Result<BoundaryResult> {
    if join.mode != JoinMode::AffineCone {
        return Err(CoreError::Input(
            "boundary computations use the affine-cone formulation".into(),
        ));
    }
    let rep = image_dimension(join, rng, opts)?;
    boundary_candidates(&join.setup(), rep.dim_image, rng, opts, section)
}

/// Confirm candidates against the same join: a candidate belongs to the
/// boundary when it lies in the join variety but admits no decomposition.
/// Confirmed points are grouped by their path-count multiplicity.
pub fn boundary_confirm(
    join: &AbstractJoin,
    mut result: BoundaryResult,
    rng: &mut Rng,
    opts: &TrackOptions,
) -> Result<BoundaryResult> {
    let rep = image_dimension(join, rng, opts)?;
    let fills = rep.dim_image == join.ambient_dim;

    let mut confirmed = Vec::new();
    let mut unresolved = Vec::new();
    for i in 0..result.candidates.len() {
        let cand = result.candidates[i].clone();
        let in_closure = if fills {
            true
        } else {
            let report = curve_section_membership(&join.setup(), rep.dim_image, &cand, rng, opts)?;
            if report.constructible == Constructible::Inconclusive {
                unresolved.push(i);
                continue;
            }
            report.in_closure
        };
        if !in_closure {
            continue;
        }
        // The decisive certificate is reproduction: a genuine boundary
        // point shows the same fiber collapse on an independent curve
        // section through it (parameterization artifacts are tied to the
        // normalization draw and move with it). The second section's
        // estimate also sharpens the candidate.
        let section2 = LinearSlice::random(cand.len(), rep.dim_image - 1, Some(&cand), rng)?;
        let second = match boundary_candidates(
            &join.setup(),
            rep.dim_image,
            rng,
            opts,
            Some(section2),
        ) {
            Ok(s) => s,
            Err(_) => {
                unresolved.push(i);
                continue;
            }
        };
        let mut reproduced: Option<(Vec<Complex64>, f64)> = None;
        for (c2, &d2) in second.candidates.iter().zip(&second.depths) {
            if d2 >= 50.0 && solver::rel_dist(c2, &cand) < 1e-5 {
                match &reproduced {
                    Some((_, d)) if *d >= d2 => {}
                    _ => reproduced = Some((c2.clone(), d2)),
                }
            }
        }
        let Some((upgraded, depth2)) = reproduced else {
            unresolved.push(i);
            continue;
        };
        if depth2 > result.depths[i] {
            result.candidates[i] = upgraded;
            result.depths[i] = depth2;
        }
        // A decomposition at moderate scale is certifiable and genuine; one
        // at the collapse scale of a boundary approach cannot be told from
        // the escaping branch sampled at the candidate's finite accuracy.
        let fd = fiber_decomposition(join, &result.candidates[i], rng, opts)?;
        let has_stable_decomposition = fd.components.iter().any(|comp| {
            comp.witness_points.points.iter().any(|p| {
                let scale = p.iter().map(|z| z.norm()).fold(0.0, f64::max);
                scale <= 50.0
            })
        });
        if !has_stable_decomposition {
            confirmed.push(i);
        }
    }

    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for &i in &confirmed {
        groups.entry(result.path_counts[i]).or_default().push(i);
    }
    result.component_groups = groups
        .into_iter()
        .map(|(paths_per_point, idx)| ComponentGroup {
            paths_per_point,
            deg: idx.len(),
            points: idx.iter().map(|&i| result.candidates[i].clone()).collect(),
        })
        .collect();
    result.confirmed = confirmed;
    result.unresolved = unresolved;
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// The graph curve {(a, b, x) : a x = b} projecting to (a, b): the
    /// closure of the image of the fiber coordinate map hits infinity only
    /// over the line a = 0.
    #[test]
    fn graph_projection_boundary_is_a_zero() {
        let sys = PolynomialSystem::new(
            3,
            vec![Polynomial::from_terms(vec![
                Term::new(c(1.0, 0.0), vec![1, 0, 1]),
                Term::new(c(-1.0, 0.0), vec![0, 1, 0]),
            ])],
        )
        .unwrap();
        let setup = ProjectionSetup {
            system: sys,
            proj: vec![0, 1],
            dim_total: 2,
        };
        let mut rng = Rng::from_seed(401);
        let result =
            boundary_candidates(&setup, 2, &mut rng, &TrackOptions::default(), None).unwrap();
        assert_eq!(result.candidates.len(), 1, "{:?}", result.candidates);
        let cand = &result.candidates[0];
        // the candidate has a = 0 and lies on the section row
        assert!(cand[0].norm() < 1e-6, "a-coordinate {:?}", cand[0]);
        assert!(cand[1].norm() > 1e-3);
        assert!(result.section.residual(cand) < 1e-6);

        // confirmed: the fiber over it is empty, seen by the curve test
        let report = curve_section_membership(&setup, 2, cand, &mut rng, &TrackOptions::default())
            .unwrap();
        assert!(report.in_closure);
        assert_eq!(report.constructible, Constructible::NotInJ0);
    }

    #[test]
    fn homogenization_pads_to_block_degree() {
        // a*x - b with block {x}: becomes a*x - b*y0
        let sys = PolynomialSystem::new(
            3,
            vec![Polynomial::from_terms(vec![
                Term::new(c(1.0, 0.0), vec![1, 0, 1]),
                Term::new(c(-1.0, 0.0), vec![0, 1, 0]),
            ])],
        )
        .unwrap();
        let h = homogenize_block(&sys, &[2]).unwrap();
        assert_eq!(h.num_vars, 4);
        let p = &h.polys[0];
        for t in &p.terms {
            let bd = t.exponents[2] + t.exponents[3];
            assert_eq!(bd, 1);
        }
    }
}
