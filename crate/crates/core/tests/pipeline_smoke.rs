//! End-to-end smoke tests of the witness / pseudowitness / membership
//! pipeline on small hand-checkable varieties.

use joinrank_core::algebra::{Polynomial, PolynomialSystem, Rng, Term};
use joinrank_core::membership::{membership_test, Constructible};
use joinrank_core::tracker::TrackOptions;
use joinrank_core::varieties::{
    build_abstract_join, image_dimension_at, join_pseudowitness, pseudowitness_set, witness_set,
    Factor, JoinMode, Parameterization, ProjectionSetup, PwMethod,
};
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// f = {x1^2 - x2, x1^3 + x3}: a rational curve in C^3.
fn space_curve() -> PolynomialSystem {
    let f1 = Polynomial::from_terms(vec![
        Term::new(c(1.0, 0.0), vec![2, 0, 0]),
        Term::new(c(-1.0, 0.0), vec![0, 1, 0]),
    ]);
    let f2 = Polynomial::from_terms(vec![
        Term::new(c(1.0, 0.0), vec![3, 0, 0]),
        Term::new(c(1.0, 0.0), vec![0, 0, 1]),
    ]);
    PolynomialSystem::new(3, vec![f1, f2]).unwrap()
}

#[test]
fn witness_of_space_curve_has_three_points() {
    let f = space_curve();
    let mut rng = Rng::from_seed(101);
    let w = witness_set(&f, 1, &mut rng, &TrackOptions::default()).unwrap();
    assert_eq!(w.deg, 3);
}

#[test]
fn pseudowitness_of_plane_projection() {
    // project to (x1, x2): the closure is the parabola, degree 2, fibers
    // generically one point
    let f = space_curve();
    let mut rng = Rng::from_seed(103);
    let setup = ProjectionSetup {
        system: f.clone(),
        proj: vec![0, 1],
        dim_total: 1,
    };
    // dimension of the image via the stacked Jacobian at a curve point
    let pt = vec![c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)];
    let dim = image_dimension_at(&setup, &pt).unwrap();
    assert_eq!(dim, 1);

    let pw = pseudowitness_set(
        &setup,
        dim,
        &[],
        &mut rng,
        PwMethod::FromWitness,
        &TrackOptions::default(),
    )
    .unwrap();
    assert_eq!(pw.image_deg, 2, "deg of the parabola");
    assert_eq!(pw.fiber_deg, 1, "projection is generically one-to-one");
    assert_eq!(pw.points.len(), 2);
    assert!(pw.warnings.is_empty(), "warnings: {:?}", pw.warnings);
}

#[test]
fn rank_one_membership_of_x2y_is_false_after_three_paths() {
    // the cone over the twisted cubic in C^4; x^2 y corresponds to (0,1,0,0)
    let mut rng = Rng::from_seed(107);
    let join = build_abstract_join(
        vec![Factor::Param(Parameterization::veronese(1, 3))],
        JoinMode::AffineCone,
        &mut rng,
    )
    .unwrap();
    let pw = join_pseudowitness(
        &join,
        &mut rng,
        PwMethod::FromWitness,
        &TrackOptions::default(),
    )
    .unwrap();
    assert_eq!(pw.image_deg, 3, "twisted cubic cone has degree 3");
    assert_eq!(pw.fiber_deg, 3, "cube roots of unity in each fiber");

    let p = [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
    let report = membership_test(&pw, &p, &mut rng, &TrackOptions::default()).unwrap();
    assert_eq!(report.paths_tracked, 3);
    assert!(!report.in_closure);
    assert_eq!(report.multiplicity, 0);
    assert_eq!(report.constructible, Constructible::NotInJ0);
    assert_eq!(report.limiting_projections.len(), 3);
}

#[test]
fn rank_one_membership_of_a_cube_is_true() {
    let mut rng = Rng::from_seed(109);
    let join = build_abstract_join(
        vec![Factor::Param(Parameterization::veronese(1, 3))],
        JoinMode::AffineCone,
        &mut rng,
    )
    .unwrap();
    let pw = join_pseudowitness(
        &join,
        &mut rng,
        PwMethod::FromWitness,
        &TrackOptions::default(),
    )
    .unwrap();
    // (2x - y)^3 -> (8, -12, 6, -1) in the monomial coefficient convention
    let p = [c(8.0, 0.0), c(-12.0, 0.0), c(6.0, 0.0), c(-1.0, 0.0)];
    let report = membership_test(&pw, &p, &mut rng, &TrackOptions::default()).unwrap();
    assert!(report.in_closure);
    assert_eq!(report.multiplicity, 1);
    match &report.constructible {
        Constructible::InJ0 { witness } => {
            let rec = join.reconstruction_residual(witness).unwrap();
            assert!(rec < 1e-6, "reconstruction residual {rec}");
        }
        other => panic!("expected InJ0, got {other:?}"),
    }
}

#[test]
fn monodromy_pseudowitness_matches_from_witness() {
    let mut rng = Rng::from_seed(113);
    let join = build_abstract_join(
        vec![Factor::Param(Parameterization::veronese(1, 3))],
        JoinMode::AffineCone,
        &mut rng,
    )
    .unwrap();
    let pw = join_pseudowitness(
        &join,
        &mut rng,
        PwMethod::Monodromy { stall_limit: 10 },
        &TrackOptions::default(),
    )
    .unwrap();
    assert_eq!(pw.image_deg, 3);
    assert_eq!(pw.fiber_deg, 3);
    assert!(pw.warnings.is_empty(), "warnings: {:?}", pw.warnings);
}
