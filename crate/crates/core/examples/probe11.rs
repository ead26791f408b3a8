//! Rank-2 join fiber cascade diagnostics (not part of the API).

use joinrank_core::algebra::Rng;
use joinrank_core::membership::fiber_decomposition;
use joinrank_core::models;
use joinrank_core::tracker::TrackOptions;

fn main() {
    let opts = TrackOptions::default();
    let mut rng = Rng::from_seed(20160706);
    let join = models::binary_cubic_join(2, &mut rng).unwrap();

    // a generic point: every binary cubic has 18 rank-2 parameter
    // decompositions (9 cube-root pairs times the summand swap)
    let generic = rng.unit_complex_vec(4);
    match fiber_decomposition(&join, &generic, &mut rng, &opts) {
        Ok(fd) => println!(
            "generic: nonempty {} stages {:?} comps {:?}",
            fd.nonempty,
            fd.stage_counts,
            fd.components.iter().map(|c| (c.dim, c.deg)).collect::<Vec<_>>()
        ),
        Err(e) => println!("generic: error {e}"),
    }

    // x^2 y: genuinely empty
    match fiber_decomposition(&join, &models::x2y_point(), &mut rng, &opts) {
        Ok(fd) => println!(
            "x2y:     nonempty {} stages {:?}",
            fd.nonempty, fd.stage_counts
        ),
        Err(e) => println!("x2y:     error {e}"),
    }

    // a true boundary point: rank 3, fiber also empty
    let q = [
        num_complex::Complex64::new(2.308, 0.0),
        num_complex::Complex64::new(-3.410, 0.0),
        num_complex::Complex64::new(3.794, 0.0),
        num_complex::Complex64::new(-0.103, 0.0),
    ];
    match fiber_decomposition(&join, &q, &mut rng, &opts) {
        Ok(fd) => println!(
            "tau pt:  nonempty {} stages {:?}",
            fd.nonempty, fd.stage_counts
        ),
        Err(e) => println!("tau pt:  error {e}"),
    }
}
