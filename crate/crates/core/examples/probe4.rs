//! Independent determinations of the degree of the rank-3 fiber of x^2 y.

use joinrank_core::algebra::{LinearSlice, Rng};
use joinrank_core::models;
use joinrank_core::solver;
use joinrank_core::tracker::TrackOptions;
use joinrank_core::varieties::witness_set;

fn main() {
    let opts = TrackOptions::default();

    // route 1: slice the 6-variable fiber system with fresh random slices
    for seed in [1u64, 2, 3] {
        let mut rng = Rng::from_seed(seed);
        let join = models::binary_cubic_join(3, &mut rng).unwrap();
        let f = join.fiber_system(&models::x2y_point()).unwrap();
        let w = witness_set(&f, 2, &mut rng, &opts).unwrap();
        println!("seed {seed}: direct fiber witness degree = {}", w.deg);
    }

    // route 2: monodromy from one slice point with a trace certificate
    let mut rng = Rng::from_seed(7);
    let join = models::binary_cubic_join(3, &mut rng).unwrap();
    let f = join.fiber_system(&models::x2y_point()).unwrap();
    let slice = LinearSlice::random(6, 2, None, &mut rng).unwrap();
    let sys = f.appended(&slice.rows_as_polys(6, None)).unwrap();
    let sols = solver::total_degree_solve(&sys, &mut rng, &opts).unwrap();
    println!("route 2 start count = {}", sols.len());
    let grown = solver::monodromy_populate(&f, &slice, &sols, &mut rng, 10, &opts).unwrap();
    println!("after monodromy      = {}", grown.len());
    let trace = solver::trace_test(&f, &slice, None, &grown.points, None, &mut rng, &opts).unwrap();
    println!("trace test complete  = {trace}");

    // route 3: generic-fiber degree for comparison (decompositions of a
    // random cubic)
    let mut rng = Rng::from_seed(11);
    let join = models::binary_cubic_join(3, &mut rng).unwrap();
    let target = rng.unit_complex_vec(4);
    let fgen = join.fiber_system(&target).unwrap();
    let wgen = witness_set(&fgen, 2, &mut rng, &opts).unwrap();
    println!("generic-fiber witness degree = {}", wgen.deg);
}
