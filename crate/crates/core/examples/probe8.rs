//! Boundary degeneration diagnostics (not part of the API).

use joinrank_core::algebra::{LinearSlice, Polynomial, Rng};
use joinrank_core::boundary::homogenize_block;
use joinrank_core::models;
use joinrank_core::solver;
use joinrank_core::tracker::{PathStatus, TrackOptions};
use joinrank_core::varieties::widen_slice;
use num_complex::Complex64;

fn main() {
    let opts = TrackOptions::default();
    let mut rng = Rng::from_seed(20160706);
    let join = models::binary_cubic_join(2, &mut rng).unwrap();
    let section = models::tangential_section();
    let nv = join.system.num_vars;
    let blocks: Vec<usize> = (4..8).collect();

    let sys_curve = join
        .system
        .appended(&widen_slice(&section, nv, &join.proj()).rows_as_polys(nv, None))
        .unwrap();
    let homog = homogenize_block(&sys_curve, &blocks).unwrap();
    println!("homogenized degrees: {:?}", homog.degrees());

    let y0 = nv;
    let mut chart_coeffs = vec![Complex64::new(0.0, 0.0); nv + 1];
    for &b in &blocks {
        chart_coeffs[b] = rng.unit_complex();
    }
    chart_coeffs[y0] = rng.unit_complex();
    let chart = Polynomial::linear(&chart_coeffs, rng.unit_complex());
    let fixed = homog.appended(&[chart]).unwrap();

    let beta = rng.unit_complex();
    let mut level = vec![Complex64::new(0.0, 0.0); nv + 1];
    level[y0] = Complex64::new(1.0, 0.0);
    let from = LinearSlice::from_rows(vec![level.clone()], vec![beta], 0);
    let to = LinearSlice::from_rows(vec![level], vec![Complex64::new(0.0, 0.0)], 0);

    let start_sys = solver::square_up(&fixed, nv + 1 - 1, &mut rng)
        .unwrap()
        .appended(&from.rows_as_polys(nv + 1, None))
        .unwrap();
    println!("start system square: {} eqs {} vars", start_sys.len(), start_sys.num_vars);
    let sols = solver::total_degree_solve(&start_sys, &mut rng, &opts).unwrap();
    println!("start points: {}", sols.len());

    let results =
        solver::move_slice(&fixed, &from, &sols.points, &to, None, &mut rng, &opts).unwrap();
    let mut census = [0usize; 4];
    for r in &results {
        census[match r.status {
            PathStatus::Converged => 0,
            PathStatus::Diverged => 1,
            PathStatus::Singular => 2,
            PathStatus::Truncated => 3,
        }] += 1;
    }
    println!(
        "conv {} div {} sing {} trunc {}",
        census[0], census[1], census[2], census[3]
    );
    for r in results.iter().take(8) {
        let m = r.endpoint.iter().map(|z| z.norm()).fold(0.0, f64::max);
        println!(
            "  {:?} t {:.2e} |x| {:.2e} samples {} y0 {:.2e}",
            r.status,
            r.t_reached,
            m,
            r.samples.len(),
            r.endpoint[y0].norm()
        );
    }
}
