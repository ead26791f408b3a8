//! Candidate accuracy straight from de-homogenized path states.

use joinrank_core::algebra::{LinearSlice, Polynomial, Rng};
use joinrank_core::boundary::homogenize_block;
use joinrank_core::models;
use joinrank_core::solver;
use joinrank_core::tracker::TrackOptions;
use joinrank_core::varieties::widen_slice;
use num_complex::Complex64;

fn c(re: f64) -> Complex64 { Complex64::new(re, 0.0) }

fn main() {
    let roots = [12.581331054886f64, 0.660677640985, -0.102520203892, -0.775852128342];
    for tmin in [1e-3, 1e-4, 1e-5] {
        let opts = TrackOptions { t_min: tmin, ..Default::default() };
        let mut rng = Rng::from_seed(20160706);
        let join = models::binomial_cubic_join(2, &mut rng).unwrap();
        let section = models::tangential_section();
        let nv = join.system.num_vars;
        let blocks: Vec<usize> = (4..8).collect();
        let sys_curve = join
            .system
            .appended(&widen_slice(&section, nv, &join.proj()).rows_as_polys(nv, None))
            .unwrap();
        let homog = homogenize_block(&sys_curve, &blocks).unwrap();
        let y0 = nv;
        let mut chart_coeffs = vec![c(0.0); nv + 1];
        for &b in &blocks { chart_coeffs[b] = rng.unit_complex(); }
        chart_coeffs[y0] = rng.unit_complex();
        let chart = Polynomial::linear(&chart_coeffs, rng.unit_complex());
        let fixed = homog.appended(&[chart]).unwrap();
        let beta = rng.unit_complex();
        let mut level = vec![c(0.0); nv + 1];
        level[y0] = c(1.0);
        let from = LinearSlice::from_rows(vec![level.clone()], vec![beta], 0);
        let to = LinearSlice::from_rows(vec![level], vec![c(0.0)], 0);
        let start_sys = solver::square_up(&fixed, nv, &mut rng).unwrap()
            .appended(&from.rows_as_polys(nv + 1, None)).unwrap();
        let sols = solver::total_degree_solve(&start_sys, &mut rng, &opts).unwrap();
        let results = solver::move_slice(&fixed, &from, &sols.points, &to, None, &mut rng, &opts).unwrap();
        let mut worst: f64 = 0.0;
        let mut hits = 0;
        for r in &results {
            if r.status == joinrank_core::tracker::PathStatus::Diverged { continue; }
            let scale = r.endpoint[y0];
            if scale.norm() < 1e-14 { continue; }
            let u = r.endpoint[3]; // P4 = u on this line
            if u.norm() > 1e3 { continue; }
            if let Some(best) = roots
                .iter()
                .map(|&rt| (u - c(rt)).norm())
                .min_by(f64::total_cmp)
            {
                if best < 1e-2 {
                    hits += 1;
                    worst = worst.max(best);
                }
            }
        }
        println!("t_min {tmin:.0e}: {hits} paths near roots, worst |u - u*| = {worst:.3e}");
    }
}
