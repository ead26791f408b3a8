//! Decay-rate measurement for the boundary degeneration (not in the API).

use joinrank_core::algebra::{Homotopy, LinearSlice, Polynomial, Rng};
use joinrank_core::boundary::homogenize_block;
use joinrank_core::models;
use joinrank_core::solver;
use joinrank_core::tracker::{newton_refine, track, TrackOptions};
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

    let start_sys = solver::square_up(&fixed, nv, &mut rng)
        .unwrap()
        .appended(&from.rows_as_polys(nv + 1, None))
        .unwrap();
    let sols = solver::total_degree_solve(&start_sys, &mut rng, &opts).unwrap();
    println!("start points: {}", sols.len());

    // follow a handful of paths to t = 2e-2 then walk levels down
    let coarse = TrackOptions {
        t_min: 2e-2,
        ..Default::default()
    };
    let to = LinearSlice::from_rows(vec![level.clone()], vec![Complex64::new(0.0, 0.0)], 0);
    let f_for_h = fixed.clone();
    for (pi, p) in sols.points.iter().enumerate().take(6) {
        let start_full = f_for_h.appended(&from.rows_as_polys(nv + 1, None)).unwrap();
        let target_full = f_for_h.appended(&to.rows_as_polys(nv + 1, None)).unwrap();
        let h = Homotopy::segment(&start_full, &target_full, Complex64::new(1.0, 0.0)).unwrap();
        let r = track(&h, p, &coarse).unwrap();
        if !r.converged() && r.endpoint.iter().any(|z| z.norm() > 1e6) {
            println!("path {pi}: image escapes");
            continue;
        }
        // level walk: y0 = beta * t_k
        let mut cur = r.endpoint.clone();
        let mut samples: Vec<(f64, Vec<Complex64>)> = Vec::new();
        let mut ok = true;
        for k in 0..6 {
            let tk = 2e-2 * 0.5f64.powi(k);
            let lev = LinearSlice::from_rows(
                vec![level.clone()],
                vec![beta * Complex64::new(tk, 0.0)],
                0,
            );
            let sys_k = fixed.appended(&lev.rows_as_polys(nv + 1, None)).unwrap();
            let rr = newton_refine(&sys_k, &cur, 1e-14);
            if !rr.residual.is_finite() || rr.residual > 1e-6 {
                ok = false;
                break;
            }
            cur = rr.point.clone();
            samples.push((tk, rr.point[..4].to_vec()));
        }
        if !ok {
            println!("path {pi}: level walk failed");
            continue;
        }
        println!("path {pi}: P at levels:");
        for w in samples.windows(2) {
            let d: f64 = w[0]
                .1
                .iter()
                .zip(&w[1].1)
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            println!("   t {:.1e} -> diff to next {:.3e}", w[0].0, d);
        }
        let last = samples.last().unwrap();
        println!(
            "   P(last) = ({:.5}, {:.5}, {:.5}, {:.5}) quartic {:.2e}",
            last.1[0].re,
            last.1[1].re,
            last.1[2].re,
            last.1[3].re,
            models::tangential_quartic_value(&last.1).norm()
        );
    }
}
