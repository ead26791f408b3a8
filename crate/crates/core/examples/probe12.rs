//! Trace the boundary secant refinement by hand (not part of the API).

use joinrank_core::algebra::{LinearSlice, Polynomial, Rng};
use joinrank_core::boundary::homogenize_block;
use joinrank_core::models;
use joinrank_core::solver;
use joinrank_core::tracker::{newton_refine, TrackOptions};
use joinrank_core::varieties::widen_slice;
use num_complex::Complex64;

fn c(re: f64) -> Complex64 { Complex64::new(re, 0.0) }

fn main() {
    let opts = TrackOptions { t_min: 1e-3, ..Default::default() };
    let mut rng = Rng::from_seed(20160706);
    let join = models::binomial_cubic_join(2, &mut rng).unwrap();
    let section = models::tangential_section();
    let nv = join.system.num_vars;
    let blocks: Vec<usize> = (4..8).collect();

    // the line: p0 + u * dir with the paper's parameterization
    // P1 = 2 - 3u, P2 = -3 + 4u, P3 = 4 + 2u, P4 = u
    let p0 = vec![c(2.0), c(-3.0), c(4.0), c(0.0)];
    let dir = vec![c(-3.0), c(4.0), c(2.0), c(1.0)];

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

    // pin rows: x_proj = p0 + u dir
    let system_at = |u: Complex64| {
        let target: Vec<Complex64> = p0.iter().zip(&dir).map(|(a, d)| a + d * u).collect();
        let mut rows = Vec::new(); let mut offs = Vec::new();
        for (r, j) in (0..4).enumerate() {
            let mut row = vec![c(0.0); nv];
            row[j] = c(1.0);
            rows.push(row); offs.push(target[r]);
        }
        let pin = LinearSlice::from_rows(rows, offs, 0);
        join.system.appended(&pin.rows_as_polys(nv, None)).unwrap()
    };

    for (pi, r) in results.iter().enumerate() {
        if r.status == joinrank_core::tracker::PathStatus::Diverged { continue; }
        let scale = r.endpoint[y0];
        if scale.norm() < 1e-14 { continue; }
        let mut w = vec![c(0.0); nv];
        for j in 0..4 { w[j] = r.endpoint[j]; }
        for &b in &blocks { w[b] = r.endpoint[b] / scale; }
        let u0 = (w[3] - p0[3]) / dir[3]; // P4 = u directly
        let j_star = *blocks.iter().max_by(|&&a, &&b| w[a].norm().total_cmp(&w[b].norm())).unwrap();
        println!("path {pi}: u0 = {:.5}{:+.5}i |z*| = {:.3}", u0.re, u0.im, w[j_star].norm());

        // secant trace
        let mut z = w.clone();
        let mut eval = |u: Complex64, z: &mut Vec<Complex64>| -> Option<Complex64> {
            let sys = system_at(u);
            let rr = newton_refine(&sys, z, 1e-13);
            let sc = rr.point.iter().map(|q| q.norm()).fold(0.0, f64::max);
            if !rr.residual.is_finite() || rr.residual > 1e-12 * (1.0 + sc.powi(3)) {
                return None;
            }
            *z = rr.point;
            let zj = z[j_star];
            if zj.norm() < 1e-8 { return None; }
            Some(c(1.0) / zj.powi(3))
        };
        let mut u_prev = u0;
        let mut h_prev = match eval(u_prev, &mut z) { Some(h) => h, None => { println!("   eval0 failed"); continue; } };
        let mut u = u0 * c(1.0 - 1e-3);
        let mut h = match eval(u, &mut z) { Some(h) => h, None => { println!("   eval1 failed"); continue; } };
        for it in 0..40 {
            let denom = h - h_prev;
            if denom.norm() < 1e-300 { break; }
            let step = -h * (u - u_prev) / denom;
            let u_next = u + step;
            let mut z_next = z.clone();
            match eval(u_next, &mut z_next) {
                Some(h_next) => {
                    u_prev = u; h_prev = h; u = u_next; h = h_next; z = z_next;
                    if it < 6 || step.norm() < 1e-11 {
                        println!("   it {it}: u = {:.8}{:+.2e}i |z| = {:.2e} |h| = {:.2e} step {:.2e}", u.re, u.im, z[j_star].norm(), h.norm(), step.norm());
                    }
                    if step.norm() < 1e-11 * (1.0 + u.norm()) { break; }
                }
                None => {
                    let u_half = u + step * c(0.5);
                    let mut z_half = z.clone();
                    match eval(u_half, &mut z_half) {
                        Some(h_half) => { u_prev = u; h_prev = h; u = u_half; h = h_half; z = z_half; }
                        None => { println!("   it {it}: stuck, |z| = {:.2e}", z[j_star].norm()); break; }
                    }
                }
            }
        }
        println!("   final u = {:.8}{:+.2e}i |z| = {:.2e}", u.re, u.im, z[j_star].norm());
    }
}
