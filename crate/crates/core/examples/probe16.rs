//! Secant plateau diagnosis on the binomial boundary (not in the API).

use joinrank_core::algebra::{LinearSlice, Rng};
use joinrank_core::models;
use joinrank_core::tracker::newton_refine;
use num_complex::Complex64;

fn c(re: f64) -> Complex64 { Complex64::new(re, 0.0) }

fn main() {
    let mut rng = Rng::from_seed(99);
    let join = models::binomial_cubic_join(2, &mut rng).unwrap();
    let nv = join.system.num_vars;
    // exact root u* = 0.660677640985 on the line P(u)
    let u_star = 0.660677640985f64;
    let p_of = |u: Complex64| -> Vec<Complex64> {
        vec![c(2.0) - c(3.0) * u, c(-3.0) + c(4.0) * u, c(4.0) + c(2.0) * u, u]
    };
    let system_at = |u: Complex64| {
        let target = p_of(u);
        let mut rows = Vec::new();
        let mut offs = Vec::new();
        for j in 0..4 {
            let mut row = vec![c(0.0); nv];
            row[j] = c(1.0);
            rows.push(row);
            offs.push(target[j]);
        }
        let pin = LinearSlice::from_rows(rows, offs, 0);
        join.system.appended(&pin.rows_as_polys(nv, None)).unwrap()
    };

    // fiber point at a known distance, from a generic solve
    let mut z: Option<Vec<Complex64>> = None;
    for k in 2..13 {
        let delta = 10f64.powi(-k);
        let u = c(u_star + delta);
        let sys = system_at(u);
        let cur = match &z {
            Some(prev) => {
                let rr = newton_refine(&sys, prev, 1e-13);
                rr.point
            }
            None => {
                let opts = joinrank_core::tracker::TrackOptions::default();
                let sols =
                    joinrank_core::solver::total_degree_solve(&sys, &mut rng, &opts).unwrap();
                sols.points
                    .iter()
                    .max_by(|a, b| {
                        let na = a.iter().map(|q| q.norm()).fold(0.0, f64::max);
                        let nb = b.iter().map(|q| q.norm()).fold(0.0, f64::max);
                        na.total_cmp(&nb)
                    })
                    .unwrap()
                    .clone()
            }
        };
        let sys_res = sys.residual(&cur).unwrap();
        let zmax = cur.iter().map(|q| q.norm()).fold(0.0, f64::max);
        println!(
            "delta 1e-{k}: max|z| = {zmax:.4e} residual = {sys_res:.2e} (z^-3 = {:.3e})",
            zmax.powi(-3)
        );
        z = Some(cur);
    }
}
