//! Ground-truth check of the cascade's final stage (not part of the API).

use joinrank_core::algebra::{LinearSlice, Rng};
use joinrank_core::models;
use joinrank_core::solver;
use joinrank_core::tracker::{newton_refine, TrackOptions};
use joinrank_core::varieties::{widen_slice, witness_set};

fn main() {
    let opts = TrackOptions::default();
    let mut rng = Rng::from_seed(20160706);
    let join = models::binary_cubic_join(3, &mut rng).unwrap();
    let point = models::x2y_point();
    let nv = join.system.num_vars;

    let w = witness_set(&join.system, join.dim_total, &mut rng, &opts).unwrap();
    let stages = join.ambient_dim.min(join.dim_total);
    let m_rows = LinearSlice::random(join.ambient_dim, stages, Some(&point), &mut rng).unwrap();

    // final-stage slice: [m1..m4, l5, l6]
    let mut rows = Vec::new();
    let mut offs = Vec::new();
    for i in 0..stages {
        let wide = widen_slice(
            &LinearSlice::from_rows(
                vec![m_rows.coeff_matrix[i].clone()],
                vec![m_rows.offset[i]],
                0,
            ),
            nv,
            &join.proj(),
        );
        rows.push(wide.coeff_matrix[0].clone());
        offs.push(wide.offset[0]);
    }
    for i in stages..join.dim_total {
        rows.push(w.slice.coeff_matrix[i].clone());
        offs.push(w.slice.offset[i]);
    }
    let final_slice = LinearSlice::from_rows(rows, offs, 0);
    let sys = join
        .system
        .appended(&final_slice.rows_as_polys(nv, None))
        .unwrap();

    // ground truth by total degree (Bezout 81)
    let direct = solver::total_degree_solve(&sys, &mut rng, &opts).unwrap();
    println!("direct total-degree solutions: {}", direct.len());
    let on_fiber = direct
        .points
        .iter()
        .filter(|p| solver::rel_dist(&p[..4].to_vec(), &point) < 1e-6)
        .count();
    println!("  of which on the fiber: {on_fiber}");

    // conditioning at the solutions
    let mut worst = 0.0f64;
    for p in &direct.points {
        let j = sys.jacobian(p).unwrap();
        let cond = joinrank_core::linalg::condition_estimate(&j);
        worst = worst.max(cond);
    }
    println!("  worst endpoint condition: {worst:.3e}");

    // does newton_refine flag these as singular?
    let mut flagged = 0;
    for p in &direct.points {
        let r = newton_refine(&sys, p, 1e-11);
        if r.singular {
            flagged += 1;
        }
    }
    println!("  newton_refine singular flags: {flagged}");
}
