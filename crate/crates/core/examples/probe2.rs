//! Scratch diagnostics for the rank-3 fiber cascade (not part of the API).

use joinrank_core::algebra::{LinearSlice, Rng};
use joinrank_core::models;
use joinrank_core::solver;
use joinrank_core::tracker::{PathStatus, TrackOptions};
use joinrank_core::varieties::{widen_slice, witness_set};

fn main() {
    let opts = TrackOptions { t_min: 1e-10, ..Default::default() };
    let mut rng = Rng::from_seed(20160706);
    let join = models::binary_cubic_join(3, &mut rng).unwrap();
    let point = models::x2y_point();

    let w = witness_set(&join.system, join.dim_total, &mut rng, &opts).unwrap();
    println!("witness degree = {}", w.deg);

    let stages = join.ambient_dim.min(join.dim_total);
    let m_rows = LinearSlice::random(join.ambient_dim, stages, Some(&point), &mut rng).unwrap();
    let nv = join.system.num_vars;

    let slice_at = |swapped: usize| -> LinearSlice {
        let mut rows = Vec::new();
        let mut offs = Vec::new();
        for i in 0..swapped {
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
        for i in swapped..join.dim_total {
            rows.push(w.slice.coeff_matrix[i].clone());
            offs.push(w.slice.offset[i]);
        }
        LinearSlice::from_rows(rows, offs, 0)
    };

    let mut current = w.points.points.clone();
    for stage in 0..stages {
        let from = slice_at(stage);
        let to = slice_at(stage + 1);
        let results =
            solver::move_slice_union(&join.system, &from, &current, &to, None, &mut rng, &opts).unwrap();
        let mut conv = 0;
        let mut div = 0;
        let mut sing = 0;
        let mut trunc = 0;
        for r in &results {
            match r.status {
                PathStatus::Converged => conv += 1,
                PathStatus::Diverged => div += 1,
                PathStatus::Singular => sing += 1,
                PathStatus::Truncated => trunc += 1,
            }
        }
        println!(
            "stage {stage}: tracked {} -> conv {conv} div {div} sing {sing} trunc {trunc}",
            current.len()
        );
        // how big are the singular endpoints?
        for r in results.iter().filter(|r| r.status == PathStatus::Singular) {
            let m = r.endpoint.iter().map(|z| z.norm()).fold(0.0, f64::max);
            println!(
                "   singular: t_reached {:.2e} max|x| {:.2e} residual {:.2e} cond {:.2e}",
                r.t_reached, m, r.residual, r.condition_estimate
            );
        }
        current = results
            .into_iter()
            .filter(|r| r.converged())
            .map(|r| r.endpoint)
            .collect();
        // distinct endpoints at this stage
        let mut distinct: Vec<&Vec<num_complex::Complex64>> = Vec::new();
        for p in &current {
            if !distinct
                .iter()
                .any(|q| solver::rel_dist(q, p) < 1e-6)
            {
                distinct.push(p);
            }
        }
        println!("   distinct converged: {}", distinct.len());
    }

    // ground truth for the final stage
    let final_slice = slice_at(stages);
    let sys = join
        .system
        .appended(&final_slice.rows_as_polys(nv, None))
        .unwrap();
    let direct = solver::total_degree_solve(&sys, &mut rng, &opts).unwrap();
    println!("direct final-stage count: {}", direct.len());

    // monodromy completion with a trace certificate, moving only the two
    // generic rows (the fiber rows m stay put)
    let m_widened = widen_slice(&m_rows, nv, &join.proj());
    let fixed = join
        .system
        .appended(&m_widened.rows_as_polys(nv, None))
        .unwrap();
    let generic_rows = LinearSlice::from_rows(
        final_slice.coeff_matrix[stages..].to_vec(),
        final_slice.offset[stages..].to_vec(),
        0,
    );
    let grown =
        solver::monodromy_populate(&fixed, &generic_rows, &direct, &mut rng, 10, &opts).unwrap();
    println!("after monodromy: {}", grown.len());
    let trace = solver::trace_test(
        &fixed,
        &generic_rows,
        None,
        &grown.points,
        None,
        &mut rng,
        &opts,
    )
    .unwrap();
    println!("trace certificate: {trace}");

    // reduce the same final slice onto the fiber coordinates: pin the
    // image block to the point and restrict the two generic rows
    let fsys = join.fiber_system(&point).unwrap();
    let blocks = 6usize;
    let reduced_rows: Vec<Vec<num_complex::Complex64>> = final_slice.coeff_matrix[stages..]
        .iter()
        .map(|row| row[join.ambient_dim..].to_vec())
        .collect();
    let reduced_offs: Vec<num_complex::Complex64> = final_slice.coeff_matrix[stages..]
        .iter()
        .zip(&final_slice.offset[stages..])
        .map(|(row, b)| {
            let pin: num_complex::Complex64 = row[..join.ambient_dim]
                .iter()
                .zip(&point)
                .map(|(a, x)| a * x)
                .sum();
            b - pin
        })
        .collect();
    let reduced = LinearSlice::from_rows(reduced_rows, reduced_offs, 0);
    let rsys = fsys.appended(&reduced.rows_as_polys(blocks, None)).unwrap();
    let rsol = solver::total_degree_solve(&rsys, &mut rng, &opts).unwrap();
    println!("reduced same-slice count: {}", rsol.len());
}
