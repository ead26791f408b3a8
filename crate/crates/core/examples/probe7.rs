//! Norm profile of the certified fiber witness (not part of the API).

use joinrank_core::algebra::{LinearSlice, Rng};
use joinrank_core::models;
use joinrank_core::solver;
use joinrank_core::tracker::TrackOptions;
use joinrank_core::varieties::witness_set;

fn main() {
    let opts = TrackOptions::default();
    // a seed whose direct solve certified 45 points
    let mut rng = Rng::from_seed(7);
    let join = models::binary_cubic_join(3, &mut rng).unwrap();
    let f = join.fiber_system(&models::x2y_point()).unwrap();
    let w = witness_set(&f, 2, &mut rng, &opts).unwrap();
    println!("witness degree {}", w.deg);
    let mut norms: Vec<f64> = w
        .points
        .points
        .iter()
        .map(|p| p.iter().map(|z| z.norm()).fold(0.0, f64::max))
        .collect();
    norms.sort_by(f64::total_cmp);
    println!("coordinate-norm profile: min {:.2} median {:.2} max {:.2}",
        norms[0], norms[norms.len() / 2], norms[norms.len() - 1]);
    println!("largest five: {:?}", &norms[norms.len().saturating_sub(5)..]);

    // now the troublesome slice from the cascade seed
    let mut rng2 = Rng::from_seed(20160706);
    let join2 = models::binary_cubic_join(3, &mut rng2).unwrap();
    let w2 = witness_set(&join2.system, join2.dim_total, &mut rng2, &opts).unwrap();
    let stages = 4;
    let m_rows =
        LinearSlice::random(4, stages, Some(&models::x2y_point()), &mut rng2).unwrap();
    let _ = m_rows;
    let f2 = join2.fiber_system(&models::x2y_point()).unwrap();
    let reduced_rows: Vec<Vec<num_complex::Complex64>> = w2.slice.coeff_matrix[stages..]
        .iter()
        .map(|row| row[4..].to_vec())
        .collect();
    let reduced_offs: Vec<num_complex::Complex64> = w2.slice.coeff_matrix[stages..]
        .iter()
        .zip(&w2.slice.offset[stages..])
        .map(|(row, b)| {
            let pin: num_complex::Complex64 = row[..4]
                .iter()
                .zip(&models::x2y_point())
                .map(|(a, x)| a * x)
                .sum();
            b - pin
        })
        .collect();
    let reduced = LinearSlice::from_rows(reduced_rows, reduced_offs, 0);
    let rsys = f2.appended(&reduced.rows_as_polys(6, None)).unwrap();
    let direct = solver::total_degree_solve(&rsys, &mut rng2, &opts).unwrap();
    println!("stubborn slice direct: {}", direct.len());
    let grown =
        solver::monodromy_populate(&f2, &reduced, &direct, &mut rng2, 25, &opts).unwrap();
    println!("after patient monodromy: {}", grown.len());
    let trace =
        solver::trace_test(&f2, &reduced, None, &grown.points, None, &mut rng2, &opts).unwrap();
    println!("trace: {trace}");
    let mut n2: Vec<f64> = grown
        .points
        .iter()
        .map(|p| p.iter().map(|z| z.norm()).fold(0.0, f64::max))
        .collect();
    n2.sort_by(f64::total_cmp);
    println!("largest five norms: {:?}", &n2[n2.len().saturating_sub(5)..]);
}
