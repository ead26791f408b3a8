//! Status census for the slow total-degree runs (not part of the API).

use joinrank_core::algebra::{Homotopy, LinearSlice, Polynomial, PolynomialSystem, Rng, Term};
use joinrank_core::models;
use joinrank_core::solver::{self, rel_dist};
use joinrank_core::tracker::{newton_refine, PathStatus, TrackOptions};
use num_complex::Complex64;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn main() {
    let opts = TrackOptions { t_min: 1e-9, ..Default::default() };
    let mut rng = Rng::from_seed(1);
    let join = models::binary_cubic_join(3, &mut rng).unwrap();
    let f = join.fiber_system(&models::x2y_point()).unwrap();
    // mimic witness_set: random codim-2 slice
    let slice = LinearSlice::random(6, 2, None, &mut rng).unwrap();
    let sys = f.appended(&slice.rows_as_polys(6, None)).unwrap();

    // total-degree start
    let degrees: Vec<u32> = sys.degrees().iter().map(|&d| d.max(1)).collect();
    let start_polys: Vec<Polynomial> = degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            let mut e = vec![0u32; 6];
            e[i] = d;
            Polynomial::from_terms(vec![
                Term::new(c(1.0), e),
                Term::new(c(-1.0), vec![0; 6]),
            ])
        })
        .collect();
    let start_system = PolynomialSystem::new(6, start_polys).unwrap();
    let mut starts = Vec::new();
    let total: usize = degrees.iter().map(|&d| d as usize).product();
    let mut counter = vec![0u32; 6];
    for _ in 0..total {
        starts.push(
            counter
                .iter()
                .zip(&degrees)
                .map(|(&k, &d)| {
                    let th = std::f64::consts::TAU * k as f64 / d as f64;
                    Complex64::new(th.cos(), th.sin())
                })
                .collect::<Vec<_>>(),
        );
        for i in 0..6 {
            counter[i] += 1;
            if counter[i] < degrees[i] {
                break;
            }
            counter[i] = 0;
        }
    }
    println!("paths: {}", starts.len());

    let h = Homotopy::segment(&start_system, &sys, rng.unit_complex()).unwrap();
    let batch = solver::track_batch(&h, &starts, &opts);
    let mut census = [0usize; 4];
    for r in &batch.results {
        census[match r.status {
            PathStatus::Converged => 0,
            PathStatus::Diverged => 1,
            PathStatus::Singular => 2,
            PathStatus::Truncated => 3,
        }] += 1;
    }
    println!("conv {} div {} sing {} trunc {}", census[0], census[1], census[2], census[3]);

    // distinct converged endpoints
    let mut distinct: Vec<Vec<Complex64>> = Vec::new();
    for r in batch.results.iter().filter(|r| r.converged()) {
        if !distinct.iter().any(|p| rel_dist(p, &r.endpoint) < 1e-6) {
            distinct.push(r.endpoint.clone());
        }
    }
    println!("distinct converged: {}", distinct.len());

    for r in batch.results.iter().filter(|r| r.status == PathStatus::Singular) {
        let m = r.endpoint.iter().map(|z| z.norm()).fold(0.0, f64::max);
        println!(
            "  sing: t {:.1e} |x| {:.2e} res {:.2e} cond {:.2e}",
            r.t_reached, m, r.residual, r.condition_estimate
        );
        if r.t_reached <= 1.5e-6 && m < 1e4 {
            // would a persistent Newton polish reach a root?
            let rr = newton_refine(&sys, &r.endpoint, 1e-11);
            let new = !distinct.iter().any(|p| rel_dist(p, &rr.point) < 1e-6);
            println!(
                "       refine: res {:.2e} singular {} novel {new}",
                rr.residual, rr.singular
            );
        }
    }
}
// extra: scan several arcs for full recovery — appended scratch
