//! Arc-coverage scan for the fiber witness run (not part of the API).

use joinrank_core::algebra::{Homotopy, LinearSlice, Polynomial, PolynomialSystem, Rng, Term};
use joinrank_core::models;
use joinrank_core::solver::{self, rel_dist};
use joinrank_core::tracker::TrackOptions;
use num_complex::Complex64;

fn main() {
    let opts = TrackOptions::default();
    let mut rng = Rng::from_seed(1);
    let join = models::binary_cubic_join(3, &mut rng).unwrap();
    let f = join.fiber_system(&models::x2y_point()).unwrap();
    let slice = LinearSlice::random(6, 2, None, &mut rng).unwrap();
    let sys = f.appended(&slice.rows_as_polys(6, None)).unwrap();

    let degrees: Vec<u32> = sys.degrees().iter().map(|&d| d.max(1)).collect();
    let start_polys: Vec<Polynomial> = degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            let mut e = vec![0u32; 6];
            e[i] = d;
            Polynomial::from_terms(vec![
                Term::new(Complex64::new(1.0, 0.0), e),
                Term::new(Complex64::new(-1.0, 0.0), vec![0; 6]),
            ])
        })
        .collect();
    let start_system = PolynomialSystem::new(6, start_polys).unwrap();
    let total: usize = degrees.iter().map(|&d| d as usize).product();
    let mut starts = Vec::new();
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

    let mut union: Vec<Vec<Complex64>> = Vec::new();
    for arc in 0..5u64 {
        let mut arng = Rng::from_seed(500 + arc);
        let h = Homotopy::segment(&start_system, &sys, arng.unit_complex()).unwrap();
        let b = solver::track_batch(&h, &starts, &opts);
        let mut d: Vec<Vec<Complex64>> = Vec::new();
        for r in b.results.iter().filter(|r| r.converged()) {
            if !d.iter().any(|p| rel_dist(p, &r.endpoint) < 1e-6) {
                d.push(r.endpoint.clone());
            }
            if !union.iter().any(|p| rel_dist(p, &r.endpoint) < 1e-6) {
                union.push(r.endpoint.clone());
            }
        }
        println!(
            "arc {arc}: conv {} distinct {} running-union {}",
            b.results.iter().filter(|r| r.converged()).count(),
            d.len(),
            union.len()
        );
    }
}
