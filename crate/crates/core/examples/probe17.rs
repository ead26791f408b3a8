//! Acceptance-flow boundary diagnostics (not in the API).

use joinrank_core::algebra::Rng;
use joinrank_core::boundary::{boundary_confirm, join_boundary_candidates};
use joinrank_core::membership::fiber_decomposition;
use joinrank_core::models;
use joinrank_core::tracker::TrackOptions;

fn main() {
    let opts = TrackOptions::default();
    let mut rng = Rng::from_seed(20160706);
    let join = models::binomial_cubic_join(2, &mut rng).unwrap();
    let section = models::tangential_section();
    let result = join_boundary_candidates(&join, &mut rng, &opts, Some(section)).unwrap();
    println!("warnings: {:?}", result.warnings);
    println!("depths: {:?}", result.depths);
    for (cand, n) in result.candidates.iter().zip(&result.path_counts) {
        println!(
            "cand ({:.7}, {:.7}, {:.7}, {:.7}) paths {} q-rel {:.2e}",
            cand[0].re, cand[1].re, cand[2].re, cand[3].re, n,
            models::tangential_quartic_residual(cand)
        );
        let fd = fiber_decomposition(&join, cand, &mut rng, &opts).unwrap();
        let scales: Vec<f64> = fd
            .components
            .iter()
            .flat_map(|c| {
                c.witness_points
                    .points
                    .iter()
                    .map(|p| p.iter().map(|z| z.norm()).fold(0.0, f64::max))
            })
            .collect();
        let lo = scales.iter().cloned().fold(f64::MAX, f64::min);
        let hi = scales.iter().cloned().fold(0.0, f64::max);
        println!(
            "   fiber comps {} pts {} scale range ({:.2e}, {:.2e})",
            fd.components.len(), scales.len(), lo, hi
        );
    }
    let result = boundary_confirm(&join, result, &mut rng, &opts).unwrap();
    println!("confirmed: {:?} unresolved {:?}", result.confirmed, result.unresolved);
}
