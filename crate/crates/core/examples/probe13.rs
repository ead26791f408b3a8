//! Confirm-step behavior at refined boundary candidates (not in the API).

use joinrank_core::algebra::Rng;
use joinrank_core::boundary::join_boundary_candidates;
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
    for (cand, n) in result.candidates.iter().zip(&result.path_counts) {
        let q = models::tangential_quartic_value(cand).norm();
        let scale = cand.iter().map(|z| z.norm()).fold(1.0, f64::max).powi(4);
        println!(
            "cand ({:.6}, {:.6}, {:.6}, {:.6}) paths {} quartic(rel) {:.2e}",
            cand[0].re, cand[1].re, cand[2].re, cand[3].re, n, q / scale
        );
        match fiber_decomposition(&join, cand, &mut rng, &opts) {
            Ok(fd) => {
                println!(
                    "   fiber nonempty {} stages {:?}",
                    fd.nonempty, fd.stage_counts
                );
                if let Some(c0) = fd.components.first() {
                    let zmax = c0
                        .witness_points
                        .points
                        .iter()
                        .map(|p| p.iter().map(|z| z.norm()).fold(0.0, f64::max))
                        .fold(0.0, f64::max);
                    println!("   comp deg {} max|z| {:.2e}", c0.deg, zmax);
                }
                println!("   warnings: {:?}", fd.warnings);
            }
            Err(e) => println!("   fiber error {e}"),
        }
    }
}
