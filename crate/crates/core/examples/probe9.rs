//! Boundary confirm diagnostics (not part of the API).

use joinrank_core::algebra::Rng;
use joinrank_core::boundary::join_boundary_candidates;
use joinrank_core::membership::fiber_decomposition;
use joinrank_core::models;
use joinrank_core::tracker::TrackOptions;

fn main() {
    let opts = TrackOptions::default();
    let mut rng = Rng::from_seed(20160706);
    let join = models::binary_cubic_join(2, &mut rng).unwrap();
    let section = models::tangential_section();
    let result = join_boundary_candidates(&join, &mut rng, &opts, Some(section)).unwrap();
    println!("candidates: {}", result.candidates.len());
    for (c, n) in result.candidates.iter().zip(&result.path_counts) {
        let q = models::tangential_quartic_value(c).norm();
        println!(
            "  ({:.4}, {:.4}, {:.4}, {:.4}) paths {} quartic {:.2e}",
            c[0].re, c[1].re, c[2].re, c[3].re, n, q
        );
    }

    for cand in result.candidates.iter().take(1) {
        match fiber_decomposition(&join, cand, &mut rng, &opts) {
            Ok(fd) => println!(
                "fiber: nonempty {} stage_counts {:?} warnings {:?}",
                fd.nonempty, fd.stage_counts, fd.warnings
            ),
            Err(e) => println!("fiber error: {e}"),
        }
    }
}
