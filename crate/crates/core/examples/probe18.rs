//! Second-section reproduction diagnostics (not in the API).

use joinrank_core::algebra::{LinearSlice, Rng};
use joinrank_core::boundary::{boundary_candidates, join_boundary_candidates};
use joinrank_core::models;
use joinrank_core::solver::rel_dist;
use joinrank_core::tracker::TrackOptions;

fn main() {
    let opts = TrackOptions::default();
    let mut rng = Rng::from_seed(20160706);
    let join = models::binomial_cubic_join(2, &mut rng).unwrap();
    let section = models::tangential_section();
    let result = join_boundary_candidates(&join, &mut rng, &opts, Some(section)).unwrap();
    for (i, cand) in result.candidates.iter().enumerate() {
        println!(
            "cand {i}: ({:.5}, {:.5}, {:.5}, {:.5}) depth {:.0}",
            cand[0].re, cand[1].re, cand[2].re, cand[3].re, result.depths[i]
        );
        for attempt in 0..2 {
            let s2 = LinearSlice::random(4, 3, Some(cand), &mut rng).unwrap();
            match boundary_candidates(&join.setup(), 4, &mut rng, &opts, Some(s2)) {
                Ok(second) => {
                    let best = second
                        .candidates
                        .iter()
                        .zip(&second.depths)
                        .map(|(c2, &d2)| (rel_dist(c2, cand), d2))
                        .min_by(|a, b| a.0.total_cmp(&b.0));
                    println!("   attempt {attempt}: {} candidates, closest {:?}", second.candidates.len(), best);
                }
                Err(e) => println!("   attempt {attempt}: error {e}"),
            }
        }
    }
}
