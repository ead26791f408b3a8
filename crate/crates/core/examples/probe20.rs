//! Curve-section decomposition of the rank-one cubic (not in the API).

use joinrank_core::algebra::Rng;
use joinrank_core::membership::join_curve_section_membership;
use joinrank_core::models;
use joinrank_core::tracker::TrackOptions;
use num_complex::Complex64;

fn c(re: f64) -> Complex64 { Complex64::new(re, 0.0) }

fn main() {
    let opts = TrackOptions::default();
    let mut rng = Rng::from_seed(20160706);
    let join = models::binary_cubic_join(2, &mut rng).unwrap();
    let q = [c(1.0), c(3.0), c(3.0), c(1.0)];
    match join_curve_section_membership(&join, &q, &mut rng, &opts) {
        Ok(rep) => {
            println!(
                "in_closure {} mult {} paths {} constructible {:?} warnings {:?}",
                rep.in_closure, rep.multiplicity, rep.paths_tracked,
                match &rep.constructible {
                    joinrank_core::membership::Constructible::InJ0 { .. } => "InJ0",
                    joinrank_core::membership::Constructible::NotInJ0 => "NotInJ0",
                    joinrank_core::membership::Constructible::Inconclusive => "Inconclusive",
                },
                rep.warnings
            );
            println!("evidence: {:?}", rep.evidence);
        }
        Err(e) => println!("error: {e}"),
    }
}
