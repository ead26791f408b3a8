//! Scratch diagnostics for path-tracking behavior (not part of the API).

use joinrank_core::algebra::{Homotopy, Rng};
use joinrank_core::models;
use joinrank_core::tracker::{track, TrackOptions};

fn main() {
    let mut rng = Rng::from_seed(20160706);
    let join = models::binary_cubic_join(2, &mut rng).unwrap();
    let start = models::x2y_rank2_start();
    let p_star = join.image_of_fiber_point(&start).unwrap();
    println!("P* = {:?}", p_star);

    for gamma_seed in 0..6u64 {
        let mut g = Rng::from_seed(1000 + gamma_seed);
        let gamma = g.unit_complex();
        let h = Homotopy::segment(
            &join.fiber_system(&p_star).unwrap(),
            &join.fiber_system(&models::x2y_point()).unwrap(),
            gamma,
        )
        .unwrap();
        let opts = TrackOptions::default();
        let r = track(&h, &start, &opts).unwrap();
        let blow = r.endpoint.iter().map(|z| z.norm()).fold(0.0, f64::max);
        println!(
            "gamma {gamma:.3}: status {:?} t_reached {:.3e} steps {} max|x| {:.3e} residual {:.3e}",
            r.status, r.t_reached, r.steps_taken, blow, r.residual
        );
        for (t, x) in &r.samples {
            let m = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
            println!("   sample t={t:.2e} max|x|={m:.3e}");
        }
    }
}
