//! Ex 4.2-style center transport diagnostics (not in the API).

use joinrank_core::algebra::Rng;
use joinrank_core::models;
use joinrank_core::realness::{parameter_homotopy_center, solve_critical_complex, CriticalProblem};
use joinrank_core::tracker::TrackOptions;
use num_complex::Complex64;

fn c(re: f64) -> Complex64 { Complex64::new(re, 0.0) }

fn main() {
    let opts = TrackOptions::default();
    let mut rng = Rng::from_seed(20160706);
    let setup = models::circle_incidence();
    let problem = CriticalProblem::new(&setup.system, Some(vec![0, 1]), &mut rng).unwrap();

    let q: Vec<Complex64> = rng.unit_complex_vec(2);
    let generic = solve_critical_complex(&problem, &q, &mut rng, &opts).unwrap();
    println!("generic count_x = {} count_xl = {}", generic.count_x, generic.count_x_lambda);
    for p in &generic.points {
        println!("  x = ({:.4}{:+.4}i, {:.4}{:+.4}i, s = {:.4}{:+.4}i) proj_only {}",
            p.x[0].re, p.x[0].im, p.x[1].re, p.x[1].im, p.x[2].re, p.x[2].im, p.projected_only);
    }
    let target = [c(0.0), c(-2.0)];
    let moved = parameter_homotopy_center(&problem, &generic, &target, &mut rng, &opts).unwrap();
    println!("moved: {} points, warnings {:?}", moved.points.len(), moved.warnings);
    for p in &moved.points {
        println!("  x = ({:.6}{:+.2e}i, {:.6}{:+.2e}i) |s| = {:.3e} proj_only {} real {}",
            p.x[0].re, p.x[0].im, p.x[1].re, p.x[1].im, p.x[2].norm(), p.projected_only, p.is_real);
    }
}
