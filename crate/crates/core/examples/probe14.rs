//! Compare refined boundary parameters with the quartic's exact roots.

use joinrank_core::models;
use num_complex::Complex64;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn main() {
    // line: P(u) = (2 - 3u, -3 + 4u, 4 + 2u, u)
    let p_of = |u: f64| vec![c(2.0 - 3.0 * u), c(-3.0 + 4.0 * u), c(4.0 + 2.0 * u), c(u)];
    let q = |u: f64| models::tangential_quartic_value(&p_of(u)).norm();

    // bisect the quartic on the line near each reference root
    for u0 in [-0.103f64, 0.661, 12.581, -0.776] {
        let mut lo = u0 - 0.02;
        let mut hi = u0 + 0.02;
        let qv = |u: f64| {
            let p = p_of(u);
            let v = models::tangential_quartic_value(&p);
            v.re
        };
        if qv(lo).signum() == qv(hi).signum() {
            println!("u0 {u0}: no sign change in bracket, q(lo) {:.3e} q(hi) {:.3e}", qv(lo), qv(hi));
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if qv(mid).signum() == qv(lo).signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let u_star = 0.5 * (lo + hi);
        let p = p_of(u_star);
        println!(
            "exact root u* = {u_star:.12}: P = ({:.6}, {:.6}, {:.6}, {:.6}), |q| = {:.2e}",
            p[0].re, p[1].re, p[2].re, p[3].re, q(u_star)
        );
    }
}
