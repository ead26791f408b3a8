//! Homotopies with coefficients affine-linear in a real parameter `t`.
//!
//! A segment homotopy between systems `start` and `target` has rows
//! `t * gamma * start_i + (1 - t) * target_i`. Rows that are bitwise equal
//! in both systems are kept constant (no gamma factor), which realizes
//! slice-moving deformations where only the linear rows deform while the
//! witness system stays fixed. At `t = 0` the homotopy reproduces the
//! target's coefficients exactly.

use std::sync::OnceLock;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::poly::{build_power_table, Polynomial, PolynomialSystem, Term};
use crate::error::{CoreError, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone)]
pub struct TTerm {
    pub coeff_at_t1: Complex64,
    pub coeff_at_t0: Complex64,
    pub exponents: Vec<u32>,
}

impl TTerm {
    fn coeff(&self, t: f64) -> Complex64 {
        self.coeff_at_t1 * t + self.coeff_at_t0 * (1.0 - t)
    }
}

#[derive(Debug, Clone)]
pub struct TPoly {
    pub terms: Vec<TTerm>,
}

#[derive(Debug)]
pub struct Homotopy {
    pub num_vars: usize,
    pub polys: Vec<TPoly>,
    pub gamma: Complex64,
    partials: OnceLock<Vec<Vec<TPoly>>>,
    max_exps: OnceLock<Vec<u32>>,
}

impl Clone for Homotopy {
    fn clone(&self) -> Self {
        Homotopy {
            num_vars: self.num_vars,
            polys: self.polys.clone(),
            gamma: self.gamma,
            partials: OnceLock::new(),
            max_exps: OnceLock::new(),
        }
    }
}

impl Homotopy {
    /// Gamma-trick segment homotopy. `start` and `target` must have the same
    /// shape. Rows equal in both systems stay constant along the path.
    pub fn segment(
        start: &PolynomialSystem,
        target: &PolynomialSystem,
        gamma: Complex64,
    ) -> Result<Homotopy> {
        if start.num_vars != target.num_vars {
            return Err(CoreError::DimensionMismatch {
                expected: target.num_vars,
                got: start.num_vars,
            });
        }
        if start.len() != target.len() {
            return Err(CoreError::Input(format!(
                "equation count mismatch: start {} vs target {}",
                start.len(),
                target.len()
            )));
        }
        if (gamma.norm() - 1.0).abs() > 1e-12 {
            return Err(CoreError::Input("gamma must have unit modulus".into()));
        }
        let polys = start
            .polys
            .iter()
            .zip(&target.polys)
            .map(|(s, tp)| {
                if s == tp {
                    TPoly {
                        terms: s
                            .terms
                            .iter()
                            .map(|t| TTerm {
                                coeff_at_t1: t.coeff,
                                coeff_at_t0: t.coeff,
                                exponents: t.exponents.clone(),
                            })
                            .collect(),
                    }
                } else {
                    merge_row(s, tp, gamma)
                }
            })
            .collect();
        Ok(Homotopy {
            num_vars: start.num_vars,
            polys,
            gamma,
            partials: OnceLock::new(),
            max_exps: OnceLock::new(),
        })
    }

    fn max_exps(&self) -> &[u32] {
        self.max_exps.get_or_init(|| {
            let mut max_exp = vec![0u32; self.num_vars];
            for p in &self.polys {
                for t in &p.terms {
                    for (i, &e) in t.exponents.iter().enumerate() {
                        max_exp[i] = max_exp[i].max(e);
                    }
                }
            }
            max_exp
        })
    }

    fn check_point(&self, point: &[Complex64]) -> Result<()> {
        if point.len() != self.num_vars {
            return Err(CoreError::DimensionMismatch {
                expected: self.num_vars,
                got: point.len(),
            });
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn eval(&self, point: &[Complex64], t: f64) -> Result<Vec<Complex64>> {
        self.check_point(point)?;
        let powers = build_power_table(point, self.max_exps());
        Ok(self
            .polys
            .iter()
            .map(|p| eval_tpoly(p, &powers, t))
            .collect())
    }

    pub fn residual(&self, point: &[Complex64], t: f64) -> Result<f64> {
        let v = self.eval(point, t)?;
        Ok(v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
    }

    fn partials(&self) -> &Vec<Vec<TPoly>> {
        self.partials.get_or_init(|| {
            self.polys
                .iter()
                .map(|p| (0..self.num_vars).map(|v| tpoly_derivative(p, v)).collect())
                .collect()
        })
    }

    /// Jacobian with respect to the space variables, at parameter `t`.
    pub fn jacobian_x(&self, point: &[Complex64], t: f64) -> Result<DMatrix<Complex64>> {
        self.check_point(point)?;
        let powers = build_power_table(point, self.max_exps());
        let parts = self.partials();
        Ok(DMatrix::from_fn(self.polys.len(), self.num_vars, |i, j| {
            eval_tpoly(&parts[i][j], &powers, t)
        }))
    }

    /// Derivative with respect to `t` (independent of `t` itself).
    pub fn dt(&self, point: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_point(point)?;
        let powers = build_power_table(point, self.max_exps());
        Ok(self
            .polys
            .iter()
            .map(|p| {
                let mut acc = ZERO;
                for term in &p.terms {
                    let dc = term.coeff_at_t1 - term.coeff_at_t0;
                    if dc == ZERO {
                        continue;
                    }
                    let mut m = dc;
                    for (i, &e) in term.exponents.iter().enumerate() {
                        if e > 0 {
                            m *= powers[i][e as usize];
                        }
                    }
                    acc += m;
                }
                acc
            })
            .collect())
    }

    /// The frozen system at a given `t`. At `t = 0` the coefficients are
    /// bitwise equal to the target the homotopy was built from.
    pub fn system_at(&self, t: f64) -> PolynomialSystem {
        let polys = self
            .polys
            .iter()
            .map(|p| {
                Polynomial::from_terms(
                    p.terms
                        .iter()
                        .map(|term| Term::new(term.coeff(t), term.exponents.clone()))
                        .collect(),
                )
            })
            .collect();
        PolynomialSystem::new(self.num_vars, polys).expect("shape preserved")
    }

    pub fn target(&self) -> PolynomialSystem {
        self.system_at(0.0)
    }
}

fn merge_row(start: &Polynomial, target: &Polynomial, gamma: Complex64) -> TPoly {
    // Union of supports; both inputs are canonical (sorted descending).
    let mut terms = Vec::with_capacity(start.terms.len() + target.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < start.terms.len() || j < target.terms.len() {
        let take_start = match (start.terms.get(i), target.terms.get(j)) {
            (Some(a), Some(b)) => {
                if a.exponents == b.exponents {
                    terms.push(TTerm {
                        coeff_at_t1: gamma * a.coeff,
                        coeff_at_t0: b.coeff,
                        exponents: a.exponents.clone(),
                    });
                    i += 1;
                    j += 1;
                    continue;
                }
                // canonical order is descending lexicographic
                a.exponents > b.exponents
            }
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (None, None) => break,
        };
        if take_start {
            let a = &start.terms[i];
            terms.push(TTerm {
                coeff_at_t1: gamma * a.coeff,
                coeff_at_t0: ZERO,
                exponents: a.exponents.clone(),
            });
            i += 1;
        } else {
            let b = &target.terms[j];
            terms.push(TTerm {
                coeff_at_t1: ZERO,
                coeff_at_t0: b.coeff,
                exponents: b.exponents.clone(),
            });
            j += 1;
        }
    }
    TPoly { terms }
}

fn eval_tpoly(p: &TPoly, powers: &[Vec<Complex64>], t: f64) -> Complex64 {
    let mut acc = ZERO;
    for term in &p.terms {
        let c = term.coeff(t);
        if c == ZERO {
            // skip exact zeros so 0 * overflowed powers cannot produce NaN
            continue;
        }
        let mut m = c;
        for (i, &e) in term.exponents.iter().enumerate() {
            if e > 0 {
                m *= powers[i][e as usize];
            }
        }
        acc += m;
    }
    acc
}

fn tpoly_derivative(p: &TPoly, var: usize) -> TPoly {
    let mut terms = Vec::new();
    for t in &p.terms {
        let e = t.exponents[var];
        if e > 0 {
            let mut exps = t.exponents.clone();
            exps[var] = e - 1;
            terms.push(TTerm {
                coeff_at_t1: t.coeff_at_t1 * e as f64,
                coeff_at_t0: t.coeff_at_t0 * e as f64,
                exponents: exps,
            });
        }
    }
    TPoly { terms }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rng::Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn univariate(coeffs: &[(f64, u32)]) -> PolynomialSystem {
        let p = Polynomial::from_terms(
            coeffs
                .iter()
                .map(|&(co, e)| Term::new(c(co, 0.0), vec![e]))
                .collect(),
        );
        PolynomialSystem::new(1, vec![p]).unwrap()
    }

    #[test]
    fn midpoint_of_coefficients() {
        // start = x^2 - 1, target = x^2 - 4, gamma = 1: H(., 1/2) = x^2 - 5/2
        let start = univariate(&[(1.0, 2), (-1.0, 0)]);
        let target = univariate(&[(1.0, 2), (-4.0, 0)]);
        let h = Homotopy::segment(&start, &target, c(1.0, 0.0)).unwrap();
        let sys = h.system_at(0.5);
        assert_eq!(sys.polys[0].terms[0].coeff, c(1.0, 0.0));
        assert_eq!(sys.polys[0].terms[1].coeff, c(-2.5, 0.0));
    }

    #[test]
    fn endpoint_identity_is_bit_exact() {
        let mut rng = Rng::from_seed(9);
        for _ in 0..10 {
            let start = univariate(&[(rng.real_in(-2.0, 2.0), 3), (rng.real_in(-2.0, 2.0), 0)]);
            let target = univariate(&[(rng.real_in(-2.0, 2.0), 3), (rng.real_in(-2.0, 2.0), 1)]);
            let gamma = rng.unit_complex();
            let h = Homotopy::segment(&start, &target, gamma).unwrap();
            assert_eq!(h.target(), target);
        }
    }

    #[test]
    fn identical_rows_stay_constant() {
        let f = univariate(&[(1.0, 2), (-1.0, 0)]);
        let h = Homotopy::segment(&f, &f, c(0.6, 0.8)).unwrap();
        for t in &h.polys[0].terms {
            assert_eq!(t.coeff_at_t1, t.coeff_at_t0);
        }
    }

    #[test]
    fn dt_matches_finite_difference() {
        let start = univariate(&[(2.0, 2), (1.0, 0)]);
        let target = univariate(&[(-1.0, 2), (3.0, 1)]);
        let h = Homotopy::segment(&start, &target, c(1.0, 0.0)).unwrap();
        let x = [c(1.3, -0.4)];
        let dt = h.dt(&x).unwrap()[0];
        let eps = 1e-7;
        let fd = (h.eval(&x, 0.5 + eps).unwrap()[0] - h.eval(&x, 0.5 - eps).unwrap()[0])
            / c(2.0 * eps, 0.0);
        assert!((dt - fd).norm() < 1e-6);
    }
}
