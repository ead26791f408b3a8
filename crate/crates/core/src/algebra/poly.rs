//! Sparse multivariate polynomials over complex doubles.
//!
//! Systems are kept in a canonical merged form: per polynomial, no two terms
//! share an exponent vector, exact-zero coefficients are dropped, and terms
//! are sorted by descending lexicographic exponent order. Evaluation sums
//! terms in stored order, so results are bitwise deterministic.

use std::sync::OnceLock;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};

/// Serde adapter: complex numbers as two-element `[re, im]` arrays.
pub mod cpair {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(c: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
        [c.re, c.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}

/// Serde adapter for vectors of complex numbers.
pub mod cpair_vec {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(|c| [c.re, c.im]).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Complex64>, D::Error> {
        let raw = Vec::<[f64; 2]>::deserialize(d)?;
        Ok(raw.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
    }
}

/// Serde adapter for lists of complex vectors.
pub mod cpair_mat {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(
        v: &[Vec<Complex64>],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        v.iter()
            .map(|row| row.iter().map(|c| [c.re, c.im]).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Vec<Complex64>>, D::Error> {
        let raw = Vec::<Vec<[f64; 2]>>::deserialize(d)?;
        Ok(raw
            .into_iter()
            .map(|row| row.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
            .collect())
    }
}

/// One monomial: `coeff * x^exponents`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    #[serde(rename = "c", with = "cpair")]
    pub coeff: Complex64,
    #[serde(rename = "e")]
    pub exponents: Vec<u32>,
}

impl Term {
    pub fn new(coeff: Complex64, exponents: Vec<u32>) -> Self {
        Term { coeff, exponents }
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }
}

/// A sparse polynomial in canonical merged form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Polynomial {
    pub terms: Vec<Term>,
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            terms: Vec<Term>,
        }
        let raw = Raw::deserialize(d)?;
        Ok(Polynomial::from_terms(raw.terms))
    }
}

fn exp_cmp(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    // Descending lexicographic on exponent vectors.
    b.cmp(a)
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn constant(c: Complex64, num_vars: usize) -> Self {
        Polynomial::from_terms(vec![Term::new(c, vec![0; num_vars])])
    }

    /// Canonicalize: merge duplicate exponent vectors, drop exact zeros, sort.
    pub fn from_terms(mut terms: Vec<Term>) -> Self {
        terms.sort_by(|a, b| exp_cmp(&a.exponents, &b.exponents));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(prev) if prev.exponents == t.exponents => prev.coeff += t.coeff,
                _ => out.push(t),
            }
        }
        out.retain(|t| t.coeff.re != 0.0 || t.coeff.im != 0.0);
        Polynomial { terms: out }
    }

    /// Affine-linear polynomial `sum coeffs[i] x_i - offset`.
    pub fn linear(coeffs: &[Complex64], offset: Complex64) -> Self {
        let n = coeffs.len();
        let mut terms = Vec::with_capacity(n + 1);
        for (i, &c) in coeffs.iter().enumerate() {
            let mut e = vec![0u32; n];
            e[i] = 1;
            terms.push(Term::new(c, e));
        }
        terms.push(Term::new(-offset, vec![0; n]));
        Polynomial::from_terms(terms)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(Term::degree).max().unwrap_or(0)
    }

    pub fn num_vars(&self) -> Option<usize> {
        self.terms.first().map(|t| t.exponents.len())
    }

    /// Evaluate against a precomputed per-variable power table.
    pub fn eval_with_powers(&self, powers: &[Vec<Complex64>]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            let mut m = t.coeff;
            for (i, &e) in t.exponents.iter().enumerate() {
                if e > 0 {
                    m *= powers[i][e as usize];
                }
            }
            acc += m;
        }
        acc
    }

    pub fn evaluate(&self, point: &[Complex64]) -> Complex64 {
        let powers = power_table_for(&[self], point);
        self.eval_with_powers(&powers)
    }

    /// Symbolic partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut terms = Vec::new();
        for t in &self.terms {
            let e = t.exponents[var];
            if e > 0 {
                let mut exps = t.exponents.clone();
                exps[var] = e - 1;
                terms.push(Term::new(t.coeff * e as f64, exps));
            }
        }
        Polynomial::from_terms(terms)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Polynomial::from_terms(terms)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> Polynomial {
        Polynomial::from_terms(
            self.terms
                .iter()
                .map(|t| Term::new(t.coeff * c, t.exponents.clone()))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let exps: Vec<u32> = a
                    .exponents
                    .iter()
                    .zip(&b.exponents)
                    .map(|(x, y)| x + y)
                    .collect();
                terms.push(Term::new(a.coeff * b.coeff, exps));
            }
        }
        Polynomial::from_terms(terms)
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let n = self.num_vars().unwrap_or(0);
        let mut acc = Polynomial::constant(Complex64::new(1.0, 0.0), n);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Re-embed into a larger variable space: variable `i` maps to `map[i]`.
    pub fn embed(&self, total_vars: usize, map: &[usize]) -> Polynomial {
        Polynomial::from_terms(
            self.terms
                .iter()
                .map(|t| {
                    let mut e = vec![0u32; total_vars];
                    for (i, &exp) in t.exponents.iter().enumerate() {
                        e[map[i]] += exp;
                    }
                    Term::new(t.coeff, e)
                })
                .collect(),
        )
    }
}

fn power_table_for(polys: &[&Polynomial], point: &[Complex64]) -> Vec<Vec<Complex64>> {
    let n = point.len();
    let mut max_exp = vec![0u32; n];
    for p in polys {
        for t in &p.terms {
            for (i, &e) in t.exponents.iter().enumerate() {
                max_exp[i] = max_exp[i].max(e);
            }
        }
    }
    build_power_table(point, &max_exp)
}

pub(crate) fn build_power_table(point: &[Complex64], max_exp: &[u32]) -> Vec<Vec<Complex64>> {
    point
        .iter()
        .zip(max_exp)
        .map(|(&x, &m)| {
            let mut row = Vec::with_capacity(m as usize + 1);
            row.push(Complex64::new(1.0, 0.0));
            for k in 1..=m as usize {
                let prev = row[k - 1];
                row.push(prev * x);
            }
            row
        })
        .collect()
}

/// A system of sparse polynomials in a common variable space.
#[derive(Debug, Serialize)]
pub struct PolynomialSystem {
    pub num_vars: usize,
    pub polys: Vec<Polynomial>,
    #[serde(skip)]
    partials: OnceLock<Vec<Vec<Polynomial>>>,
    #[serde(skip)]
    max_exps: OnceLock<Vec<u32>>,
}

impl Clone for PolynomialSystem {
    fn clone(&self) -> Self {
        PolynomialSystem {
            num_vars: self.num_vars,
            polys: self.polys.clone(),
            partials: OnceLock::new(),
            max_exps: OnceLock::new(),
        }
    }
}

impl PartialEq for PolynomialSystem {
    fn eq(&self, other: &Self) -> bool {
        self.num_vars == other.num_vars && self.polys == other.polys
    }
}

impl<'de> Deserialize<'de> for PolynomialSystem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            num_vars: usize,
            polys: Vec<Polynomial>,
        }
        let raw = Raw::deserialize(d)?;
        PolynomialSystem::new(raw.num_vars, raw.polys).map_err(serde::de::Error::custom)
    }
}

impl PolynomialSystem {
    pub fn new(num_vars: usize, polys: Vec<Polynomial>) -> Result<Self> {
        for p in &polys {
            for t in &p.terms {
                if t.exponents.len() != num_vars {
                    return Err(CoreError::DimensionMismatch {
                        expected: num_vars,
                        got: t.exponents.len(),
                    });
                }
                if !t.coeff.re.is_finite() || !t.coeff.im.is_finite() {
                    return Err(CoreError::Input("non-finite coefficient".into()));
                }
            }
        }
        Ok(PolynomialSystem {
            num_vars,
            polys,
            partials: OnceLock::new(),
            max_exps: OnceLock::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.polys.iter().map(Polynomial::degree).collect()
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

    pub fn evaluate(&self, point: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_point(point)?;
        let powers = build_power_table(point, self.max_exps());
        Ok(self.polys.iter().map(|p| p.eval_with_powers(&powers)).collect())
    }

    pub fn residual(&self, point: &[Complex64]) -> Result<f64> {
        let vals = self.evaluate(point)?;
        Ok(vals.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt())
    }

    fn partials(&self) -> &Vec<Vec<Polynomial>> {
        self.partials.get_or_init(|| {
            self.polys
                .iter()
                .map(|p| (0..self.num_vars).map(|v| p.derivative(v)).collect())
                .collect()
        })
    }

    pub fn jacobian(&self, point: &[Complex64]) -> Result<DMatrix<Complex64>> {
        self.check_point(point)?;
        let powers = build_power_table(point, self.max_exps());
        let parts = self.partials();
        let m = self.polys.len();
        let n = self.num_vars;
        Ok(DMatrix::from_fn(m, n, |i, j| parts[i][j].eval_with_powers(&powers)))
    }

    /// Concatenate additional rows (same variable space).
    pub fn appended(&self, rows: &[Polynomial]) -> Result<PolynomialSystem> {
        let mut polys = self.polys.clone();
        polys.extend(rows.iter().cloned());
        PolynomialSystem::new(self.num_vars, polys)
    }

    /// Re-embed all rows into a larger variable space via `map`.
    pub fn embed(&self, total_vars: usize, map: &[usize]) -> Result<PolynomialSystem> {
        let polys = self.polys.iter().map(|p| p.embed(total_vars, map)).collect();
        PolynomialSystem::new(total_vars, polys)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// f = {x1^2 - x2, x1^3 + x3} in C^3.
    pub(crate) fn twisted_cubic_like() -> PolynomialSystem {
        let f1 = Polynomial::from_terms(vec![
            Term::new(c(1.0, 0.0), vec![2, 0, 0]),
            Term::new(c(-1.0, 0.0), vec![0, 1, 0]),
        ]);
        let f2 = Polynomial::from_terms(vec![
            Term::new(c(1.0, 0.0), vec![3, 0, 0]),
            Term::new(c(1.0, 0.0), vec![0, 0, 1]),
        ]);
        PolynomialSystem::new(3, vec![f1, f2]).unwrap()
    }

    #[test]
    fn evaluate_on_points_of_the_variety() {
        let f = twisted_cubic_like();
        for p in [
            vec![c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            vec![
                c(-1.0 / 3.0, 0.0),
                c(1.0 / 9.0, 0.0),
                c(1.0 / 27.0, 0.0),
            ],
        ] {
            let vals = f.evaluate(&p).unwrap();
            for v in vals {
                assert!(v.norm() < 1e-15, "expected zero, got {v}");
            }
        }
    }

    #[test]
    fn jacobian_matches_hand_computation() {
        let f = twisted_cubic_like();
        let j = f
            .jacobian(&[c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)])
            .unwrap();
        let expect = [[2.0, -1.0, 0.0], [3.0, 0.0, 1.0]];
        for i in 0..2 {
            for k in 0..3 {
                assert!((j[(i, k)] - c(expect[i][k], 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn jacobian_vanishes_at_origin_for_high_degree_terms() {
        let p = Polynomial::from_terms(vec![
            Term::new(c(2.0, 1.0), vec![2, 1]),
            Term::new(c(-3.0, 0.0), vec![0, 3]),
        ]);
        let f = PolynomialSystem::new(2, vec![p]).unwrap();
        let j = f.jacobian(&[c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(j[(0, 0)].norm() == 0.0 && j[(0, 1)].norm() == 0.0);
    }

    #[test]
    fn univariate_derivative() {
        // f = x^2 - y at (2,4): df = [4, -1]
        let p = Polynomial::from_terms(vec![
            Term::new(c(1.0, 0.0), vec![2, 0]),
            Term::new(c(-1.0, 0.0), vec![0, 1]),
        ]);
        let f = PolynomialSystem::new(2, vec![p]).unwrap();
        let j = f.jacobian(&[c(2.0, 0.0), c(4.0, 0.0)]).unwrap();
        assert_eq!(j[(0, 0)], c(4.0, 0.0));
        assert_eq!(j[(0, 1)], c(-1.0, 0.0));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let f = twisted_cubic_like();
        assert!(f.evaluate(&[c(1.0, 0.0)]).is_err());
    }

    #[test]
    fn canonical_form_merges_and_sorts() {
        let p = Polynomial::from_terms(vec![
            Term::new(c(1.0, 0.0), vec![0, 1]),
            Term::new(c(2.0, 0.0), vec![1, 0]),
            Term::new(c(3.0, 0.0), vec![0, 1]),
            Term::new(c(-2.0, 0.0), vec![1, 0]),
        ]);
        // x-terms cancel exactly; y-terms merge.
        assert_eq!(p.terms.len(), 1);
        assert_eq!(p.terms[0].coeff, c(4.0, 0.0));
    }

    #[test]
    fn serde_round_trip_is_idempotent() {
        let f = twisted_cubic_like();
        let json = serde_json::to_string(&f).unwrap();
        let back: PolynomialSystem = serde_json::from_str(&json).unwrap();
        assert_eq!(f, back);
        let json2 = serde_json::to_string(&back).unwrap();
        assert_eq!(json, json2);
    }

    #[test]
    fn zero_polynomial_evaluates_to_zero() {
        let f = PolynomialSystem::new(2, vec![Polynomial::zero()]).unwrap();
        let v = f.evaluate(&[c(3.0, 1.0), c(-2.0, 0.5)]).unwrap();
        assert_eq!(v[0], c(0.0, 0.0));
    }
}
