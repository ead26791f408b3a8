//! Generic affine-linear slices `A x - b = 0`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::poly::{cpair_mat, cpair_vec, Polynomial};
use super::rng::Rng;
use crate::error::{CoreError, Result};

/// A codimension-`k` affine-linear slice of `C^N`, together with the seed
/// used to generate its entries.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct LinearSlice {
    #[serde(with = "cpair_mat")]
    pub coeff_matrix: Vec<Vec<Complex64>>,
    #[serde(with = "cpair_vec")]
    pub offset: Vec<Complex64>,
    pub seed: u64,
}

impl LinearSlice {
    pub fn empty(seed: u64) -> Self {
        LinearSlice {
            coeff_matrix: Vec::new(),
            offset: Vec::new(),
            seed,
        }
    }

    pub fn codim(&self) -> usize {
        self.coeff_matrix.len()
    }

    pub fn num_vars(&self) -> usize {
        self.coeff_matrix.first().map_or(0, Vec::len)
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>, offset: Vec<Complex64>, seed: u64) -> Self {
        LinearSlice {
            coeff_matrix: rows,
            offset,
            seed,
        }
    }

    /// Random slice with unit-circle coefficients. If `through` is given the
    /// offset is chosen so the slice contains that point exactly.
    pub fn random(
        num_vars: usize,
        codim: usize,
        through: Option<&[Complex64]>,
        rng: &mut Rng,
    ) -> Result<LinearSlice> {
        if codim > num_vars {
            return Err(CoreError::Input(format!(
                "slice codim {codim} exceeds variable count {num_vars}"
            )));
        }
        if codim == 0 {
            return Ok(LinearSlice::empty(rng.seed()));
        }
        if let Some(p) = through {
            if p.len() != num_vars {
                return Err(CoreError::DimensionMismatch {
                    expected: num_vars,
                    got: p.len(),
                });
            }
        }
        for attempt in 0..3 {
            let rows: Vec<Vec<Complex64>> =
                (0..codim).map(|_| rng.unit_complex_vec(num_vars)).collect();
            let offset: Vec<Complex64> = match through {
                Some(p) => rows
                    .iter()
                    .map(|r| r.iter().zip(p).map(|(a, x)| a * x).sum())
                    .collect(),
                None => rng.unit_complex_vec(codim),
            };
            let slice = LinearSlice::from_rows(rows, offset, rng.seed());
            if slice.rank_ok() {
                return Ok(slice);
            }
            let _ = attempt;
        }
        Err(CoreError::RankCheckFailed { attempts: 3 })
    }

    /// Smallest singular value must exceed 1e-10 times the largest.
    pub fn rank_ok(&self) -> bool {
        if self.codim() == 0 {
            return true;
        }
        let m = DMatrix::from_fn(self.codim(), self.num_vars(), |i, j| self.coeff_matrix[i][j]);
        let sv = m.singular_values();
        let max = sv.max();
        let min = sv.min();
        max > 0.0 && min > 1e-10 * max
    }

    /// Residual of `A x - b` at a point given in this slice's variable space.
    pub fn residual(&self, point: &[Complex64]) -> f64 {
        self.coeff_matrix
            .iter()
            .zip(&self.offset)
            .map(|(row, b)| {
                let v: Complex64 = row.iter().zip(point).map(|(a, x)| a * x).sum();
                (v - b).norm_sqr()
            })
            .sum::<f64>()
            .sqrt()
    }

    /// Translate the offset by `s * v`.
    pub fn translated(&self, direction: &[Complex64], s: f64) -> LinearSlice {
        let offset = self
            .offset
            .iter()
            .zip(direction)
            .map(|(b, v)| b + v * Complex64::new(s, 0.0))
            .collect();
        LinearSlice {
            coeff_matrix: self.coeff_matrix.clone(),
            offset,
            seed: self.seed,
        }
    }

    /// Slice rows as degree-one polynomials in an ambient space of
    /// `total_vars` variables; column `j` of the slice acts on variable
    /// `var_map[j]` (identity embedding when `var_map` is `None`).
    pub fn rows_as_polys(&self, total_vars: usize, var_map: Option<&[usize]>) -> Vec<Polynomial> {
        self.coeff_matrix
            .iter()
            .zip(&self.offset)
            .map(|(row, &b)| {
                let mut coeffs = vec![Complex64::new(0.0, 0.0); total_vars];
                for (j, &a) in row.iter().enumerate() {
                    let col = var_map.map_or(j, |m| m[j]);
                    coeffs[col] += a;
                }
                Polynomial::linear(&coeffs, b)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn slice_through_point_contains_it() {
        let mut rng = Rng::from_seed(11);
        let p = [c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)];
        let s = LinearSlice::random(3, 2, Some(&p), &mut rng).unwrap();
        assert!(s.residual(&p) < 1e-14);
    }

    #[test]
    fn same_seed_same_slice() {
        let mut a = Rng::from_seed(5);
        let mut b = Rng::from_seed(5);
        let s1 = LinearSlice::random(4, 2, None, &mut a).unwrap();
        let s2 = LinearSlice::random(4, 2, None, &mut b).unwrap();
        assert_eq!(s1, s2);
    }

    #[test]
    fn codim_zero_is_empty() {
        let mut rng = Rng::from_seed(1);
        let s = LinearSlice::random(3, 0, None, &mut rng).unwrap();
        assert_eq!(s.codim(), 0);
    }

    #[test]
    fn rows_embed_into_larger_space() {
        let mut rng = Rng::from_seed(2);
        let s = LinearSlice::random(2, 1, None, &mut rng).unwrap();
        // act on variables 3 and 4 of a 5-variable space
        let polys = s.rows_as_polys(5, Some(&[3, 4]));
        assert_eq!(polys.len(), 1);
        for t in &polys[0].terms {
            let active: Vec<usize> = t
                .exponents
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, _)| i)
                .collect();
            assert!(active.iter().all(|&i| i == 3 || i == 4));
        }
    }
}
