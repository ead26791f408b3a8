//! Thin dense linear-algebra helpers over complex doubles.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{CoreError, Result};

/// Solve `A x = b` by LU with partial pivoting. `None` when numerically
/// singular.
pub fn solve(a: &DMatrix<Complex64>, b: &DVector<Complex64>) -> Option<DVector<Complex64>> {
    let lu = a.clone().lu();
    let x = lu.solve(b)?;
    if x.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Some(x)
    } else {
        None
    }
}

pub fn singular_values(a: &DMatrix<Complex64>) -> Vec<f64> {
    let mut sv: Vec<f64> = a.clone().singular_values().iter().copied().collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    sv
}

/// Ratio of extreme singular values; `f64::INFINITY` for exactly singular.
pub fn condition_estimate(a: &DMatrix<Complex64>) -> f64 {
    let sv = singular_values(a);
    match (sv.first(), sv.last()) {
        (Some(&max), Some(&min)) if min > 0.0 => max / min,
        _ => f64::INFINITY,
    }
}

/// Numerical nullity of a matrix via its singular-value profile.
///
/// A singular value counts as zero when it is below `1e-8 * sigma_max`.
/// The split must be witnessed by a clean gap (ratio > 1e6 across the cut,
/// or all values on one side); otherwise the profile is ambiguous.
pub fn nullity_with_gap(a: &DMatrix<Complex64>) -> Result<usize> {
    let cols = a.ncols();
    let sv = singular_values(a);
    if sv.is_empty() {
        return Ok(cols);
    }
    let max = sv[0];
    if max == 0.0 {
        return Ok(cols);
    }
    let abs_tol = 1e-8 * max;
    let n_zero = sv.iter().filter(|&&s| s < abs_tol).count();
    let rank = sv.len() - n_zero;
    // nullity counts the trailing zero block plus any column deficit
    let nullity = cols - rank;
    if n_zero == 0 {
        // full numerical rank; demand the smallest value is comfortably away
        if sv[sv.len() - 1] > 1e-6 * max {
            return Ok(nullity);
        }
        return Err(CoreError::GapAmbiguous(format!(
            "smallest singular value {:.3e} of max {:.3e} is borderline",
            sv[sv.len() - 1],
            max
        )));
    }
    let last_kept = sv[rank - 1];
    let first_dropped = sv[rank];
    if first_dropped == 0.0 || last_kept / first_dropped > 1e6 {
        Ok(nullity)
    } else {
        Err(CoreError::GapAmbiguous(format!(
            "no clean gap: kept {:.3e}, dropped {:.3e}",
            last_kept, first_dropped
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn nullity_of_rank_deficient_matrix() {
        // rows are linearly dependent: rank 1 on 3 columns -> nullity 2
        let a = DMatrix::from_row_slice(2, 3, &[c(1.0), c(2.0), c(3.0), c(2.0), c(4.0), c(6.0)]);
        assert_eq!(nullity_with_gap(&a).unwrap(), 2);
    }

    #[test]
    fn nullity_of_full_rank_matrix() {
        let a = DMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(3.0)]);
        assert_eq!(nullity_with_gap(&a).unwrap(), 0);
    }

    #[test]
    fn ambiguous_profile_is_rejected() {
        let a = DMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(1e-7)]);
        assert!(nullity_with_gap(&a).is_err());
    }
}
