//! Thomas algorithm for tridiagonal systems.
//!
//! The backward-Euler matrices do not change between time steps, so the
//! elimination is split into a one-time factorization ([`TridiagonalLu`]) and a
//! cheap per-step substitution.

use crate::error::{Error, Result};

/// LU factors of a tridiagonal matrix without pivoting.
#[derive(Debug, Clone)]
pub struct TridiagonalLu {
    lower: Vec<f64>,
    /// Reciprocal pivots.
    inv_pivot: Vec<f64>,
    /// Normalized super-diagonal `upper[i] / pivot[i]`.
    upper_scaled: Vec<f64>,
}

impl TridiagonalLu {
    /// Factors the matrix with sub-diagonal `lower` (length `n-1`), diagonal
    /// `diag` (length `n`) and super-diagonal `upper` (length `n-1`).
    pub fn factor(lower: &[f64], diag: &[f64], upper: &[f64]) -> Result<Self> {
        let n = diag.len();
        if n == 0 {
            return Err(Error::DimensionMismatch {
                what: "tridiagonal diagonal",
                expected: 1,
                found: 0,
            });
        }
        for (what, band) in [("sub-diagonal", lower), ("super-diagonal", upper)] {
            if band.len() != n - 1 {
                return Err(Error::DimensionMismatch {
                    what,
                    expected: n - 1,
                    found: band.len(),
                });
            }
        }

        let mut inv_pivot = Vec::with_capacity(n);
        let mut upper_scaled = Vec::with_capacity(n - 1);
        let mut pivot = diag[0];
        for i in 0..n {
            if i > 0 {
                pivot = diag[i] - lower[i - 1] * upper_scaled[i - 1];
            }
            if pivot == 0.0 || !pivot.is_finite() {
                return Err(Error::SingularSystem { row: i });
            }
            inv_pivot.push(1.0 / pivot);
            if i + 1 < n {
                upper_scaled.push(upper[i] / pivot);
            }
        }
        Ok(Self {
            lower: lower.to_vec(),
            inv_pivot,
            upper_scaled,
        })
    }

    pub fn len(&self) -> usize {
        self.inv_pivot.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inv_pivot.is_empty()
    }

    /// Overwrites `rhs` with the solution.
    pub fn solve_in_place(&self, rhs: &mut [f64]) {
        let n = self.len();
        assert_eq!(rhs.len(), n, "right-hand side length");
        rhs[0] *= self.inv_pivot[0];
        for i in 1..n {
            rhs[i] = (rhs[i] - self.lower[i - 1] * rhs[i - 1]) * self.inv_pivot[i];
        }
        for i in (0..n - 1).rev() {
            rhs[i] -= self.upper_scaled[i] * rhs[i + 1];
        }
    }
}

/// Solves `A x = rhs` for tridiagonal `A`. Inputs are not modified.
///
/// `lower` and `upper` have length `n - 1`; `lower[i]` multiplies `x[i]` in row
/// `i + 1` and `upper[i]` multiplies `x[i + 1]` in row `i`.
pub fn thomas_solve(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64]) -> Result<Vec<f64>> {
    if rhs.len() != diag.len() {
        return Err(Error::DimensionMismatch {
            what: "right-hand side",
            expected: diag.len(),
            found: rhs.len(),
        });
    }
    let lu = TridiagonalLu::factor(lower, diag, upper)?;
    let mut x = rhs.to_vec();
    lu.solve_in_place(&mut x);
    Ok(x)
}
