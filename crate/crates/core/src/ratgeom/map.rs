use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{dot, RatVector, Rational};
use crate::{Error, Result};

/// Exact affine map `x ↦ M·x + t` from `ℝ^{n_in}` to `ℝ^{n_out}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    n_in: usize,
    rows: Vec<RatVector>,
    translation: RatVector,
}

impl AffineMap {
    pub fn new(n_in: usize, rows: Vec<RatVector>, translation: RatVector) -> Result<Self> {
        if rows.len() != translation.len() {
            return Err(Error::Input(format!(
                "affine map has {} rows but translation of length {}",
                rows.len(),
                translation.len()
            )));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != n_in) {
            return Err(Error::DimensionMismatch { expected: n_in, found: r.len() });
        }
        Ok(AffineMap { n_in, rows, translation })
    }

    pub fn identity(n: usize) -> Self {
        let rows =
            (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect();
        AffineMap { n_in: n, rows, translation: super::zeros(n) }
    }

    /// Keeps the listed coordinates, in order.
    pub fn projection(n_in: usize, coords: &[usize]) -> Self {
        let rows = coords
            .iter()
            .map(|&c| (0..n_in).map(|j| if j == c { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        AffineMap { n_in, rows, translation: super::zeros(coords.len()) }
    }

    /// `(x, y) ↦ x + y` on `ℝⁿ × ℝⁿ`.
    pub fn addition(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..2 * n).map(|j| if j == i || j == i + n { Rational::one() } else { Rational::zero() }).collect()
            })
            .collect();
        AffineMap { n_in: 2 * n, rows, translation: super::zeros(n) }
    }

    /// Chart of an affine subspace: `u ↦ point + Σ u_j·basis_j`.
    pub fn from_columns(point: RatVector, basis: &[RatVector]) -> Self {
        let n_out = point.len();
        let rows = (0..n_out).map(|i| basis.iter().map(|b| b[i].clone()).collect()).collect();
        AffineMap { n_in: basis.len(), rows, translation: point }
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn n_out(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[RatVector] {
        &self.rows
    }

    pub fn translation(&self) -> &[Rational] {
        &self.translation
    }

    pub fn apply(&self, x: &[Rational]) -> RatVector {
        self.rows.iter().zip(&self.translation).map(|(r, t)| dot(r, x) + t).collect()
    }

    pub fn apply_linear(&self, d: &[Rational]) -> RatVector {
        self.rows.iter().map(|r| dot(r, d)).collect()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AffineMap) -> Result<AffineMap> {
        crate::error::check_dim(self.n_in, inner.n_out())?;
        let rows = self
            .rows
            .iter()
            .map(|r| {
                (0..inner.n_in)
                    .map(|j| r.iter().zip(&inner.rows).fold(Rational::zero(), |acc, (a, row)| acc + a * &row[j]))
                    .collect()
            })
            .collect();
        Ok(AffineMap { n_in: inner.n_in, rows, translation: self.apply(&inner.translation) })
    }

    /// Rank of the linear part.
    pub fn rank(&self) -> usize {
        super::rank(&self.rows)
    }
}
