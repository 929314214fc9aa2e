//! Convolution, the γ-projector and composition of kernels.

use alloc::format;
use alloc::vec::Vec;

use num_traits::Zero;

use super::{AffineCF, Budget, PolyhedronSpec, Relation};
use crate::error::check_dim;
use crate::ratgeom::{rank, strict_feasible, AffineForm, AffineMap, RatVector};
use crate::{Error, Result};

/// A closed convex proper polyhedral cone `{x : g_i(x) ≥ 0}` with nonempty
/// interior, stored by its irredundant inward normals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    dim: usize,
    normals: Vec<AffineForm>,
}

impl Cone {
    /// Validates a cone description. Constraints must be homogeneous and
    /// closed (`≥` or `≤`); implied constraints are dropped before checking
    /// that the cone is proper and full-dimensional.
    pub fn new(spec: &PolyhedronSpec) -> Result<Cone> {
        let n = spec.dim;
        let mut normals = Vec::new();
        for (f, rel) in &spec.constraints {
            check_dim(n, f.dim())?;
            if !f.constant.is_zero() {
                return Err(Error::Input(format!("cone constraint {f:?} is not homogeneous")));
            }
            let g = match rel {
                Relation::Ge => f.clone(),
                Relation::Le => f.negated(),
                other => {
                    return Err(Error::Input(format!(
                        "cone constraints must be closed inequalities, got {}",
                        other.symbol()
                    )))
                }
            };
            if !g.is_constant() {
                normals.push(g.normalized().0);
            }
        }
        normals.sort();
        normals.dedup();
        if strict_feasible(n, &[], &normals, &[])?.is_none() {
            return Err(Error::Input("cone has empty interior".into()));
        }
        let mut i = 0;
        while i < normals.len() {
            let others: Vec<AffineForm> =
                normals.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
            if strict_feasible(n, &[], &others, core::slice::from_ref(&normals[i]))?.is_none() {
                normals.remove(i);
            } else {
                i += 1;
            }
        }
        let linear: Vec<RatVector> = normals.iter().map(|g| g.linear.clone()).collect();
        if rank(&linear) != n {
            return Err(Error::Input("cone is not proper (contains a line)".into()));
        }
        Ok(Cone { dim: n, normals })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn normals(&self) -> &[AffineForm] {
        &self.normals
    }

    /// `1_{−γ}`.
    pub fn antipodal_indicator(&self) -> AffineCF {
        let spec = self.normals.iter().fold(PolyhedronSpec::new(self.dim), |s, g| s.with(g.negated(), Relation::Ge));
        AffineCF::indicator(&spec).expect("validated cone")
    }

    /// A point in the interior of the cone.
    pub fn interior_point(&self) -> RatVector {
        strict_feasible(self.dim, &[], &self.normals, &[]).expect("validated cone").expect("validated cone")
    }
}

impl AffineCF {
    fn product_checked(&self, other: &AffineCF, budget: &Budget) -> Result<AffineCF> {
        budget.check(self.arr.len().saturating_mul(other.arr.len()))?;
        Ok(self.external_product(other))
    }

    /// `φ ⋆ ψ = ∫_s φ ⊠ ψ` with `s(x, y) = x + y`.
    pub fn convolve(&self, other: &AffineCF, budget: &Budget) -> Result<AffineCF> {
        check_dim(self.dim(), other.dim())?;
        self.product_checked(other, budget)?.pushforward(&AffineMap::addition(self.dim()), budget)
    }

    /// `φ ⊛ ψ = ∫^np_s φ ⊠ ψ`.
    pub fn convolve_np(&self, other: &AffineCF, budget: &Budget) -> Result<AffineCF> {
        check_dim(self.dim(), other.dim())?;
        self.product_checked(other, budget)?.pushforward_np(&AffineMap::addition(self.dim()), budget)
    }

    /// Projection onto γ-constructible functions: `φ ⊛ 1_{−γ}`.
    pub fn gamma_project(&self, gamma: &Cone, budget: &Budget) -> Result<AffineCF> {
        check_dim(self.dim(), gamma.dim())?;
        self.convolve_np(&gamma.antipodal_indicator(), budget)
    }

    /// Necessary condition for γ-constructibility: at every cell the value
    /// equals the value just behind it, `φ(x) = φ(x − εv)`, for each given
    /// direction `v` in the interior of γ.
    pub fn is_gamma_constructible(&self, gamma: &Cone, directions: &[RatVector]) -> Result<bool> {
        for v in directions {
            check_dim(self.dim(), v.len())?;
            if !gamma.normals.iter().all(|g| g.slope(v) > Zero::zero()) {
                return Err(Error::Input("direction is not interior to the cone".into()));
            }
        }
        for (cell, value) in self.arr.cells().iter().zip(&self.values) {
            for v in directions {
                let behind: Vec<_> = self
                    .arr
                    .forms()
                    .iter()
                    .zip(&cell.signs)
                    .map(|(f, s)| match s {
                        crate::Sign::Zero => crate::ratgeom::Sign::of(&-f.slope(v)),
                        other => *other,
                    })
                    .collect();
                let j = self.arr.find(&behind).ok_or_else(|| Error::Internal("neighbouring cell missing".into()))?;
                if self.values[j] != *value {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Kernel composition `λ12 ∘ λ23 = ∫_{q13} q12*λ12 · q23*λ23` on
    /// `ℝ^{n1} × ℝ^{n2} × ℝ^{n3}`, where `middle = n2`.
    pub fn compose_kernels(&self, other: &AffineCF, middle: usize, budget: &Budget) -> Result<AffineCF> {
        if middle > self.dim() || middle > other.dim() {
            return Err(Error::Input(format!(
                "middle dimension {middle} exceeds kernel dimensions {} / {}",
                self.dim(),
                other.dim()
            )));
        }
        let n1 = self.dim() - middle;
        let n3 = other.dim() - middle;
        let left = self.product_checked(&AffineCF::constant(n3, 1), budget)?;
        let right = AffineCF::constant(n1, 1).product_checked(other, budget)?;
        let product = left.multiply(&right)?;
        budget.check(product.arrangement().len())?;
        let total = n1 + middle + n3;
        let keep: Vec<usize> = (0..n1).chain(n1 + middle..total).collect();
        product.pushforward(&AffineMap::projection(total, &keep), budget)
    }
}
