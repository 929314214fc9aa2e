//! Constructible functions on real projective space `ℙⁿ`.
//!
//! `ℙⁿ` is modelled by a central arrangement in `ℝⁿ⁺¹` that contains every
//! coordinate hyperplane, so each cell is a salient open cone `C ≠ −C`. The
//! pair `{C, −C}` projectivizes to a relatively open cell of dimension
//! `dim C − 1`; values are stored on both members of every pair.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::arrangement::{Arrangement, Sign};
use crate::constructible::{euler_sign, simplify_values, AffineCF};
use crate::error::check_dim;
use crate::ratgeom::{solve_linear, AffineForm, AffineMap, AffineSubspace, RatVector, Rational};
use crate::{Error, Result};

/// A constructible function on `ℙⁿ`, even on a central arrangement of `ℝⁿ⁺¹`.
#[derive(Clone, Debug)]
pub struct ProjectiveCF {
    arr: Arc<Arrangement>,
    values: Vec<i64>,
}

fn is_coordinate_form(f: &AffineForm) -> bool {
    f.linear.iter().filter(|v| !v.is_zero()).count() == 1
}

/// Representative of an antipodal pair: first nonzero sign is `+`.
pub fn is_canonical(signs: &[Sign]) -> bool {
    signs.iter().find(|s| **s != Sign::Zero) == Some(&Sign::Pos)
}

impl ProjectiveCF {
    pub fn new(arr: Arrangement, values: Vec<i64>) -> Result<Self> {
        Self::from_shared(Arc::new(arr), values)
    }

    pub fn from_shared(arr: Arc<Arrangement>, values: Vec<i64>) -> Result<Self> {
        if !arr.is_central() {
            return Err(Error::Input("projective function needs a central arrangement".into()));
        }
        check_dim(arr.len(), values.len())?;
        for i in 0..arr.len() {
            let j = arr.antipode(i)?;
            if values[i] != values[j] {
                return Err(Error::Input(format!(
                    "evenness violated: cell {} has {} but its antipode has {}",
                    arr.cell(i).sign_string(),
                    values[i],
                    values[j]
                )));
            }
        }
        Ok(ProjectiveCF { arr, values })
    }

    pub fn constant(n: usize, c: i64) -> Self {
        let arr = Arrangement::central(n + 1, []).expect("coordinate arrangement");
        let values = alloc::vec![c; arr.len()];
        ProjectiveCF { arr: Arc::new(arr), values }
    }

    /// Indicator of the projectivized linear subspace `{x : a·x = 0 ∀a}`.
    pub fn linear_subspace(n: usize, normals: &[RatVector]) -> Result<Self> {
        let forms: Vec<AffineForm> = normals.iter().map(|a| AffineForm::linear(a.clone())).collect();
        for f in &forms {
            check_dim(n + 1, f.dim())?;
        }
        let arr = Arrangement::central(n + 1, forms.iter().filter(|f| !f.is_constant()).cloned())?;
        let values =
            arr.cells().iter().map(|c| forms.iter().all(|f| f.sign_at(&c.sample) == Sign::Zero) as i64).collect();
        Ok(ProjectiveCF { arr: Arc::new(arr), values })
    }

    /// `δ_{[v]}`.
    pub fn point(v: &[Rational]) -> Result<Self> {
        if v.iter().all(Zero::is_zero) {
            return Err(Error::Input("zero vector is not a projective point".into()));
        }
        let normals = solve_linear(v.len(), &[AffineForm::linear(v.to_vec())])?.expect("homogeneous").basis;
        Self::linear_subspace(v.len() - 1, &normals)
    }

    /// `1_{h_y}` for the projective hyperplane `h_y = {x : ⟨x, y⟩ = 0}`.
    pub fn hyperplane(y: &[Rational]) -> Result<Self> {
        if y.iter().all(Zero::is_zero) {
            return Err(Error::Input("zero vector defines no hyperplane".into()));
        }
        Self::linear_subspace(y.len() - 1, &[y.to_vec()])
    }

    /// Projective dimension `n`.
    pub fn n(&self) -> usize {
        self.arr.dim() - 1
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arr
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Value at the projective point with homogeneous coordinates `x`.
    pub fn evaluate(&self, x: &[Rational]) -> Result<i64> {
        Ok(self.values[self.arr.locate(x)?])
    }

    /// Extension by zero `j_! φ` across the hyperplane at infinity
    /// `x_{n+1} = 0`.
    pub fn embed_eim(phi: &AffineCF) -> ProjectiveCF {
        let n = phi.dim();
        let forms: Vec<AffineForm> = phi
            .arrangement()
            .forms()
            .iter()
            .map(|f| {
                let mut linear = f.linear.clone();
                linear.push(f.constant.clone());
                AffineForm::linear(linear)
            })
            .collect();
        let arr = Arrangement::central(n + 1, forms).expect("homogenized forms are linear");
        let values = arr
            .cells()
            .iter()
            .map(|c| {
                let w = &c.sample[n];
                if w.is_zero() {
                    0
                } else {
                    let x: RatVector = c.sample[..n].iter().map(|v| v / w).collect();
                    phi.evaluate(&x).expect("chart point")
                }
            })
            .collect();
        ProjectiveCF { arr: Arc::new(arr), values }
    }

    /// `j_* φ = D j_! D φ`.
    pub fn embed_oim(phi: &AffineCF) -> ProjectiveCF {
        Self::embed_eim(&phi.dual()).dual()
    }

    /// Restriction to the affine chart `x_i = 1` (`1 ≤ i ≤ n+1`), in the
    /// remaining coordinates.
    pub fn restrict_chart(&self, i: usize) -> Result<AffineCF> {
        let n = self.n();
        if i == 0 || i > n + 1 {
            return Err(Error::Input(format!("chart index {i} outside 1..={}", n + 1)));
        }
        let k = i - 1;
        let rows: Vec<RatVector> = (0..=n)
            .map(|j| {
                let mut r = crate::ratgeom::zeros(n);
                if j != k {
                    r[if j < k { j } else { j - 1 }] = Rational::one();
                }
                r
            })
            .collect();
        let mut t = crate::ratgeom::zeros(n + 1);
        t[k] = Rational::one();
        let chart = AffineMap::new(n, rows, t)?;
        let forms: Vec<AffineForm> =
            self.arr.forms().iter().map(|f| f.pullback(&chart)).filter(|f| !f.is_constant()).collect();
        let arr = Arrangement::new(n, forms)?;
        let values = arr.cells().iter().map(|c| self.evaluate(&chart.apply(&c.sample))).collect::<Result<_>>()?;
        AffineCF::new(arr, values)
    }

    /// `∫_{ℙⁿ} Φ = Σ_{pairs} value·(−1)^{dim C − 1}`.
    pub fn integrate(&self) -> i64 {
        self.arr
            .cells()
            .iter()
            .zip(&self.values)
            .filter(|(c, _)| is_canonical(&c.signs))
            .map(|(c, v)| v * euler_sign(c.dim - 1))
            .sum()
    }

    /// Local duality on `ℙⁿ`: `Σ_{C ≥ D} value(C)·(−1)^{dim C − 1}`.
    pub fn dual(&self) -> ProjectiveCF {
        let poset = self.arr.face_poset();
        let weighted: Vec<i64> =
            self.arr.cells().iter().zip(&self.values).map(|(c, v)| v * euler_sign(c.dim - 1)).collect();
        let mut values = alloc::vec![0; self.arr.len()];
        for d in 0..self.arr.len() {
            if is_canonical(&self.arr.cell(d).signs) {
                let v: i64 = poset.up_set(d).iter().map(|&c| weighted[c]).sum();
                values[d] = v;
                values[self.arr.antipode(d).expect("salient")] = v;
            }
        }
        ProjectiveCF { arr: self.arr.clone(), values }
    }

    /// Restriction to the projective hyperplane `h_y`, as a function on
    /// `ℙⁿ⁻¹` in the coordinates of a fixed basis of `ker y`.
    pub fn slice(&self, y: &[Rational]) -> Result<ProjectiveCF> {
        check_dim(self.arr.dim(), y.len())?;
        if y.iter().all(Zero::is_zero) {
            return Err(Error::Input("slice by the zero vector".into()));
        }
        if self.n() == 0 {
            return Err(Error::Input("cannot slice ℙ⁰".into()));
        }
        let kernel: AffineSubspace = solve_linear(y.len(), &[AffineForm::linear(y.to_vec())])?.expect("homogeneous");
        let r = self.arr.restrict_to_flat(&kernel, true)?;
        let values =
            r.arrangement.cells().iter().map(|c| self.evaluate(&r.chart.apply(&c.sample))).collect::<Result<_>>()?;
        Ok(ProjectiveCF { arr: Arc::new(r.arrangement), values })
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| *v == 0)
    }

    /// Restriction to the hyperplane at infinity `x_{n+1} = 0`.
    pub fn at_infinity(&self) -> Result<ProjectiveCF> {
        let mut y = crate::ratgeom::zeros(self.arr.dim());
        y[self.n()] = Rational::one();
        self.slice(&y)
    }

    fn transport(&self, target: &Arc<Arrangement>) -> Result<ProjectiveCF> {
        if target.forms() == self.arr.forms() {
            return Ok(ProjectiveCF { arr: target.clone(), values: self.values.clone() });
        }
        let values = target.cells().iter().map(|c| self.evaluate(&c.sample)).collect::<Result<_>>()?;
        Ok(ProjectiveCF { arr: target.clone(), values })
    }

    pub fn refine_common(&self, other: &ProjectiveCF) -> Result<(ProjectiveCF, ProjectiveCF)> {
        check_dim(self.arr.dim(), other.arr.dim())?;
        if self.arr.forms() == other.arr.forms() {
            return Ok((self.clone(), other.transport(&self.arr)?));
        }
        let union = Arc::new(self.arr.with_forms(other.arr.forms().iter().cloned())?);
        Ok((self.transport(&union)?, other.transport(&union)?))
    }

    fn zip_with(&self, other: &ProjectiveCF, op: impl Fn(i64, i64) -> i64) -> Result<ProjectiveCF> {
        let (a, b) = self.refine_common(other)?;
        let values = a.values.iter().zip(&b.values).map(|(x, y)| op(*x, *y)).collect();
        Ok(ProjectiveCF { arr: a.arr, values }.simplify())
    }

    pub fn add(&self, other: &ProjectiveCF) -> Result<ProjectiveCF> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ProjectiveCF) -> Result<ProjectiveCF> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn multiply(&self, other: &ProjectiveCF) -> Result<ProjectiveCF> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, c: i64) -> ProjectiveCF {
        ProjectiveCF { arr: self.arr.clone(), values: self.values.iter().map(|v| v * c).collect() }
    }

    /// Drops non-coordinate hyperplanes the function does not need.
    pub fn simplify(&self) -> ProjectiveCF {
        let (arr, values) = simplify_values(&self.arr, &self.values, is_coordinate_form);
        if arr.forms().len() == self.arr.forms().len() {
            return self.clone();
        }
        ProjectiveCF { arr: Arc::new(arr), values }
    }

    pub fn is_even(&self) -> bool {
        (0..self.arr.len()).all(|i| self.arr.antipode(i).is_ok_and(|j| self.values[i] == self.values[j]))
    }
}

impl PartialEq for ProjectiveCF {
    fn eq(&self, other: &Self) -> bool {
        match self.refine_common(other) {
            Ok((a, b)) => a.values == b.values,
            Err(_) => false,
        }
    }
}

impl AffineCF {
    /// True when the support is bounded: no cell touching the hyperplane at
    /// infinity in `ℙⁿ` lies in the closure of a cell with nonzero value.
    pub fn has_compact_support(&self) -> bool {
        let n = self.dim();
        let ext = ProjectiveCF::embed_eim(self);
        let poset = ext.arr.face_poset();
        ext.arr
            .cells()
            .iter()
            .enumerate()
            .all(|(d, cell)| !cell.sample[n].is_zero() || poset.up_set(d).iter().all(|&c| ext.values[c] == 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructible::{PolyhedronSpec, Relation};
    use crate::ratgeom::rat;
    use alloc::vec;

    #[test]
    fn euler_characteristic_of_projective_spaces() {
        let chis: Vec<i64> = (1..=4).map(|n| ProjectiveCF::constant(n, 1).integrate()).collect();
        assert_eq!(chis, vec![0, 1, 0, 1]);
    }

    #[test]
    fn embeddings_of_the_line() {
        let line = AffineCF::constant(1, 1);
        let eim = ProjectiveCF::embed_eim(&line);
        let oim = ProjectiveCF::embed_oim(&line);
        assert_eq!(eim.integrate(), line.integrate());
        // the punctured neighbourhood of ∞ is two open arcs, so j_*1_ℝ is 2 there
        assert_eq!(oim.evaluate(&[rat(1), rat(0)]).unwrap(), 2);
        assert_eq!(oim.evaluate(&[rat(3), rat(1)]).unwrap(), 1);
        assert_eq!(oim.integrate(), line.integrate_np());
        assert_eq!(eim.evaluate(&[rat(1), rat(0)]).unwrap(), 0);
        assert_eq!(eim.restrict_chart(2).unwrap(), line);
    }

    #[test]
    fn projective_duality() {
        let phi = ProjectiveCF::point(&[rat(1), rat(2), rat(3)]).unwrap();
        assert_eq!(phi.dual(), phi);
        let line = ProjectiveCF::hyperplane(&[rat(1), rat(-1), rat(0)]).unwrap();
        assert_eq!(line.dual(), line.scale(-1));
        let whole = ProjectiveCF::constant(2, 1);
        assert_eq!(whole.dual(), whole);
        assert_eq!(line.dual().dual(), line);
    }

    #[test]
    fn slices_and_infinity() {
        let whole = ProjectiveCF::constant(2, 1);
        assert_eq!(whole.slice(&[rat(1), rat(1), rat(0)]).unwrap().integrate(), 0);
        let tri = AffineCF::indicator(
            &PolyhedronSpec::new(2)
                .with(AffineForm::from_ints(&[1, 0], 0), Relation::Ge)
                .with(AffineForm::from_ints(&[0, 1], 0), Relation::Ge)
                .with(AffineForm::from_ints(&[1, 1], -1), Relation::Le),
        )
        .unwrap();
        assert!(tri.has_compact_support());
        let t = ProjectiveCF::embed_eim(&tri);
        assert!(t.at_infinity().unwrap().is_zero());
        assert!(!AffineCF::constant(2, 1).has_compact_support());
    }

    #[test]
    fn odd_functions_are_rejected() {
        let arr = Arrangement::central(2, []).unwrap();
        let mut values = vec![0; arr.len()];
        values[0] = 1;
        assert!(ProjectiveCF::new(arr, values).is_err());
    }
}
