//! Constructible functions on `ℝⁿ`.
//!
//! An [`AffineCF`] is an arrangement with an integer on every cell. Because
//! every cell is relatively open and convex, `χ_c(C) = (−1)^{dim C}` whether
//! or not `C` is bounded, and the whole calculus reduces to sums over cells
//! and over the face order.

mod conv;
mod push;

pub use conv::Cone;

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::arrangement::{Arrangement, Sign};
use crate::error::check_dim;
use crate::ratgeom::{AffineForm, Rational};
use crate::{Error, Result};

/// Relation of a constraint `form REL 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

impl Relation {
    pub fn holds(self, s: Sign) -> bool {
        match self {
            Relation::Lt => s == Sign::Neg,
            Relation::Le => s != Sign::Pos,
            Relation::Eq => s == Sign::Zero,
            Relation::Ge => s != Sign::Neg,
            Relation::Gt => s == Sign::Pos,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        }
    }

    pub fn parse(s: &str) -> Option<Relation> {
        Some(match s {
            "<" => Relation::Lt,
            "<=" | "≤" => Relation::Le,
            "=" | "==" => Relation::Eq,
            ">=" | "≥" => Relation::Ge,
            ">" => Relation::Gt,
            _ => return None,
        })
    }
}

/// A locally closed polyhedron given by constraints `form REL 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyhedronSpec {
    pub dim: usize,
    pub constraints: Vec<(AffineForm, Relation)>,
}

impl PolyhedronSpec {
    pub fn new(dim: usize) -> Self {
        PolyhedronSpec { dim, constraints: Vec::new() }
    }

    pub fn with(mut self, form: AffineForm, rel: Relation) -> Self {
        self.constraints.push((form, rel));
        self
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.constraints.iter().all(|(f, r)| r.holds(f.sign_at(x)))
    }

    /// The closed box `∏ [lo_i, hi_i]`.
    pub fn closed_box(lo: &[Rational], hi: &[Rational]) -> Self {
        let n = lo.len();
        let mut spec = PolyhedronSpec::new(n);
        for i in 0..n {
            let mut e = crate::ratgeom::zeros(n);
            e[i] = Rational::from_integer(1.into());
            spec = spec
                .with(AffineForm::new(e.clone(), -&lo[i]), Relation::Ge)
                .with(AffineForm::new(e, -&hi[i]), Relation::Le);
        }
        spec
    }
}

/// Resource limits and sampling effort for operations that build large
/// arrangements or assign values by sampling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Fail with [`Error::Budget`] beyond this many cells.
    pub max_cells: usize,
    /// Extra random points per output cell used to validate cell values.
    pub oversample: usize,
    pub seed: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_cells: 200_000, oversample: 3, seed: 0 }
    }
}

impl Budget {
    pub(crate) fn check(&self, cells: usize) -> Result<()> {
        if cells > self.max_cells {
            Err(Error::Budget { cells, limit: self.max_cells })
        } else {
            Ok(())
        }
    }
}

/// A constructible function on `ℝⁿ`: `Σ_C value(C)·1_C` over the cells of
/// an affine arrangement.
///
/// Equality is semantic: two functions are equal when they agree pointwise,
/// checked on a common refinement.
#[derive(Clone, Debug)]
pub struct AffineCF {
    arr: Arc<Arrangement>,
    values: Vec<i64>,
}

pub(crate) fn euler_sign(dim: usize) -> i64 {
    if dim.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Greedily drops hyperplanes across which `values` does not change.
/// Forms selected by `keep` are never dropped.
pub(crate) fn simplify_values(
    arr: &Arrangement,
    values: &[i64],
    keep: impl Fn(&AffineForm) -> bool,
) -> (Arrangement, Vec<i64>) {
    let mut arr = arr.clone();
    let mut values = values.to_vec();
    for i in (0..arr.forms().len()).rev() {
        if keep(&arr.forms()[i]) {
            continue;
        }
        let mut seen: BTreeMap<Vec<Sign>, i64> = BTreeMap::new();
        let removable = arr.cells().iter().zip(&values).all(|(c, v)| {
            let key: Vec<Sign> = c.signs.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, s)| *s).collect();
            *seen.entry(key).or_insert(*v) == *v
        });
        if removable {
            let (coarse, map) = arr.without_form(i);
            let mut coarse_values = alloc::vec![0; coarse.len()];
            for (fine, &c) in map.iter().enumerate() {
                coarse_values[c] = values[fine];
            }
            arr = coarse;
            values = coarse_values;
        }
    }
    (arr, values)
}

impl AffineCF {
    pub fn new(arr: Arrangement, values: Vec<i64>) -> Result<Self> {
        Self::from_shared(Arc::new(arr), values)
    }

    pub fn from_shared(arr: Arc<Arrangement>, values: Vec<i64>) -> Result<Self> {
        if arr.is_central() {
            return Err(Error::Input("affine function on a central arrangement".into()));
        }
        check_dim(arr.len(), values.len())?;
        Ok(AffineCF { arr, values })
    }

    pub fn constant(dim: usize, c: i64) -> Self {
        let arr = Arrangement::new(dim, []).expect("empty arrangement");
        AffineCF { arr: Arc::new(arr), values: alloc::vec![c] }
    }

    pub fn zero(dim: usize) -> Self {
        Self::constant(dim, 0)
    }

    /// `1_Z` for the polyhedron `Z` described by `spec`.
    pub fn indicator(spec: &PolyhedronSpec) -> Result<Self> {
        let mut forms = Vec::new();
        for (f, rel) in &spec.constraints {
            check_dim(spec.dim, f.dim())?;
            if f.is_constant() {
                if !rel.holds(Sign::of(&f.constant)) {
                    return Ok(Self::zero(spec.dim));
                }
            } else {
                forms.push(f.clone());
            }
        }
        let arr = Arrangement::new(spec.dim, forms)?;
        let values = arr.cells().iter().map(|c| spec.contains(&c.sample) as i64).collect();
        Ok(AffineCF { arr: Arc::new(arr), values })
    }

    /// Dirac mass `1_{p}`.
    pub fn point(p: &[Rational]) -> Self {
        let n = p.len();
        let mut spec = PolyhedronSpec::new(n);
        for (i, v) in p.iter().enumerate() {
            let mut e = crate::ratgeom::zeros(n);
            e[i] = Rational::from_integer(1.into());
            spec = spec.with(AffineForm::new(e, -v), Relation::Eq);
        }
        Self::indicator(&spec).expect("well-formed point")
    }

    pub fn dim(&self) -> usize {
        self.arr.dim()
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arr
    }

    pub fn shared_arrangement(&self) -> &Arc<Arrangement> {
        &self.arr
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<i64> {
        Ok(self.values[self.arr.locate(point)?])
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| *v == 0)
    }

    /// Values re-expressed on an arrangement whose forms include ours.
    fn transport(&self, target: &Arc<Arrangement>) -> Result<AffineCF> {
        if target.forms() == self.arr.forms() {
            return Ok(AffineCF { arr: target.clone(), values: self.values.clone() });
        }
        let positions: Vec<usize> = self
            .arr
            .forms()
            .iter()
            .map(|f| target.form_index(f).ok_or_else(|| Error::Internal("form missing in refinement".into())))
            .collect::<Result<_>>()?;
        let values = target
            .cells()
            .iter()
            .map(|c| {
                let signs: Vec<Sign> = positions.iter().map(|&p| c.signs[p]).collect();
                self.arr
                    .find(&signs)
                    .map(|i| self.values[i])
                    .ok_or_else(|| Error::Internal("refined cell has no parent".into()))
            })
            .collect::<Result<_>>()?;
        Ok(AffineCF { arr: target.clone(), values })
    }

    /// Refinement onto the arrangement with extra forms.
    pub fn refine(&self, forms: impl IntoIterator<Item = AffineForm>) -> Result<AffineCF> {
        let arr = Arc::new(self.arr.with_forms(forms)?);
        self.transport(&arr)
    }

    /// Both functions on the union arrangement.
    pub fn refine_common(&self, other: &AffineCF) -> Result<(AffineCF, AffineCF)> {
        check_dim(self.dim(), other.dim())?;
        if self.arr.forms() == other.arr.forms() {
            return Ok((self.clone(), other.transport(&self.arr)?));
        }
        let union = Arc::new(self.arr.with_forms(other.arr.forms().iter().cloned())?);
        Ok((self.transport(&union)?, other.transport(&union)?))
    }

    fn zip_with(&self, other: &AffineCF, op: impl Fn(i64, i64) -> i64) -> Result<AffineCF> {
        let (a, b) = self.refine_common(other)?;
        let values = a.values.iter().zip(&b.values).map(|(x, y)| op(*x, *y)).collect();
        Ok(AffineCF { arr: a.arr, values }.simplify())
    }

    pub fn add(&self, other: &AffineCF) -> Result<AffineCF> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &AffineCF) -> Result<AffineCF> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn multiply(&self, other: &AffineCF) -> Result<AffineCF> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, c: i64) -> AffineCF {
        AffineCF { arr: self.arr.clone(), values: self.values.iter().map(|v| v * c).collect() }
    }

    pub fn negate(&self) -> AffineCF {
        self.scale(-1)
    }

    /// Removes hyperplanes the function does not need.
    pub fn simplify(&self) -> AffineCF {
        let (arr, values) = simplify_values(&self.arr, &self.values, |_| false);
        if arr.forms().len() == self.arr.forms().len() {
            return self.clone();
        }
        AffineCF { arr: Arc::new(arr), values }
    }

    /// `(φ ⊠ ψ)(x, y) = φ(x)·ψ(y)` on `ℝ^{m+n}`.
    pub fn external_product(&self, other: &AffineCF) -> AffineCF {
        let (m, n) = (self.dim(), other.dim());
        let total = m + n;
        let forms: Vec<AffineForm> = self
            .arr
            .forms()
            .iter()
            .map(|f| f.lifted(0, total))
            .chain(other.arr.forms().iter().map(|f| f.lifted(m, total)))
            .collect();
        let mut cells = Vec::with_capacity(self.arr.len() * other.arr.len());
        let mut values = BTreeMap::new();
        for (a, va) in self.arr.cells().iter().zip(&self.values) {
            for (b, vb) in other.arr.cells().iter().zip(&other.values) {
                let signs: Vec<Sign> = a.signs.iter().chain(&b.signs).copied().collect();
                let sample: Vec<Rational> = a.sample.iter().chain(&b.sample).cloned().collect();
                // keyed by sample: sign vectors are permuted once forms are sorted
                values.insert(sample.clone(), va * vb);
                cells.push(crate::arrangement::Cell { signs, dim: a.dim + b.dim, sample });
            }
        }
        let arr = Arrangement::from_parts(total, forms, cells, false);
        let values = arr.cells().iter().map(|c| values[&c.sample]).collect();
        AffineCF { arr: Arc::new(arr), values }
    }

    /// Proper Euler integral `Σ_C value(C)·(−1)^{dim C}`.
    pub fn integrate(&self) -> i64 {
        self.arr.cells().iter().zip(&self.values).map(|(c, v)| v * euler_sign(c.dim)).sum()
    }

    /// Local duality: the value at `D` is the integral over a small ball
    /// around a point of `D`, i.e. `Σ_{C ≥ D} value(C)·(−1)^{dim C}`.
    pub fn dual(&self) -> AffineCF {
        let poset = self.arr.face_poset();
        let weighted: Vec<i64> =
            self.arr.cells().iter().zip(&self.values).map(|(c, v)| v * euler_sign(c.dim)).collect();
        let values = (0..self.arr.len()).map(|d| poset.up_set(d).iter().map(|&c| weighted[c]).sum()).collect();
        AffineCF { arr: self.arr.clone(), values }
    }

    /// Non-proper integral `∫ D φ`.
    pub fn integrate_np(&self) -> i64 {
        self.dual().integrate()
    }

    /// `hom(φ, ψ) = D(Dψ · φ)`.
    pub fn hom(&self, psi: &AffineCF) -> Result<AffineCF> {
        Ok(psi.dual().multiply(self)?.dual())
    }
}

impl PartialEq for AffineCF {
    fn eq(&self, other: &Self) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        match self.refine_common(other) {
            Ok((a, b)) => a.values == b.values,
            Err(_) => false,
        }
    }
}

#[cfg(test)]
mod tests;
