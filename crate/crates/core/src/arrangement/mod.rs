//! Cell complexes of affine and central hyperplane arrangements.
//!
//! Every cell is a relatively open convex polyhedron identified by its sign
//! vector; it carries its dimension and an exact sample point. Cells are
//! kept in lexicographic sign order and forms in sorted normalized order, so
//! two arrangements with the same hyperplanes are identical values.

mod enumerate;
mod poset;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;
use rand::Rng;

pub use poset::FacePoset;

pub(crate) use enumerate::max_step;
use enumerate::RawCell;

pub use crate::ratgeom::Sign;
use crate::ratgeom::{along, solve_linear, AffineForm, AffineMap, AffineSubspace, RatVector, Rational};
use crate::{Error, Result};

/// One cell of an arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub signs: Vec<Sign>,
    pub dim: usize,
    /// A point of the cell; substituting it into form `i` gives `signs[i]`.
    pub sample: RatVector,
}

impl Cell {
    pub fn sign_string(&self) -> String {
        self.signs.iter().map(|s| s.as_char()).collect()
    }
}

/// A finite set of hyperplanes in `ℝ^dim` with its enumerated cells.
///
/// A central arrangement lives in `ℝ^dim` with all forms linear; it always
/// contains the coordinate hyperplanes and omits the origin, so every cell
/// is a salient cone distinct from its antipode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    forms: Vec<AffineForm>,
    central: bool,
    cells: Vec<Cell>,
}

/// What happened to a form when restricting to a flat.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dropped {
    /// The flat lies inside the hyperplane.
    Contains,
    /// The form is constant and nonzero on the flat.
    Constant(Sign),
}

#[derive(Clone, Debug)]
pub struct FlatRestriction {
    pub arrangement: Arrangement,
    /// Flat coordinates to ambient coordinates.
    pub chart: AffineMap,
    /// Ambient forms that did not survive, by index.
    pub dropped: Vec<(usize, Dropped)>,
}

fn normalize_forms(dim: usize, forms: impl IntoIterator<Item = AffineForm>) -> Result<Vec<AffineForm>> {
    let mut out = Vec::new();
    for f in forms {
        crate::error::check_dim(dim, f.dim())?;
        if f.is_constant() {
            return Err(Error::Input(format!("degenerate (constant) form {f:?} in arrangement")));
        }
        out.push(f.normalized().0);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

impl Arrangement {
    /// Affine arrangement of the given forms (normalized, deduplicated).
    pub fn new(dim: usize, forms: impl IntoIterator<Item = AffineForm>) -> Result<Self> {
        let forms = normalize_forms(dim, forms)?;
        let raw = enumerate::enumerate(dim, &forms);
        Ok(Self::assemble(dim, forms, raw, false))
    }

    /// Central arrangement in `ℝ^dim`; coordinate forms are added.
    pub fn central(dim: usize, forms: impl IntoIterator<Item = AffineForm>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Input("central arrangement needs dimension ≥ 1".into()));
        }
        let forms: Vec<AffineForm> =
            forms.into_iter().chain((0..dim).map(|i| AffineForm::coordinate(dim, i))).collect();
        if let Some(f) = forms.iter().find(|f| !f.constant.is_zero()) {
            return Err(Error::Input(format!("central arrangement with affine form {f:?}")));
        }
        let forms = normalize_forms(dim, forms)?;
        let raw = enumerate::enumerate(dim, &forms);
        Ok(Self::assemble(dim, forms, raw, true))
    }

    /// Builds the canonical arrangement from cells whose sign vectors follow
    /// `forms` in the given (possibly unsorted) order.
    fn assemble(dim: usize, forms: Vec<AffineForm>, raw: Vec<RawCell>, central: bool) -> Self {
        let mut order: Vec<usize> = (0..forms.len()).collect();
        order.sort_by(|&a, &b| forms[a].cmp(&forms[b]));
        let sorted_forms: Vec<AffineForm> = order.iter().map(|&i| forms[i].clone()).collect();
        let mut cells: Vec<Cell> = raw
            .into_iter()
            .map(|c| Cell { signs: order.iter().map(|&i| c.signs[i]).collect(), dim: c.dim, sample: c.sample })
            .filter(|c| !(central && c.signs.iter().all(|s| *s == Sign::Zero)))
            .collect();
        cells.sort_by(|a, b| a.signs.cmp(&b.signs));
        Arrangement { dim, forms: sorted_forms, central, cells }
    }

    /// Trusted constructor for cells computed by other means (products,
    /// coarsening); sorts forms and cells into canonical order.
    pub(crate) fn from_parts(dim: usize, forms: Vec<AffineForm>, cells: Vec<Cell>, central: bool) -> Self {
        let raw = cells.into_iter().map(|c| RawCell { signs: c.signs, dim: c.dim, sample: c.sample }).collect();
        Self::assemble(dim, forms, raw, central)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn forms(&self) -> &[AffineForm] {
        &self.forms
    }

    pub fn is_central(&self) -> bool {
        self.central
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, i: usize) -> &Cell {
        &self.cells[i]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Index of a normalized form, if present.
    pub fn form_index(&self, form: &AffineForm) -> Option<usize> {
        self.forms.binary_search(form).ok()
    }

    pub fn find(&self, signs: &[Sign]) -> Option<usize> {
        self.cells.binary_search_by(|c| c.signs.as_slice().cmp(signs)).ok()
    }

    pub fn signs_at(&self, point: &[Rational]) -> Vec<Sign> {
        self.forms.iter().map(|f| f.sign_at(point)).collect()
    }

    /// The cell containing `point`.
    pub fn locate(&self, point: &[Rational]) -> Result<usize> {
        crate::error::check_dim(self.dim, point.len())?;
        if self.central && point.iter().all(Zero::is_zero) {
            return Err(Error::Input("the origin is not a point of a central arrangement".into()));
        }
        let signs = self.signs_at(point);
        self.find(&signs).ok_or_else(|| Error::Internal(format!("no cell with sign vector {signs:?}")))
    }

    /// The cell `−C` of a central arrangement.
    pub fn antipode(&self, i: usize) -> Result<usize> {
        if !self.central {
            return Err(Error::Input("antipodes exist only in central arrangements".into()));
        }
        let neg: Vec<Sign> = self.cells[i].signs.iter().map(|s| s.flip()).collect();
        match self.find(&neg) {
            Some(j) if j != i => Ok(j),
            Some(_) => Err(Error::Internal("cell equals its antipode (arrangement not salient)".into())),
            None => Err(Error::Internal("antipodal sign vector not realized".into())),
        }
    }

    pub fn face_poset(&self) -> FacePoset {
        FacePoset::new(&self.cells)
    }

    /// Refinement by additional forms; cells of `self` are split in place
    /// rather than re-enumerated.
    pub fn with_forms(&self, extra: impl IntoIterator<Item = AffineForm>) -> Result<Self> {
        let extra = normalize_forms(self.dim, extra)?;
        let new: Vec<AffineForm> = extra.into_iter().filter(|f| self.form_index(f).is_none()).collect();
        if self.central && new.iter().any(|f| !f.constant.is_zero()) {
            return Err(Error::Input("affine form added to central arrangement".into()));
        }
        if new.is_empty() {
            return Ok(self.clone());
        }
        let raw = self
            .cells
            .iter()
            .map(|c| RawCell { signs: c.signs.clone(), dim: c.dim, sample: c.sample.clone() })
            .collect();
        let raw = enumerate::extend(self.dim, &self.forms, raw, &new);
        let forms = self.forms.iter().cloned().chain(new).collect();
        Ok(Self::assemble(self.dim, forms, raw, self.central))
    }

    /// Affine hull of a cell.
    pub fn affine_hull(&self, i: usize) -> AffineSubspace {
        let zero: Vec<AffineForm> = self
            .forms
            .iter()
            .zip(&self.cells[i].signs)
            .filter(|(_, s)| **s == Sign::Zero)
            .map(|(f, _)| f.clone())
            .collect();
        let mut hull = solve_linear(self.dim, &zero).expect("dims agree").expect("cells are nonempty");
        hull.point = self.cells[i].sample.clone();
        hull
    }

    /// A pseudo-random point of cell `i`, obtained by a random step inside
    /// the cell's affine hull from its sample point.
    pub fn random_point<R: Rng + ?Sized>(&self, i: usize, rng: &mut R) -> RatVector {
        let cell = &self.cells[i];
        let hull = self.affine_hull(i);
        if hull.dim() == 0 {
            return cell.sample.clone();
        }
        let mut dir = crate::ratgeom::zeros(self.dim);
        while dir.iter().all(Zero::is_zero) {
            for b in &hull.basis {
                let c = Rational::from_integer(rng.random_range(-4i64..=4).into());
                dir = along(&dir, &c, b);
            }
        }
        let step = max_step(&self.forms, &cell.signs, &cell.sample, &dir);
        let frac = Rational::new(rng.random_range(1i64..=15).into(), 8.into());
        let p = along(&cell.sample, &(step * frac), &dir);
        if self.central && p.iter().all(Zero::is_zero) {
            return cell.sample.clone();
        }
        p
    }

    /// Restriction to an affine subspace, expressed in the subspace's
    /// coordinates `u` (via `chart: u ↦ point + basis·u`).
    ///
    /// With `central = true` the flat must be a linear subspace and the
    /// result is a central arrangement (coordinate forms of `u` added).
    pub fn restrict_to_flat(&self, flat: &AffineSubspace, central: bool) -> Result<FlatRestriction> {
        crate::error::check_dim(self.dim, flat.ambient_dim())?;
        if crate::ratgeom::rank(&flat.basis) != flat.dim() {
            return Err(Error::Input("flat basis is not linearly independent".into()));
        }
        if central && flat.point.iter().any(|v| !v.is_zero()) {
            return Err(Error::Input("central restriction needs a flat through the origin".into()));
        }
        if central && flat.dim() == 0 {
            return Err(Error::Input("central restriction to the zero subspace".into()));
        }
        let chart = flat.chart();
        let mut kept = Vec::new();
        let mut dropped = Vec::new();
        for (i, f) in self.forms.iter().enumerate() {
            let g = f.pullback(&chart);
            if g.is_constant() {
                let s = Sign::of(&g.constant);
                dropped.push((i, if s == Sign::Zero { Dropped::Contains } else { Dropped::Constant(s) }));
            } else {
                kept.push(g);
            }
        }
        let arrangement =
            if central { Arrangement::central(flat.dim(), kept)? } else { Arrangement::new(flat.dim(), kept)? };
        Ok(FlatRestriction { arrangement, chart, dropped })
    }

    /// Merges cells across the hyperplane `drop`. Returns the coarser
    /// arrangement and, for each cell of `self`, the index of the coarse
    /// cell containing it.
    pub(crate) fn without_form(&self, drop: usize) -> (Arrangement, Vec<usize>) {
        let key = |c: &Cell| -> Vec<Sign> {
            c.signs.iter().enumerate().filter(|(j, _)| *j != drop).map(|(_, s)| *s).collect()
        };
        let mut groups: BTreeMap<Vec<Sign>, usize> = BTreeMap::new();
        for (i, c) in self.cells.iter().enumerate() {
            let k = key(c);
            match groups.get(&k) {
                Some(&j) if self.cells[j].dim >= c.dim => {}
                _ => {
                    groups.insert(k, i);
                }
            }
        }
        let forms: Vec<AffineForm> =
            self.forms.iter().enumerate().filter(|(j, _)| *j != drop).map(|(_, f)| f.clone()).collect();
        let cells: Vec<Cell> = groups
            .iter()
            .map(|(k, &rep)| Cell {
                signs: k.clone(),
                dim: self.cells[rep].dim,
                sample: self.cells[rep].sample.clone(),
            })
            .collect();
        let coarse = Arrangement { dim: self.dim, forms, central: self.central, cells };
        let map = self.cells.iter().map(|c| coarse.find(&key(c)).expect("group exists")).collect();
        (coarse, map)
    }

    /// True if cell `i` is bounded (its closure is a polytope). Decided by
    /// looking for an unbounded ray in the homogenized arrangement.
    pub fn is_bounded(&self, i: usize) -> bool {
        let cell = &self.cells[i];
        if self.central {
            return false;
        }
        let hull = self.affine_hull(i);
        if hull.dim() == 0 {
            return true;
        }
        // A recession direction d ≠ 0 satisfies slope(d) = 0 on zero forms
        // and sign·slope(d) ≥ 0 on the others. Such a d exists iff some
        // sub-pattern with strict signs is feasible, which we test through
        // the cells of the central arrangement of linear parts.
        let linear: Vec<AffineForm> = self.forms.iter().map(|f| AffineForm::linear(f.linear.clone())).collect();
        let dirs = Arrangement::central(self.dim, linear.clone()).expect("linear parts are nonzero");
        !dirs.cells.iter().any(|d| {
            let v = &d.sample;
            linear.iter().zip(&cell.signs).all(|(g, s)| {
                let slope = g.sign_at(v);
                match s {
                    Sign::Zero => slope == Sign::Zero,
                    other => slope == Sign::Zero || slope == *other,
                }
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratgeom::{rat, ratio};
    use alloc::vec;

    fn three_lines() -> Arrangement {
        Arrangement::new(
            2,
            [AffineForm::from_ints(&[1, 0], 0), AffineForm::from_ints(&[0, 1], 0), AffineForm::from_ints(&[1, 1], -1)],
        )
        .unwrap()
    }

    #[test]
    fn generic_lines_in_the_plane() {
        let arr = three_lines();
        let count = |d: usize| arr.cells().iter().filter(|c| c.dim == d).count();
        assert_eq!((count(0), count(1), count(2)), (3, 9, 7));
        let chi: i64 = arr.cells().iter().map(|c| if c.dim % 2 == 0 { 1 } else { -1 }).sum();
        assert_eq!(chi, 1);
    }

    #[test]
    fn samples_locate_their_own_cells() {
        let arr = three_lines();
        for (i, c) in arr.cells().iter().enumerate() {
            assert_eq!(arr.locate(&c.sample).unwrap(), i);
            assert_eq!(arr.affine_hull(i).dim(), c.dim);
        }
        assert_eq!(arr.signs_at(&[ratio(1, 3), ratio(1, 3)]), vec![Sign::Pos, Sign::Pos, Sign::Neg]);
    }

    #[test]
    fn central_arrangements_pair_cells() {
        let arr = Arrangement::central(3, [AffineForm::from_ints(&[1, 1, 1], 0)]).unwrap();
        assert_eq!(arr.len() % 2, 0);
        for i in 0..arr.len() {
            let j = arr.antipode(i).unwrap();
            assert_eq!(arr.antipode(j).unwrap(), i);
            assert_ne!(i, j);
        }
        assert!(arr.locate(&[rat(0), rat(0), rat(0)]).is_err());
    }

    #[test]
    fn faces_and_boundedness() {
        let arr = three_lines();
        let poset = arr.face_poset();
        let triangle = arr.find(&[Sign::Pos, Sign::Pos, Sign::Neg]).unwrap();
        assert_eq!(poset.down_set(triangle).len(), 7);
        assert!(arr.is_bounded(triangle));
        let quadrant = arr.find(&[Sign::Neg, Sign::Neg, Sign::Neg]).unwrap();
        assert!(!arr.is_bounded(quadrant));
    }

    #[test]
    fn constant_forms_are_rejected() {
        assert!(Arrangement::new(1, [AffineForm::from_ints(&[0], 2)]).is_err());
    }
}
