//! Radon transform on projective space.
//!
//! `(Rφ)(y) = ∫_{ℙⁿ} φ·1_{h_y}` with `h_y = {x : ⟨x, y⟩ = 0}`. Pointwise
//! values are available in every dimension through [`slice_integral`]; the
//! full transform as a constructible function is built for `n = 2`, where
//! the dual walls are the duals of the vertices of the source arrangement.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arrangement::Arrangement;
use crate::constructible::{AffineCF, Budget};
use crate::projective::{is_canonical, ProjectiveCF};
use crate::ratgeom::{dot, rank, solve_linear, AffineForm, RatVector, Rational};
use crate::{Error, Result};

/// `∫_{ℙⁿ} φ·1_{h_y}`.
pub fn slice_integral(phi: &ProjectiveCF, y: &[Rational]) -> Result<i64> {
    if phi.n() == 2 && y.len() == 3 && y.iter().any(|c| !c.is_zero()) {
        return line_integral_p2(phi, y);
    }
    Ok(phi.slice(y)?.integrate())
}

/// Integral over the projective line `h_y ⊂ ℙ²` without building the
/// restricted arrangement: the walls cut `h_y` in finitely many points, and
/// the integral is the sum of the values at those points minus the values
/// on the open arcs between them.
fn line_integral_p2(phi: &ProjectiveCF, y: &[Rational]) -> Result<i64> {
    let basis = solve_linear(3, &[AffineForm::linear(y.to_vec())])?.expect("homogeneous").basis;
    let (u, w) = (&basis[0], &basis[1]);
    let lift = |p: &(Rational, Rational)| -> RatVector { u.iter().zip(w).map(|(a, b)| a * &p.0 + b * &p.1).collect() };
    // points of h_y on each wall, in (u, w) coordinates, angle in [0, π)
    let mut points: Vec<(Rational, Rational)> = Vec::new();
    for a in phi.arrangement().forms() {
        let (s, t) = (dot(&a.linear, w), -dot(&a.linear, u));
        if s.is_zero() && t.is_zero() {
            continue;
        }
        let p = if t.is_negative() || (t.is_zero() && s.is_negative()) { (-s, -t) } else { (s, t) };
        points.push(p);
    }
    let cross = |a: &(Rational, Rational), b: &(Rational, Rational)| &a.0 * &b.1 - &a.1 * &b.0;
    points.sort_by(|a, b| Rational::zero().cmp(&cross(a, b)));
    points.dedup_by(|a, b| cross(a, b).is_zero());
    let mut total = 0;
    for (i, p) in points.iter().enumerate() {
        total += phi.evaluate(&lift(p))?;
        let mid = match points.get(i + 1) {
            Some(q) => (&p.0 + &q.0, &p.1 + &q.1),
            None => (&p.0 - &points[0].0, &p.1 - &points[0].1),
        };
        let mid = if points.len() == 1 { (-&p.1, p.0.clone()) } else { mid };
        total -= phi.evaluate(&lift(&mid))?;
    }
    Ok(total)
}

fn cross(a: &[Rational], b: &[Rational]) -> RatVector {
    alloc::vec![&a[1] * &b[2] - &a[2] * &b[1], &a[2] * &b[0] - &a[0] * &b[2], &a[0] * &b[1] - &a[1] * &b[0],]
}

/// Wall set on the dual plane for the transform of a function on `ℙ²`.
#[derive(Clone, Debug)]
pub struct DualArrangementPlan {
    pub source: ProjectiveCF,
    /// Linear forms `v·y`, one per vertex `[v]` of the source arrangement,
    /// plus auxiliary points on source lines carrying fewer than two vertices.
    pub vertex_duals: Vec<AffineForm>,
    pub n: usize,
}

impl DualArrangementPlan {
    pub fn new(source: &ProjectiveCF) -> Result<Self> {
        if source.n() != 2 {
            return Err(Error::Input(format!("full Radon transform needs ℙ², got ℙ{}", source.n())));
        }
        let planes = source.arrangement().forms();
        let mut duals: BTreeSet<AffineForm> = BTreeSet::new();
        let mut on_plane: Vec<BTreeSet<AffineForm>> = alloc::vec![BTreeSet::new(); planes.len()];
        for i in 0..planes.len() {
            for j in i + 1..planes.len() {
                let v = cross(&planes[i].linear, &planes[j].linear);
                let f = AffineForm::linear(v).normalized().0;
                on_plane[i].insert(f.clone());
                on_plane[j].insert(f.clone());
                duals.insert(f);
            }
        }
        for (plane, vertices) in planes.iter().zip(&on_plane) {
            if vertices.len() < 2 {
                let basis = solve_linear(3, core::slice::from_ref(plane))?.expect("homogeneous").basis;
                duals.extend(basis.into_iter().map(|b| AffineForm::linear(b).normalized().0));
            }
        }
        Ok(DualArrangementPlan { source: source.clone(), vertex_duals: duals.into_iter().collect(), n: 2 })
    }

    pub fn arrangement(&self) -> Result<Arrangement> {
        Arrangement::central(self.n + 1, self.vertex_duals.iter().cloned())
    }
}

/// Assigns slice integrals to the cells of the dual arrangement, validating
/// each cell at `budget.oversample` extra random points.
fn transform_p2(phi: &ProjectiveCF, budget: &Budget) -> Result<ProjectiveCF> {
    let plan = DualArrangementPlan::new(phi)?;
    let dual = plan.arrangement()?;
    budget.check(dual.len())?;
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut values = alloc::vec![0i64; dual.len()];
    for (i, cell) in dual.cells().iter().enumerate() {
        if !is_canonical(&cell.signs) {
            continue;
        }
        let v = slice_integral(phi, &cell.sample)?;
        for _ in 0..budget.oversample {
            let y = dual.random_point(i, &mut rng);
            let w = slice_integral(phi, &y)?;
            if w != v {
                return Err(Error::Inconsistent { cell: cell.sign_string(), first: v, second: w });
            }
        }
        values[i] = v;
        values[dual.antipode(i)?] = v;
    }
    Ok(ProjectiveCF::from_shared(Arc::new(dual), values)?.simplify())
}

/// `R φ` on `ℙ²*` for `φ` on `ℙ²`.
pub fn radon_p2(phi: &ProjectiveCF, budget: &Budget) -> Result<ProjectiveCF> {
    transform_p2(phi, budget)
}

/// Transform along the transposed incidence, from `ℙ²*` back to `ℙ²`. The
/// incidence `⟨x, y⟩ = 0` is symmetric, so this is the same construction
/// with the roles of the two planes exchanged.
pub fn radon_dual_p2(psi: &ProjectiveCF, budget: &Budget) -> Result<ProjectiveCF> {
    transform_p2(psi, budget)
}

#[derive(Clone, Debug)]
pub struct InversionCheck {
    pub lhs: ProjectiveCF,
    pub rhs: ProjectiveCF,
    pub equal: bool,
}

/// Compares `R' R φ` with `(b − a)φ + a ∫φ`, where `a = χ(ℙ⁰)` and
/// `b = χ(ℙ¹)` are the values of the incidence kernel on `ℙ²`.
pub fn radon_invert_check(phi: &ProjectiveCF, budget: &Budget) -> Result<InversionCheck> {
    let lhs = radon_dual_p2(&radon_p2(phi, budget)?, budget)?;
    let a = ProjectiveCF::constant(0, 1).integrate();
    let b = ProjectiveCF::constant(1, 1).integrate();
    let rhs = phi.scale(b - a).add(&ProjectiveCF::constant(2, a * phi.integrate()))?;
    let equal = lhs == rhs;
    Ok(InversionCheck { lhs, rhs, equal })
}

/// `λ(x, x') = ∫_{ℙ²*} 1_{x ∈ h_y}·1_{x' ∈ h_y}`: the Euler characteristic of
/// the set of lines through both points.
pub fn lambda_kernel(x: &[Rational], x2: &[Rational]) -> Result<i64> {
    slice_integral(&ProjectiveCF::hyperplane(x)?, x2)
}

/// Evaluates the incidence kernel on `ℙ²` at fixed and `random_pairs`
/// random point pairs and returns `(a, b)`: its value off and on the
/// diagonal. Any variation within either case is an error.
pub fn lambda_kernel_check(random_pairs: usize, seed: u64) -> Result<(i64, i64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e = |i: usize| -> RatVector {
        let mut v = crate::ratgeom::zeros(3);
        v[i] = Rational::from_integer(1.into());
        v
    };
    let mut distinct = alloc::vec![(e(0), e(1))];
    let mut equal = alloc::vec![(e(0), e(0))];
    let random_vec = |rng: &mut ChaCha8Rng| -> RatVector {
        loop {
            let v: RatVector = (0..3).map(|_| Rational::from_integer(rng.random_range(-5i64..=5).into())).collect();
            if v.iter().any(|c| !c.is_zero()) {
                return v;
            }
        }
    };
    for _ in 0..random_pairs {
        let x = random_vec(&mut rng);
        let x2 = random_vec(&mut rng);
        if rank(&[x.clone(), x2.clone()]) == 2 {
            distinct.push((x.clone(), x2));
        }
        let scale = Rational::from_integer(rng.random_range(1i64..=4).into());
        equal.push((x.clone(), x.iter().map(|c| c * &scale).collect()));
    }
    let constant = |pairs: &[(RatVector, RatVector)]| -> Result<i64> {
        let first = lambda_kernel(&pairs[0].0, &pairs[0].1)?;
        for (x, x2) in &pairs[1..] {
            let v = lambda_kernel(x, x2)?;
            if v != first {
                return Err(Error::Inconsistent { cell: format!("{x:?},{x2:?}"), first, second: v });
            }
        }
        Ok(first)
    };
    Ok((constant(&distinct)?, constant(&equal)?))
}

/// Restriction of a function on `ℝ³` to the affine plane `plane = 0`, in
/// the plane's own coordinates.
pub fn slice_r3(phi: &AffineCF, plane: &AffineForm) -> Result<AffineCF> {
    crate::error::check_dim(3, phi.dim())?;
    crate::error::check_dim(3, plane.dim())?;
    let flat = solve_linear(3, core::slice::from_ref(plane))?
        .ok_or_else(|| Error::Input("plane equation is inconsistent".into()))?;
    if flat.dim() != 2 {
        return Err(Error::Input("plane form is degenerate".into()));
    }
    phi.restrict(&flat)
}

/// `∫ φ·1_{plane}` for compactly supported `φ` on `ℝ³`.
pub fn slice_eval_r3(phi: &AffineCF, plane: &AffineForm) -> Result<i64> {
    if !phi.has_compact_support() {
        return Err(Error::Input("slice evaluation needs compact support".into()));
    }
    Ok(slice_r3(phi, plane)?.integrate())
}

/// Betti numbers of a compact planar set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BettiSlice {
    pub b0: usize,
    /// `b0 − χ`.
    pub b1: i64,
    /// Connected components of the complement; `b1` must equal this minus 1.
    pub complement_components: usize,
}

impl BettiSlice {
    pub fn consistent(&self) -> bool {
        self.b1 == self.complement_components as i64 - 1
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, i: usize) -> usize {
        let mut r = i;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut j = i;
        while self.0[j] != r {
            let next = self.0[j];
            self.0[j] = r;
            j = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn components(arr: &Arrangement, member: &[bool]) -> usize {
    let poset = arr.face_poset();
    let mut uf = UnionFind((0..arr.len()).collect());
    for d in 0..arr.len() {
        if member[d] {
            for &c in poset.up_set(d) {
                if member[c] {
                    uf.union(d, c);
                }
            }
        }
    }
    (0..arr.len()).filter(|&i| member[i]).map(|i| uf.find(i)).collect::<BTreeSet<_>>().len()
}

/// `b0` and `b1` of the compact set `K` from `φ = 1_K` on `ℝ²`. Components
/// are found through the face order (two cells of a union are adjacent when
/// one lies in the closure of the other).
pub fn betti_slice(phi: &AffineCF) -> Result<BettiSlice> {
    crate::error::check_dim(2, phi.dim())?;
    if phi.values().iter().any(|v| *v != 0 && *v != 1) {
        return Err(Error::Input("betti_slice expects an indicator function".into()));
    }
    if !phi.has_compact_support() {
        return Err(Error::Input("betti_slice expects a compact set".into()));
    }
    let arr = phi.arrangement();
    let support: Vec<bool> = phi.values().iter().map(|v| *v == 1).collect();
    let poset = arr.face_poset();
    for (c, &inside) in support.iter().enumerate() {
        if inside && poset.down_set(c).iter().any(|&d| !support[d]) {
            return Err(Error::Input(format!(
                "set is not closed: a face of cell {} is missing",
                arr.cell(c).sign_string()
            )));
        }
    }
    let b0 = components(arr, &support);
    let outside: Vec<bool> = support.iter().map(|s| !s).collect();
    let complement_components = components(arr, &outside);
    let chi = phi.integrate();
    Ok(BettiSlice { b0, b1: b0 as i64 - chi, complement_components })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructible::{PolyhedronSpec, Relation};
    use crate::ratgeom::rat;
    use alloc::vec;

    fn cube(lo: i64, hi: i64) -> PolyhedronSpec {
        PolyhedronSpec::closed_box(&[rat(lo), rat(0), rat(0)], &[rat(hi), rat(1), rat(1)])
    }

    #[test]
    fn incidence_kernel_values() {
        assert_eq!(lambda_kernel_check(4, 1).unwrap(), (1, 0));
    }

    #[test]
    fn transform_of_a_point_is_its_dual_line() {
        let p = vec![rat(1), rat(2), rat(1)];
        let r = radon_p2(&ProjectiveCF::point(&p).unwrap(), &Budget::default()).unwrap();
        assert_eq!(r, ProjectiveCF::hyperplane(&p).unwrap());
        let check = radon_invert_check(&ProjectiveCF::point(&p).unwrap(), &Budget::default()).unwrap();
        assert!(check.equal);
    }

    #[test]
    fn line_integrals_agree_with_restriction() {
        let tri = AffineCF::indicator(
            &PolyhedronSpec::new(2)
                .with(AffineForm::from_ints(&[1, 0], 0), Relation::Ge)
                .with(AffineForm::from_ints(&[0, 1], 0), Relation::Gt)
                .with(AffineForm::from_ints(&[1, 1], -2), Relation::Le),
        )
        .unwrap();
        let phi = ProjectiveCF::embed_eim(&tri);
        let phi = phi.add(&ProjectiveCF::point(&[rat(1), rat(1), rat(1)]).unwrap()).unwrap();
        for c in -3i64..=3 {
            for (a, b) in [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1)] {
                for y in [vec![rat(a), rat(b), rat(c)], vec![rat(c), rat(a), rat(b)]] {
                    let expected = phi.slice(&y).unwrap().integrate();
                    assert_eq!(slice_integral(&phi, &y).unwrap(), expected, "{y:?}");
                }
            }
        }
    }

    #[test]
    fn slices_of_a_cube() {
        let c = AffineCF::indicator(&cube(0, 1)).unwrap();
        let mid = AffineForm::new(vec![rat(1), rat(1), rat(1)], crate::ratgeom::ratio(-3, 2));
        assert_eq!(slice_eval_r3(&c, &mid).unwrap(), 1);
        let miss = AffineForm::from_ints(&[1, 0, 0], -5);
        assert_eq!(slice_eval_r3(&c, &miss).unwrap(), 0);
        assert!(slice_eval_r3(&AffineCF::constant(3, 1), &miss).is_err());
    }

    #[test]
    fn betti_numbers_of_an_annulus() {
        let outer = AffineCF::indicator(&PolyhedronSpec::closed_box(&[rat(0), rat(0)], &[rat(3), rat(3)])).unwrap();
        let hole = AffineCF::indicator(
            &PolyhedronSpec::new(2)
                .with(AffineForm::from_ints(&[1, 0], -1), Relation::Gt)
                .with(AffineForm::from_ints(&[1, 0], -2), Relation::Lt)
                .with(AffineForm::from_ints(&[0, 1], -1), Relation::Gt)
                .with(AffineForm::from_ints(&[0, 1], -2), Relation::Lt),
        )
        .unwrap();
        let annulus = outer.sub(&hole).unwrap();
        let b = betti_slice(&annulus).unwrap();
        assert_eq!((b.b0, b.b1, b.complement_components), (1, 1, 2));
        assert!(b.consistent());
        assert!(betti_slice(&hole).is_err());
    }
}
