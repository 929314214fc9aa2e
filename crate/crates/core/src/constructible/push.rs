//! Inverse and direct images along affine maps.

use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{AffineCF, Budget};
use crate::arrangement::{Arrangement, Sign};
use crate::error::check_dim;
use crate::ratgeom::{rank, rref, solve_linear, AffineForm, AffineMap, AffineSubspace, RatVector, Rational};
use crate::{Error, Result};

impl AffineCF {
    /// `g*ψ = ψ ∘ g` for `g: ℝᵏ → ℝⁿ`.
    pub fn pullback(&self, g: &AffineMap) -> Result<AffineCF> {
        check_dim(self.dim(), g.n_out())?;
        let forms: Vec<AffineForm> =
            self.arr.forms().iter().map(|f| f.pullback(g)).filter(|f| !f.is_constant()).collect();
        let arr = Arrangement::new(g.n_in(), forms)?;
        let values = arr.cells().iter().map(|c| self.evaluate(&g.apply(&c.sample))).collect::<Result<_>>()?;
        Ok(AffineCF { arr: Arc::new(arr), values })
    }

    /// Restriction to an affine subspace, in the subspace's coordinates.
    pub fn restrict(&self, flat: &AffineSubspace) -> Result<AffineCF> {
        self.pullback(&flat.chart())
    }

    /// `∫_{f⁻¹(y)} φ`, the Euler integral over one fiber.
    pub fn fiber_integral(&self, f: &AffineMap, y: &[Rational]) -> Result<i64> {
        check_dim(f.n_out(), y.len())?;
        let eqs: Vec<AffineForm> = f
            .rows()
            .iter()
            .zip(f.translation())
            .zip(y)
            .map(|((row, t), yi)| AffineForm::new(row.clone(), t - yi))
            .collect();
        match solve_linear(f.n_in(), &eqs)? {
            Some(fiber) => Ok(self.restrict(&fiber)?.integrate()),
            None => Ok(0),
        }
    }

    /// Candidate walls in the target of `f`: for every face of a cell
    /// carrying a nonzero value, the image of its affine hull whenever that
    /// image is not all of the target. Hyperplane images are walls
    /// themselves; a smaller image only adds its equations when the
    /// hyperplane walls through it do not already cut it out.
    fn push_walls(&self, f: &AffineMap) -> Vec<AffineForm> {
        let k = f.n_out();
        let poset = self.arr.face_poset();
        let mut seen: BTreeSet<Vec<bool>> = BTreeSet::new();
        let mut walls: BTreeSet<AffineForm> = BTreeSet::new();
        let mut small: Vec<AffineSubspace> = Vec::new();
        for d in 0..self.arr.len() {
            if poset.up_set(d).iter().all(|&c| self.values[c] == 0) {
                continue;
            }
            let pattern: Vec<bool> = self.arr.cell(d).signs.iter().map(|s| *s == Sign::Zero).collect();
            if !seen.insert(pattern) {
                continue;
            }
            let image = self.arr.affine_hull(d).image(f);
            if image.dim() + 1 == k {
                walls.extend(image.equations());
            } else if image.dim() < k {
                small.push(image);
            }
        }
        small.sort_by_key(|s| core::cmp::Reverse(s.dim()));
        for image in small {
            let through: Vec<RatVector> = walls
                .iter()
                .filter(|w| w.sign_at(&image.point) == Sign::Zero && image.basis.iter().all(|b| w.slope(b).is_zero()))
                .map(|w| w.linear.clone())
                .collect();
            if image.dim() + rank(&through) < k {
                walls.extend(image.equations());
            }
        }
        walls.into_iter().collect()
    }

    /// Direct image `(∫_f φ)(y) = ∫ 1_{f⁻¹(y)}·φ`.
    ///
    /// Each target cell gets the fiber integral at its sample point, and is
    /// re-checked at `budget.oversample` further random points; a mismatch is
    /// reported as [`Error::Inconsistent`]. A map that is not onto is handled
    /// by pushing onto its image and extending by zero.
    pub fn pushforward(&self, f: &AffineMap, budget: &Budget) -> Result<AffineCF> {
        check_dim(self.dim(), f.n_in())?;
        let k = f.n_out();
        if f.rank() == k {
            return self.pushforward_onto(f, budget);
        }
        // f = ι ∘ f0 with f0 onto ℝʳ and ι(u) = t + Σ u_j·b_j an injection
        let mut dirs: Vec<RatVector> =
            (0..f.n_in()).map(|j| f.rows().iter().map(|row| row[j].clone()).collect()).collect();
        let pivots = rref(&mut dirs, k);
        let t = f.translation().to_vec();
        let f0 = AffineMap::new(
            f.n_in(),
            pivots.iter().map(|&p| f.rows()[p].clone()).collect(),
            crate::ratgeom::zeros(pivots.len()),
        )?;
        let psi = self.pushforward_onto(&f0, budget)?;
        let image = AffineSubspace { point: t.clone(), basis: dirs };
        let coords = AffineMap::new(
            k,
            pivots
                .iter()
                .map(|&p| {
                    let mut r = crate::ratgeom::zeros(k);
                    r[p] = Rational::one();
                    r
                })
                .collect(),
            pivots.iter().map(|&p| -&t[p]).collect(),
        )?;
        let equations = image.equations();
        let mut forms = equations.clone();
        forms.extend(psi.arr.forms().iter().map(|g| g.pullback(&coords)).filter(|g| !g.is_constant()));
        let target = Arrangement::new(k, forms)?;
        budget.check(target.len())?;
        let values = target
            .cells()
            .iter()
            .map(|c| {
                if equations.iter().all(|e| e.sign_at(&c.sample) == Sign::Zero) {
                    psi.evaluate(&coords.apply(&c.sample))
                } else {
                    Ok(0)
                }
            })
            .collect::<Result<_>>()?;
        Ok(AffineCF { arr: Arc::new(target), values }.simplify())
    }

    fn pushforward_onto(&self, f: &AffineMap, budget: &Budget) -> Result<AffineCF> {
        let k = f.n_out();
        let target = Arrangement::new(k, self.push_walls(f))?;
        budget.check(target.len())?;
        let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
        let mut values = Vec::with_capacity(target.len());
        for (i, cell) in target.cells().iter().enumerate() {
            let v = self.fiber_integral(f, &cell.sample)?;
            for _ in 0..budget.oversample {
                let y = target.random_point(i, &mut rng);
                let w = self.fiber_integral(f, &y)?;
                if w != v {
                    return Err(Error::Inconsistent { cell: cell.sign_string(), first: v, second: w });
                }
            }
            values.push(v);
        }
        Ok(AffineCF { arr: Arc::new(target), values }.simplify())
    }

    /// `∫^np_f φ = D ∫_f D φ`.
    pub fn pushforward_np(&self, f: &AffineMap, budget: &Budget) -> Result<AffineCF> {
        Ok(self.dual().pushforward(f, budget)?.dual())
    }

    /// Exceptional inverse image `f^! ψ = D f*(D ψ)`.
    pub fn epb(&self, f: &AffineMap) -> Result<AffineCF> {
        Ok(self.dual().pullback(f)?.dual())
    }

    /// Checks the declared value of every cell against direct fiber
    /// integrals at `per_cell` random points of that cell, where `self` is
    /// claimed to be `∫_f source`.
    pub fn check_pushforward(&self, source: &AffineCF, f: &AffineMap, per_cell: usize, seed: u64) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (i, cell) in self.arr.cells().iter().enumerate() {
            for _ in 0..per_cell {
                let y = self.arr.random_point(i, &mut rng);
                let w = source.fiber_integral(f, &y)?;
                if w != self.values[i] {
                    return Err(Error::Inconsistent { cell: cell.sign_string(), first: self.values[i], second: w });
                }
            }
        }
        Ok(())
    }
}
