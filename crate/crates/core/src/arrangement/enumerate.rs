//! Incremental cell enumeration.
//!
//! Inserting a hyperplane `H` into an arrangement splits exactly those cells
//! that meet `H` without lying inside it. The cells meeting `H` are found by
//! enumerating the arrangement restricted to `H` (one dimension lower), so
//! no feasibility LP is needed; new sample points come from short exact
//! steps off a point of `C ∩ H`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::ratgeom::{along, solve_linear, sub, zeros, AffineForm, AffineSubspace, RatVector, Rational, Sign};

#[derive(Clone, Debug)]
pub(crate) struct RawCell {
    pub signs: Vec<Sign>,
    pub dim: usize,
    pub sample: RatVector,
}

/// Cells of the arrangement of `forms` in `ℝ^dim`. Forms must be
/// non-constant and pairwise non-proportional.
pub(crate) fn enumerate(dim: usize, forms: &[AffineForm]) -> Vec<RawCell> {
    let whole = vec![RawCell { signs: Vec::new(), dim, sample: zeros(dim) }];
    extend(dim, &[], whole, forms)
}

/// Given the cells of `prior`, returns the cells of `prior ++ new` with sign
/// vectors in that order.
pub(crate) fn extend(dim: usize, prior: &[AffineForm], mut cells: Vec<RawCell>, new: &[AffineForm]) -> Vec<RawCell> {
    if new.is_empty() {
        return cells;
    }
    if dim == 1 {
        let all: Vec<AffineForm> = prior.iter().chain(new).cloned().collect();
        return line_cells(&all);
    }
    let mut all: Vec<AffineForm> = prior.to_vec();
    for h in new {
        cells = insert(dim, &all, h, cells);
        all.push(h.clone());
    }
    cells
}

fn line_cells(forms: &[AffineForm]) -> Vec<RawCell> {
    let mut roots: Vec<Rational> = forms.iter().map(|f| -&f.constant / &f.linear[0]).collect();
    roots.sort();
    roots.dedup();
    let mut samples: Vec<(RatVector, usize)> = Vec::with_capacity(2 * roots.len() + 1);
    match (roots.first(), roots.last()) {
        (Some(lo), Some(hi)) => {
            samples.push((vec![lo - Rational::one()], 1));
            for (i, r) in roots.iter().enumerate() {
                samples.push((vec![r.clone()], 0));
                if let Some(next) = roots.get(i + 1) {
                    samples.push((vec![(r + next) / Rational::from_integer(2.into())], 1));
                }
            }
            samples.push((vec![hi + Rational::one()], 1));
        }
        _ => samples.push((vec![Rational::zero()], 1)),
    }
    samples
        .into_iter()
        .map(|(sample, dim)| RawCell { signs: forms.iter().map(|f| f.sign_at(&sample)).collect(), dim, sample })
        .collect()
}

/// Cells of the arrangement `forms` that meet `flat`, each reported with its
/// sign vector over `forms`, its dimension and an ambient sample point in
/// the intersection.
pub(crate) fn cells_on_flat(forms: &[AffineForm], flat: &AffineSubspace) -> Vec<RawCell> {
    let chart = flat.chart();
    let mut local: Vec<AffineForm> = Vec::new();
    for g in forms {
        let p = g.pullback(&chart);
        if !p.is_constant() {
            let n = p.normalized().0;
            if !local.contains(&n) {
                local.push(n);
            }
        }
    }
    enumerate(flat.dim(), &local)
        .into_iter()
        .map(|c| {
            let x = chart.apply(&c.sample);
            RawCell { signs: forms.iter().map(|g| g.sign_at(&x)).collect(), dim: c.dim, sample: x }
        })
        .collect()
}

fn insert(dim: usize, prior: &[AffineForm], h: &AffineForm, cells: Vec<RawCell>) -> Vec<RawCell> {
    let hyperplane = solve_linear(dim, core::slice::from_ref(h))
        .expect("form dimension checked by caller")
        .expect("non-constant form has a zero set");
    let on_h = cells_on_flat(prior, &hyperplane);
    let index: BTreeMap<&[Sign], &RawCell> = on_h.iter().map(|c| (c.signs.as_slice(), c)).collect();

    let mut out = Vec::with_capacity(cells.len() * 2);
    for mut c in cells {
        match index.get(c.signs.as_slice()) {
            None => {
                let s = h.sign_at(&c.sample);
                c.signs.push(s);
                out.push(c);
            }
            Some(r) if r.dim == c.dim => {
                c.signs.push(Sign::Zero);
                out.push(c);
            }
            Some(r) => {
                let p0 = &r.sample;
                let at_sample = h.eval(&c.sample);
                let dir = if at_sample.is_zero() { direction_off(dim, prior, &c, h) } else { sub(&c.sample, p0) };
                let forward = if at_sample.is_zero() {
                    along(p0, &max_step(prior, &c.signs, p0, &dir), &dir)
                } else {
                    c.sample.clone()
                };
                let back_dir: RatVector = dir.iter().map(|v| -v).collect();
                let backward = along(p0, &max_step(prior, &c.signs, p0, &back_dir), &back_dir);
                let mut on = c.signs.clone();
                on.push(Sign::Zero);
                out.push(RawCell { signs: on, dim: r.dim, sample: p0.clone() });
                for point in [forward, backward] {
                    let mut signs = c.signs.clone();
                    signs.push(h.sign_at(&point));
                    out.push(RawCell { signs, dim: c.dim, sample: point });
                }
            }
        }
    }
    out
}

/// A direction inside the affine hull of `cell` along which `h` varies.
fn direction_off(dim: usize, prior: &[AffineForm], cell: &RawCell, h: &AffineForm) -> RatVector {
    let zero: Vec<AffineForm> =
        prior.iter().zip(&cell.signs).filter(|(_, s)| **s == Sign::Zero).map(|(f, _)| f.clone()).collect();
    let hull = solve_linear(dim, &zero).expect("dims agree").expect("cell is nonempty");
    hull.basis.into_iter().find(|b| !h.slope(b).is_zero()).expect("a split cell is not contained in the hyperplane")
}

/// Step length `t ≤ 1` such that `p + t·d` keeps every nonzero sign in
/// `signs` (half the distance to the nearest wall).
pub(crate) fn max_step(forms: &[AffineForm], signs: &[Sign], p: &[Rational], d: &[Rational]) -> Rational {
    let mut limit: Option<Rational> = None;
    for (g, s) in forms.iter().zip(signs) {
        if *s == Sign::Zero {
            continue;
        }
        let slope = g.slope(d);
        let toward_wall = match s {
            Sign::Pos => slope.is_negative(),
            _ => slope.is_positive(),
        };
        if toward_wall {
            let t = -g.eval(p) / slope;
            if limit.as_ref().is_none_or(|l| t < *l) {
                limit = Some(t);
            }
        }
    }
    match limit {
        Some(l) => {
            let half = l / Rational::from_integer(2.into());
            if half < Rational::one() {
                half
            } else {
                Rational::one()
            }
        }
        None => Rational::one(),
    }
}
