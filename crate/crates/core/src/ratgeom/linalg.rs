use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{AffineForm, AffineMap, RatVector, Rational};
use crate::error::check_dim;
use crate::Result;

/// An affine subspace `point + span(basis)` with linearly independent basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSubspace {
    pub point: RatVector,
    pub basis: Vec<RatVector>,
}

/// Reduced row echelon form in place; returns pivot columns. Pivots are
/// taken as the first nonzero entry in column order so results are
/// reproducible.
pub(crate) fn rref(rows: &mut Vec<RatVector>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let (pivot_row, row) = if i < r {
                    let (a, b) = rows.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = rows.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (x, y) in row.iter_mut().zip(pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Rank of a list of equal-length vectors.
pub fn rank(rows: &[RatVector]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let mut m = rows.to_vec();
    rref(&mut m, first.len()).len()
}

/// Solves the system `f(x) = 0` for every `f` in `equations`.
///
/// Returns `None` when inconsistent; otherwise one exact solution (free
/// variables set to zero) together with a basis of the solution directions.
pub fn solve_linear(dim: usize, equations: &[AffineForm]) -> Result<Option<AffineSubspace>> {
    for e in equations {
        check_dim(dim, e.dim())?;
    }
    let mut rows: Vec<RatVector> = equations
        .iter()
        .map(|e| {
            let mut r = e.linear.clone();
            r.push(-&e.constant);
            r
        })
        .collect();
    let pivots = rref(&mut rows, dim + 1);
    if pivots.last() == Some(&dim) {
        return Ok(None);
    }
    let mut point = super::zeros(dim);
    for (row, &c) in rows.iter().zip(&pivots) {
        point[c] = row[dim].clone();
    }
    let basis = (0..dim)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = super::zeros(dim);
            v[free] = Rational::one();
            for (row, &c) in rows.iter().zip(&pivots) {
                v[c] = -&row[free];
            }
            v
        })
        .collect();
    Ok(Some(AffineSubspace { point, basis }))
}

impl AffineSubspace {
    pub fn whole(dim: usize) -> Self {
        let basis = (0..dim)
            .map(|i| {
                let mut v = super::zeros(dim);
                v[i] = Rational::one();
                v
            })
            .collect();
        AffineSubspace { point: super::zeros(dim), basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.point.len()
    }

    pub fn chart(&self) -> AffineMap {
        AffineMap::from_columns(self.point.clone(), &self.basis)
    }

    /// Image under an affine map, with a freshly reduced basis.
    pub fn image(&self, f: &AffineMap) -> AffineSubspace {
        let mut dirs: Vec<RatVector> = self.basis.iter().map(|b| f.apply_linear(b)).collect();
        let pivots = rref(&mut dirs, f.n_out());
        dirs.truncate(pivots.len());
        AffineSubspace { point: f.apply(&self.point), basis: dirs }
    }

    /// Independent normalized forms whose common zero set is this subspace.
    pub fn equations(&self) -> Vec<AffineForm> {
        let n = self.ambient_dim();
        let dirs: Vec<AffineForm> = self.basis.iter().map(|b| AffineForm::linear(b.clone())).collect();
        let normals =
            solve_linear(n, &dirs).expect("dimensions agree").expect("homogeneous systems are consistent").basis;
        normals
            .into_iter()
            .map(|nrm| {
                let c = -super::dot(&nrm, &self.point);
                AffineForm::new(nrm, c).normalized().0
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::super::{rat, ratio};
    use super::*;
    use alloc::vec;

    #[test]
    fn one_equation_one_unknown() {
        let s = solve_linear(1, &[AffineForm::from_ints(&[1], -1)]).unwrap().unwrap();
        assert_eq!(s.point, vec![rat(1)]);
        assert!(s.basis.is_empty());
    }

    #[test]
    fn empty_system() {
        let s = solve_linear(2, &[]).unwrap().unwrap();
        assert_eq!(s.point, vec![rat(0), rat(0)]);
        assert_eq!(s.basis, vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]]);
    }

    #[test]
    fn two_by_two() {
        // x + y = 1, x - y = 0; by hand x = y = 1/2.
        let eqs = [AffineForm::from_ints(&[1, 1], -1), AffineForm::from_ints(&[1, -1], 0)];
        let s = solve_linear(2, &eqs).unwrap().unwrap();
        assert_eq!(s.point, vec![ratio(1, 2), ratio(1, 2)]);
    }

    #[test]
    fn inconsistent_and_mismatch() {
        let eqs = [AffineForm::from_ints(&[1, 0], 0), AffineForm::from_ints(&[2, 0], -1)];
        assert!(solve_linear(2, &eqs).unwrap().is_none());
        assert!(solve_linear(3, &eqs).is_err());
    }

    #[test]
    fn equations_cut_out_subspace() {
        let line = AffineSubspace { point: vec![rat(1), rat(2), rat(0)], basis: vec![vec![rat(1), rat(1), rat(1)]] };
        let eqs = line.equations();
        assert_eq!(eqs.len(), 2);
        let back = solve_linear(3, &eqs).unwrap().unwrap();
        assert_eq!(back.dim(), 1);
        for e in &eqs {
            assert!(e.eval(&line.point).is_zero());
            assert!(e.slope(&line.basis[0]).is_zero());
        }
        assert!(eqs.iter().all(|e| e.eval(&back.point).is_zero()));
    }
}
