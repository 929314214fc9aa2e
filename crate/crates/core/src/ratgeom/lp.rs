use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::{solve_linear, AffineForm, RatVector, Rational};
use crate::error::check_dim;
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, x: RatVector },
    Unbounded,
}

/// Maximizes `c·x` subject to `A·x ≤ b`, `x ≥ 0`, where `b ≥ 0` so that the
/// slack basis is feasible. Dense tableau simplex with Bland's rule.
pub fn maximize(a: &[RatVector], b: &[Rational], c: &[Rational]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    debug_assert!(b.iter().all(|v| !v.is_negative()));
    let width = n + m + 1;
    let mut t: Vec<RatVector> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = super::zeros(width);
            r[..n].clone_from_slice(row);
            r[n + i] = Rational::one();
            r[width - 1] = b[i].clone();
            r
        })
        .collect();
    let mut z = super::zeros(width);
    for (j, cj) in c.iter().enumerate() {
        z[j] = -cj;
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    while let Some(enter) = (0..n + m).find(|&j| z[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let r = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => r < *lr || (r == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, r));
                }
            }
        }
        let Some((p, _)) = leave else {
            return LpOutcome::Unbounded;
        };
        let inv = t[p][enter].recip();
        for v in t[p].iter_mut() {
            *v *= &inv;
        }
        let pivot = t[p].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != p && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        if !z[enter].is_zero() {
            let f = z[enter].clone();
            for (x, y) in z.iter_mut().zip(&pivot) {
                *x -= &f * y;
            }
        }
        basis[p] = enter;
    }

    let mut x = super::zeros(n);
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width - 1].clone();
        }
    }
    LpOutcome::Optimal { value: z[width - 1].clone(), x }
}

/// Finds a point with `e(x) = 0` for all `equalities`, `p(x) > 0` for all
/// `positive` and `q(x) < 0` for all `negative`, or `None` if no such point
/// exists.
///
/// The equalities are eliminated first; the strict system in the remaining
/// parameters `u` is homogenized with a scale `τ ≥ 0` and a margin `s`:
/// maximize `s` subject to `g(u, τ) ≥ s`, `τ ≥ s`, `s ≤ 1`. The system is
/// strictly feasible exactly when the optimum is positive, and then `u / τ`
/// is a witness.
pub fn strict_feasible(
    dim: usize,
    equalities: &[AffineForm],
    positive: &[AffineForm],
    negative: &[AffineForm],
) -> Result<Option<RatVector>> {
    for f in positive.iter().chain(negative) {
        check_dim(dim, f.dim())?;
    }
    let Some(sub) = solve_linear(dim, equalities)? else {
        return Ok(None);
    };
    let chart = sub.chart();
    let k = sub.dim();
    let mut strict: Vec<AffineForm> = Vec::new();
    for g in positive.iter().map(|g| g.pullback(&chart)).chain(negative.iter().map(|g| g.pullback(&chart).negated())) {
        if g.is_constant() {
            if !g.constant.is_positive() {
                return Ok(None);
            }
        } else {
            strict.push(g);
        }
    }
    if strict.is_empty() {
        return Ok(Some(sub.point));
    }

    // columns: u⁺ (k), u⁻ (k), τ, s
    let ncols = 2 * k + 2;
    let mut rows = Vec::with_capacity(strict.len() + 2);
    let mut rhs = Vec::with_capacity(strict.len() + 2);
    for g in &strict {
        let mut r = super::zeros(ncols);
        for j in 0..k {
            r[j] = -&g.linear[j];
            r[k + j] = g.linear[j].clone();
        }
        r[2 * k] = -&g.constant;
        r[2 * k + 1] = Rational::one();
        rows.push(r);
        rhs.push(Rational::zero());
    }
    let mut r = super::zeros(ncols);
    r[2 * k] = -Rational::one();
    r[2 * k + 1] = Rational::one();
    rows.push(r);
    rhs.push(Rational::zero());
    let mut r = super::zeros(ncols);
    r[2 * k + 1] = Rational::one();
    rows.push(r);
    rhs.push(Rational::one());
    let mut c = super::zeros(ncols);
    c[2 * k + 1] = Rational::one();

    match maximize(&rows, &rhs, &c) {
        LpOutcome::Optimal { value, x } if value.is_positive() => {
            let tau = &x[2 * k];
            let u: RatVector = (0..k).map(|j| (&x[j] - &x[k + j]) / tau).collect();
            Ok(Some(chart.apply(&u)))
        }
        _ => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::super::{rat, Sign};
    use super::*;
    use alloc::vec;

    fn f(l: &[i64], c: i64) -> AffineForm {
        AffineForm::from_ints(l, c)
    }

    #[test]
    fn forced_shape() {
        let p = strict_feasible(2, &[f(&[0, 1], 0)], &[f(&[1, 0], 0)], &[]).unwrap().unwrap();
        assert!(p[1].is_zero());
        assert!(p[0].is_positive());
    }

    #[test]
    fn contradiction_is_empty() {
        assert!(strict_feasible(1, &[], &[f(&[1], 0)], &[f(&[1], 0)]).unwrap().is_none());
    }

    #[test]
    fn open_segment() {
        let p = strict_feasible(2, &[f(&[1, 1], -1)], &[f(&[1, 0], 0), f(&[0, 1], 0)], &[]).unwrap().unwrap();
        assert_eq!(&p[0] + &p[1], rat(1));
        assert!(p[0].is_positive() && p[1].is_positive());
    }

    #[test]
    fn unbounded_region_and_thin_wedge() {
        // y > 1000 x, y < 1001 x, x > 0
        let p = strict_feasible(2, &[], &[f(&[-1000, 1], 0), f(&[1, 0], 0)], &[f(&[-1001, 1], 0)]).unwrap().unwrap();
        assert_eq!(f(&[-1000, 1], 0).sign_at(&p), Sign::Pos);
        assert_eq!(f(&[-1001, 1], 0).sign_at(&p), Sign::Neg);
    }

    #[test]
    fn simplex_small_problem() {
        // max x + y s.t. x + 2y ≤ 4, 3x + y ≤ 6 → (8/5, 6/5), value 14/5
        let a = vec![vec![rat(1), rat(2)], vec![rat(3), rat(1)]];
        let out = maximize(&a, &[rat(4), rat(6)], &[rat(1), rat(1)]);
        assert_eq!(
            out,
            LpOutcome::Optimal {
                value: super::super::ratio(14, 5),
                x: vec![super::super::ratio(8, 5), super::super::ratio(6, 5)]
            }
        );
        assert_eq!(maximize(&[vec![rat(-1)]], &[rat(1)], &[rat(1)]), LpOutcome::Unbounded);
    }
}
