//! Slow, independent reference computations used to cross-check the
//! engine.

use eulercalc::ratgeom::{solve_linear, strict_feasible};
use eulercalc::{AffineCF, AffineForm, Arrangement, PolyhedronSpec, ProjectiveCF, Rational, Relation, Sign};
use num_traits::{Signed, Zero};

use crate::error::CliResult;

/// All realizable `(sign vector, dimension)` pairs, found by testing each of
/// the `3^m` sign vectors for strict feasibility with an exact LP.
pub fn naive_cells(dim: usize, forms: &[AffineForm]) -> CliResult<Vec<(Vec<Sign>, usize)>> {
    let m = forms.len();
    let mut out = Vec::new();
    for code in 0..3usize.pow(m as u32) {
        let mut c = code;
        let signs: Vec<Sign> = (0..m)
            .map(|_| {
                let s = [Sign::Neg, Sign::Zero, Sign::Pos][c % 3];
                c /= 3;
                s
            })
            .collect();
        let pick = |want: Sign| -> Vec<AffineForm> {
            forms.iter().zip(&signs).filter(|(_, s)| **s == want).map(|(f, _)| f.clone()).collect()
        };
        let eqs = pick(Sign::Zero);
        if strict_feasible(dim, &eqs, &pick(Sign::Pos), &pick(Sign::Neg))?.is_some() {
            let hull = solve_linear(dim, &eqs)?.expect("feasible system");
            out.push((signs, hull.dim()));
        }
    }
    out.sort();
    Ok(out)
}

/// `Dφ(x)` computed literally: `∫ φ·1_B` for an open cube `B` around `x`
/// small enough to meet only the walls through `x`.
pub fn ball_dual(phi: &AffineCF, x: &[Rational]) -> CliResult<i64> {
    let mut eps: Option<Rational> = None;
    for f in phi.arrangement().forms() {
        let v = f.eval(x);
        if !v.is_zero() {
            let norm: Rational = f.linear.iter().map(|a| a.abs()).sum();
            let r = v.abs() / norm / Rational::from_integer(2.into());
            if eps.as_ref().is_none_or(|e| r < *e) {
                eps = Some(r);
            }
        }
    }
    let eps = eps.unwrap_or_else(|| Rational::from_integer(1.into()));
    let mut ball = PolyhedronSpec::new(x.len());
    for (i, xi) in x.iter().enumerate() {
        let mut e = eulercalc::ratgeom::zeros(x.len());
        e[i] = Rational::from_integer(1.into());
        ball = ball
            .with(AffineForm::new(e.clone(), -(xi - &eps)), Relation::Gt)
            .with(AffineForm::new(e, -(xi + &eps)), Relation::Lt);
    }
    Ok(phi.multiply(&AffineCF::indicator(&ball)?)?.integrate())
}

/// Compares the face-poset dual with [`ball_dual`] at the sample point of
/// every cell; returns the sign strings of disagreeing cells.
pub fn check_dual_against_balls(phi: &AffineCF) -> CliResult<Vec<String>> {
    let d = phi.dual();
    let mut bad = Vec::new();
    for cell in phi.arrangement().cells() {
        if ball_dual(phi, &cell.sample)? != d.evaluate(&cell.sample)? {
            bad.push(cell.sign_string());
        }
    }
    Ok(bad)
}

/// Cell list of the incremental enumerator in the same shape as
/// [`naive_cells`].
pub fn engine_cells(dim: usize, forms: &[AffineForm]) -> CliResult<Vec<(Vec<Sign>, usize)>> {
    // Arrangement::new normalizes and reorders the forms; map back.
    let arr = Arrangement::new(dim, forms.to_vec())?;
    let placement: Vec<(usize, bool)> = forms
        .iter()
        .map(|f| {
            let (g, flip) = f.normalized();
            (arr.form_index(&g).expect("present"), flip)
        })
        .collect();
    let mut out: Vec<(Vec<Sign>, usize)> = arr
        .cells()
        .iter()
        .map(|c| {
            let signs = placement.iter().map(|&(k, flip)| if flip { c.signs[k].flip() } else { c.signs[k] }).collect();
            (signs, c.dim)
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Projective duality restricted to each affine chart must agree with
/// affine duality of the restriction. Returns the failing chart indices.
pub fn check_projective_dual_by_charts(phi: &ProjectiveCF) -> CliResult<Vec<usize>> {
    let d = phi.dual();
    let mut bad = Vec::new();
    for i in 1..=phi.n() + 1 {
        if d.restrict_chart(i)? != phi.restrict_chart(i)?.dual() {
            bad.push(i);
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use eulercalc::ratgeom::rat;

    #[test]
    fn naive_enumeration_of_two_crossing_lines() {
        let forms = [AffineForm::from_ints(&[1, 0], 0), AffineForm::from_ints(&[0, 1], 0)];
        let cells = naive_cells(2, &forms).unwrap();
        assert_eq!(cells.len(), 9);
        assert_eq!(cells, engine_cells(2, &forms).unwrap());
    }

    #[test]
    fn ball_oracle_on_an_open_interval() {
        let phi = AffineCF::indicator(
            &PolyhedronSpec::new(1)
                .with(AffineForm::from_ints(&[1], 0), Relation::Gt)
                .with(AffineForm::from_ints(&[1], -1), Relation::Lt),
        )
        .unwrap();
        assert_eq!(ball_dual(&phi, &[rat(0)]).unwrap(), -1);
        assert_eq!(ball_dual(&phi, &[rat(2)]).unwrap(), 0);
        assert!(check_dual_against_balls(&phi).unwrap().is_empty());
    }

    #[test]
    fn chart_oracle_on_the_projective_plane() {
        let line = ProjectiveCF::hyperplane(&[rat(1), rat(1), rat(-2)]).unwrap();
        assert!(check_projective_dual_by_charts(&line).unwrap().is_empty());
    }
}
