use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::ratgeom::{rat, ratio, AffineMap};

fn half_line(rel: Relation, b: i64) -> AffineCF {
    // x REL b
    AffineCF::indicator(&PolyhedronSpec::new(1).with(AffineForm::from_ints(&[1], -b), rel)).unwrap()
}

fn interval(a: i64, lo: Relation, b: i64, hi: Relation) -> AffineCF {
    AffineCF::indicator(
        &PolyhedronSpec::new(1).with(AffineForm::from_ints(&[1], -a), lo).with(AffineForm::from_ints(&[1], -b), hi),
    )
    .unwrap()
}

fn triangle() -> AffineCF {
    // closed triangle with vertices (0,0), (1,0), (0,1)
    AffineCF::indicator(
        &PolyhedronSpec::new(2)
            .with(AffineForm::from_ints(&[1, 0], 0), Relation::Ge)
            .with(AffineForm::from_ints(&[0, 1], 0), Relation::Ge)
            .with(AffineForm::from_ints(&[1, 1], -1), Relation::Le),
    )
    .unwrap()
}

#[test]
fn one_dimensional_integrals() {
    use Relation::*;
    assert_eq!(AffineCF::constant(1, 1).integrate(), -1);
    assert_eq!(AffineCF::constant(1, 1).integrate_np(), 1);
    let cases = [
        (half_line(Lt, 0), -1, 0),
        (half_line(Le, 0), 0, 1),
        (interval(0, Ge, 1, Le), 1, 1),
        (interval(0, Gt, 1, Lt), -1, -1),
        (interval(0, Ge, 1, Lt), 0, 0),
    ];
    for (phi, chi, chi_np) in cases {
        assert_eq!(phi.integrate(), chi);
        assert_eq!(phi.integrate_np(), chi_np);
    }
}

#[test]
fn evaluation_follows_the_constraints() {
    let phi = interval(0, Relation::Ge, 1, Relation::Lt);
    for (x, v) in [(ratio(-1, 2), 0), (rat(0), 1), (ratio(1, 2), 1), (rat(1), 0), (rat(2), 0)] {
        assert_eq!(phi.evaluate(&[x]).unwrap(), v);
    }
    let t = triangle();
    assert_eq!(t.evaluate(&[ratio(1, 3), ratio(1, 3)]).unwrap(), 1);
    assert_eq!(t.evaluate(&[ratio(1, 2), ratio(1, 2)]).unwrap(), 1);
    assert_eq!(t.evaluate(&[rat(1), rat(1)]).unwrap(), 0);
}

#[test]
fn euler_characteristics_of_planar_sets() {
    assert_eq!(triangle().integrate(), 1);
    assert_eq!(AffineCF::constant(2, 1).integrate(), 1);
    let boundary = triangle().sub(&triangle().dual().scale(1)).unwrap();
    // D1_K is the interior for a closed 2-cell, so 1_K - D1_K = 1_{∂K}
    assert_eq!(boundary.integrate(), 0);
    let open = triangle().dual();
    assert_eq!(open.evaluate(&[ratio(1, 3), ratio(1, 3)]).unwrap(), 1);
    assert_eq!(open.evaluate(&[rat(0), ratio(1, 3)]).unwrap(), 0);
}

#[test]
fn duality_is_an_involution_on_examples() {
    let cases = [triangle(), interval(0, Ge, 2, Lt), AffineCF::point(&[rat(3)]), half_line(Relation::Gt, 1)];
    use Relation::*;
    for phi in cases {
        assert_eq!(phi.dual().dual(), phi);
    }
}

#[test]
fn dual_of_closed_polytope_is_signed_interior() {
    // D 1_Z = (-1)^d 1_{relint Z}
    let seg = interval(0, Relation::Ge, 1, Relation::Le);
    assert_eq!(seg.dual(), interval(0, Relation::Gt, 1, Relation::Lt).negate());
    let pt = AffineCF::point(&[rat(1), rat(2)]);
    assert_eq!(pt.dual(), pt);
}

#[test]
fn pullback_by_translation_shifts() {
    let phi = interval(0, Relation::Ge, 1, Relation::Le);
    let shift = AffineMap::new(1, vec![vec![rat(1)]], vec![rat(2)]).unwrap();
    assert_eq!(phi.pullback(&shift).unwrap(), interval(-2, Relation::Ge, -1, Relation::Le));
}

#[test]
fn pushforward_of_triangle_to_a_line() {
    let f = AffineMap::projection(2, &[0]);
    let budget = Budget::default();
    let pushed = triangle().pushforward(&f, &budget).unwrap();
    assert_eq!(pushed, interval(0, Relation::Ge, 1, Relation::Le));
    let open = triangle().dual();
    // fibres of the open triangle over (0,1) are open intervals
    assert_eq!(open.pushforward(&f, &budget).unwrap(), interval(0, Relation::Gt, 1, Relation::Lt).negate());
    assert_eq!(pushed.integrate(), triangle().integrate());
}

#[test]
fn convolution_of_intervals() {
    let a = interval(0, Relation::Ge, 2, Relation::Le);
    let b = interval(0, Relation::Ge, 3, Relation::Le);
    let c = a.convolve(&b, &Budget::default()).unwrap();
    assert_eq!(c, interval(0, Relation::Ge, 5, Relation::Le));
    let delta = AffineCF::point(&[rat(4)]);
    assert_eq!(a.convolve(&delta, &Budget::default()).unwrap(), interval(4, Relation::Ge, 6, Relation::Le));
}

#[test]
fn gamma_projection_of_a_dirac() {
    let gamma = Cone::new(&PolyhedronSpec::new(1).with(AffineForm::from_ints(&[1], 0), Relation::Ge)).unwrap();
    let projected = AffineCF::point(&[rat(0)]).gamma_project(&gamma, &Budget::default()).unwrap();
    // 1_{[0,∞)} convolved non-properly with the point at the origin
    assert!(projected.is_gamma_constructible(&gamma, &[vec![rat(1)]]).unwrap());
    assert_ne!(projected, AffineCF::point(&[rat(0)]));
    assert!(!AffineCF::point(&[rat(0)]).is_gamma_constructible(&gamma, &[vec![rat(1)]]).unwrap());
}

#[test]
fn projection_formulas_on_a_strip() {
    // f(x, y) = x, φ = 1_{ℝ²}, ψ = 1_{(-1,1)}: the PL strip keeps both sides equal
    let f = AffineMap::projection(2, &[0]);
    let budget = Budget::default();
    let phi = AffineCF::constant(2, 1);
    let psi = interval(-1, Relation::Gt, 1, Relation::Lt);
    let lhs = phi.multiply(&psi.pullback(&f).unwrap()).unwrap().pushforward_np(&f, &budget).unwrap();
    let rhs = psi.multiply(&phi.pushforward_np(&f, &budget).unwrap()).unwrap();
    assert_eq!(lhs, psi);
    assert_eq!(lhs, rhs);
    let lhs = phi.multiply(&psi.pullback(&f).unwrap()).unwrap().pushforward(&f, &budget).unwrap();
    let rhs = psi.multiply(&phi.pushforward(&f, &budget).unwrap()).unwrap();
    assert_eq!(lhs, psi.negate());
    assert_eq!(lhs, rhs);
}

#[test]
fn exceptional_pullback_matches_duals() {
    let f = AffineMap::projection(2, &[1]);
    let psi = interval(0, Relation::Ge, 1, Relation::Lt);
    let epb = psi.epb(&f).unwrap();
    assert_eq!(epb, psi.dual().pullback(&f).unwrap().dual());
}

#[test]
fn semantic_equality_ignores_the_arrangement() {
    let a = AffineCF::constant(1, 1);
    let b = a.refine([AffineForm::from_ints(&[1], 3)]).unwrap();
    assert_eq!(a, b);
    assert_eq!(b.simplify().arrangement().len(), 1);
    assert!(interval(0, Relation::Ge, 1, Relation::Le)
        .sub(&interval(0, Relation::Ge, 1, Relation::Le))
        .unwrap()
        .is_zero());
}

#[test]
fn kernel_composition_of_graphs() {
    // graphs of x ↦ x + 1 and x ↦ 2x compose to x ↦ 2x + 2
    let graph = |a: i64, b: i64| {
        AffineCF::indicator(&PolyhedronSpec::new(2).with(AffineForm::from_ints(&[a, -1], b), Relation::Eq)).unwrap()
    };
    let composed = graph(1, 1).compose_kernels(&graph(2, 0), 1, &Budget::default()).unwrap();
    assert_eq!(composed, graph(2, 2));
}

#[test]
fn budget_is_enforced() {
    let tight = Budget { max_cells: 2, ..Budget::default() };
    let a = interval(0, Relation::Ge, 2, Relation::Le);
    assert!(matches!(a.convolve(&a, &tight), Err(Error::Budget { .. })));
}

#[test]
fn external_product_multiplies_integrals() {
    let pieces: Vec<AffineCF> = vec![triangle(), interval(0, Relation::Gt, 1, Relation::Lt), AffineCF::constant(1, 2)];
    for a in &pieces {
        for b in &pieces {
            assert_eq!(a.external_product(b).integrate(), a.integrate() * b.integrate());
        }
    }
}

#[test]
fn pushforward_along_a_map_that_is_not_onto() {
    // x ↦ (x, 2x - 1) sends [0, 1] onto a segment of the line y = 2x - 1
    let f = AffineMap::new(1, vec![vec![rat(1)], vec![rat(2)]], vec![rat(0), rat(-1)]).unwrap();
    let seg = interval(0, Relation::Ge, 1, Relation::Le);
    let pushed = seg.pushforward(&f, &Budget::default()).unwrap();
    assert_eq!(pushed.evaluate(&[ratio(1, 2), rat(0)]).unwrap(), 1);
    assert_eq!(pushed.evaluate(&[ratio(1, 2), rat(1)]).unwrap(), 0);
    assert_eq!(pushed.evaluate(&[rat(2), rat(3)]).unwrap(), 0);
    assert_eq!(pushed.integrate(), 1);
    // constant map: everything lands on one point
    let c = AffineMap::new(1, vec![vec![rat(0)]], vec![rat(5)]).unwrap();
    assert_eq!(seg.pushforward(&c, &Budget::default()).unwrap(), AffineCF::point(&[rat(5)]));
}
