use eulercalc::ratgeom::rat;
use eulercalc::{AffineCF, AffineForm, AffineMap, Budget, PolyhedronSpec, Relation};
use proptest::prelude::*;

const RELATIONS: [Relation; 5] = [Relation::Lt, Relation::Le, Relation::Eq, Relation::Ge, Relation::Gt];

fn constraint() -> impl Strategy<Value = (AffineForm, Relation)> {
    (-2i64..=2, -2i64..=2, -3i64..=3, 0usize..5)
        .prop_filter("non-constant", |(a, b, _, _)| *a != 0 || *b != 0)
        .prop_map(|(a, b, c, r)| (AffineForm::from_ints(&[a, b], c), RELATIONS[r]))
}

fn polyhedron(bounded: bool) -> impl Strategy<Value = PolyhedronSpec> {
    prop::collection::vec(constraint(), 1..=3).prop_map(move |cs| {
        let base = if bounded {
            PolyhedronSpec::closed_box(&[rat(-3), rat(-3)], &[rat(3), rat(3)])
        } else {
            PolyhedronSpec::new(2)
        };
        cs.into_iter().fold(base, |s, (f, r)| s.with(f, r))
    })
}

fn function(bounded: bool) -> impl Strategy<Value = AffineCF> {
    prop::collection::vec((polyhedron(bounded), -2i64..=2), 1..=3).prop_map(|terms| {
        terms
            .iter()
            .fold(AffineCF::zero(2), |acc, (spec, c)| acc.add(&AffineCF::indicator(spec).unwrap().scale(*c)).unwrap())
    })
}

fn point() -> impl Strategy<Value = Vec<eulercalc::Rational>> {
    prop::collection::vec((-8i64..=8).prop_map(|k| eulercalc::ratgeom::ratio(k, 2)), 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn duality_is_an_involution(phi in function(false)) {
        prop_assert_eq!(phi.dual().dual(), phi);
    }

    #[test]
    fn sums_are_pointwise(phi in function(false), psi in function(false), x in point()) {
        let sum = phi.add(&psi).unwrap();
        prop_assert_eq!(sum.clone(), psi.add(&phi).unwrap());
        prop_assert_eq!(
            sum.evaluate(&x).unwrap(),
            phi.evaluate(&x).unwrap() + psi.evaluate(&x).unwrap()
        );
    }

    #[test]
    fn products_are_pointwise(phi in function(false), psi in function(false), x in point()) {
        let prod = phi.multiply(&psi).unwrap();
        prop_assert_eq!(
            prod.evaluate(&x).unwrap(),
            phi.evaluate(&x).unwrap() * psi.evaluate(&x).unwrap()
        );
    }

    #[test]
    fn integration_is_additive(phi in function(false), psi in function(false)) {
        let sum = phi.add(&psi).unwrap();
        prop_assert_eq!(sum.integrate(), phi.integrate() + psi.integrate());
        prop_assert_eq!(sum.integrate_np(), phi.integrate_np() + psi.integrate_np());
    }

    #[test]
    fn integrals_agree_on_compact_support(phi in function(true)) {
        prop_assert_eq!(phi.integrate_np(), phi.integrate());
    }

    #[test]
    fn pushforward_preserves_the_integral(phi in function(false), axis in 0usize..2) {
        let pushed = phi.pushforward(&AffineMap::projection(2, &[axis]), &Budget::default()).unwrap();
        prop_assert_eq!(pushed.integrate(), phi.integrate());
    }

    #[test]
    fn duality_commutes_with_proper_pushforward(phi in function(true), axis in 0usize..2) {
        let p = AffineMap::projection(2, &[axis]);
        let budget = Budget::default();
        prop_assert_eq!(
            phi.pushforward(&p, &budget).unwrap().dual(),
            phi.dual().pushforward(&p, &budget).unwrap()
        );
    }
}
