//! Seeded random instances for the identity suites.

use eulercalc::ratgeom::{rank, rat};
use eulercalc::{AffineCF, AffineForm, AffineMap, Arrangement, PolyhedronSpec, Rational, Relation};
use rand::seq::IndexedRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Rng8 = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng8 {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Non-constant form with integer coefficients in `[-c, c]`.
pub fn form(rng: &mut Rng8, dim: usize, c: i64) -> AffineForm {
    loop {
        let linear: Vec<i64> = (0..dim).map(|_| rng.random_range(-c..=c)).collect();
        if linear.iter().any(|&a| a != 0) {
            return AffineForm::from_ints(&linear, rng.random_range(-c..=c));
        }
    }
}

/// Random function on the arrangement of `1..=max_forms` random forms,
/// values in `[-5, 5]` (about a third of the cells zero).
pub fn function(rng: &mut Rng8, dim: usize, max_forms: usize) -> AffineCF {
    let k = rng.random_range(1..=max_forms);
    let forms: Vec<AffineForm> = (0..k).map(|_| form(rng, dim, 3)).collect();
    let arr = Arrangement::new(dim, forms).expect("random forms");
    let values = (0..arr.len()).map(|_| if rng.random_bool(0.35) { 0 } else { rng.random_range(-5..=5) }).collect();
    AffineCF::new(arr, values).expect("matching lengths")
}

const RELATIONS: [Relation; 5] = [Relation::Lt, Relation::Le, Relation::Eq, Relation::Ge, Relation::Gt];

/// A random locally closed polyhedron inside the box `[-r, r]^dim`, given by
/// box constraints of random openness and `extra` random constraints.
pub fn polyhedron(rng: &mut Rng8, dim: usize, r: i64, extra: usize) -> PolyhedronSpec {
    let mut spec = PolyhedronSpec::new(dim);
    for i in 0..dim {
        let mut e = vec![0i64; dim];
        e[i] = 1;
        let lo = rng.random_range(-r..r);
        let hi = rng.random_range(lo + 1..=r);
        let ge = if rng.random_bool(0.5) { Relation::Ge } else { Relation::Gt };
        let le = if rng.random_bool(0.5) { Relation::Le } else { Relation::Lt };
        spec = spec.with(AffineForm::from_ints(&e, -lo), ge).with(AffineForm::from_ints(&e, -hi), le);
    }
    for _ in 0..extra {
        let rel = *RELATIONS.choose(rng).expect("nonempty");
        spec = spec.with(form(rng, dim, 2), rel);
    }
    spec
}

/// Compactly supported function: a small integer combination of indicators
/// of bounded locally closed polyhedra.
pub fn compact_function(rng: &mut Rng8, dim: usize, pieces: usize) -> AffineCF {
    let mut acc = AffineCF::zero(dim);
    for _ in 0..pieces {
        let extra = rng.random_range(0..=1);
        let p = AffineCF::indicator(&polyhedron(rng, dim, 2, extra)).expect("valid spec");
        let c = *[-2i64, -1, 1, 1, 2, 3].choose(rng).expect("nonempty");
        acc = acc.add(&p.scale(c)).expect("same dimension");
    }
    acc
}

/// Closed convex polytope of full dimension `d`: a box around the origin cut
/// by random half-spaces that keep the origin in their interior.
pub fn polytope(rng: &mut Rng8, d: usize, cuts: usize) -> PolyhedronSpec {
    let r: Vec<Rational> = (0..d).map(|_| rat(rng.random_range(1..=3))).collect();
    let lo: Vec<Rational> = r.iter().map(|v| -v).collect();
    let mut spec = PolyhedronSpec::closed_box(&lo, &r);
    for _ in 0..cuts {
        let mut f = form(rng, d, 3);
        // keep the origin strictly inside: constant term negative
        f.constant = -rat(rng.random_range(1..=4));
        spec = spec.with(f, Relation::Le);
    }
    spec
}

/// Surjective affine map `ℝᵐ → ℝᵏ` with small integer entries.
pub fn surjection(rng: &mut Rng8, m: usize, k: usize) -> AffineMap {
    loop {
        let rows: Vec<Vec<Rational>> =
            (0..k).map(|_| (0..m).map(|_| rat(rng.random_range(-2..=2))).collect()).collect();
        if rank(&rows) == k {
            let t = (0..k).map(|_| rat(rng.random_range(-2..=2))).collect();
            return AffineMap::new(m, rows, t).expect("consistent shape");
        }
    }
}

/// Any affine map `ℝᵐ → ℝᵏ` (possibly degenerate).
pub fn map(rng: &mut Rng8, m: usize, k: usize) -> AffineMap {
    let rows = (0..k).map(|_| (0..m).map(|_| rat(rng.random_range(-2..=2))).collect()).collect();
    let t = (0..k).map(|_| rat(rng.random_range(-2..=2))).collect();
    AffineMap::new(m, rows, t).expect("consistent shape")
}
