use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{dot, dot_fraction, AffineMap, RatVector, Rational, Sign};

/// An affine functional `x ↦ linear·x + constant`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineForm {
    pub linear: RatVector,
    pub constant: Rational,
}

impl AffineForm {
    pub fn new(linear: RatVector, constant: Rational) -> Self {
        AffineForm { linear, constant }
    }

    /// Linear form (zero constant).
    pub fn linear(linear: RatVector) -> Self {
        AffineForm { linear, constant: Rational::zero() }
    }

    /// The coordinate function `x_i` on `ℝ^dim`.
    pub fn coordinate(dim: usize, i: usize) -> Self {
        let mut linear = super::zeros(dim);
        linear[i] = Rational::one();
        AffineForm::linear(linear)
    }

    pub fn from_ints(linear: &[i64], constant: i64) -> Self {
        AffineForm { linear: linear.iter().map(|&v| super::rat(v)).collect(), constant: super::rat(constant) }
    }

    pub fn dim(&self) -> usize {
        self.linear.len()
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        let (n, d) = dot_fraction(&self.linear, x, Some(&self.constant));
        Rational::new(n, d)
    }

    pub fn sign_at(&self, x: &[Rational]) -> Sign {
        let (n, _) = dot_fraction(&self.linear, x, Some(&self.constant));
        match n.sign() {
            num_bigint::Sign::Minus => Sign::Neg,
            num_bigint::Sign::NoSign => Sign::Zero,
            num_bigint::Sign::Plus => Sign::Pos,
        }
    }

    /// Derivative along a direction.
    pub fn slope(&self, d: &[Rational]) -> Rational {
        dot(&self.linear, d)
    }

    /// True when the linear part vanishes, i.e. the form is constant.
    pub fn is_constant(&self) -> bool {
        self.linear.iter().all(Zero::is_zero)
    }

    pub fn negated(&self) -> Self {
        AffineForm { linear: self.linear.iter().map(|v| -v).collect(), constant: -&self.constant }
    }

    /// Rescales to coprime integers with the first nonzero coefficient
    /// (linear part first, then constant) positive. The flag reports whether
    /// the orientation was reversed.
    pub fn normalized(&self) -> (AffineForm, bool) {
        let coeffs = || self.linear.iter().chain(core::iter::once(&self.constant));
        let lcm = coeffs().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let ints: Vec<BigInt> = coeffs().map(|q| q.numer() * (&lcm / q.denom())).collect();
        let gcd = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        if gcd.is_zero() {
            return (self.clone(), false);
        }
        let flip = ints.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative());
        let scale = if flip { -gcd } else { gcd };
        let mut out: Vec<Rational> = ints.into_iter().map(|v| Rational::from_integer(v / &scale)).collect();
        let constant = out.pop().expect("constant slot");
        (AffineForm { linear: out, constant }, flip)
    }

    /// `self ∘ map`, a form on the source space of `map`.
    pub fn pullback(&self, map: &AffineMap) -> AffineForm {
        let n_in = map.n_in();
        let linear = (0..n_in)
            .map(|j| map.rows().iter().zip(&self.linear).fold(Rational::zero(), |acc, (row, a)| acc + a * &row[j]))
            .collect();
        let constant = dot(&self.linear, map.translation()) + &self.constant;
        AffineForm { linear, constant }
    }

    /// Embeds a form on `ℝᵐ` into `ℝ^{offset+m+trailing}` acting on the
    /// middle block of coordinates.
    pub fn lifted(&self, offset: usize, total: usize) -> AffineForm {
        let mut linear = super::zeros(total);
        for (i, v) in self.linear.iter().enumerate() {
            linear[offset + i] = v.clone();
        }
        AffineForm { linear, constant: self.constant.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{rat, ratio};
    use super::*;

    #[test]
    fn normalization_is_canonical() {
        let f = AffineForm::new(alloc::vec![ratio(-1, 2), rat(0)], ratio(3, 4));
        let (n, flip) = f.normalized();
        assert!(flip);
        assert_eq!(n, AffineForm::from_ints(&[2, 0], -3));
        let (m, flip2) = n.negated().normalized();
        assert!(flip2);
        assert_eq!(m, n);
        let (c, _) = AffineForm::from_ints(&[0, 0], -4).normalized();
        assert_eq!(c, AffineForm::from_ints(&[0, 0], 1));
    }

    #[test]
    fn pullback_through_shift() {
        // x >= 0 pulled back along t ↦ t - 1 gives t - 1.
        let f = AffineForm::from_ints(&[1], 0);
        let g = AffineMap::new(1, alloc::vec![alloc::vec![rat(1)]], alloc::vec![rat(-1)]).unwrap();
        assert_eq!(f.pullback(&g), AffineForm::from_ints(&[1], -1));
    }
}
