use std::fmt;

use num_traits::{One, Zero};

use super::poly::{Domain, Poly, Rational};
use crate::error::{Error, Result};

/// Affine ring automorphism `x ↦ unit·x + shift` of `Q[x]`, extended
/// coefficient-wise. These are all the `Q`-algebra automorphisms of `Q[x]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Automorphism {
    unit: Rational,
    shift: Rational,
}

impl Automorphism {
    pub fn new(unit: Rational, shift: Rational) -> Result<Self> {
        if unit.is_zero() {
            return Err(Error::ZeroUnit);
        }
        Ok(Automorphism { unit, shift })
    }

    pub fn identity() -> Self {
        Automorphism { unit: Rational::one(), shift: Rational::zero() }
    }

    /// `x ↦ unit·x`.
    pub fn scaling(unit: Rational) -> Result<Self> {
        Self::new(unit, Rational::zero())
    }

    /// `x ↦ x + shift`.
    pub fn translation(shift: Rational) -> Self {
        Automorphism { unit: Rational::one(), shift }
    }

    pub fn unit(&self) -> &Rational {
        &self.unit
    }

    pub fn shift(&self) -> &Rational {
        &self.shift
    }

    pub fn is_identity(&self) -> bool {
        self.unit.is_one() && self.shift.is_zero()
    }

    /// Whether the map sends `Z[x]` into itself.
    pub fn is_integral(&self) -> bool {
        self.unit.is_integer() && self.shift.is_integer()
    }

    /// `p ↦ p(unit·x + shift)`.
    ///
    /// Over `Z` the result has to stay integral, otherwise
    /// [`Error::NotIntegral`].
    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        if self.is_identity() {
            return Ok(p.clone());
        }
        let image = p.to_rational().substitute_affine(&self.unit, &self.shift);
        match p.domain() {
            Domain::Q => Ok(image),
            Domain::Z => image.to_integer(),
        }
    }

    /// The ring map "apply `inner` first, then `self`", so that
    /// `compose(a, b).apply(p) == a.apply(b.apply(p))`.
    pub fn compose(&self, inner: &Automorphism) -> Automorphism {
        // a(b(p)) = p(b(a(x))): substitute a's linear form into b's.
        Automorphism {
            unit: &self.unit * &inner.unit,
            shift: &inner.unit * &self.shift + &inner.shift,
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let inv = self.unit.recip();
        Automorphism { shift: -(&self.shift * &inv), unit: inv }
    }

    /// `self^e`, with negative exponents meaning powers of the inverse.
    pub fn pow(&self, e: i64) -> Automorphism {
        let step = if e < 0 { self.inverse() } else { self.clone() };
        (0..e.unsigned_abs()).fold(Automorphism::identity(), |acc, _| acc.compose(&step))
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let image = Poly::from_coeffs_unchecked(vec![self.shift.clone(), self.unit.clone()], Domain::Q);
        write!(f, "x -> {image}")
    }
}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Automorphism({self})")
    }
}

impl serde::Serialize for Automorphism {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Free-function form of [`Automorphism::apply`].
pub fn apply_automorphism(a: &Automorphism, p: &Poly) -> Result<Poly> {
    a.apply(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rat};

    fn q(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn scaling_and_identity() {
        let a = Automorphism::scaling(int(2)).unwrap();
        assert_eq!(a.apply(&q("x^2")).unwrap(), q("4*x^2"));
        let p = q("3 - x + 1/5*x^4");
        assert_eq!(Automorphism::identity().apply(&p).unwrap(), p);
    }

    #[test]
    fn translation_matches_binomial_expansion() {
        // (x+1)^2 = x^2 + 2x + 1
        let a = Automorphism::translation(int(1));
        assert_eq!(a.apply(&q("x^2")).unwrap(), q("1 + 2*x + x^2"));
    }

    #[test]
    fn zero_unit_rejected() {
        assert_eq!(Automorphism::new(int(0), int(1)), Err(Error::ZeroUnit));
    }

    #[test]
    fn composition_order_and_inverse() {
        let a = Automorphism::new(int(2), int(1)).unwrap();
        let b = Automorphism::new(rat(-1, 3), int(5)).unwrap();
        let p = q("1 - x + 2*x^3");
        assert_eq!(a.compose(&b).apply(&p).unwrap(), a.apply(&b.apply(&p).unwrap()).unwrap());
        assert_eq!(a.compose(&b).inverse(), b.inverse().compose(&a.inverse()));
        assert!(a.compose(&a.inverse()).is_identity());
        assert_eq!(a.pow(-2).compose(&a.pow(2)), Automorphism::identity());
    }

    #[test]
    fn integral_guard() {
        let z = Poly::parse_integer("x^2").unwrap();
        let half = Automorphism::scaling(rat(1, 2)).unwrap();
        assert_eq!(half.apply(&z), Err(Error::NotIntegral));
        let shift = Automorphism::translation(int(-3));
        assert_eq!(shift.apply(&z).unwrap(), Poly::parse_integer("9 - 6*x + x^2").unwrap());
    }
}
