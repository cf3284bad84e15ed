use std::fmt;

use serde::Serialize;

use super::poly::{Domain, Poly};
use crate::error::{Error, Result};

/// Principal ideal `(generator)` of `Q[x]` or `Z[x]`.
///
/// Over `Q` the generator is kept monic so that equal ideals compare equal.
/// Over `Z` the generator is normalized to a positive leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PrincipalIdeal {
    generator: Poly,
}

impl PrincipalIdeal {
    pub fn new(generator: Poly) -> Self {
        let generator = match generator.domain() {
            Domain::Q => generator.monic(),
            Domain::Z => match generator.leading() {
                Some(lead) if num_traits::Signed::is_negative(lead) => -generator,
                _ => generator,
            },
        };
        PrincipalIdeal { generator }
    }

    /// The whole ring `(1)`.
    pub fn whole(domain: Domain) -> Self {
        PrincipalIdeal { generator: Poly::one(domain) }
    }

    pub fn zero(domain: Domain) -> Self {
        PrincipalIdeal { generator: Poly::zero(domain) }
    }

    pub fn generator(&self) -> &Poly {
        &self.generator
    }

    pub fn domain(&self) -> Domain {
        self.generator.domain()
    }

    pub fn is_whole(&self) -> bool {
        self.generator.is_unit()
    }

    /// `p ∈ (g)` iff `g | p`; the zero ideal only contains zero.
    pub fn contains(&self, p: &Poly) -> bool {
        if self.generator.is_zero() {
            return p.is_zero();
        }
        p.is_divisible_by(&self.generator)
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &PrincipalIdeal) -> bool {
        other.contains(&self.generator)
    }

    /// Intersection `(lcm)` over `Q`.
    pub fn intersect(&self, other: &PrincipalIdeal) -> Result<PrincipalIdeal> {
        Ok(PrincipalIdeal::new(self.generator.lcm(&other.generator)?))
    }

    /// Sum `(gcd)` over `Q`.
    pub fn sum(&self, other: &PrincipalIdeal) -> Result<PrincipalIdeal> {
        Ok(PrincipalIdeal::new(self.generator.gcd(&other.generator)?))
    }

    /// The image `(σ(g))` under a ring automorphism.
    pub fn map(&self, sigma: &super::Automorphism) -> Result<PrincipalIdeal> {
        Ok(PrincipalIdeal::new(sigma.apply(&self.generator)?))
    }
}

impl fmt::Display for PrincipalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.generator)
    }
}

impl fmt::Debug for PrincipalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PrincipalIdeal{self}")
    }
}

/// The colon ideal `(r : J) = { s : r·s ∈ J }`, which for `J = (g)` over
/// `Q[x]` is `(g / gcd(r, g))`.
pub fn colon_ideal(r: &Poly, ideal: &PrincipalIdeal) -> Result<PrincipalIdeal> {
    if ideal.domain() != Domain::Q || r.domain() != Domain::Q {
        return Err(Error::RequiresRationals);
    }
    let g = ideal.generator();
    if r.is_zero() {
        return Ok(PrincipalIdeal::whole(Domain::Q));
    }
    if g.is_zero() {
        // r·s = 0 forces s = 0 in a domain.
        return Ok(PrincipalIdeal::zero(Domain::Q));
    }
    let d = r.gcd(g)?;
    Ok(PrincipalIdeal::new(g.exact_div(&d).expect("gcd divides generator")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn ideal(s: &str) -> PrincipalIdeal {
        PrincipalIdeal::new(q(s))
    }

    #[test]
    fn colon_examples() {
        assert_eq!(colon_ideal(&q("x"), &ideal("x^2")).unwrap(), ideal("x"));
        assert!(colon_ideal(&q("x^3 + x^2"), &ideal("x^2")).unwrap().is_whole());
        assert_eq!(colon_ideal(&q("1"), &ideal("1 + x^2")).unwrap(), ideal("1 + x^2"));
        assert!(colon_ideal(&q("0"), &PrincipalIdeal::zero(Domain::Q)).unwrap().is_whole());
        assert_eq!(
            colon_ideal(&q("x"), &PrincipalIdeal::zero(Domain::Q)).unwrap(),
            PrincipalIdeal::zero(Domain::Q)
        );
    }

    #[test]
    fn colon_requires_q() {
        let z = PrincipalIdeal::new(Poly::parse_integer("x").unwrap());
        assert_eq!(colon_ideal(&Poly::parse_integer("x").unwrap(), &z), Err(Error::RequiresRationals));
    }

    #[test]
    fn membership_and_normalization() {
        assert_eq!(ideal("2*x - 2"), ideal("-1 + x"));
        assert!(ideal("x").contains(&q("3*x^2")));
        assert!(!ideal("x").contains(&q("1 + x")));
        assert!(PrincipalIdeal::zero(Domain::Q).contains(&q("0")));
        assert!(!PrincipalIdeal::zero(Domain::Q).contains(&q("1")));
        assert!(ideal("x^2").is_subset_of(&ideal("x")));
        assert_eq!(ideal("x^2 - x").intersect(&ideal("x^2")).unwrap(), ideal("x^3 - x^2"));
    }

    #[test]
    fn integer_ideals() {
        let two = PrincipalIdeal::new(Poly::parse_integer("-2").unwrap());
        assert_eq!(two.generator(), &Poly::parse_integer("2").unwrap());
        assert!(!two.contains(&Poly::parse_integer("1 + 2*x").unwrap()));
        assert!(two.contains(&Poly::parse_integer("4 + 2*x").unwrap()));
    }
}
