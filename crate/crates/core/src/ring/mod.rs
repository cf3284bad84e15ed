//! Exact univariate polynomial arithmetic over Q and Z, affine ring
//! automorphisms and principal ideals.

mod automorphism;
mod ideal;
mod parse;
mod poly;

pub use automorphism::{apply_automorphism, Automorphism};
pub use ideal::{colon_ideal, PrincipalIdeal};
pub(crate) use parse::parse_rational;
pub use poly::{binomial, factorial, poly_arith, ArithOp, ArithResult, Domain, Poly, Rational};

use num_bigint::BigInt;

/// Builds an exact rational from a numerator and a nonzero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds an integral rational.
pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}
