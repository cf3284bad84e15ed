//! Deterministic sampling of polynomials and automorphisms.
//!
//! Every property run draws from a ChaCha stream seeded by [`SampleSpec`], so
//! identical specs produce identical sample sequences.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ring::{Automorphism, Domain, Poly, Rational};

/// Bounds and seed for a property run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SampleSpec {
    pub seed: u64,
    pub count: usize,
    pub degree: usize,
    pub coeff: i64,
}

impl SampleSpec {
    pub fn new(seed: u64, count: usize) -> Self {
        SampleSpec { seed, count, ..Self::default() }
    }

    pub fn sampler(&self) -> Sampler {
        Sampler::new(self)
    }

    pub fn with_count(self, count: usize) -> SampleSpec {
        SampleSpec { count, ..self }
    }

    /// Same bounds, independent stream.
    pub fn fork(&self, salt: u64) -> SampleSpec {
        SampleSpec { seed: self.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(salt), ..*self }
    }
}

impl Default for SampleSpec {
    fn default() -> Self {
        SampleSpec { seed: 20090429, count: 100, degree: 6, coeff: 9 }
    }
}

pub struct Sampler {
    rng: ChaCha8Rng,
    degree: usize,
    coeff: i64,
}

impl Sampler {
    pub fn new(spec: &SampleSpec) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(spec.seed),
            degree: spec.degree.max(1),
            coeff: spec.coeff.max(1),
        }
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.rng.gen_range(0..bound)
    }

    pub fn integer(&mut self) -> i64 {
        self.rng.gen_range(-self.coeff..=self.coeff)
    }

    pub fn rational(&mut self) -> Rational {
        let num = self.integer();
        let den = self.rng.gen_range(1..=self.coeff);
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if r != Rational::from_integer(BigInt::from(0)) {
                return r;
            }
        }
    }

    /// Random polynomial with degree at most the configured bound.
    pub fn poly(&mut self, domain: Domain) -> Poly {
        let deg = self.rng.gen_range(0..=self.degree);
        self.poly_of_degree(deg, domain)
    }

    pub fn poly_of_degree(&mut self, deg: usize, domain: Domain) -> Poly {
        let coeffs = (0..=deg)
            .map(|_| match domain {
                Domain::Q => self.rational(),
                Domain::Z => Rational::from_integer(BigInt::from(self.integer())),
            })
            .collect();
        Poly::from_coeffs(coeffs, domain).expect("integer coefficients for Z")
    }

    pub fn nonzero_poly(&mut self, domain: Domain) -> Poly {
        loop {
            let p = self.poly(domain);
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// Random affine automorphism `x ↦ u·x + c`.
    pub fn automorphism(&mut self) -> Automorphism {
        Automorphism::new(self.nonzero_rational(), self.rational()).expect("nonzero unit")
    }
}

/// Pairs `(x^a, x^b)` for `a, b ≤ 2` in lexicographic order; every property
/// run starts with these before drawing random pairs.
pub fn monomial_pairs(domain: Domain) -> Vec<(Poly, Poly)> {
    let mono = |k: usize| Poly::monomial(Rational::from_integer(BigInt::from(1)), k, domain);
    let mut out = Vec::new();
    for a in 0..=2 {
        for b in 0..=2 {
            out.push((mono(a), mono(b)));
        }
    }
    out
}

/// The first `spec.count` sample pairs: monomial pairs, then random ones.
pub fn sample_pairs(spec: &SampleSpec, domain: Domain) -> Vec<(Poly, Poly)> {
    let mut out = monomial_pairs(domain);
    out.truncate(spec.count);
    let mut s = spec.sampler();
    while out.len() < spec.count {
        out.push((s.poly(domain), s.poly(domain)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_streams() {
        let spec = SampleSpec::new(7, 30);
        assert_eq!(sample_pairs(&spec, Domain::Q), sample_pairs(&spec, Domain::Q));
        assert_ne!(sample_pairs(&spec, Domain::Q), sample_pairs(&spec.fork(1), Domain::Q));
    }

    #[test]
    fn respects_bounds() {
        let spec = SampleSpec { seed: 1, count: 200, degree: 3, coeff: 2 };
        for (p, q) in sample_pairs(&spec, Domain::Z) {
            for r in [p, q] {
                assert!(r.degree().unwrap_or(0) <= 3);
                assert!(r.coeffs().iter().all(|c| c.is_integer() && c.numer().magnitude() <= &2u32.into()));
            }
        }
    }
}
