use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::ring::{factorial, Automorphism, Domain, Poly};
use crate::sampling::SampleSpec;

/// How the maps `δ_n` of a family are computed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HdKind {
    /// Hasse derivatives `δ_n(x^k) = C(k, n) x^(k−n)`; integral.
    Hasse,
    /// `δ_n = δ^n / n!` for the derivation `δ(p) = p'·g` with `δ(x) = g`.
    FromDerivation { image_of_x: Poly },
    /// Order-one family `δ_1 = σ − id`, a `(σ, id)`-derivation.
    AutomorphismDifference { sigma: Automorphism },
    /// Explicit images: `images[n − 1][k] = δ_n(x^k)` for `k ≤ degree_bound`.
    Table { images: Vec<Vec<Poly>> },
}

/// An indexed family of additive maps `δ_0 = id, δ_1, …, δ_bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HdFamily {
    kind: HdKind,
    order_bound: usize,
}

impl HdFamily {
    pub fn hasse(order_bound: usize) -> Self {
        HdFamily { kind: HdKind::Hasse, order_bound }
    }

    /// Divided powers of the derivation sending `x` to `image_of_x`.
    pub fn from_derivation(image_of_x: Poly, order_bound: usize) -> Self {
        HdFamily { kind: HdKind::FromDerivation { image_of_x: image_of_x.to_rational() }, order_bound }
    }

    pub fn automorphism_difference(sigma: Automorphism) -> Self {
        HdFamily { kind: HdKind::AutomorphismDifference { sigma }, order_bound: 1 }
    }

    /// A hand-authored family. Every row must list images of `1, x, …, x^d`
    /// for one common `d`.
    pub fn table(images: Vec<Vec<Poly>>) -> Result<Self> {
        let width = images.first().map_or(0, Vec::len);
        if images.iter().any(|row| row.len() != width) {
            return Err(Error::DimensionMismatch("table rows differ in length".into()));
        }
        let order_bound = images.len();
        Ok(HdFamily { kind: HdKind::Table { images }, order_bound })
    }

    pub fn kind(&self) -> &HdKind {
        &self.kind
    }

    pub fn order_bound(&self) -> usize {
        self.order_bound
    }

    /// Whether the family is a classical higher derivation by construction
    /// (Hasse or divided powers of a derivation).
    pub fn is_classical(&self) -> bool {
        matches!(self.kind, HdKind::Hasse | HdKind::FromDerivation { .. })
    }

    /// `δ_n(p)`.
    pub fn apply(&self, n: usize, p: &Poly) -> Result<Poly> {
        if n > self.order_bound {
            return Err(Error::OrderBoundExceeded { requested: n, bound: self.order_bound });
        }
        if n == 0 {
            return Ok(p.clone());
        }
        match &self.kind {
            HdKind::Hasse => Ok(p.hasse_derivative(n)),
            HdKind::FromDerivation { image_of_x } => {
                if p.domain() != Domain::Q {
                    return Err(Error::RequiresRationals);
                }
                let mut acc = p.clone();
                for _ in 0..n {
                    acc = &acc.derivative() * image_of_x;
                }
                Ok(acc.scale(&BigRational::from_integer(factorial(n as u64)).recip()))
            }
            HdKind::AutomorphismDifference { sigma } => Ok(&sigma.apply(p)? - p),
            HdKind::Table { images } => {
                let row = &images[n - 1];
                let degree = p.degree().unwrap_or(0);
                if !p.is_zero() && degree >= row.len() {
                    return Err(Error::TableDegreeExceeded {
                        degree,
                        bound: row.len().saturating_sub(1),
                    });
                }
                let mut acc = Poly::zero(Domain::Q);
                for (c, image) in p.coeffs().iter().zip(row) {
                    if !c.is_zero() {
                        acc = &acc + &image.to_rational().scale(c);
                    }
                }
                Ok(match p.domain() {
                    Domain::Q => acc,
                    Domain::Z => acc.to_integer()?,
                })
            }
        }
    }
}

impl fmt::Display for HdFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            HdKind::Hasse => write!(f, "hasse(order<={})", self.order_bound),
            HdKind::FromDerivation { image_of_x } => {
                write!(f, "divided-powers(x -> {image_of_x}, order<={})", self.order_bound)
            }
            HdKind::AutomorphismDifference { sigma } => write!(f, "difference({sigma})"),
            HdKind::Table { images } => write!(f, "table({} rows)", images.len()),
        }
    }
}

/// Free-function form of [`HdFamily::apply`].
pub fn hd_apply(family: &HdFamily, n: usize, p: &Poly) -> Result<Poly> {
    family.apply(n, p)
}

/// Compares two families term-wise, `a.apply(n, p) == b.apply(n, p)` for
/// `n ≤ max_order` on sampled polynomials and on `x^k`, `k ≤ 2·max_order`.
pub fn families_agree(a: &HdFamily, b: &HdFamily, max_order: usize, spec: &SampleSpec) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!("{a} equals {b}")).with_n(max_order);
    let mut s = spec.sampler();
    let mut polys: Vec<Poly> = (0..=2 * max_order).map(|k| Poly::x(Domain::Q).pow(k as u32)).collect();
    polys.extend((0..spec.count).map(|_| s.poly(Domain::Q)));
    for p in &polys {
        for n in 0..=max_order {
            let (u, v) = (a.apply(n, p)?, b.apply(n, p)?);
            report.record(u == v, || format!("n={n} p={p}: {u} vs {v}"));
        }
    }
    Ok(report)
}

/// `Σ_{i=0}^{n} δ_{n−i}(r)·δ_i(s)`, the classical higher Leibniz expansion.
pub fn classical_leibniz_rhs(family: &HdFamily, n: usize, r: &Poly, s: &Poly) -> Result<Poly> {
    let mut acc = Poly::zero(r.domain());
    for i in 0..=n {
        acc = &acc + &(&family.apply(n - i, r)? * &family.apply(i, s)?);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{binomial, int, Rational};

    fn q(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn hasse_examples() {
        let h = HdFamily::hasse(10);
        assert_eq!(h.apply(2, &q("x^3")).unwrap(), q("3*x"));
        assert_eq!(h.apply(0, &q("1 + x")).unwrap(), q("1 + x"));
    }

    #[test]
    fn hasse_closed_form_up_to_ten() {
        let h = HdFamily::hasse(10);
        for k in 0..=10usize {
            for n in 0..=10usize {
                let image = h.apply(n, &Poly::monomial(int(1), k, Domain::Z)).unwrap();
                let expected = if n > k {
                    Poly::zero(Domain::Z)
                } else {
                    Poly::monomial(Rational::from_integer(binomial(k as u64, n as u64)), k - n, Domain::Z)
                };
                assert_eq!(image, expected, "k={k} n={n}");
            }
        }
    }

    #[test]
    fn divided_powers_of_d_dx() {
        let d = HdFamily::from_derivation(q("1"), 4);
        assert_eq!(d.apply(2, &q("x^2")).unwrap(), q("1"));
        assert_eq!(d.apply(5, &q("x")), Err(Error::OrderBoundExceeded { requested: 5, bound: 4 }));
        assert_eq!(d.apply(1, &Poly::parse_integer("x").unwrap()), Err(Error::RequiresRationals));
    }

    #[test]
    fn difference_family() {
        let sigma = Automorphism::scaling(int(2)).unwrap();
        let d = HdFamily::automorphism_difference(sigma);
        assert_eq!(d.apply(1, &q("x")).unwrap(), q("x"));
        assert_eq!(d.apply(1, &q("x^2")).unwrap(), q("3*x^2"));
        assert!(d.apply(2, &q("x")).is_err());
    }

    #[test]
    fn table_family() {
        let t = HdFamily::table(vec![vec![q("0"), q("1"), q("2*x")]]).unwrap();
        assert_eq!(t.apply(1, &q("3 + x^2")).unwrap(), q("2*x"));
        assert!(matches!(t.apply(1, &q("x^3")), Err(Error::TableDegreeExceeded { .. })));
        assert!(HdFamily::table(vec![vec![q("0")], vec![]]).is_err());
    }

    #[test]
    fn classical_rhs_matches_product() {
        let h = HdFamily::hasse(6);
        let (r, s) = (q("1 + x^2"), q("x - 3*x^3"));
        for n in 0..=6 {
            assert_eq!(classical_leibniz_rhs(&h, n, &r, &s).unwrap(), h.apply(n, &(&r * &s)).unwrap());
        }
    }
}
