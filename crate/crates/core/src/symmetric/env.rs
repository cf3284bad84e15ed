use std::fmt;

use num_traits::Zero;

use super::algebra::{FinDimAlgebra, Vector};
use crate::error::{Error, Result};
use crate::ring::Rational;

/// Element of `R⊗R^op` in the basis `e_i⊗e_j` (index `i·dim + j`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EnvElement {
    dim: usize,
    coords: Vec<Rational>,
}

impl EnvElement {
    pub fn zero(dim: usize) -> Self {
        EnvElement { dim, coords: vec![Rational::zero(); dim * dim] }
    }

    pub fn from_coords(dim: usize, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!("{} coordinates for dimension {dim}", coords.len())));
        }
        Ok(EnvElement { dim, coords })
    }

    /// `e_i ⊗ e_j`.
    pub fn basis(dim: usize, i: usize, j: usize) -> Self {
        let mut e = EnvElement::zero(dim);
        e.coords[i * dim + j] = Rational::from_integer(1.into());
        e
    }

    /// `r ⊗ s`.
    pub fn tensor(r: &[Rational], s: &[Rational]) -> Self {
        let dim = r.len();
        let mut e = EnvElement::zero(dim);
        for (i, a) in r.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in s.iter().enumerate() {
                e.coords[i * dim + j] = a * b;
            }
        }
        e
    }

    /// `1 ⊗ 1`.
    pub fn unit(alg: &FinDimAlgebra) -> Self {
        EnvElement::tensor(alg.unit(), alg.unit())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn coeff(&self, i: usize, j: usize) -> &Rational {
        &self.coords[i * self.dim + j]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &EnvElement) -> EnvElement {
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        EnvElement { dim: self.dim, coords }
    }

    /// Nonzero `(i, j, coefficient)` terms.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        let dim = self.dim;
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(k, c)| (k / dim, k % dim, c))
    }

    /// Readable form over the algebra's basis names, e.g. `E12⊗E11`.
    pub fn format(&self, alg: &FinDimAlgebra) -> String {
        let names = alg.names();
        let terms: Vec<String> = self
            .terms()
            .map(|(i, j, c)| {
                let t = format!("{}⊗{}", names[i], names[j]);
                if *c == Rational::from_integer(1.into()) { t } else { format!("{c}*{t}") }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

fn check_dims(alg: &FinDimAlgebra, p: &EnvElement) -> Result<()> {
    if p.dim != alg.dim() {
        return Err(Error::DimensionMismatch(format!("element of dimension {} for algebra of dimension {}", p.dim, alg.dim())));
    }
    Ok(())
}

/// `(a⊗b)(c⊗d) = ac ⊗ db`, extended bilinearly.
pub fn env_mul(alg: &FinDimAlgebra, p: &EnvElement, q: &EnvElement) -> Result<EnvElement> {
    check_dims(alg, p)?;
    check_dims(alg, q)?;
    let dim = alg.dim();
    let mut out = EnvElement::zero(dim);
    for (a, b, x) in p.terms() {
        for (c, d, y) in q.terms() {
            let left = alg.mul(&alg.basis(a), &alg.basis(c));
            let right = alg.mul(&alg.basis(d), &alg.basis(b));
            let w = x * y;
            for (i, l) in left.iter().enumerate() {
                if l.is_zero() {
                    continue;
                }
                for (j, r) in right.iter().enumerate() {
                    if !r.is_zero() {
                        out.coords[i * dim + j] += &w * l * r;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Right action of `R⊗R^op` on `R`: `x·(r⊗s) = s·x·r`.
pub fn right_action(alg: &FinDimAlgebra, x: &[Rational], p: &EnvElement) -> Result<Vector> {
    check_dims(alg, p)?;
    let mut out = alg.zero();
    for (r, s, c) in p.terms() {
        let v = alg.mul(&alg.mul(&alg.basis(s), x), &alg.basis(r));
        for (slot, t) in out.iter_mut().zip(v) {
            *slot += c * t;
        }
    }
    Ok(out)
}

impl fmt::Display for EnvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.terms().map(|(i, j, c)| format!("{c}*e{i}⊗e{j}")).collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_products() {
        let t = FinDimAlgebra::upper_triangular();
        let (e11, e12, e22) = (0, 1, 2);
        let unit = EnvElement::unit(&t);
        let p = EnvElement::basis(3, e12, e11);
        assert_eq!(env_mul(&t, &unit, &p).unwrap(), p);
        let lhs = env_mul(&t, &EnvElement::basis(3, e11, e22), &EnvElement::basis(3, e12, e22)).unwrap();
        assert_eq!(lhs, EnvElement::basis(3, e12, e22));
        let a = EnvElement::tensor(&t.basis(e12), t.unit());
        assert!(env_mul(&t, &a, &a).unwrap().is_zero());
        assert_eq!(lhs.format(&t), "E12⊗E22");
    }

    #[test]
    fn action_uses_op_side() {
        let t = FinDimAlgebra::upper_triangular();
        // x·(r⊗s) = s x r with x = E12, r = E22, s = E11.
        let v = right_action(&t, &t.basis(1), &EnvElement::basis(3, 2, 0)).unwrap();
        assert_eq!(v, t.basis(1));
        let v = right_action(&t, &t.basis(1), &EnvElement::basis(3, 0, 2)).unwrap();
        assert_eq!(v, t.zero());
        assert!(env_mul(&t, &EnvElement::zero(2), &EnvElement::zero(3)).is_err());
    }
}
