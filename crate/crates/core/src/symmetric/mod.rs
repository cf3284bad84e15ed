//! Finite-dimensional algebras, the enveloping algebra `R⊗R^op` and the
//! lift of higher derivations to it.
//!
//! An HD `Δ` on `R` lifts to `R⊗R^op` by
//! `δ̄_n(r⊗s) = Σ_i δ_i(r)⊗δ_{n−i}(s)`, and `R` itself becomes a right
//! `R⊗R^op`-module through `x·(r⊗s) = s·x·r`.

mod algebra;
mod env;

pub use algebra::{FinDimAlgebra, Vector};
pub use env::{env_mul, right_action, EnvElement};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::ring::{factorial, Rational};
use crate::sampling::SampleSpec;

/// A family of linear maps `δ_n` on an algebra, stored as the images of the
/// basis vectors. `δ_0` is the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraHd {
    /// `images[n][j] = δ_n(e_j)`.
    images: Vec<Vec<Vector>>,
    label: String,
}

impl AlgebraHd {
    /// `images[n-1][j] = δ_n(e_j)` for `1 ≤ n ≤ order bound`.
    pub fn from_images(alg: &FinDimAlgebra, images: Vec<Vec<Vector>>, label: impl Into<String>) -> Result<Self> {
        let dim = alg.dim();
        if images.iter().any(|row| row.len() != dim || row.iter().any(|v| v.len() != dim)) {
            return Err(Error::DimensionMismatch(format!("every δ_n needs {dim} images of length {dim}")));
        }
        let mut all = vec![(0..dim).map(|j| alg.basis(j)).collect::<Vec<_>>()];
        all.extend(images);
        Ok(AlgebraHd { images: all, label: label.into() })
    }

    /// Inner derivation `δ = [u, −]` with `δ_n = δ^n / n!`.
    pub fn inner(alg: &FinDimAlgebra, u: &[Rational], order_bound: usize) -> Self {
        let delta = |v: &Vector| -> Vector {
            alg.mul(u, v).iter().zip(alg.mul(v, u)).map(|(a, b)| a - b).collect()
        };
        let mut images = Vec::with_capacity(order_bound);
        let mut powers: Vec<Vector> = (0..alg.dim()).map(|j| alg.basis(j)).collect();
        for n in 1..=order_bound {
            powers = powers.iter().map(delta).collect();
            let scale = Rational::from_integer(factorial(n as u64)).recip();
            images.push(powers.iter().map(|v| v.iter().map(|c| c * &scale).collect()).collect());
        }
        AlgebraHd::from_images(alg, images, format!("inner [{}, -]", alg.format(u))).expect("shapes match")
    }

    /// `δ_n = 0` for `n ≥ 1`.
    pub fn trivial(alg: &FinDimAlgebra, order_bound: usize) -> Self {
        let images = vec![vec![alg.zero(); alg.dim()]; order_bound];
        AlgebraHd::from_images(alg, images, "trivial").expect("shapes match")
    }

    /// `δ_1 = id`, which breaks the Leibniz law whenever `R` has a nonzero
    /// product.
    pub fn adversarial(alg: &FinDimAlgebra) -> Self {
        let images = vec![(0..alg.dim()).map(|j| alg.basis(j)).collect()];
        AlgebraHd::from_images(alg, images, "adversarial delta_1 = id").expect("shapes match")
    }

    pub fn order_bound(&self) -> usize {
        self.images.len() - 1
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn apply(&self, n: usize, v: &[Rational]) -> Result<Vector> {
        let maps = self
            .images
            .get(n)
            .ok_or(Error::OrderBoundExceeded { requested: n, bound: self.order_bound() })?;
        let mut out = vec![Rational::zero(); v.len()];
        for (c, image) in v.iter().zip(maps) {
            if c.is_zero() {
                continue;
            }
            for (slot, t) in out.iter_mut().zip(image) {
                *slot += c * t;
            }
        }
        Ok(out)
    }

    /// The classical law `δ_n(ab) = Σ δ_i(a)δ_{n−i}(b)` on all basis pairs.
    pub fn law_check(&self, alg: &FinDimAlgebra, order: usize) -> Result<CheckReport> {
        let mut report = CheckReport::new(format!("HD law on the algebra for {}", self.label)).with_n(order);
        for n in 0..=order {
            for i in 0..alg.dim() {
                for j in 0..alg.dim() {
                    let (a, b) = (alg.basis(i), alg.basis(j));
                    let lhs = self.apply(n, &alg.mul(&a, &b))?;
                    let mut rhs = alg.zero();
                    for k in 0..=n {
                        let t = alg.mul(&self.apply(k, &a)?, &self.apply(n - k, &b)?);
                        rhs = add(&rhs, &t);
                    }
                    report.record(lhs == rhs, || {
                        format!(
                            "n={n} a={} b={}: {} vs {}",
                            alg.format(&a),
                            alg.format(&b),
                            alg.format(&lhs),
                            alg.format(&rhs)
                        )
                    });
                }
            }
        }
        Ok(report)
    }
}

fn add(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `δ̄_n` on `R⊗R^op`, linear extension of `Σ_i δ_i(r)⊗δ_{n−i}(s)`.
pub fn bar_delta(alg: &FinDimAlgebra, hd: &AlgebraHd, n: usize, p: &EnvElement) -> Result<EnvElement> {
    if n > hd.order_bound() {
        return Err(Error::OrderBoundExceeded { requested: n, bound: hd.order_bound() });
    }
    let mut out = EnvElement::zero(alg.dim());
    for (a, b, c) in p.terms() {
        for i in 0..=n {
            let left: Vector = hd.apply(i, &alg.basis(a))?.iter().map(|t| t * c).collect();
            let right = hd.apply(n - i, &alg.basis(b))?;
            out = out.add(&EnvElement::tensor(&left, &right));
        }
    }
    Ok(out)
}

fn env_basis(dim: usize) -> Vec<EnvElement> {
    (0..dim).flat_map(|i| (0..dim).map(move |j| EnvElement::basis(dim, i, j))).collect()
}

fn sample_env(alg: &FinDimAlgebra, s: &mut crate::sampling::Sampler) -> EnvElement {
    let d = alg.dim();
    EnvElement::from_coords(d, (0..d * d).map(|_| s.rational()).collect()).expect("right length")
}

/// Associativity and unit laws of `R⊗R^op` on all basis triples.
pub fn env_axioms_check(alg: &FinDimAlgebra) -> Result<CheckReport> {
    let mut report = CheckReport::new("enveloping algebra is associative and unital");
    let basis = env_basis(alg.dim());
    let unit = EnvElement::unit(alg);
    for p in &basis {
        report.record(env_mul(alg, &unit, p)? == *p && env_mul(alg, p, &unit)? == *p, || {
            format!("unit fails at {}", p.format(alg))
        });
        for q in &basis {
            let pq = env_mul(alg, p, q)?;
            for r in &basis {
                let ok = env_mul(alg, &pq, r)? == env_mul(alg, p, &env_mul(alg, q, r)?)?;
                report.record(ok, || format!("({})({})({}) not associative", p.format(alg), q.format(alg), r.format(alg)));
            }
        }
    }
    Ok(report)
}

/// Checks that `δ̄` is an HD on `R⊗R^op`:
/// `δ̄_n(pq) = Σ δ̄_i(p)·δ̄_{n−i}(q)` on all basis pairs and on sampled pairs.
pub fn verify_bar_hd(alg: &FinDimAlgebra, hd: &AlgebraHd, order: usize, spec: &SampleSpec) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!("bar-lift of {} is an HD", hd.label())).with_n(order);
    let basis = env_basis(alg.dim());
    let mut pairs: Vec<(EnvElement, EnvElement)> =
        basis.iter().flat_map(|p| basis.iter().map(move |q| (p.clone(), q.clone()))).collect();
    let mut s = spec.sampler();
    pairs.extend((0..spec.count).map(|_| (sample_env(alg, &mut s), sample_env(alg, &mut s))));
    for (p, q) in &pairs {
        report.record(bar_delta(alg, hd, 0, p)? == *p, || format!("bar delta_0 moves {}", p.format(alg)));
        let pq = env_mul(alg, p, q)?;
        for n in 1..=order {
            let lhs = bar_delta(alg, hd, n, &pq)?;
            let mut rhs = EnvElement::zero(alg.dim());
            for i in 0..=n {
                rhs = rhs.add(&env_mul(alg, &bar_delta(alg, hd, i, p)?, &bar_delta(alg, hd, n - i, q)?)?);
            }
            report.record(lhs == rhs, || {
                format!("n={n} p={} q={}: {} vs {}", p.format(alg), q.format(alg), lhs.format(alg), rhs.format(alg))
            });
        }
    }
    Ok(report)
}

/// `R` as a right `R⊗R^op`-module with `d_n = δ_n`:
///
/// * the module axiom `x·(pq) = (x·p)·q` on all basis triples;
/// * `d_n(x·p) = Σ d_i(x)·δ̄_{n−i}(p)` on all basis pairs;
/// * the two-sided laws `d_n(xr) = Σ d_i(x)δ_{n−i}(r)` and
///   `d_n(rx) = Σ δ_i(r)d_{n−i}(x)` on all basis pairs.
///
/// Sampled elements are checked as well.
pub fn bimodule_correspondence_check(
    alg: &FinDimAlgebra,
    hd: &AlgebraHd,
    order: usize,
    spec: &SampleSpec,
) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!("bimodule correspondence for {}", hd.label())).with_n(order);
    let dim = alg.dim();
    let basis = env_basis(dim);
    let mut xs: Vec<Vector> = (0..dim).map(|i| alg.basis(i)).collect();
    let mut envs = basis.clone();
    let mut s = spec.sampler();
    for _ in 0..spec.count {
        xs.push((0..dim).map(|_| s.rational()).collect());
        envs.push(sample_env(alg, &mut s));
    }
    for x in &xs[..dim] {
        for p in &basis {
            let xp = right_action(alg, x, p)?;
            for q in &basis {
                let lhs = right_action(alg, x, &env_mul(alg, p, q)?)?;
                let rhs = right_action(alg, &xp, q)?;
                report.record(lhs == rhs, || {
                    format!("x={} p={} q={}: x(pq) != (xp)q", alg.format(x), p.format(alg), q.format(alg))
                });
            }
        }
    }
    for (x, p) in xs.iter().zip(envs.iter().cycle()).chain(xs[..dim].iter().flat_map(|x| basis.iter().map(move |p| (x, p)))) {
        let xp = right_action(alg, x, p)?;
        for n in 0..=order {
            let lhs = hd.apply(n, &xp)?;
            let mut rhs = alg.zero();
            for i in 0..=n {
                rhs = add(&rhs, &right_action(alg, &hd.apply(i, x)?, &bar_delta(alg, hd, n - i, p)?)?);
            }
            report.record(lhs == rhs, || format!("n={n} x={} p={}: module law fails", alg.format(x), p.format(alg)));
        }
    }
    let rs: Vec<Vector> = xs.clone();
    for x in &xs {
        for r in &rs {
            for n in 0..=order {
                let right = hd.apply(n, &alg.mul(x, r))?;
                let left = hd.apply(n, &alg.mul(r, x))?;
                let (mut rhs_right, mut rhs_left) = (alg.zero(), alg.zero());
                for i in 0..=n {
                    rhs_right = add(&rhs_right, &alg.mul(&hd.apply(i, x)?, &hd.apply(n - i, r)?));
                    rhs_left = add(&rhs_left, &alg.mul(&hd.apply(i, r)?, &hd.apply(n - i, x)?));
                }
                report.record(right == rhs_right, || format!("n={n} x={} r={}: d_n(xr) law fails", alg.format(x), alg.format(r)));
                report.record(left == rhs_left, || format!("n={n} x={} r={}: d_n(rx) law fails", alg.format(x), alg.format(r)));
            }
        }
    }
    Ok(report)
}

/// Upper-triangular matrices with the inner HD of `E11`.
pub fn upper_triangular_inner(order_bound: usize) -> (FinDimAlgebra, AlgebraHd) {
    let alg = FinDimAlgebra::upper_triangular();
    let hd = AlgebraHd::inner(&alg, &alg.basis(0), order_bound);
    (alg, hd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::int;

    #[test]
    fn inner_derivation_values() {
        let (t, hd) = upper_triangular_inner(3);
        assert_eq!(hd.apply(1, &t.basis(1)).unwrap(), t.basis(1));
        assert_eq!(hd.apply(1, &t.basis(0)).unwrap(), t.zero());
        // δ^n(E12) = E12, so δ_n(E12) = E12 / n!.
        assert_eq!(hd.apply(3, &t.basis(1)).unwrap(), vec![int(0), crate::ring::rat(1, 6), int(0)]);
        assert!(hd.law_check(&t, 3).unwrap().passed());
        let p = EnvElement::basis(3, 1, 0);
        assert_eq!(bar_delta(&t, &hd, 1, &p).unwrap(), p);
        assert_eq!(bar_delta(&t, &hd, 0, &p).unwrap(), p);
        assert!(bar_delta(&t, &hd, 4, &p).is_err());
    }

    #[test]
    fn bar_lift_passes_on_builtins() {
        let spec = SampleSpec::new(3, 10);
        let (t, hd) = upper_triangular_inner(3);
        assert!(verify_bar_hd(&t, &hd, 3, &spec).unwrap().passed());
        assert!(bimodule_correspondence_check(&t, &hd, 3, &spec).unwrap().passed());
        let c2 = FinDimAlgebra::group_algebra_c2();
        for hd in [AlgebraHd::trivial(&c2, 3), AlgebraHd::inner(&c2, &c2.basis(1), 3)] {
            assert!(verify_bar_hd(&c2, &hd, 3, &spec).unwrap().passed());
            assert!(bimodule_correspondence_check(&c2, &hd, 3, &spec).unwrap().passed());
        }
        let trivial = AlgebraHd::trivial(&t, 2);
        assert!(bar_delta(&t, &trivial, 1, &EnvElement::basis(3, 1, 2)).unwrap().is_zero());
    }

    #[test]
    fn adversarial_family_fails() {
        let t = FinDimAlgebra::upper_triangular();
        let bad = AlgebraHd::adversarial(&t);
        assert!(!bad.law_check(&t, 1).unwrap().passed());
        let report = verify_bar_hd(&t, &bad, 1, &SampleSpec::new(1, 0)).unwrap();
        assert!(!report.passed() && report.witness.is_some());
    }

    #[test]
    fn envelope_axioms() {
        assert!(env_axioms_check(&FinDimAlgebra::upper_triangular()).unwrap().passed());
        assert!(env_axioms_check(&FinDimAlgebra::group_algebra_c2()).unwrap().passed());
    }
}
