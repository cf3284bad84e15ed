use std::fmt;

use serde::Serialize;

use super::module::{reduce_mod, torsion_submodule, FgModule, TorsionSubmodule};
use crate::error::{Error, Result};
use crate::filters::RadicalPowerFilter;
use crate::ring::{Domain, Poly};
use crate::sampling::Sampler;

/// Isomorphism type of one surviving summand of a module of quotients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Component {
    /// `Q[x][1/base]`.
    Free,
    /// `Q[x]/(c)` with `c` coprime to the base, so the base already acts
    /// invertibly.
    Cyclic(Poly),
}

#[derive(Debug, Clone)]
enum CoordKind {
    Free,
    Cyclic { modulus: Poly, base_inverse: Poly },
    Dead,
}

/// `v / base^k` with `v` in SNF coordinates; always stored in canonical
/// form (see [`LocalizedModule::normalize`]).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LocElem {
    num: Vec<Poly>,
    exp: u32,
}

impl LocElem {
    /// Numerator in SNF coordinates.
    pub fn numerator(&self) -> &[Poly] {
        &self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Poly::is_zero)
    }
}

/// Module of quotients of `M` for a radical-power filter, realized as the
/// localization of `M/t(M)` at the powers of the base.
#[derive(Debug, Clone)]
pub struct LocalizedModule {
    module: FgModule,
    base: Poly,
    torsion: TorsionSubmodule,
    kinds: Vec<CoordKind>,
}

/// Builds `M_F`.
pub fn module_of_quotients(module: &FgModule, filter: &RadicalPowerFilter) -> LocalizedModule {
    let torsion = torsion_submodule(module, filter);
    let base = filter.base().clone();
    let mut kinds: Vec<CoordKind> = module.moduli().iter().map(|_| CoordKind::Free).collect();
    for part in torsion.parts() {
        kinds[part.coordinate] = if part.cofactor.is_unit() {
            CoordKind::Dead
        } else {
            let base_inverse = base.inverse_mod(&part.cofactor).expect("cofactor is coprime to the base");
            CoordKind::Cyclic { modulus: part.cofactor.clone(), base_inverse }
        };
    }
    LocalizedModule { module: module.clone(), base, torsion, kinds }
}

impl LocalizedModule {
    /// `Q[x][1/base]`, the ring of quotients.
    pub fn ring(filter: &RadicalPowerFilter) -> Self {
        module_of_quotients(&FgModule::free(1), filter)
    }

    pub fn module(&self) -> &FgModule {
        &self.module
    }

    pub fn base(&self) -> &Poly {
        &self.base
    }

    pub fn torsion(&self) -> &TorsionSubmodule {
        &self.torsion
    }

    /// Surviving summands in SNF order.
    pub fn components(&self) -> Vec<Component> {
        self.kinds
            .iter()
            .filter_map(|k| match k {
                CoordKind::Free => Some(Component::Free),
                CoordKind::Cyclic { modulus, .. } => Some(Component::Cyclic(modulus.clone())),
                CoordKind::Dead => None,
            })
            .collect()
    }

    pub fn is_zero_module(&self) -> bool {
        self.kinds.iter().all(|k| matches!(k, CoordKind::Dead))
    }

    pub fn zero(&self) -> LocElem {
        LocElem { num: vec![Poly::zero(Domain::Q); self.kinds.len()], exp: 0 }
    }

    /// Canonical form of `num / base^exp` (SNF coordinates).
    ///
    /// Dead coordinates are zeroed and cyclic ones reduced modulo their
    /// cofactor. The exponent is lowered while every free coordinate is
    /// divisible by the base; cyclic coordinates absorb the matching factor
    /// of `base^{-1}`. With no nonzero free coordinate the exponent drops to
    /// zero.
    pub fn normalize(&self, mut num: Vec<Poly>, mut exp: u32) -> LocElem {
        for (c, kind) in num.iter_mut().zip(&self.kinds) {
            match kind {
                CoordKind::Free => {}
                CoordKind::Cyclic { modulus, .. } => *c = reduce_mod(std::mem::replace(c, Poly::zero(Domain::Q)), modulus),
                CoordKind::Dead => *c = Poly::zero(Domain::Q),
            }
        }
        let free_nonzero = num.iter().zip(&self.kinds).any(|(c, k)| matches!(k, CoordKind::Free) && !c.is_zero());
        while exp > 0 {
            let divisible = num
                .iter()
                .zip(&self.kinds)
                .all(|(c, k)| !matches!(k, CoordKind::Free) || c.is_divisible_by(&self.base));
            if free_nonzero && !divisible {
                break;
            }
            for (c, kind) in num.iter_mut().zip(&self.kinds) {
                match kind {
                    CoordKind::Free => *c = c.exact_div(&self.base).expect("checked divisible"),
                    CoordKind::Cyclic { modulus, base_inverse } => *c = reduce_mod(&*c * base_inverse, modulus),
                    CoordKind::Dead => {}
                }
            }
            exp -= 1;
        }
        LocElem { num, exp }
    }

    fn check_len(&self, v: &[Poly]) -> Result<()> {
        if v.len() != self.kinds.len() {
            return Err(Error::DimensionMismatch(format!("{} coordinates for {} generators", v.len(), self.kinds.len())));
        }
        Ok(())
    }

    /// `q_M(m)` for `m` in generator coordinates.
    pub fn q(&self, m: &[Poly]) -> Result<LocElem> {
        Ok(self.normalize(self.module.to_snf(m)?, 0))
    }

    /// `q_M(m) / base^k`.
    pub fn fraction(&self, m: &[Poly], k: u32) -> Result<LocElem> {
        Ok(self.normalize(self.module.to_snf(m)?, k))
    }

    /// Element from SNF-coordinate numerators.
    pub fn from_snf(&self, num: Vec<Poly>, exp: u32) -> Result<LocElem> {
        self.check_len(&num)?;
        Ok(self.normalize(num, exp))
    }

    /// A module element `v` with `e = q_M(v) / base^k`, `k = e.exponent()`.
    pub fn numerator_in_module(&self, e: &LocElem) -> Result<Vec<Poly>> {
        self.module.from_snf(&e.num)
    }

    fn lift(&self, e: &LocElem, exp: u32) -> Vec<Poly> {
        let f = self.base.pow(exp - e.exp);
        e.num.iter().map(|c| c * &f).collect()
    }

    pub fn add(&self, a: &LocElem, b: &LocElem) -> LocElem {
        let exp = a.exp.max(b.exp);
        let num = self.lift(a, exp).iter().zip(self.lift(b, exp)).map(|(x, y)| x + &y).collect();
        self.normalize(num, exp)
    }

    pub fn neg(&self, a: &LocElem) -> LocElem {
        LocElem { num: a.num.iter().map(|c| -c).collect(), exp: a.exp }
    }

    pub fn sub(&self, a: &LocElem, b: &LocElem) -> LocElem {
        self.add(a, &self.neg(b))
    }

    /// `e · r` for a polynomial `r`.
    pub fn scale(&self, e: &LocElem, r: &Poly) -> LocElem {
        self.normalize(e.num.iter().map(|c| c * r).collect(), e.exp)
    }

    /// `e / base^k`.
    pub fn div_base(&self, e: &LocElem, k: u32) -> LocElem {
        self.normalize(e.num.clone(), e.exp + k)
    }

    /// `e · ρ` for `ρ` in the ring of quotients with the same base.
    pub fn act(&self, e: &LocElem, rho: &LocElem) -> Result<LocElem> {
        if rho.num.len() != 1 {
            return Err(Error::DimensionMismatch("ring fractions have one coordinate".into()));
        }
        Ok(self.normalize(e.num.iter().map(|c| c * &rho.num[0]).collect(), e.exp + rho.exp))
    }

    /// Random fraction `q_M(v) / base^k` with `k ≤ 3`.
    pub fn sample_element(&self, s: &mut Sampler) -> LocElem {
        let v = self.module.sample_element(s);
        let k = s.index(4) as u32;
        self.fraction(&v, k).expect("sampled with the right length")
    }

    /// Human-readable form such as `(x - 1) / (x)^2` or `(1, x) / (x)^1`.
    pub fn display(&self, e: &LocElem) -> String {
        let num = match e.num.as_slice() {
            [single] => single.to_string(),
            many => many.iter().map(Poly::to_string).collect::<Vec<_>>().join(", "),
        };
        if e.exp == 0 {
            num
        } else {
            format!("({num}) / ({})^{}", self.base, e.exp)
        }
    }
}

impl fmt::Display for LocElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num: Vec<String> = self.num.iter().map(Poly::to_string).collect();
        write!(f, "({}) / base^{}", num.join(", "), self.exp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::SampleSpec;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn fx() -> RadicalPowerFilter {
        RadicalPowerFilter::new(p("x")).unwrap()
    }

    #[test]
    fn laurent_polynomials() {
        let loc = LocalizedModule::ring(&fx());
        assert_eq!(loc.components(), vec![Component::Free]);
        let e = loc.fraction(&[p("x^3 + x")], 2).unwrap();
        assert_eq!((e.numerator(), e.exponent()), (&[p("x^2 + 1")][..], 1));
        let one = loc.fraction(&[p("x")], 1).unwrap();
        assert_eq!(one, loc.q(&[p("1")]).unwrap());
        let sum = loc.add(&loc.fraction(&[p("1")], 1).unwrap(), &loc.fraction(&[p("-1")], 1).unwrap());
        assert!(sum.is_zero() && sum.exponent() == 0);
    }

    #[test]
    fn cyclic_cases() {
        let torsion = module_of_quotients(&FgModule::cyclic(p("x^2")), &fx());
        assert!(torsion.is_zero_module());
        assert!(torsion.q(&[p("1")]).unwrap().is_zero());

        let coprime = module_of_quotients(&FgModule::cyclic(p("x - 1")), &fx());
        assert_eq!(coprime.components(), vec![Component::Cyclic(p("x - 1"))]);
        // x acts as 1, so 1/x = 1.
        assert_eq!(coprime.fraction(&[p("1")], 1).unwrap(), coprime.q(&[p("1")]).unwrap());

        let mixed = module_of_quotients(&FgModule::cyclic(p("x^3 - x^2")), &fx());
        assert_eq!(mixed.components(), vec![Component::Cyclic(p("x - 1"))]);
        assert!(mixed.q(&[p("x - 1")]).unwrap().is_zero());
        assert!(!mixed.q(&[p("x")]).unwrap().is_zero());
    }

    #[test]
    fn normal_form_does_not_require_coprime_numerators() {
        let f = RadicalPowerFilter::new(p("x^2 - x")).unwrap();
        let loc = LocalizedModule::ring(&f);
        let e = loc.fraction(&[p("x")], 1).unwrap();
        assert_eq!(e.exponent(), 1);
        assert_eq!(loc.scale(&e, &p("x - 1")), loc.q(&[p("1")]).unwrap());
    }

    #[test]
    fn arithmetic_round_trips() {
        let m: FgModule = "x^2; x - 1\n0; x^2 - x".parse().unwrap();
        let loc = module_of_quotients(&m, &fx());
        let spec = SampleSpec::new(11, 40);
        let mut s = spec.sampler();
        for _ in 0..spec.count {
            let a = loc.sample_element(&mut s);
            let b = loc.sample_element(&mut s);
            assert_eq!(loc.sub(&loc.add(&a, &b), &b), a);
            let k = s.index(3) as u32;
            assert_eq!(loc.scale(&loc.div_base(&a, k), &p("x").pow(k)), a);
            let v = loc.numerator_in_module(&a).unwrap();
            assert_eq!(loc.fraction(&v, a.exponent()).unwrap(), a);
        }
    }
}
