use std::str::FromStr;

use serde::Serialize;

use super::matrix::PolyMatrix;
use super::snf::{smith_normal_form, SnfDecomposition};
use super::{vec_add, vec_scale};
use crate::error::{Error, Result};
use crate::filters::RadicalPowerFilter;
use crate::ring::{Domain, Poly};
use crate::sampling::Sampler;

/// Finitely generated `Q[x]`-module: free module on the columns modulo the
/// row space of the presentation.
#[derive(Debug, Clone)]
pub struct FgModule {
    presentation: PolyMatrix,
    snf: SnfDecomposition,
    /// Modulus of each SNF coordinate; zero for a free coordinate.
    moduli: Vec<Poly>,
}

impl FgModule {
    pub fn new(presentation: PolyMatrix) -> Self {
        let snf = smith_normal_form(&presentation);
        let diag = snf.diagonal();
        let moduli = (0..presentation.cols())
            .map(|j| diag.get(j).cloned().unwrap_or_else(|| Poly::zero(Domain::Q)))
            .collect();
        FgModule { presentation, snf, moduli }
    }

    /// `Q[x]/(d)`; `d = 0` gives `Q[x]`.
    pub fn cyclic(d: Poly) -> Self {
        FgModule::new(PolyMatrix::from_rows(vec![vec![d]], 1).expect("1x1"))
    }

    pub fn free(rank: usize) -> Self {
        FgModule::new(PolyMatrix::zeros(0, rank))
    }

    pub fn presentation(&self) -> &PolyMatrix {
        &self.presentation
    }

    pub fn snf(&self) -> &SnfDecomposition {
        &self.snf
    }

    pub fn generator_count(&self) -> usize {
        self.presentation.cols()
    }

    /// Modulus of every SNF coordinate (units, proper factors and zeros).
    pub fn moduli(&self) -> &[Poly] {
        &self.moduli
    }

    /// Invariant factors `d_1 | d_2 | …`: the nonzero, nonunit moduli.
    pub fn invariant_factors(&self) -> Vec<Poly> {
        self.moduli.iter().filter(|d| !d.is_zero() && !d.is_unit()).cloned().collect()
    }

    pub fn rank(&self) -> usize {
        self.moduli.iter().filter(|d| d.is_zero()).count()
    }

    fn check_len(&self, m: &[Poly]) -> Result<()> {
        if m.len() != self.generator_count() {
            return Err(Error::DimensionMismatch(format!(
                "element has {} coordinates, module has {} generators",
                m.len(),
                self.generator_count()
            )));
        }
        Ok(())
    }

    /// SNF coordinates `m·V`, each reduced modulo its coordinate's modulus.
    pub fn to_snf(&self, m: &[Poly]) -> Result<Vec<Poly>> {
        self.check_len(m)?;
        let c = self.snf.v.apply_row(&m.iter().map(Poly::to_rational).collect::<Vec<_>>())?;
        Ok(c.into_iter().zip(&self.moduli).map(|(c, d)| reduce_mod(c, d)).collect())
    }

    /// Back from SNF coordinates to generator coordinates, `c·V^{-1}`.
    pub fn from_snf(&self, c: &[Poly]) -> Result<Vec<Poly>> {
        self.snf.v_inv.apply_row(c)
    }

    /// Canonical representative in generator coordinates.
    pub fn reduce(&self, m: &[Poly]) -> Result<Vec<Poly>> {
        self.from_snf(&self.to_snf(m)?)
    }

    pub fn is_zero(&self, m: &[Poly]) -> Result<bool> {
        Ok(self.to_snf(m)?.iter().all(Poly::is_zero))
    }

    pub fn equal(&self, a: &[Poly], b: &[Poly]) -> Result<bool> {
        self.is_zero(&vec_add(a, &vec_scale(b, &-Poly::one(Domain::Q))))
    }

    /// Random element in generator coordinates.
    pub fn sample_element(&self, s: &mut Sampler) -> Vec<Poly> {
        (0..self.generator_count()).map(|_| s.poly(Domain::Q)).collect()
    }
}

impl FromStr for FgModule {
    type Err = Error;

    /// Reads a presentation in the plain-text matrix format.
    fn from_str(s: &str) -> Result<FgModule> {
        Ok(FgModule::new(s.parse()?))
    }
}

pub(crate) fn reduce_mod(c: Poly, d: &Poly) -> Poly {
    if d.is_zero() {
        c
    } else {
        c.div_rem(d).expect("moduli live over Q").1
    }
}

/// Splits `d = b·c` where `b` collects every factor `d` shares with `base`
/// (with full multiplicity) and `c` is coprime to `base`.
pub fn split_by_base(d: &Poly, base: &Poly) -> (Poly, Poly) {
    let mut b = Poly::one(Domain::Q);
    let mut rest = d.monic();
    loop {
        let g = rest.gcd(base).expect("over Q");
        if g.is_unit() {
            break;
        }
        rest = rest.exact_div(&g).expect("gcd divides");
        b = &b * &g;
    }
    (b, rest)
}

/// Torsion data of one SNF coordinate with modulus `d = b·c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TorsionPart {
    pub coordinate: usize,
    pub modulus: Poly,
    /// `b`: the torsion summand is `Q[x]/(b)`.
    pub torsion_order: Poly,
    /// `c`: torsion elements are the `c`-multiples in this coordinate.
    pub cofactor: Poly,
}

/// `t(M)` described in SNF coordinates.
#[derive(Debug, Clone, Serialize)]
pub struct TorsionSubmodule {
    base: Poly,
    parts: Vec<TorsionPart>,
    /// Free SNF coordinates; torsion elements vanish there.
    free: Vec<usize>,
}

impl TorsionSubmodule {
    pub fn parts(&self) -> &[TorsionPart] {
        &self.parts
    }

    /// Nonunit torsion orders `b_j`; `t(M)` is their direct sum of cyclics.
    pub fn orders(&self) -> Vec<Poly> {
        self.parts.iter().filter(|p| !p.torsion_order.is_unit()).map(|p| p.torsion_order.clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.orders().is_empty()
    }

    pub fn contains(&self, module: &FgModule, m: &[Poly]) -> Result<bool> {
        let c = module.to_snf(m)?;
        Ok(self.free.iter().all(|&j| c[j].is_zero())
            && self.parts.iter().all(|p| c[p.coordinate].is_divisible_by(&p.cofactor)))
    }

    /// Generators of `t(M)` in generator coordinates.
    pub fn generators(&self, module: &FgModule) -> Result<Vec<Vec<Poly>>> {
        let g = module.generator_count();
        self.parts
            .iter()
            .filter(|p| !p.torsion_order.is_unit())
            .map(|p| {
                let mut e = vec![Poly::zero(Domain::Q); g];
                e[p.coordinate] = p.cofactor.clone();
                module.from_snf(&e)
            })
            .collect()
    }

    /// Least `e` with `base^e · t(M) = 0`.
    pub fn exponent(&self) -> u32 {
        self.parts
            .iter()
            .map(|p| {
                let mut e = 0;
                while !self.base.pow(e).is_divisible_by(&p.torsion_order) {
                    e += 1;
                }
                e
            })
            .max()
            .unwrap_or(0)
    }

    /// Random torsion element: a random combination of the generators.
    pub fn sample_element(&self, module: &FgModule, s: &mut Sampler) -> Result<Vec<Poly>> {
        let mut acc = vec![Poly::zero(Domain::Q); module.generator_count()];
        for g in self.generators(module)? {
            acc = vec_add(&acc, &vec_scale(&g, &s.poly(Domain::Q)));
        }
        Ok(acc)
    }
}

/// Largest `F`-torsion submodule: elements killed by a power of the base.
pub fn torsion_submodule(module: &FgModule, filter: &RadicalPowerFilter) -> TorsionSubmodule {
    let base = filter.base().clone();
    let mut parts = Vec::new();
    let mut free = Vec::new();
    for (j, d) in module.moduli().iter().enumerate() {
        if d.is_zero() {
            free.push(j);
        } else {
            let (b, c) = split_by_base(d, &base);
            parts.push(TorsionPart { coordinate: j, modulus: d.clone(), torsion_order: b, cofactor: c });
        }
    }
    TorsionSubmodule { base, parts, free }
}
