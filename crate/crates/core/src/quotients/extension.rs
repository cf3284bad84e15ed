use super::localized::{LocElem, LocalizedModule};
use super::module::FgModule;
use super::{vec_add, vec_scale};
use crate::error::{Error, Result};
use crate::filters::RadicalPowerFilter;
use crate::operators::HdFamily;
use crate::report::CheckReport;
use crate::ring::{Domain, Poly};
use crate::sampling::SampleSpec;

/// A `Δ`-HD on a finitely generated module, given by the images
/// `d_n(e_j)` of the generators and propagated by
/// `d_n(e_j·p) = Σ_i d_i(e_j)·δ_{n−i}(p)`.
#[derive(Debug, Clone)]
pub struct ModuleHdFamily {
    ring: HdFamily,
    /// `images[n-1][j] = d_n(e_j)` in generator coordinates.
    images: Vec<Vec<Vec<Poly>>>,
    order_bound: usize,
}

impl ModuleHdFamily {
    /// Generator images must be listed for every `1 ≤ n ≤ order_bound`.
    pub fn new(ring: HdFamily, images: Vec<Vec<Vec<Poly>>>, order_bound: usize) -> Result<Self> {
        if order_bound > ring.order_bound() {
            return Err(Error::OrderBoundExceeded { requested: order_bound, bound: ring.order_bound() });
        }
        if images.len() != order_bound {
            return Err(Error::DimensionMismatch(format!("{} image rows for order {order_bound}", images.len())));
        }
        let g = images.first().map(Vec::len).unwrap_or(0);
        if images.iter().any(|row| row.len() != g || row.iter().any(|v| v.len() != g)) {
            return Err(Error::DimensionMismatch("generator images must be square".into()));
        }
        Ok(ModuleHdFamily { ring, images, order_bound })
    }

    /// `d_n(e_j) = 0` for `n ≥ 1`: `Δ` acting on each coordinate.
    pub fn coordinatewise(ring: HdFamily, generators: usize) -> Self {
        let order_bound = ring.order_bound();
        let zero = vec![vec![Poly::zero(Domain::Q); generators]; generators];
        ModuleHdFamily { ring, images: vec![zero; order_bound], order_bound }
    }

    /// `Δ` acting on the SNF coordinates of `module`: with `f_k` the SNF
    /// basis, `d_n(Σ c_k f_k) = Σ δ_n(c_k) f_k`. Well defined whenever each
    /// `δ_n` preserves every ideal `(d_k)`.
    pub fn snf_coordinatewise(ring: HdFamily, module: &FgModule) -> Result<Self> {
        let v = &module.snf().v;
        let order_bound = ring.order_bound();
        let mut images = Vec::with_capacity(order_bound);
        for n in 1..=order_bound {
            let row: Vec<Vec<Poly>> = (0..v.rows())
                .map(|j| {
                    let c: Vec<Poly> = v.row(j).iter().map(|p| ring.apply(n, p)).collect::<Result<_>>()?;
                    module.from_snf(&c)
                })
                .collect::<Result<_>>()?;
            images.push(row);
        }
        ModuleHdFamily::new(ring, images, order_bound)
    }

    /// [`ModuleHdFamily::snf_coordinatewise`] for `g·d/dx` with `g` the lcm
    /// of the torsion invariant factors, which every `(d_k)` is stable under.
    pub fn adapted(module: &FgModule, order_bound: usize) -> Result<Self> {
        let g = module.invariant_factors().iter().try_fold(Poly::one(Domain::Q), |acc, d| acc.lcm(d))?;
        ModuleHdFamily::snf_coordinatewise(HdFamily::from_derivation(g, order_bound), module)
    }

    pub fn ring(&self) -> &HdFamily {
        &self.ring
    }

    pub fn order_bound(&self) -> usize {
        self.order_bound
    }

    pub fn generator_count(&self) -> usize {
        self.images.first().map(Vec::len).unwrap_or(0)
    }

    /// `d_n(m)` in generator coordinates (not reduced).
    pub fn apply(&self, n: usize, m: &[Poly]) -> Result<Vec<Poly>> {
        if n > self.order_bound {
            return Err(Error::OrderBoundExceeded { requested: n, bound: self.order_bound });
        }
        let mut out: Vec<Poly> = m.iter().map(|p| self.ring.apply(n, p)).collect::<Result<_>>()?;
        for (j, p) in m.iter().enumerate() {
            for i in 1..=n {
                let image = self.images[i - 1].get(j).ok_or_else(|| {
                    Error::DimensionMismatch(format!("element has more than {} coordinates", self.generator_count()))
                })?;
                out = vec_add(&out, &vec_scale(image, &self.ring.apply(n - i, p)?));
            }
        }
        Ok(out)
    }

    /// Every relation must be sent into the relation module.
    pub fn check_well_defined(&self, module: &FgModule) -> Result<()> {
        let rel = module.presentation();
        for n in 1..=self.order_bound {
            for r in 0..rel.rows() {
                let image = self.apply(n, rel.row(r))?;
                if !module.is_zero(&image)? {
                    let shown: Vec<String> = image.iter().map(Poly::to_string).collect();
                    return Err(Error::IllDefined(format!("d_{n} of relation {r} is ({}), nonzero in M", shown.join(", "))));
                }
            }
        }
        Ok(())
    }

    /// Samples the `Δ`-HD law `d_n(m·r) = Σ d_i(m)·δ_{n−i}(r)` in `M`.
    pub fn law_check(&self, module: &FgModule, order: usize, spec: &SampleSpec) -> Result<CheckReport> {
        let mut report = CheckReport::new(format!("module HD law over {}", self.ring)).with_n(order);
        let mut s = spec.sampler();
        for _ in 0..spec.count {
            let m = module.sample_element(&mut s);
            let r = s.poly(Domain::Q);
            for n in 0..=order {
                let lhs = self.apply(n, &vec_scale(&m, &r))?;
                let mut rhs = vec![Poly::zero(Domain::Q); m.len()];
                for i in 0..=n {
                    rhs = vec_add(&rhs, &vec_scale(&self.apply(i, &m)?, &self.ring.apply(n - i, &r)?));
                }
                report.record(module.equal(&lhs, &rhs)?, || format!("n={n} r={r}: d_n(m r) differs from the expansion"));
            }
        }
        Ok(report)
    }
}

fn check_precondition(family: &ModuleHdFamily, loc: &LocalizedModule, order: usize) -> Result<()> {
    if family.generator_count() != loc.module().generator_count() {
        return Err(Error::DimensionMismatch(format!(
            "family on {} generators, module has {}",
            family.generator_count(),
            loc.module().generator_count()
        )));
    }
    if order > family.order_bound() {
        return Err(Error::OrderBoundExceeded { requested: order, bound: family.order_bound() });
    }
    family.check_well_defined(loc.module())?;
    let law = family.law_check(loc.module(), order, &SampleSpec::new(0x5eed, 12))?;
    match law.witness {
        Some(w) => Err(Error::IllDefined(w)),
        None => Ok(()),
    }
}

/// Order-1 extension to `M_F` by the quotient rule.
#[derive(Debug, Clone)]
pub struct ExtendedDerivation {
    loc: LocalizedModule,
    family: ModuleHdFamily,
}

impl ExtendedDerivation {
    /// `d(v/s) = (d(v)·s − v·δ(s)) / s²` with `s = base^k`.
    pub fn apply(&self, e: &LocElem) -> Result<LocElem> {
        let k = e.exponent();
        let v = self.loc.numerator_in_module(e)?;
        let s = self.loc.base().pow(k);
        let dv = self.loc.q(&self.family.apply(1, &v)?)?;
        let ds = self.family.ring().apply(1, &s)?;
        let top = self.loc.sub(&self.loc.scale(&dv, &s), &self.loc.scale(&self.loc.q(&v)?, &ds));
        Ok(self.loc.div_base(&top, 2 * k))
    }
}

/// The unique extension of a derivation on `M` to `M_F`.
pub fn extend_derivation(family: &ModuleHdFamily, loc: &LocalizedModule) -> Result<ExtendedDerivation> {
    check_precondition(family, loc, 1)?;
    Ok(ExtendedDerivation { loc: loc.clone(), family: family.clone() })
}

/// Extension of a `Δ`-HD on `M` to `M_F`, up to a fixed order.
#[derive(Debug, Clone)]
pub struct ExtendedHd {
    loc: LocalizedModule,
    family: ModuleHdFamily,
    order: usize,
}

impl ExtendedHd {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn localized(&self) -> &LocalizedModule {
        &self.loc
    }

    /// `d_0(e), …, d_n(e)`, solving the HD law for `d_n(v/s)`:
    /// `d_n(v/s) = (d_n(v) − Σ_{i<n} d_i(v/s)·δ_{n−i}(s)) / s`.
    pub fn apply_all(&self, n: usize, e: &LocElem) -> Result<Vec<LocElem>> {
        if n > self.order {
            return Err(Error::OrderBoundExceeded { requested: n, bound: self.order });
        }
        let k = e.exponent();
        let v = self.loc.numerator_in_module(e)?;
        let s = self.loc.base().pow(k);
        let mut out = vec![e.clone()];
        for m in 1..=n {
            let mut acc = self.loc.q(&self.family.apply(m, &v)?)?;
            for (i, prev) in out.iter().enumerate() {
                let ds = self.family.ring().apply(m - i, &s)?;
                acc = self.loc.sub(&acc, &self.loc.scale(prev, &ds));
            }
            out.push(self.loc.div_base(&acc, k));
        }
        Ok(out)
    }

    pub fn apply(&self, n: usize, e: &LocElem) -> Result<LocElem> {
        Ok(self.apply_all(n, e)?.pop().expect("n + 1 entries"))
    }
}

/// Extends `D` from `M` to `M_F` up to order `order`.
pub fn extend_hd(family: &ModuleHdFamily, loc: &LocalizedModule, order: usize) -> Result<ExtendedHd> {
    check_precondition(family, loc, order)?;
    Ok(ExtendedHd { loc: loc.clone(), family: family.clone(), order })
}

/// `Δ` itself extended to the ring of quotients `R_F`.
pub fn extend_ring_hd(ring: &HdFamily, filter: &RadicalPowerFilter, order: usize) -> Result<ExtendedHd> {
    extend_hd(&ModuleHdFamily::coordinatewise(ring.clone(), 1), &LocalizedModule::ring(filter), order)
}

/// Checks the extension of `D` to `M_F`: the order-1 recursion equals the
/// quotient rule, the `Δ`-HD law holds over `R_F`, and `d_n∘q_M = q_M∘d_n`.
pub fn extension_check(family: &ModuleHdFamily, loc: &LocalizedModule, order: usize, spec: &SampleSpec) -> Result<CheckReport> {
    let ext = extend_hd(family, loc, order)?;
    let filter = RadicalPowerFilter::new(loc.base().clone())?;
    let ring_ext = extend_ring_hd(family.ring(), &filter, order)?;
    let ring = ring_ext.localized();
    let mut report = CheckReport::new(format!("extension to quotients over {}", family.ring())).with_n(order);
    let derivation = if order >= 1 { Some(extend_derivation(family, loc)?) } else { None };
    let mut s = spec.sampler();
    for _ in 0..spec.count {
        let e = loc.sample_element(&mut s);
        let rho = ring.sample_element(&mut s);
        let ds = ext.apply_all(order, &e)?;
        if let Some(d) = &derivation {
            let quotient_rule = d.apply(&e)?;
            report.record(quotient_rule == ds[1], || {
                format!("e={}: recursion gives {}, quotient rule {}", loc.display(&e), loc.display(&ds[1]), loc.display(&quotient_rule))
            });
        }
        let product = loc.act(&e, &rho)?;
        let dprod = ext.apply_all(order, &product)?;
        let drho = ring_ext.apply_all(order, &rho)?;
        for n in 0..=order {
            let mut rhs = loc.zero();
            for i in 0..=n {
                rhs = loc.add(&rhs, &loc.act(&ds[i], &drho[n - i])?);
            }
            report.record(dprod[n] == rhs, || {
                format!("n={n} e={} rho={}: law fails over the ring of quotients", loc.display(&e), ring.display(&rho))
            });
        }
        let m = loc.module().sample_element(&mut s);
        let qm = loc.q(&m)?;
        let dq = ext.apply_all(order, &qm)?;
        for (n, lhs) in dq.iter().enumerate() {
            let rhs = loc.q(&family.apply(n, &m)?)?;
            report.record(*lhs == rhs, || format!("n={n}: d_n(q(m)) != q(d_n(m))"));
        }
    }
    Ok(report)
}

/// Samples `t(M)` and checks `d_n(t(M)) ⊆ t(M)` for `n ≤ order`. An
/// ill-defined family fails with the offending relation as witness.
pub fn torsion_preservation_check(
    family: &ModuleHdFamily,
    module: &FgModule,
    filter: &RadicalPowerFilter,
    order: usize,
    spec: &SampleSpec,
) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!("torsion preservation under {} for {filter}", family.ring())).with_n(order);
    if let Err(e) = family.check_well_defined(module) {
        report.fail(e.to_string());
        return Ok(report);
    }
    let torsion = super::module::torsion_submodule(module, filter);
    if torsion.is_zero() {
        report.note("t(M) = 0, nothing to preserve");
        return Ok(report);
    }
    let mut s = spec.sampler();
    for _ in 0..spec.count {
        let m = torsion.sample_element(module, &mut s)?;
        for n in 0..=order {
            let image = family.apply(n, &m)?;
            report.record(torsion.contains(module, &image)?, || {
                let shown: Vec<String> = m.iter().map(Poly::to_string).collect();
                format!("d_{n} sends torsion element ({}) outside t(M)", shown.join(", "))
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotients::module_of_quotients;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn fx() -> RadicalPowerFilter {
        RadicalPowerFilter::new(p("x")).unwrap()
    }

    #[test]
    fn inverse_of_x() {
        let ext = extend_ring_hd(&HdFamily::hasse(2), &fx(), 2).unwrap();
        let loc = ext.localized();
        let inv = loc.fraction(&[p("1")], 1).unwrap();
        let ds = ext.apply_all(2, &inv).unwrap();
        assert_eq!(ds[1], loc.fraction(&[p("-1")], 2).unwrap());
        assert_eq!(ds[2], loc.fraction(&[p("1")], 3).unwrap());
        let d = extend_derivation(&ModuleHdFamily::coordinatewise(HdFamily::hasse(1), 1), loc).unwrap();
        assert_eq!(d.apply(&inv).unwrap(), ds[1]);
        let one = loc.fraction(&[p("x")], 1).unwrap();
        assert!(d.apply(&one).unwrap().is_zero());
    }

    #[test]
    fn geometric_series_oracle() {
        // 1/(x+t) = Σ (-1)^n t^n / x^(n+1), so d_n(1/x) = (-1)^n / x^(n+1).
        let ext = extend_ring_hd(&HdFamily::hasse(6), &fx(), 6).unwrap();
        let loc = ext.localized();
        let ds = ext.apply_all(6, &loc.fraction(&[p("1")], 1).unwrap()).unwrap();
        for (n, d) in ds.iter().enumerate() {
            let sign = if n % 2 == 0 { "1" } else { "-1" };
            assert_eq!(*d, loc.fraction(&[p(sign)], n as u32 + 1).unwrap());
        }
    }

    #[test]
    fn extension_report_on_free_module() {
        let loc = LocalizedModule::ring(&fx());
        let family = ModuleHdFamily::coordinatewise(HdFamily::hasse(4), 1);
        let report = extension_check(&family, &loc, 4, &SampleSpec::new(3, 25)).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn extension_report_with_twisted_generator() {
        // M = Q[x]^2 with d_1(e_1) = e_2: still a Δ-HD for order 1.
        let m = FgModule::free(2);
        let family = ModuleHdFamily::new(
            HdFamily::hasse(1),
            vec![vec![vec![p("0"), p("1")], vec![p("0"), p("0")]]],
            1,
        )
        .unwrap();
        let loc = module_of_quotients(&m, &fx());
        let report = extension_check(&family, &loc, 1, &SampleSpec::new(9, 25)).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn ill_defined_family_rejected() {
        let m = FgModule::cyclic(p("x^3 - x^2"));
        let loc = module_of_quotients(&m, &fx());
        let family = ModuleHdFamily::coordinatewise(HdFamily::hasse(1), 1);
        assert!(matches!(extend_hd(&family, &loc, 1), Err(Error::IllDefined(_))));
        let report = torsion_preservation_check(&family, &m, &fx(), 1, &SampleSpec::new(1, 5)).unwrap();
        assert!(!report.passed());
    }

    #[test]
    fn torsion_preserved_by_admissible_derivation() {
        let m = FgModule::cyclic(p("x^3 - x^2"));
        let family = ModuleHdFamily::coordinatewise(HdFamily::from_derivation(p("x^2 - x"), 3), 1);
        let report = torsion_preservation_check(&family, &m, &fx(), 3, &SampleSpec::new(2, 30)).unwrap();
        assert!(report.passed(), "{report}");
        let loc = module_of_quotients(&m, &fx());
        let report = extension_check(&family, &loc, 3, &SampleSpec::new(4, 20)).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn vacuous_and_full_torsion() {
        let family = ModuleHdFamily::coordinatewise(HdFamily::from_derivation(p("x^2 - x"), 2), 1);
        let r = torsion_preservation_check(&family, &FgModule::cyclic(p("x - 1")), &fx(), 2, &SampleSpec::new(1, 5)).unwrap();
        assert!(r.passed() && !r.notes.is_empty());
        let euler = ModuleHdFamily::coordinatewise(HdFamily::from_derivation(p("x"), 2), 1);
        let r = torsion_preservation_check(&euler, &FgModule::cyclic(p("x^2")), &fx(), 2, &SampleSpec::new(1, 5)).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn adapted_family_on_mixed_presentation() {
        // Relations x^2 e1 + x e2 and (x - 1) e2: torsion and free parts mixed.
        let m: FgModule = "x^2; x\n0; x - 1".parse().unwrap();
        let family = ModuleHdFamily::adapted(&m, 3).unwrap();
        family.check_well_defined(&m).unwrap();
        let loc = module_of_quotients(&m, &fx());
        let report = extension_check(&family, &loc, 3, &SampleSpec::new(6, 15)).unwrap();
        assert!(report.passed(), "{report}");
        let report = torsion_preservation_check(&family, &m, &fx(), 3, &SampleSpec::new(7, 15)).unwrap();
        assert!(report.passed(), "{report}");
    }
}
