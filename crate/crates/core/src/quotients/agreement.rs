use super::extension::{extend_hd, ModuleHdFamily};
use super::localized::{module_of_quotients, LocElem, LocalizedModule};
use super::module::FgModule;
use crate::error::{Error, Result};
use crate::filters::RadicalPowerFilter;
use crate::report::CheckReport;
use crate::ring::Poly;
use crate::sampling::SampleSpec;

/// The map `M_{F1} → M_{F2}` induced by `F1 ⊆ F2`.
///
/// With `m = max(1, deg base1)` and `c = base2^m / base1`,
/// `v / base1^k = v·c^k / base2^{m·k}`.
#[derive(Debug, Clone)]
pub struct Q12Map {
    source: LocalizedModule,
    target: LocalizedModule,
    cofactor: Poly,
    multiplier: u32,
}

impl Q12Map {
    pub fn source(&self) -> &LocalizedModule {
        &self.source
    }

    pub fn target(&self) -> &LocalizedModule {
        &self.target
    }

    /// `c` with `base1 · c = base2^m`.
    pub fn cofactor(&self) -> &Poly {
        &self.cofactor
    }

    pub fn apply(&self, e: &LocElem) -> Result<LocElem> {
        let k = e.exponent();
        let c = self.cofactor.pow(k);
        let num = e.numerator().iter().map(|v| v * &c).collect();
        self.target.from_snf(num, self.multiplier * k)
    }
}

/// Builds `q12` for `F1 ⊆ F2`.
pub fn q12_map(f1: &RadicalPowerFilter, f2: &RadicalPowerFilter, module: &FgModule) -> Result<Q12Map> {
    if !f1.is_subfilter_of(f2) {
        return Err(Error::NotNested(format!("{f1} is not contained in {f2}")));
    }
    let multiplier = f1.base().degree().unwrap_or(0).max(1) as u32;
    let cofactor = f2
        .base()
        .pow(multiplier)
        .exact_div(f1.base())
        .ok_or_else(|| Error::NotNested(format!("{} does not divide {}^{multiplier}", f1.base(), f2.base())))?;
    Ok(Q12Map {
        source: module_of_quotients(module, f1),
        target: module_of_quotients(module, f2),
        cofactor,
        multiplier,
    })
}

/// Checks both squares of the agreement diagram on samples:
/// `q12∘q1 = q2`, and `d_n∘q12 = q12∘d_n` for `n ≤ order`.
pub fn agreement_check(
    family: &ModuleHdFamily,
    f1: &RadicalPowerFilter,
    f2: &RadicalPowerFilter,
    module: &FgModule,
    order: usize,
    spec: &SampleSpec,
) -> Result<CheckReport> {
    let q12 = q12_map(f1, f2, module)?;
    let (l1, l2) = (q12.source(), q12.target());
    let d1 = extend_hd(family, l1, order)?;
    let d2 = extend_hd(family, l2, order)?;
    let mut report = CheckReport::new(format!("agreement {f1} -> {f2} under {}", family.ring())).with_n(order);
    let mut s = spec.sampler();
    for _ in 0..spec.count {
        let m = module.sample_element(&mut s);
        let via = q12.apply(&l1.q(&m)?)?;
        report.record(via == l2.q(&m)?, || format!("q12(q1(m)) != q2(m) at m={}", l1.display(&l1.q(&m).unwrap_or(l1.zero()))));

        let e = l1.sample_element(&mut s);
        let image = q12.apply(&e)?;
        let before = d1.apply_all(order, &e)?;
        let after = d2.apply_all(order, &image)?;
        for n in 0..=order {
            let lhs = q12.apply(&before[n])?;
            report.record(lhs == after[n], || {
                format!("n={n} e={}: q12(d_n e) = {} but d_n(q12 e) = {}", l1.display(&e), l2.display(&lhs), l2.display(&after[n]))
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::HdFamily;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn filter(s: &str) -> RadicalPowerFilter {
        RadicalPowerFilter::new(p(s)).unwrap()
    }

    #[test]
    fn inverse_of_x_is_rewritten() {
        let q12 = q12_map(&filter("x"), &filter("x^2 - x"), &FgModule::free(1)).unwrap();
        let image = q12.apply(&q12.source().fraction(&[p("1")], 1).unwrap()).unwrap();
        assert_eq!(image, q12.target().fraction(&[p("x - 1")], 1).unwrap());
        // Cross-multiplication: (x - 1) · x = 1 · x(x - 1).
        assert_eq!(q12.target().scale(&image, &p("x")), q12.target().q(&[p("1")]).unwrap());
        let plain = q12.source().q(&[p("x^2 + 3")]).unwrap();
        assert_eq!(q12.apply(&plain).unwrap(), q12.target().q(&[p("x^2 + 3")]).unwrap());
    }

    #[test]
    fn larger_torsion_dies() {
        let m = FgModule::cyclic(p("x - 1"));
        let q12 = q12_map(&filter("x"), &filter("x^2 - x"), &m).unwrap();
        let e = q12.source().q(&[p("1")]).unwrap();
        assert!(!e.is_zero());
        assert!(q12.apply(&e).unwrap().is_zero());
    }

    #[test]
    fn non_nested_rejected() {
        assert!(matches!(q12_map(&filter("x - 1"), &filter("x"), &FgModule::free(1)), Err(Error::NotNested(_))));
    }

    #[test]
    fn diagram_commutes() {
        let family = ModuleHdFamily::coordinatewise(HdFamily::hasse(3), 1);
        let report =
            agreement_check(&family, &filter("x"), &filter("x^2 - x"), &FgModule::free(1), 3, &SampleSpec::new(6, 30))
                .unwrap();
        assert!(report.passed(), "{report}");
        let family = ModuleHdFamily::coordinatewise(HdFamily::from_derivation(p("x^2 - x"), 2), 1);
        let report =
            agreement_check(&family, &filter("x"), &filter("x^2 - x"), &FgModule::cyclic(p("x - 1")), 2, &SampleSpec::new(7, 20))
                .unwrap();
        assert!(report.passed(), "{report}");
    }
}
