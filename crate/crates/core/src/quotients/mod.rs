//! Finitely generated `Q[x]`-modules, their torsion and modules of quotients.
//!
//! Modules are given by presentation matrices and handled through their
//! Smith normal form. For a radical-power filter the module of quotients is
//! the localization of `M/t(M)` at the powers of the base; higher
//! derivations extend to it by solving the Leibniz law for fractions.

mod agreement;
mod extension;
mod localized;
mod matrix;
mod module;
mod snf;

pub use agreement::{agreement_check, q12_map, Q12Map};
pub use extension::{
    extend_derivation, extend_hd, extend_ring_hd, extension_check, torsion_preservation_check, ExtendedDerivation,
    ExtendedHd, ModuleHdFamily,
};
pub use localized::{module_of_quotients, Component, LocElem, LocalizedModule};
pub use matrix::PolyMatrix;
pub use module::{split_by_base, torsion_submodule, FgModule, TorsionPart, TorsionSubmodule};
pub use snf::{smith_normal_form, SnfDecomposition};

use crate::error::Result;
use crate::filters::RadicalPowerFilter;
use crate::report::CheckReport;
use crate::ring::Poly;
use crate::sampling::SampleSpec;

pub(crate) fn vec_add(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn vec_scale(a: &[Poly], r: &Poly) -> Vec<Poly> {
    a.iter().map(|x| x * r).collect()
}

/// `q_M` into the module of quotients of `module` for `filter`.
pub fn q_map(module: &FgModule, filter: &RadicalPowerFilter, m: &[Poly]) -> Result<LocElem> {
    module_of_quotients(module, filter).q(m)
}

/// Samples `ker q_M = t(M)`, that `t(M)` is killed by a base power and that
/// `M/t(M)` has no torsion left.
pub fn localization_check(module: &FgModule, filter: &RadicalPowerFilter, spec: &SampleSpec) -> Result<CheckReport> {
    let loc = module_of_quotients(module, filter);
    let torsion = loc.torsion();
    let mut report = CheckReport::new(format!("module of quotients for {filter}"));
    let shown: Vec<String> = loc.components().iter().map(|c| format!("{c:?}")).collect();
    report.note(format!("components: [{}]", shown.join(", ")));
    let orders: Vec<String> = torsion.orders().iter().map(Poly::to_string).collect();
    report.note(format!("torsion orders: [{}]", orders.join(", ")));
    let killer = filter.base().pow(torsion.exponent());
    let mut s = spec.sampler();
    for sample in 0..spec.count {
        let m = if sample % 2 == 0 { module.sample_element(&mut s) } else { torsion.sample_element(module, &mut s)? };
        let in_t = torsion.contains(module, &m)?;
        let in_ker = loc.q(&m)?.is_zero();
        report.record(in_t == in_ker, || format!("sample {sample}: torsion={in_t} but q_M zero={in_ker}"));
        if in_t {
            report.record(module.is_zero(&vec_scale(&m, &killer))?, || format!("sample {sample}: not killed by {killer}"));
        }
        let mb = vec_scale(&m, filter.base());
        report.record(torsion.contains(module, &mb)? == in_t, || format!("sample {sample}: M/t(M) has base torsion"));
    }
    Ok(report)
}
