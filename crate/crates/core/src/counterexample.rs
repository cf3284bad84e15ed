//! A torsion theory over `Z[x]` that is neither hereditary nor differential.
//!
//! With `I = (x)` and `R/I ≅ Z`, the class of modules `M` for which
//! `M → M⊗_R Z` is zero defines a torsion theory whose torsion part is
//! `T(M) = ker(M → M⊗_R Z) = M·x`. Then `T(R) = (x)` and `T(I) = (x²)`, so
//! `T(I) ≠ I ∩ T(R)`; and `d/dx` sends `x ∈ T(R)` to `1 ∉ T(R)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::ring::{Domain, Poly, PrincipalIdeal, Rational};
use crate::sampling::SampleSpec;

/// Principal ideal of `Z[x]`; membership is exact integral divisibility.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ZxPrincipalIdeal(PrincipalIdeal);

impl ZxPrincipalIdeal {
    pub fn new(generator: Poly) -> Result<Self> {
        if generator.domain() != Domain::Z {
            return Err(Error::DomainMismatch("Z", "Q"));
        }
        Ok(ZxPrincipalIdeal(PrincipalIdeal::new(generator)))
    }

    pub fn whole() -> Self {
        ZxPrincipalIdeal(PrincipalIdeal::whole(Domain::Z))
    }

    /// `(x^k)`.
    pub fn x_power(k: u32) -> Self {
        ZxPrincipalIdeal(PrincipalIdeal::new(Poly::x(Domain::Z).pow(k)))
    }

    pub fn generator(&self) -> &Poly {
        self.0.generator()
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.0.contains(p)
    }

    pub fn is_subset_of(&self, other: &ZxPrincipalIdeal) -> bool {
        self.0.is_subset_of(&other.0)
    }

    /// `(a) ∩ (b) = (lcm(a, b))` in the UFD `Z[x]`.
    pub fn intersect(&self, other: &ZxPrincipalIdeal) -> ZxPrincipalIdeal {
        let (a, b) = (self.generator(), other.generator());
        if a.is_zero() || b.is_zero() {
            return ZxPrincipalIdeal(PrincipalIdeal::zero(Domain::Z));
        }
        let content = a.content().lcm(&b.content());
        let q_lcm = a.to_rational().lcm(&b.to_rational()).expect("over Q");
        let prim = primitive_part(&q_lcm);
        let g = prim.scale(&Rational::from_integer(content));
        ZxPrincipalIdeal(PrincipalIdeal::new(g))
    }
}

/// Primitive integral polynomial with positive leading coefficient that is
/// a rational multiple of `p`.
fn primitive_part(p: &Poly) -> Poly {
    let denominators = p.coeffs().iter().fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
    let cleared = p.scale(&Rational::from_integer(denominators));
    let content = cleared.content();
    let sign = if p.leading().is_some_and(|l| l.is_negative()) { -1 } else { 1 };
    let prim = cleared.scale(&Rational::new(BigInt::from(sign), content));
    prim.to_integer().expect("cleared denominators")
}

impl fmt::Display for ZxPrincipalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `M → M⊗_R Z` for `M = (g)`: the kernel is `M·x = (g·x)` and the image is
/// `M/Mx ≅ Z`, generated by the class of `g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TensorKernel {
    pub module: ZxPrincipalIdeal,
    pub kernel: ZxPrincipalIdeal,
    pub cokernel: String,
}

impl TensorKernel {
    /// Whether `m ∈ M` maps to zero in `M⊗Z`; `m = g·h` does iff `h(0) = 0`.
    pub fn maps_to_zero(&self, m: &Poly) -> Option<bool> {
        let g = self.module.generator();
        let h = m.exact_div(g)?;
        Some(h.eval(&Rational::from_integer(0.into())) == Rational::from_integer(0.into()))
    }
}

pub fn tensor_with_z(module: &ZxPrincipalIdeal) -> TensorKernel {
    let g = module.generator();
    let kernel = ZxPrincipalIdeal::new(g * &Poly::x(Domain::Z)).expect("stays over Z");
    TensorKernel { module: module.clone(), kernel, cokernel: format!("Z, generated by the class of {g}") }
}

/// `T(M) = ker(M → M⊗_R Z)`.
pub fn torsion(module: &ZxPrincipalIdeal) -> ZxPrincipalIdeal {
    tensor_with_z(module).kernel
}

/// `T(R) = (x)`, `T(I) = (x²)`, `I ∩ T(R) = (x)` and the witness
/// `x ∈ (x) \ (x²)`.
pub fn hereditary_violation_check() -> CheckReport {
    let mut report = CheckReport::new("torsion theory is not hereditary");
    let r = ZxPrincipalIdeal::whole();
    let i = ZxPrincipalIdeal::x_power(1);
    let t_r = torsion(&r);
    let t_i = torsion(&i);
    let meet = i.intersect(&t_r);
    let x = Poly::x(Domain::Z);
    report.record(t_r == i, || format!("T(R) = {t_r}, expected (x)"));
    report.record(t_i == ZxPrincipalIdeal::x_power(2), || format!("T(I) = {t_i}, expected (x^2)"));
    report.record(meet == i, || format!("I ∩ T(R) = {meet}, expected (x)"));
    report.record(t_r.intersect(&r) == t_r, || "T(R) ∩ R != T(R)".into());
    report.record(t_i.is_subset_of(&meet), || format!("{t_i} not inside {meet}"));
    report.record(meet.contains(&x) && !t_i.contains(&x), || format!("{x} does not separate {meet} from {t_i}"));
    report.record(t_i != meet, || "T(I) = I ∩ T(R)".into());
    report.note(format!("T(R) = {t_r}"));
    report.note(format!("T(I) = {t_i}"));
    report.note(format!("I ∩ T(R) = {meet}"));
    report.note(format!("witness: {x} in I ∩ T(R) but not in T(I)"));
    report
}

/// `δ = d/dx` is a derivation of `Z[x]`, `x ∈ T(R)` and `δ(x) = 1 ∉ T(R)`.
pub fn derivative_escape_check(spec: &SampleSpec) -> CheckReport {
    let mut report = CheckReport::new("torsion theory is not differential");
    let mut s = spec.sampler();
    for _ in 0..spec.count {
        let (a, b) = (s.poly(Domain::Z), s.poly(Domain::Z));
        let lhs = (&a * &b).derivative();
        let rhs = &(&a.derivative() * &b) + &(&a * &b.derivative());
        report.record(lhs == rhs, || format!("Leibniz fails at a={a} b={b}"));
    }
    let x = Poly::x(Domain::Z);
    let t_r = torsion(&ZxPrincipalIdeal::whole());
    let dx = x.derivative();
    report.record((&x * &x).derivative() == Poly::from_ints(&[0, 2], Domain::Z), || "d(x·x) != 2x".into());
    report.record(
        Poly::from_ints(&[0, 2, 0, 1], Domain::Z).derivative() == Poly::from_ints(&[2, 0, 3], Domain::Z),
        || "d(x^3 + 2x) != 3x^2 + 2".into(),
    );
    report.record(t_r.contains(&x), || format!("{x} not in T(R) = {t_r}"));
    report.record(dx.is_one() && !t_r.contains(&dx), || format!("d(x) = {dx} stays in T(R)"));
    report.note(format!("x in T(R) = {t_r}, d(x) = {dx} not in T(R)"));
    report
}

/// `R, T(R), T(T(R)), …`: each application multiplies by `x`.
pub fn torsion_iterates(steps: usize) -> Vec<ZxPrincipalIdeal> {
    let mut out = vec![ZxPrincipalIdeal::whole()];
    for _ in 0..steps {
        let next = torsion(out.last().expect("nonempty"));
        out.push(next);
    }
    out
}

/// Everything the counterexample computes, for reports.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CounterexampleTrace {
    pub t_r: String,
    pub t_i: String,
    pub i_cap_t_r: String,
    pub witness: String,
    pub delta_x: String,
    pub iterates: Vec<String>,
    pub reports: Vec<CheckReport>,
}

pub fn counterexample_trace(spec: &SampleSpec) -> CounterexampleTrace {
    let i = ZxPrincipalIdeal::x_power(1);
    let t_r = torsion(&ZxPrincipalIdeal::whole());
    CounterexampleTrace {
        t_i: torsion(&i).to_string(),
        i_cap_t_r: i.intersect(&t_r).to_string(),
        t_r: t_r.to_string(),
        witness: "x".into(),
        delta_x: Poly::x(Domain::Z).derivative().to_string(),
        iterates: torsion_iterates(3).iter().map(ToString::to_string).collect(),
        reports: vec![hereditary_violation_check(), derivative_escape_check(spec)],
    }
}
