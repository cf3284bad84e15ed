use super::RadicalPowerFilter;
use crate::error::{Error, Result};
use crate::operators::{ab_leibniz_rhs, compositions, verify_ab_hd, AbContext, HdFamily, OperatorWord};
use crate::report::CheckReport;
use crate::ring::{colon_ideal, Domain, Poly, PrincipalIdeal};
use crate::sampling::SampleSpec;

/// `Σ_{k_0+…+k_i = n−i} δ_{k_0} β δ_{k_1} … β δ_{k_i} (r)`, the coefficient
/// attached to `r` in the `i`-th block of the twisted Leibniz expansion.
fn first_product_sum(family: &HdFamily, ctx: &AbContext, n: usize, i: usize, r: &Poly) -> Result<Poly> {
    let mut acc = Poly::zero(Domain::Q);
    for ks in compositions(n, i)? {
        let word = OperatorWord::first_product(&ks).normalize(ctx);
        acc = &acc + &word.eval(ctx, family, r)?;
    }
    Ok(acc)
}

/// Rebuilds the inductive witness construction for `Δ`-invariance on the
/// cofinal chain `(base^k)` and samples its key containment.
///
/// With `I = (base^k)`:
///
/// * `J_0 = I`, `J_i = (base^(k+n))` for `0 < i < n`, `J_n = β^{-n}(I)` and
///   `J_α = α^{-n}(I)`;
/// * `K` is the intersection (lcm) of all of them;
/// * `J = { r ∈ K : δ_n(r) ∈ I }` is kept as a predicate.
///
/// For sampled `r ∈ K` and `s ∈ (α^{-n}δ_n(r) : K)` the trace checks
/// `r·s ∈ J`, i.e. `(α^{-n}δ_n(r) : K) ⊆ (r : J)`, together with the
/// intermediate claims: each `J_i` is mapped into `I` by its first-product
/// sum, `α^n(J_α) ⊆ I`, `δ_n(r)·α^n(s) ∈ I`, and the expansion of
/// `δ_n(r·s)` agrees with the direct value.
pub fn prop32_trace(
    filter: &RadicalPowerFilter,
    family: &HdFamily,
    ctx: &AbContext,
    ideal: &PrincipalIdeal,
    n: usize,
    spec: &SampleSpec,
) -> Result<CheckReport> {
    for (name, sigma) in [("alpha", &ctx.alpha), ("beta", &ctx.beta)] {
        if !filter.is_invariant_under(sigma)? {
            return Err(Error::NotInvariant(format!("{name} = {sigma} on {filter}")));
        }
    }
    let k = filter.base_exponent(ideal).ok_or_else(|| Error::NotBasePower(ideal.to_string()))?;
    if n > family.order_bound() {
        return Err(Error::OrderBoundExceeded { requested: n, bound: family.order_bound() });
    }
    let mut report = CheckReport::new(format!("witness-trace {filter} I={ideal} family={family}")).with_n(n);
    if n >= 1 {
        let law = verify_ab_hd(family, ctx, n, &spec.fork(1).with_count(spec.count.min(30)))?;
        report.absorb(&law);
    }

    let alpha_n = ctx.alpha.pow(n as i64);
    let mut parts = vec![(0usize, ideal.clone())];
    for i in 1..=n {
        let j_i = if i < n { filter.power(k + n as u32) } else { ideal.map(&ctx.beta.pow(-(n as i64)))? };
        parts.push((i, j_i));
    }
    let j_alpha = ideal.map(&alpha_n.inverse())?;
    report.record(ideal.contains(&alpha_n.apply(j_alpha.generator())?), || {
        format!("alpha^n(J_alpha) not in I for J_alpha={j_alpha}")
    });

    let mut s = spec.sampler();
    for (i, j_i) in parts.iter().skip(1) {
        report.record(filter.contains(j_i), || format!("J_{i}={j_i} not a member"));
        for _ in 0..spec.count.min(20) {
            let r = j_i.generator() * &s.poly(Domain::Q);
            let image = first_product_sum(family, ctx, n, *i, &r)?;
            report.record(ideal.contains(&image), || format!("first-product sum i={i} of {r} = {image} not in I"));
        }
    }

    let mut k_ideal = j_alpha.clone();
    for (_, j_i) in &parts {
        k_ideal = k_ideal.intersect(j_i)?;
    }
    report.record(filter.contains(&k_ideal) && k_ideal.is_subset_of(ideal), || {
        format!("K={k_ideal} must be a member contained in I")
    });
    report.note(format!("K = {k_ideal}"));

    let in_j = |p: &Poly| -> Result<bool> { Ok(k_ideal.contains(p) && ideal.contains(&family.apply(n, p)?)) };
    let alpha_inv_n = alpha_n.inverse();
    for sample in 0..spec.count {
        let h = if sample == 0 { Poly::one(Domain::Q) } else { s.poly(Domain::Q) };
        let r = k_ideal.generator() * &h;
        let pulled = alpha_inv_n.apply(&family.apply(n, &r)?)?;
        let colon = colon_ideal(&pulled, &k_ideal)?;
        let t = if sample % 5 == 0 { Poly::one(Domain::Q) } else { s.poly(Domain::Q) };
        let s_elem = colon.generator() * &t;
        let product = &r * &s_elem;

        report.record(in_j(&product)?, || format!("r={r} s={s_elem}: r*s not in J"));
        let lead = &family.apply(n, &r)? * &alpha_n.apply(&s_elem)?;
        report.record(ideal.contains(&lead), || format!("delta_n(r) alpha^n(s) = {lead} not in I"));
        for i in 1..=n {
            let coefficient = first_product_sum(family, ctx, n, i, &r)?;
            report.record(ideal.contains(&coefficient), || format!("first-product sum i={i} of r={r} not in I"));
        }
        if n >= 1 {
            let direct = family.apply(n, &product)?;
            let expanded = ab_leibniz_rhs(family, ctx, n, &r, &s_elem)?;
            report.record(direct == expanded, || format!("expansion mismatch at r={r} s={s_elem}"));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, Automorphism};

    fn filter(s: &str) -> RadicalPowerFilter {
        RadicalPowerFilter::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn classical_first_order() {
        let f = filter("x");
        let report = prop32_trace(&f, &HdFamily::hasse(3), &AbContext::identity(), &f.power(2), 1, &SampleSpec::new(4, 40))
            .unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn classical_higher_orders() {
        for base in ["x", "x^2 + 1", "x^2 - x"] {
            let f = filter(base);
            for n in 0..=3 {
                let report =
                    prop32_trace(&f, &HdFamily::hasse(3), &AbContext::identity(), &f.power(2), n, &SampleSpec::new(n as u64, 15))
                        .unwrap();
                assert!(report.passed(), "{report}");
            }
        }
    }

    #[test]
    fn twisted_difference_family() {
        let alpha = Automorphism::scaling(int(2)).unwrap();
        let ctx = AbContext::new(alpha.clone(), Automorphism::identity());
        let family = HdFamily::automorphism_difference(alpha);
        let f = filter("x");
        let report = prop32_trace(&f, &family, &ctx, &f.power(3), 1, &SampleSpec::new(8, 40)).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn non_invariant_twist_rejected() {
        let ctx = AbContext::new(Automorphism::translation(int(1)), Automorphism::identity());
        let f = filter("x");
        assert!(matches!(
            prop32_trace(&f, &HdFamily::hasse(1), &ctx, &f.power(1), 1, &SampleSpec::new(1, 5)),
            Err(Error::NotInvariant(_))
        ));
    }
}
