//! Configured verification runs producing one deterministic report.
//!
//! Each suite is a list of named checks. Suites run on separate threads and
//! their entries are merged in the fixed order of [`SuiteId::ALL`], so a
//! given [`SuiteConfig`] always yields the same report bytes (timings are
//! only included on request).

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::counterexample::{derivative_escape_check, hereditary_violation_check, torsion_iterates};
use crate::error::{Error, Result};
use crate::filters::{gabriel_axiom_check, invariance_witness, prop32_trace, verify_invariance, RadicalPowerFilter};
use crate::operators::{
    collapse_check, families_agree, printed_formula_check, verify_ab_hd, verify_classical_hd, AbContext, HdFamily,
};
use crate::quotients::{
    agreement_check, extension_check, localization_check, module_of_quotients, torsion_preservation_check, FgModule,
    ModuleHdFamily,
};
use crate::report::{CheckReport, Status};
use crate::ring::{int, Automorphism, Domain, Poly};
use crate::sampling::SampleSpec;
use crate::symmetric::{
    bimodule_correspondence_check, env_axioms_check, upper_triangular_inner, verify_bar_hd, AlgebraHd, FinDimAlgebra,
};

/// The selectable suites, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteId {
    Hd,
    Ab,
    Collapse,
    Filter,
    Invariance,
    Trace,
    Localize,
    Extend,
    Agreement,
    Symmetric,
    Counterexample,
}

impl SuiteId {
    pub const ALL: [SuiteId; 11] = [
        SuiteId::Hd,
        SuiteId::Ab,
        SuiteId::Collapse,
        SuiteId::Filter,
        SuiteId::Invariance,
        SuiteId::Trace,
        SuiteId::Localize,
        SuiteId::Extend,
        SuiteId::Agreement,
        SuiteId::Symmetric,
        SuiteId::Counterexample,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteId::Hd => "hd",
            SuiteId::Ab => "ab",
            SuiteId::Collapse => "collapse",
            SuiteId::Filter => "filter",
            SuiteId::Invariance => "invariance",
            SuiteId::Trace => "trace",
            SuiteId::Localize => "localize",
            SuiteId::Extend => "extend",
            SuiteId::Agreement => "agreement",
            SuiteId::Symmetric => "symmetric",
            SuiteId::Counterexample => "counterexample",
        }
    }

    /// Order bound used when the config does not fix one.
    pub fn default_order(self) -> usize {
        match self {
            SuiteId::Hd => 8,
            SuiteId::Ab => 2,
            SuiteId::Collapse => 6,
            SuiteId::Filter => 1,
            SuiteId::Invariance | SuiteId::Extend => 4,
            SuiteId::Trace | SuiteId::Agreement | SuiteId::Symmetric => 3,
            SuiteId::Localize | SuiteId::Counterexample => 1,
        }
    }

    /// Sample count used when the config does not fix one.
    pub fn default_samples(self) -> usize {
        match self {
            SuiteId::Hd => 200,
            _ => 100,
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteId {
    type Err = Error;

    fn from_str(s: &str) -> Result<SuiteId> {
        SuiteId::ALL
            .into_iter()
            .find(|id| id.name() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    #[default]
    Json,
    Text,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<ReportFormat> {
        match s.trim() {
            "json" => Ok(ReportFormat::Json),
            "text" => Ok(ReportFormat::Text),
            other => Err(Error::Parse(format!("unknown format `{other}`"))),
        }
    }
}

/// Run configuration. `order` and `samples` override every suite's default
/// when set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub degree: usize,
    pub coeff: i64,
    pub order: Option<usize>,
    pub samples: Option<usize>,
    pub suites: Vec<SuiteId>,
    /// Presentation matrix file for the localize, extend and agreement suites.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub module: Option<String>,
    /// Filter base used with `module`; `x` when unset.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base: Option<String>,
    /// Larger filter base for agreement; `base·(x − 1)` when unset.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base2: Option<String>,
    /// Structure-constant file for the symmetric suite.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
    #[serde(skip)]
    pub out: Option<String>,
    #[serde(skip)]
    pub format: ReportFormat,
    #[serde(skip)]
    pub timings: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        let spec = SampleSpec::default();
        SuiteConfig {
            seed: spec.seed,
            degree: spec.degree,
            coeff: spec.coeff,
            order: None,
            samples: None,
            suites: SuiteId::ALL.to_vec(),
            module: None,
            base: None,
            base2: None,
            algebra: None,
            out: None,
            format: ReportFormat::Json,
            timings: false,
        }
    }
}

impl SuiteConfig {
    /// Parses flat `key = value` lines over the defaults. `#` starts a
    /// comment. Keys: `seed`, `degree`, `coeff`, `order`, `samples`,
    /// `suites` (comma list or `all`), `module`, `base`, `base2`, `algebra`,
    /// `out`, `format`, `timings`.
    pub fn from_config_text(text: &str) -> Result<SuiteConfig> {
        let mut cfg = SuiteConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected `key = value`", lineno + 1)))?;
            cfg.set(key.trim(), value.trim()).map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let num = |v: &str| v.parse::<u64>().map_err(|_| Error::Parse(format!("`{key}` needs a number, got `{v}`")));
        match key {
            "seed" => self.seed = num(value)?,
            "degree" => self.degree = num(value)? as usize,
            "coeff" => self.coeff = num(value)? as i64,
            "order" => self.order = Some(num(value)? as usize),
            "samples" => self.samples = Some(num(value)? as usize),
            "suites" => {
                self.suites = if value == "all" {
                    SuiteId::ALL.to_vec()
                } else {
                    value.split(',').map(str::parse).collect::<Result<_>>()?
                }
            }
            "module" => self.module = Some(value.to_string()),
            "base" => self.base = Some(value.to_string()),
            "base2" => self.base2 = Some(value.to_string()),
            "algebra" => self.algebra = Some(value.to_string()),
            "out" => self.out = Some(value.to_string()),
            "format" => self.format = value.parse()?,
            "timings" => {
                self.timings = value
                    .parse()
                    .map_err(|_| Error::Parse(format!("`timings` needs true or false, got `{value}`")))?
            }
            other => return Err(Error::Parse(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    /// All bounds must be at least 1.
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::OutOfRange(format!("{what} must be at least 1")));
        if self.degree == 0 {
            return bad("degree");
        }
        if self.coeff < 1 {
            return bad("coeff");
        }
        if self.order == Some(0) {
            return bad("order");
        }
        if self.samples == Some(0) {
            return bad("samples");
        }
        Ok(())
    }

    pub fn order_for(&self, suite: SuiteId) -> usize {
        self.order.unwrap_or(suite.default_order())
    }

    /// Sampling parameters for one suite, on a stream of its own.
    pub fn spec_for(&self, suite: SuiteId) -> SampleSpec {
        let base = SampleSpec {
            seed: self.seed,
            count: self.samples.unwrap_or(suite.default_samples()),
            degree: self.degree,
            coeff: self.coeff,
        };
        base.fork(suite as u64 + 1)
    }
}

/// One check in the report.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Entry {
    pub id: String,
    /// The statement being verified, in words.
    pub claim: String,
    /// `fail` for adversarial checks that must be refuted.
    pub expect: Status,
    pub status: Status,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    pub reports: Vec<CheckReport>,
}

impl Entry {
    pub fn as_expected(&self) -> bool {
        self.status == self.expect
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub entries: Vec<Entry>,
    pub total: usize,
    pub unexpected: usize,
    pub ok: bool,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let mark = if e.as_expected() { "ok  " } else { "BAD " };
            out += &format!("{mark} {:<44} {} (expect {}, {} samples)\n", e.id, e.status, e.expect, e.samples);
            out += &format!("       {}\n", e.claim);
            if let Some(w) = &e.witness {
                out += &format!("       witness: {w}\n");
            }
            for r in &e.reports {
                for note in &r.notes {
                    out += &format!("       note: {note}\n");
                }
            }
        }
        out += &format!("{} checks, {} unexpected: {}\n", self.total, self.unexpected, if self.ok { "OK" } else { "FAILED" });
        out
    }

    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Json => self.to_json(),
            ReportFormat::Text => self.to_text(),
        }
    }
}

struct Check {
    id: String,
    claim: String,
    expect: Status,
    run: Box<dyn FnOnce() -> Result<Vec<CheckReport>> + Send>,
}

fn check<F>(id: &str, claim: &str, run: F) -> Check
where
    F: FnOnce() -> Result<Vec<CheckReport>> + Send + 'static,
{
    Check { id: id.into(), claim: claim.into(), expect: Status::Pass, run: Box::new(run) }
}

fn adversarial<F>(id: &str, claim: &str, run: F) -> Check
where
    F: FnOnce() -> Result<Vec<CheckReport>> + Send + 'static,
{
    Check { expect: Status::Fail, ..check(id, claim, run) }
}

fn run_check(c: Check, timings: bool) -> Entry {
    let start = Instant::now();
    let (status, witness, samples, reports) = match (c.run)() {
        Ok(reports) => {
            let failed = reports.iter().find(|r| !r.passed());
            let status = if failed.is_some() { Status::Fail } else { Status::Pass };
            let samples = reports.iter().map(|r| r.sample_count).sum();
            (status, failed.and_then(|r| r.witness.clone()), samples, reports)
        }
        Err(e) => (Status::Fail, Some(format!("error: {e}")), 0, Vec::new()),
    };
    Entry {
        id: c.id,
        claim: c.claim,
        expect: c.expect,
        status,
        samples,
        witness,
        elapsed_ms: timings.then(|| start.elapsed().as_millis() as u64),
        reports,
    }
}

fn p(s: &str) -> Poly {
    s.parse().expect("built-in polynomial")
}

fn filter(base: &str) -> RadicalPowerFilter {
    RadicalPowerFilter::new(p(base)).expect("built-in base")
}

const BASES: [&str; 3] = ["x", "x^2 + 1", "x^2 - x"];

/// Files and bases named in the config, read and parsed up front.
struct Inputs {
    module: Option<(String, FgModule)>,
    filter: RadicalPowerFilter,
    filter2: RadicalPowerFilter,
    algebra: Option<(String, FinDimAlgebra)>,
}

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io { path: path.into(), reason: e.to_string() })
}

impl Inputs {
    fn load(cfg: &SuiteConfig) -> Result<Inputs> {
        let module = match &cfg.module {
            Some(path) => Some((path.clone(), read(path)?.parse::<FgModule>()?)),
            None => None,
        };
        let base: Poly = cfg.base.as_deref().unwrap_or("x").parse()?;
        let base2 = match &cfg.base2 {
            Some(b) => b.parse()?,
            None => &base * &p("x - 1"),
        };
        let algebra = match &cfg.algebra {
            Some(path) => Some((path.clone(), read(path)?.parse::<FinDimAlgebra>()?)),
            None => None,
        };
        Ok(Inputs {
            module,
            filter: RadicalPowerFilter::new(base)?,
            filter2: RadicalPowerFilter::new(base2)?,
            algebra,
        })
    }
}

fn custom_checks(suite: SuiteId, inputs: &Inputs, n: usize, spec: SampleSpec) -> Option<Vec<Check>> {
    if suite == SuiteId::Symmetric {
        let (path, alg) = inputs.algebra.clone()?;
        let small = spec.with_count(20);
        let mut out = vec![{
            let alg = alg.clone();
            check(&format!("symmetric.envelope-axioms[{path}]"), "R (x) R^op is associative and unital", move || {
                Ok(vec![env_axioms_check(&alg)?])
            })
        }];
        out.extend((0..alg.dim()).map(|u| {
            let alg = alg.clone();
            let name = alg.names()[u].clone();
            check(
                &format!("symmetric.bar-lift[{path}, u = {name}]"),
                "the bar-lift of the inner HD of [u, -] is an HD and matches the bimodule laws",
                move || {
                    let hd = AlgebraHd::inner(&alg, &alg.basis(u), n);
                    Ok(vec![
                        hd.law_check(&alg, n)?,
                        verify_bar_hd(&alg, &hd, n, &small)?,
                        bimodule_correspondence_check(&alg, &hd, n, &small)?,
                    ])
                },
            )
        }));
        return Some(out);
    }
    let (path, module) = inputs.module.clone()?;
    let (f1, f2) = (inputs.filter.clone(), inputs.filter2.clone());
    let label = format!("{path}, {}", f1.base());
    Some(match suite {
        SuiteId::Localize => vec![check(&format!("localize.module[{label}]"), "ker q_M = t(M) and M/t(M) is torsion-free", move || {
            Ok(vec![localization_check(&module, &f1, &spec)?])
        })],
        SuiteId::Extend => vec![check(
            &format!("extend.module[{label}]"),
            "an adapted HD on M extends to M_F, preserves t(M) and commutes with q_M",
            move || {
                let family = ModuleHdFamily::adapted(&module, n)?;
                let loc = module_of_quotients(&module, &f1);
                Ok(vec![
                    extension_check(&family, &loc, n, &spec.with_count(30))?,
                    torsion_preservation_check(&family, &module, &f1, n, &spec.with_count(30))?,
                ])
            },
        )],
        SuiteId::Agreement => vec![check(
            &format!("agreement.module[{label}, {}]", f2.base()),
            "extensions over the two filters agree through q12",
            move || {
                let family = ModuleHdFamily::adapted(&module, n)?;
                Ok(vec![agreement_check(&family, &f1, &f2, &module, n, &spec.with_count(30))?])
            },
        )],
        _ => return None,
    })
}

fn checks_for(suite: SuiteId, cfg: &SuiteConfig, inputs: &Inputs) -> Vec<Check> {
    let n = cfg.order_for(suite);
    let spec = cfg.spec_for(suite);
    if let Some(custom) = custom_checks(suite, inputs, n, spec) {
        return custom;
    }
    match suite {
        SuiteId::Hd => vec![
            check("hd.hasse-integral", "Hasse family satisfies the classical HD law on Z[x]", move || {
                Ok(vec![verify_classical_hd(&HdFamily::hasse(n), n, &spec, Domain::Z)?])
            }),
            check("hd.from-derivation-is-hasse", "the family of d/dx with d_n = d^n/n! equals the Hasse family", move || {
                Ok(vec![families_agree(&HdFamily::from_derivation(p("1"), n), &HdFamily::hasse(n), n, &spec)?])
            }),
        ],
        SuiteId::Ab => {
            let alpha = Automorphism::scaling(int(2)).expect("nonzero");
            let ctx = AbContext::new(alpha.clone(), Automorphism::identity());
            let ctx2 = ctx.clone();
            vec![
                check("ab.printed-expansions", "the general twisted rule reproduces the written-out n = 1, 2 expansions", move || {
                    Ok(vec![printed_formula_check(&spec)?])
                }),
                check("ab.difference-family", "sigma - id is an (sigma, id)-derivation", move || {
                    Ok(vec![verify_ab_hd(&HdFamily::automorphism_difference(alpha), &ctx, 1, &spec)?])
                }),
                adversarial("ab.untwisted-family-rejected", "d/dx is not an (x -> 2x, id)-derivation", move || {
                    Ok(vec![verify_ab_hd(&HdFamily::hasse(1), &ctx2, 1, &spec.with_count(10))?])
                }),
            ]
        }
        SuiteId::Collapse => vec![check(
            "collapse.identity-twists",
            "with identity twists the rule collapses to the classical HD law",
            move || Ok(vec![collapse_check(n, &spec)?]),
        )],
        SuiteId::Filter => BASES
            .iter()
            .map(|b| {
                let f = filter(b);
                check(&format!("filter.gabriel-axioms[{b}]"), "radical-power filters satisfy both Gabriel axioms", move || {
                    Ok(vec![gabriel_axiom_check(&f, &spec)?])
                })
            })
            .collect(),
        SuiteId::Invariance => {
            let mut out: Vec<Check> = BASES
                .iter()
                .map(|b| {
                    let f = filter(b);
                    check(
                        &format!("invariance.witness[{b}]"),
                        "J = (base^(k+n)) maps into (base^k) under every delta_i, i <= n",
                        move || {
                            let h = HdFamily::hasse(n);
                            let mut reports = Vec::new();
                            for k in 1..=n as u32 {
                                for m in 0..=n {
                                    let ideal = f.power(k);
                                    let j = invariance_witness(&f, &h, &ideal, m)?;
                                    reports.push(verify_invariance(&f, &h, &ideal, m, &j, &spec.fork(k as u64 * 16 + m as u64).with_count(8))?);
                                }
                            }
                            Ok(reports)
                        },
                    )
                })
                .collect();
            out.extend(BASES.iter().map(|b| {
                let f = filter(b);
                adversarial(&format!("invariance.undersized[{b}]"), "J = (base) is too small for I = (base) at n = 1", move || {
                    let ideal = f.power(1);
                    Ok(vec![verify_invariance(&f, &HdFamily::hasse(1), &ideal, 1, &f.power(1), &spec.with_count(5))?])
                })
            }));
            out
        }
        SuiteId::Trace => {
            let mut out: Vec<Check> = BASES
                .iter()
                .map(|b| {
                    let f = filter(b);
                    check(&format!("trace.classical[{b}]"), "(alpha^-n delta_n(r) : K) is inside (r : J), identity twists", move || {
                        let h = HdFamily::hasse(n);
                        (1..=n)
                            .map(|m| prop32_trace(&f, &h, &AbContext::identity(), &f.power(2), m, &spec.fork(m as u64)))
                            .collect()
                    })
                })
                .collect();
            out.push(check("trace.order-one-twisted", "the same containment for sigma - id with alpha = sigma: x -> 2x", move || {
                let alpha = Automorphism::scaling(int(2))?;
                let ctx = AbContext::new(alpha.clone(), Automorphism::identity());
                let f = filter("x");
                Ok(vec![prop32_trace(&f, &HdFamily::automorphism_difference(alpha), &ctx, &f.power(3), 1, &spec)?])
            }));
            out
        }
        SuiteId::Localize => ["0", "x^2", "x - 1", "x^3 - x^2"]
            .iter()
            .map(|d| {
                let m = FgModule::cyclic(p(d));
                let label = if *d == "0" { "Q[x]".to_string() } else { format!("Q[x]/({d})") };
                check(&format!("localize.cyclic[{label}]"), "ker q_M = t(M) and M/t(M) is torsion-free", move || {
                    Ok(vec![localization_check(&m, &filter("x"), &spec)?])
                })
            })
            .collect(),
        SuiteId::Extend => {
            let mixed = || FgModule::cyclic(p("x^3 - x^2"));
            let admissible = move || ModuleHdFamily::coordinatewise(HdFamily::from_derivation(p("x^2 - x"), n), 1);
            vec![
                check("extend.laurent", "Hasse extends uniquely to Q[x, 1/x]", move || {
                    let loc = module_of_quotients(&FgModule::free(1), &filter("x"));
                    Ok(vec![extension_check(&ModuleHdFamily::coordinatewise(HdFamily::hasse(n), 1), &loc, n, &spec)?])
                }),
                check("extend.cyclic-mixed", "x(x-1)d/dx extends to the quotients of Q[x]/(x^2(x-1))", move || {
                    let loc = module_of_quotients(&mixed(), &filter("x"));
                    Ok(vec![extension_check(&admissible(), &loc, n, &spec.with_count(30))?])
                }),
                check("extend.torsion-preserved", "an HD on M maps t(M) into t(M)", move || {
                    Ok(vec![torsion_preservation_check(&admissible(), &mixed(), &filter("x"), n, &spec)?])
                }),
                adversarial("extend.ill-defined-rejected", "Hasse is not well-defined on Q[x]/(x^2(x-1))", move || {
                    let family = ModuleHdFamily::coordinatewise(HdFamily::hasse(n), 1);
                    Ok(vec![torsion_preservation_check(&family, &mixed(), &filter("x"), n, &spec.with_count(5))?])
                }),
            ]
        }
        SuiteId::Agreement => vec![
            check("agreement.free", "extensions over filter(x) and filter(x(x-1)) agree through q12", move || {
                let family = ModuleHdFamily::coordinatewise(HdFamily::hasse(n), 1);
                Ok(vec![agreement_check(&family, &filter("x"), &filter("x^2 - x"), &FgModule::free(1), n, &spec)?])
            }),
            check("agreement.cyclic", "the same diagram for Q[x]/(x-1)", move || {
                let family = ModuleHdFamily::coordinatewise(HdFamily::from_derivation(p("x^2 - x"), n), 1);
                let m = FgModule::cyclic(p("x - 1"));
                Ok(vec![agreement_check(&family, &filter("x"), &filter("x^2 - x"), &m, n, &spec.with_count(30))?])
            }),
        ],
        SuiteId::Symmetric => {
            let small = spec.with_count(20);
            vec![
                check("symmetric.envelope-axioms", "R (x) R^op is associative and unital", || {
                    Ok(vec![
                        env_axioms_check(&FinDimAlgebra::upper_triangular())?,
                        env_axioms_check(&FinDimAlgebra::group_algebra_c2())?,
                    ])
                }),
                check("symmetric.bar-lift", "the bar-lift of an HD is an HD on R (x) R^op", move || {
                    let (t, hd) = upper_triangular_inner(n);
                    let c2 = FinDimAlgebra::group_algebra_c2();
                    Ok(vec![
                        hd.law_check(&t, n)?,
                        verify_bar_hd(&t, &hd, n, &small)?,
                        verify_bar_hd(&c2, &AlgebraHd::trivial(&c2, n), n, &small)?,
                        verify_bar_hd(&c2, &AlgebraHd::inner(&c2, &c2.basis(1), n), n, &small)?,
                    ])
                }),
                check("symmetric.bimodule", "an HD on R is a bar-HD on R as a right R (x) R^op-module", move || {
                    let (t, hd) = upper_triangular_inner(n);
                    Ok(vec![bimodule_correspondence_check(&t, &hd, n, &small)?])
                }),
                adversarial("symmetric.adversarial", "delta_1 = id lifts to a non-HD", move || {
                    let t = FinDimAlgebra::upper_triangular();
                    Ok(vec![verify_bar_hd(&t, &AlgebraHd::adversarial(&t), 1, &spec.with_count(0))?])
                }),
            ]
        }
        SuiteId::Counterexample => vec![
            check("counterexample.not-hereditary", "T(I) = (x^2) differs from I ∩ T(R) = (x)", || {
                let mut r = hereditary_violation_check();
                let iterates: Vec<String> = torsion_iterates(3).iter().map(ToString::to_string).collect();
                r.note(format!("iterates of T from R: {}", iterates.join(", ")));
                Ok(vec![r])
            }),
            check("counterexample.not-differential", "d/dx sends x in T(R) to 1 outside T(R)", move || {
                Ok(vec![derivative_escape_check(&spec)])
            }),
        ],
    }
}

/// Runs the selected suites. Fails only on an invalid config or unreadable
/// input files; a check that errors is recorded as a failed entry with the
/// error as witness.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let inputs = Inputs::load(cfg)?;
    let mut suites = cfg.suites.clone();
    suites.sort();
    suites.dedup();
    let mut per_suite: Vec<(SuiteId, Vec<Entry>)> = std::thread::scope(|scope| {
        let handles: Vec<_> = suites
            .iter()
            .map(|&id| {
                let checks = checks_for(id, cfg, &inputs);
                let timings = cfg.timings;
                (id, scope.spawn(move || checks.into_iter().map(|c| run_check(c, timings)).collect::<Vec<_>>()))
            })
            .collect();
        handles.into_iter().map(|(id, h)| (id, h.join().expect("suite thread panicked"))).collect()
    });
    per_suite.sort_by_key(|(id, _)| *id);
    let entries: Vec<Entry> = per_suite.into_iter().flat_map(|(_, e)| e).collect();
    let unexpected = entries.iter().filter(|e| !e.as_expected()).count();
    Ok(SuiteReport { config: cfg.clone(), total: entries.len(), unexpected, ok: unexpected == 0, entries })
}
