//! `hdtorsion`: runs the verification suites and writes one report.
//!
//! Exit status: 0 when every check ends as expected (adversarial checks must
//! fail), 1 when some check does not, 2 on bad arguments, config or inputs.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hdtorsion::suite::{run_suite, ReportFormat, SuiteConfig, SuiteId};

#[derive(Parser, Debug)]
#[command(name = "hdtorsion", version, about = "Exact checks for higher derivations, torsion theories and modules of quotients")]
struct Cli {
    /// `key = value` config file; flags override it.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Degree bound for sampled polynomials.
    #[arg(long, global = true)]
    degree: Option<usize>,
    /// Coefficient bound for sampled polynomials.
    #[arg(long, global = true)]
    coeff: Option<i64>,
    /// Order bound N, overriding each suite's default.
    #[arg(long, global = true)]
    order: Option<usize>,
    /// Sample count, overriding each suite's default.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Add per-check wall-clock times (makes reports differ between runs).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Default)]
struct ModuleArgs {
    /// Presentation matrix file: one relation per line, entries separated by `;`.
    #[arg(long, value_name = "FILE")]
    module: Option<PathBuf>,
    /// Filter base polynomial.
    #[arg(long, value_name = "POLY")]
    base: Option<String>,
    /// Base of the larger filter (agreement only).
    #[arg(long, value_name = "POLY")]
    base2: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classical HD law for the Hasse family.
    VerifyHd,
    /// Twisted (alpha, beta) Leibniz rule.
    VerifyAb,
    /// Collapse of the twisted rule to the classical one.
    Collapse,
    /// Gabriel axioms for radical-power filters.
    FilterAxioms,
    /// Invariance witnesses J = (base^(k+n)).
    Invariance,
    /// Colon-ideal containment trace.
    Prop32Trace,
    /// Modules of quotients and their torsion.
    Localize(ModuleArgs),
    /// Extension of HDs to modules of quotients.
    Extend(ModuleArgs),
    /// Agreement of extensions across nested filters.
    Agreement(ModuleArgs),
    /// Bar-lift of HDs to the enveloping algebra.
    Symmetric {
        /// Structure-constant file (`dimension N`, then `i j k value` lines).
        #[arg(long, value_name = "FILE")]
        algebra: Option<PathBuf>,
    },
    /// The non-hereditary torsion theory over Z[x].
    Counterexample,
    /// Every suite.
    All,
}

fn path_string(p: &std::path::Path) -> String {
    p.to_string_lossy().into_owned()
}

fn build_config(cli: &Cli) -> Result<SuiteConfig> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
            SuiteConfig::from_config_text(&text).with_context(|| format!("config {}", path.display()))?
        }
        None => SuiteConfig::default(),
    };
    if let Some(v) = cli.seed {
        cfg.seed = v;
    }
    if let Some(v) = cli.degree {
        cfg.degree = v;
    }
    if let Some(v) = cli.coeff {
        cfg.coeff = v;
    }
    if cli.order.is_some() {
        cfg.order = cli.order;
    }
    if cli.samples.is_some() {
        cfg.samples = cli.samples;
    }
    if let Some(out) = &cli.out {
        cfg.out = Some(path_string(out));
    }
    if let Some(f) = cli.format {
        cfg.format = match f {
            Format::Json => ReportFormat::Json,
            Format::Text => ReportFormat::Text,
        };
    }
    cfg.timings |= cli.timings;

    let module_args = |cfg: &mut SuiteConfig, a: &ModuleArgs| {
        if let Some(m) = &a.module {
            cfg.module = Some(path_string(m));
        }
        if a.base.is_some() {
            cfg.base = a.base.clone();
        }
        if a.base2.is_some() {
            cfg.base2 = a.base2.clone();
        }
    };
    let only = |id| vec![id];
    let suites = match &cli.command {
        Command::All => None,
        Command::VerifyHd => Some(only(SuiteId::Hd)),
        Command::VerifyAb => Some(only(SuiteId::Ab)),
        Command::Collapse => Some(only(SuiteId::Collapse)),
        Command::FilterAxioms => Some(only(SuiteId::Filter)),
        Command::Invariance => Some(only(SuiteId::Invariance)),
        Command::Prop32Trace => Some(only(SuiteId::Trace)),
        Command::Localize(a) => {
            module_args(&mut cfg, a);
            Some(only(SuiteId::Localize))
        }
        Command::Extend(a) => {
            module_args(&mut cfg, a);
            Some(only(SuiteId::Extend))
        }
        Command::Agreement(a) => {
            module_args(&mut cfg, a);
            Some(only(SuiteId::Agreement))
        }
        Command::Symmetric { algebra } => {
            if let Some(a) = algebra {
                cfg.algebra = Some(path_string(a));
            }
            Some(only(SuiteId::Symmetric))
        }
        Command::Counterexample => Some(only(SuiteId::Counterexample)),
    };
    // `all` keeps a config file's suite selection; otherwise every suite.
    if let Some(s) = suites {
        cfg.suites = s;
    } else if cli.config.is_none() {
        cfg.suites = SuiteId::ALL.to_vec();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<bool> {
    let cfg = build_config(cli)?;
    let report = run_suite(&cfg)?;
    let text = report.render(cfg.format);
    match &cfg.out {
        Some(path) => std::fs::write(path, &text).with_context(|| format!("writing report {path}"))?,
        None => print!("{text}"),
    }
    if cfg.out.is_some() || cfg.format == ReportFormat::Json {
        eprintln!("{} checks, {} unexpected", report.total, report.unexpected);
    }
    Ok(report.ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
