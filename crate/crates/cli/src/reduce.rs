use std::path::PathBuf;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use palred::pipeline::{run_pipeline, PipelineConfig, PipelineReport};
use palred::reduce::Strategy;
use palred::verify::Status;
use palred::QExponent;
use serde::Serialize;
use serde_json::json;

use crate::input;
use crate::output::{Envelope, Format};
use crate::Outcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum PolicyFlag {
    /// Pick the first candidate whose reduced prefix shows no short period.
    Auto,
    CanonicalMin,
    ParitySplit,
    /// Use the table given by --table.
    Table,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    /// JSON generator spec of the source word.
    #[arg(long)]
    spec: PathBuf,
    /// Base word of the runs to reduce.
    #[arg(short = 'u', long = "u")]
    base: String,
    /// Length of the source prefix.
    #[arg(long, env = "PALRED_HORIZON", default_value_t = input::DEFAULT_HORIZON)]
    horizon: usize,
    #[arg(long, value_enum, default_value = "auto")]
    policy: PolicyFlag,
    /// JSON list of `[q, r]` exponent pairs, each as `{"num": .., "den": ..}`.
    #[arg(long, required_if_eq("policy", "table"))]
    table: Option<PathBuf>,
    /// Longest source factor compared for factor preservation.
    #[arg(long, default_value_t = 64)]
    psi_cap: usize,
    /// Random segments checked against the cubic bound.
    #[arg(long, default_value_t = 50)]
    spot_checks: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Debug, Serialize)]
struct ReduceResult<'a> {
    reduced: String,
    report: &'a PipelineReport,
}

pub fn run(args: ReduceArgs) -> Result<Outcome> {
    let started = Instant::now();
    let spec = input::read_spec(&args.spec)?;
    let source = input::build_source(&spec)?;
    let u = source.alphabet().parse(&args.base)?;
    let strategy = match args.policy {
        PolicyFlag::Auto => None,
        PolicyFlag::CanonicalMin => Some(Strategy::CanonicalMin),
        PolicyFlag::ParitySplit => Some(Strategy::ParitySplit),
        PolicyFlag::Table => {
            let path = args.table.as_ref().expect("clap requires --table");
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            let table: Vec<(QExponent, QExponent)> = serde_json::from_str(&text)
                .with_context(|| format!("{} is not an exponent table", path.display()))?;
            Some(Strategy::ExplicitTable(table))
        }
    };
    let cfg = PipelineConfig {
        horizon: args.horizon,
        strategy,
        psi_cap: args.psi_cap,
        spot_checks: args.spot_checks,
        seed: args.seed,
        ..PipelineConfig::new(u)
    };
    let input = json!({
        "command": "reduce",
        "spec": spec,
        "u": args.base,
        "horizon": args.horizon,
        "policy": args.policy,
        "strategy": cfg.strategy,
        "psi_cap": args.psi_cap,
        "spot_checks": args.spot_checks,
        "seed": args.seed,
    });
    let out = run_pipeline(&source, &cfg)?;
    let report = &out.report;
    let reduced = source.render(&out.reduced);
    let outcome = if report.passed() { Outcome::Pass } else { Outcome::Fail };
    match args.format {
        Format::Json => {
            let mut env = Envelope::new("reduce", &input, ReduceResult { reduced, report });
            env.checks = report.checks.clone();
            env.timings.insert("total_ms".into(), started.elapsed().as_secs_f64() * 1e3);
            env.print();
        }
        Format::Table | Format::Csv => {
            println!("{reduced}");
            eprintln!(
                "policy {} | stripped {} | runs {} | certified {} | maxPL {} -> {} (3k^3 = {})",
                report.policy_name,
                report.stripped,
                report.runs,
                report.certified_len,
                report.maxpl_source,
                report.maxpl_reduced_observed,
                report.bound_3k3
            );
            if let Some(w) = &report.warning {
                eprintln!("warning: {w}");
            }
            for c in &report.checks {
                let status = match c.status {
                    Status::Pass => "pass",
                    Status::Fail => "FAIL",
                    Status::Skipped => "skipped",
                };
                eprintln!("{:<10} {status:<7} cases={:<8} {}", c.id, c.cases, c.anchor);
                if let Some(ce) = &c.counterexample {
                    eprintln!("    {} at {:?}", ce.detail, ce.positions);
                }
            }
        }
    }
    Ok(outcome)
}
