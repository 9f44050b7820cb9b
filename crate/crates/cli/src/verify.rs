use std::time::Instant;

use anyhow::Result;
use clap::Args;
use palred::pipeline::CheckOutcome;
use palred::verify::{anchor, run_suite, Status, SuiteOptions, SuiteReport, LEMMA_IDS};
use serde_json::json;

use crate::output::{Envelope, Format};
use crate::Outcome;

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite id, one of L6 P8 L10 L12 P14 C15 L17 P18 P19 L20 L21 P22 P23 T24 T4.
    id: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Randomized cases; each suite has its own default.
    #[arg(long)]
    cases: Option<usize>,
    /// Longest word of the exhaustive sweep; 0 disables it.
    #[arg(long)]
    exhaustive_len: Option<usize>,
    /// Print the largest observed PL-to-bound ratio.
    #[arg(long)]
    report_max_ratio: bool,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

pub fn run(args: VerifyArgs) -> Result<Outcome> {
    let id = args.id.to_uppercase();
    if anchor(&id).is_none() {
        anyhow::bail!("unknown suite {:?}; available: {}", args.id, LEMMA_IDS.join(" "));
    }
    let opts = SuiteOptions { seed: args.seed, cases: args.cases, exhaustive_len: args.exhaustive_len };
    let started = Instant::now();
    let report = run_suite(&id, &opts)?;
    let elapsed = started.elapsed().as_secs_f64();
    let outcome = if report.status == Status::Fail { Outcome::Fail } else { Outcome::Pass };
    match args.format {
        Format::Json => {
            let input = json!({
                "command": "verify",
                "id": id,
                "seed": args.seed,
                "cases": args.cases,
                "exhaustive_len": args.exhaustive_len,
            });
            let mut env = Envelope::new("verify", &input, &report);
            env.checks.push(check_of(&report));
            env.timings.insert("total_ms".into(), elapsed * 1e3);
            env.print();
        }
        Format::Table | Format::Csv => print_text(&report, args.report_max_ratio, elapsed),
    }
    Ok(outcome)
}

fn check_of(r: &SuiteReport) -> CheckOutcome {
    CheckOutcome {
        id: r.id.clone(),
        anchor: r.anchor.clone(),
        status: r.status,
        cases: r.cases + r.exhaustive_cases,
        counterexample: r.counterexample.clone(),
    }
}

fn print_text(r: &SuiteReport, with_ratio: bool, elapsed: f64) {
    let status = match r.status {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Skipped => "skipped",
    };
    println!(
        "{} {status}: {}/{} randomized, {} exhaustive, {} checks in {elapsed:.2}s",
        r.id,
        if r.status == Status::Pass { r.cases } else { r.cases.saturating_sub(1) },
        r.cases,
        r.exhaustive_cases,
        r.checks
    );
    println!("  {}", r.anchor);
    if with_ratio {
        match r.max_ratio {
            Some(x) => println!("  max ratio {x:.6}"),
            None => println!("  max ratio n/a"),
        }
    }
    for n in &r.notes {
        println!("  {n}");
    }
    if let Some(ce) = &r.counterexample {
        println!("  counterexample: {}", ce.detail);
        println!("    word {} u {} positions {:?}", ce.word, ce.u, ce.positions);
        if let (Some(seed), Some(case)) = (ce.seed, ce.case) {
            println!("    replay with --seed {seed} (case {case})");
        }
    }
}
