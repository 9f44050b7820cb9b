use std::path::PathBuf;
use std::time::Instant;

use anyhow::Result;
use clap::Args;
use palred::pal_length::{
    max_pl_with, pl_oracle_profile, pl_profile_online, ppl_ratio_series, MaxPlMode, Normalizer,
};
use palred::Word;
use serde::Serialize;
use serde_json::json;

use crate::input;
use crate::output::{Envelope, Format};
use crate::Outcome;

#[derive(Debug, Args)]
pub struct PlArgs {
    /// Letters of the word; read from stdin when neither this nor --spec is given.
    #[arg(long, conflicts_with = "spec")]
    word: Option<String>,
    /// JSON generator spec of an infinite word.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Symbols of the alphabet, in code order.
    #[arg(long)]
    alphabet: Option<String>,
    /// Prefix length taken from --spec, or truncation of --word.
    #[arg(short = 'n', long)]
    n: Option<usize>,
    /// Print PL of every prefix.
    #[arg(long, conflicts_with_all = ["max", "ratio"])]
    profile: bool,
    /// Print the maximum PL over all factors.
    #[arg(long, conflicts_with = "ratio")]
    max: bool,
    /// Print PL of every prefix divided by ln n.
    #[arg(long)]
    ratio: bool,
    /// Use the dynamic-programming oracle instead of the online engine.
    #[arg(long)]
    oracle: bool,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Debug, Serialize)]
struct Row {
    n: usize,
    pl: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    ratio: Option<f64>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
enum PlResult {
    Pl { length: usize, pl: u32 },
    MaxPl { length: usize, max_pl: u32 },
    Profile { rows: Vec<Row> },
}

fn profile(w: &Word, oracle: bool) -> Vec<u32> {
    let p = if oracle { pl_oracle_profile(w.letters()) } else { pl_profile_online(w.letters()) };
    p.values
}

pub fn run(args: PlArgs) -> Result<Outcome> {
    let started = Instant::now();
    let alphabet = input::alphabet(args.alphabet.as_deref())?;
    let (word, source_json) = match &args.spec {
        Some(path) => {
            let spec = input::read_spec(path)?;
            let n = args.n.unwrap_or(input::DEFAULT_HORIZON);
            let src = input::build_source(&spec)?;
            (src.prefix(n), serde_json::to_value(&spec)?)
        }
        None => {
            let mut w = input::read_word(args.word.as_deref(), &alphabet)?;
            if let Some(n) = args.n {
                w = w.prefix(n.min(w.len()));
            }
            let shown = json!(alphabet.render(w.letters()));
            (w, shown)
        }
    };
    let result = if args.max {
        let mode = if args.oracle { MaxPlMode::OraclePerFactor } else { MaxPlMode::ProfilePerSuffix };
        PlResult::MaxPl { length: word.len(), max_pl: max_pl_with(word.letters(), mode) }
    } else if args.ratio {
        let rows = match (&args.spec, args.oracle) {
            (Some(path), false) => {
                let src = input::build_source(&input::read_spec(path)?)?;
                ppl_ratio_series(&src, word.len(), &Normalizer::Ln)
                    .into_iter()
                    .map(|r| Row { n: r.n, pl: r.ppl, ratio: r.ratio })
                    .collect()
            }
            _ => profile(&word, args.oracle)
                .into_iter()
                .enumerate()
                .skip(1)
                .map(|(n, pl)| {
                    let d = Normalizer::Ln.eval(n);
                    Row { n, pl, ratio: (d > 0.0).then(|| pl as f64 / d) }
                })
                .collect(),
        };
        PlResult::Profile { rows }
    } else if args.profile {
        let rows = profile(&word, args.oracle)
            .into_iter()
            .enumerate()
            .skip(1)
            .map(|(n, pl)| Row { n, pl, ratio: None })
            .collect();
        PlResult::Profile { rows }
    } else {
        PlResult::Pl { length: word.len(), pl: profile(&word, args.oracle).last().copied().unwrap_or(0) }
    };

    let input = json!({
        "command": "pl",
        "source": source_json,
        "n": word.len(),
        "profile": args.profile,
        "max": args.max,
        "ratio": args.ratio,
        "oracle": args.oracle,
    });
    match args.format {
        Format::Json => {
            let mut env = Envelope::new("pl", &input, &result);
            env.timings.insert("total_ms".into(), started.elapsed().as_secs_f64() * 1e3);
            env.print();
        }
        Format::Csv => print_rows(&result, ','),
        Format::Table => print_rows(&result, '\t'),
    }
    Ok(Outcome::Pass)
}

fn print_rows(result: &PlResult, sep: char) {
    match result {
        PlResult::Pl { pl, .. } => println!("{pl}"),
        PlResult::MaxPl { max_pl, .. } => println!("{max_pl}"),
        PlResult::Profile { rows } => {
            let with_ratio = rows.iter().any(|r| r.ratio.is_some());
            if with_ratio {
                println!("n{sep}pl{sep}ratio");
            } else {
                println!("n{sep}pl");
            }
            for r in rows {
                match (with_ratio, r.ratio) {
                    (false, _) => println!("{}{sep}{}", r.n, r.pl),
                    (true, Some(x)) => println!("{}{sep}{}{sep}{x:.6}", r.n, r.pl),
                    (true, None) => println!("{}{sep}{}{sep}", r.n, r.pl),
                }
            }
        }
    }
}
