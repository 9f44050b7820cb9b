use std::time::Instant;

use anyhow::{bail, Result};
use clap::Args;
use palred::fixtures::{case_rng, random_word};
use palred::pal_length::{
    online_memory_estimate, oracle_memory_estimate, pl_oracle_profile, pl_profile_online,
};

use crate::Outcome;

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Word lengths, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "1000,10000,100000,1000000")]
    sizes: Vec<usize>,
    /// Longest word given to the oracle.
    #[arg(long, default_value_t = 20_000)]
    oracle_cap: usize,
    /// Alphabet size of the random words.
    #[arg(long, default_value_t = 2)]
    sigma: u8,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

pub fn run(args: BenchArgs) -> Result<Outcome> {
    if args.sigma == 0 || args.sigma > 36 {
        bail!("alphabet size must be in 1..=36");
    }
    println!("size,engine,wall_ms,peak_mem_bytes,ratio");
    for (k, &n) in args.sizes.iter().enumerate() {
        let w = random_word(&mut case_rng(args.seed, k as u64), n, args.sigma);
        let t = Instant::now();
        let online = pl_profile_online(w.letters());
        let online_ms = t.elapsed().as_secs_f64() * 1e3;
        println!("{n},online,{online_ms:.3},{},", online_memory_estimate(n));
        if n <= args.oracle_cap {
            let t = Instant::now();
            let oracle = pl_oracle_profile(w.letters());
            let oracle_ms = t.elapsed().as_secs_f64() * 1e3;
            if oracle != online {
                bail!("engines disagree on the random word of length {n}");
            }
            let ratio = oracle_ms / online_ms.max(1e-9);
            println!("{n},oracle,{oracle_ms:.3},{},{ratio:.3}", oracle_memory_estimate(n));
        }
    }
    Ok(Outcome::Pass)
}
