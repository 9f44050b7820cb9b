//! Property suites, one per statement, with seeded randomized cases and an
//! exhaustive small-word sweep where one is affordable.
//!
//! Cases are independent and run on the rayon pool. A failing case carries
//! the run seed and its case number; replaying the suite with the same seed
//! regenerates the same input.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::fixtures::{
    all_primitive, aperiodic_pumped_fixture, nth_word, case_rng, palindromic_fixture,
    palindromic_intervals, pumped_fixture, random_primitive, random_word, PumpedFixture, A,
};
use crate::error::{Error, Result};
use crate::pal_length::{pl_oracle, pl_oracle_profile, FactorPlTable};
use crate::pipeline::{run_pipeline, PipelineConfig};
use crate::reduce::{
    certified_reduced_len, factorize, phi_apply, power_bound_check, refactorize_check, Factorization, PositionMaps,
    Reduction, ReductionPolicy, Strategy,
};
use crate::reference::{rpo_dom_brute, run_border_brute, runs_inside, std_pal_brute};
use crate::runs::{check_run_separation, find_runs, mirror_run, rpo_dom_mask, GammaConfig};
use crate::std_pal::{
    all_std_pals, centered_from_run, centered_std_pals, image_is_palindrome, is_hat, is_std_pal,
    max_csp, reduced_pl_bound_check, std_pal_factorization, FactorizationRoute, RunContext,
};
use crate::word::{q_power, reverse, Alphabet, Interval, QExponent, Word};

pub const LEMMA_IDS: [&str; 15] = [
    "L6", "P8", "L10", "L12", "P14", "C15", "L17", "P18", "P19", "L20", "L21", "P22", "P23",
    "T24", "T4",
];

pub fn anchor(id: &str) -> Option<&'static str> {
    Some(match id {
        "L6" => "distinct runs are separated by more than |u| + 1 positions",
        "P8" => "the mirror image of an interior run of a palindrome is a run",
        "L10" => "reducing q-powers commutes with reversal",
        "L12" => "a reduced word holds no (h+2)-power of a rotation of u or u^R",
        "P14" => "factorizing the reduced word gives the same gaps and bases with reduced exponents",
        "C15" => "rpo is an increasing bijection between run-free positions",
        "L17" => "palindromic length is subadditive",
        "P18" => "PL of a reduced factor is at most (runs + 1) * maxPL of its preimage",
        "P19" => "the reduced image of a standard palindrome is a palindrome",
        "L20" => "an interior run of a palindrome yields a centered standard palindrome",
        "L21" => "a palindrome without centered standard palindromes holds at most 2 runs",
        "P22" => "a flank between a palindrome and its longest centered standard palindrome holds at most 1 run",
        "P23" => "every run-free segment has a standard palindromic factorization",
        "T24" => "PL of a reduced factor is at most 3k^3 - 3k^2",
        "T4" => "end-to-end reduction keeps Psi, drops u^5 and bounds maxPL by 3k^3",
        _ => return None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub word: String,
    pub u: String,
    pub positions: Vec<usize>,
    pub detail: String,
    /// Randomized case number, absent for exhaustive cases.
    pub case: Option<u64>,
    pub seed: Option<u64>,
}

impl Counterexample {
    pub fn new(w: &Word, u: &Word, positions: Vec<usize>, detail: impl Into<String>) -> Self {
        let a = Alphabet::default();
        Counterexample {
            word: a.render(w.letters()),
            u: a.render(u.letters()),
            positions,
            detail: detail.into(),
            case: None,
            seed: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Randomized cases; `None` uses the suite default.
    pub cases: Option<usize>,
    /// Longest word in the exhaustive sweep; `None` uses the suite default,
    /// `Some(0)` disables the sweep.
    pub exhaustive_len: Option<usize>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { seed: 1, cases: None, exhaustive_len: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub cases: usize,
    pub exhaustive_cases: usize,
    /// Individual assertions evaluated across all cases.
    pub checks: u64,
    pub counterexample: Option<Counterexample>,
    pub max_ratio: Option<f64>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, Default)]
struct Tally {
    checks: u64,
    max_ratio: Option<f64>,
    routes: [u64; 3],
}

impl Tally {
    fn checks(n: u64) -> Self {
        Tally { checks: n, ..Tally::default() }
    }

    fn merge(mut self, o: Tally) -> Tally {
        self.checks += o.checks;
        self.max_ratio = match (self.max_ratio, o.max_ratio) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        for k in 0..3 {
            self.routes[k] += o.routes[k];
        }
        self
    }
}

type CaseResult = std::result::Result<Tally, Box<Counterexample>>;

struct Outcome {
    tally: Tally,
    failure: Option<Counterexample>,
}

fn collect<I>(results: I) -> Outcome
where
    I: ParallelIterator<Item = (u64, CaseResult)>,
{
    let (tally, failure) = results
        .map(|(id, r)| match r {
            Ok(t) => (t, None),
            Err(ce) => (Tally::default(), Some((id, *ce))),
        })
        .reduce(
            || (Tally::default(), None),
            |(ta, fa), (tb, fb)| {
                let f = match (fa, fb) {
                    (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
                    (a, b) => a.or(b),
                };
                (ta.merge(tb), f)
            },
        );
    Outcome { tally, failure: failure.map(|f| f.1) }
}

fn randomized<F>(seed: u64, cases: usize, f: F) -> Outcome
where
    F: Fn(&mut rand_chacha::ChaCha8Rng) -> CaseResult + Sync,
{
    collect((0..cases as u64).into_par_iter().map(|c| {
        let r = f(&mut case_rng(seed, c)).map_err(|mut ce| {
            ce.case = Some(c);
            ce.seed = Some(seed);
            ce
        });
        (c, r)
    }))
}

fn fail(w: &Word, u: &Word, positions: Vec<usize>, detail: impl Into<String>) -> Box<Counterexample> {
    Box::new(Counterexample::new(w, u, positions, detail))
}

fn err_to_ce(w: &Word, u: &Word, e: Error) -> Box<Counterexample> {
    fail(w, u, vec![], format!("unexpected error: {e}"))
}

fn policies() -> Vec<ReductionPolicy> {
    vec![
        ReductionPolicy::new(3, 3, Strategy::CanonicalMin).unwrap(),
        ReductionPolicy::new(3, 3, Strategy::ParitySplit).unwrap(),
    ]
}

/// A random table policy that moves one exponent class of `f` to another
/// admissible value.
fn random_table_policy<R: rand::Rng>(rng: &mut R, f: &Factorization) -> ReductionPolicy {
    let mut table = Vec::new();
    for p in &f.pieces {
        if rng.gen_bool(0.5) && !table.iter().any(|(q, _): &(QExponent, QExponent)| q.same_value(&p.d)) {
            let least = phi_apply(&ReductionPolicy::canonical(3, 3).unwrap(), p.d).unwrap();
            let bump = QExponent { num: least.num + least.den, den: least.den };
            if bump.num < 3 * bump.den && bump.num <= p.d.num {
                table.push((p.d, bump));
            }
        }
    }
    ReductionPolicy::new(3, 3, Strategy::ExplicitTable(table)).unwrap()
}

fn finish(id: &str, random_cases: usize, ex_items: usize, random: Outcome, ex: Outcome) -> SuiteReport {
    let tally = random.tally.merge(ex.tally);
    let failure = ex.failure.or(random.failure);
    let mut notes = Vec::new();
    if tally.routes.iter().any(|&r| r > 0) {
        notes.push(format!(
            "routes: construction {}, minimized {}, search {}",
            tally.routes[0], tally.routes[1], tally.routes[2]
        ));
    }
    SuiteReport {
        id: id.to_string(),
        anchor: anchor(id).unwrap_or_default().to_string(),
        status: if failure.is_some() { Status::Fail } else { Status::Pass },
        cases: random_cases,
        exhaustive_cases: ex_items,
        checks: tally.checks,
        counterexample: failure,
        max_ratio: tally.max_ratio,
        notes,
    }
}

fn empty() -> Outcome {
    Outcome { tally: Tally::default(), failure: None }
}

/// Run the suite registered under `id`.
pub fn run_suite(id: &str, opts: &SuiteOptions) -> Result<SuiteReport> {
    let cases = |default: usize| opts.cases.unwrap_or(default);
    let ex_len = |default: usize| opts.exhaustive_len.unwrap_or(default);
    let seed = opts.seed;
    let report = match id {
        "L6" => {
            let n = cases(10_000);
            let r = randomized(seed, n, |rng| {
                use rand::Rng;
                let (w, u) = if rng.gen_bool(0.5) {
                    let len = rng.gen_range(1..=24);
                    (random_word(rng, len, 3), random_primitive(rng, 3, 3))
                } else {
                    let len = rng.gen_range(8..=30);
                    let f = pumped_fixture(rng, 8, len);
                    (f.prefix, f.u)
                };
                check_runs_against_clauses(&w, &u, rng.gen_range(3..=4))
            });
            let (e, pairs) = sweep_outcome(id, ex_len(8))?;
            finish(id, n, pairs, r, e)
        }
        "P8" => {
            let n = cases(1000);
            let r = randomized(seed, n, |rng| {
                let f = palindromic_fixture(rng);
                check_mirror_transfer(&f.word, &f.u, &palindromic_intervals(&f.word, f.word.len()))
            });
            let (e, pairs) = sweep_outcome(id, ex_len(10))?;
            finish(id, n, pairs, r, e)
        }
        "L10" => {
            let n = cases(10_000);
            let r = randomized(seed, n, check_reversal_case);
            finish(id, n, 0, r, empty())
        }
        "L12" => {
            let n = cases(1000);
            let r = randomized(seed, n, |rng| {
                use rand::Rng;
                let len = rng.gen_range(60..=300);
                check_power_bound(&pumped_fixture(rng, 12, len), rng)
            });
            finish(id, n, 0, r, empty())
        }
        "P14" => {
            let n = cases(1000);
            let r = randomized(seed, n, |rng| {
                use rand::Rng;
                let len = rng.gen_range(40..=300);
                let fx = pumped_fixture(rng, 12, len);
                let f = factorize(&fx.prefix, &fx.u, GammaConfig::default())
                    .map_err(|e| err_to_ce(&fx.prefix, &fx.u, e))?;
                let mut ps = policies();
                ps.push(random_table_policy(rng, &f));
                for p in &ps {
                    let rep = refactorize_check(&fx.prefix, &fx.u, GammaConfig::default(), p)
                        .map_err(|e| err_to_ce(&fx.prefix, &fx.u, e))?;
                    if !rep.ok {
                        return Err(fail(&fx.prefix, &fx.u, vec![], format!(
                            "{}: {}",
                            p.name(),
                            rep.diagnostic.unwrap_or_default()
                        )));
                    }
                }
                Ok(Tally::checks(ps.len() as u64))
            });
            finish(id, n, 0, r, empty())
        }
        "C15" => {
            let n = cases(1000);
            let r = randomized(seed, n, |rng| {
                use rand::Rng;
                let len = rng.gen_range(40..=300);
                check_rpo_bijection(&pumped_fixture(rng, 12, len), rng)
            });
            finish(id, n, 0, r, empty())
        }
        "L17" => {
            let n = cases(2000);
            let r = randomized(seed, n, |rng| {
                use rand::Rng;
                let sigma = rng.gen_range(2..=4);
                let l1 = rng.gen_range(1..=40);
                let l2 = rng.gen_range(1..=40);
                let t1 = random_word(rng, l1, sigma);
                let t2 = random_word(rng, l2, sigma);
                let joint = pl_oracle(t1.concat(t2.letters()).letters());
                let (a, b) = (pl_oracle(t1.letters()), pl_oracle(t2.letters()));
                if joint > a + b {
                    return Err(fail(&t1.concat(t2.letters()), &Word::empty(), vec![l1], format!(
                        "PL = {joint} > {a} + {b}"
                    )));
                }
                Ok(Tally::checks(1))
            });
            let (e, pairs) = sweep_outcome(id, ex_len(12))?;
            finish(id, n, pairs, r, e)
        }
        "P18" | "T24" => {
            let n = cases(if id == "T24" { 300 } else { 500 });
            let cubic = id == "T24";
            let r = randomized(seed, n, |rng| {
                use rand::Rng;
                let len = rng.gen_range(60..=240);
                let fx = pumped_fixture(rng, 12, len);
                check_segment_bounds(&fx.prefix, &fx.u, rng, cubic)
            });
            finish(id, n, 0, r, empty())
        }
        "P19" => {
            let n = cases(1000);
            let r = randomized(seed, n, |rng| {
                use rand::Rng;
                if rng.gen_bool(0.5) {
                    let f = palindromic_fixture(rng);
                    check_std_pal_images(&f.word, &f.u)
                } else {
                    let len = rng.gen_range(30..=120);
                    let f = pumped_fixture(rng, 8, len);
                    check_std_pal_images(&f.prefix, &f.u)
                }
            });
            let (e, pairs) = sweep_outcome(id, ex_len(9))?;
            finish(id, n, pairs, r, e)
        }
        "L20" | "L21" | "P22" => {
            let n = cases(1000);
            let which = id.to_string();
            let r = randomized(seed, n, |rng| {
                use rand::Rng;
                if rng.gen_bool(0.7) {
                    let f = palindromic_fixture(rng);
                    check_palindrome_structure(&f.word, &f.u, &which)
                } else {
                    let len = rng.gen_range(30..=80);
                    let f = pumped_fixture(rng, 8, len);
                    check_palindrome_structure(&f.prefix, &f.u, &which)
                }
            });
            let (e, pairs) = sweep_outcome(id, ex_len(9))?;
            finish(id, n, pairs, r, e)
        }
        "P23" => {
            let n = cases(500);
            let r = randomized(seed, n, |rng| {
                use rand::Rng;
                if rng.gen_bool(0.5) {
                    let f = palindromic_fixture(rng);
                    check_std_factorizations(&f.word, &f.u)
                } else {
                    let len = rng.gen_range(40..=100);
                    let f = pumped_fixture(rng, 10, len);
                    check_std_factorizations(&f.prefix, &f.u)
                }
            });
            finish(id, n, 0, r, empty())
        }
        "T4" => {
            let n = cases(40);
            let r = randomized(seed, n, |rng| {
                use rand::Rng;
                let len = rng.gen_range(300..=700);
                let fx = aperiodic_pumped_fixture(rng, len);
                let cfg = PipelineConfig {
                    horizon: len,
                    spot_checks: 20,
                    seed: rng.gen(),
                    ..PipelineConfig::new(fx.u.clone())
                };
                let out = run_pipeline(&fx.source, &cfg).map_err(|e| err_to_ce(&fx.prefix, &fx.u, e))?;
                if let Some(c) = out.report.checks.iter().find(|c| c.status == Status::Fail) {
                    return Err(fail(&fx.prefix, &fx.u, vec![], format!(
                        "{} failed: {}",
                        c.id,
                        c.counterexample.as_ref().map(|x| x.detail.clone()).unwrap_or_default()
                    )));
                }
                Ok(Tally::checks(out.report.checks.len() as u64))
            });
            finish(id, n, 0, r, empty())
        }
        other => {
            return Err(Error::InvalidSource(format!(
                "unknown lemma id {other}; available: {}",
                LEMMA_IDS.join(", ")
            )))
        }
    };
    Ok(report)
}

/// Alphabet size and longest base of the exhaustive sweep of a suite, if it
/// has one.
pub fn sweep_shape(id: &str) -> Option<(u8, usize)> {
    match id {
        "L6" => Some((3, 3)),
        "P8" => Some((2, 2)),
        "L17" => Some((2, 0)),
        "P19" | "L20" | "L21" | "P22" => Some((3, 2)),
        _ => None,
    }
}

/// Primitive bases up to `max_len` in first-occurrence normal form (`a`,
/// `ab`, `aab`, `aba`, `abb`, `abc`, …). Every check is invariant under
/// renaming letters, so sweeping all words against these bases covers every
/// base over the alphabet.
pub fn normal_bases(max_len: usize, sigma: u8) -> Vec<Word> {
    if max_len == 0 {
        return vec![Word::empty()];
    }
    all_primitive(max_len, sigma)
        .into_iter()
        .filter(|u| {
            let mut next = A;
            u.letters().iter().all(|&c| {
                if c == next {
                    next += 1;
                }
                c < next
            })
        })
        .collect()
}

fn check_pair(id: &str, w: &Word, u: &Word) -> CaseResult {
    match id {
        "L6" => check_runs_against_clauses(w, u, 3),
        "P8" => check_mirror_transfer(w, u, &palindromic_intervals(w, w.len())),
        "L17" => check_subadditive_profile(w),
        "P19" => check_std_pal_images(w, u),
        _ => check_palindrome_structure(w, u, id),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub id: String,
    pub sigma: u8,
    pub max_len: usize,
    pub bases: Vec<String>,
    /// Every word up to `max_len` was checked.
    pub complete: bool,
    /// Longest length whose words were all checked.
    pub completed_len: usize,
    pub words: u64,
    pub pairs: u64,
    pub checks: u64,
    pub counterexample: Option<Counterexample>,
    pub elapsed_secs: f64,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.complete && self.counterexample.is_none()
    }
}

const SWEEP_CHUNK: u64 = 1 << 14;

/// Checks every word of length `1..=max_len` against every normal base,
/// length by length, stopping at the first counterexample or once
/// `deadline` has passed.
pub fn exhaustive_sweep(id: &str, max_len: usize, deadline: Option<Instant>) -> Result<SweepReport> {
    let (sigma, base_len) = sweep_shape(id)
        .ok_or_else(|| Error::InvalidSource(format!("no exhaustive sweep for {id}")))?;
    let start_time = Instant::now();
    let bases = normal_bases(base_len, sigma);
    let alphabet = Alphabet::default();
    let mut report = SweepReport {
        id: id.to_string(),
        sigma,
        max_len,
        bases: bases.iter().map(|u| alphabet.render(u.letters())).collect(),
        complete: true,
        completed_len: 0,
        words: 0,
        pairs: 0,
        checks: 0,
        counterexample: None,
        elapsed_secs: 0.0,
    };
    'lengths: for len in 1..=max_len {
        let total = (sigma as u64)
            .checked_pow(len as u32)
            .ok_or_else(|| Error::InvalidSource(format!("{sigma}^{len} words overflow")))?;
        let mut lo = 0;
        while lo < total {
            if deadline.is_some_and(|d| Instant::now() >= d) {
                report.complete = false;
                break 'lengths;
            }
            let hi = (lo + SWEEP_CHUNK).min(total);
            let out = collect((lo..hi).into_par_iter().map(|k| {
                let w = nth_word(k, len, sigma);
                let mut t = Tally::default();
                for u in &bases {
                    match check_pair(id, &w, u) {
                        Ok(x) => t = t.merge(x),
                        Err(ce) => return (k, Err(ce)),
                    }
                }
                (k, Ok(t))
            }));
            report.words += hi - lo;
            report.pairs += (hi - lo) * bases.len() as u64;
            report.checks += out.tally.checks;
            if out.failure.is_some() {
                report.counterexample = out.failure;
                break 'lengths;
            }
            lo = hi;
        }
        report.completed_len = len;
    }
    report.elapsed_secs = start_time.elapsed().as_secs_f64();
    Ok(report)
}

fn sweep_outcome(id: &str, max_len: usize) -> Result<(Outcome, usize)> {
    let r = exhaustive_sweep(id, max_len, None)?;
    let tally = Tally::checks(r.checks);
    Ok((Outcome { tally, failure: r.counterexample }, r.pairs as usize))
}

fn check_subadditive_profile(w: &Word) -> CaseResult {
    let prof = pl_oracle_profile(w.letters());
    let rev: Vec<u8> = w.letters().iter().rev().copied().collect();
    let suffix = pl_oracle_profile(&rev);
    let n = w.len();
    for k in 1..n {
        if prof.at(n) > prof.at(k) + suffix.at(n - k) {
            return Err(fail(w, &Word::empty(), vec![k], "subadditivity fails"));
        }
    }
    Ok(Tally::checks(n.saturating_sub(1) as u64))
}

fn check_runs_against_clauses(w: &Word, u: &Word, gamma: usize) -> CaseResult {
    let scan = find_runs(w, u, GammaConfig::new(gamma).unwrap()).map_err(|e| err_to_ce(w, u, e))?;
    let got: Vec<(usize, usize)> = scan.runs.iter().map(|r| (r.i(), r.j())).collect();
    let want = run_border_brute(w, u, gamma);
    if got != want {
        return Err(fail(w, u, vec![], format!("scan {got:?}, clauses {want:?}")));
    }
    if !check_run_separation(&scan, u.len()) {
        return Err(fail(w, u, got.iter().flat_map(|&(i, j)| [i, j]).collect(), "separation"));
    }
    for r in &scan.runs {
        let d = r.exponent;
        if d.den != u.len() || d.num != r.j() - r.i() + 1 || d.num < (gamma - 2) * d.den {
            return Err(fail(w, u, vec![r.i(), r.j()], format!("exponent {d}")));
        }
        let z = q_power(&r.base, d).map_err(|e| err_to_ce(w, u, e))?;
        if z.letters() != w.slice(r.i(), r.j()) {
            return Err(fail(w, u, vec![r.i(), r.j()], "base power mismatch"));
        }
    }
    Ok(Tally::checks(1 + scan.runs.len() as u64))
}

fn check_mirror_transfer(w: &Word, u: &Word, pals: &[Interval]) -> CaseResult {
    let brute = run_border_brute(w, u, 3);
    let p = u.len();
    let mut n = 0;
    for &pal in pals {
        for &(i, j) in &brute {
            if !(pal.i + p < i && j + p < pal.j) {
                continue;
            }
            let m = mirror_run(pal, Interval { i, j }, p).map_err(|e| err_to_ce(w, u, e))?;
            if !brute.contains(&(m.i, m.j)) {
                return Err(fail(w, u, vec![pal.i, pal.j, i, j], format!("mirror {m} is not a run")));
            }
            n += 1;
        }
    }
    Ok(Tally::checks(n))
}

fn check_reversal_case(rng: &mut rand_chacha::ChaCha8Rng) -> CaseResult {
    use rand::Rng;
    let len = rng.gen_range(1..=5);
    let t = random_word(rng, len, 3);
    let num = rng.gen_range(len..=12 * len);
    let q = QExponent { num, den: len };
    let tq = q_power(&t, q).map_err(|e| err_to_ce(&t, &t, e))?;
    let target = reverse(&tq);
    let v = target.prefix(len);
    let vq = q_power(&v, q).map_err(|e| err_to_ce(&t, &v, e))?;
    if vq != target {
        return Err(fail(&t, &v, vec![num, len], "v^q differs from (t^q)^R"));
    }
    let least = phi_apply(&ReductionPolicy::canonical(3, 3).unwrap(), q).unwrap();
    let bump = QExponent { num: least.num + least.den, den: least.den };
    let table = if bump.num < 3 * bump.den && bump.num <= q.num { vec![(q, bump)] } else { vec![] };
    let mut strategies = policies();
    strategies.push(ReductionPolicy::new(3, 3, Strategy::ExplicitTable(table)).unwrap());
    for p in &strategies {
        let r = phi_apply(p, q).map_err(|e| err_to_ce(&t, &v, e))?;
        let lhs = q_power(&v, r).map_err(|e| err_to_ce(&t, &v, e))?;
        let rhs = reverse(&q_power(&t, r).map_err(|e| err_to_ce(&t, &v, e))?);
        if lhs != rhs {
            return Err(fail(&t, &v, vec![num, len], format!("{}: v^{r} != (t^{r})^R", p.name())));
        }
    }
    Ok(Tally::checks(strategies.len() as u64))
}

/// The reduced image of the certified part of the source prefix.
fn certified_reduced(red: &Reduction) -> Word {
    red.word.prefix(certified_reduced_len(&red.factorization, &red.policy).unwrap())
}

fn contains(hay: &Word, needle: &Word) -> bool {
    needle.is_empty() || hay.letters().windows(needle.len()).any(|w| w == needle.letters())
}

fn check_power_bound<R: rand::Rng>(fx: &PumpedFixture, rng: &mut R) -> CaseResult {
    let (w, u) = (&fx.prefix, &fx.u);
    let f = factorize(w, u, GammaConfig::default()).map_err(|e| err_to_ce(w, u, e))?;
    let mut ps = policies();
    ps.push(random_table_policy(rng, &f));
    let u5 = q_power(u, QExponent { num: 5 * u.len(), den: u.len() }).unwrap();
    let ur5 = reverse(&u5);
    for p in ps {
        let red = Reduction::new(f.clone(), p).map_err(|e| err_to_ce(w, u, e))?;
        let cert = certified_reduced(&red);
        if !power_bound_check(&cert, u, 3) {
            return Err(fail(w, u, vec![cert.len()], format!("{}: a 5-power survives", red.policy.name())));
        }
        if contains(&cert, &u5) || contains(&cert, &ur5) {
            return Err(fail(w, u, vec![cert.len()], "u^5 or (u^R)^5 survives"));
        }
    }
    Ok(Tally::checks(3))
}

fn check_rpo_bijection<R: rand::Rng>(fx: &PumpedFixture, rng: &mut R) -> CaseResult {
    let (w, u) = (&fx.prefix, &fx.u);
    let cfg = GammaConfig::default();
    let f = factorize(w, u, cfg).map_err(|e| err_to_ce(w, u, e))?;
    let policy = if rng.gen_bool(0.5) { policies().remove(1) } else { random_table_policy(rng, &f) };
    let red = Reduction::new(f, policy).map_err(|e| err_to_ce(w, u, e))?;
    let src = rpo_dom_mask(&find_runs(w, u, cfg).unwrap());
    let dst = rpo_dom_mask(&find_runs(&red.word, u, cfg).unwrap());
    let maps: &PositionMaps = &red.maps;
    let pairs = maps.rpo_pairs();
    if !pairs.iter().map(|p| p.0).eq(src.positions()) {
        return Err(fail(w, u, vec![], "domain differs from the run-free positions"));
    }
    if !pairs.iter().map(|p| p.1).eq(dst.positions()) {
        return Err(fail(w, u, vec![], "image differs from the reduced run-free positions"));
    }
    for win in pairs.windows(2) {
        let ((a, ra), (b, rb)) = (win[0], win[1]);
        if rb <= ra || (b == a + 1 && rb != ra + 1) {
            return Err(fail(w, u, vec![a, b], "rpo not increasing or not contiguous"));
        }
    }
    for &(a, ra) in &pairs {
        if maps.rpo_inverse(ra).ok() != Some(a) {
            return Err(fail(w, u, vec![a], "rpo_inverse mismatch"));
        }
    }
    Ok(Tally::checks(pairs.len() as u64))
}

/// Random segments with run-free ends inside the certified part.
fn random_segments<R: rand::Rng>(ctx: &RunContext, rng: &mut R, count: usize, max_len: usize) -> Vec<Interval> {
    let lim = ctx.limit().saturating_sub(1);
    let dom: Vec<usize> = (1..=lim).filter(|&p| ctx.in_dom(p)).collect();
    let mut out = Vec::new();
    if dom.is_empty() {
        return out;
    }
    for _ in 0..count {
        let a = dom[rng.gen_range(0..dom.len())];
        let ends: Vec<usize> = dom.iter().copied().filter(|&b| b >= a && b < a + max_len).collect();
        let b = ends[rng.gen_range(0..ends.len())];
        out.push(Interval { i: a, j: b });
    }
    // segments covering at least one run are the interesting ones
    let with_runs: Vec<Interval> = dom
        .iter()
        .flat_map(|&a| {
            ctx.scan()
                .runs
                .iter()
                .filter(move |r| r.i() > a && r.j() < a + max_len)
                .map(move |r| (a, r.j()))
        })
        .filter_map(|(a, rj)| dom.iter().copied().find(|&b| b > rj && b < a + max_len).map(|b| Interval { i: a, j: b }))
        .collect();
    for _ in 0..count.min(with_runs.len()) {
        out.push(with_runs[rng.gen_range(0..with_runs.len())]);
    }
    out
}

fn check_segment_bounds<R: rand::Rng>(w: &Word, u: &Word, rng: &mut R, cubic: bool) -> CaseResult {
    let cfg = GammaConfig::default();
    let ctx = RunContext::new(w.clone(), u.clone(), cfg).map_err(|e| err_to_ce(w, u, e))?;
    let f = factorize(w, u, cfg).map_err(|e| err_to_ce(w, u, e))?;
    let mut ps = policies();
    ps.push(random_table_policy(rng, &f));
    let reds: Vec<Reduction> = ps
        .into_iter()
        .map(|p| Reduction::new(f.clone(), p))
        .collect::<Result<_>>()
        .map_err(|e| err_to_ce(w, u, e))?;
    let mut tally = Tally::default();
    for seg in random_segments(&ctx, rng, 6, 48) {
        for red in &reds {
            let rep = reduced_pl_bound_check(&ctx, red, seg).map_err(|e| err_to_ce(w, u, e))?;
            let ok = if cubic { rep.ok } else { rep.piecewise_ok };
            if !ok {
                return Err(fail(w, u, vec![seg.i, seg.j], format!(
                    "{}: PL {} exceeds bound {} (k = {}, runs = {})",
                    red.policy.name(),
                    rep.pl_reduced,
                    if cubic { rep.bound } else { rep.piecewise_bound },
                    rep.k,
                    rep.runs
                )));
            }
            tally.checks += 1;
            let ratio = if cubic {
                rep.ratio()
            } else {
                rep.pl_reduced as f64 / rep.piecewise_bound.max(1) as f64
            };
            tally.max_ratio = Some(tally.max_ratio.map_or(ratio, |m: f64| m.max(ratio)));
        }
    }
    Ok(tally)
}

fn check_std_pal_images(w: &Word, u: &Word) -> CaseResult {
    let cfg = GammaConfig::default();
    let ctx = RunContext::new(w.clone(), u.clone(), cfg).map_err(|e| err_to_ce(w, u, e))?;
    let sps = all_std_pals(&ctx);
    if sps.is_empty() {
        return Ok(Tally::default());
    }
    let f = Factorization::from_scan(w, u, cfg, ctx.scan());
    let mut n = 0;
    for p in policies() {
        let red = Reduction::new(f.clone(), p).map_err(|e| err_to_ce(w, u, e))?;
        for sp in &sps {
            if !image_is_palindrome(&red, sp).map_err(|e| err_to_ce(w, u, e))? {
                return Err(fail(w, u, vec![sp.interval.i, sp.interval.j], format!(
                    "{}: image {} is not a palindrome",
                    red.policy.name(),
                    red.image(sp.interval).unwrap()
                )));
            }
            n += 1;
        }
    }
    Ok(Tally::checks(n))
}

fn check_palindrome_structure(w: &Word, u: &Word, which: &str) -> CaseResult {
    let ctx = RunContext::new(w.clone(), u.clone(), GammaConfig::default())
        .map_err(|e| err_to_ce(w, u, e))?;
    let lim = ctx.limit();
    if lim < 2 {
        return Ok(Tally::default());
    }
    let p = u.len();
    let mut n = 0;
    for pal in palindromic_intervals(w, lim - 1) {
        match which {
            "L20" => {
                for r in ctx.scan().runs.iter().filter(|r| pal.i + p < r.i() && r.j() + p < pal.j) {
                    let c = centered_from_run(&ctx, pal, r.interval).map_err(|e| err_to_ce(w, u, e))?;
                    let std = is_std_pal(&ctx, c).map_err(|e| err_to_ce(w, u, e))?;
                    let listed = centered_std_pals(&ctx, pal).map_err(|e| err_to_ce(w, u, e))?;
                    if !std || !listed.contains(&c) {
                        return Err(fail(w, u, vec![pal.i, pal.j, r.i(), r.j()], format!(
                            "{c} is not a centered standard palindrome"
                        )));
                    }
                    n += 1;
                }
            }
            "L21" => {
                if is_hat(&ctx, pal).map_err(|e| err_to_ce(w, u, e))? {
                    let runs = ctx.runs_within(pal);
                    if runs > 2 {
                        return Err(fail(w, u, vec![pal.i, pal.j], format!("{runs} runs")));
                    }
                    n += 1;
                }
            }
            _ => {
                if let Some(m) = max_csp(&ctx, pal).map_err(|e| err_to_ce(w, u, e))? {
                    let flanks = [
                        (pal.i < m.i).then(|| Interval { i: pal.i, j: m.i - 1 }),
                        (m.j < pal.j).then(|| Interval { i: m.j + 1, j: pal.j }),
                    ];
                    for fl in flanks.into_iter().flatten() {
                        let runs = ctx.runs_within(fl);
                        if runs > 1 {
                            return Err(fail(w, u, vec![pal.i, pal.j, fl.i, fl.j], format!("{runs} runs")));
                        }
                        n += 1;
                    }
                }
            }
        }
    }
    Ok(Tally::checks(n))
}

/// Every run-free segment of the certified part of `ctx`.
fn all_segments(ctx: &RunContext) -> Vec<Interval> {
    let lim = ctx.limit().saturating_sub(1);
    let dom: Vec<usize> = (1..=lim).filter(|&p| ctx.in_dom(p)).collect();
    dom.iter()
        .flat_map(|&a| dom.iter().filter(move |&&b| b >= a).map(move |&b| Interval { i: a, j: b }))
        .collect()
}

/// Standard palindromic factorizations of all run-free segments, each checked
/// again against the clause-by-clause run list and mask.
fn check_std_factorizations(w: &Word, u: &Word) -> CaseResult {
    let ctx = RunContext::new(w.clone(), u.clone(), GammaConfig::default())
        .map_err(|e| err_to_ce(w, u, e))?;
    let runs = run_border_brute(w, u, 3);
    let dom = rpo_dom_brute(w, &runs);
    let table = FactorPlTable::new(w.letters());
    let mut tally = Tally::default();
    for seg in all_segments(&ctx) {
        let k = 1 + table.max_pl(seg.i, seg.j) as usize;
        let f = std_pal_factorization(&ctx, seg, k)
            .map_err(|e| fail(w, u, vec![seg.i, seg.j], format!("k = {k}: {e}")))?;
        recertify(w, u.len(), &dom, &runs, seg, k, &f.cut_points)
            .map_err(|e| fail(w, u, vec![seg.i, seg.j], format!("k = {k}: {e}")))?;
        tally.checks += 1;
        let slot = match f.route {
            FactorizationRoute::Construction => 0,
            FactorizationRoute::Minimized => 1,
            FactorizationRoute::Search => 2,
        };
        tally.routes[slot] += 1;
    }
    Ok(tally)
}

fn recertify(
    w: &Word,
    u_len: usize,
    dom: &[bool],
    runs: &[(usize, usize)],
    seg: Interval,
    k: usize,
    cuts: &[usize],
) -> std::result::Result<(), String> {
    let g = cuts.len();
    if g < 2 || g > k || cuts[0] != seg.i || cuts[g - 1] != seg.j + 1 {
        return Err(format!("cut points {cuts:?} do not factor {seg} within {k}"));
    }
    for p in cuts.windows(2) {
        let (a, b) = (p[0], p[1] - 1);
        if a > b || !dom[a] || !dom[b] {
            return Err(format!("piece ({a}, {b}) is empty or ends on a run"));
        }
        if !std_pal_brute(w, dom, u_len, a, b) && runs_inside(runs, a, b) > 3 * k {
            return Err(format!("piece ({a}, {b}) is neither standard nor sparse in runs"));
        }
    }
    Ok(())
}
