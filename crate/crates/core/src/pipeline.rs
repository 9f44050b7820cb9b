//! End-to-end reduction of a generated word with `γ = h = 3`: strip a
//! forbidden power prefix, factorize, reduce, then check the reduced prefix.

use std::collections::HashSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixtures::case_rng;
use crate::generators::WordSource;
use crate::pal_length::max_pl;
use crate::reduce::{
    certified_reduced_len, choose_aperiodic_policy, factorize, periodic_look, power_bound_check, refactorize_check,
    Reduction, ReductionPolicy, Strategy,
};
use crate::runs::{pi_gamma_status, GammaConfig, PiGammaStatus};
use crate::std_pal::{reduced_pl_bound_check, RunContext};
use crate::verify::{Counterexample, Status};
use crate::word::{in_pow_factor, q_power, reverse, Interval, Letter, QExponent, Word};

pub const GAMMA: usize = 3;
pub const H: usize = 3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub u: Word,
    pub horizon: usize,
    /// `None` lets the aperiodicity heuristic pick the policy.
    pub strategy: Option<Strategy>,
    /// Occurrences of a `γ`-power of a rotation of `u` (or `u^R`) needed to
    /// accept recurrence.
    pub occurrence_threshold: usize,
    /// Longest source factor compared in the factor-preservation check.
    pub psi_cap: usize,
    pub spot_checks: usize,
    pub spot_window: usize,
    /// Prefix length over which maxPL is compared.
    pub maxpl_window: usize,
    pub aperiodic_horizon: usize,
    pub seed: u64,
}

impl PipelineConfig {
    pub fn new(u: Word) -> Self {
        PipelineConfig {
            u,
            horizon: 10_000,
            strategy: None,
            occurrence_threshold: 3,
            psi_cap: 64,
            spot_checks: 50,
            spot_window: 48,
            maxpl_window: 600,
            aperiodic_horizon: 4000,
            seed: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl CheckOutcome {
    fn pass(id: &str, anchor: &str, cases: usize) -> Self {
        CheckOutcome { id: id.into(), anchor: anchor.into(), status: Status::Pass, cases, counterexample: None }
    }

    fn fail(id: &str, anchor: &str, cases: usize, ce: Counterexample) -> Self {
        CheckOutcome {
            id: id.into(),
            anchor: anchor.into(),
            status: Status::Fail,
            cases,
            counterexample: Some(ce),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub u: String,
    pub gamma: usize,
    pub h: usize,
    pub policy: ReductionPolicy,
    pub policy_name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
    pub horizon: usize,
    /// Length of the stripped prefix `t`.
    pub stripped: usize,
    pub runs: usize,
    /// Length of the reduced prefix whose letters are final.
    pub certified_len: usize,
    pub checks: Vec<CheckOutcome>,
    pub maxpl_source: usize,
    pub maxpl_reduced_observed: usize,
    pub bound_3k3: usize,
    pub max_spot_ratio: f64,
}

impl PipelineReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }
}

#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub reduction: Reduction,
    /// The certified part of the reduced prefix.
    pub reduced: Word,
    pub report: PipelineReport,
}

/// Length of the shortest prefix `t` such that the rest does not start with
/// a `γ`-power of a rotation of `u` or `u^R`.
pub fn strip_len(w: &Word, u: &Word, cfg: GammaConfig) -> usize {
    let len = cfg.gamma() * u.len();
    let mut s = 0;
    while s + len <= w.len() && in_pow_factor(w.slice(s + 1, s + len), u.letters()) {
        s += 1;
    }
    s
}

pub fn run_pipeline(source: &WordSource, cfg: &PipelineConfig) -> Result<PipelineOutput> {
    let gcfg = GammaConfig::new(GAMMA)?;
    let u = &cfg.u;
    let full = source.prefix(cfg.horizon);
    let stripped = strip_len(&full, u, gcfg);
    let w = Word::new(full.letters()[stripped..].to_vec());
    match pi_gamma_status(&w, u, gcfg, cfg.occurrence_threshold) {
        PiGammaStatus::Member => {}
        PiGammaStatus::NonMember(c) => return Err(Error::PiGamma(c.to_string())),
        PiGammaStatus::UndecidableAtHorizon(msg) => {
            return Err(Error::PiGamma(format!("recurrence not observed at horizon {}: {msg}", cfg.horizon)))
        }
    }
    let f = factorize(&w, u, gcfg)?;
    let (policy, warning) = match &cfg.strategy {
        Some(s) => (ReductionPolicy::new(GAMMA, H, s.clone())?, None),
        None => {
            let c = choose_aperiodic_policy(&f, H, cfg.aperiodic_horizon)?;
            let warning = c.warning.then(|| match c.period {
                Some((p, pre)) => format!("every candidate policy looks periodic (period {p}, preperiod {pre})"),
                None => "every candidate policy looks periodic".to_string(),
            });
            (c.policy, warning)
        }
    };
    let red = Reduction::new(f, policy.clone())?;
    let fz = &red.factorization;
    let k = fz.pieces.len();
    let src_cert = fz.certified_len();
    let cert_len = certified_reduced_len(fz, &policy)?;
    let reduced = red.word.prefix(cert_len);

    let ce = |positions: Vec<usize>, detail: String| Counterexample::new(&full, u, positions, detail);
    let mut checks = Vec::new();

    // no (h+2)-power survives, in particular no u^5 and no (u^R)^5
    let u5 = q_power(u, QExponent { num: (H + 2) * u.len(), den: u.len() })?;
    let ur5 = reverse(&u5);
    let anchor_power = "no (h+2)-power of a rotation of u or u^R in the reduced prefix";
    checks.push(if !power_bound_check(&reduced, u, H) {
        CheckOutcome::fail("L12", anchor_power, 1, ce(vec![], "a 5-power survives".into()))
    } else if let Some(p) = find(&reduced, &u5).or_else(|| find(&reduced, &ur5)) {
        CheckOutcome::fail("L12", anchor_power, 1, ce(vec![p], "u^5 or (u^R)^5 in the reduced prefix".into()))
    } else {
        CheckOutcome::pass("L12", anchor_power, 1)
    });

    checks.push(psi_check(&w, src_cert, &red.word, u, cfg.psi_cap, stripped, &ce));

    let anchor_refactor = "refactorizing the reduced prefix gives the same gaps and reduced exponents";
    let rep = refactorize_check(&w, u, gcfg, &policy)?;
    checks.push(if rep.ok {
        CheckOutcome::pass("P14", anchor_refactor, 1)
    } else {
        CheckOutcome::fail("P14", anchor_refactor, 1, ce(vec![], rep.diagnostic.unwrap_or_default()))
    });

    let ctx = RunContext::new(w.clone(), u.clone(), gcfg)?;
    let anchor_spot = "PL of the image of a run-free segment is at most 3k^3 - 3k^2";
    let mut rng = case_rng(cfg.seed, 0);
    let dom: Vec<usize> = (1..ctx.limit().min(src_cert)).filter(|&p| ctx.in_dom(p)).collect();
    let mut max_ratio: f64 = 0.0;
    let mut spot = CheckOutcome::pass("T24", anchor_spot, 0);
    if !dom.is_empty() {
        for _ in 0..cfg.spot_checks {
            let a = dom[rng.gen_range(0..dom.len())];
            let ends: Vec<usize> = dom.iter().copied().filter(|&b| b >= a && b < a + cfg.spot_window).collect();
            let b = ends[rng.gen_range(0..ends.len())];
            let r = reduced_pl_bound_check(&ctx, &red, Interval { i: a, j: b })?;
            max_ratio = max_ratio.max(r.ratio());
            spot.cases += 1;
            if !r.ok {
                spot = CheckOutcome::fail("T24", anchor_spot, spot.cases, ce(
                    vec![stripped + a, stripped + b],
                    format!("PL {} exceeds {} with k = {}", r.pl_reduced, r.bound, r.k),
                ));
                break;
            }
        }
    }
    checks.push(spot);

    let anchor_aper = "the reduced prefix shows no short eventual period";
    let look = &reduced.letters()[..reduced.len().min(cfg.aperiodic_horizon)];
    checks.push(match periodic_look(look) {
        None => CheckOutcome::pass("APERIODIC", anchor_aper, 1),
        Some((p, pre)) => CheckOutcome::fail("APERIODIC", anchor_aper, 1, ce(
            vec![p, pre],
            format!("reduced prefix looks periodic with period {p} after {pre} letters"),
        )),
    });

    // maxPL over a window of the source against its image
    let anchor_maxpl = "maxPL of the reduced prefix is at most 3k^3 for k the maxPL of the source";
    let window = (1..=cfg.maxpl_window.min(src_cert)).rev().find(|&p| red.maps.in_domain(p));
    let (maxpl_source, maxpl_reduced) = match window {
        Some(end) => {
            let img = red.maps.rpo(end)?;
            (max_pl(w.slice(1, end)) as usize, max_pl(red.word.slice(1, img)) as usize)
        }
        None => (0, 0),
    };
    let bound = 3 * maxpl_source.pow(3);
    checks.push(if maxpl_reduced <= bound {
        CheckOutcome::pass("MAXPL", anchor_maxpl, 1)
    } else {
        CheckOutcome::fail("MAXPL", anchor_maxpl, 1, ce(
            vec![window.unwrap_or(0)],
            format!("maxPL {maxpl_reduced} > 3k^3 = {bound}"),
        ))
    });

    let report = PipelineReport {
        u: source.render(u),
        gamma: GAMMA,
        h: H,
        policy_name: policy.name().to_string(),
        policy,
        warning,
        horizon: cfg.horizon,
        stripped,
        runs: k,
        certified_len: cert_len,
        checks,
        maxpl_source,
        maxpl_reduced_observed: maxpl_reduced,
        bound_3k3: bound,
        max_spot_ratio: max_ratio,
    };
    Ok(PipelineOutput { reduction: red, reduced, report })
}

fn find(hay: &Word, needle: &Word) -> Option<usize> {
    hay.letters().windows(needle.len()).position(|x| x == needle.letters()).map(|p| p + 1)
}

/// Every factor of `w[1, src_cert]` of length at most `cap` avoiding `u` and
/// `u^R` occurs in `reduced`.
fn psi_check(
    w: &Word,
    src_cert: usize,
    reduced: &Word,
    u: &Word,
    cap: usize,
    stripped: usize,
    ce: &dyn Fn(Vec<usize>, String) -> Counterexample,
) -> CheckOutcome {
    let anchor = "factors of the source avoiding u and u^R occur in the reduced prefix";
    let src = &w.letters()[..src_cert];
    let ur = reverse(u);
    let p = u.len();
    // hits[s] = 1 if u or u^R starts at 0-based s
    let mut before = vec![0usize; src.len() + 1];
    for s in 0..src.len() {
        let hit = s + p <= src.len() && (&src[s..s + p] == u.letters() || &src[s..s + p] == ur.letters());
        before[s + 1] = before[s] + hit as usize;
    }
    let red = reduced.letters();
    let mut cases = 0;
    for len in 1..=cap.min(src.len()) {
        let known: HashSet<&[Letter]> = red.windows(len).collect();
        let mut seen: HashSet<&[Letter]> = HashSet::new();
        for s in 0..=src.len() - len {
            // occurrences starting in [s, s + len - p]
            if len >= p && before[s + len - p + 1] > before[s] {
                continue;
            }
            let f = &src[s..s + len];
            if !seen.insert(f) {
                continue;
            }
            cases += 1;
            if !known.contains(f) {
                return CheckOutcome::fail("PSI", anchor, cases, ce(
                    vec![stripped + s + 1, stripped + s + len],
                    format!("source factor of length {len} missing from the reduced prefix"),
                ));
            }
        }
    }
    CheckOutcome::pass("PSI", anchor, cases)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{pumped_word, ExponentSpec, Morphism};
    use crate::word::word;

    fn tm_pumped(blocks: &[&str], u: &str, offset: usize) -> WordSource {
        let spec = ExponentSpec::MorphicDriven { morphism: Morphism::thue_morse(), offset };
        WordSource::pumped(pumped_word(blocks.iter().map(|b| word(b)).collect(), word(u), spec).unwrap())
    }

    fn cfg(u: &str, horizon: usize) -> PipelineConfig {
        PipelineConfig { horizon, ..PipelineConfig::new(word(u)) }
    }

    #[test]
    fn pumped_source_passes_every_check() {
        let src = tm_pumped(&["c", "dd"], "ab", 4);
        let out = run_pipeline(&src, &cfg("ab", 3000)).unwrap();
        assert!(out.report.passed(), "{:?}", out.report.checks);
        assert!(find(&out.reduced, &word("ababababab")).is_none());
        assert!(out.report.runs > 50);
        assert_eq!(out.report.bound_3k3, 3 * out.report.maxpl_source.pow(3));
    }

    #[test]
    fn avoiding_factor_survives() {
        let src = tm_pumped(&["cccc", "d"], "ab", 5);
        let out = run_pipeline(&src, &cfg("ab", 2000)).unwrap();
        let psi = out.report.checks.iter().find(|c| c.id == "PSI").unwrap();
        assert_eq!(psi.status, Status::Pass);
        assert!(find(&out.reduced, &word("cccc")).is_some());
    }

    #[test]
    fn missing_recurrence_is_reported() {
        let src = WordSource::literal(word(&"cd".repeat(200)));
        let e = run_pipeline(&src, &cfg("ab", 400)).unwrap_err();
        assert!(matches!(e, Error::PiGamma(_)), "{e}");
        let src = WordSource::literal(word("abab"));
        assert!(run_pipeline(&src, &cfg("aa", 4)).is_err());
    }

    #[test]
    fn forbidden_power_prefix_is_stripped() {
        let w = word("abababcab");
        assert_eq!(strip_len(&w, &word("ab"), GammaConfig::default()), 1);
        assert_eq!(strip_len(&word("cabab"), &word("ab"), GammaConfig::default()), 0);
        let src = WordSource::literal(word("ababab").concat(tm_pumped(&["c", "dd"], "ab", 4).prefix(1500).letters()));
        let out = run_pipeline(&src, &cfg("ab", 1506)).unwrap();
        assert!(out.report.stripped >= 1);
        assert!(out.report.passed());
    }

    #[test]
    fn fixed_strategy_is_respected() {
        let src = tm_pumped(&["c", "dd"], "ab", 4);
        let c = PipelineConfig { strategy: Some(Strategy::CanonicalMin), ..cfg("ab", 1500) };
        let out = run_pipeline(&src, &c).unwrap();
        assert_eq!(out.report.policy_name, "canonical_min");
        assert!(out.report.warning.is_none());
    }
}
