//! u-runs: maximal `|u|`-periodic stretches of `PowFactor(u)`, trimmed by
//! `|u|` letters on both sides.
//!
//! A pair `(i, j)` is a run of `w` when
//!
//! 1. `j - i + 1 >= (γ - 2)|u|` and `|u| + 1 < i`,
//! 2. `w[i-|u|, j+|u|]` lies in `PowFactor(u)`,
//! 3. neither one-letter extension `w[i-|u|, j+|u|+1]`, `w[i-|u|-1, j+|u|]` does.
//!
//! For windows of length at least `|u|`, membership in `PowFactor(u)` means
//! "period `|u|` and the first `|u|` letters are a rotation of `u` or `u^R`",
//! so runs are read off the maximal periodic stretches in one pass.
//!
//! Only runs whose right extension letter lies inside the scanned prefix are
//! reported; anything later is not yet certified maximal.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::periodic_stretches;
use crate::word::{is_primitive, mirror_interval, Interval, Letter, QExponent, Word};

/// The run-length parameter `γ >= 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaConfig {
    gamma: usize,
}

impl GammaConfig {
    pub fn new(gamma: usize) -> Result<Self> {
        if gamma < 3 {
            return Err(Error::InvalidSource(format!("gamma must be at least 3, got {gamma}")));
        }
        Ok(GammaConfig { gamma })
    }

    pub fn gamma(&self) -> usize {
        self.gamma
    }
}

impl Default for GammaConfig {
    fn default() -> Self {
        GammaConfig { gamma: 3 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Run {
    pub interval: Interval,
    /// `z = w[i, i+|u|-1]`; not necessarily `u` itself.
    pub base: Word,
    /// `d` with `z^d = w[i, j]`.
    pub exponent: QExponent,
}

impl Run {
    pub fn i(&self) -> usize {
        self.interval.i
    }

    pub fn j(&self) -> usize {
        self.interval.j
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunScan {
    pub runs: Vec<Run>,
    pub horizon: usize,
    /// Every run with `i <= complete_upto` is listed.
    pub complete_upto: usize,
    pub u_len: usize,
}

impl RunScan {
    /// Runs `(i, j)` with `lo <= i` and `j <= hi`.
    pub fn runs_within(&self, lo: usize, hi: usize) -> &[Run] {
        let start = self.runs.partition_point(|r| r.i() < lo);
        let end = self.runs.partition_point(|r| r.j() <= hi);
        if end <= start {
            &[]
        } else {
            &self.runs[start..end]
        }
    }

    pub fn count_within(&self, lo: usize, hi: usize) -> usize {
        self.runs_within(lo, hi).len()
    }

    pub fn intervals(&self) -> Vec<Interval> {
        self.runs.iter().map(|r| r.interval).collect()
    }
}

/// Whether a length-`|u|` window is a rotation of `u` or of `u^R`.
pub(crate) fn is_rotation_of_u_or_reverse(window: &[Letter], u: &[Letter]) -> bool {
    let n = u.len();
    debug_assert_eq!(window.len(), n);
    (0..n).any(|r| (0..n).all(|k| window[k] == u[(r + k) % n]))
        || (0..n).any(|r| (0..n).all(|k| window[k] == u[n - 1 - (r + k) % n]))
}

/// Maximal `PowFactor(u)` stretches of length at least `min_len`, 1-based inclusive.
pub(crate) fn pow_factor_stretches(w: &[Letter], u: &[Letter], min_len: usize) -> Vec<Interval> {
    let p = u.len();
    periodic_stretches(w, p)
        .into_iter()
        .filter(|&(a, b)| b + 1 - a >= min_len.max(p + 1))
        .filter(|&(a, _)| is_rotation_of_u_or_reverse(&w[a..a + p], u))
        .map(|(a, b)| Interval { i: a + 1, j: b + 1 })
        .collect()
}

fn check_base(u: &Word) -> Result<()> {
    if u.is_empty() {
        return Err(Error::EmptyBase);
    }
    if !is_primitive(u) {
        return Err(Error::NotPrimitive);
    }
    Ok(())
}

/// All certified u-runs of `prefix`, in increasing order.
pub fn find_runs(prefix: &Word, u: &Word, cfg: GammaConfig) -> Result<RunScan> {
    check_base(u)?;
    let w = prefix.letters();
    let n = w.len();
    let p = u.len();
    let min_interior = (cfg.gamma() - 2) * p;
    let mut runs = Vec::new();
    for s in pow_factor_stretches(w, u.letters(), 2 * p + 1) {
        // the left extension letter w[i-|u|-1] must exist
        if s.i < 2 {
            continue;
        }
        // the right extension letter w[j+|u|+1] must exist
        if s.j >= n {
            continue;
        }
        let (i, j) = (s.i + p, s.j - p);
        if j < i || j - i + 1 < min_interior {
            continue;
        }
        runs.push(Run {
            interval: Interval { i, j },
            base: Word::from(prefix.slice(i, i + p - 1)),
            exponent: QExponent { num: j - i + 1, den: p },
        });
    }
    Ok(RunScan { runs, horizon: n, complete_upto: n.saturating_sub(p + 1), u_len: p })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PiGammaClause {
    EmptyBase,
    NotPrimitive,
    /// The length-`γ|u|` prefix lies in `PowFactor(u)`.
    ForbiddenPowerPrefix,
}

impl std::fmt::Display for PiGammaClause {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PiGammaClause::EmptyBase => "u must be nonempty",
            PiGammaClause::NotPrimitive => "u is primitive",
            PiGammaClause::ForbiddenPowerPrefix => {
                "no prefix of length gamma|u| lies in PowFactor(u)"
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PiGammaStatus {
    Member,
    NonMember(PiGammaClause),
    /// Only the recurrence proxy (or the horizon length) is undecided.
    UndecidableAtHorizon(String),
}

/// Number of windows of length `γ|u|` lying in `PowFactor(u)`, i.e.
/// occurrences of `v^γ` over all `v` in `PowFactor(u)` of length `|u|`.
pub fn gamma_power_occurrences(prefix: &Word, u: &Word, cfg: GammaConfig) -> usize {
    let len = cfg.gamma() * u.len();
    pow_factor_stretches(prefix.letters(), u.letters(), len)
        .into_iter()
        .map(|s| s.len() + 1 - len)
        .sum()
}

/// Finite-horizon membership of `u` in `Π_γ`, with recurrence replaced by
/// at least `occurrence_threshold` occurrences of some `v^γ`.
pub fn pi_gamma_status(
    prefix: &Word,
    u: &Word,
    cfg: GammaConfig,
    occurrence_threshold: usize,
) -> PiGammaStatus {
    if u.is_empty() {
        return PiGammaStatus::NonMember(PiGammaClause::EmptyBase);
    }
    if !is_primitive(u) {
        return PiGammaStatus::NonMember(PiGammaClause::NotPrimitive);
    }
    let len = cfg.gamma() * u.len();
    if prefix.len() < len {
        return PiGammaStatus::UndecidableAtHorizon(format!(
            "prefix shorter than gamma|u| = {len}"
        ));
    }
    if crate::word::in_pow_factor(prefix.slice(1, len), u.letters()) {
        return PiGammaStatus::NonMember(PiGammaClause::ForbiddenPowerPrefix);
    }
    let count = gamma_power_occurrences(prefix, u, cfg);
    if count >= occurrence_threshold {
        PiGammaStatus::Member
    } else {
        PiGammaStatus::UndecidableAtHorizon(format!(
            "{count} occurrences of a gamma-power, threshold {occurrence_threshold}"
        ))
    }
}

/// `mask[p]` for `p` in `1..=horizon`: true iff no run covers `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RpoMask {
    bits: Vec<bool>,
}

impl RpoMask {
    pub fn contains(&self, p: usize) -> bool {
        p >= 1 && p < self.bits.len() && self.bits[p]
    }

    pub fn horizon(&self) -> usize {
        self.bits.len() - 1
    }

    /// Positions in the domain, increasing.
    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        (1..self.bits.len()).filter(move |&p| self.bits[p])
    }
}

pub fn rpo_dom_mask(scan: &RunScan) -> RpoMask {
    let mut bits = vec![true; scan.horizon + 1];
    bits[0] = false;
    for r in &scan.runs {
        for b in &mut bits[r.i()..=r.j()] {
            *b = false;
        }
    }
    RpoMask { bits }
}

/// Consecutive runs satisfy `j_prev + u_len + 1 < i_next`.
pub fn check_run_separation(scan: &RunScan, u_len: usize) -> bool {
    scan.runs.windows(2).all(|p| p[0].j() + u_len + 1 < p[1].i())
}

/// Mirror image of an interior run inside a palindrome `pal = (i1, i2)`.
pub fn mirror_run(pal: Interval, run: Interval, u_len: usize) -> Result<Interval> {
    if !(pal.i + u_len < run.i && run.i <= run.j && run.j + u_len < pal.j) {
        return Err(Error::MarginTooSmall);
    }
    mirror_interval(pal.i, run.i, run.j, pal.j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference::run_border_brute;
    use crate::word::word;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn iv(i: usize, j: usize) -> Interval {
        Interval { i, j }
    }

    #[test]
    fn single_run_fixture() {
        let w = word("ccccababababccc");
        let scan = find_runs(&w, &word("ab"), GammaConfig::default()).unwrap();
        assert_eq!(scan.intervals(), vec![iv(7, 10)]);
        assert_eq!(scan.runs[0].base, word("ab"));
        assert_eq!(scan.runs[0].exponent, QExponent { num: 4, den: 2 });
        assert_eq!(scan.complete_upto, 12);
        assert_eq!(run_border_brute(&w, &word("ab"), 3), vec![(7, 10)]);
    }

    #[test]
    fn no_run_touching_the_start() {
        let w = word("ababababccc");
        let scan = find_runs(&w, &word("ab"), GammaConfig::default()).unwrap();
        assert!(scan.runs.iter().all(|r| r.i() > 3));
        assert!(scan.runs.is_empty());
    }

    #[test]
    fn short_stretch_has_no_run() {
        let w = word("ccccababcccc");
        let scan = find_runs(&w, &word("ab"), GammaConfig::default()).unwrap();
        assert!(scan.runs.is_empty());
        assert!(run_border_brute(&w, &word("ab"), 3).is_empty());
    }

    #[test]
    fn run_base_may_differ_from_u() {
        // stretch of (ba)^∞ read against u = ab, and a (u^R)^∞ stretch for u = aab
        let w = word("cbabababac");
        let scan = find_runs(&w, &word("ab"), GammaConfig::default()).unwrap();
        assert_eq!(scan.intervals(), vec![iv(4, 7)]);
        assert_eq!(scan.runs[0].base, word("ba"));
        let w = word("cbaabaabaabaac");
        let scan = find_runs(&w, &word("aab"), GammaConfig::default()).unwrap();
        assert_eq!(scan.intervals(), run_border_brute(&w, &word("aab"), 3).into_iter().map(|(i, j)| iv(i, j)).collect::<Vec<_>>());
        assert_eq!(scan.runs.len(), 1);
    }

    #[test]
    fn uncertified_run_is_withheld() {
        let w = word("ccababababab");
        let scan = find_runs(&w, &word("ab"), GammaConfig::default()).unwrap();
        assert!(scan.runs.is_empty());
    }

    #[test]
    fn base_errors() {
        let w = word("abc");
        assert_eq!(find_runs(&w, &word("abab"), GammaConfig::default()), Err(Error::NotPrimitive));
        assert_eq!(find_runs(&w, &Word::empty(), GammaConfig::default()), Err(Error::EmptyBase));
        assert_eq!(Error::NotPrimitive.to_string(), "base must be primitive");
    }

    #[test]
    fn pi_gamma_examples() {
        let cfg = GammaConfig::default();
        assert_eq!(
            pi_gamma_status(&word("abababcc"), &word("ab"), cfg, 1),
            PiGammaStatus::NonMember(PiGammaClause::ForbiddenPowerPrefix)
        );
        let mut s = String::from("cc");
        for _ in 0..5 {
            s.push_str("abababcc");
        }
        assert_eq!(pi_gamma_status(&word(&s), &word("ab"), cfg, 3), PiGammaStatus::Member);
        assert_eq!(
            pi_gamma_status(&word(&s), &word("abab"), cfg, 3),
            PiGammaStatus::NonMember(PiGammaClause::NotPrimitive)
        );
        assert!(matches!(
            pi_gamma_status(&word(&s), &word("ab"), cfg, 6),
            PiGammaStatus::UndecidableAtHorizon(_)
        ));
        assert!(matches!(
            pi_gamma_status(&word("cab"), &word("ab"), cfg, 1),
            PiGammaStatus::UndecidableAtHorizon(_)
        ));
    }

    fn scan_of(runs: &[(usize, usize)], horizon: usize) -> RunScan {
        RunScan {
            runs: runs
                .iter()
                .map(|&(i, j)| Run {
                    interval: iv(i, j),
                    base: word("ab"),
                    exponent: QExponent { num: j - i + 1, den: 2 },
                })
                .collect(),
            horizon,
            complete_upto: horizon - 3,
            u_len: 2,
        }
    }

    #[test]
    fn mask_examples() {
        let m = rpo_dom_mask(&scan_of(&[(7, 10)], 15));
        let off: Vec<usize> = (1..=15).filter(|&p| !m.contains(p)).collect();
        assert_eq!(off, vec![7, 8, 9, 10]);
        let m = rpo_dom_mask(&scan_of(&[], 15));
        assert!((1..=15).all(|p| m.contains(p)));
        let m = rpo_dom_mask(&scan_of(&[(7, 10), (20, 23)], 30));
        let off: Vec<usize> = (1..=30).filter(|&p| !m.contains(p)).collect();
        assert_eq!(off, vec![7, 8, 9, 10, 20, 21, 22, 23]);
    }

    #[test]
    fn separation_examples() {
        assert!(check_run_separation(&scan_of(&[(7, 10), (20, 23)], 30), 2));
        assert!(!check_run_separation(&scan_of(&[(7, 10), (13, 16)], 30), 2));
        assert!(check_run_separation(&scan_of(&[(7, 10)], 30), 2));
    }

    #[test]
    fn mirror_run_examples() {
        assert_eq!(mirror_run(iv(1, 30), iv(7, 10), 2).unwrap(), iv(21, 24));
        assert_eq!(mirror_run(iv(1, 30), iv(14, 17), 2).unwrap(), iv(14, 17));
        assert_eq!(mirror_run(iv(5, 13), iv(8, 10), 2).unwrap(), iv(8, 10));
        assert_eq!(mirror_run(iv(5, 13), iv(7, 10), 2), Err(Error::MarginTooSmall));
    }

    #[test]
    fn runs_within_counts() {
        let s = scan_of(&[(7, 10), (20, 23), (30, 33)], 40);
        assert_eq!(s.count_within(1, 40), 3);
        assert_eq!(s.count_within(7, 23), 2);
        assert_eq!(s.count_within(8, 23), 1);
        assert_eq!(s.count_within(11, 19), 0);
    }

    #[test]
    fn agrees_with_clause_evaluation_on_random_words() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let bases = ["a", "ab", "aab", "abc", "ba"];
        for _ in 0..3000 {
            let n = rng.gen_range(1..30);
            let w: Word = Word::new((0..n).map(|_| 10 + rng.gen_range(0..3)).collect());
            let u = word(bases[rng.gen_range(0..bases.len())]);
            let gamma = rng.gen_range(3..5);
            let scan = find_runs(&w, &u, GammaConfig::new(gamma).unwrap()).unwrap();
            let got: Vec<(usize, usize)> = scan.runs.iter().map(|r| (r.i(), r.j())).collect();
            assert_eq!(got, run_border_brute(&w, &u, gamma), "{w} {u}");
            assert!(check_run_separation(&scan, u.len()));
        }
    }
}
