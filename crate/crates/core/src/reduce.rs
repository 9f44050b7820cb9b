//! Factorization of a word along its u-runs and exponent reduction.
//!
//! `w = w_1 z_1^{d_1} w_2 z_2^{d_2} ... trailing`, where each `z_k^{d_k}` is
//! exactly the k-th run and the `w_k` are the gaps between runs. Reducing
//! replaces every `d_k` by `φ(d_k)` for a policy `φ` with
//! `γ-2 <= φ(q) < h` and `q - φ(q)` a nonnegative integer.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::runs::{
    find_runs, pow_factor_stretches, rpo_dom_mask, GammaConfig, PiGammaClause, RunScan,
};
use crate::word::{in_pow_factor, is_primitive, q_power, Alphabet, Interval, QExponent, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub w: Word,
    pub z: Word,
    pub d: QExponent,
    /// Source interval of `z^d`.
    pub run: Interval,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub pieces: Vec<Piece>,
    pub trailing: Word,
    pub source_len: usize,
    pub u: Word,
    pub gamma: usize,
}

impl Factorization {
    pub fn from_scan(prefix: &Word, u: &Word, cfg: GammaConfig, scan: &RunScan) -> Self {
        let mut pieces = Vec::with_capacity(scan.runs.len());
        let mut prev_end = 0;
        for r in &scan.runs {
            pieces.push(Piece {
                w: Word::from(prefix.slice(prev_end + 1, r.i() - 1)),
                z: r.base.clone(),
                d: r.exponent,
                run: r.interval,
            });
            prev_end = r.j();
        }
        Factorization {
            pieces,
            trailing: Word::from(prefix.slice(prev_end + 1, prefix.len())),
            source_len: prefix.len(),
            u: u.clone(),
            gamma: cfg.gamma(),
        }
    }

    /// `w_1 z_1^{d_1} ... trailing`; equals the factorized prefix.
    pub fn concat(&self) -> Result<Word> {
        let mut out = Vec::with_capacity(self.source_len);
        for p in &self.pieces {
            out.extend_from_slice(p.w.letters());
            out.extend(q_power(&p.z, p.d)?.into_letters());
        }
        out.extend_from_slice(self.trailing.letters());
        Ok(Word::new(out))
    }

    pub fn exponents(&self) -> Vec<QExponent> {
        self.pieces.iter().map(|p| p.d).collect()
    }

    /// Length of the prefix whose image under reduction is final: a
    /// PowFactor(u) stretch touching the end may still grow into a run, so at
    /// most `2|u|` of its letters are kept.
    pub fn certified_len(&self) -> usize {
        let p = self.u.len();
        let tail_start = self.source_len - self.trailing.len();
        let tail = self.trailing.letters();
        match pow_factor_stretches(tail, self.u.letters(), p + 1).last() {
            Some(s) if s.j == tail.len() => tail_start + (s.i - 1 + 2 * p).min(tail.len()),
            _ => self.source_len,
        }
    }
}

/// Factorize a prefix satisfying the structural clauses of `Π_γ`.
pub fn factorize(prefix: &Word, u: &Word, cfg: GammaConfig) -> Result<Factorization> {
    if u.is_empty() {
        return Err(Error::PiGamma(PiGammaClause::EmptyBase.to_string()));
    }
    if !is_primitive(u) {
        return Err(Error::PiGamma(PiGammaClause::NotPrimitive.to_string()));
    }
    let len = cfg.gamma() * u.len();
    if prefix.len() >= len && in_pow_factor(prefix.slice(1, len), u.letters()) {
        return Err(Error::PiGamma(PiGammaClause::ForbiddenPowerPrefix.to_string()));
    }
    let scan = find_runs(prefix, u, cfg)?;
    Ok(Factorization::from_scan(prefix, u, cfg, &scan))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "strategy", content = "table")]
pub enum Strategy {
    CanonicalMin,
    ParitySplit,
    /// Exponents not listed fall back to `CanonicalMin`.
    ExplicitTable(Vec<(QExponent, QExponent)>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionPolicy {
    pub gamma: usize,
    pub h: usize,
    pub strategy: Strategy,
}

impl ReductionPolicy {
    pub fn new(gamma: usize, h: usize, strategy: Strategy) -> Result<Self> {
        GammaConfig::new(gamma)?;
        if h < gamma {
            return Err(Error::NotInPhi(format!("h = {h} is below gamma = {gamma}")));
        }
        Ok(ReductionPolicy { gamma, h, strategy })
    }

    pub fn canonical(gamma: usize, h: usize) -> Result<Self> {
        Self::new(gamma, h, Strategy::CanonicalMin)
    }

    pub fn name(&self) -> &'static str {
        match self.strategy {
            Strategy::CanonicalMin => "canonical_min",
            Strategy::ParitySplit => "parity_split",
            Strategy::ExplicitTable(_) => "explicit_table",
        }
    }
}

fn least_admissible(gamma: usize, q: QExponent) -> Result<QExponent> {
    let lo = (gamma - 2) * q.den;
    if q.num < lo {
        return Err(Error::NotInPhi(format!("{q} is below gamma - 2 = {}", gamma - 2)));
    }
    let m = (q.num - lo) / q.den;
    Ok(QExponent { num: q.num - m * q.den, den: q.den })
}

/// Checks both constraints of `Φ_h` for the pair `q -> r` and returns `r`
/// re-expressed over the denominator of `q`.
pub fn check_phi(gamma: usize, h: usize, q: QExponent, r: QExponent) -> Result<QExponent> {
    // q - r = m  <=>  q.num * r.den - r.num * q.den = m * q.den * r.den
    let lhs = q.num as i128 * r.den as i128 - r.num as i128 * q.den as i128;
    let unit = q.den as i128 * r.den as i128;
    if lhs < 0 || lhs % unit != 0 {
        return Err(Error::NotInPhi(format!("{q} - {r} is not a nonnegative integer")));
    }
    let m = (lhs / unit) as usize;
    let out = QExponent { num: q.num - m * q.den, den: q.den };
    if out.num < (gamma - 2) * out.den || out.num >= h * out.den {
        return Err(Error::NotInPhi(format!("{r} outside [{}, {h})", gamma - 2)));
    }
    Ok(out)
}

pub fn phi_apply(policy: &ReductionPolicy, q: QExponent) -> Result<QExponent> {
    let least = least_admissible(policy.gamma, q)?;
    let out = match &policy.strategy {
        Strategy::CanonicalMin => least,
        Strategy::ParitySplit => {
            let bumped = QExponent { num: least.num + least.den, den: least.den };
            if q.floor() % 2 == 1 && bumped.num < policy.h * bumped.den && bumped.num <= q.num {
                bumped
            } else {
                least
            }
        }
        Strategy::ExplicitTable(table) => match table.iter().find(|(k, _)| k.same_value(&q)) {
            Some(&(_, r)) => r,
            None => least,
        },
    };
    check_phi(policy.gamma, policy.h, q, out)
}

/// Reduced exponents `φ(d_k)`, in piece order.
pub fn reduced_exponents(f: &Factorization, policy: &ReductionPolicy) -> Result<Vec<QExponent>> {
    f.pieces.iter().map(|p| phi_apply(policy, p.d)).collect()
}

pub fn reduce(f: &Factorization, policy: &ReductionPolicy) -> Result<Word> {
    let mut out = Vec::with_capacity(f.source_len);
    for p in &f.pieces {
        out.extend_from_slice(p.w.letters());
        out.extend(q_power(&p.z, phi_apply(policy, p.d)?)?.into_letters());
    }
    out.extend_from_slice(f.trailing.letters());
    Ok(Word::new(out))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositionMaps {
    /// `kappa[j]` is the end of the j-th run in the source; `kappa[0] = 0`.
    pub kappa: Vec<usize>,
    /// The same ends in the reduced word.
    pub kappa_bar: Vec<usize>,
    /// `|w_{j+1}|` for `j = 0..K-1`.
    gap_lens: Vec<usize>,
    source_len: usize,
}

impl PositionMaps {
    pub fn new(f: &Factorization, policy: &ReductionPolicy) -> Result<Self> {
        let mut kappa = vec![0];
        let mut kappa_bar = vec![0];
        let mut gap_lens = Vec::with_capacity(f.pieces.len());
        for p in &f.pieces {
            let zl = p.z.len();
            let r = phi_apply(policy, p.d)?;
            kappa.push(kappa.last().unwrap() + p.w.len() + p.d.num * zl / p.d.den);
            kappa_bar.push(kappa_bar.last().unwrap() + p.w.len() + r.num * zl / r.den);
            gap_lens.push(p.w.len());
        }
        Ok(PositionMaps { kappa, kappa_bar, gap_lens, source_len: f.source_len })
    }

    pub fn runs(&self) -> usize {
        self.gap_lens.len()
    }

    pub fn source_len(&self) -> usize {
        self.source_len
    }

    pub fn reduced_len(&self) -> usize {
        self.kappa_bar[self.runs()] + self.source_len - self.kappa[self.runs()]
    }

    pub fn in_domain(&self, i: usize) -> bool {
        self.rpo(i).is_ok()
    }

    /// Image of a source position not covered by a run.
    pub fn rpo(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.source_len {
            return Err(Error::HorizonOverflow { i, j: i, horizon: self.source_len });
        }
        let j = self.kappa.partition_point(|&k| k < i) - 1;
        let f = i - self.kappa[j];
        if j < self.runs() && f > self.gap_lens[j] {
            return Err(Error::NotInRpoDom(i));
        }
        Ok(self.kappa_bar[j] + f)
    }

    /// Inverse of `rpo` on reduced positions not covered by a run.
    pub fn rpo_inverse(&self, r: usize) -> Result<usize> {
        if r == 0 || r > self.reduced_len() {
            return Err(Error::HorizonOverflow { i: r, j: r, horizon: self.reduced_len() });
        }
        let j = self.kappa_bar.partition_point(|&k| k < r) - 1;
        let f = r - self.kappa_bar[j];
        if j < self.runs() && f > self.gap_lens[j] {
            return Err(Error::NotInRpoDom(r));
        }
        Ok(self.kappa[j] + f)
    }

    /// `(i, rpo(i))` over the whole source prefix.
    pub fn rpo_pairs(&self) -> Vec<(usize, usize)> {
        (1..=self.source_len).filter_map(|i| self.rpo(i).ok().map(|r| (i, r))).collect()
    }
}

/// A factorization together with its reduced word and position maps.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub factorization: Factorization,
    pub policy: ReductionPolicy,
    pub word: Word,
    pub maps: PositionMaps,
}

impl Reduction {
    pub fn new(factorization: Factorization, policy: ReductionPolicy) -> Result<Self> {
        let word = reduce(&factorization, &policy)?;
        let maps = PositionMaps::new(&factorization, &policy)?;
        Ok(Reduction { factorization, policy, word, maps })
    }

    /// Image of the source interval `[i, j]`; both ends must be run-free.
    pub fn image(&self, iv: Interval) -> Result<Interval> {
        Ok(Interval { i: self.maps.rpo(iv.i)?, j: self.maps.rpo(iv.j)? })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefactorReport {
    pub ok: bool,
    pub runs: usize,
    pub diagnostic: Option<String>,
}

impl RefactorReport {
    fn fail(runs: usize, msg: String) -> Self {
        RefactorReport { ok: false, runs, diagnostic: Some(msg) }
    }
}

/// Reduce, factorize the result again, and compare: same gaps, same bases,
/// exponents `φ(d_k)`; then check that `rpo` is an increasing bijection
/// between the two run-free position sets.
pub fn refactorize_check(
    prefix: &Word,
    u: &Word,
    cfg: GammaConfig,
    policy: &ReductionPolicy,
) -> Result<RefactorReport> {
    let f = factorize(prefix, u, cfg)?;
    let k = f.pieces.len();
    if f.concat()? != *prefix {
        return Ok(RefactorReport::fail(k, "factorization does not reproduce the prefix".into()));
    }
    let reduced = reduce(&f, policy)?;
    let scan_bar = find_runs(&reduced, u, cfg)?;
    let g = Factorization::from_scan(&reduced, u, cfg, &scan_bar);
    if g.pieces.len() != k {
        return Ok(RefactorReport::fail(
            k,
            format!("{k} runs in the source, {} in the reduced word", g.pieces.len()),
        ));
    }
    for (n, (a, b)) in f.pieces.iter().zip(&g.pieces).enumerate() {
        let want = phi_apply(policy, a.d)?;
        if a.w != b.w || a.z != b.z || b.d != want {
            return Ok(RefactorReport::fail(
                k,
                format!(
                    "piece {}: expected ({}, {}, {}), found ({}, {}, {})",
                    n + 1,
                    a.w,
                    a.z,
                    want,
                    b.w,
                    b.z,
                    b.d
                ),
            ));
        }
    }
    if f.trailing != g.trailing {
        return Ok(RefactorReport::fail(k, "trailing segments differ".into()));
    }
    let maps = PositionMaps::new(&f, policy)?;
    let pairs = maps.rpo_pairs();
    let src: Vec<usize> = rpo_dom_mask(&find_runs(prefix, u, cfg)?).positions().collect();
    let dst: Vec<usize> = rpo_dom_mask(&scan_bar).positions().collect();
    if pairs.iter().map(|p| p.0).ne(src.iter().copied()) {
        return Ok(RefactorReport::fail(k, "rpo domain differs from the run-free positions".into()));
    }
    if pairs.iter().map(|p| p.1).ne(dst.iter().copied()) {
        return Ok(RefactorReport::fail(
            k,
            "rpo is not an increasing bijection onto the reduced run-free positions".into(),
        ));
    }
    Ok(RefactorReport { ok: true, runs: k, diagnostic: None })
}

/// Shortest `(period, preperiod)` describing `w` with `preperiod <= n/3` and
/// at least three full periods after the preperiod, if any.
pub fn periodic_look(w: &[u8]) -> Option<(usize, usize)> {
    let n = w.len();
    if n < 3 {
        return None;
    }
    let rev: Vec<u8> = w.iter().rev().copied().collect();
    let z = z_function(&rev);
    (1..=n / 3).find_map(|p| {
        let periodic_len = p + z[p];
        let pre = n - periodic_len;
        (pre <= n / 3 && periodic_len >= 3 * p).then_some((p, pre))
    })
}

fn z_function(s: &[u8]) -> Vec<usize> {
    let n = s.len();
    let mut z = vec![0; n];
    if n == 0 {
        return z;
    }
    z[0] = n;
    let (mut l, mut r) = (0, 0);
    for i in 1..n {
        if i < r {
            z[i] = (r - i).min(z[i - l]);
        }
        while i + z[i] < n && s[z[i]] == s[i + z[i]] {
            z[i] += 1;
        }
        if i + z[i] > r {
            l = i;
            r = i + z[i];
        }
    }
    z
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AperiodicChoice {
    pub policy: ReductionPolicy,
    /// Every candidate produced a periodic-looking prefix.
    pub warning: bool,
    /// `(period, preperiod)` seen for the returned policy, if periodic-looking.
    pub period: Option<(usize, usize)>,
}

/// Pick a policy whose certified reduced prefix (at most `test_horizon`
/// letters) shows no
/// short eventual period. This is a finite-horizon heuristic, not a proof.
pub fn choose_aperiodic_policy(
    f: &Factorization,
    h: usize,
    test_horizon: usize,
) -> Result<AperiodicChoice> {
    let gamma = f.gamma;
    let mut candidates = vec![
        ReductionPolicy::new(gamma, h, Strategy::CanonicalMin)?,
        ReductionPolicy::new(gamma, h, Strategy::ParitySplit)?,
    ];
    if let Some(table) = perturbing_table(f, gamma, h)? {
        candidates.push(ReductionPolicy::new(gamma, h, Strategy::ExplicitTable(table))?);
    }
    candidates.push(ReductionPolicy::new(gamma, h, Strategy::ExplicitTable(ceiling_table(f, gamma, h)?))?);
    let look = |policy: &ReductionPolicy| -> Result<Option<(usize, usize)>> {
        let r = reduce(f, policy)?;
        let len = certified_reduced_len(f, policy)?.min(test_horizon);
        Ok(periodic_look(&r.letters()[..len]))
    };
    for policy in &candidates {
        if look(policy)?.is_none() {
            return Ok(AperiodicChoice { policy: policy.clone(), warning: false, period: None });
        }
    }
    let policy = candidates.swap_remove(0);
    let period = look(&policy)?;
    Ok(AperiodicChoice { policy, warning: true, period })
}

/// Length of the reduced prefix whose letters are final, the image of
/// [`Factorization::certified_len`].
pub fn certified_reduced_len(f: &Factorization, policy: &ReductionPolicy) -> Result<usize> {
    let maps = PositionMaps::new(f, policy)?;
    let k = maps.runs();
    Ok(maps.kappa_bar[k] + f.certified_len() - maps.kappa[k])
}

/// Moves the most frequent exponent value that has a second admissible
/// value to that value.
fn perturbing_table(
    f: &Factorization,
    gamma: usize,
    h: usize,
) -> Result<Option<Vec<(QExponent, QExponent)>>> {
    let mut counts: Vec<(QExponent, QExponent, usize)> = Vec::new();
    for d in f.exponents() {
        match counts.iter_mut().find(|(q, _, _)| q.same_value(&d)) {
            Some(c) => c.2 += 1,
            None => {
                let least = least_admissible(gamma, d)?;
                let bumped = QExponent { num: least.num + least.den, den: least.den };
                if bumped.num < h * bumped.den && bumped.num <= d.num {
                    counts.push((d, bumped, 1));
                }
            }
        }
    }
    Ok(counts.iter().max_by_key(|c| c.2).map(|&(q, r, _)| vec![(q, r)]))
}

/// Sends every exponent value to its largest admissible value, so values
/// already below `h` are kept.
fn ceiling_table(f: &Factorization, gamma: usize, h: usize) -> Result<Vec<(QExponent, QExponent)>> {
    let mut table: Vec<(QExponent, QExponent)> = Vec::new();
    for d in f.exponents() {
        if table.iter().any(|(q, _)| q.same_value(&d)) {
            continue;
        }
        let mut r = least_admissible(gamma, d)?;
        while r.num + r.den < h * r.den && r.num + r.den <= d.num {
            r.num += r.den;
        }
        table.push((d, r));
    }
    Ok(table)
}

/// No `t^{h+2}` with `t` in `PowFactor(u)` of length `|u|` occurs in `w`.
pub fn power_bound_check(w: &Word, u: &Word, h: usize) -> bool {
    if u.is_empty() {
        return true;
    }
    pow_factor_stretches(w.letters(), u.letters(), (h + 2) * u.len()).is_empty()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceRecord {
    pub w: String,
    pub z: String,
    pub d_num: usize,
    pub d_den: usize,
}

/// Flat, text-friendly view of a factorization and its position maps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationRecord {
    pub pieces: Vec<PieceRecord>,
    pub trailing: String,
    pub kappa: Vec<usize>,
    pub kappa_bar: Vec<usize>,
}

impl FactorizationRecord {
    pub fn new(f: &Factorization, maps: &PositionMaps, alphabet: &Alphabet) -> Self {
        FactorizationRecord {
            pieces: f
                .pieces
                .iter()
                .map(|p| PieceRecord {
                    w: alphabet.render(p.w.letters()),
                    z: alphabet.render(p.z.letters()),
                    d_num: p.d.num,
                    d_den: p.d.den,
                })
                .collect(),
            trailing: alphabet.render(f.trailing.letters()),
            kappa: maps.kappa.clone(),
            kappa_bar: maps.kappa_bar.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{pumped_word, ExponentSpec, WordSource};
    use crate::word::word;

    fn q(num: usize, den: usize) -> QExponent {
        QExponent { num, den }
    }

    fn cfg() -> GammaConfig {
        GammaConfig::default()
    }

    fn canon() -> ReductionPolicy {
        ReductionPolicy::canonical(3, 3).unwrap()
    }

    #[test]
    fn factorize_single_run() {
        let w = word("ccccababababccc");
        let f = factorize(&w, &word("ab"), cfg()).unwrap();
        assert_eq!(f.pieces.len(), 1);
        assert_eq!(f.pieces[0].w, word("ccccab"));
        assert_eq!(f.pieces[0].z, word("ab"));
        assert_eq!(f.pieces[0].d, q(4, 2));
        assert_eq!(f.trailing, word("abccc"));
        assert_eq!(f.concat().unwrap(), w);
    }

    #[test]
    fn factorize_without_runs() {
        let w = word("abcabcab");
        let f = factorize(&w, &word("ab"), cfg()).unwrap();
        assert!(f.pieces.is_empty());
        assert_eq!(f.trailing, w);
    }

    #[test]
    fn factorize_rejects_power_prefix() {
        let err = factorize(&word("abababcc"), &word("ab"), cfg()).unwrap_err();
        assert!(matches!(err, Error::PiGamma(_)));
    }

    #[test]
    fn two_blocks_two_pieces() {
        let p = pumped_word(
            vec![word("cc"), word("dd")],
            word("ab"),
            ExponentSpec::List(vec![4, 6]),
        )
        .unwrap();
        let w = WordSource::pumped(p).prefix(30);
        let f = factorize(&w, &word("ab"), cfg()).unwrap();
        assert_eq!(f.pieces.len(), 2);
        assert!(f.pieces.iter().all(|p| p.w.len() > 2));
        assert_eq!(f.concat().unwrap(), w);
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_apply(&canon(), q(5, 2)).unwrap(), q(3, 2));
        assert_eq!(phi_apply(&canon(), q(2, 2)).unwrap(), q(2, 2));
        assert_eq!(phi_apply(&canon(), q(7, 1)).unwrap(), q(1, 1));
        let parity = ReductionPolicy::new(3, 3, Strategy::ParitySplit).unwrap();
        assert_eq!(phi_apply(&parity, q(7, 1)).unwrap(), q(2, 1));
        assert_eq!(phi_apply(&parity, q(8, 1)).unwrap(), q(1, 1));
        // 5/2 has floor 2: even
        assert_eq!(phi_apply(&parity, q(5, 2)).unwrap(), q(3, 2));
        assert_eq!(phi_apply(&parity, q(7, 2)).unwrap(), q(5, 2));
    }

    #[test]
    fn phi_table_is_validated() {
        let bad = ReductionPolicy::new(3, 3, Strategy::ExplicitTable(vec![(q(7, 1), q(3, 1))]))
            .unwrap();
        let err = phi_apply(&bad, q(7, 1)).unwrap_err();
        assert!(err.to_string().starts_with("not a member of Phi_h"));
        let frac = ReductionPolicy::new(3, 3, Strategy::ExplicitTable(vec![(q(7, 1), q(3, 2))]))
            .unwrap();
        assert!(phi_apply(&frac, q(7, 1)).is_err());
        let good = ReductionPolicy::new(3, 3, Strategy::ExplicitTable(vec![(q(7, 1), q(2, 1))]))
            .unwrap();
        assert_eq!(phi_apply(&good, q(7, 1)).unwrap(), q(2, 1));
        assert_eq!(phi_apply(&good, q(6, 1)).unwrap(), q(1, 1));
    }

    #[test]
    fn phi_below_gamma_minus_two_rejected() {
        let p = ReductionPolicy::canonical(4, 5).unwrap();
        assert!(phi_apply(&p, q(3, 2)).is_err());
        assert_eq!(phi_apply(&p, q(9, 2)).unwrap(), q(5, 2));
    }

    #[test]
    fn reduce_single_run() {
        let w = word("ccccababababccc");
        let f = factorize(&w, &word("ab"), cfg()).unwrap();
        let r = reduce(&f, &canon()).unwrap();
        assert_eq!(r, word("ccccabababccc"));
        let maps = PositionMaps::new(&f, &canon()).unwrap();
        assert_eq!(maps.kappa, vec![0, 10]);
        assert_eq!(maps.kappa_bar, vec![0, 8]);
        assert_eq!(maps.rpo(11).unwrap(), 9);
        assert_eq!(maps.reduced_len(), r.len());
        assert!((1..=6).all(|p| maps.rpo(p).unwrap() == p));
        assert_eq!(maps.rpo(8), Err(Error::NotInRpoDom(8)));
        assert_eq!(Error::NotInRpoDom(8).to_string(), "position 8 not in rpoDom");
        assert_eq!(maps.rpo_inverse(9).unwrap(), 11);
    }

    #[test]
    fn identity_when_exponents_already_small() {
        let w = word("ccccabababccc");
        let f = factorize(&w, &word("ab"), cfg()).unwrap();
        assert_eq!(f.pieces.len(), 1);
        assert_eq!(reduce(&f, &canon()).unwrap(), w);
    }

    #[test]
    fn pumped_ten_reduces_to_small_stretch() {
        let p = pumped_word(vec![word("cc")], word("ab"), ExponentSpec::Constant(10)).unwrap();
        let w = WordSource::pumped(p).prefix(100);
        let f = factorize(&w, &word("ab"), cfg()).unwrap();
        let r = reduce(&f, &canon()).unwrap();
        let maps = PositionMaps::new(&f, &canon()).unwrap();
        assert_eq!(maps.reduced_len(), r.len());
        for e in reduced_exponents(&f, &canon()).unwrap() {
            assert!(e.floor() == 1 || e.floor() == 2);
        }
        assert!(!power_bound_check(&w, &word("ab"), 3));
        assert!(power_bound_check(&r.prefix(f.certified_len() - (w.len() - r.len())), &word("ab"), 3));
    }

    #[test]
    fn refactorization_examples() {
        let p = pumped_word(
            vec![word("c"), word("dc")],
            word("ab"),
            ExponentSpec::List(vec![5, 9, 3, 12]),
        )
        .unwrap();
        let w = WordSource::pumped(p).prefix(120);
        for policy in [canon(), ReductionPolicy::new(3, 3, Strategy::ParitySplit).unwrap()] {
            let rep = refactorize_check(&w, &word("ab"), cfg(), &policy).unwrap();
            assert!(rep.ok, "{:?}", rep.diagnostic);
        }
        let rep = refactorize_check(&word("cccc"), &word("ab"), cfg(), &canon()).unwrap();
        assert!(rep.ok);
        assert_eq!(rep.runs, 0);
    }

    #[test]
    fn power_bound_examples() {
        assert!(power_bound_check(&word("cccccc"), &word("ab"), 3));
        assert!(!power_bound_check(&word("cbababababac"), &word("ab"), 3));
        assert!(power_bound_check(&word("cbabababac"), &word("ab"), 3));
    }

    #[test]
    fn periodic_look_examples() {
        assert_eq!(periodic_look(word("abababababab").letters()), Some((2, 0)));
        assert_eq!(periodic_look(word("cabababababab").letters()), Some((2, 1)));
        let tm = WordSource::thue_morse().prefix(300);
        assert_eq!(periodic_look(tm.letters()), None);
    }

    #[test]
    fn aperiodic_choice_examples() {
        // Thue-Morse parities in the exponents: canonical already aperiodic
        let tm = crate::generators::Morphism::thue_morse();
        let p = pumped_word(
            vec![word("c")],
            word("ab"),
            ExponentSpec::MorphicDriven { morphism: tm, offset: 3 },
        )
        .unwrap();
        let w = WordSource::pumped(p).prefix(2000);
        let f = factorize(&w, &word("ab"), cfg()).unwrap();
        let c = choose_aperiodic_policy(&f, 3, 1500).unwrap();
        assert!(!c.warning);

        // constant exponents over a constant block: nothing breaks the period
        let p = pumped_word(vec![word("c")], word("ab"), ExponentSpec::Constant(6)).unwrap();
        let w = WordSource::pumped(p).prefix(600);
        let f = factorize(&w, &word("ab"), cfg()).unwrap();
        let c = choose_aperiodic_policy(&f, 3, 500).unwrap();
        assert!(c.warning);
        assert_eq!(c.policy.strategy, Strategy::CanonicalMin);
    }

    #[test]
    fn parity_breaks_alternating_period() {
        // run exponents 3,4,3,4,... reduce to a constant under canonical_min
        let p = pumped_word(vec![word("c")], word("ab"), ExponentSpec::Parity { odd: 5, even: 6 })
            .unwrap();
        let w = WordSource::pumped(p).prefix(1200);
        let f = factorize(&w, &word("ab"), cfg()).unwrap();
        let canon_red = reduce(&f, &canon()).unwrap();
        assert!(periodic_look(&canon_red.letters()[..600]).is_some());
        let parity = ReductionPolicy::new(3, 3, Strategy::ParitySplit).unwrap();
        let par_red = reduce(&f, &parity).unwrap();
        let (p_can, _) = periodic_look(&canon_red.letters()[..600]).unwrap();
        let p_par = periodic_look(&par_red.letters()[..600]).map(|x| x.0);
        assert_ne!(Some(p_can), p_par);
    }

    #[test]
    fn record_fields() {
        let w = word("ccccababababccc");
        let f = factorize(&w, &word("ab"), cfg()).unwrap();
        let maps = PositionMaps::new(&f, &canon()).unwrap();
        let rec = FactorizationRecord::new(&f, &maps, &Alphabet::default());
        let v = serde_json::to_value(&rec).unwrap();
        assert_eq!(v["pieces"][0]["w"], "ccccab");
        assert_eq!(v["pieces"][0]["d_num"], 4);
        assert_eq!(v["pieces"][0]["d_den"], 2);
        assert_eq!(v["trailing"], "abccc");
        assert_eq!(v["kappa_bar"][1], 8);
    }
}
