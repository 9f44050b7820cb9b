//! Standard palindromes and standard palindromic factorizations.
//!
//! A standard palindrome `(i, j)` has a palindromic one-letter hull
//! `w[i-1, j+1]`, run-free `|u|`-margins at both ends, and run coverage that
//! is symmetric about its center. Such intervals stay palindromes after
//! reduction, which is what makes the palindromic length of reduced factors
//! controllable.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pal_length::{max_pl, min_pal_factorization, pl};
use crate::reduce::Reduction;
use crate::reference;
use crate::runs::{find_runs, rpo_dom_mask, GammaConfig, RpoMask, RunScan};
use crate::word::{is_palindrome, mirror, mirror_interval, Interval, Word};

/// A scanned prefix with its run list and run-free mask.
#[derive(Debug, Clone)]
pub struct RunContext {
    w: Word,
    u: Word,
    cfg: GammaConfig,
    scan: RunScan,
    mask: RpoMask,
}

impl RunContext {
    pub fn new(prefix: Word, u: Word, cfg: GammaConfig) -> Result<Self> {
        let scan = find_runs(&prefix, &u, cfg)?;
        let mask = rpo_dom_mask(&scan);
        Ok(RunContext { w: prefix, u, cfg, scan, mask })
    }

    pub fn word(&self) -> &Word {
        &self.w
    }

    pub fn base(&self) -> &Word {
        &self.u
    }

    pub fn gamma(&self) -> GammaConfig {
        self.cfg
    }

    pub fn scan(&self) -> &RunScan {
        &self.scan
    }

    pub fn u_len(&self) -> usize {
        self.u.len()
    }

    /// Last position whose run coverage is final.
    pub fn limit(&self) -> usize {
        self.scan.complete_upto
    }

    pub fn in_dom(&self, p: usize) -> bool {
        p <= self.limit() && self.mask.contains(p)
    }

    pub fn runs_within(&self, iv: Interval) -> usize {
        self.scan.count_within(iv.i, iv.j)
    }

    /// Run-free mask as a plain vector indexed `1..=limit`.
    pub fn dom_vec(&self) -> Vec<bool> {
        (0..=self.limit()).map(|p| self.in_dom(p)).collect()
    }

    fn check_hull(&self, cand: Interval) -> Result<()> {
        if cand.i < 2 || cand.i > cand.j || cand.j + 1 > self.limit() {
            return Err(Error::HorizonOverflow { i: cand.i, j: cand.j, horizon: self.limit() });
        }
        Ok(())
    }
}

pub fn is_std_pal(ctx: &RunContext, cand: Interval) -> Result<bool> {
    ctx.check_hull(cand)?;
    let (i, j) = (cand.i, cand.j);
    let p = ctx.u_len();
    if !ctx.in_dom(i) || !ctx.in_dom(j) {
        return Ok(false);
    }
    if !is_palindrome(ctx.w.slice(i - 1, j + 1)) {
        return Ok(false);
    }
    if !(i - 1..=(i + p - 1).min(j)).all(|m| ctx.in_dom(m)) {
        return Ok(false);
    }
    if !((j + 1).saturating_sub(p).max(i)..=j + 1).all(|m| ctx.in_dom(m)) {
        return Ok(false);
    }
    Ok((i..=j).all(|m| ctx.in_dom(m) == ctx.in_dom(i + j - m)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StdPalWitness {
    pub interval: Interval,
    pub pal_hull: Interval,
}

impl StdPalWitness {
    pub fn new(ctx: &RunContext, interval: Interval) -> Result<Self> {
        if !is_std_pal(ctx, interval)? {
            return Err(Error::Certification(format!("{interval} is not a standard palindrome")));
        }
        Ok(StdPalWitness {
            interval,
            pal_hull: Interval { i: interval.i - 1, j: interval.j + 1 },
        })
    }
}

/// Every standard palindrome whose hull ends at or before the limit.
pub fn all_std_pals(ctx: &RunContext) -> Vec<StdPalWitness> {
    let w = ctx.w.letters();
    let lim = ctx.limit();
    let mut out = Vec::new();
    // hulls are palindromes of length >= 3 inside [1, lim]; expand around centers
    for c2 in 2..2 * lim {
        // the hull spans 0-based [l, r] with l + r = c2 - 2
        let (mut l, mut r) = ((c2 - 2) / 2, (c2 - 1) / 2);
        while r < lim && w[l] == w[r] {
            if r >= l + 2 {
                let iv = Interval { i: l + 2, j: r };
                if is_std_pal(ctx, iv) == Ok(true) {
                    out.push(StdPalWitness { interval: iv, pal_hull: Interval { i: l + 1, j: r + 1 } });
                }
            }
            if l == 0 {
                break;
            }
            l -= 1;
            r += 1;
        }
    }
    out.sort_by_key(|s| (s.interval.i, s.interval.j));
    out
}

/// The image of a standard palindrome in the reduced word is a palindrome.
pub fn image_is_palindrome(red: &Reduction, sp: &StdPalWitness) -> Result<bool> {
    let img = red.image(sp.interval)?;
    Ok(is_palindrome(red.word.slice(img.i, img.j)))
}

/// Standard palindromes concentric with the palindrome `outer`, shortest first.
pub fn centered_std_pals(ctx: &RunContext, outer: Interval) -> Result<Vec<Interval>> {
    if outer.j > ctx.w.len() || outer.i < 1 || outer.i > outer.j {
        return Err(Error::HorizonOverflow { i: outer.i, j: outer.j, horizon: ctx.w.len() });
    }
    if !is_palindrome(ctx.w.slice(outer.i, outer.j)) {
        return Err(Error::NotPalindrome { i: outer.i, j: outer.j });
    }
    let mut out = Vec::new();
    let mut t = 0;
    while outer.i + t <= outer.j - t {
        let cand = Interval { i: outer.i + t, j: outer.j - t };
        if ctx.check_hull(cand).is_ok() && is_std_pal(ctx, cand)? {
            out.push(cand);
        }
        t += 1;
    }
    out.reverse();
    Ok(out)
}

pub fn max_csp(ctx: &RunContext, outer: Interval) -> Result<Option<Interval>> {
    Ok(centered_std_pals(ctx, outer)?.pop())
}

/// 0 when the intervals intersect, 1 when they are disjoint.
pub fn overlap(a: Interval, b: Interval) -> u8 {
    if (a.i <= b.i && b.i <= a.j) || (b.i <= a.i && a.i <= b.j) {
        0
    } else {
        1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UpsilonTag {
    Hat,
    Bar,
    Neither,
}

/// A palindrome with no centered standard palindrome.
pub fn is_hat(ctx: &RunContext, cand: Interval) -> Result<bool> {
    if !is_palindrome(ctx.w.slice(cand.i, cand.j)) {
        return Ok(false);
    }
    Ok(centered_std_pals(ctx, cand)?.is_empty())
}

/// An enclosing palindrome (at most `bound` letters wider on each side)
/// whose longest centered standard palindrome misses `cand`.
pub fn bar_witness(ctx: &RunContext, cand: Interval, bound: usize) -> Option<(Interval, Interval)> {
    let hi = (cand.j + bound).min(ctx.limit().saturating_sub(1));
    for ib in (cand.i.saturating_sub(bound).max(1)..=cand.i).rev() {
        for jb in cand.j..=hi {
            let outer = Interval { i: ib, j: jb };
            if !is_palindrome(ctx.w.slice(ib, jb)) {
                continue;
            }
            if let Ok(Some(m)) = max_csp(ctx, outer) {
                // the flank must sit strictly between the hull border and the maxCSP
                if overlap(cand, m) == 1 {
                    return Some((outer, m));
                }
            }
        }
    }
    None
}

pub fn classify_upsilon(ctx: &RunContext, cand: Interval, search_bound: usize) -> UpsilonTag {
    if cand.j + 1 <= ctx.limit() && is_hat(ctx, cand) == Ok(true) {
        return UpsilonTag::Hat;
    }
    if bar_witness(ctx, cand, search_bound).is_some() {
        return UpsilonTag::Bar;
    }
    UpsilonTag::Neither
}

/// At most two runs inside a hat interval, at most one inside a bar interval.
pub fn run_count_bound_check(ctx: &RunContext, cand: Interval, tag: UpsilonTag) -> bool {
    let n = ctx.runs_within(cand);
    match tag {
        UpsilonTag::Hat => n <= 2,
        UpsilonTag::Bar => n <= 1,
        UpsilonTag::Neither => true,
    }
}

/// `(k - |u|, k̄ + |u|)` built from a run inside the palindrome `pal`, where
/// `k` is the left end of the run or of its mirror image, whichever is first.
pub fn centered_from_run(ctx: &RunContext, pal: Interval, run: Interval) -> Result<Interval> {
    let p = ctx.u_len();
    if !(pal.i + p < run.i && run.j + p < pal.j) {
        return Err(Error::MarginTooSmall);
    }
    let m = mirror_interval(pal.i, run.i, run.j, pal.j)?;
    let k = run.i.min(m.i);
    let kb = mirror(pal.i, k, pal.j)?;
    Ok(Interval { i: k - p, j: kb + p })
}

/// Cut points `m_1 < … < m_j`, `j <= k`, of a factorization of `w[seg]`
/// into palindromes, or `None` if `PL(w[seg]) >= k`.
pub fn pal_factorizations(w: &Word, k: usize, seg: Interval) -> Option<Vec<usize>> {
    let lens = min_pal_factorization(w.slice(seg.i, seg.j));
    if lens.len() + 1 > k {
        return None;
    }
    let mut cuts = vec![seg.i];
    for l in lens {
        cuts.push(cuts.last().unwrap() + l);
    }
    Some(cuts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PieceKind {
    StdPal,
    BoundedRuns(usize),
}

/// How a standard palindromic factorization was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorizationRoute {
    /// Splitting palindromes around their longest centered standard
    /// palindrome and merging the rest.
    Construction,
    /// The same cut points, thinned to the fewest pieces.
    Minimized,
    /// Shortest factorization over all run-free cut points.
    Search,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StdPalFactorization {
    pub cut_points: Vec<usize>,
    pub piece_kinds: Vec<PieceKind>,
    pub route: FactorizationRoute,
}

fn piece_kind(ctx: &RunContext, a: usize, b: usize, k: usize) -> Option<PieceKind> {
    if !ctx.in_dom(a) || !ctx.in_dom(b) {
        return None;
    }
    let iv = Interval { i: a, j: b };
    if is_std_pal(ctx, iv) == Ok(true) {
        return Some(PieceKind::StdPal);
    }
    let n = ctx.runs_within(iv);
    (n <= 3 * k).then_some(PieceKind::BoundedRuns(n))
}

/// Fewest pieces between consecutive entries of `bounds` (piece `x..y` is
/// `[bounds[x], bounds[y] - 1]`), or `None` if no valid chain exists.
fn shortest_chain(ctx: &RunContext, bounds: &[usize], k: usize) -> Option<Vec<usize>> {
    let m = bounds.len();
    let mut best: Vec<Option<(usize, usize)>> = vec![None; m];
    best[0] = Some((0, 0));
    for y in 1..m {
        for x in 0..y {
            let Some((c, _)) = best[x] else { continue };
            if best[y].is_some_and(|(b, _)| b <= c + 1) {
                continue;
            }
            if piece_kind(ctx, bounds[x], bounds[y] - 1, k).is_some() {
                best[y] = Some((c + 1, x));
            }
        }
    }
    best[m - 1]?;
    let mut path = vec![m - 1];
    while *path.last().unwrap() != 0 {
        path.push(best[*path.last().unwrap()].unwrap().1);
    }
    path.reverse();
    Some(path.into_iter().map(|x| bounds[x]).collect())
}

/// Longest segment for which the fallback search over all cut points runs.
pub const SEARCH_CAP: usize = 512;

/// A standard palindromic factorization of `w[seg]` with at most `k` cut
/// points, certified against the definition before it is returned.
pub fn std_pal_factorization(
    ctx: &RunContext,
    seg: Interval,
    k: usize,
) -> Result<StdPalFactorization> {
    if seg.j + 1 > ctx.limit() {
        return Err(Error::HorizonOverflow { i: seg.i, j: seg.j, horizon: ctx.limit() });
    }
    for p in [seg.i, seg.j] {
        if !ctx.in_dom(p) {
            return Err(Error::NotInRpoDom(p));
        }
    }
    let cuts = pal_factorizations(&ctx.w, k, seg).ok_or_else(|| {
        Error::Certification(format!("{seg} has no palindromic factorization with {k} cut points"))
    })?;

    // split every palindrome around its maxCSP; flanks and hat pieces are "other"
    let mut parts: Vec<(usize, usize, bool)> = Vec::new();
    for pair in cuts.windows(2) {
        let piece = Interval { i: pair[0], j: pair[1] - 1 };
        match max_csp(ctx, piece)? {
            Some(m) if m.i == piece.i => parts.push((piece.i, piece.j, true)),
            Some(m) => {
                parts.push((piece.i, m.i - 1, false));
                parts.push((m.i, m.j, true));
                parts.push((m.j + 1, piece.j, false));
            }
            None => parts.push((piece.i, piece.j, false)),
        }
    }
    let mut bounds = vec![seg.i];
    let mut prev_std = true;
    for &(a, _, std) in &parts {
        if a != seg.i && (std || prev_std) {
            bounds.push(a);
        }
        prev_std = std;
    }
    bounds.push(seg.j + 1);

    let kinds_of = |b: &[usize]| -> Option<Vec<PieceKind>> {
        b.windows(2).map(|p| piece_kind(ctx, p[0], p[1] - 1, k)).collect()
    };
    let mut result = None;
    if bounds.len() <= k {
        if let Some(kinds) = kinds_of(&bounds) {
            result = Some((bounds.clone(), kinds, FactorizationRoute::Construction));
        }
    }
    if result.is_none() {
        if let Some(b) = shortest_chain(ctx, &bounds, k).filter(|b| b.len() <= k) {
            let kinds = kinds_of(&b).expect("chain pieces are valid");
            result = Some((b, kinds, FactorizationRoute::Minimized));
        }
    }
    if result.is_none() && seg.len() <= SEARCH_CAP {
        let all: Vec<usize> = (seg.i..=seg.j + 1)
            .filter(|&p| p == seg.i || p == seg.j + 1 || (ctx.in_dom(p) && ctx.in_dom(p - 1)))
            .collect();
        if let Some(b) = shortest_chain(ctx, &all, k).filter(|b| b.len() <= k) {
            let kinds = kinds_of(&b).expect("chain pieces are valid");
            result = Some((b, kinds, FactorizationRoute::Search));
        }
    }
    let (cut_points, piece_kinds, route) = result.ok_or_else(|| {
        Error::Certification(format!("no factorization of {seg} with at most {k} cut points"))
    })?;
    let f = StdPalFactorization { cut_points, piece_kinds, route };
    certify_std_pal_factorization(ctx, seg, k, &f).map_err(Error::Certification)?;
    Ok(f)
}

/// Checks a factorization clause by clause against the definition, using
/// the slow evaluators only.
pub fn certify_std_pal_factorization(
    ctx: &RunContext,
    seg: Interval,
    k: usize,
    f: &StdPalFactorization,
) -> std::result::Result<(), String> {
    let d = &f.cut_points;
    let g = d.len();
    if g == 0 || g > k {
        return Err(format!("{g} cut points, allowed {k}"));
    }
    if d[0] != seg.i || d[g - 1] != seg.j + 1 {
        return Err(format!("cut points do not span {seg}"));
    }
    if d.windows(2).any(|p| p[0] > p[1]) {
        return Err("cut points not ordered".into());
    }
    if f.piece_kinds.len() != g - 1 {
        return Err("one kind per piece expected".into());
    }
    let dom = ctx.dom_vec();
    let runs: Vec<(usize, usize)> = ctx.scan.runs.iter().map(|r| (r.i(), r.j())).collect();
    let in_dom = |p: usize| p < dom.len() && dom[p];
    for (n, p) in d.windows(2).enumerate() {
        let (a, b) = (p[0], p[1] - 1);
        if !in_dom(a) || !in_dom(b) {
            return Err(format!("piece {} = ({a}, {b}) has an end covered by a run", n + 1));
        }
        let std = reference::std_pal_brute(&ctx.w, &dom, ctx.u_len(), a, b);
        if matches!(f.piece_kinds[n], PieceKind::StdPal) && !std {
            return Err(format!("piece ({a}, {b}) is not a standard palindrome"));
        }
        if !std {
            let count = reference::runs_inside(&runs, a, b);
            if count > 3 * k {
                return Err(format!("piece ({a}, {b}) holds {count} runs, cap {}", 3 * k));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub segment: Interval,
    pub image: Interval,
    pub k: usize,
    pub runs: usize,
    pub pl_reduced: usize,
    /// `3k^3 - 3k^2`.
    pub bound: usize,
    /// `(runs + 1) * maxPL(segment)`.
    pub piecewise_bound: usize,
    pub ok: bool,
    pub piecewise_ok: bool,
}

impl BoundReport {
    pub fn ratio(&self) -> f64 {
        self.pl_reduced as f64 / self.bound as f64
    }
}

pub fn cubic_bound(k: usize) -> usize {
    3 * k * k * k - 3 * k * k
}

/// PL of the reduced image of `seg` against both upper bounds.
pub fn reduced_pl_bound_check(
    ctx: &RunContext,
    red: &Reduction,
    seg: Interval,
) -> Result<BoundReport> {
    let image = red.image(seg)?;
    let mp = max_pl(ctx.w.slice(seg.i, seg.j)) as usize;
    let k = 1 + mp;
    let runs = ctx.runs_within(seg);
    let pl_reduced = pl(red.word.slice(image.i, image.j)) as usize;
    let bound = cubic_bound(k);
    let piecewise_bound = (runs + 1) * mp;
    Ok(BoundReport {
        segment: seg,
        image,
        k,
        runs,
        pl_reduced,
        bound,
        piecewise_bound,
        ok: pl_reduced <= bound,
        piecewise_ok: pl_reduced <= piecewise_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduce::{factorize, ReductionPolicy};
    use crate::word::word;

    fn iv(i: usize, j: usize) -> Interval {
        Interval { i, j }
    }

    fn ctx(s: &str, u: &str) -> RunContext {
        RunContext::new(word(s), word(u), GammaConfig::default()).unwrap()
    }

    #[test]
    fn std_pal_with_inner_run() {
        // "d cabababac d" with the hull "cabababac" at 5..13
        let c = ctx("xxxdcabababacdxxxx", "ab");
        assert_eq!(c.scan().intervals(), vec![iv(8, 10)]);
        assert!(is_std_pal(&c, iv(6, 12)).unwrap());
        assert!(is_std_pal(&c, iv(5, 13)).unwrap());
        assert!(!is_std_pal(&c, iv(7, 11)).unwrap());
        assert!(!is_std_pal(&c, iv(6, 11)).unwrap());
    }

    #[test]
    fn worked_std_pal_fixture() {
        // "d cabababac d" with the run (8,10) after a longer left context
        let s = "eedddcababababacdddee";
        let c = ctx(s, "ab");
        assert_eq!(c.scan().intervals(), vec![iv(9, 13)]);
        assert!(is_std_pal(&c, iv(6, 16)).unwrap());
        let brute_dom = reference::rpo_dom_brute(c.word(), &reference::run_border_brute(c.word(), c.base(), 3));
        assert!(reference::std_pal_brute(c.word(), &brute_dom, 2, 6, 16));
    }

    #[test]
    fn run_free_palindrome_is_standard() {
        let c = ctx("xabcbayzzz", "ab");
        assert!(c.scan().runs.is_empty());
        assert!(is_std_pal(&c, iv(3, 5)).unwrap());
        assert!(!is_std_pal(&c, iv(2, 6)).unwrap());
    }

    #[test]
    fn horizon_errors() {
        let c = ctx("abcba", "ab");
        assert!(matches!(is_std_pal(&c, iv(1, 3)), Err(Error::HorizonOverflow { .. })));
        assert!(matches!(is_std_pal(&c, iv(2, 5)), Err(Error::HorizonOverflow { .. })));
    }

    #[test]
    fn overlap_table() {
        assert_eq!(overlap(iv(1, 5), iv(3, 7)), 0);
        assert_eq!(overlap(iv(3, 7), iv(1, 5)), 0);
        assert_eq!(overlap(iv(1, 2), iv(5, 9)), 1);
        assert_eq!(overlap(iv(5, 9), iv(1, 2)), 1);
    }

    #[test]
    fn centered_listing() {
        let s = "eedddcababababacdddee";
        let c = ctx(s, "ab");
        let outer = iv(3, 19);
        let list = centered_std_pals(&c, outer).unwrap();
        assert!(list.contains(&iv(6, 16)));
        assert!(list.windows(2).all(|p| p[0].len() < p[1].len()));
        assert_eq!(max_csp(&c, outer).unwrap(), list.last().copied());
        assert!(matches!(
            centered_std_pals(&c, iv(1, 4)),
            Err(Error::NotPalindrome { .. })
        ));
    }

    #[test]
    fn three_run_palindrome_has_centered_std_pal() {
        // runs of (ab)^k at three places inside a palindrome
        let left = "cababababcdcbabababac";
        let s = format!("xx{left}e{}xx", left.chars().rev().collect::<String>());
        let c = ctx(&s, "ab");
        let runs = c.scan().intervals();
        let pal = iv(3, s.len() - 2);
        assert!(is_palindrome(c.word().slice(pal.i, pal.j)));
        assert!(c.runs_within(pal) >= 3, "{runs:?}");
        assert!(!centered_std_pals(&c, pal).unwrap().is_empty());
        assert!(run_count_bound_check(&c, pal, classify_upsilon(&c, pal, 4)));
    }

    #[test]
    fn lemma_shape_centering() {
        let s = "eedddcababababacdddee";
        let c = ctx(s, "ab");
        let pal = iv(3, 19);
        let got = centered_from_run(&c, pal, iv(9, 13)).unwrap();
        assert!(is_std_pal(&c, got).unwrap());
        assert_eq!(got.i - pal.i, pal.j - got.j);
    }

    #[test]
    fn classification() {
        let c = ctx("xabcbayzzz", "ab");
        // "abcba": palindrome whose centered (3,5) is standard
        assert!(!is_hat(&c, iv(2, 6)).unwrap());
        assert_eq!(classify_upsilon(&c, iv(2, 6), 3), UpsilonTag::Neither);
        assert_eq!(classify_upsilon(&c, iv(2, 2), 3), UpsilonTag::Hat);
        assert_eq!(bar_witness(&c, iv(2, 2), 4), Some((iv(2, 6), iv(3, 5))));
        let c = ctx("xyzabcd", "ab");
        assert_eq!(classify_upsilon(&c, iv(1, 3), 2), UpsilonTag::Neither);
    }

    #[test]
    fn pal_factorization_examples() {
        assert_eq!(pal_factorizations(&word("abaab"), 3, iv(1, 5)), Some(vec![1, 2, 6]));
        assert_eq!(pal_factorizations(&word("abcba"), 2, iv(1, 5)), Some(vec![1, 6]));
        assert_eq!(pal_factorizations(&word("abc"), 2, iv(1, 3)), None);
        assert_eq!(pal_factorizations(&word("abc"), 4, iv(1, 3)), Some(vec![1, 2, 3, 4]));
    }

    #[test]
    fn std_factorization_run_free() {
        let c = ctx("xyabcabcyzzzzz", "ab");
        let seg = iv(2, 9);
        let k = 1 + max_pl(c.word().slice(2, 9)) as usize;
        let f = std_pal_factorization(&c, seg, k).unwrap();
        assert_eq!(*f.cut_points.first().unwrap(), 2);
        assert_eq!(*f.cut_points.last().unwrap(), 10);
        assert!(certify_std_pal_factorization(&c, seg, k, &f).is_ok());
    }

    #[test]
    fn std_factorization_single_std_pal() {
        let s = "eedddcababababacdddee";
        let c = ctx(s, "ab");
        let seg = iv(6, 16);
        let k = 1 + max_pl(c.word().slice(6, 16)) as usize;
        let f = std_pal_factorization(&c, seg, k).unwrap();
        assert_eq!(f.cut_points, vec![6, 17]);
        assert_eq!(f.piece_kinds, vec![PieceKind::StdPal]);
    }

    #[test]
    fn std_factorization_rejects_covered_ends() {
        let s = "eedddcababababacdddee";
        let c = ctx(s, "ab");
        assert_eq!(std_pal_factorization(&c, iv(10, 16), 9), Err(Error::NotInRpoDom(10)));
    }

    #[test]
    fn certifier_rejects_bad_witnesses() {
        let s = "eedddcababababacdddee";
        let c = ctx(s, "ab");
        let bad = StdPalFactorization {
            cut_points: vec![6, 11, 17],
            piece_kinds: vec![PieceKind::BoundedRuns(0), PieceKind::BoundedRuns(0)],
            route: FactorizationRoute::Construction,
        };
        assert!(certify_std_pal_factorization(&c, iv(6, 16), 5, &bad).is_err());
        let lying = StdPalFactorization {
            cut_points: vec![3, 17],
            piece_kinds: vec![PieceKind::StdPal],
            route: FactorizationRoute::Construction,
        };
        assert!(certify_std_pal_factorization(&c, iv(3, 16), 5, &lying).is_err());
    }

    #[test]
    fn images_of_std_pals_are_palindromes() {
        let s = "eedddcababababababacdddeeabababab";
        let c = ctx(s, "ab");
        let f = factorize(c.word(), c.base(), c.gamma()).unwrap();
        let red = Reduction::new(f, ReductionPolicy::canonical(3, 3).unwrap()).unwrap();
        let all = all_std_pals(&c);
        assert!(all.iter().any(|sp| c.runs_within(sp.interval) > 0));
        for sp in &all {
            assert!(image_is_palindrome(&red, sp).unwrap(), "{:?}", sp);
        }
    }

    #[test]
    fn bound_on_run_free_segment() {
        let s = "xyabcabcyzzzzz";
        let c = ctx(s, "ab");
        let f = factorize(c.word(), c.base(), c.gamma()).unwrap();
        let red = Reduction::new(f, ReductionPolicy::canonical(3, 3).unwrap()).unwrap();
        let rep = reduced_pl_bound_check(&c, &red, iv(2, 9)).unwrap();
        assert_eq!(rep.image, iv(2, 9));
        assert_eq!(rep.pl_reduced, pl(c.word().slice(2, 9)) as usize);
        assert!(rep.pl_reduced < rep.k);
        assert!(rep.ok && rep.piecewise_ok);
        assert_eq!(cubic_bound(2), 12);
    }
}
