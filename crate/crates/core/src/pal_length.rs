//! Palindromic length.
//!
//! Two independent engines compute the same numbers:
//!
//! * [`pl_oracle`] / [`pl_oracle_profile`]: the quadratic dynamic program
//!   over the set of palindromic suffixes of every prefix. This is the ground
//!   truth the rest of the crate is checked against.
//! * [`pl_profile_online`]: an eertree (palindromic tree) whose nodes carry
//!   series links, i.e. links that skip a whole arithmetic progression of
//!   palindromic suffixes at once. Each prefix is processed in
//!   `O(log n)` series, giving `O(n log n)` overall with linear memory.

use serde::{Deserialize, Serialize};

use crate::generators::WordSource;
use crate::word::Letter;

/// `values[n]` is the palindromic length of the length-`n` prefix; `values[0] = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlProfile {
    pub values: Vec<u32>,
}

impl PlProfile {
    pub fn word_len(&self) -> usize {
        self.values.len() - 1
    }

    /// PL of the length-`n` prefix.
    pub fn at(&self, n: usize) -> u32 {
        self.values[n]
    }

    pub fn last(&self) -> u32 {
        *self.values.last().unwrap()
    }
}

/// Palindromic length by dynamic programming over palindromic suffixes.
pub fn pl_oracle(w: &[Letter]) -> u32 {
    pl_oracle_profile(w).last()
}

/// The oracle dynamic program, reporting the value for every prefix.
pub fn pl_oracle_profile(w: &[Letter]) -> PlProfile {
    oracle_dp(w).0
}

/// One minimal factorization into palindromes, as piece lengths from left to right.
pub fn min_pal_factorization(w: &[Letter]) -> Vec<usize> {
    let (_, back) = oracle_dp(w);
    let mut pieces = Vec::new();
    let mut end = w.len();
    while end > 0 {
        let start = back[end];
        pieces.push(end - start);
        end = start;
    }
    pieces.reverse();
    pieces
}

fn oracle_dp(w: &[Letter]) -> (PlProfile, Vec<usize>) {
    let n = w.len();
    let mut pl = vec![0u32; n + 1];
    let mut back = vec![0usize; n + 1];
    // 0-based starts of the palindromic suffixes of w[..=e]
    let mut starts: Vec<usize> = Vec::new();
    let mut next: Vec<usize> = Vec::new();
    for e in 0..n {
        next.clear();
        for &m in &starts {
            if m >= 1 && w[m - 1] == w[e] {
                next.push(m - 1);
            }
        }
        if e >= 1 && w[e - 1] == w[e] {
            next.push(e - 1);
        }
        next.push(e);
        let (best, from) = next
            .iter()
            .map(|&m| (pl[m] + 1, m))
            .min()
            .expect("single letter is always a palindromic suffix");
        pl[e + 1] = best;
        back[e + 1] = from;
        std::mem::swap(&mut starts, &mut next);
    }
    (PlProfile { values: pl }, back)
}

const NONE: u32 = u32::MAX;

/// Palindromic tree with series links.
///
/// Node 0 is the imaginary root of length -1, node 1 the empty palindrome.
/// Children are kept as sibling lists, so memory is linear in the input
/// regardless of the alphabet size.
#[derive(Debug, Clone)]
pub struct Eertree {
    text: Vec<Letter>,
    len: Vec<i32>,
    link: Vec<u32>,
    diff: Vec<i32>,
    series_link: Vec<u32>,
    first_child: Vec<u32>,
    next_sibling: Vec<u32>,
    edge_letter: Vec<Letter>,
    last: u32,
}

impl Default for Eertree {
    fn default() -> Self {
        Self::new()
    }
}

impl Eertree {
    pub fn new() -> Self {
        Self::with_capacity(0)
    }

    pub fn with_capacity(n: usize) -> Self {
        let mut t = Eertree {
            text: Vec::with_capacity(n),
            len: Vec::with_capacity(n + 2),
            link: Vec::with_capacity(n + 2),
            diff: Vec::with_capacity(n + 2),
            series_link: Vec::with_capacity(n + 2),
            first_child: Vec::with_capacity(n + 2),
            next_sibling: Vec::with_capacity(n + 2),
            edge_letter: Vec::with_capacity(n + 2),
            last: 1,
        };
        t.push_node(-1, 0, 0);
        t.push_node(0, 0, 0);
        t
    }

    fn push_node(&mut self, len: i32, link: u32, letter: Letter) -> u32 {
        let id = self.len.len() as u32;
        self.len.push(len);
        self.link.push(link);
        self.diff.push(0);
        self.series_link.push(link);
        self.first_child.push(NONE);
        self.next_sibling.push(NONE);
        self.edge_letter.push(letter);
        id
    }

    fn child(&self, v: u32, c: Letter) -> Option<u32> {
        let mut e = self.first_child[v as usize];
        while e != NONE {
            if self.edge_letter[e as usize] == c {
                return Some(e);
            }
            e = self.next_sibling[e as usize];
        }
        None
    }

    /// Walks suffix links from `v` until `x v x` is a suffix of the text.
    fn extendable(&self, mut v: u32, c: Letter) -> u32 {
        let i = self.text.len() - 1;
        loop {
            let l = self.len[v as usize];
            if i as i64 - 1 - l as i64 >= 0 && self.text[(i as i64 - 1 - l as i64) as usize] == c {
                return v;
            }
            v = self.link[v as usize];
        }
    }

    /// Appends a letter; returns the node of the longest palindromic suffix.
    pub fn push(&mut self, c: Letter) -> u32 {
        self.text.push(c);
        let parent = self.extendable(self.last, c);
        if let Some(v) = self.child(parent, c) {
            self.last = v;
            return v;
        }
        let new_len = self.len[parent as usize] + 2;
        let link = if new_len == 1 {
            1
        } else {
            let p = self.extendable(self.link[parent as usize], c);
            self.child(p, c).expect("suffix palindrome exists")
        };
        let v = self.push_node(new_len, link, c);
        self.next_sibling[v as usize] = self.first_child[parent as usize];
        self.first_child[parent as usize] = v;
        let d = new_len - self.len[link as usize];
        self.diff[v as usize] = d;
        self.series_link[v as usize] =
            if d == self.diff[link as usize] { self.series_link[link as usize] } else { link };
        self.last = v;
        v
    }

    /// Number of distinct nonempty palindromic factors seen so far.
    pub fn distinct_palindromes(&self) -> usize {
        self.len.len() - 2
    }

    pub fn longest_suffix_palindrome_len(&self) -> usize {
        self.len[self.last as usize].max(0) as usize
    }
}

/// Estimated peak working memory in bytes of [`pl_profile_online`] on `n` letters.
pub fn online_memory_estimate(n: usize) -> usize {
    // per node: len, link, diff, series link, first child, next sibling, edge letter
    let node = 3 * std::mem::size_of::<i32>() + 3 * std::mem::size_of::<u32>() + std::mem::size_of::<u32>() + std::mem::size_of::<Letter>();
    n * std::mem::size_of::<Letter>() + (n + 2) * node + (2 * n + 3) * std::mem::size_of::<u32>()
}

/// Estimated peak working memory in bytes of [`pl_oracle`] on `n` letters,
/// with the palindromic-suffix lists at their worst case.
pub fn oracle_memory_estimate(n: usize) -> usize {
    (n + 1) * (std::mem::size_of::<u32>() + std::mem::size_of::<usize>()) + 2 * n * std::mem::size_of::<usize>()
}

/// Palindromic length of every prefix via the series-link eertree.
pub fn pl_profile_online(w: &[Letter]) -> PlProfile {
    let n = w.len();
    let mut tree = Eertree::with_capacity(n);
    let mut ans = vec![0u32; n + 1];
    // best value over the series headed by each node, refreshed when visited
    let mut series = vec![0u32; n + 2];
    for i in 1..=n {
        tree.push(w[i - 1]);
        let mut v = tree.last;
        let mut best = u32::MAX;
        while tree.len[v as usize] > 0 {
            let vi = v as usize;
            let sl = tree.series_link[vi] as usize;
            let start = i - (tree.len[sl].max(0) as usize + tree.diff[vi] as usize);
            let mut s = ans[start];
            let link = tree.link[vi] as usize;
            if tree.diff[vi] == tree.diff[link] {
                s = s.min(series[link]);
            }
            series[vi] = s;
            best = best.min(s + 1);
            v = tree.series_link[vi];
        }
        ans[i] = best;
    }
    PlProfile { values: ans }
}

/// Palindromic length of a single word through the online engine.
pub fn pl(w: &[Letter]) -> u32 {
    pl_profile_online(w).last()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MaxPlMode {
    /// One online profile per suffix; quadratic up to a log factor.
    #[default]
    ProfilePerSuffix,
    /// The oracle on every factor separately; for cross-checks on short words.
    OraclePerFactor,
}

/// Maximum palindromic length over all factors (0 for the empty word).
pub fn max_pl(w: &[Letter]) -> u32 {
    max_pl_with(w, MaxPlMode::ProfilePerSuffix)
}

pub fn max_pl_with(w: &[Letter], mode: MaxPlMode) -> u32 {
    let n = w.len();
    match mode {
        MaxPlMode::ProfilePerSuffix => (0..n)
            .map(|s| pl_profile_online(&w[s..]).values.into_iter().max().unwrap_or(0))
            .max()
            .unwrap_or(0),
        MaxPlMode::OraclePerFactor => {
            let mut best = 0;
            for a in 0..n {
                for b in a + 1..=n {
                    best = best.max(pl_oracle(&w[a..b]));
                }
            }
            best
        }
    }
}

/// PL and maxPL of every factor of a word, for repeated segment queries.
///
/// Memory is quadratic; intended for windows of at most a few thousand letters.
#[derive(Debug, Clone)]
pub struct FactorPlTable {
    n: usize,
    // pl[a][b - a] = PL(w[a+1 ..= b]) in 0-based half-open terms, for a < b
    pl: Vec<Vec<u32>>,
    // maxpl[a][b - a] = maxPL(w[a+1 ..= b])
    maxpl: Vec<Vec<u32>>,
}

impl FactorPlTable {
    pub fn new(w: &[Letter]) -> Self {
        let n = w.len();
        let pl: Vec<Vec<u32>> = (0..n).map(|a| pl_profile_online(&w[a..]).values).collect();
        let mut maxpl: Vec<Vec<u32>> = (0..n).map(|a| vec![0; n - a + 1]).collect();
        for a in (0..n).rev() {
            for len in 1..=n - a {
                let mut m = pl[a][len];
                m = m.max(maxpl[a][len - 1]);
                if a + 1 < n && len >= 2 {
                    m = m.max(maxpl[a + 1][len - 1]);
                }
                maxpl[a][len] = m;
            }
        }
        FactorPlTable { n, pl, maxpl }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// PL of `w[i, j]` (1-based inclusive).
    pub fn pl(&self, i: usize, j: usize) -> u32 {
        self.pl[i - 1][j + 1 - i]
    }

    /// maxPL of `w[i, j]` (1-based inclusive).
    pub fn max_pl(&self, i: usize, j: usize) -> u32 {
        self.maxpl[i - 1][j + 1 - i]
    }
}

/// Normaliser for the prefix-profile ratio.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalizer {
    Ln,
    Sqrt,
    /// `table[n - 1]` is the normaliser at `n`; missing entries count as zero.
    Table(Vec<f64>),
}

impl Normalizer {
    pub fn eval(&self, n: usize) -> f64 {
        match self {
            Normalizer::Ln => (n as f64).ln(),
            Normalizer::Sqrt => (n as f64).sqrt(),
            Normalizer::Table(t) => t.get(n.wrapping_sub(1)).copied().unwrap_or(0.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioRow {
    pub n: usize,
    pub ppl: u32,
    /// `None` where the normaliser vanishes.
    pub ratio: Option<f64>,
}

/// `(n, PPL(n), PPL(n)/normalizer(n))` for `n = 1..=n_max`.
pub fn ppl_ratio_series(src: &WordSource, n_max: usize, normalizer: &Normalizer) -> Vec<RatioRow> {
    let w = src.prefix(n_max);
    let profile = pl_profile_online(w.letters());
    (1..=w.len())
        .map(|n| {
            let ppl = profile.at(n);
            let d = normalizer.eval(n);
            let ratio = if d == 0.0 || !d.is_finite() { None } else { Some(ppl as f64 / d) };
            RatioRow { n, ppl, ratio }
        })
        .collect()
}
