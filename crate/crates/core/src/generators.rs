//! Deterministic sources of infinite words.
//!
//! A [`WordSource`] is an immutable description; [`WordSource::prefix`]
//! materialises any finite prefix. Nothing here uses floating point to decide
//! a letter: mechanical words use integer floors (with an exact integer square
//! root for quadratic slopes) and the slow-growth word uses certified rational
//! bounds on powers of `e`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Alphabet, Letter, Word};

/// A prolongable morphism together with its seed letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    images: Vec<Word>,
    seed: Letter,
}

impl Morphism {
    pub fn new(images: Vec<Word>, seed: Letter) -> Result<Self> {
        let k = images.len();
        if (seed as usize) >= k {
            return Err(Error::InvalidSource(format!("seed letter {seed} has no image")));
        }
        if images.iter().any(|w| w.is_empty()) {
            return Err(Error::InvalidSource("erasing morphisms are not supported".into()));
        }
        if images.iter().flat_map(|w| w.letters()).any(|&c| c as usize >= k) {
            return Err(Error::InvalidSource("image uses a letter without an image".into()));
        }
        let s = &images[seed as usize];
        if s.at(1) != seed || s.len() < 2 {
            return Err(Error::InvalidSource("morphism is not prolongable on the seed".into()));
        }
        Ok(Morphism { images, seed })
    }

    pub fn thue_morse() -> Self {
        Morphism::new(vec![Word::new(vec![0, 1]), Word::new(vec![1, 0])], 0).unwrap()
    }

    pub fn fibonacci() -> Self {
        Morphism::new(vec![Word::new(vec![0, 1]), Word::new(vec![0])], 0).unwrap()
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn seed(&self) -> Letter {
        self.seed
    }

    /// Prefix of the fixed point starting with the seed.
    pub fn prefix(&self, n: usize) -> Vec<Letter> {
        let mut out: Vec<Letter> = self.images[self.seed as usize].letters().to_vec();
        let mut k = 1;
        while out.len() < n {
            let c = out[k];
            out.extend_from_slice(self.images[c as usize].letters());
            k += 1;
        }
        out.truncate(n);
        out
    }
}

/// Slope of a mechanical word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Slope {
    /// `num / den`.
    Rational { num: u64, den: u64 },
    /// `(a + b·√d) / c`.
    Quadratic { a: i64, b: u64, d: u64, c: u64 },
}

impl Slope {
    /// `(√5 − 1) / 2`, the reciprocal of the golden ratio.
    pub fn golden() -> Self {
        Slope::Quadratic { a: -1, b: 1, d: 5, c: 2 }
    }
}

fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

fn floor_div(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

/// Lower mechanical word `s_n = ⌊(n+1)α + ρ⌋ − ⌊nα + ρ⌋`, `n ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mechanical {
    slope: Slope,
    intercept_num: u64,
    intercept_den: u64,
}

impl Mechanical {
    pub fn new(slope: Slope, intercept_num: u64, intercept_den: u64) -> Result<Self> {
        if intercept_den == 0 || intercept_num >= intercept_den {
            return Err(Error::InvalidSource("intercept must lie in [0, 1)".into()));
        }
        match slope {
            Slope::Rational { num, den } => {
                if den == 0 || num == 0 || num >= den {
                    return Err(Error::InvalidSource("slope must lie in (0, 1)".into()));
                }
            }
            Slope::Quadratic { a, b, d, c } => {
                // validation only; letters never depend on this float
                let v = (a as f64 + b as f64 * (d as f64).sqrt()) / c as f64;
                if c == 0 || !(v > 0.0 && v < 1.0) {
                    return Err(Error::InvalidSource("slope must lie in (0, 1)".into()));
                }
            }
        }
        Ok(Mechanical { slope, intercept_num, intercept_den })
    }

    /// `⌊n·α + ρ⌋` in exact integer arithmetic.
    fn floor_at(&self, n: u64) -> i128 {
        let (r, s) = (self.intercept_num as i128, self.intercept_den as i128);
        let n = n as i128;
        match self.slope {
            Slope::Rational { num, den } => {
                let (p, q) = (num as i128, den as i128);
                floor_div(n * p * s + r * q, q * s)
            }
            Slope::Quadratic { a, b, d, c } => {
                let (a, c) = (a as i128, c as i128);
                let big_b = (n * b as i128 * s) as u128;
                let root = isqrt(big_b * big_b * d as u128) as i128;
                floor_div(n * a * s + r * c + root, c * s)
            }
        }
    }

    pub fn letter(&self, n: u64) -> Letter {
        (self.floor_at(n + 1) - self.floor_at(n)) as Letter
    }
}

/// Block lengths `⌈φ⁻¹(2t)⌉`, `t = 1, 2, …` of the slow-growth word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InverseTable {
    /// `φ(n) = ln n`: blocks `⌈e^{2t}⌉`.
    Ln,
    /// `φ(n) = √n`: blocks `4t²`.
    Sqrt,
    /// `φ(n) = n`: blocks `2t`.
    Identity,
    /// Explicit block lengths; past the end the last zero block never closes.
    Explicit(Vec<u64>),
}

/// `⌈e^x⌉` for integer `x ≥ 1`, from rational enclosures of `e`.
pub fn ceil_exp(x: u32) -> u64 {
    let mut terms = 24u32;
    loop {
        let mut sum = BigRational::zero();
        let mut fact = BigInt::one();
        for k in 0..=terms {
            if k > 0 {
                fact *= BigInt::from(k);
            }
            sum += BigRational::new(BigInt::one(), fact.clone());
        }
        // tail of the series is below 1/(K!·K)
        let tail = BigRational::new(BigInt::one(), fact * BigInt::from(terms));
        let lo = num_traits::pow(sum.clone(), x as usize);
        let hi = num_traits::pow(sum + tail, x as usize);
        let (flo, fhi) = (lo.floor(), hi.floor());
        if flo == fhi {
            // e^x is irrational, so the ceiling is one above the floor
            return flo.to_integer().to_u64().expect("e^x fits in u64") + 1;
        }
        terms *= 2;
    }
}

impl InverseTable {
    /// Length of block `t` (1-based), or `None` past an explicit table.
    pub fn block(&self, t: usize) -> Option<u64> {
        match self {
            InverseTable::Ln => {
                assert!(t <= 22, "e^(2t) overflows u64 past t = 22");
                Some(ceil_exp(2 * t as u32))
            }
            InverseTable::Sqrt => Some(4 * (t as u64) * (t as u64)),
            InverseTable::Identity => Some(2 * t as u64),
            InverseTable::Explicit(v) => v.get(t - 1).copied(),
        }
    }

    fn validate(&self) -> Result<()> {
        if let InverseTable::Explicit(v) = self {
            if v.is_empty() || v[0] == 0 || v.windows(2).any(|p| p[1] <= p[0]) {
                return Err(Error::NonMonotoneTable);
            }
        }
        Ok(())
    }
}

/// Exponents `e_k` of the pumped powers `u^{e_k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExponentSpec {
    Constant(usize),
    /// Cycled.
    List(Vec<usize>),
    /// `odd` at odd indices `k`, `even` at even ones (1-based).
    Parity { odd: usize, even: usize },
    /// `e_k = letter_k + offset` along a morphic fixed point.
    MorphicDriven { morphism: Morphism, offset: usize },
}

impl ExponentSpec {
    /// The first `count` exponents.
    pub fn take(&self, count: usize) -> Vec<usize> {
        match self {
            ExponentSpec::Constant(e) => vec![*e; count],
            ExponentSpec::List(v) => (0..count).map(|k| v[k % v.len()]).collect(),
            ExponentSpec::Parity { odd, even } => {
                (1..=count).map(|k| if k % 2 == 1 { *odd } else { *even }).collect()
            }
            ExponentSpec::MorphicDriven { morphism, offset } => {
                morphism.prefix(count).into_iter().map(|c| c as usize + offset).collect()
            }
        }
    }

    fn min_value(&self) -> usize {
        match self {
            ExponentSpec::Constant(e) => *e,
            ExponentSpec::List(v) => v.iter().copied().min().unwrap_or(0),
            ExponentSpec::Parity { odd, even } => *odd.min(even),
            ExponentSpec::MorphicDriven { offset, .. } => *offset,
        }
    }
}

/// Smallest pump exponent accepted by [`pumped_word`]: a `u^e` block yields a
/// run only when `e - 2 >= γ - 2`, and `γ >= 3`.
pub const MIN_PUMP_EXPONENT: usize = 3;

/// `B_1 u^{e_1} B_2 u^{e_2} …` with the blocks cycled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pumped {
    blocks: Vec<Word>,
    u: Word,
    exponents: ExponentSpec,
}

impl Pumped {
    pub fn blocks(&self) -> &[Word] {
        &self.blocks
    }

    pub fn base(&self) -> &Word {
        &self.u
    }

    pub fn exponents(&self) -> &ExponentSpec {
        &self.exponents
    }

    fn prefix(&self, n: usize) -> Vec<Letter> {
        let mut out = Vec::with_capacity(n);
        let mut k = 0;
        let mut exps = Vec::new();
        while out.len() < n {
            out.extend_from_slice(self.blocks[k % self.blocks.len()].letters());
            if exps.len() <= k {
                exps = self.exponents.take(2 * k + 8);
            }
            for _ in 0..exps[k] {
                out.extend_from_slice(self.u.letters());
            }
            k += 1;
        }
        out.truncate(n);
        out
    }
}

/// Maximal stretches `[a, b]` (0-based, inclusive) with period `p`, of length > `p`.
pub(crate) fn periodic_stretches(w: &[Letter], p: usize) -> Vec<(usize, usize)> {
    let n = w.len();
    let mut out = Vec::new();
    if n <= p {
        return out;
    }
    let mut k = 0;
    while k + p < n {
        if w[k] == w[k + p] {
            let a = k;
            while k + p < n && w[k] == w[k + p] {
                k += 1;
            }
            out.push((a, k - 1 + p));
        } else {
            k += 1;
        }
    }
    out
}

/// Builds a pumped source, checking that no block interacts with the powers.
///
/// Each block `B` must keep `u^3 B u^3` free of any `|u|`-periodic stretch
/// other than the two powers themselves (shorter incidental stretches of
/// length below `3|u|` are allowed). This guarantees the runs of the result
/// are exactly the trimmed pumped powers.
pub fn pumped_word(blocks: Vec<Word>, u: Word, exponents: ExponentSpec) -> Result<Pumped> {
    if u.is_empty() || !crate::word::is_primitive(&u) {
        return Err(Error::NotPrimitive);
    }
    if blocks.is_empty() || blocks.iter().any(|b| b.is_empty()) {
        return Err(Error::InvalidSource("pumped words need nonempty blocks".into()));
    }
    if exponents.min_value() < MIN_PUMP_EXPONENT {
        return Err(Error::InvalidSource(format!(
            "pump exponents must be at least {MIN_PUMP_EXPONENT}"
        )));
    }
    if let ExponentSpec::List(v) = &exponents {
        if v.is_empty() {
            return Err(Error::InvalidSource("empty exponent list".into()));
        }
    }
    let p = u.len();
    let cube: Vec<Letter> = u.letters().repeat(3);
    for b in &blocks {
        let w = [cube.as_slice(), b.letters(), cube.as_slice()].concat();
        let right_start = 3 * p + b.len();
        for (a, e) in periodic_stretches(&w, p) {
            let is_left = a == 0 && e == 3 * p - 1;
            let is_right = a == right_start && e == w.len() - 1;
            if is_left || is_right {
                continue;
            }
            if a == 0 || e == w.len() - 1 || e + 1 - a >= 3 * p {
                return Err(Error::BlockMerges);
            }
        }
    }
    Ok(Pumped { blocks, u, exponents })
}

/// The slow-growth word `0^{L_1} 1 0^{L_2} 1 …` with `L_t = ⌈φ⁻¹(2t)⌉`.
pub fn slow_pl_word(table: InverseTable) -> Result<WordSource> {
    table.validate()?;
    Ok(WordSource::new(SourceKind::SlowPl(table)))
}

fn slow_pl_prefix(table: &InverseTable, n: usize) -> Vec<Letter> {
    let mut out = Vec::with_capacity(n);
    let mut t = 1;
    while out.len() < n {
        match table.block(t) {
            Some(len) => {
                let take = (len as usize).min(n - out.len());
                out.resize(out.len() + take, 0);
                if out.len() < n {
                    out.push(1);
                }
            }
            None => out.resize(n, 0),
        }
        t += 1;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SourceKind {
    Morphic(Morphism),
    Sturmian(Mechanical),
    SlowPl(InverseTable),
    UltimatelyPeriodic { preperiod: Word, period: Word },
    /// A finite word; prefixes past its end are truncated.
    Literal(Word),
    Pumped(Pumped),
}

/// A deterministic, indexable description of an infinite word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordSource {
    kind: SourceKind,
    alphabet: Alphabet,
}

impl WordSource {
    pub fn new(kind: SourceKind) -> Self {
        WordSource { kind, alphabet: Alphabet::default() }
    }

    pub fn with_alphabet(mut self, alphabet: Alphabet) -> Self {
        self.alphabet = alphabet;
        self
    }

    pub fn kind(&self) -> &SourceKind {
        &self.kind
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn thue_morse() -> Self {
        WordSource::new(SourceKind::Morphic(Morphism::thue_morse()))
    }

    pub fn fibonacci() -> Self {
        WordSource::new(SourceKind::Morphic(Morphism::fibonacci()))
    }

    pub fn ultimately_periodic(preperiod: Word, period: Word) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidSource("empty period".into()));
        }
        Ok(WordSource::new(SourceKind::UltimatelyPeriodic { preperiod, period }))
    }

    pub fn literal(w: Word) -> Self {
        WordSource::new(SourceKind::Literal(w))
    }

    pub fn pumped(p: Pumped) -> Self {
        WordSource::new(SourceKind::Pumped(p))
    }

    pub fn sturmian(m: Mechanical) -> Self {
        WordSource::new(SourceKind::Sturmian(m))
    }

    /// The length-`n` prefix (shorter only for a literal source).
    pub fn prefix(&self, n: usize) -> Word {
        let letters = match &self.kind {
            SourceKind::Morphic(m) => m.prefix(n),
            SourceKind::Sturmian(m) => (0..n as u64).map(|k| m.letter(k)).collect(),
            SourceKind::SlowPl(t) => slow_pl_prefix(t, n),
            SourceKind::UltimatelyPeriodic { preperiod, period } => (0..n)
                .map(|k| {
                    if k < preperiod.len() {
                        preperiod.letters()[k]
                    } else {
                        period.letters()[(k - preperiod.len()) % period.len()]
                    }
                })
                .collect(),
            SourceKind::Literal(w) => w.letters()[..n.min(w.len())].to_vec(),
            SourceKind::Pumped(p) => p.prefix(n),
        };
        Word::new(letters)
    }

    /// Letter at 1-based position `n`; `None` only past the end of a literal.
    pub fn get(&self, n: usize) -> Option<Letter> {
        assert!(n >= 1, "positions are 1-based");
        match &self.kind {
            SourceKind::Sturmian(m) => Some(m.letter(n as u64 - 1)),
            SourceKind::Literal(w) => w.letters().get(n - 1).copied(),
            _ => self.prefix(n).letters().last().copied(),
        }
    }

    pub fn render(&self, w: &Word) -> String {
        self.alphabet.render(w.letters())
    }
}

/// Serialised form of a [`WordSource`]: `{kind, parameters, alphabet}`.
///
/// Words inside `parameters` are strings over `alphabet` (default: digits,
/// then lower- and upper-case letters).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    #[serde(flatten)]
    pub kind: KindSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "parameters", rename_all = "snake_case")]
pub enum KindSpec {
    Morphic { images: Vec<String>, seed: String },
    Sturmian { slope: Slope, intercept: (u64, u64) },
    SlowPl { table: InverseTable },
    UltimatelyPeriodic { preperiod: String, period: String },
    Literal { word: String },
    Pumped { blocks: Vec<String>, u: String, exponents: ExponentSpecSer },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExponentSpecSer {
    Constant(usize),
    List(Vec<usize>),
    Parity { odd: usize, even: usize },
    MorphicDriven { images: Vec<String>, seed: String, offset: usize },
}

fn single_letter(alphabet: &Alphabet, s: &str) -> Result<Letter> {
    let w = alphabet.parse(s)?;
    if w.len() != 1 {
        return Err(Error::InvalidSource(format!("expected a single letter, got {s:?}")));
    }
    Ok(w.at(1))
}

fn morphism_from(alphabet: &Alphabet, images: &[String], seed: &str) -> Result<Morphism> {
    let images = images.iter().map(|s| alphabet.parse(s)).collect::<Result<Vec<_>>>()?;
    Morphism::new(images, single_letter(alphabet, seed)?)
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<WordSource> {
        let alphabet = match &self.alphabet {
            Some(a) => Alphabet::new(a)?,
            None => Alphabet::default(),
        };
        let kind = match &self.kind {
            KindSpec::Morphic { images, seed } => {
                SourceKind::Morphic(morphism_from(&alphabet, images, seed)?)
            }
            KindSpec::Sturmian { slope, intercept } => {
                SourceKind::Sturmian(Mechanical::new(*slope, intercept.0, intercept.1)?)
            }
            KindSpec::SlowPl { table } => {
                table.validate()?;
                SourceKind::SlowPl(table.clone())
            }
            KindSpec::UltimatelyPeriodic { preperiod, period } => {
                let period = alphabet.parse(period)?;
                if period.is_empty() {
                    return Err(Error::InvalidSource("empty period".into()));
                }
                SourceKind::UltimatelyPeriodic { preperiod: alphabet.parse(preperiod)?, period }
            }
            KindSpec::Literal { word } => SourceKind::Literal(alphabet.parse(word)?),
            KindSpec::Pumped { blocks, u, exponents } => {
                let blocks = blocks.iter().map(|b| alphabet.parse(b)).collect::<Result<Vec<_>>>()?;
                let exponents = match exponents {
                    ExponentSpecSer::Constant(e) => ExponentSpec::Constant(*e),
                    ExponentSpecSer::List(v) => ExponentSpec::List(v.clone()),
                    ExponentSpecSer::Parity { odd, even } => {
                        ExponentSpec::Parity { odd: *odd, even: *even }
                    }
                    ExponentSpecSer::MorphicDriven { images, seed, offset } => {
                        ExponentSpec::MorphicDriven {
                            morphism: morphism_from(&Alphabet::default(), images, seed)?,
                            offset: *offset,
                        }
                    }
                };
                SourceKind::Pumped(pumped_word(blocks, alphabet.parse(u)?, exponents)?)
            }
        };
        Ok(WordSource { kind, alphabet })
    }
}

impl WordSource {
    /// Inverse of [`GeneratorSpec::build`].
    pub fn to_spec(&self) -> GeneratorSpec {
        let a = &self.alphabet;
        let r = |w: &Word| a.render(w.letters());
        let morph = |m: &Morphism, alpha: &Alphabet| {
            (
                m.images().iter().map(|w| alpha.render(w.letters())).collect::<Vec<_>>(),
                alpha.symbol(m.seed()).to_string(),
            )
        };
        let kind = match &self.kind {
            SourceKind::Morphic(m) => {
                let (images, seed) = morph(m, a);
                KindSpec::Morphic { images, seed }
            }
            SourceKind::Sturmian(m) => KindSpec::Sturmian {
                slope: m.slope,
                intercept: (m.intercept_num, m.intercept_den),
            },
            SourceKind::SlowPl(t) => KindSpec::SlowPl { table: t.clone() },
            SourceKind::UltimatelyPeriodic { preperiod, period } => {
                KindSpec::UltimatelyPeriodic { preperiod: r(preperiod), period: r(period) }
            }
            SourceKind::Literal(w) => KindSpec::Literal { word: r(w) },
            SourceKind::Pumped(p) => KindSpec::Pumped {
                blocks: p.blocks.iter().map(r).collect(),
                u: r(&p.u),
                exponents: match &p.exponents {
                    ExponentSpec::Constant(e) => ExponentSpecSer::Constant(*e),
                    ExponentSpec::List(v) => ExponentSpecSer::List(v.clone()),
                    ExponentSpec::Parity { odd, even } => {
                        ExponentSpecSer::Parity { odd: *odd, even: *even }
                    }
                    ExponentSpec::MorphicDriven { morphism, offset } => {
                        let (images, seed) = morph(morphism, &Alphabet::default());
                        ExponentSpecSer::MorphicDriven { images, seed, offset: *offset }
                    }
                },
            },
        };
        let alphabet = if *a == Alphabet::default() {
            None
        } else {
            Some((0..a.size()).map(|k| a.symbol(k as Letter)).collect())
        };
        GeneratorSpec { kind, alphabet }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::word;

    #[test]
    fn thue_morse_prefix() {
        assert_eq!(WordSource::thue_morse().prefix(8).to_string(), "01101001");
        assert_eq!(WordSource::thue_morse().prefix(16).to_string(), "0110100110010110");
    }

    #[test]
    fn ultimately_periodic_prefix() {
        let s = WordSource::ultimately_periodic(word("ab"), word("c")).unwrap();
        assert_eq!(s.prefix(5), word("abccc"));
    }

    #[test]
    fn slow_pl_blocks() {
        let s = slow_pl_word(InverseTable::Ln).unwrap();
        assert_eq!(s.prefix(6).to_string(), "000000");
        let blocks: Vec<u64> = (1..=3).map(|t| InverseTable::Ln.block(t).unwrap()).collect();
        assert_eq!(blocks, [8, 55, 404]);
        assert_eq!(s.prefix(10).to_string(), "0000000010");
        let id = slow_pl_word(InverseTable::Identity).unwrap();
        assert_eq!(id.prefix(12).to_string(), "001000010000");
        assert_eq!(slow_pl_word(InverseTable::Explicit(vec![3, 2])), Err(Error::NonMonotoneTable));
    }

    #[test]
    fn ceil_exp_matches_known_values() {
        // e^2 = 7.389…, e^4 = 54.598…, e^6 = 403.428…, e^10 = 22026.465…
        assert_eq!(ceil_exp(2), 8);
        assert_eq!(ceil_exp(4), 55);
        assert_eq!(ceil_exp(6), 404);
        assert_eq!(ceil_exp(10), 22027);
        assert_eq!(ceil_exp(20), 485_165_196);
    }

    #[test]
    fn slow_pl_contains_every_zero_power() {
        let w = slow_pl_word(InverseTable::Identity).unwrap().prefix(200);
        let s = w.to_string();
        for k in 1..=20 {
            assert!(s.contains(&"0".repeat(k)));
        }
    }

    #[test]
    fn sturmian_rational_and_golden() {
        let m = Mechanical::new(Slope::Rational { num: 2, den: 5 }, 0, 1).unwrap();
        let w = WordSource::sturmian(m).prefix(10);
        // ⌊(n+1)·2/5⌋ − ⌊n·2/5⌋ for n = 0..9
        assert_eq!(w.to_string(), "0010100101");
        // the golden mechanical word with zero intercept is 1 followed by the
        // Fibonacci word with letters exchanged
        let g = WordSource::sturmian(Mechanical::new(Slope::golden(), 0, 1).unwrap()).prefix(200);
        let fib = WordSource::fibonacci().prefix(199);
        let swapped: Vec<Letter> = fib.letters().iter().map(|&c| 1 - c).collect();
        assert_eq!(g.letters()[0], 0);
        assert_eq!(&g.letters()[1..], &swapped[..]);
    }

    #[test]
    fn pumped_examples() {
        let p = pumped_word(vec![word("cccc"), word("ccc")], word("ab"), ExponentSpec::Constant(4))
            .unwrap();
        assert_eq!(WordSource::pumped(p).prefix(15), word("ccccababababccc"));
        assert_eq!(ExponentSpec::Parity { odd: 3, even: 4 }.take(5), vec![3, 4, 3, 4, 3]);
        let tm = ExponentSpec::MorphicDriven { morphism: Morphism::thue_morse(), offset: 3 };
        assert_eq!(tm.take(8), vec![3, 4, 4, 3, 4, 3, 3, 4]);
        assert_eq!(
            pumped_word(vec![word("cb")], word("ab"), ExponentSpec::Constant(4)),
            Err(Error::BlockMerges)
        );
        assert_eq!(
            pumped_word(vec![word("ac")], word("ab"), ExponentSpec::Constant(4)),
            Err(Error::BlockMerges)
        );
        assert!(pumped_word(vec![word("ca")], word("ab"), ExponentSpec::Constant(4)).is_ok());
        assert!(pumped_word(vec![word("cababababc")], word("ab"), ExponentSpec::Constant(4)).is_err());
    }

    #[test]
    fn prefixes_are_coherent() {
        let sources = vec![
            WordSource::thue_morse(),
            WordSource::fibonacci(),
            slow_pl_word(InverseTable::Sqrt).unwrap(),
            WordSource::sturmian(Mechanical::new(Slope::golden(), 1, 3).unwrap()),
        ];
        for s in sources {
            let long = s.prefix(300);
            for n in [0, 1, 7, 64, 299] {
                assert_eq!(s.prefix(n).letters(), &long.letters()[..n]);
            }
            assert_eq!(s.get(64), Some(long.at(64)));
        }
    }

    #[test]
    fn morphism_validation() {
        assert!(Morphism::new(vec![word("10"), word("01")], 0).is_err());
        assert!(Morphism::new(vec![word("0"), word("01")], 0).is_err());
        assert!(Morphism::new(vec![word("02"), word("1")], 0).is_err());
    }
}
