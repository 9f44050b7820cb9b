//! Finite words over small integer alphabets, rational powers and the
//! position arithmetic (1-based, inclusive) shared by the rest of the crate.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Alphabet index of a letter. Letters compare by code.
pub type Letter = u8;

/// Display table used when no alphabet is declared.
pub const DEFAULT_SYMBOLS: &str = "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";

/// Maps letter codes to display characters and back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Default for Alphabet {
    fn default() -> Self {
        Alphabet { symbols: DEFAULT_SYMBOLS.chars().collect() }
    }
}

impl Alphabet {
    pub fn new(symbols: &str) -> Result<Self> {
        let symbols: Vec<char> = symbols.chars().collect();
        if symbols.is_empty() || symbols.len() > 256 {
            return Err(Error::InvalidAlphabet(format!("{} symbols", symbols.len())));
        }
        for (k, c) in symbols.iter().enumerate() {
            if symbols[..k].contains(c) {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol {c:?}")));
            }
        }
        Ok(Alphabet { symbols })
    }

    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn code(&self, c: char) -> Result<Letter> {
        self.symbols
            .iter()
            .position(|&s| s == c)
            .map(|p| p as Letter)
            .ok_or(Error::UnknownLetter(c))
    }

    pub fn symbol(&self, letter: Letter) -> char {
        self.symbols.get(letter as usize).copied().unwrap_or('?')
    }

    pub fn parse(&self, s: &str) -> Result<Word> {
        s.chars().map(|c| self.code(c)).collect::<Result<Vec<_>>>().map(Word)
    }

    pub fn render(&self, w: &[Letter]) -> String {
        w.iter().map(|&l| self.symbol(l)).collect()
    }
}

/// An immutable finite word. The empty word is allowed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    /// Letter at 1-based position `p`.
    pub fn at(&self, p: usize) -> Letter {
        self.0[p - 1]
    }

    /// The factor `w[i, j]` (1-based, inclusive). Empty when `j < i`.
    pub fn slice(&self, i: usize, j: usize) -> &[Letter] {
        if j < i {
            &[]
        } else {
            &self.0[i - 1..j]
        }
    }

    pub fn factor(&self, iv: Interval) -> Word {
        Word(self.slice(iv.i, iv.j).to_vec())
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n.min(self.len())].to_vec())
    }

    pub fn concat(&self, other: &[Letter]) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(other);
        Word(v)
    }

    pub fn reverse(&self) -> Word {
        reverse(self)
    }

    pub fn is_palindrome(&self) -> bool {
        is_palindrome(&self.0)
    }

    /// Largest letter code plus one (0 for the empty word).
    pub fn alphabet_bound(&self) -> usize {
        self.0.iter().map(|&l| l as usize + 1).max().unwrap_or(0)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl From<&[Letter]> for Word {
    fn from(v: &[Letter]) -> Self {
        Word(v.to_vec())
    }
}

impl AsRef<[Letter]> for Word {
    fn as_ref(&self) -> &[Letter] {
        &self.0
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        Alphabet::default().parse(s)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&Alphabet::default().render(&self.0))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:?})", Alphabet::default().render(&self.0))
    }
}

/// Shorthand used throughout tests: parse with the default alphabet.
///
/// Panics on letters outside the default table.
pub fn word(s: &str) -> Word {
    s.parse().expect("letter outside the default alphabet")
}

/// A 1-based inclusive position pair with `i <= j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Interval {
    pub i: usize,
    pub j: usize,
}

impl Interval {
    pub fn new(i: usize, j: usize) -> Result<Self> {
        if i == 0 || j < i {
            return Err(Error::InvalidInterval { i, j });
        }
        Ok(Interval { i, j })
    }

    pub fn len(&self) -> usize {
        self.j - self.i + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, p: usize) -> bool {
        self.i <= p && p <= self.j
    }

    pub fn contains_interval(&self, other: Interval) -> bool {
        self.i <= other.i && other.j <= self.j
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// Exact rational exponent `num/den` with `den` the length of its base.
///
/// Not normalised: `2/2` and `1/1` are different values of the type
/// because they pair with bases of different lengths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QExponent {
    pub num: usize,
    pub den: usize,
}

impl QExponent {
    pub fn new(num: usize, den: usize) -> Result<Self> {
        if den == 0 || num < den {
            return Err(Error::InvalidExponent { num, den });
        }
        Ok(QExponent { num, den })
    }

    pub fn integer(k: usize, den: usize) -> Result<Self> {
        QExponent::new(k * den, den)
    }

    pub fn floor(&self) -> usize {
        self.num / self.den
    }

    /// Letters in the trailing partial copy of the base.
    pub fn remainder(&self) -> usize {
        self.num % self.den
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Rational comparison, independent of the denominator.
    pub fn same_value(&self, other: &QExponent) -> bool {
        self.num * other.den == other.num * self.den
    }
}

impl fmt::Display for QExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

pub fn reverse(w: &Word) -> Word {
    Word(w.0.iter().rev().copied().collect())
}

/// Palindromes are nonempty: the empty word is not one.
pub fn is_palindrome(w: &[Letter]) -> bool {
    if w.is_empty() {
        return false;
    }
    let n = w.len();
    (0..n / 2).all(|k| w[k] == w[n - 1 - k])
}

/// KMP failure function: `fail[k]` is the longest proper border of `w[..k]`.
pub fn failure_function(w: &[Letter]) -> Vec<usize> {
    let n = w.len();
    let mut fail = vec![0usize; n + 1];
    let mut k = 0;
    for q in 1..n {
        while k > 0 && w[q] != w[k] {
            k = fail[k];
        }
        if w[q] == w[k] {
            k += 1;
        }
        fail[q + 1] = k;
    }
    fail
}

/// Smallest period of a nonempty word.
pub fn smallest_period(w: &[Letter]) -> usize {
    let fail = failure_function(w);
    w.len() - fail[w.len()]
}

/// Primitive root and the maximal integer exponent with `root^exponent = w`.
pub fn primitive_root(w: &Word) -> Result<(Word, usize)> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let n = w.len();
    let p = smallest_period(&w.0);
    if n % p == 0 {
        Ok((Word(w.0[..p].to_vec()), n / p))
    } else {
        Ok((w.clone(), 1))
    }
}

pub fn is_primitive(w: &Word) -> bool {
    matches!(primitive_root(w), Ok((_, 1)))
}

/// `u^q`: `floor(q)` copies of `u` then the proper prefix of length `q.num mod |u|`.
pub fn q_power(u: &Word, q: QExponent) -> Result<Word> {
    if u.is_empty() {
        return Err(Error::EmptyBase);
    }
    if q.den != u.len() {
        return Err(Error::DenominatorMismatch { den: q.den, base_len: u.len() });
    }
    Ok(Word((0..q.num).map(|k| u.0[k % u.len()]).collect()))
}

/// Inverse of [`q_power`]: the exponent `q >= 1` with `u^q = v`, if any.
pub fn exponent_of(v: &Word, u: &Word) -> Option<QExponent> {
    if u.is_empty() || v.len() < u.len() {
        return None;
    }
    let n = u.len();
    if v.0.iter().enumerate().all(|(k, &c)| c == u.0[k % n]) {
        Some(QExponent { num: v.len(), den: n })
    } else {
        None
    }
}

/// Whether `t` occurs in `u^∞` or in `(u^R)^∞`.
pub fn in_pow_factor(t: &[Letter], u: &[Letter]) -> bool {
    if t.is_empty() {
        return true;
    }
    if u.is_empty() {
        return false;
    }
    let n = u.len();
    let matches_stream = |base: &dyn Fn(usize) -> Letter| {
        (0..n).any(|r| t.iter().enumerate().all(|(k, &c)| c == base((r + k) % n)))
    };
    matches_stream(&|k| u[k]) || matches_stream(&|k| u[n - 1 - k])
}

/// The position `j̄` in `[i1, i2]` with `j - i1 = i2 - j̄`.
pub fn mirror(i1: usize, j: usize, i2: usize) -> Result<usize> {
    if !(i1 <= j && j <= i2) {
        return Err(Error::MirrorOutOfRange { lo: i1, j, hi: i2 });
    }
    Ok(i1 + i2 - j)
}

/// Mirror image of the interval `[j1, j2]` inside `[i1, i2]`.
pub fn mirror_interval(i1: usize, j1: usize, j2: usize, i2: usize) -> Result<Interval> {
    if !(i1 <= j1 && j1 <= j2 && j2 <= i2) {
        return Err(Error::Ordering(format!("{i1} <= {j1} <= {j2} <= {i2}")));
    }
    let m1 = mirror(i1, j2, i2)?;
    let m2 = mirror(i1, j1, i2)?;
    Ok(Interval { i: m1, j: m2 })
}
