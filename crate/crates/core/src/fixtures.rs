//! Seeded random words and structured fixtures for the property suites.
//!
//! Letters are drawn from the default alphabet starting at `a`, so fixtures
//! render as ordinary lowercase strings.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::generators::{pumped_word, ExponentSpec, Morphism, WordSource};
use crate::runs::GammaConfig;
use crate::word::{in_pow_factor, is_primitive, Interval, Letter, Word};

/// Code of `a` in the default alphabet.
pub const A: Letter = 10;

/// Generator for case `case` of a run seeded with `seed`.
pub fn case_rng(seed: u64, case: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case);
    rng
}

pub fn random_word<R: Rng>(rng: &mut R, len: usize, sigma: u8) -> Word {
    Word::new((0..len).map(|_| A + rng.gen_range(0..sigma)).collect())
}

pub fn random_primitive<R: Rng>(rng: &mut R, max_len: usize, sigma: u8) -> Word {
    loop {
        let len = rng.gen_range(1..=max_len);
        let u = random_word(rng, len, sigma);
        if is_primitive(&u) {
            return u;
        }
    }
}

/// The `index`-th word of length `len` over `sigma` letters, in
/// lexicographic order.
pub fn nth_word(mut index: u64, len: usize, sigma: u8) -> Word {
    let mut out = vec![A; len];
    for k in (0..len).rev() {
        out[k] = A + (index % sigma as u64) as Letter;
        index /= sigma as u64;
    }
    Word::new(out)
}

/// Every word of length `1..=max_len` over `sigma` letters.
pub fn all_words(max_len: usize, sigma: u8) -> Vec<Word> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        let count = (sigma as u64).pow(len as u32);
        out.extend((0..count).map(|i| nth_word(i, len, sigma)));
    }
    out
}

/// Every primitive word of length `1..=max_len` over `sigma` letters.
pub fn all_primitive(max_len: usize, sigma: u8) -> Vec<Word> {
    all_words(max_len, sigma).into_iter().filter(is_primitive).collect()
}

/// A prefix of a pumped source together with its base.
#[derive(Debug, Clone)]
pub struct PumpedFixture {
    pub source: WordSource,
    pub u: Word,
    pub prefix: Word,
}

fn random_blocks<R: Rng>(rng: &mut R, u: &Word) -> Vec<Word> {
    let count = rng.gen_range(1..=3);
    let mut blocks = Vec::with_capacity(count);
    while blocks.len() < count {
        let len = rng.gen_range(1..=4);
        let b = random_word(rng, len, 4);
        if pumped_word(vec![b.clone()], u.clone(), ExponentSpec::Constant(3)).is_ok() {
            blocks.push(b);
        }
    }
    blocks
}

fn starts_with_power(w: &Word, u: &Word) -> bool {
    let len = GammaConfig::default().gamma() * u.len();
    w.len() >= len && in_pow_factor(w.slice(1, len), u.letters())
}

/// `B_1 u^{e_1} B_2 u^{e_2} …` with random blocks over `{a,b,c,d}`, a random
/// primitive `u` over `{a,b}` and exponents in `3..=max_exp`.
pub fn pumped_fixture<R: Rng>(rng: &mut R, max_exp: usize, len: usize) -> PumpedFixture {
    loop {
        let u = random_primitive(rng, 3, 2);
        let blocks = random_blocks(rng, &u);
        let n_exp = rng.gen_range(1..=5);
        let exps: Vec<usize> = (0..n_exp).map(|_| rng.gen_range(3..=max_exp.max(3))).collect();
        let Ok(p) = pumped_word(blocks, u.clone(), ExponentSpec::List(exps)) else {
            continue;
        };
        let source = WordSource::pumped(p);
        let prefix = source.prefix(len);
        if !starts_with_power(&prefix, &u) {
            return PumpedFixture { source, u, prefix };
        }
    }
}

/// Like [`pumped_fixture`] but with exponents `3 + offset + t_k` along the
/// Thue-Morse word, so the exponent sequence is not ultimately periodic.
pub fn aperiodic_pumped_fixture<R: Rng>(rng: &mut R, len: usize) -> PumpedFixture {
    loop {
        let u = random_primitive(rng, 3, 2);
        let blocks = random_blocks(rng, &u);
        let offset = rng.gen_range(3..=7);
        let spec = ExponentSpec::MorphicDriven { morphism: Morphism::thue_morse(), offset };
        let Ok(p) = pumped_word(blocks, u.clone(), spec) else {
            continue;
        };
        let source = WordSource::pumped(p);
        let prefix = source.prefix(len);
        if !starts_with_power(&prefix, &u) {
            return PumpedFixture { source, u, prefix };
        }
    }
}

/// A word `pad L c L^R pad'` whose middle part is a palindrome holding
/// mirrored u-runs.
#[derive(Debug, Clone)]
pub struct PalFixture {
    pub word: Word,
    pub u: Word,
    pub pal: Interval,
}

pub fn palindromic_fixture<R: Rng>(rng: &mut R) -> PalFixture {
    let u = random_primitive(rng, 2, 2);
    let mut half: Vec<Letter> = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let gap = rng.gen_range(1..=4);
        half.extend(random_word(rng, gap, 4).into_letters());
        let e = rng.gen_range(2..=6);
        for _ in 0..e {
            half.extend_from_slice(u.letters());
        }
    }
    let tail = rng.gen_range(0..=3);
    half.extend(random_word(rng, tail, 4).into_letters());
    let center: Vec<Letter> = match rng.gen_range(0..3) {
        0 => vec![],
        1 => vec![A + rng.gen_range(0..5)],
        _ => {
            let c = A + rng.gen_range(0..5);
            vec![c, A + rng.gen_range(0..5), c]
        }
    };
    let pad_len = rng.gen_range(1..=4);
    let pad: Vec<Letter> = (0..pad_len).map(|_| *[A + 2, A + 3, A + 4].choose(rng).unwrap()).collect();
    let mut w = pad.clone();
    w.extend_from_slice(&half);
    w.extend_from_slice(&center);
    w.extend(half.iter().rev());
    let pal = Interval { i: pad.len() + 1, j: w.len() };
    let rpad = rng.gen_range(u.len() + 2..=u.len() + 5);
    w.extend(random_word(rng, rpad, 5).into_letters());
    PalFixture { word: Word::new(w), u, pal }
}

/// All palindromic intervals `(i, j)` of `w` with `j <= limit`.
pub fn palindromic_intervals(w: &Word, limit: usize) -> Vec<Interval> {
    let s = w.letters();
    let n = limit.min(s.len());
    let mut out = Vec::new();
    for c2 in 0..2 * n.max(1) - 1 {
        let (mut l, mut r) = (c2 / 2, (c2 + 1) / 2);
        while r < n && s[l] == s[r] {
            out.push(Interval { i: l + 1, j: r + 1 });
            if l == 0 {
                break;
            }
            l -= 1;
            r += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduce::factorize;
    use crate::word::word;

    #[test]
    fn enumeration_counts() {
        assert_eq!(all_words(3, 2).len(), 2 + 4 + 8);
        assert_eq!(nth_word(5, 3, 2), word("bab"));
        // primitive words over {a,b,c} of length <= 3
        assert_eq!(all_primitive(3, 3).len(), 3 + 6 + 24);
    }

    #[test]
    fn fixtures_are_reproducible_and_factorizable() {
        for case in 0..50 {
            let f1 = pumped_fixture(&mut case_rng(9, case), 12, 120);
            let f2 = pumped_fixture(&mut case_rng(9, case), 12, 120);
            assert_eq!(f1.prefix, f2.prefix);
            let f = factorize(&f1.prefix, &f1.u, GammaConfig::default()).unwrap();
            assert_eq!(f.concat().unwrap(), f1.prefix);
        }
    }

    #[test]
    fn pal_fixture_shape() {
        for case in 0..50 {
            let f = palindromic_fixture(&mut case_rng(3, case));
            assert!(f.word.factor(f.pal).is_palindrome());
            assert!(f.word.len() >= f.pal.j + f.u.len() + 2);
        }
    }

    #[test]
    fn palindromic_interval_listing() {
        let w = word("abaa");
        let got = palindromic_intervals(&w, 4);
        let mut want = Vec::new();
        for i in 1..=4 {
            for j in i..=4 {
                if w.slice(i, j).iter().eq(w.slice(i, j).iter().rev()) {
                    want.push(Interval { i, j });
                }
            }
        }
        let mut got_sorted = got.clone();
        got_sorted.sort_by_key(|iv| (iv.i, iv.j));
        assert_eq!(got_sorted, want);
    }
}
