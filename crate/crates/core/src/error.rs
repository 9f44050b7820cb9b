use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty word has no root")]
    EmptyWord,
    #[error("base word must be nonempty")]
    EmptyBase,
    #[error("base must be primitive")]
    NotPrimitive,
    #[error("exponent denominator mismatch: denominator {den}, base length {base_len}")]
    DenominatorMismatch { den: usize, base_len: usize },
    #[error("invalid exponent {num}/{den}: need num >= den >= 1")]
    InvalidExponent { num: usize, den: usize },
    #[error("invalid interval ({i}, {j})")]
    InvalidInterval { i: usize, j: usize },
    #[error("position {j} outside [{lo}, {hi}]")]
    MirrorOutOfRange { lo: usize, j: usize, hi: usize },
    #[error("ordering violated: expected {0}")]
    Ordering(String),
    #[error("margin too small for mirror transfer")]
    MarginTooSmall,
    #[error("not a member of Phi_h: {0}")]
    NotInPhi(String),
    #[error("position {0} not in rpoDom")]
    NotInRpoDom(usize),
    #[error("Pi_gamma clause violated: {0}")]
    PiGamma(String),
    #[error("interval ({i}, {j}) exceeds horizon {horizon}")]
    HorizonOverflow { i: usize, j: usize, horizon: usize },
    #[error("interval ({i}, {j}) is not a palindrome")]
    NotPalindrome { i: usize, j: usize },
    #[error("block merges with pumped power")]
    BlockMerges,
    #[error("non-monotone table")]
    NonMonotoneTable,
    #[error("letter {0:?} is not in the alphabet")]
    UnknownLetter(char),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("invalid word source: {0}")]
    InvalidSource(String),
    #[error("standard palindromic factorization certification failed: {0}")]
    Certification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
