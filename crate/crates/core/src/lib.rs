//! Palindromic length of words and the reduction of long u-powers.
//!
//! Positions are 1-based and intervals inclusive throughout, so `w.slice(i, j)`
//! is `w[i..=j]` in the usual notation of combinatorics on words.

pub mod error;
pub mod fixtures;
pub mod generators;
pub mod pal_length;
pub mod pipeline;
pub mod reduce;
pub mod reference;
pub mod runs;
pub mod std_pal;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use word::{Alphabet, Interval, Letter, QExponent, Word};
