use std::io::Read;
use std::path::Path;

use anyhow::{bail, Context, Result};
use palred::generators::{GeneratorSpec, WordSource};
use palred::{Alphabet, Word};

pub const DEFAULT_HORIZON: usize = 10_000;

pub fn alphabet(symbols: Option<&str>) -> Result<Alphabet> {
    Ok(match symbols {
        Some(s) => Alphabet::new(s)?,
        None => Alphabet::default(),
    })
}

pub fn read_spec(path: &Path) -> Result<GeneratorSpec> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("{} is not a generator spec", path.display()))
}

pub fn build_source(spec: &GeneratorSpec) -> Result<WordSource> {
    Ok(spec.build()?)
}

/// A word from `--word`, or the first line of stdin.
pub fn read_word(word: Option<&str>, alphabet: &Alphabet) -> Result<Word> {
    let text = match word {
        Some(w) => w.to_string(),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("cannot read stdin")?;
            s.lines().next().unwrap_or_default().trim().to_string()
        }
    };
    if text.is_empty() {
        bail!("empty input word");
    }
    Ok(alphabet.parse(&text)?)
}
