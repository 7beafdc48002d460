use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::nba::{Alphabet, Letter};
use crate::error::{Error, Result};

/// An ultimately periodic word `stem · period^ω`.
///
/// Written as `<stem>:<period>` with comma-separated letters, e.g. `0,1:1,0`
/// for `01(10)^ω` and `:0` for `0^ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct UpWord {
    stem: Vec<Letter>,
    period: Vec<Letter>,
}

impl UpWord {
    pub fn new(stem: Vec<Letter>, period: Vec<Letter>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidWord("the period must be nonempty".into()));
        }
        Ok(UpWord { stem, period })
    }

    /// `period^ω`
    pub fn periodic(period: Vec<Letter>) -> Result<Self> {
        Self::new(Vec::new(), period)
    }

    pub fn stem(&self) -> &[Letter] {
        &self.stem
    }

    pub fn period(&self) -> &[Letter] {
        &self.period
    }

    pub fn len(&self) -> usize {
        self.stem.len() + self.period.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The `i`-th letter of the infinite word.
    pub fn letter_at(&self, i: usize) -> Letter {
        if i < self.stem.len() {
            self.stem[i]
        } else {
            self.period[(i - self.stem.len()) % self.period.len()]
        }
    }

    pub fn check_alphabet(&self, alphabet: Alphabet) -> Result<()> {
        self.stem
            .iter()
            .chain(&self.period)
            .try_for_each(|&a| alphabet.check(a))
    }

    /// Normal form: primitive period, and the shortest stem obtainable from
    /// `x·l·(y·l)^ω = x·(l·y)^ω`.
    pub fn canonicalize(&self) -> UpWord {
        let mut period = primitive_root(&self.period).to_vec();
        let mut stem = self.stem.clone();
        while let (Some(&s), Some(&p)) = (stem.last(), period.last()) {
            if s != p {
                break;
            }
            stem.pop();
            period.rotate_right(1);
        }
        UpWord { stem, period }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonicalize()
    }
}

fn primitive_root(word: &[Letter]) -> &[Letter] {
    let n = word.len();
    (1..=n)
        .filter(|d| n % d == 0)
        .find(|&d| (d..n).all(|i| word[i] == word[i - d]))
        .map(|d| &word[..d])
        .unwrap_or(word)
}

fn write_letters(f: &mut fmt::Formatter<'_>, letters: &[Letter]) -> fmt::Result {
    for (i, a) in letters.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{a}")?;
    }
    Ok(())
}

impl fmt::Display for UpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.stem)?;
        f.write_str(":")?;
        write_letters(f, &self.period)
    }
}

fn parse_letters(s: &str) -> Result<Vec<Letter>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<Letter>()
                .map_err(|_| Error::InvalidWord(format!("bad letter {t:?}")))
        })
        .collect()
}

impl FromStr for UpWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (stem, period) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidWord(format!("missing ':' in {s:?}")))?;
        UpWord::new(parse_letters(stem)?, parse_letters(period)?)
    }
}

impl TryFrom<String> for UpWord {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<UpWord> for String {
    fn from(w: UpWord) -> String {
        w.to_string()
    }
}
