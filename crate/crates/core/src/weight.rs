//! Weights: sign strings of length `n`.
//!
//! A weight doubles as a contour of a Coxeter element (position `i`, 1-based,
//! is `+` when the label-`i` element sits one rank above label `i-1`) and as
//! a particle configuration `r_0 ... r_{n-1}` with `r_{i-1}` = position `i`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// Rank step: `+1` for `+`, `-1` for `-`.
    pub fn step(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Ordered like the `"+-"` strings they print as (`+` before `-`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Vec<Sign>);

impl Weight {
    pub fn new(signs: Vec<Sign>) -> Self {
        Weight(signs)
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sign at 0-based string position `k` (contour position `k + 1`).
    pub fn get(&self, k: usize) -> Sign {
        self.0[k]
    }

    pub fn set(&mut self, k: usize, s: Sign) {
        self.0[k] = s;
    }

    pub fn parse_for(n: usize, s: &str) -> Result<Self> {
        let w: Weight = s.parse()?;
        if w.len() != n {
            return Err(Error::InvalidWeight(format!(
                "{s:?} has length {} but n = {n}",
                w.len()
            )));
        }
        Ok(w)
    }

    /// All `2^n` weights in string order.
    pub fn all(n: usize) -> Vec<Weight> {
        (0..1usize << n).map(|k| Weight::from_index(n, k)).collect()
    }

    /// Position in [`Weight::all`].
    pub fn index(&self) -> usize {
        self.0
            .iter()
            .fold(0, |acc, &s| (acc << 1) | usize::from(s == Sign::Minus))
    }

    pub fn from_index(n: usize, k: usize) -> Weight {
        Weight(
            (0..n)
                .map(|i| {
                    if (k >> (n - 1 - i)) & 1 == 1 {
                        Sign::Minus
                    } else {
                        Sign::Plus
                    }
                })
                .collect(),
        )
    }

    /// The contour of a per-label rank profile `ranks[0..=n]`.
    pub fn from_ranks(ranks: &[i64]) -> Result<Weight> {
        ranks
            .windows(2)
            .map(|w| match w[1] - w[0] {
                1 => Ok(Sign::Plus),
                -1 => Ok(Sign::Minus),
                d => Err(Error::InvalidWeight(format!(
                    "adjacent ranks differ by {d}, not by one"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }

    /// Rank profile with `ranks[0] = base`, stepping by the signs.
    pub fn ranks_from(&self, base: i64) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.len() + 1);
        out.push(base);
        for s in &self.0 {
            out.push(out.last().unwrap() + s.step());
        }
        out
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

/// Accepts `+` and `-` (also the Unicode minus sign).
impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' | '\u{2212}' => Ok(Sign::Minus),
                other => Err(Error::InvalidWeight(format!(
                    "unexpected character {other:?} in {s:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
