//! Dynkin diagram data for type `D_{n+1}^{(2)}` (Coxeter type affine `C_n`)
//! and word primitives over its generators `0..=n`.
//!
//! Words are read with the leftmost letter as the *maximal* element of the
//! associated heap; when a word acts on a module from the left, its rightmost
//! letter acts first.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The Coxeter/Dynkin data of the diagram. Cheap to copy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Diagram {
    n: usize,
    reversed_arrows: bool,
}

impl Diagram {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::RankTooSmall(n));
        }
        Ok(Diagram {
            n,
            reversed_arrows: false,
        })
    }

    /// The same Coxeter graph with both double-edge arrows pointing inward
    /// (the affine `C_n` diagram). Only used to exercise the verification
    /// harness with a deliberately wrong orientation.
    pub fn with_reversed_arrows(n: usize) -> Result<Self> {
        let mut d = Self::new(n)?;
        d.reversed_arrows = true;
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_generators(&self) -> usize {
        self.n + 1
    }

    pub fn generators(&self) -> std::ops::RangeInclusive<usize> {
        0..=self.n
    }

    pub fn has_reversed_arrows(&self) -> bool {
        self.reversed_arrows
    }

    /// Coxeter exponent `m_ij`.
    pub fn bond(&self, i: usize, j: usize) -> u8 {
        let n = self.n;
        if i == j {
            1
        } else if i.abs_diff(j) > 1 {
            2
        } else if (i.min(j), i.max(j)) == (0, 1) || (i.min(j), i.max(j)) == (n - 1, n) {
            4
        } else {
            3
        }
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i.abs_diff(j) == 1
    }

    /// Equal or adjacent labels; such letters never commute.
    pub fn linked(&self, i: usize, j: usize) -> bool {
        i.abs_diff(j) <= 1
    }

    pub fn commute(&self, i: usize, j: usize) -> bool {
        i.abs_diff(j) > 1
    }

    /// Whether the double edge `{i, j}` carries an arrow pointing at `j`.
    /// Always false for single edges and non-edges.
    pub fn arrow_toward(&self, i: usize, j: usize) -> bool {
        if !self.adjacent(i, j) || self.bond(i, j) != 4 {
            return false;
        }
        // arrows point at the endpoints 0 and n
        let toward_end = (i == 1 && j == 0) || (i == self.n - 1 && j == self.n);
        toward_end != self.reversed_arrows
    }

    /// `s_i s_j s_i` is a forbidden subword.
    pub fn forbidden_triple(&self, i: usize, j: usize) -> bool {
        self.adjacent(i, j) && (self.bond(i, j) == 3 || self.arrow_toward(i, j))
    }

    pub fn check_letter(&self, letter: usize) -> Result<()> {
        if letter > self.n {
            Err(Error::LetterOutOfRange { letter, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        w.iter().try_for_each(|&l| self.check_letter(l))
    }
}

/// A word in the generators; the empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, usize> {
        self.0.iter()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Sorted distinct letters.
    pub fn support(&self) -> Vec<usize> {
        let mut s = self.0.clone();
        s.sort_unstable();
        s.dedup();
        s
    }

    pub fn has_full_support(&self, d: Diagram) -> bool {
        self.support().len() == d.num_generators()
    }

    pub fn count(&self, letter: usize) -> usize {
        self.0.iter().filter(|&&l| l == letter).count()
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "]")
    }
}

/// Parses comma-separated indices (`"2,1,0"`), optionally bracketed.
/// The empty string is the empty word.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
        if t.is_empty() {
            return Ok(Word::empty());
        }
        t.split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad letter {x:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

pub fn build_diagram(n: usize) -> Result<Diagram> {
    Diagram::new(n)
}

/// Canonical representative of the commutation class of `w`.
///
/// Repeatedly strips the minimal heap elements (letters with no equal or
/// adjacent letter to their right among what remains), sorts each stripped
/// layer ascending, and emits layers so the first stripped layer is
/// rightmost.
pub fn cf_normal_form(d: Diagram, w: &Word) -> Result<Word> {
    d.check_word(w)?;
    Ok(normal_form_unchecked(d, w))
}

pub(crate) fn normal_form_unchecked(d: Diagram, w: &Word) -> Word {
    let letters = w.letters();
    let mut alive = vec![true; letters.len()];
    let mut remaining = letters.len();
    let mut layers: Vec<Vec<usize>> = Vec::new();
    while remaining > 0 {
        let mut layer = Vec::new();
        for i in 0..letters.len() {
            if !alive[i] {
                continue;
            }
            let blocked =
                (i + 1..letters.len()).any(|j| alive[j] && d.linked(letters[i], letters[j]));
            if !blocked {
                layer.push(i);
            }
        }
        for &i in &layer {
            alive[i] = false;
        }
        remaining -= layer.len();
        let mut labels: Vec<usize> = layer.into_iter().map(|i| letters[i]).collect();
        labels.sort_unstable();
        layers.push(labels);
    }
    Word(layers.into_iter().rev().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{HashSet, VecDeque};

    fn w(v: &[usize]) -> Word {
        Word(v.to_vec())
    }

    /// Every word reachable by swapping adjacent commuting letters.
    fn commutation_orbit(d: Diagram, w: &Word) -> HashSet<Word> {
        let mut seen = HashSet::from([w.clone()]);
        let mut queue = VecDeque::from([w.clone()]);
        while let Some(x) = queue.pop_front() {
            for k in 0..x.len().saturating_sub(1) {
                if d.commute(x.0[k], x.0[k + 1]) {
                    let mut y = x.clone();
                    y.0.swap(k, k + 1);
                    if seen.insert(y.clone()) {
                        queue.push_back(y);
                    }
                }
            }
        }
        seen
    }

    fn all_words(n: usize, len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|x| {
                    (0..=n).map(move |l| {
                        let mut y = x.clone();
                        y.0.push(l);
                        y
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn bonds() {
        let d = Diagram::new(2).unwrap();
        assert_eq!(d.bond(0, 1), 4);
        assert_eq!(d.bond(1, 2), 4);
        assert_eq!(d.bond(0, 2), 2);
        let d = Diagram::new(4).unwrap();
        assert_eq!(d.bond(1, 2), 3);
        for i in 0..=4 {
            assert_eq!(d.bond(i, i), 1);
        }
        assert_eq!(Diagram::new(1), Err(Error::RankTooSmall(1)));
    }

    #[test]
    fn bond_table_matches_case_analysis() {
        for n in 2..=6 {
            let d = Diagram::new(n).unwrap();
            for i in 0..=n {
                for j in 0..=n {
                    let expected = if i == j {
                        1
                    } else if i.abs_diff(j) > 1 {
                        2
                    } else if (1..n).contains(&i) && (1..n).contains(&j) {
                        3
                    } else {
                        4
                    };
                    assert_eq!(d.bond(i, j), expected, "n={n} ({i},{j})");
                    assert_eq!(d.bond(i, j), d.bond(j, i));
                }
            }
        }
    }

    #[test]
    fn arrows_point_at_endpoints() {
        for n in 2..=5 {
            let d = Diagram::new(n).unwrap();
            assert!(d.arrow_toward(1, 0));
            assert!(!d.arrow_toward(0, 1));
            assert!(d.arrow_toward(n - 1, n));
            assert!(!d.arrow_toward(n, n - 1));
            assert!(d.forbidden_triple(1, 0));
            assert!(!d.forbidden_triple(0, 1));
            assert!(d.forbidden_triple(n - 1, n));
            assert!(!d.forbidden_triple(n, n - 1));
            let r = Diagram::with_reversed_arrows(n).unwrap();
            assert!(r.arrow_toward(0, 1));
            assert!(!r.arrow_toward(1, 0));
        }
        let d = Diagram::new(4).unwrap();
        assert!(d.forbidden_triple(1, 2) && d.forbidden_triple(2, 1));
        assert!(!d.arrow_toward(1, 2));
    }

    #[test]
    fn normal_form_examples() {
        let d2 = Diagram::new(2).unwrap();
        assert_eq!(cf_normal_form(d2, &w(&[])).unwrap(), w(&[]));
        assert_eq!(cf_normal_form(d2, &w(&[2, 0])).unwrap(), w(&[0, 2]));
        assert_eq!(cf_normal_form(d2, &w(&[0, 1, 0])).unwrap(), w(&[0, 1, 0]));
        let d3 = Diagram::new(3).unwrap();
        assert_eq!(
            cf_normal_form(d3, &w(&[3, 1, 0, 2])).unwrap(),
            cf_normal_form(d3, &w(&[1, 3, 0, 2])).unwrap()
        );
        assert!(matches!(
            cf_normal_form(d2, &w(&[3])),
            Err(Error::LetterOutOfRange { letter: 3, n: 2 })
        ));
    }

    #[test]
    fn normal_form_is_idempotent() {
        for n in [2, 3] {
            let d = Diagram::new(n).unwrap();
            for len in 0..=(if n == 2 { 8 } else { 7 }) {
                for x in all_words(n, len) {
                    let c = cf_normal_form(d, &x).unwrap();
                    assert_eq!(cf_normal_form(d, &c).unwrap(), c);
                    let mut a = x.0.clone();
                    let mut b = c.0.clone();
                    a.sort_unstable();
                    b.sort_unstable();
                    assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn normal_form_is_a_class_invariant() {
        let d = Diagram::new(2).unwrap();
        for len in 0..=6 {
            for x in all_words(2, len) {
                let c = cf_normal_form(d, &x).unwrap();
                let orbit = commutation_orbit(d, &x);
                for y in &orbit {
                    assert_eq!(cf_normal_form(d, y).unwrap(), c, "{x} ~ {y}");
                }
                // and the canonical form lies in the class
                assert!(orbit.contains(&c));
            }
        }
    }

    #[test]
    fn word_parsing() {
        assert_eq!("2,1,0".parse::<Word>().unwrap(), w(&[2, 1, 0]));
        assert_eq!("[0, 2]".parse::<Word>().unwrap(), w(&[0, 2]));
        assert_eq!("".parse::<Word>().unwrap(), Word::empty());
        assert!("1,x".parse::<Word>().is_err());
        assert_eq!(serde_json::to_string(&w(&[2, 1, 0])).unwrap(), "[2,1,0]");
    }
}
