//! Breadth-first enumeration of minuscule elements by length.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::diagram::{normal_form_unchecked, Diagram, Word};
use crate::error::{Error, Result};
use crate::heap::minuscule_letters;

/// Cap on the total number of classes kept in memory.
pub const DEFAULT_BUDGET: usize = 2_000_000;

/// Default `max_len` for a given `n`.
pub fn default_max_len(n: usize) -> usize {
    match n {
        2 => 12,
        3 => 10,
        _ => 8,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationReport {
    pub n: usize,
    pub max_len: usize,
    /// `counts[d]` is the number of minuscule elements of length `d`.
    pub counts: Vec<usize>,
    /// Canonical words per length, when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub words: Option<Vec<Vec<Word>>>,
}

impl EnumerationReport {
    /// `m_d + ... + m_{d+n}` for every `d` that fits; the window matches
    /// the degree of `Q`.
    pub fn window_sums(&self) -> Vec<usize> {
        self.counts.windows(self.n + 1).map(|w| w.iter().sum()).collect()
    }

    pub fn all_words(&self) -> impl Iterator<Item = &Word> {
        self.words.iter().flatten().flatten()
    }
}

/// Canonical words of every minuscule element up to `max_len`, per length.
pub fn minuscule_by_length(d: Diagram, max_len: usize, budget: usize) -> Result<Vec<Vec<Word>>> {
    let mut layers: Vec<Vec<Word>> = vec![vec![Word::empty()]];
    let mut total = 1;
    for len in 1..=max_len {
        let mut next = BTreeSet::new();
        for w in &layers[len - 1] {
            // every minuscule word loses a minimal element and stays minuscule
            for g in d.generators() {
                let mut letters = w.0.clone();
                letters.push(g);
                if minuscule_letters(d, &letters) {
                    next.insert(normal_form_unchecked(d, &Word(letters)));
                }
            }
        }
        total += next.len();
        if total > budget {
            return Err(Error::BudgetExceeded(format!(
                "more than {budget} elements by length {len}"
            )));
        }
        layers.push(next.into_iter().collect());
    }
    Ok(layers)
}

pub fn enumerate_minuscule(d: Diagram, max_len: usize, keep_words: bool) -> Result<EnumerationReport> {
    let layers = minuscule_by_length(d, max_len, DEFAULT_BUDGET)?;
    Ok(EnumerationReport {
        n: d.n(),
        max_len,
        counts: layers.iter().map(Vec::len).collect(),
        words: keep_words.then_some(layers),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::cf_normal_form;
    use crate::heap::forbidden_oracle;

    /// Counts by brute force over all words, deduplicated by class.
    fn brute_counts(d: Diagram, max_len: usize) -> Vec<usize> {
        let k = d.num_generators();
        (0..=max_len)
            .map(|len| {
                let mut classes = BTreeSet::new();
                for code in 0..k.pow(len as u32) {
                    let mut c = code;
                    let w = Word(
                        (0..len)
                            .map(|_| {
                                let l = c % k;
                                c /= k;
                                l
                            })
                            .collect(),
                    );
                    if !forbidden_oracle(d, &w).unwrap() {
                        classes.insert(cf_normal_form(d, &w).unwrap());
                    }
                }
                classes.len()
            })
            .collect()
    }

    #[test]
    fn small_counts() {
        let d = Diagram::new(2).unwrap();
        let r = enumerate_minuscule(d, 2, false).unwrap();
        assert_eq!(r.counts[0], 1);
        assert_eq!(r.counts[1], 3);
        assert_eq!(r.counts[2], 5);
        for n in 2..=4 {
            let d = Diagram::new(n).unwrap();
            assert_eq!(enumerate_minuscule(d, 1, false).unwrap().counts, vec![1, n + 1]);
        }
    }

    #[test]
    fn matches_brute_force() {
        let d2 = Diagram::new(2).unwrap();
        assert_eq!(enumerate_minuscule(d2, 8, false).unwrap().counts, brute_counts(d2, 8));
        let d3 = Diagram::new(3).unwrap();
        assert_eq!(enumerate_minuscule(d3, 6, false).unwrap().counts, brute_counts(d3, 6));
    }

    #[test]
    fn budget_is_enforced() {
        let d = Diagram::new(3).unwrap();
        assert!(matches!(
            minuscule_by_length(d, 6, 10),
            Err(Error::BudgetExceeded(_))
        ));
    }
}
