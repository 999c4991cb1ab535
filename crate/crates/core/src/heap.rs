//! Heaps of words: the labelled poset of a commutation class, the minuscule
//! test on open `p`-intervals, and the subword-avoidance oracle it is checked
//! against.

use std::collections::{HashSet, VecDeque};

use fixedbitset::FixedBitSet;

use crate::diagram::{Diagram, Word};
use crate::error::{Error, Result};

/// Longest word `forbidden_oracle` will search the orbit of.
pub const ORBIT_LENGTH_CAP: usize = 12;

/// The heap of a word. Element `i` is the letter at position `i`; position 0
/// is the leftmost letter, so earlier positions sit higher in the order.
#[derive(Debug, Clone)]
pub struct Heap {
    labels: Vec<usize>,
    /// `below[i]` holds every `j` with `j < i` in the heap order.
    below: Vec<FixedBitSet>,
}

impl Heap {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> usize {
        self.labels[i]
    }

    /// Strict heap order: element `i` lies below element `j`.
    pub fn less(&self, i: usize, j: usize) -> bool {
        self.below[j].contains(i)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.less(i, j) || self.less(j, i)
    }

    /// Covering pairs `(lower, upper)`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for upper in 0..self.len() {
            for lower in self.below[upper].ones() {
                let skipped = self.below[upper]
                    .ones()
                    .any(|mid| self.below[mid].contains(lower));
                if !skipped {
                    out.push((lower, upper));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Elements strictly between `lo` and `hi`.
    pub fn open_interval(&self, lo: usize, hi: usize) -> Vec<usize> {
        self.below[hi]
            .ones()
            .filter(|&z| self.below[z].contains(lo))
            .collect()
    }

    /// Elements with label `p`, from the top of the vertex chain down.
    pub fn vertex_chain(&self, p: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.labels[i] == p).collect()
    }

    /// Elements with label `s` or `t`, from the top down.
    pub fn edge_chain(&self, s: usize, t: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.labels[i] == s || self.labels[i] == t)
            .collect()
    }

    /// No edge chain has two successive elements with the same label.
    pub fn is_alternating(&self, d: Diagram) -> bool {
        (0..d.n()).all(|s| {
            let chain = self.edge_chain(s, s + 1);
            chain
                .windows(2)
                .all(|w| self.labels[w[0]] != self.labels[w[1]])
        })
    }

    /// A rank function (increasing by one along covers), normalised so each
    /// connected component has minimum rank 0. `None` if the heap is not
    /// ranked.
    pub fn rank_function(&self) -> Option<Vec<i64>> {
        let covers = self.covers();
        let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); self.len()];
        for &(lo, hi) in &covers {
            adj[lo].push((hi, 1));
            adj[hi].push((lo, -1));
        }
        let mut rank: Vec<Option<i64>> = vec![None; self.len()];
        for start in 0..self.len() {
            if rank[start].is_some() {
                continue;
            }
            let mut component = vec![start];
            rank[start] = Some(0);
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                let rx = rank[x].unwrap();
                for &(y, step) in &adj[x] {
                    match rank[y] {
                        None => {
                            rank[y] = Some(rx + step);
                            component.push(y);
                            queue.push_back(y);
                        }
                        Some(ry) if ry != rx + step => return None,
                        Some(_) => {}
                    }
                }
            }
            let min = component.iter().map(|&i| rank[i].unwrap()).min().unwrap();
            for &i in &component {
                rank[i] = Some(rank[i].unwrap() - min);
            }
        }
        Some(rank.into_iter().map(Option::unwrap).collect())
    }

    /// Connected components of the comparability structure, as sorted lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp: Vec<Option<usize>> = vec![None; self.len()];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for start in 0..self.len() {
            if comp[start].is_some() {
                continue;
            }
            let id = out.len();
            let mut members = vec![];
            let mut stack = vec![start];
            comp[start] = Some(id);
            while let Some(x) = stack.pop() {
                members.push(x);
                for (y, slot) in comp.iter_mut().enumerate() {
                    if slot.is_none() && self.comparable(x, y) {
                        *slot = Some(id);
                        stack.push(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }
}

pub fn heap_from_word(d: Diagram, w: &Word) -> Result<Heap> {
    d.check_word(w)?;
    Ok(build_heap(d, w.letters()))
}

pub(crate) fn build_heap(d: Diagram, letters: &[usize]) -> Heap {
    let len = letters.len();
    let mut below = vec![FixedBitSet::with_capacity(len); len];
    for i in (0..len).rev() {
        for j in i + 1..len {
            if d.linked(letters[i], letters[j]) && !below[i].contains(j) {
                let (head, tail) = below.split_at_mut(j);
                head[i].insert(j);
                head[i].union_with(&tail[0]);
            }
        }
    }
    Heap {
        labels: letters.to_vec(),
        below,
    }
}

/// True iff `w` is a reduced expression for a minuscule element: every open
/// `p`-interval of its heap is exactly one element labelled 1 (`p = 0`),
/// exactly one labelled `n-1` (`p = n`), or exactly two labelled `p-1` and
/// `p+1` (`0 < p < n`).
pub fn is_minuscule(d: Diagram, w: &Word) -> bool {
    if d.check_word(w).is_err() {
        return false;
    }
    minuscule_letters(d, w.letters())
}

pub(crate) fn minuscule_letters(d: Diagram, letters: &[usize]) -> bool {
    let heap = build_heap(d, letters);
    let n = d.n();
    let mut last_seen: Vec<Option<usize>> = vec![None; n + 1];
    // scan bottom-up so `last_seen[p]` is the next occurrence below
    for hi in (0..letters.len()).rev() {
        let p = letters[hi];
        if let Some(lo) = last_seen[p] {
            let mut inside: Vec<usize> = heap
                .open_interval(lo, hi)
                .into_iter()
                .map(|z| letters[z])
                .collect();
            inside.sort_unstable();
            let ok = if p == 0 {
                inside == [1]
            } else if p == n {
                inside == [n - 1]
            } else {
                inside == [p - 1, p + 1]
            };
            if !ok {
                return false;
            }
        }
        last_seen[p] = Some(hi);
    }
    true
}

fn has_forbidden_subword(d: Diagram, letters: &[usize]) -> bool {
    letters.windows(2).any(|w| w[0] == w[1])
        || letters
            .windows(3)
            .any(|w| w[0] == w[2] && d.forbidden_triple(w[0], w[1]))
}

/// True iff some word commutation-equivalent to `w` contains a forbidden
/// subword (`s_i s_i`, or `s_i s_j s_i` along a single edge or a double edge
/// whose arrow points at `j`). Exhaustive orbit search; capped at
/// [`ORBIT_LENGTH_CAP`] letters.
pub fn forbidden_oracle(d: Diagram, w: &Word) -> Result<bool> {
    d.check_word(w)?;
    if w.len() > ORBIT_LENGTH_CAP {
        return Err(Error::OrbitTooLarge {
            len: w.len(),
            cap: ORBIT_LENGTH_CAP,
        });
    }
    let mut seen: HashSet<Vec<usize>> = HashSet::from([w.0.clone()]);
    let mut queue = VecDeque::from([w.0.clone()]);
    while let Some(x) = queue.pop_front() {
        if has_forbidden_subword(d, &x) {
            return Ok(true);
        }
        for k in 0..x.len().saturating_sub(1) {
            if d.commute(x[k], x[k + 1]) {
                let mut y = x.clone();
                y.swap(k, k + 1);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[usize]) -> Word {
        Word(v.to_vec())
    }

    #[test]
    fn heap_shapes() {
        let d = Diagram::new(2).unwrap();
        assert!(heap_from_word(d, &w(&[])).unwrap().is_empty());
        let h = heap_from_word(d, &w(&[0, 2])).unwrap();
        assert!(!h.comparable(0, 1));
        assert!(h.covers().is_empty());
        let h = heap_from_word(d, &w(&[0, 1, 0])).unwrap();
        // position 2 (bottom 0) < position 1 (the 1) < position 0 (top 0)
        assert!(h.less(2, 1) && h.less(1, 0) && h.less(2, 0));
        assert_eq!(h.covers(), vec![(1, 0), (2, 1)]);
        assert!(heap_from_word(d, &w(&[5])).is_err());
    }

    #[test]
    fn minuscule_examples() {
        let d2 = Diagram::new(2).unwrap();
        assert!(!is_minuscule(d2, &w(&[1, 0, 1])));
        assert!(is_minuscule(d2, &w(&[0, 1, 0])));
        assert!(is_minuscule(d2, &w(&[2, 1, 2])));
        for i in 0..=2 {
            assert!(!is_minuscule(d2, &w(&[i, i])));
        }
        let d6 = Diagram::new(6).unwrap();
        assert!(is_minuscule(d6, &w(&[6, 1, 3, 5, 0, 2, 4, 6, 3])));
        let d4 = Diagram::new(4).unwrap();
        assert!(!is_minuscule(d4, &w(&[3, 4, 3])));
        assert!(is_minuscule(d4, &w(&[4, 3, 4])));
        assert!(!is_minuscule(d4, &w(&[1, 2, 1])));
    }

    #[test]
    fn oracle_examples() {
        let d = Diagram::new(2).unwrap();
        assert!(forbidden_oracle(d, &w(&[1, 0, 1])).unwrap());
        assert!(!forbidden_oracle(d, &w(&[0, 1, 0])).unwrap());
        assert!(forbidden_oracle(d, &w(&[0, 0])).unwrap());
        // 0 and 2 commute, so 0 2 0 hides 0 0
        assert!(forbidden_oracle(d, &w(&[0, 2, 0])).unwrap());
        assert!(matches!(
            forbidden_oracle(d, &Word(vec![0; 13])),
            Err(Error::OrbitTooLarge { len: 13, cap: 12 })
        ));
    }

    #[test]
    fn minuscule_heaps_are_alternating_and_ranked() {
        let d = Diagram::new(6).unwrap();
        let x = w(&[6, 1, 3, 5, 0, 2, 4, 6, 3]);
        assert!(is_minuscule(d, &x));
        let h = heap_from_word(d, &x).unwrap();
        assert!(h.is_alternating(d));
        assert!(h.rank_function().is_some());
    }

    #[test]
    fn components_split_on_missing_labels() {
        let d = Diagram::new(3).unwrap();
        let h = heap_from_word(d, &w(&[0, 1, 3])).unwrap();
        assert_eq!(h.components(), vec![vec![0, 1], vec![2]]);
    }
}
