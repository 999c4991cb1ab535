//! Finite subsets of the infinite heap `E(n)` and the embedding of minuscule
//! heaps into it.
//!
//! `E(n)` has cells `(a, b)` with `0 <= a <= n` and `a - b` even; `a` is the
//! label and `b` the rank. Its order has the closed form
//! `(a, b) <= (c, d)` iff `b <= d` and `|c - a| <= d - b`, so the heap itself
//! is never materialised.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::diagram::{normal_form_unchecked, Diagram, Word};
use crate::error::{Error, Result};
use crate::heap::{build_heap, minuscule_letters};

/// A cell `(label, rank)` of `E(n)`. Serialises as `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell(pub usize, pub i64);

impl Cell {
    pub fn label(self) -> usize {
        self.0
    }

    pub fn rank(self) -> i64 {
        self.1
    }

    /// `self <= other` in `E(n)`.
    pub fn le(self, other: Cell) -> bool {
        self.1 <= other.1 && (self.0.abs_diff(other.0) as i64) <= other.1 - self.1
    }

    pub fn lt(self, other: Cell) -> bool {
        self != other && self.le(other)
    }

    /// `self` is covered by `other` in `E(n)`.
    pub fn covered_by(self, other: Cell) -> bool {
        other.1 == self.1 + 1 && self.0.abs_diff(other.0) == 1
    }
}

/// A finite set of cells of `E(n)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ERegion {
    cells: BTreeSet<Cell>,
}

impl FromIterator<Cell> for ERegion {
    fn from_iter<I: IntoIterator<Item = Cell>>(iter: I) -> Self {
        ERegion {
            cells: iter.into_iter().collect(),
        }
    }
}

impl ERegion {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: &[(usize, i64)]) -> Self {
        pairs.iter().map(|&(a, b)| Cell(a, b)).collect()
    }

    pub fn insert(&mut self, c: Cell) -> bool {
        self.cells.insert(c)
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.cells.iter().copied()
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.cells.contains(&c)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn validate(&self, d: Diagram) -> Result<()> {
        for c in self.cells() {
            if c.0 > d.n() {
                return Err(Error::InvalidRegion(format!("label {} exceeds n = {}", c.0, d.n())));
            }
            if (c.0 as i64 - c.1).rem_euclid(2) != 0 {
                return Err(Error::InvalidRegion(format!(
                    "cell ({}, {}) has odd label-rank difference",
                    c.0, c.1
                )));
            }
        }
        Ok(())
    }

    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.cells().map(Cell::label).collect();
        s.dedup();
        s
    }

    pub fn has_full_support(&self, d: Diagram) -> bool {
        self.support().len() == d.num_generators()
    }

    /// Ranks of the label-`p` cells, ascending.
    pub fn vertex_chain(&self, p: usize) -> Vec<i64> {
        self.cells
            .range(Cell(p, i64::MIN)..=Cell(p, i64::MAX))
            .map(|c| c.1)
            .collect()
    }

    pub fn min_rank(&self) -> Option<i64> {
        self.cells().map(Cell::rank).min()
    }

    /// The `tau^k` image: every rank moves up by `2k`.
    pub fn shifted(&self, k: i64) -> ERegion {
        self.cells().map(|c| Cell(c.0, c.1 + 2 * k)).collect()
    }

    /// Equal after some `tau` power.
    pub fn equal_up_to_tau(&self, other: &ERegion) -> bool {
        match (self.min_rank(), other.min_rank()) {
            (None, None) => true,
            (Some(a), Some(b)) => {
                let diff = b - a;
                diff % 2 == 0 && self.len() == other.len() && &self.shifted(diff / 2) == other
            }
            _ => false,
        }
    }

    /// Reads the region as a word, highest rank first (ties by label).
    pub fn to_word(&self) -> Word {
        let mut cells: Vec<Cell> = self.cells().collect();
        cells.sort_by(|x, y| y.1.cmp(&x.1).then(x.0.cmp(&y.0)));
        Word(cells.into_iter().map(Cell::label).collect())
    }

    /// Covering pairs `(lower, upper)` of the order induced from `E(n)`.
    pub fn covering_pairs(&self) -> Vec<(Cell, Cell)> {
        let mut out = Vec::new();
        for lo in self.cells() {
            for hi in self.cells() {
                if lo.lt(hi) && !self.cells().any(|mid| lo.lt(mid) && mid.lt(hi)) {
                    out.push((lo, hi));
                }
            }
        }
        out
    }

    /// Whether `sub` is a subset of `self` closed downward inside `self`.
    pub fn has_ideal(&self, sub: &ERegion) -> bool {
        sub.cells().all(|y| self.contains(y))
            && sub
                .cells()
                .all(|y| self.cells().all(|x| !x.le(y) || sub.contains(x)))
    }

    /// Whether `sub` is a subset of `self` closed upward inside `self`.
    pub fn has_filter(&self, sub: &ERegion) -> bool {
        sub.cells().all(|y| self.contains(y))
            && sub
                .cells()
                .all(|y| self.cells().all(|x| !y.le(x) || sub.contains(x)))
    }

    pub fn union(&self, other: &ERegion) -> ERegion {
        self.cells.union(&other.cells).copied().collect()
    }

    pub fn difference(&self, other: &ERegion) -> ERegion {
        self.cells.difference(&other.cells).copied().collect()
    }

    /// Convexity straight from the definition: every `E(n)` cell strictly
    /// between two cells of the region belongs to it.
    pub fn is_convex_direct(&self, d: Diagram) -> bool {
        let cells: Vec<Cell> = self.cells().collect();
        for &lo in &cells {
            for &hi in &cells {
                if !lo.lt(hi) {
                    continue;
                }
                for b in lo.1 + 1..hi.1 {
                    for a in 0..=d.n() {
                        let mid = Cell(a, b);
                        if (a as i64 - b).rem_euclid(2) == 0
                            && lo.le(mid)
                            && mid.le(hi)
                            && !self.contains(mid)
                        {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Edge-chain criterion: for every edge `{s, s+1}` the cells with those
    /// labels occupy consecutive ranks. Characterises convexity only for
    /// regions with full support.
    pub fn edge_chains_convex(&self, d: Diagram) -> bool {
        (0..d.n()).all(|s| {
            let mut ranks: Vec<i64> = self.vertex_chain(s);
            ranks.extend(self.vertex_chain(s + 1));
            ranks.sort_unstable();
            ranks.windows(2).all(|w| w[1] == w[0] + 1)
        })
    }
}

/// Convexity of a region inside `E(n)`. For full-support regions the
/// edge-chain criterion is evaluated as well and must agree.
pub fn is_convex_region(d: Diagram, r: &ERegion) -> Result<bool> {
    r.validate(d)?;
    let direct = r.is_convex_direct(d);
    if r.has_full_support(d) {
        let by_edges = r.edge_chains_convex(d);
        assert_eq!(
            direct, by_edges,
            "convexity criteria disagree on full-support region {r:?}"
        );
    }
    Ok(direct)
}

pub fn tau_shift(r: &ERegion, k: i64) -> ERegion {
    r.shifted(k)
}

/// `w` followed by each missing generator once, ascending.
pub fn complete_full_support(d: Diagram, w: &Word) -> Result<Word> {
    d.check_word(w)?;
    if !minuscule_letters(d, w.letters()) {
        return Err(Error::NotMinuscule);
    }
    let support = w.support();
    let mut out = w.clone();
    out.0.extend(d.generators().filter(|g| support.binary_search(g).is_err()));
    Ok(out)
}

/// The cell assigned to each letter of a minuscule word, in word order.
///
/// The word is first completed to full support, whose heap is connected and
/// ranked; the rank function of the completion restricted to the original
/// letters is shifted by an even amount so the lowest cell has rank 0 or 1.
pub fn embed_positions(d: Diagram, w: &Word) -> Result<Vec<Cell>> {
    let full = complete_full_support(d, w)?;
    if w.is_empty() {
        return Ok(Vec::new());
    }
    let heap = build_heap(d, full.letters());
    let ranks = heap
        .rank_function()
        .expect("heaps of minuscule elements are ranked");
    let lowest = (0..w.len()).min_by_key(|&i| ranks[i]).unwrap();
    let parity = (w.0[lowest] % 2) as i64;
    // label minus rank has constant parity on a connected ranked heap, so
    // fixing it at the lowest cell fixes it everywhere
    let shift = parity - ranks[lowest];
    Ok((0..w.len())
        .map(|i| Cell(w.0[i], ranks[i] + shift))
        .collect())
}

/// The convex subheap of `E(n)` representing a minuscule word.
pub fn rank_and_embed(d: Diagram, w: &Word) -> Result<ERegion> {
    Ok(embed_positions(d, w)?.into_iter().collect())
}

/// Canonical word of the heap a region represents.
pub fn region_class(d: Diagram, r: &ERegion) -> Word {
    normal_form_unchecked(d, &r.to_word())
}
