//! The faithful representation of `T(n)` on sign strings over `k[q, q^-1]`,
//! the proper-ideal model of the same module, and the matrix embedding.
//!
//! A weight string `r_0 ... r_{n-1}` carries the contour position `i` in
//! string slot `i - 1`.

use std::collections::BTreeMap;

use num::{BigRational, One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::TElement;
use crate::diagram::{Diagram, Word};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::region::{embed_positions, Cell, ERegion};
use crate::weight::{Sign, Weight};

/// `u_i` on a single string: the image string and the power of `q`, or
/// `None` when the result is zero.
pub fn apply_generator(d: Diagram, i: usize, s: &Weight) -> Result<Option<(Weight, i64)>> {
    d.check_letter(i)?;
    if s.len() != d.n() {
        return Err(Error::InvalidWeight(format!(
            "{s} has length {} but n = {}",
            s.len(),
            d.n()
        )));
    }
    Ok(generator_step(d.n(), i, s))
}

fn generator_step(n: usize, i: usize, s: &Weight) -> Option<(Weight, i64)> {
    let mut t = s.clone();
    if i == 0 {
        (s.get(0) == Sign::Plus).then(|| {
            t.set(0, Sign::Minus);
            (t, 1)
        })
    } else if i == n {
        (s.get(n - 1) == Sign::Minus).then(|| {
            t.set(n - 1, Sign::Plus);
            (t, 0)
        })
    } else {
        (s.get(i - 1) == Sign::Minus && s.get(i) == Sign::Plus).then(|| {
            t.set(i - 1, Sign::Plus);
            t.set(i, Sign::Minus);
            (t, 0)
        })
    }
}

/// A word acting on a string, rightmost letter first.
pub fn apply_word(d: Diagram, w: &Word, s: &Weight) -> Result<Option<(Weight, i64)>> {
    d.check_word(w)?;
    let mut cur = s.clone();
    let mut exp = 0;
    for &i in w.iter().rev() {
        match apply_generator(d, i, &cur)? {
            Some((t, e)) => {
                cur = t;
                exp += e;
            }
            None => return Ok(None),
        }
    }
    Ok(Some((cur, exp)))
}

/// An element of `M_q(n)`: weight -> nonzero Laurent coefficient.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StateVector {
    entries: BTreeMap<Weight, LaurentPoly>,
}

impl StateVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(s: Weight) -> Self {
        let mut v = Self::zero();
        v.add(s, &LaurentPoly::one());
        v
    }

    pub fn add(&mut self, s: Weight, p: &LaurentPoly) {
        let slot = self.entries.entry(s.clone()).or_default();
        *slot = &*slot + p;
        if slot.is_zero() {
            self.entries.remove(&s);
        }
    }

    pub fn get(&self, s: &Weight) -> LaurentPoly {
        self.entries.get(s).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Weight, &LaurentPoly)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn apply_element(a: &TElement, v: &StateVector) -> Result<StateVector> {
    let d = a.diagram();
    let mut out = StateVector::zero();
    for (s, p) in v.entries() {
        if s.len() != d.n() {
            return Err(Error::RankMismatch(d.n(), s.len()));
        }
        for (w, c) in a.terms() {
            if let Some((t, e)) = apply_word(d, w, s)? {
                out.add(t, &p.shift(e).scale(c));
            }
        }
    }
    Ok(out)
}

/// A `2^n x 2^n` matrix over `k[q, q^-1]` with rows and columns indexed by
/// weights in string order. Absent entries are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMatrix {
    n: usize,
    entries: BTreeMap<(usize, usize), LaurentPoly>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct MatrixEntryJson {
    row: Weight,
    col: Weight,
    poly: LaurentPoly,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct MatrixJson {
    n: usize,
    entries: Vec<MatrixEntryJson>,
}

impl WeightMatrix {
    pub fn zero(n: usize) -> Self {
        WeightMatrix {
            n,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, LaurentPoly::one())
    }

    pub fn scalar(n: usize, p: LaurentPoly) -> Self {
        let mut m = Self::zero(n);
        for k in 0..1usize << n {
            m.add_entry(k, k, &p);
        }
        m
    }

    /// `q^e E_{lambda, mu}`.
    pub fn unit(lambda: &Weight, mu: &Weight, e: i64) -> Self {
        let mut m = Self::zero(lambda.len());
        m.add_entry(lambda.index(), mu.index(), &LaurentPoly::q_pow(e));
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn add_entry(&mut self, row: usize, col: usize, p: &LaurentPoly) {
        let slot = self.entries.entry((row, col)).or_default();
        *slot = &*slot + p;
        if slot.is_zero() {
            self.entries.remove(&(row, col));
        }
    }

    pub fn get(&self, row: usize, col: usize) -> LaurentPoly {
        self.entries.get(&(row, col)).cloned().unwrap_or_default()
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &LaurentPoly)> {
        self.entries.iter().map(|(&(r, c), p)| (r, c, p))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn add(&self, other: &WeightMatrix) -> WeightMatrix {
        let mut out = self.clone();
        for (r, c, p) in other.entries() {
            out.add_entry(r, c, p);
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> WeightMatrix {
        let mut out = Self::zero(self.n);
        for (r, col, p) in self.entries() {
            out.add_entry(r, col, &p.scale(c));
        }
        out
    }

    pub fn mul(&self, other: &WeightMatrix) -> WeightMatrix {
        let mut by_row: BTreeMap<usize, Vec<(usize, &LaurentPoly)>> = BTreeMap::new();
        for (k, c, p) in other.entries() {
            by_row.entry(k).or_default().push((c, p));
        }
        let mut out = Self::zero(self.n);
        for (r, k, p) in self.entries() {
            if let Some(row) = by_row.get(&k) {
                for &(c, p2) in row {
                    out.add_entry(r, c, &(p * p2));
                }
            }
        }
        out
    }

    /// All entries lie in `k[q]`.
    pub fn is_polynomial(&self) -> bool {
        self.entries.values().all(LaurentPoly::is_polynomial)
    }

    pub fn to_json(&self) -> String {
        let doc = MatrixJson {
            n: self.n,
            entries: self
                .entries()
                .map(|(r, c, p)| MatrixEntryJson {
                    row: Weight::from_index(self.n, r),
                    col: Weight::from_index(self.n, c),
                    poly: p.clone(),
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("matrix serialises")
    }

    pub fn from_json(s: &str) -> Result<WeightMatrix> {
        let doc: MatrixJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let mut m = Self::zero(doc.n);
        for e in doc.entries {
            if e.row.len() != doc.n || e.col.len() != doc.n {
                return Err(Error::Parse("entry weight length does not match n".into()));
            }
            m.add_entry(e.row.index(), e.col.index(), &e.poly);
        }
        Ok(m)
    }

    /// `row,col,exponent` lines for a matrix whose entries are `q`-powers
    /// with coefficient 1.
    pub fn to_csv(&self) -> Result<String> {
        let mut out = String::from("row,col,exponent\n");
        for (r, c, p) in self.entries() {
            match p.as_monomial() {
                Some((e, k)) if k.is_one() => {
                    out.push_str(&format!(
                        "{},{},{}\n",
                        Weight::from_index(self.n, r),
                        Weight::from_index(self.n, c),
                        e
                    ));
                }
                _ => {
                    return Err(Error::Parse(format!(
                        "entry ({r}, {c}) = {p} is not a monic monomial"
                    )))
                }
            }
        }
        Ok(out)
    }

    pub fn from_csv(n: usize, s: &str) -> Result<WeightMatrix> {
        let mut m = Self::zero(n);
        for (k, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (k == 0 && line.starts_with("row")) {
                continue;
            }
            let parts: Vec<&str> = line.split(',').collect();
            if parts.len() != 3 {
                return Err(Error::Parse(format!("bad CSV line {line:?}")));
            }
            let row = Weight::parse_for(n, parts[0])?;
            let col = Weight::parse_for(n, parts[1])?;
            let e: i64 = parts[2]
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {line:?}")))?;
            m.add_entry(row.index(), col.index(), &LaurentPoly::q_pow(e));
        }
        Ok(m)
    }

    /// Entries evaluated at `q = x`, row-major, dense.
    pub fn eval(&self, x: &BigRational) -> Vec<BigRational> {
        let dim = self.dim();
        let mut out = vec![BigRational::zero(); dim * dim];
        for (r, c, p) in self.entries() {
            out[r * dim + c] = p.eval(x);
        }
        out
    }
}

/// The matrix of the action of `a` in the weight basis.
pub fn matrix_of(a: &TElement) -> WeightMatrix {
    let d = a.diagram();
    let n = d.n();
    let mut m = WeightMatrix::zero(n);
    for (w, c) in a.terms() {
        for col in Weight::all(n) {
            if let Some((row, e)) = apply_word(d, w, &col).expect("basis words are valid") {
                m.add_entry(row.index(), col.index(), &LaurentPoly::monomial(e, c.clone()));
            }
        }
    }
    m
}

/// A proper ideal of `E(n)`, stored as the rank `h_p` of the top cell of each
/// vertex chain.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct IdealBoundary(Vec<i64>);

impl TryFrom<Vec<i64>> for IdealBoundary {
    type Error = Error;
    fn try_from(h: Vec<i64>) -> Result<Self> {
        IdealBoundary::new(h)
    }
}

impl From<IdealBoundary> for Vec<i64> {
    fn from(b: IdealBoundary) -> Vec<i64> {
        b.0
    }
}

impl IdealBoundary {
    pub fn new(h: Vec<i64>) -> Result<Self> {
        if h.len() < 3 {
            return Err(Error::InvalidBoundary(format!("{h:?} is too short")));
        }
        for (p, &x) in h.iter().enumerate() {
            if (x - p as i64).rem_euclid(2) != 0 {
                return Err(Error::InvalidBoundary(format!(
                    "h_{p} = {x} has the wrong parity"
                )));
            }
        }
        if h.windows(2).any(|w| (w[1] - w[0]).abs() != 1) {
            return Err(Error::InvalidBoundary(format!(
                "{h:?} has a step other than +-1"
            )));
        }
        Ok(IdealBoundary(h))
    }

    pub fn heights(&self) -> &[i64] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len() - 1
    }

    /// `(c, lambda)` with the top 0-cell at rank `2c` and `lambda` the
    /// contour of the boundary.
    pub fn psi(&self) -> (i64, Weight) {
        let lambda = Weight::from_ranks(&self.0).expect("boundary steps are +-1");
        (self.0[0] / 2, lambda)
    }

    pub fn psi_inv(c: i64, lambda: &Weight) -> IdealBoundary {
        IdealBoundary(lambda.ranks_from(2 * c))
    }

    /// `u_i` as a raising operator, or `None` for zero.
    pub fn raise(&self, i: usize) -> Option<IdealBoundary> {
        let h = &self.0;
        let n = self.n();
        let blocked = (i > 0 && h[i - 1] != h[i] + 1) || (i < n && h[i + 1] != h[i] + 1);
        if blocked {
            return None;
        }
        let mut out = h.clone();
        out[i] += 2;
        Some(IdealBoundary(out))
    }

    /// `tau`: every vertex chain grows by one cell.
    pub fn tau(&self) -> IdealBoundary {
        IdealBoundary(self.0.iter().map(|x| x + 2).collect())
    }

    /// A word acting rightmost letter first.
    pub fn raise_word(&self, w: &Word) -> Option<IdealBoundary> {
        let mut cur = self.clone();
        for &i in w.iter().rev() {
            cur = cur.raise(i)?;
        }
        Some(cur)
    }

    pub fn contained_in(&self, other: &IdealBoundary) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

pub fn psi(j: &IdealBoundary) -> (i64, Weight) {
    j.psi()
}

pub fn psi_inv(c: i64, lambda: &Weight) -> IdealBoundary {
    IdealBoundary::psi_inv(c, lambda)
}

pub fn raise_ideal(d: Diagram, i: usize, j: &IdealBoundary) -> Result<Option<IdealBoundary>> {
    d.check_letter(i)?;
    if j.n() != d.n() {
        return Err(Error::RankMismatch(d.n(), j.n()));
    }
    Ok(j.raise(i))
}

/// The cells of `J2` not in `J`.
pub fn interval_region(j: &IdealBoundary, j2: &IdealBoundary) -> Result<ERegion> {
    if !j.contained_in(j2) {
        return Err(Error::NotContained(j.0.clone(), j2.0.clone()));
    }
    let mut r = ERegion::new();
    for (p, (&lo, &hi)) in j.0.iter().zip(&j2.0).enumerate() {
        let mut b = lo + 2;
        while b <= hi {
            r.insert(Cell(p, b));
            b += 2;
        }
    }
    Ok(r)
}

/// A pair `J -> J'` with `u_w b_J = b_J'` and `J' \ J` equal to the region
/// of `w`. The pair pins down a matrix coordinate that no other basis word
/// reaches.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub from: IdealBoundary,
    pub to: IdealBoundary,
}

impl Witness {
    /// `(row, col, exponent)` of the coordinate of `kappa(u_w)` the pair
    /// certifies.
    pub fn coordinate(&self) -> (usize, usize, i64) {
        let (c0, col) = self.from.psi();
        let (c1, row) = self.to.psi();
        (row.index(), col.index(), c1 - c0)
    }
}

/// Builds the witness pair for a minuscule word: `J'` is the down-closure of
/// the word's region and `J` removes the region from it.
pub fn faithfulness_witness(d: Diagram, w: &Word) -> Result<Witness> {
    let cells = embed_positions(d, w)?;
    let n = d.n();
    let top: Vec<i64> = if cells.is_empty() {
        (0..=n as i64).map(|p| p % 2).collect()
    } else {
        (0..=n)
            .map(|p| {
                cells
                    .iter()
                    .map(|c| c.1 - c.0.abs_diff(p) as i64)
                    .max()
                    .unwrap()
            })
            .collect()
    };
    let mut bottom = top.clone();
    for c in &cells {
        bottom[c.0] -= 2;
    }
    let to = IdealBoundary::new(top)?;
    let from = IdealBoundary::new(bottom)?;
    Ok(Witness { from, to })
}
