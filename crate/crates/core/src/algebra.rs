//! Elements of `T(n)` in the minuscule basis.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::contour::{coxeter_word, weights_of};
use crate::diagram::{normal_form_unchecked, Diagram, Word};
use crate::error::{Error, Result};
use crate::heap::minuscule_letters;
use crate::weight::Weight;

/// A finite rational combination of basis elements `u_w`, keyed by canonical
/// minuscule words. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TElement {
    diagram: Diagram,
    terms: BTreeMap<Word, BigRational>,
}

/// `C^r_{lambda, mu}`: upper weight, lower weight, number of zeros.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CForm {
    pub lambda: Weight,
    pub mu: Weight,
    pub r: i64,
}

/// `u_w = u_lambda^c u_x` with `x` lacking full support.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxeterFactorization {
    pub lambda: Option<Weight>,
    pub c: usize,
    pub x: Word,
}

/// Product of two basis words: the canonical concatenation, or `None` if the
/// product vanishes.
pub fn mul_words(d: Diagram, a: &Word, b: &Word) -> Option<Word> {
    let cat = a.concat(b);
    minuscule_letters(d, cat.letters()).then(|| normal_form_unchecked(d, &cat))
}

impl TElement {
    pub fn zero(d: Diagram) -> Self {
        TElement {
            diagram: d,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(d: Diagram) -> Self {
        Self::zero(d).with_term(Word::empty(), BigRational::one())
    }

    /// `u_w` for a word representing a minuscule element.
    pub fn basis(d: Diagram, w: &Word) -> Result<Self> {
        d.check_word(w)?;
        if !minuscule_letters(d, w.letters()) {
            return Err(Error::NotMinuscule);
        }
        Ok(Self::zero(d).with_term(normal_form_unchecked(d, w), BigRational::one()))
    }

    /// The product `u_{w_1} ... u_{w_k}` of the letters of an arbitrary word,
    /// which is zero when the word is not minuscule.
    pub fn word(d: Diagram, w: &Word) -> Result<Self> {
        d.check_word(w)?;
        if minuscule_letters(d, w.letters()) {
            Self::basis(d, w)
        } else {
            Ok(Self::zero(d))
        }
    }

    pub fn generator(d: Diagram, i: usize) -> Result<Self> {
        Self::basis(d, &Word(vec![i]))
    }

    /// Builds an element from `(word, coefficient)` pairs, canonicalising
    /// words and summing repeats.
    pub fn from_terms<I>(d: Diagram, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, BigRational)>,
    {
        let mut out = Self::zero(d);
        for (w, c) in terms {
            d.check_word(&w)?;
            if !minuscule_letters(d, w.letters()) {
                return Err(Error::NotMinuscule);
            }
            out.add_term(normal_form_unchecked(d, &w), c);
        }
        Ok(out)
    }

    fn with_term(mut self, w: Word, c: BigRational) -> Self {
        self.add_term(w, c);
        self
    }

    fn add_term(&mut self, w: Word, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn diagram(&self) -> Diagram {
        self.diagram
    }

    pub fn n(&self) -> usize {
        self.diagram.n()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> BigRational {
        self.terms.get(w).cloned().unwrap_or_else(BigRational::zero)
    }

    fn same_rank(&self, other: &TElement) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::RankMismatch(self.n(), other.n()));
        }
        Ok(())
    }

    pub fn add(&self, other: &TElement) -> Result<TElement> {
        self.same_rank(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TElement) -> Result<TElement> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> TElement {
        let mut out = Self::zero(self.diagram);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &TElement) -> Result<TElement> {
        self.same_rank(other)?;
        let d = self.diagram;
        let mut out = Self::zero(d);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some(ab) = mul_words(d, a, b) {
                    out.add_term(ab, x * y);
                }
            }
        }
        Ok(out)
    }

    /// `a^k`.
    pub fn pow(&self, k: usize) -> Result<TElement> {
        let mut out = Self::one(self.diagram);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// `b` with `Q b = self`, if it exists.
    pub fn divide_by_q(&self) -> Option<TElement> {
        let d = self.diagram;
        let mut quotient: BTreeMap<Word, BigRational> = BTreeMap::new();
        for (w, c) in &self.terms {
            if !w.has_full_support(d) {
                return None;
            }
            let (_, y) = peel_upper_coxeter(d, w);
            let y = normal_form_unchecked(d, &y);
            match quotient.get(&y) {
                Some(prev) if prev != c => return None,
                Some(_) => {}
                None => {
                    quotient.insert(y, c.clone());
                }
            }
        }
        let b = TElement {
            diagram: d,
            terms: quotient,
        };
        let check = q_element(d).mul(&b).ok()?;
        (&check == self).then_some(b)
    }

    /// Largest `j` with `self` in `Q^j T(n)`.
    pub fn q_valuation(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let mut j = 0;
        let mut cur = self.clone();
        while let Some(b) = cur.divide_by_q() {
            cur = b;
            j += 1;
        }
        Ok(j)
    }

    pub fn to_json_terms(&self) -> Result<Vec<JsonTerm>> {
        self.terms
            .iter()
            .map(|(w, c)| {
                let num = c.numer().to_i64();
                let den = c.denom().to_i64();
                match (num, den) {
                    (Some(num), Some(den)) => Ok(JsonTerm {
                        word: w.clone(),
                        num,
                        den,
                    }),
                    _ => Err(Error::Parse(format!("coefficient {c} does not fit in i64"))),
                }
            })
            .collect()
    }

    pub fn from_json_terms(d: Diagram, terms: &[JsonTerm]) -> Result<TElement> {
        let mut pairs = Vec::with_capacity(terms.len());
        for t in terms {
            if t.den <= 0 {
                return Err(Error::Parse(format!("denominator {} is not positive", t.den)));
            }
            pairs.push((
                t.word.clone(),
                BigRational::new(BigInt::from(t.num), BigInt::from(t.den)),
            ));
        }
        Self::from_terms(d, pairs)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.to_json_terms()?).expect("terms serialise"))
    }

    pub fn from_json(d: Diagram, s: &str) -> Result<TElement> {
        let terms: Vec<JsonTerm> =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json_terms(d, &terms)
    }
}

/// One term of the JSON form of a [`TElement`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub word: Word,
    pub num: i64,
    pub den: i64,
}

/// `Q`: the sum of the `2^n` Coxeter basis elements.
pub fn q_element(d: Diagram) -> TElement {
    let mut q = TElement::zero(d);
    for lambda in Weight::all(d.n()) {
        let w = coxeter_word(d, &lambda).expect("weight length matches n");
        q.add_term(normal_form_unchecked(d, &w), BigRational::one());
    }
    q
}

/// `u_lambda` for a weight.
pub fn coxeter_element(d: Diagram, lambda: &Weight) -> Result<TElement> {
    TElement::basis(d, &coxeter_word(d, lambda)?)
}

/// Splits off the per-label maxima (the leftmost occurrence of each label)
/// of a full-support word: `w = upper * rest` as heaps.
fn peel_upper_coxeter(d: Diagram, w: &Word) -> (Word, Word) {
    let mut seen = vec![false; d.num_generators()];
    let mut top = Vec::new();
    let mut rest = Vec::new();
    for &l in w.iter() {
        if seen[l] {
            rest.push(l);
        } else {
            seen[l] = true;
            top.push(l);
        }
    }
    (Word(top), Word(rest))
}

/// `C^r_{lambda, mu}` data of a minuscule word, or `None` without full
/// support.
pub fn factor_c_form(d: Diagram, w: &Word) -> Result<Option<CForm>> {
    d.check_word(w)?;
    if !minuscule_letters(d, w.letters()) {
        return Err(Error::NotMinuscule);
    }
    if !w.has_full_support(d) {
        return Ok(None);
    }
    let (mu, lambda) = weights_of(d, w)?;
    Ok(Some(CForm {
        lambda,
        mu,
        r: w.count(0) as i64,
    }))
}

/// Peels upper Coxeter elements off `w` while it has full support.
pub fn coxeter_factorization(d: Diagram, w: &Word) -> Result<CoxeterFactorization> {
    d.check_word(w)?;
    if !minuscule_letters(d, w.letters()) {
        return Err(Error::NotMinuscule);
    }
    let mut lambda = None;
    let mut c = 0;
    let mut x = w.clone();
    while x.has_full_support(d) {
        let (_, upper) = weights_of(d, &x)?;
        if c == 0 {
            lambda = Some(upper);
        }
        x = peel_upper_coxeter(d, &x).1;
        c += 1;
    }
    Ok(CoxeterFactorization {
        lambda,
        c,
        x: normal_form_unchecked(d, &x),
    })
}
