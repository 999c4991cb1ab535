//! Contours of full-support minuscule heaps: lower and upper weights,
//! Coxeter elements, and the words `C^r_{lambda, mu}`.

use crate::diagram::{normal_form_unchecked, Diagram, Word};
use crate::error::{Error, Result};
use crate::heap::minuscule_letters;
use crate::region::{embed_positions, is_convex_region, ERegion};
use crate::weight::Weight;

/// Per-label minimum and maximum ranks of a full-support minuscule word.
fn rank_extremes(d: Diagram, w: &Word) -> Result<(Vec<i64>, Vec<i64>)> {
    d.check_word(w)?;
    if !minuscule_letters(d, w.letters()) {
        return Err(Error::NotMinuscule);
    }
    if !w.has_full_support(d) {
        return Err(Error::NotFullSupport);
    }
    let cells = embed_positions(d, w)?;
    let mut lo = vec![i64::MAX; d.num_generators()];
    let mut hi = vec![i64::MIN; d.num_generators()];
    for c in cells {
        lo[c.0] = lo[c.0].min(c.1);
        hi[c.0] = hi[c.0].max(c.1);
    }
    Ok((lo, hi))
}

/// `(lower, upper)`: the contours of the per-label minima and maxima.
pub fn weights_of(d: Diagram, w: &Word) -> Result<(Weight, Weight)> {
    let (lo, hi) = rank_extremes(d, w)?;
    Ok((Weight::from_ranks(&lo)?, Weight::from_ranks(&hi)?))
}

fn check_weight(d: Diagram, lambda: &Weight) -> Result<()> {
    if lambda.len() != d.n() {
        return Err(Error::InvalidWeight(format!(
            "{lambda} has length {} but n = {}",
            lambda.len(),
            d.n()
        )));
    }
    Ok(())
}

/// The Coxeter element with contour `lambda`: labels listed by descending
/// rank, ties ascending.
pub fn coxeter_word(d: Diagram, lambda: &Weight) -> Result<Word> {
    check_weight(d, lambda)?;
    let ranks = lambda.ranks_from(0);
    let mut labels: Vec<usize> = d.generators().collect();
    labels.sort_by_key(|&p| (-ranks[p], p));
    Ok(Word(labels))
}

/// The region of `C^r_{lambda, mu}` before any checks: vertex chain `p`
/// runs from the `mu`-contour (based at 0) up to the `lambda`-contour
/// (based at `2(r-1)`).
pub fn c_region(d: Diagram, lambda: &Weight, mu: &Weight, r: i64) -> Result<Option<ERegion>> {
    check_weight(d, lambda)?;
    check_weight(d, mu)?;
    if r < 1 {
        return Ok(None);
    }
    let lower = mu.ranks_from(0);
    let upper = lambda.ranks_from(2 * (r - 1));
    if lower.iter().zip(&upper).any(|(l, u)| u < l) {
        return Ok(None);
    }
    let mut region = ERegion::new();
    for p in d.generators() {
        let mut b = lower[p];
        while b <= upper[p] {
            region.insert(crate::region::Cell(p, b));
            b += 2;
        }
    }
    Ok(Some(region))
}

/// Canonical word of the unique minuscule element with upper weight
/// `lambda`, lower weight `mu` and `r` letters equal to 0.
pub fn construct_c(d: Diagram, lambda: &Weight, mu: &Weight, r: i64) -> Result<Word> {
    let none = || Error::NoSuchElement {
        lambda: lambda.to_string(),
        mu: mu.to_string(),
        r,
    };
    let region = c_region(d, lambda, mu, r)?.ok_or_else(none)?;
    if !is_convex_region(d, &region)? {
        return Err(none());
    }
    let word = region.to_word();
    if !minuscule_letters(d, word.letters()) {
        return Err(none());
    }
    let (lower, upper) = weights_of(d, &word)?;
    if &lower != mu || &upper != lambda || word.count(0) as i64 != r {
        return Err(none());
    }
    Ok(normal_form_unchecked(d, &word))
}

/// Smallest `r` for which `C^r_{lambda, mu}` exists. Always at most `n + 1`.
pub fn min_c_rank(d: Diagram, lambda: &Weight, mu: &Weight) -> Result<(i64, Word)> {
    for r in 1..=d.n() as i64 + 2 {
        match construct_c(d, lambda, mu, r) {
            Ok(w) => return Ok((r, w)),
            Err(Error::NoSuchElement { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::NoSuchElement {
        lambda: lambda.to_string(),
        mu: mu.to_string(),
        r: d.n() as i64 + 2,
    })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::diagram::cf_normal_form;
    use crate::heap::forbidden_oracle;

    fn wt(s: &str) -> Weight {
        s.parse().unwrap()
    }

    fn w(v: &[usize]) -> Word {
        Word(v.to_vec())
    }

    #[test]
    fn nine_letter_weights() {
        let d6 = Diagram::new(6).unwrap();
        let x = w(&[6, 1, 3, 5, 0, 2, 4, 6, 3]);
        let (lower, upper) = weights_of(d6, &x).unwrap();
        assert_eq!(lower, wt("+--++-"));
        assert_eq!(upper, wt("+-+-++"));
        let c = construct_c(d6, &upper, &lower, 1).unwrap();
        assert_eq!(c, cf_normal_form(d6, &x).unwrap());
    }

    #[test]
    fn small_weights() {
        let d2 = Diagram::new(2).unwrap();
        assert_eq!(
            weights_of(d2, &w(&[0, 1, 2])).unwrap(),
            (wt("--"), wt("--"))
        );
        assert_eq!(weights_of(d2, &w(&[0, 1])), Err(Error::NotFullSupport));
        assert_eq!(weights_of(d2, &w(&[1, 0, 1])), Err(Error::NotMinuscule));
    }

    #[test]
    fn coxeter_examples() {
        let d2 = Diagram::new(2).unwrap();
        assert_eq!(coxeter_word(d2, &wt("++")).unwrap(), w(&[2, 1, 0]));
        assert_eq!(coxeter_word(d2, &wt("--")).unwrap(), w(&[0, 1, 2]));
        assert_eq!(coxeter_word(d2, &wt("+-")).unwrap(), w(&[1, 0, 2]));
        assert_eq!(coxeter_word(d2, &wt("-+")).unwrap(), w(&[0, 2, 1]));
        for n in 2..=5 {
            let d = Diagram::new(n).unwrap();
            let mut classes = std::collections::BTreeSet::new();
            for lambda in Weight::all(n) {
                let c = coxeter_word(d, &lambda).unwrap();
                assert_eq!(weights_of(d, &c).unwrap(), (lambda.clone(), lambda.clone()));
                assert_eq!(construct_c(d, &lambda, &lambda, 1).unwrap(), cf_normal_form(d, &c).unwrap());
                classes.insert(cf_normal_form(d, &c).unwrap());
            }
            assert_eq!(classes.len(), 1 << n);
        }
        assert!(coxeter_word(d2, &wt("+")).is_err());
    }

    #[test]
    fn c_rank_grows_when_needed() {
        let d2 = Diagram::new(2).unwrap();
        let (lambda, mu) = (wt("--"), wt("++"));
        assert!(matches!(
            construct_c(d2, &lambda, &mu, 1),
            Err(Error::NoSuchElement { .. })
        ));
        let (r, _) = min_c_rank(d2, &lambda, &mu).unwrap();
        assert!(r > 1);
        assert!(construct_c(d2, &lambda, &mu, r + 1).is_ok());
    }

    /// Every full-support minuscule word up to a length bound, found by
    /// brute force over all words and filtered by the subword oracle.
    fn brute_full_support(d: Diagram, max_len: usize) -> Vec<Word> {
        let mut classes = std::collections::BTreeSet::new();
        let k = d.num_generators();
        for len in d.num_generators()..=max_len {
            for code in 0..k.pow(len as u32) {
                let mut c = code;
                let letters: Vec<usize> = (0..len)
                    .map(|_| {
                        let l = c % k;
                        c /= k;
                        l
                    })
                    .collect();
                let word = Word(letters);
                if word.has_full_support(d) && !forbidden_oracle(d, &word).unwrap() {
                    classes.insert(cf_normal_form(d, &word).unwrap());
                }
            }
        }
        classes.into_iter().collect()
    }

    #[test]
    fn construct_matches_exhaustive_search() {
        let d2 = Diagram::new(2).unwrap();
        let found = brute_full_support(d2, 9);
        // (lambda, mu, zeros) -> class
        let mut by_key: BTreeMap<(String, String, i64), Word> = BTreeMap::new();
        for x in &found {
            let (lower, upper) = weights_of(d2, x).unwrap();
            let key = (upper.to_string(), lower.to_string(), x.count(0) as i64);
            assert!(by_key.insert(key, x.clone()).is_none(), "C-form not unique");
        }
        for lambda in Weight::all(2) {
            for mu in Weight::all(2) {
                for r in 1..=3 {
                    let key = (lambda.to_string(), mu.to_string(), r);
                    match (construct_c(d2, &lambda, &mu, r), by_key.get(&key)) {
                        (Ok(c), Some(x)) => assert_eq!(&c, x),
                        // beyond the search bound
                        (Ok(c), None) if c.len() > 9 => {}
                        (Err(Error::NoSuchElement { .. }), None) => {}
                        (got, want) => panic!("{key:?}: {got:?} vs {want:?}"),
                    }
                }
            }
        }
    }
}
