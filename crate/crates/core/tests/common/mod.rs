//! Reference implementations written directly from the definitions. They
//! share no code with the library and are deliberately naive.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use ntl_core::BigRational;

/// Letters commute exactly when they are not neighbours in the diagram.
pub fn commute(i: usize, j: usize) -> bool {
    i.abs_diff(j) > 1
}

/// `ii`, or `iji` with `i, j` neighbours, except `0 1 0` and `n n-1 n`.
pub fn has_forbidden_factor(n: usize, w: &[usize]) -> bool {
    w.windows(2).any(|p| p[0] == p[1])
        || w.windows(3).any(|t| {
            t[0] == t[2]
                && t[0].abs_diff(t[1]) == 1
                && !(t[0] == 0 && t[1] == 1)
                && !(t[0] == n && t[1] == n - 1)
        })
}

/// Every word reachable by swapping adjacent commuting letters.
pub fn commutation_class(w: &[usize]) -> BTreeSet<Vec<usize>> {
    let mut seen = BTreeSet::from([w.to_vec()]);
    let mut queue = VecDeque::from([w.to_vec()]);
    while let Some(x) = queue.pop_front() {
        for k in 0..x.len().saturating_sub(1) {
            if commute(x[k], x[k + 1]) {
                let mut y = x.clone();
                y.swap(k, k + 1);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
    }
    seen
}

/// Minuscule test by inspecting every word of the commutation class, with
/// the verdict cached for the whole class.
pub struct MinusculeOracle {
    n: usize,
    memo: HashMap<Vec<usize>, bool>,
}

impl MinusculeOracle {
    pub fn new(n: usize) -> Self {
        MinusculeOracle { n, memo: HashMap::new() }
    }

    pub fn is_minuscule(&mut self, w: &[usize]) -> bool {
        if let Some(&v) = self.memo.get(w) {
            return v;
        }
        let class = commutation_class(w);
        let ok = class.iter().all(|x| !has_forbidden_factor(self.n, x));
        for x in class {
            self.memo.insert(x, ok);
        }
        ok
    }
}

/// Lexicographically least member of the commutation class.
pub fn class_key(w: &[usize]) -> Vec<usize> {
    commutation_class(w).into_iter().next().unwrap()
}

/// Minuscule classes of each length up to `max_len`, keyed by
/// [`class_key`]. Minuscule words are closed under taking prefixes, so the
/// search only extends minuscule words.
pub fn minuscule_classes(n: usize, max_len: usize) -> Vec<BTreeSet<Vec<usize>>> {
    let mut oracle = MinusculeOracle::new(n);
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    let mut out = vec![BTreeSet::from([vec![]])];
    for _ in 1..=max_len {
        let mut next = BTreeSet::new();
        for w in &words {
            for x in 0..=n {
                let mut y = w.clone();
                y.push(x);
                if oracle.is_minuscule(&y) {
                    next.insert(y);
                }
            }
        }
        out.push(next.iter().map(|w| class_key(w)).collect());
        words = next.into_iter().collect();
    }
    out
}

/// All words of a given length over `0..=n`.
pub fn all_words(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w: Vec<usize>| {
                (0..=n).map(move |x| {
                    let mut y = w.clone();
                    y.push(x);
                    y
                })
            })
            .collect();
    }
    out
}

/// Sign strings of length `n`, written with `+` and `-`.
pub fn strings(n: usize) -> Vec<String> {
    all_words(1, n)
        .into_iter()
        .map(|b| b.into_iter().map(|x| if x == 0 { '+' } else { '-' }).collect())
        .collect()
}

/// One generator on a sign string: the image and the power of `q` picked up.
pub fn act_letter(n: usize, i: usize, s: &str) -> Option<(String, i64)> {
    let mut c: Vec<char> = s.chars().collect();
    let q = if i == 0 {
        if c[0] != '+' {
            return None;
        }
        c[0] = '-';
        1
    } else if i == n {
        if c[n - 1] != '-' {
            return None;
        }
        c[n - 1] = '+';
        0
    } else {
        if (c[i - 1], c[i]) != ('-', '+') {
            return None;
        }
        c[i - 1] = '+';
        c[i] = '-';
        0
    };
    Some((c.into_iter().collect(), q))
}

/// A word on a string; the rightmost letter acts first.
pub fn act_word(n: usize, w: &[usize], s: &str) -> Option<(String, i64)> {
    let mut cur = s.to_string();
    let mut e = 0;
    for &i in w.iter().rev() {
        let (t, de) = act_letter(n, i, &cur)?;
        cur = t;
        e += de;
    }
    Some((cur, e))
}

/// The action of a word as `(row, col) -> exponent`; each column holds at
/// most one monomial with coefficient one.
pub fn word_matrix(n: usize, w: &[usize]) -> BTreeMap<(String, String), i64> {
    strings(n)
        .into_iter()
        .filter_map(|col| act_word(n, w, &col).map(|(row, e)| ((row, col), e)))
        .collect()
}

pub const P: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}


pub fn from_rational(x: &BigRational) -> u64 {
    let p = num::BigInt::from(P);
    let reduce = |v: &num::BigInt| -> u64 {
        let r = ((v % &p) + &p) % &p;
        r.try_into().unwrap()
    };
    let den = reduce(x.denom());
    assert_ne!(den, 0, "denominator divisible by the test prime");
    mul_mod(reduce(x.numer()), pow_mod(den, P - 2))
}

/// Rank over `Z/P` of dense rows. It never exceeds the rank over `Q` of
/// integer rows reducing to them.
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = pow_mod(rows[rank][c], P - 2);
        for x in rows[rank].iter_mut() {
            *x = mul_mod(*x, inv);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                    *x = (*x + P - mul_mod(f, *p)) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over `Z/P` of sparse vectors with arbitrary keys.
pub fn sparse_rank_mod_p<K: Ord + Clone>(vectors: &[BTreeMap<K, u64>]) -> usize {
    let keys: BTreeMap<K, usize> = vectors
        .iter()
        .flat_map(|v| v.keys().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .enumerate()
        .map(|(i, k)| (k, i))
        .collect();
    let rows = vectors
        .iter()
        .map(|v| {
            let mut row = vec![0; keys.len()];
            for (k, x) in v {
                row[keys[k]] = *x;
            }
            row
        })
        .collect();
    rank_mod_p(rows)
}
