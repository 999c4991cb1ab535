//! The verification suite: every structural property the crate relies on,
//! run as named checks that report data instead of panicking.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num::{BigRational, One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{coxeter_element, factor_c_form, q_element, TElement};
use crate::contour::{construct_c, coxeter_word, min_c_rank, weights_of};
use crate::diagram::{cf_normal_form, Diagram, Word};
use crate::enumerate::{default_max_len, minuscule_by_length, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::heap::{forbidden_oracle, heap_from_word, is_minuscule};
use crate::laurent::{rat, LaurentPoly};
use crate::linalg::{sparse_rank, EchelonBasis, Mat};
use crate::modules::build_module;
use crate::region::{embed_positions, is_convex_region, rank_and_embed, region_class, Cell, ERegion};
use crate::rep::{apply_generator, faithfulness_witness, interval_region, matrix_of, psi_inv, WeightMatrix};
use crate::weight::Weight;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Quick,
    Standard,
    Full,
}

impl Level {
    /// Longest word examined by the exhaustive checks.
    fn word_len(self, n: usize) -> usize {
        match (self, n) {
            (Level::Quick, _) => 5,
            (Level::Standard, 2 | 3) => 7,
            (Level::Standard, _) => 6,
            (Level::Full, 2 | 3) => 8,
            (Level::Full, _) => 7,
        }
    }

    fn random_trials(self) -> usize {
        match self {
            Level::Quick => 30,
            Level::Standard => 100,
            Level::Full => 200,
        }
    }
}

impl FromStr for Level {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Level::Quick),
            "standard" => Ok(Level::Standard),
            "full" => Ok(Level::Full),
            other => Err(Error::Parse(format!(
                "unknown level {other:?} (expected quick, standard or full)"
            ))),
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Quick => "quick",
            Level::Standard => "standard",
            Level::Full => "full",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check_name: String,
    /// The property the check establishes.
    pub paper_ref: String,
    pub status: Status,
    /// Summary data on success, a counterexample on failure.
    pub witness: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub n: usize,
    pub level: Level,
    pub seed: u64,
    pub fault_injected: bool,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.check_name == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub n: usize,
    pub level: Level,
    pub seed: u64,
    /// Run the subword oracle against a diagram with reversed arrows.
    pub inject_fault: bool,
}

impl VerifyOptions {
    pub fn new(n: usize, level: Level) -> Self {
        VerifyOptions {
            n,
            level,
            seed: DEFAULT_SEED,
            inject_fault: false,
        }
    }
}

type Outcome = std::result::Result<Value, Value>;

struct Ctx {
    d: Diagram,
    level: Level,
    seed: u64,
    oracle_diagram: Diagram,
    /// Canonical minuscule words by length, up to `level.word_len`.
    layers: Vec<Vec<Word>>,
}

impl Ctx {
    fn words(&self) -> impl Iterator<Item = &Word> {
        self.layers.iter().flatten()
    }

    fn words_up_to(&self, len: usize) -> impl Iterator<Item = &Word> {
        self.layers.iter().take(len + 1).flatten()
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }
}

pub fn verify_suite(n: usize, level: Level) -> Result<VerifyReport> {
    verify_with(VerifyOptions::new(n, level))
}

pub fn verify_with(opts: VerifyOptions) -> Result<VerifyReport> {
    let d = Diagram::new(opts.n)?;
    let oracle_diagram = if opts.inject_fault {
        Diagram::with_reversed_arrows(opts.n)?
    } else {
        d
    };
    let layers = minuscule_by_length(d, opts.level.word_len(opts.n), DEFAULT_BUDGET)?;
    let ctx = Ctx {
        d,
        level: opts.level,
        seed: opts.seed,
        oracle_diagram,
        layers,
    };
    type Check = (&'static str, &'static str, fn(&Ctx) -> Outcome);
    let checks: [Check; 20] = [
        ("relations", "the defining relations of T(n) hold under multiplication", check_relations),
        ("oracle_agreement", "a word is minuscule iff no commutation-equivalent word has a forbidden subword", check_oracle_agreement),
        ("canonical_form", "canonical forms are idempotent, preserve letters, and are constant on commutation classes", check_canonical_form),
        ("embedding", "minuscule heaps are alternating, ranked, and embed as convex subheaps of E(n) with the same class", check_embedding),
        ("convex_regions", "convexity by definition agrees with the edge-chain criterion, and convex regions of E(2) are minuscule heaps", check_convex_regions),
        ("factorization", "a factorization w = uv splits the heap of w into a filter for u and an ideal for v", check_factorization),
        ("gluing", "full-support heaps with matching upper and lower weights glue, after a shift, into a convex heap with the lower one as an ideal", check_gluing),
        ("coxeter_elements", "there are 2^n pairwise distinct Coxeter elements, each with equal lower and upper weight", check_coxeter_elements),
        ("weight_calculus", "the nine-element heap in E(6) has lower weight +--++-, upper weight +-+-++ and one 0-label", check_weight_calculus),
        ("homomorphism", "matrix_of is multiplicative, polynomial, and monomial on basis elements", check_homomorphism),
        ("theta", "the proper-ideal model and the string model give the same generator action", check_theta),
        ("faithfulness", "matrices of minuscule basis words are linearly independent, each witnessed by an ideal pair", check_faithfulness),
        ("centre", "Q acts as q, commutes with every generator, and low-degree central elements are scalars", check_centre),
        ("idempotents", "u_lambda u_mu = delta Q u_mu and u_lambda / q are orthogonal idempotents summing to 1", check_idempotents),
        ("sandwich", "u_lambda u_w = u_w u_mu for a unique mu whenever the left side is nonzero", check_sandwich),
        ("c_form_products", "C^r_{lambda,mu} C^s_{nu,xi} = delta_{mu,nu} C^{r+s}_{lambda,xi} and kappa(C^r) = q^r E", check_c_form_products),
        ("matrix_units", "every matrix unit is hit, up to a power of q, by some C^r with r <= n + 2", check_matrix_units),
        ("window_counts", "for n = 2 the counts over windows of n + 1 consecutive lengths settle at 2^{2n}", check_window_counts),
        ("valuation_codimension", "only finitely many basis elements lie outside Q T(n)", check_valuation_codimension),
        ("modules", "M_{c,m} has dimension 2^n m, satisfies the relations, is irreducible iff m = 1, and has End of dimension m", check_modules),
    ];
    let results = checks
        .iter()
        .map(|&(name, prop, f)| {
            let (status, witness) = match f(&ctx) {
                Ok(w) => (Status::Pass, w),
                Err(w) => (Status::Fail, w),
            };
            CheckResult {
                check_name: name.to_string(),
                paper_ref: prop.to_string(),
                status,
                witness,
            }
        })
        .collect();
    Ok(VerifyReport {
        n: opts.n,
        level: opts.level,
        seed: opts.seed,
        fault_injected: opts.inject_fault,
        checks: results,
    })
}

/// Every word of length `len` over `k` letters.
pub fn words_of_length(k: usize, len: usize) -> impl Iterator<Item = Word> {
    (0..k.pow(len as u32)).map(move |code| {
        let mut c = code;
        let mut letters = vec![0; len];
        for slot in letters.iter_mut().rev() {
            *slot = c % k;
            c /= k;
        }
        Word(letters)
    })
}

fn fail<T: Serialize>(what: &str, data: T) -> Outcome {
    Err(json!({ "failure": what, "data": data }))
}

fn ensure(cond: bool, what: &str, data: impl Serialize) -> std::result::Result<(), Value> {
    if cond {
        Ok(())
    } else {
        Err(json!({ "failure": what, "data": data }))
    }
}

fn u(d: Diagram, letters: &[usize]) -> TElement {
    TElement::word(d, &Word(letters.to_vec())).expect("letters in range")
}

fn check_relations(ctx: &Ctx) -> Outcome {
    let d = ctx.d;
    let n = d.n();
    let mut count = 0;
    for i in 0..=n {
        ensure(u(d, &[i, i]).is_zero(), "u_i^2 != 0", i)?;
        count += 1;
        for j in 0..=n {
            if i.abs_diff(j) > 1 {
                ensure(u(d, &[i, j]) == u(d, &[j, i]), "distant generators do not commute", (i, j))?;
                count += 1;
            }
        }
    }
    for i in 1..n - 1 {
        for (a, b) in [(i, i + 1), (i + 1, i)] {
            ensure(u(d, &[a, b, a]).is_zero(), "braid word is nonzero", (a, b))?;
            count += 1;
        }
    }
    ensure(u(d, &[1, 0, 1]).is_zero(), "u_1 u_0 u_1 != 0", ())?;
    ensure(u(d, &[n - 1, n, n - 1]).is_zero(), "u_{n-1} u_n u_{n-1} != 0", ())?;
    ensure(!u(d, &[0, 1, 0]).is_zero(), "u_0 u_1 u_0 vanished", ())?;
    Ok(json!({ "relations_checked": count + 2 }))
}

fn check_oracle_agreement(ctx: &Ctx) -> Outcome {
    let d = ctx.d;
    let max_len = ctx.level.word_len(d.n()).min(crate::heap::ORBIT_LENGTH_CAP);
    let mut total = 0usize;
    for len in 0..=max_len {
        for w in words_of_length(d.num_generators(), len) {
            let fast = is_minuscule(d, &w);
            let slow = forbidden_oracle(ctx.oracle_diagram, &w).map_err(|e| json!(e.to_string()))?;
            if fast == slow {
                return fail(
                    "minuscule test disagrees with the subword oracle",
                    json!({ "word": w, "is_minuscule": fast, "has_forbidden": slow }),
                );
            }
            total += 1;
        }
    }
    Ok(json!({ "words_checked": total, "max_len": max_len }))
}

fn commutation_orbit(d: Diagram, w: &Word) -> Vec<Word> {
    let mut seen: HashSet<Word> = HashSet::from([w.clone()]);
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
    seen.into_iter().collect()
}

fn check_canonical_form(ctx: &Ctx) -> Outcome {
    let d = ctx.d;
    let mut rng = ctx.rng(3);
    let trials = ctx.level.random_trials();
    for _ in 0..trials {
        let len = rng.gen_range(0..=8);
        let w = Word((0..len).map(|_| rng.gen_range(0..=d.n())).collect());
        let cf = cf_normal_form(d, &w).expect("letters in range");
        ensure(cf_normal_form(d, &cf).unwrap() == cf, "canonical form is not idempotent", &w)?;
        let mut a = w.0.clone();
        let mut b = cf.0.clone();
        a.sort_unstable();
        b.sort_unstable();
        ensure(a == b, "canonical form changed the letters", &w)?;
        if len <= 6 {
            for v in commutation_orbit(d, &w) {
                ensure(
                    cf_normal_form(d, &v).unwrap() == cf,
                    "canonical form differs inside a commutation class",
                    (&w, &v),
                )?;
            }
        }
    }
    Ok(json!({ "random_words": trials }))
}

fn check_embedding(ctx: &Ctx) -> Outcome {
    let d = ctx.d;
    let mut count = 0;
    for w in ctx.words() {
        let heap = heap_from_word(d, w).unwrap();
        ensure(heap.is_alternating(d), "heap is not alternating", w)?;
        ensure(heap.rank_function().is_some(), "heap is not ranked", w)?;
        for (lo, hi) in heap.covers() {
            ensure(
                heap.label(lo).abs_diff(heap.label(hi)) == 1,
                "covering pair with non-adjacent labels",
                (w, lo, hi),
            )?;
        }
        for s in 0..d.n() {
            let chain = heap.edge_chain(s, s + 1);
            for pair in chain.windows(2) {
                ensure(
                    heap.covers().contains(&(pair[1], pair[0])),
                    "edge chain step is not a covering relation",
                    (w, s),
                )?;
            }
        }
        let region = rank_and_embed(d, w).map_err(|e| json!(e.to_string()))?;
        ensure(region.len() == w.len(), "embedding is not injective", w)?;
        ensure(is_convex_region(d, &region).unwrap(), "embedded region is not convex", w)?;
        ensure(&region_class(d, &region) == w, "region reads back a different class", w)?;
        count += 1;
    }
    Ok(json!({ "minuscule_words": count }))
}

/// Cells of `E(2)` with ranks in `0..ranks`.
pub fn e2_window(ranks: i64) -> Vec<Cell> {
    (0..ranks)
        .flat_map(|b| (0..=2usize).filter(move |&a| (a as i64 - b) % 2 == 0).map(move |a| Cell(a, b)))
        .collect()
}

fn check_convex_regions(_ctx: &Ctx) -> Outcome {
    let d2 = Diagram::new(2).unwrap();
    let window = e2_window(8);
    let bad = ERegion::from_pairs(&[(0, 0), (2, 2)]);
    ensure(!bad.is_convex_direct(d2), "{(0,0),(2,2)} accepted as convex", ())?;
    let (mut subsets, mut convex, mut full) = (0, 0, 0);
    for mask in 0u32..1 << window.len() {
        if mask.count_ones() > 8 {
            continue;
        }
        subsets += 1;
        let region: ERegion = window
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &c)| c)
            .collect();
        let direct = region.is_convex_direct(d2);
        if region.has_full_support(d2) {
            full += 1;
            ensure(
                direct == region.edge_chains_convex(d2),
                "convexity criteria disagree",
                &region,
            )?;
        }
        if direct {
            convex += 1;
            let w = region.to_word();
            ensure(is_minuscule(d2, &w), "convex region reads as a non-minuscule word", &region)?;
            let back = rank_and_embed(d2, &w).unwrap();
            ensure(
                region_class(d2, &back) == region_class(d2, &region),
                "convex region does not round-trip",
                &region,
            )?;
            if region.has_full_support(d2) {
                ensure(back.equal_up_to_tau(&region), "full-support region moved", &region)?;
            }
        }
    }
    Ok(json!({ "regions": subsets, "convex": convex, "full_support": full }))
}

fn check_factorization(ctx: &Ctx) -> Outcome {
    let d = ctx.d;
    let mut splits = 0;
    for w in ctx.words_up_to(7) {
        let cells = embed_positions(d, w).unwrap();
        let whole: ERegion = cells.iter().copied().collect();
        for k in 0..=w.len() {
            let top = Word(w.0[..k].to_vec());
            let bottom = Word(w.0[k..].to_vec());
            let filter: ERegion = cells[..k].iter().copied().collect();
            let ideal: ERegion = cells[k..].iter().copied().collect();
            ensure(whole.has_filter(&filter), "prefix is not a filter", (w, k))?;
            ensure(whole.has_ideal(&ideal), "suffix is not an ideal", (w, k))?;
            ensure(
                region_class(d, &filter) == cf_normal_form(d, &top).unwrap()
                    && region_class(d, &ideal) == cf_normal_form(d, &bottom).unwrap(),
                "factor heaps do not match the factors",
                (w, k),
            )?;
            splits += 1;
        }
    }
    Ok(json!({ "splits": splits }))
}

/// Gluing is checked on `E(2)`, where every full-support pair up to the
/// length bound is cheap.
fn check_gluing(ctx: &Ctx) -> Outcome {
    let d2 = Diagram::new(2).unwrap();
    let max_len = 8.min(ctx.level.word_len(2) + 1);
    let full: Vec<(ERegion, Weight, Weight)> = minuscule_by_length(d2, max_len, DEFAULT_BUDGET)
        .unwrap()
        .into_iter()
        .flatten()
        .filter(|w| w.has_full_support(d2))
        .map(|w| {
            let (lower, upper) = weights_of(d2, &w).unwrap();
            (rank_and_embed(d2, &w).unwrap(), lower, upper)
        })
        .collect();
    let mut glued = 0;
    for (low, _, low_upper) in &full {
        for (high, high_lower, _) in &full {
            if low_upper != high_lower {
                continue;
            }
            let span = (low.len() + high.len()) as i64;
            let ok = (-span..=span).any(|k| {
                let top = high.shifted(k);
                let union = low.union(&top);
                union.len() == low.len() + top.len()
                    && union.is_convex_direct(d2)
                    && union.has_ideal(low)
            });
            ensure(ok, "no shift glues the pair", (low, high))?;
            glued += 1;
        }
    }
    ensure(glued > 0, "no matching pairs", ())?;
    Ok(json!({ "full_support_heaps": full.len(), "glued_pairs": glued }))
}

fn check_coxeter_elements(ctx: &Ctx) -> Outcome {
    let d = ctx.d;
    let mut classes = BTreeSet::new();
    for lambda in Weight::all(d.n()) {
        let c = coxeter_word(d, &lambda).unwrap();
        let (lo, hi) = weights_of(d, &c).map_err(|e| json!(e.to_string()))?;
        ensure(lo == lambda && hi == lambda, "Coxeter weights differ from the contour", &lambda)?;
        classes.insert(cf_normal_form(d, &c).unwrap());
    }
    ensure(classes.len() == 1 << d.n(), "Coxeter elements coincide", classes.len())?;
    Ok(json!({ "coxeter_elements": classes.len() }))
}

fn check_weight_calculus(_ctx: &Ctx) -> Outcome {
    let d6 = Diagram::new(6).unwrap();
    let w = Word(vec![6, 1, 3, 5, 0, 2, 4, 6, 3]);
    let (lower, upper) = weights_of(d6, &w).map_err(|e| json!(e.to_string()))?;
    let cf = factor_c_form(d6, &w).unwrap().unwrap();
    let ok = lower.to_string() == "+--++-" && upper.to_string() == "+-+-++" && cf.r == 1;
    let rebuilt = construct_c(d6, &cf.lambda, &cf.mu, cf.r).map_err(|e| json!(e.to_string()))?;
    ensure(ok, "wrong weights", (&lower, &upper, cf.r))?;
    ensure(rebuilt == cf_normal_form(d6, &w).unwrap(), "construct_c disagrees", &rebuilt)?;
    Ok(json!({ "lower": lower, "upper": upper, "r": cf.r }))
}

fn check_homomorphism(ctx: &Ctx) -> Outcome {
    let d = ctx.d;
    let words: Vec<&Word> = ctx.words_up_to(6).collect();
    for w in &words {
        let m = matrix_of(&TElement::basis(d, w).unwrap());
        ensure(m.is_polynomial(), "negative power of q", w)?;
        let mut cols = BTreeSet::new();
        for (_, c, p) in m.entries() {
            ensure(p.as_monomial().is_some_and(|(_, k)| k.is_one()), "entry is not a monic monomial", w)?;
            ensure(cols.insert(c), "column with two nonzero entries", w)?;
        }
    }
    let mut rng = ctx.rng(5);
    let trials = ctx.level.random_trials();
    for _ in 0..trials {
        let a = TElement::basis(d, words.choose(&mut rng).unwrap()).unwrap();
        let b = TElement::basis(d, words.choose(&mut rng).unwrap())
            .unwrap()
            .scale(&rat(rng.gen_range(-3..=3), rng.gen_range(1..=3)))
            .add(&TElement::basis(d, words.choose(&mut rng).unwrap()).unwrap())
            .unwrap();
        let lhs = matrix_of(&a.mul(&b).unwrap());
        let rhs = matrix_of(&a).mul(&matrix_of(&b));
        ensure(lhs == rhs, "matrix_of is not multiplicative", (a.to_json().ok(), b.to_json().ok()))?;
    }
    ensure(matrix_of(&TElement::one(d)) == WeightMatrix::identity(d.n()), "kappa(1) != I", ())?;
    Ok(json!({ "basis_words": words.len(), "random_pairs": trials }))
}

fn check_theta(ctx: &Ctx) -> Outcome {
    let d = ctx.d;
    for lambda in Weight::all(d.n()) {
        for c in -2..=2 {
            let j = psi_inv(c, &lambda);
            ensure(j.psi() == (c, lambda.clone()), "psi_inv is not inverse to psi", (c, &lambda))?;
            for i in d.generators() {
                let by_ideal = j.raise(i).map(|k| {
                    let (c2, mu) = k.psi();
                    (mu, c2 - c)
                });
                ensure(
                    by_ideal == apply_generator(d, i, &lambda).unwrap(),
                    "ideal and string actions differ",
                    (i, &lambda, c),
                )?;
            }
        }
        let j = psi_inv(0, &lambda);
        ensure(
            j.raise_word(&coxeter_word(d, &lambda).unwrap()) == Some(j.tau()),
            "the Coxeter element does not act as tau",
            &lambda,
        )?;
    }
    Ok(json!({ "weights": 1usize << d.n() }))
}

type Coord = (usize, usize, i64);

fn check_faithfulness(ctx: &Ctx) -> Outcome {
    let d = ctx.d;
    let words: Vec<&Word> = ctx.words().collect();
    let mut vectors: Vec<BTreeMap<Coord, BigRational>> = Vec::with_capacity(words.len());
    let mut hits: BTreeMap<Coord, usize> = BTreeMap::new();
    let mut witnesses = Vec::with_capacity(words.len());
    let mut max_exp = 0;
    for w in &words {
        let m = matrix_of(&TElement::basis(d, w).unwrap());
        let mut v = BTreeMap::new();
        for (r, c, p) in m.entries() {
            for (e, k) in p.terms() {
                v.insert((r, c, e), k.clone());
                *hits.entry((r, c, e)).or_default() += 1;
                max_exp = max_exp.max(e);
            }
        }
        vectors.push(v);
        let wit = faithfulness_witness(d, w).map_err(|e| json!(e.to_string()))?;
        ensure(wit.from.raise_word(w).as_ref() == Some(&wit.to), "witness pair is not related by w", w)?;
        let region = interval_region(&wit.from, &wit.to).unwrap();
        ensure(region == rank_and_embed(d, w).unwrap(), "witness interval is not the heap of w", w)?;
        witnesses.push(wit.coordinate());
    }
    for (w, coord) in words.iter().zip(&witnesses) {
        ensure(hits.get(coord) == Some(&1), "witness coordinate is shared", (w, coord))?;
    }
    let rank = sparse_rank(&vectors);
    ensure(rank == words.len(), "matrices are dependent", (rank, words.len()))?;
    // evaluating at more points than the degree keeps the rank
    let points: Vec<BigRational> = (0..=max_exp + 1).map(|k| rat(k + 2, 1)).collect();
    let mut basis: EchelonBasis<(usize, usize, usize)> = EchelonBasis::new();
    let mut eval_rank = 0;
    for v in &vectors {
        let mut ev: BTreeMap<(usize, usize, usize), BigRational> = BTreeMap::new();
        for (&(r, c, e), k) in v {
            for (t, x) in points.iter().enumerate() {
                let slot = ev.entry((t, r, c)).or_insert_with(BigRational::zero);
                *slot += k * num::pow(x.clone(), e as usize);
            }
        }
        if basis.insert(&ev) {
            eval_rank += 1;
        }
    }
    ensure(eval_rank == words.len(), "evaluated matrices are dependent", (eval_rank, words.len()))?;
    Ok(json!({ "basis_words": words.len(), "rank": rank, "evaluation_points": points.len() }))
}

fn check_centre(ctx: &Ctx) -> Outcome {
    let d = ctx.d;
    let q = q_element(d);
    ensure(
        matrix_of(&q) == WeightMatrix::scalar(d.n(), LaurentPoly::q()),
        "kappa(Q) != qI",
        (),
    )?;
    for i in d.generators() {
        let g = TElement::generator(d, i).unwrap();
        ensure(q.mul(&g).unwrap() == g.mul(&q).unwrap(), "Q does not commute with a generator", i)?;
    }
    for w in ctx.words_up_to(6) {
        let b = TElement::basis(d, w).unwrap();
        ensure(q.mul(&b).unwrap() == b.mul(&q).unwrap(), "Q does not commute with a basis word", w)?;
    }
    let dim = centre_dimension_low_degree(Diagram::new(2).unwrap());
    ensure(dim == (1, true), "low-degree centre is larger than the scalars", dim)?;
    Ok(json!({ "low_degree_centre_dim": dim.0 }))
}

/// Dimension of the space of elements spanned by basis words of length at
/// most `n` that commute with every generator, and whether it is spanned by
/// the identity.
pub fn centre_dimension_low_degree(d: Diagram) -> (usize, bool) {
    let basis: Vec<Word> = minuscule_by_length(d, d.n(), DEFAULT_BUDGET)
        .expect("tiny enumeration")
        .into_iter()
        .flatten()
        .collect();
    // rows: (generator, output word) coefficient of [g, x]; columns: basis
    let mut rows: BTreeMap<(usize, Word), Vec<BigRational>> = BTreeMap::new();
    for (col, w) in basis.iter().enumerate() {
        let x = TElement::basis(d, w).unwrap();
        for i in d.generators() {
            let g = TElement::generator(d, i).unwrap();
            let comm = g.mul(&x).unwrap().sub(&x.mul(&g).unwrap()).unwrap();
            for (v, c) in comm.terms() {
                rows.entry((i, v.clone()))
                    .or_insert_with(|| vec![BigRational::zero(); basis.len()])[col] += c;
            }
        }
    }
    let ns = if rows.is_empty() {
        (0..basis.len())
            .map(|k| {
                let mut v = vec![BigRational::zero(); basis.len()];
                v[k] = BigRational::one();
                v
            })
            .collect()
    } else {
        Mat::from_rows(rows.into_values().collect()).nullspace()
    };
    let scalar = ns.len() == 1
        && basis[0].is_empty()
        && ns[0].iter().skip(1).all(Zero::is_zero)
        && !ns[0][0].is_zero();
    (ns.len(), scalar)
}

fn check_idempotents(ctx: &Ctx) -> Outcome {
    let d = ctx.d;
    let n = d.n();
    let q = q_element(d);
    let mut sum = WeightMatrix::zero(n);
    let inv_q = LaurentPoly::q_pow(-1);
    for lambda in Weight::all(n) {
        let ul = coxeter_element(d, &lambda).unwrap();
        let e = matrix_of(&ul).mul(&WeightMatrix::scalar(n, inv_q.clone()));
        ensure(e.mul(&e) == e, "u_lambda / q is not idempotent", &lambda)?;
        sum = sum.add(&e);
        for mu in Weight::all(n) {
            let um = coxeter_element(d, &mu).unwrap();
            let prod = ul.mul(&um).unwrap();
            let expected = if lambda == mu { q.mul(&um).unwrap() } else { TElement::zero(d) };
            ensure(prod == expected, "u_lambda u_mu != delta Q u_mu", (&lambda, &mu))?;
            if lambda != mu {
                let f = matrix_of(&um).mul(&WeightMatrix::scalar(n, inv_q.clone()));
                ensure(e.mul(&f).nnz() == 0, "idempotents are not orthogonal", (&lambda, &mu))?;
            }
        }
    }
    ensure(sum == WeightMatrix::identity(n), "idempotents do not sum to 1", ())?;
    Ok(json!({ "pairs": 1usize << (2 * n) }))
}

fn check_sandwich(ctx: &Ctx) -> Outcome {
    let d = ctx.d;
    let coxeters: Vec<(Weight, TElement)> = Weight::all(d.n())
        .into_iter()
        .map(|l| {
            let e = coxeter_element(d, &l).unwrap();
            (l, e)
        })
        .collect();
    let mut count = 0;
    for w in ctx.words_up_to(6) {
        let uw = TElement::basis(d, w).unwrap();
        for (lambda, ul) in &coxeters {
            let left = ul.mul(&uw).unwrap();
            if left.is_zero() {
                continue;
            }
            let matches = coxeters
                .iter()
                .filter(|(_, um)| uw.mul(um).unwrap() == left)
                .count();
            ensure(matches == 1, "sandwich weight is not unique", (w, lambda, matches))?;
            count += 1;
        }
    }
    Ok(json!({ "nonzero_products": count }))
}

fn check_c_form_products(ctx: &Ctx) -> Outcome {
    let d = ctx.d;
    let bound = (2 * (d.n() + 1) + 2).min(ctx.level.word_len(d.n()));
    let full: Vec<(&Word, crate::algebra::CForm)> = ctx
        .words_up_to(bound)
        .filter(|w| w.has_full_support(d))
        .map(|w| (w, factor_c_form(d, w).unwrap().unwrap()))
        .collect();
    for (w, cf) in &full {
        let m = matrix_of(&TElement::basis(d, w).unwrap());
        ensure(
            m == WeightMatrix::unit(&cf.lambda, &cf.mu, cf.r),
            "kappa(C^r) != q^r E",
            w,
        )?;
        let rebuilt = construct_c(d, &cf.lambda, &cf.mu, cf.r).map_err(|e| json!(e.to_string()))?;
        ensure(&&rebuilt == w, "construct_c does not reproduce the class", w)?;
    }
    let mut pairs = 0;
    for (a, fa) in &full {
        let ua = TElement::basis(d, a).unwrap();
        for (b, fb) in &full {
            let prod = ua.mul(&TElement::basis(d, b).unwrap()).unwrap();
            let expected = if fa.mu == fb.lambda {
                let c = construct_c(d, &fa.lambda, &fb.mu, fa.r + fb.r).map_err(|e| json!(e.to_string()))?;
                TElement::basis(d, &c).unwrap()
            } else {
                TElement::zero(d)
            };
            ensure(prod == expected, "C-form product law fails", (a, b))?;
            pairs += 1;
        }
    }
    Ok(json!({ "full_support_words": full.len(), "pairs": pairs, "max_len": bound }))
}

fn check_matrix_units(ctx: &Ctx) -> Outcome {
    let d = ctx.d;
    let mut max_r = 0;
    for lambda in Weight::all(d.n()) {
        for mu in Weight::all(d.n()) {
            let (r, w) = min_c_rank(d, &lambda, &mu).map_err(|e| json!(e.to_string()))?;
            ensure(r <= d.n() as i64 + 2, "needs r > n + 2", (&lambda, &mu, r))?;
            let m = matrix_of(&TElement::basis(d, &w).unwrap());
            ensure(m == WeightMatrix::unit(&lambda, &mu, r), "kappa(C^r) != q^r E", (&lambda, &mu))?;
            max_r = max_r.max(r);
        }
    }
    Ok(json!({ "max_min_r": max_r }))
}

/// First `d` from which every window sum equals `target`, if any.
pub fn window_start(counts: &[usize], window: usize, target: usize) -> Option<usize> {
    let sums: Vec<usize> = counts.windows(window).map(|w| w.iter().sum()).collect();
    let mut start = None;
    for (k, &s) in sums.iter().enumerate() {
        if s == target {
            start.get_or_insert(k);
        } else {
            start = None;
        }
    }
    start
}

fn check_window_counts(ctx: &Ctx) -> Outcome {
    let d2 = Diagram::new(2).unwrap();
    let max_len = match ctx.level {
        Level::Quick => 10,
        _ => default_max_len(2),
    };
    let counts: Vec<usize> = minuscule_by_length(d2, max_len, DEFAULT_BUDGET)
        .map_err(|e| json!(e.to_string()))?
        .iter()
        .map(Vec::len)
        .collect();
    match window_start(&counts, 3, 16) {
        Some(start) if start <= 9 && start + 3 <= counts.len() => {
            Ok(json!({ "counts": counts, "stable_from": start }))
        }
        _ => fail("window sums never settle at 16", counts),
    }
}

fn check_valuation_codimension(_ctx: &Ctx) -> Outcome {
    let d2 = Diagram::new(2).unwrap();
    let layers = minuscule_by_length(d2, 10, DEFAULT_BUDGET).map_err(|e| json!(e.to_string()))?;
    let per_length: Vec<usize> = layers
        .iter()
        .map(|layer| {
            layer
                .iter()
                .filter(|w| TElement::basis(d2, w).unwrap().q_valuation().unwrap() == 0)
                .count()
        })
        .collect();
    let cumulative: Vec<usize> = per_length
        .iter()
        .scan(0, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect();
    let settle = 2 * (d2.n() + 1);
    ensure(
        per_length[settle + 1..].iter().all(|&x| x == 0),
        "valuation-0 elements keep appearing",
        &per_length,
    )?;
    Ok(json!({ "valuation_zero_by_length": per_length, "cumulative": cumulative }))
}

fn check_modules(_ctx: &Ctx) -> Outcome {
    let d2 = Diagram::new(2).unwrap();
    let q = q_element(d2);
    let mut polys = BTreeSet::new();
    for c in [1, 2, 3, 5, 7] {
        for m in 1..=3 {
            let module = build_module(d2, rat(c, 1), m).map_err(|e| json!(e.to_string()))?;
            ensure(module.dim() == 4 * m, "wrong dimension", (c, m))?;
            ensure(module.relations_hold(), "relations fail", (c, m))?;
            ensure(
                module.act(&q).unwrap() == module.expected_q_action(),
                "Q does not act as c + N",
                (c, m),
            )?;
            ensure(module.endomorphism_dim() == m, "End has the wrong dimension", (c, m))?;
            if m <= 2 {
                let irr = module.is_irreducible(DEFAULT_SEED);
                ensure(irr == (m == 1), "irreducibility does not match m = 1", (c, m, irr))?;
            }
            if m == 1 {
                let p: Vec<String> = module.q_char_poly().unwrap().iter().map(|x| x.to_string()).collect();
                polys.insert(p);
            }
        }
    }
    ensure(polys.len() == 5, "characteristic polynomials do not separate c", polys.len())?;
    let t = crate::modules::trivial_module(d2);
    ensure(t.is_irreducible(DEFAULT_SEED) && t.endomorphism_dim() == 1, "trivial module", ())?;
    Ok(json!({ "modules": 15 }))
}
