//! Finite-dimensional modules `M_{c,m}`: the sign-string module with `q`
//! specialised to `c + N`, `N` nilpotent of order `m`, together with the
//! trivial module.

use num::{BigInt, BigRational, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::TElement;
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::laurent::format_rational;
use crate::linalg::{EchelonBasis, Mat};
use crate::rep::apply_generator;
use crate::weight::Weight;

/// Number of random vectors `is_irreducible` tries besides the basis.
pub const RANDOM_TEST_VECTORS: usize = 20;

/// Basis `weight (x) (q - c)^j`, indexed `weight.index() * m + j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteModule {
    diagram: Diagram,
    c: BigRational,
    m: usize,
    dim: usize,
    gens: Vec<Mat>,
}

#[derive(Serialize)]
struct ModuleJson {
    n: usize,
    c: String,
    m: usize,
    dim: usize,
    generators: Vec<Vec<Vec<String>>>,
}

/// `c I + N` on `k[q] / (q - c)^m` in the basis `(q - c)^j`.
pub fn q_block(c: &BigRational, m: usize) -> Mat {
    let mut b = Mat::scalar(m, c);
    for j in 0..m.saturating_sub(1) {
        b[(j + 1, j)] = BigRational::one();
    }
    b
}

pub fn build_module(d: Diagram, c: BigRational, m: usize) -> Result<FiniteModule> {
    if c.is_zero() {
        return Err(Error::ZeroScalar);
    }
    if m < 1 {
        return Err(Error::BadNilpotency);
    }
    let n = d.n();
    let dim = (1usize << n) * m;
    let block = q_block(&c, m);
    let powers: Vec<Mat> = (0..=1).map(|e| block.pow(e)).collect();
    let mut gens = Vec::with_capacity(d.num_generators());
    for i in d.generators() {
        let mut g = Mat::zeros(dim, dim);
        for s in Weight::all(n) {
            if let Some((t, e)) = apply_generator(d, i, &s)? {
                let p = &powers[e as usize];
                for a in 0..m {
                    for b in 0..m {
                        g[(t.index() * m + a, s.index() * m + b)] = p[(a, b)].clone();
                    }
                }
            }
        }
        gens.push(g);
    }
    Ok(FiniteModule {
        diagram: d,
        c,
        m,
        dim,
        gens,
    })
}

/// The one-dimensional module on which every generator acts as zero.
pub fn trivial_module(d: Diagram) -> FiniteModule {
    FiniteModule {
        diagram: d,
        c: BigRational::zero(),
        m: 1,
        dim: 1,
        gens: vec![Mat::zeros(1, 1); d.num_generators()],
    }
}

impl FiniteModule {
    pub fn diagram(&self) -> Diagram {
        self.diagram
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn c(&self) -> &BigRational {
        &self.c
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn generator(&self, i: usize) -> &Mat {
        &self.gens[i]
    }

    /// Matrix of an algebra element; words act rightmost letter first.
    pub fn act(&self, a: &TElement) -> Result<Mat> {
        if a.n() != self.diagram.n() {
            return Err(Error::RankMismatch(self.diagram.n(), a.n()));
        }
        let mut out = Mat::zeros(self.dim, self.dim);
        for (w, coeff) in a.terms() {
            let mut prod = Mat::identity(self.dim);
            for &i in w.iter() {
                prod = prod.mul(&self.gens[i]);
            }
            out = out.add(&prod.scale(coeff));
        }
        Ok(out)
    }

    /// `c I + N` repeated over the weights.
    pub fn expected_q_action(&self) -> Mat {
        if self.dim == 1 && self.c.is_zero() {
            return Mat::zeros(1, 1);
        }
        let block = q_block(&self.c, self.m);
        let mut out = Mat::zeros(self.dim, self.dim);
        for w in 0..self.dim / self.m {
            for a in 0..self.m {
                for b in 0..self.m {
                    out[(w * self.m + a, w * self.m + b)] = block[(a, b)].clone();
                }
            }
        }
        out
    }

    /// The defining relations of `T(n)` on the action matrices.
    pub fn relations_hold(&self) -> bool {
        let n = self.diagram.n();
        let g = &self.gens;
        let zero = |x: Mat| x.is_zero();
        for i in 0..=n {
            if !zero(g[i].mul(&g[i])) {
                return false;
            }
            for j in 0..=n {
                if i.abs_diff(j) > 1 && g[i].mul(&g[j]) != g[j].mul(&g[i]) {
                    return false;
                }
            }
        }
        for i in 1..n - 1 {
            if !zero(g[i].mul(&g[i + 1]).mul(&g[i])) || !zero(g[i + 1].mul(&g[i]).mul(&g[i + 1])) {
                return false;
            }
        }
        zero(g[1].mul(&g[0]).mul(&g[1])) && zero(g[n - 1].mul(&g[n]).mul(&g[n - 1]))
    }

    /// Dimension of `{X : X g = g X for every generator g}`.
    pub fn endomorphism_dim(&self) -> usize {
        let dim = self.dim;
        let unknowns = dim * dim;
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        for g in &self.gens {
            // (X g - g X)_{ij} = sum_k X_{ik} g_{kj} - g_{ik} X_{kj}
            for i in 0..dim {
                for j in 0..dim {
                    let mut row = vec![BigRational::zero(); unknowns];
                    for k in 0..dim {
                        row[i * dim + k] += &g[(k, j)];
                        row[k * dim + j] -= &g[(i, k)];
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        if rows.is_empty() {
            return unknowns;
        }
        unknowns - Mat::from_rows(rows).rank()
    }

    /// Dimension of the submodule generated by `v`.
    pub fn cyclic_dim(&self, v: &[BigRational]) -> usize {
        let to_map = |x: &[BigRational]| {
            x.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k, c.clone()))
                .collect::<std::collections::BTreeMap<usize, BigRational>>()
        };
        let mut basis = EchelonBasis::new();
        let mut queue = vec![v.to_vec()];
        if !basis.insert(&to_map(v)) {
            return 0;
        }
        while let Some(x) = queue.pop() {
            for g in &self.gens {
                let y = g.mul_vec(&x);
                if basis.insert(&to_map(&y)) {
                    queue.push(y);
                }
            }
        }
        basis.dim()
    }

    /// Whether every test vector (the basis vectors and seeded random
    /// vectors) generates the whole module.
    pub fn is_irreducible(&self, seed: u64) -> bool {
        let mut tests: Vec<Vec<BigRational>> = (0..self.dim)
            .map(|k| {
                let mut v = vec![BigRational::zero(); self.dim];
                v[k] = BigRational::one();
                v
            })
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..RANDOM_TEST_VECTORS {
            tests.push(
                (0..self.dim)
                    .map(|_| {
                        BigRational::new(
                            BigInt::from(rng.gen_range(-9i64..=9)),
                            BigInt::from(rng.gen_range(1i64..=5)),
                        )
                    })
                    .collect(),
            );
        }
        tests
            .iter()
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .all(|v| self.cyclic_dim(v) == self.dim)
    }

    /// Characteristic polynomial of the action of `Q`, constant term first.
    pub fn q_char_poly(&self) -> Result<Vec<BigRational>> {
        Ok(self.act(&crate::algebra::q_element(self.diagram))?.char_poly())
    }

    pub fn to_json(&self) -> String {
        let doc = ModuleJson {
            n: self.diagram.n(),
            c: format_rational(&self.c),
            m: self.m,
            dim: self.dim,
            generators: self
                .gens
                .iter()
                .map(|g| {
                    (0..g.rows())
                        .map(|i| g.row(i).iter().map(format_rational).collect())
                        .collect()
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("module serialises")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::rat;

    #[test]
    fn small_modules() {
        let d = Diagram::new(2).unwrap();
        let m = build_module(d, rat(1, 1), 1).unwrap();
        assert_eq!(m.dim(), 4);
        let q = crate::algebra::q_element(d);
        assert_eq!(m.act(&q).unwrap(), Mat::identity(4));
        let m3 = build_module(d, rat(3, 1), 1).unwrap();
        assert_eq!(m3.act(&q).unwrap(), Mat::scalar(4, &rat(3, 1)));
        let m22 = build_module(d, rat(2, 1), 2).unwrap();
        assert_eq!(m22.dim(), 8);
        assert_eq!(m22.act(&q).unwrap(), m22.expected_q_action());
        assert!(m22.relations_hold());
        assert_eq!(build_module(d, rat(0, 1), 1), Err(Error::ZeroScalar));
        assert_eq!(build_module(d, rat(1, 1), 0), Err(Error::BadNilpotency));
    }

    #[test]
    fn endomorphisms_and_irreducibility() {
        let d = Diagram::new(2).unwrap();
        let m31 = build_module(d, rat(3, 1), 1).unwrap();
        assert_eq!(m31.endomorphism_dim(), 1);
        assert!(m31.is_irreducible(7));
        let m32 = build_module(d, rat(3, 1), 2).unwrap();
        assert!(!m32.is_irreducible(7));
        assert_eq!(build_module(d, rat(2, 1), 3).unwrap().endomorphism_dim(), 3);
        let t = trivial_module(d);
        assert_eq!(t.endomorphism_dim(), 1);
        assert!(t.is_irreducible(7));
        assert!(t.relations_hold());
    }

    #[test]
    fn char_polys_separate_scalars() {
        let d = Diagram::new(2).unwrap();
        let a = build_module(d, rat(2, 1), 1).unwrap().q_char_poly().unwrap();
        let b = build_module(d, rat(5, 1), 1).unwrap().q_char_poly().unwrap();
        assert_ne!(a, b);
        // (x - 2)^4
        assert_eq!(a[0], rat(16, 1));
    }
}
