//! Linear codes presented by multiplicity functions on functional orbits.
//!
//! For both families `counts[0]` is the multiplicity of the zero functional;
//! the remaining entries follow the family's functional ordering.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::chainring::{orbit_size as chain_orbit_size, ChainRing};
use crate::enumerators::{specialize, PartitionEnumerator, Wwe};
use crate::exactmath::{pow, qbinom, BigRat};
use crate::matrixring::{orbit_size_matrix, FqMatrix, MatrixSpace, Subspace};
use crate::weights::{egalitarian_check, Family, WeightTable};
use crate::Error;

/// Information modules available over a chain ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChainModule {
    /// Z_k = R/(θ^k); functionals are right multiplication by θ^{m−k+t}, t = 0..k.
    Cyclic(u32),
    /// S_k = F_q^k; functionals x ↦ (x·μ)θ^{m−1} for normalized μ ≠ 0.
    Semisimple(u32),
}

impl ChainModule {
    pub fn k(&self) -> u32 {
        match *self {
            ChainModule::Cyclic(k) | ChainModule::Semisimple(k) => k,
        }
    }
}

/// Nonzero μ ∈ F_q^k normalized so the last nonzero coordinate is 1, grouped
/// as B_0, B_1, …, B_{k−1} (μ ∈ B_i has its 1 at 1-based position k−i), and
/// lexicographic within each group.
pub fn normalized_vectors(q: u64, k: u32) -> Vec<(u32, Vec<u32>)> {
    let k = k as usize;
    let mut out = Vec::new();
    for i in 0..k {
        let pos = k - i - 1;
        let mut group: Vec<Vec<u32>> = (0..q.pow(pos as u32))
            .map(|code| {
                let mut v = vec![0u32; k];
                v[pos] = 1;
                let mut c = code;
                for slot in (0..pos).rev() {
                    v[slot] = (c % q) as u32;
                    c /= q;
                }
                v
            })
            .collect();
        group.sort();
        out.extend(group.into_iter().map(|v| (i as u32, v)));
    }
    out
}

fn encode_vec(v: &[u32], q: u64) -> u32 {
    v.iter().rev().fold(0u64, |acc, &x| acc * q + x as u64) as u32
}

fn decode_vec(mut code: u32, q: u64, k: usize) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = code % q as u32;
            code /= q as u32;
            d
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct ChainCode {
    ring: ChainRing,
    module: ChainModule,
    functionals: Vec<Vec<u32>>,
    counts: Vec<u64>,
}

impl ChainCode {
    pub fn new(ring: ChainRing, module: ChainModule, counts: Vec<u64>) -> Result<Self, Error> {
        let k = module.k();
        if k == 0 {
            return Err(Error::Invalid("module rank must be positive".into()));
        }
        let functionals: Vec<Vec<u32>> = match module {
            ChainModule::Cyclic(k) => {
                if k > ring.m() {
                    return Err(Error::Invalid(format!("Z_{k} needs k <= m = {}", ring.m())));
                }
                (0..k).map(|t| vec![t]).collect()
            }
            ChainModule::Semisimple(k) => {
                if (ring.q() as u128).pow(k) > 1 << 20 {
                    return Err(Error::Invalid("semisimple module too large".into()));
                }
                normalized_vectors(ring.q(), k).into_iter().map(|(_, v)| v).collect()
            }
        };
        if counts.len() != functionals.len() + 1 {
            return Err(Error::Invalid(format!(
                "expected {} multiplicities (zero functional first), got {}",
                functionals.len() + 1,
                counts.len()
            )));
        }
        Ok(ChainCode {
            ring,
            module,
            functionals,
            counts,
        })
    }

    pub fn ring(&self) -> &ChainRing {
        &self.ring
    }
    pub fn module(&self) -> ChainModule {
        self.module
    }
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }
    pub fn family(&self) -> Family {
        Family::Chain {
            q: self.ring.q(),
            m: self.ring.m(),
        }
    }

    /// Human-readable label of functional id `id` (0 is the zero functional).
    pub fn functional_label(&self, id: usize) -> String {
        if id == 0 {
            return "0".into();
        }
        match self.module {
            ChainModule::Cyclic(k) => {
                format!("theta^{}", self.ring.m() - k + self.functionals[id - 1][0])
            }
            ChainModule::Semisimple(_) => {
                let v: Vec<String> = self.functionals[id - 1].iter().map(|x| x.to_string()).collect();
                format!("mu({})", v.join(","))
            }
        }
    }

    pub fn num_functionals(&self) -> usize {
        self.counts.len()
    }

    pub fn length(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn efflength(&self) -> u64 {
        self.length() - self.counts[0]
    }

    fn module_size(&self) -> u32 {
        (self.ring.q() as u32).pow(self.module.k())
    }

    /// Ring element λ(x) for module element code `x` and functional id ≥ 1.
    pub fn pair(&self, x: u32, id: usize) -> u32 {
        let r = &self.ring;
        let m = r.m();
        match self.module {
            ChainModule::Cyclic(k) => {
                let t = self.functionals[id - 1][0];
                r.mul_raw(x, r.theta_pow_raw(m - k + t))
            }
            ChainModule::Semisimple(k) => {
                let f = r.residue_field();
                let xv = decode_vec(x, r.q(), k as usize);
                let dot = xv
                    .iter()
                    .zip(&self.functionals[id - 1])
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
                r.mul_raw(r.lift_raw(dot), r.theta_pow_raw(m - 1))
            }
        }
    }

    /// Class counts (by valuation, zero class m) of the codeword of x.
    fn exponents(&self, x: u32) -> Vec<u32> {
        let m = self.ring.m() as usize;
        let mut e = vec![0u32; m + 1];
        e[m] += self.counts[0] as u32;
        for id in 1..self.counts.len() {
            let c = self.counts[id];
            if c > 0 {
                e[self.ring.valuation_raw(self.pair(x, id)) as usize] += c as u32;
            }
        }
        e
    }

    pub fn kernel_size(&self) -> BigInt {
        let m = self.ring.m() as usize;
        let eff = self.efflength() as u32;
        BigInt::from(
            (0..self.module_size())
                .filter(|&x| self.exponents(x)[m] == eff + self.counts[0] as u32)
                .count(),
        )
    }

    /// Symmetrized enumerator, iterating module elements.
    pub fn se(&self) -> PartitionEnumerator {
        let classes = self.ring.m() as usize + 1;
        let mut tally: HashMap<Vec<u32>, u64> = HashMap::new();
        for x in 0..self.module_size() {
            *tally.entry(self.exponents(x)).or_default() += 1;
        }
        let kernel = self.kernel_size();
        let mut e = PartitionEnumerator::new(classes, self.length());
        for (k, c) in tally {
            e.add_term(k, BigInt::from(c)).expect("valid exponent vector");
        }
        e.div_exact(&kernel).expect("kernel divides every class count")
    }

    pub fn wwe(&self, w: &WeightTable) -> Wwe {
        specialize(&self.se(), &w.by_class())
    }

    /// Module orbit representatives with orbit sizes. Cyclic: valuations 0..=k
    /// (the zero orbit last). Semisimple: the zero vector, then normalized vectors.
    pub fn module_orbits(&self) -> Vec<(u32, BigInt)> {
        let q = self.ring.q();
        match self.module {
            ChainModule::Cyclic(k) => (0..=k)
                .map(|i| {
                    let rep = if i == k { 0 } else { self.ring.theta_pow_raw(i) };
                    (rep, chain_orbit_size(q, k, i))
                })
                .collect(),
            ChainModule::Semisimple(k) => std::iter::once((0, BigInt::one()))
                .chain(
                    normalized_vectors(q, k)
                        .into_iter()
                        .map(|(_, v)| (encode_vec(&v, q), BigInt::from(q - 1))),
                )
                .collect(),
        }
    }

    /// ω on each module orbit, aligned with `module_orbits`.
    pub fn orbit_weights(&self, w: &WeightTable) -> Vec<u64> {
        let cw = w.by_class();
        self.module_orbits()
            .iter()
            .map(|(x, _)| {
                self.exponents(*x)
                    .iter()
                    .zip(&cw)
                    .map(|(&n, &wt)| n as u64 * wt)
                    .sum()
            })
            .collect()
    }

    /// Generator matrix over R: functional columns in id order, zero columns last.
    pub fn generator_matrix(&self) -> Vec<Vec<u32>> {
        let r = &self.ring;
        let m = r.m();
        let rows: Vec<Vec<u32>> = match self.module {
            ChainModule::Cyclic(k) => vec![self
                .functionals
                .iter()
                .map(|t| r.theta_pow_raw(m - k + t[0]))
                .collect()],
            ChainModule::Semisimple(k) => (0..k as usize)
                .map(|l| {
                    self.functionals
                        .iter()
                        .map(|mu| r.mul_raw(r.lift_raw(mu[l]), r.theta_pow_raw(m - 1)))
                        .collect()
                })
                .collect(),
        };
        rows.iter()
            .map(|row| {
                let mut out = Vec::with_capacity(self.length() as usize);
                for (id, &entry) in row.iter().enumerate() {
                    out.extend(std::iter::repeat(entry).take(self.counts[id + 1] as usize));
                }
                out.extend(std::iter::repeat(0).take(self.counts[0] as usize));
                out
            })
            .collect()
    }

    /// Σ_{c∈C} w(c) by orbit enumeration, and the per-coordinate form
    /// Σ_i |C|·(average weight of im λ_i).
    pub fn weight_sum_check(&self, w: &WeightTable) -> WeightSum {
        let kernel = self.kernel_size();
        let code_size = BigInt::from(self.module_size()) / &kernel;
        let direct: BigInt = self
            .module_orbits()
            .iter()
            .zip(self.orbit_weights(w))
            .map(|((_, size), om)| size * om)
            .sum::<BigInt>()
            / &kernel;
        let q = self.ring.q();
        let m = self.ring.m();
        let ideal_avg = |j: u32| -> BigRat {
            let total: BigInt = (j..m).map(|i| chain_orbit_size(q, m, i) * w.w(i as usize)).sum();
            BigRat::new(total, pow(q, (m - j) as u64))
        };
        let mut per_coord = BigRat::zero();
        for id in 1..self.counts.len() {
            let c = self.counts[id];
            if c == 0 {
                continue;
            }
            let j = match self.module {
                ChainModule::Cyclic(k) => m - k + self.functionals[id - 1][0],
                ChainModule::Semisimple(_) => m - 1,
            };
            per_coord += ideal_avg(j) * BigRat::from_integer(BigInt::from(c));
        }
        per_coord *= BigRat::from_integer(code_size.clone());
        let egal = egalitarian_check(w)
            .map(|g| g * BigRat::from_integer(code_size * self.efflength()));
        WeightSum {
            direct,
            per_coordinate: per_coord,
            egalitarian: egal,
        }
    }

    /// Brute-force dual weight enumerator over R^n.
    pub fn brute_force_dual_wwe(&self, w: &WeightTable, budget: u128) -> Result<Wwe, Error> {
        chain_brute_force_dual_wwe(&self.ring, &self.generator_matrix(), w, budget)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSum {
    pub direct: BigInt,
    pub per_coordinate: BigRat,
    pub egalitarian: Option<BigRat>,
}

/// All codewords of the left R-span of the generator rows.
pub fn chain_span(ring: &ChainRing, rows: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let n = rows.first().map_or(0, |r| r.len());
    let mut words = std::collections::BTreeSet::new();
    words.insert(vec![0u32; n]);
    for row in rows {
        let current: Vec<Vec<u32>> = words.iter().cloned().collect();
        for c in current {
            for r in 0..ring.size() {
                let v: Vec<u32> = c
                    .iter()
                    .zip(row)
                    .map(|(&a, &g)| ring.add_raw(a, ring.mul_raw(r, g)))
                    .collect();
                words.insert(v);
            }
        }
    }
    words.into_iter().collect()
}

/// Enumerates y ∈ A^n (A the alphabet of size `contrib[i].len()`), keeping
/// those whose contributions sum to zero, and tallies `weights[y_i]`.
fn brute_dual<F>(
    contrib: &[Vec<Vec<u32>>],
    add: F,
    weights: &[u64],
    budget: u128,
) -> Result<Wwe, Error>
where
    F: Fn(u32, u32) -> u32 + Sync,
{
    let n = contrib.len();
    let alpha = weights.len();
    let needed = (alpha as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::Budget { needed, budget });
    }
    if n == 0 {
        return Ok(Wwe::from_i64(&[(0, 1)]));
    }
    let width = contrib[0][0].len();
    fn rec<F: Fn(u32, u32) -> u32>(
        i: usize,
        acc: &mut Vec<Vec<u32>>,
        wt: u64,
        contrib: &[Vec<Vec<u32>>],
        add: &F,
        weights: &[u64],
        tally: &mut HashMap<u64, u64>,
    ) {
        if i == contrib.len() {
            if acc[i].iter().all(|&x| x == 0) {
                *tally.entry(wt).or_default() += 1;
            }
            return;
        }
        for (r, v) in contrib[i].iter().enumerate() {
            let next: Vec<u32> = acc[i].iter().zip(v).map(|(&a, &b)| add(a, b)).collect();
            acc[i + 1] = next;
            rec(i + 1, acc, wt + weights[r], contrib, add, weights, tally);
        }
    }
    let tallies: Vec<HashMap<u64, u64>> = (0..alpha)
        .into_par_iter()
        .map(|r0| {
            let mut acc = vec![vec![0u32; width]; n + 1];
            acc[1] = contrib[0][r0].clone();
            let mut tally = HashMap::new();
            rec(1, &mut acc, weights[r0], contrib, &add, weights, &mut tally);
            tally
        })
        .collect();
    let mut out = Wwe::new();
    for t in tallies {
        for (d, c) in t {
            out.add(d, BigInt::from(c));
        }
    }
    Ok(out)
}

/// Dual {y : Σ_i g_{l,i} y_i = 0 for every row l}, by exhaustive search.
pub fn chain_brute_force_dual_wwe(
    ring: &ChainRing,
    rows: &[Vec<u32>],
    w: &WeightTable,
    budget: u128,
) -> Result<Wwe, Error> {
    let n = rows.first().map_or(0, |r| r.len());
    let cw = w.by_class();
    let weights: Vec<u64> = (0..ring.size())
        .map(|r| cw[ring.valuation_raw(r) as usize])
        .collect();
    let contrib: Vec<Vec<Vec<u32>>> = (0..n)
        .map(|i| {
            (0..ring.size())
                .map(|r| rows.iter().map(|row| ring.mul_raw(row[i], r)).collect())
                .collect()
        })
        .collect();
    brute_dual(&contrib, |a, b| ring.add_raw(a, b), &weights, budget)
}

/// All k×k matrices over F_q, indexed by their base-q code.
pub fn matrix_ring_elements(space: &MatrixSpace) -> Vec<FqMatrix> {
    let k = space.k();
    let q = space.q();
    let total = q.pow((k * k) as u32);
    (0..total)
        .map(|code| {
            let data = decode_vec(code as u32, q, k * k);
            FqMatrix { rows: k, cols: k, data }
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct MatrixCode {
    space: Arc<MatrixSpace>,
    counts: Vec<u64>,
}

impl MatrixCode {
    pub fn new(space: Arc<MatrixSpace>, counts: Vec<u64>) -> Result<Self, Error> {
        if counts.len() != space.num_orbits() {
            return Err(Error::Invalid(format!(
                "expected {} multiplicities, got {}",
                space.num_orbits(),
                counts.len()
            )));
        }
        Ok(MatrixCode { space, counts })
    }

    pub fn space(&self) -> &Arc<MatrixSpace> {
        &self.space
    }
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }
    pub fn family(&self) -> Family {
        Family::Matrix {
            q: self.space.q(),
            k: self.space.k() as u32,
        }
    }
    pub fn length(&self) -> u64 {
        self.counts.iter().sum()
    }
    pub fn efflength(&self) -> u64 {
        self.length() - self.counts[0]
    }

    fn exponents(&self, x: usize) -> Vec<u32> {
        let mut e = vec![0u32; self.space.k() + 1];
        for (l, &c) in self.counts.iter().enumerate() {
            if c > 0 {
                e[self.space.pair_rank(x, l)] += c as u32;
            }
        }
        e
    }

    /// |ker Λ| as the total size of orbits pairing to zero with every used functional.
    pub fn kernel_size(&self) -> BigInt {
        (0..self.space.num_orbits())
            .filter(|&x| self.exponents(x)[0] as u64 == self.length())
            .map(|x| self.space.orbit_size(x))
            .sum()
    }

    /// Whether the column spaces of the used functionals span F_q^m.
    pub fn functionals_span(&self) -> bool {
        let f = self.space.field();
        let m = self.space.m();
        let mut vecs = Vec::new();
        for (l, &c) in self.counts.iter().enumerate() {
            if c > 0 {
                vecs.extend(self.space.index().get(l).basis().iter().cloned());
            }
        }
        Subspace::span(f, m, &vecs).dim() == m
    }

    pub fn code_size(&self) -> BigInt {
        pow(self.space.q(), (self.space.k() * self.space.m()) as u64) / self.kernel_size()
    }

    /// Rank-partition enumerator from orbit representatives weighted by orbit size.
    /// Counting module elements and dividing by |ker Λ| is exact whether or not
    /// Λ is injective, since each codeword has exactly |ker Λ| preimages.
    pub fn se(&self) -> PartitionEnumerator {
        let n = self.space.num_orbits();
        let tally = (0..n)
            .into_par_iter()
            .map(|x| (self.exponents(x), self.space.orbit_size(x)))
            .fold(HashMap::<Vec<u32>, BigInt>::new, |mut acc, (e, s)| {
                *acc.entry(e).or_default() += s;
                acc
            })
            .reduce(HashMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_default() += v;
                }
                a
            });
        let mut e = PartitionEnumerator::new(self.space.k() + 1, self.length());
        for (k, v) in tally {
            e.add_term(k, v).expect("valid exponent vector");
        }
        e.div_exact(&self.kernel_size()).expect("kernel divides orbit tallies")
    }

    /// Same enumerator by iterating every module element (small spaces only).
    pub fn se_by_elements(&self, budget: u128) -> Result<PartitionEnumerator, Error> {
        let k = self.space.k();
        let m = self.space.m();
        let q = self.space.q();
        let needed = (q as u128).pow((k * m) as u32);
        if needed > budget {
            return Err(Error::Budget { needed, budget });
        }
        let f = self.space.field();
        let mut tally: HashMap<Vec<u32>, u64> = HashMap::new();
        for code in 0..needed as u64 {
            let x = FqMatrix {
                rows: k,
                cols: m,
                data: decode_vec(code as u32, q, k * m),
            };
            let rs = x.row_space(f);
            let idx = self.space.index().position(&rs).expect("row space is indexed");
            *tally.entry(self.exponents(idx)).or_default() += 1;
        }
        let mut e = PartitionEnumerator::new(k + 1, self.length());
        for (kk, v) in tally {
            e.add_term(kk, BigInt::from(v))?;
        }
        e.div_exact(&self.kernel_size())
    }

    pub fn wwe(&self, w: &WeightTable) -> Wwe {
        specialize(&self.se(), &w.by_class())
    }

    /// ω([x]) = Σ_λ w(xλ) η(λ) for every module orbit.
    pub fn orbit_weights(&self, w: &WeightTable) -> Vec<u64> {
        let cw = w.by_class();
        (0..self.space.num_orbits())
            .map(|x| {
                self.exponents(x)
                    .iter()
                    .zip(&cw)
                    .map(|(&n, &wt)| n as u64 * wt)
                    .sum()
            })
            .collect()
    }

    /// Functionals λ_1..λ_n (m×k), each orbit's representative repeated.
    pub fn generator_functionals(&self) -> Vec<FqMatrix> {
        let k = self.space.k();
        let mut out = Vec::new();
        for (l, &c) in self.counts.iter().enumerate() {
            let rep = self.space.index().get(l).functional_rep(k);
            out.extend(std::iter::repeat(rep).take(c as usize));
        }
        out
    }

    /// All distinct codewords (x λ_1, …, x λ_n).
    pub fn codewords(&self, budget: u128) -> Result<Vec<Vec<FqMatrix>>, Error> {
        let k = self.space.k();
        let m = self.space.m();
        let q = self.space.q();
        let needed = (q as u128).pow((k * m) as u32);
        if needed > budget {
            return Err(Error::Budget { needed, budget });
        }
        let f = self.space.field();
        let lams = self.generator_functionals();
        let mut set = std::collections::HashSet::new();
        for code in 0..needed as u64 {
            let x = FqMatrix {
                rows: k,
                cols: m,
                data: decode_vec(code as u32, q, k * m),
            };
            let word: Vec<FqMatrix> = lams.iter().map(|l| x.mul(f, l)).collect();
            set.insert(word);
        }
        Ok(set.into_iter().collect())
    }

    /// Right dual {y ∈ R^n : Σ λ_i y_i = 0}, by exhaustive search.
    pub fn brute_force_dual_wwe(&self, w: &WeightTable, budget: u128) -> Result<Wwe, Error> {
        let f = self.space.field();
        let elems = matrix_ring_elements(&self.space);
        let cw = w.by_class();
        let weights: Vec<u64> = elems.iter().map(|r| cw[r.rank(f)]).collect();
        let lams = self.generator_functionals();
        let needed = (elems.len() as u128).checked_pow(lams.len() as u32).unwrap_or(u128::MAX);
        if needed > budget {
            return Err(Error::Budget { needed, budget });
        }
        let contrib: Vec<Vec<Vec<u32>>> = lams
            .iter()
            .map(|l| elems.iter().map(|r| l.mul(f, r).data).collect())
            .collect();
        brute_dual(&contrib, |a, b| f.add(a, b), &weights, budget)
    }

    /// Σ_{c∈C} w(c) by orbits, and Σ_i |C|·(average weight of im λ_i).
    pub fn weight_sum_check(&self, w: &WeightTable) -> WeightSum {
        let k = self.space.k();
        let q = self.space.q();
        let kernel = self.kernel_size();
        let code_size = self.code_size();
        let direct: BigInt = self
            .orbit_weights(w)
            .iter()
            .enumerate()
            .map(|(x, &om)| self.space.orbit_size(x) * om)
            .sum::<BigInt>()
            / &kernel;
        let avg = |r: usize| -> BigRat {
            let total: BigInt = (1..=r)
                .map(|i| qbinom(r as i64, i as i64, q) * orbit_size_matrix(i, k, q) * w.w(i))
                .sum();
            BigRat::new(total, pow(q, (k * r) as u64))
        };
        let mut per_coord = BigRat::zero();
        for (l, &c) in self.counts.iter().enumerate() {
            let r = self.space.index().dim_of(l);
            if c > 0 && r > 0 {
                per_coord += avg(r) * BigRat::from_integer(BigInt::from(c));
            }
        }
        per_coord *= BigRat::from_integer(code_size.clone());
        let egal = egalitarian_check(w)
            .map(|g| g * BigRat::from_integer(code_size * self.efflength()));
        WeightSum {
            direct,
            per_coordinate: per_coord,
            egalitarian: egal,
        }
    }

    /// Rank sums η̄_i = Σ_{rk λ = i} η(λ), i = 0..=k.
    pub fn rank_sums(&self) -> Vec<i64> {
        let mut out = vec![0i64; self.space.k() + 1];
        for (l, &c) in self.counts.iter().enumerate() {
            out[self.space.index().dim_of(l)] += c as i64;
        }
        out
    }
}

pub fn to_u64(x: &BigInt) -> Option<u64> {
    x.to_u64()
}
