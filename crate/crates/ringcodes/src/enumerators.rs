//! Sparse exact enumerators and MacWilliams transforms.
//!
//! A partition enumerator is a homogeneous polynomial in class variables
//! Z_0..Z_{c-1}. Terms are keyed by exponent vectors; the canonical order is
//! lexicographic on those vectors (the `BTreeMap` order), which is also the
//! serialization order.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::exactmath::IntMatrix;
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionEnumerator {
    classes: usize,
    length: u64,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl PartitionEnumerator {
    pub fn new(classes: usize, length: u64) -> Self {
        PartitionEnumerator {
            classes,
            length,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        classes: usize,
        length: u64,
        terms: impl IntoIterator<Item = (Vec<u32>, BigInt)>,
    ) -> Result<Self, Error> {
        let mut e = Self::new(classes, length);
        for (k, c) in terms {
            e.add_term(k, c)?;
        }
        Ok(e)
    }

    /// Adds `coeff · Π Z_i^{exps_i}`; zero results are dropped.
    pub fn add_term(&mut self, exps: Vec<u32>, coeff: BigInt) -> Result<(), Error> {
        if exps.len() != self.classes {
            return Err(Error::Invalid("exponent vector has the wrong length".into()));
        }
        if exps.iter().map(|&e| e as u64).sum::<u64>() != self.length {
            return Err(Error::Invalid("term degree differs from the code length".into()));
        }
        add_into(&mut self.terms, exps, coeff);
        Ok(())
    }

    pub fn classes(&self) -> usize {
        self.classes
    }
    pub fn length(&self) -> u64 {
        self.length
    }
    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }
    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }
    /// Σ of coefficients; |C| for a code's own enumerator.
    pub fn total(&self) -> BigInt {
        self.terms.values().sum()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exact division of every coefficient.
    pub fn div_exact(&self, d: &BigInt) -> Result<Self, Error> {
        let mut out = Self::new(self.classes, self.length);
        for (k, c) in &self.terms {
            let (quo, rem) = c.div_rem(d);
            if !rem.is_zero() {
                return Err(Error::NonIntegral(format!("coefficient {c} not divisible by {d}")));
            }
            out.terms.insert(k.clone(), quo);
        }
        Ok(out)
    }
}

fn add_into<K: Ord>(map: &mut BTreeMap<K, BigInt>, k: K, c: BigInt) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match map.entry(k) {
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
        Entry::Vacant(v) => {
            v.insert(c);
        }
    }
}

/// Univariate weight enumerator Σ A_j t^j.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Wwe {
    terms: BTreeMap<u64, BigInt>,
}

impl Wwe {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, BigInt)>) -> Self {
        let mut w = Wwe::new();
        for (d, c) in pairs {
            w.add(d, c);
        }
        w
    }

    pub fn from_i64(pairs: &[(u64, i64)]) -> Self {
        Self::from_pairs(pairs.iter().map(|&(d, c)| (d, BigInt::from(c))))
    }

    pub fn add(&mut self, deg: u64, c: BigInt) {
        add_into(&mut self.terms, deg, c);
    }

    pub fn coeff(&self, deg: u64) -> BigInt {
        self.terms.get(&deg).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> &BTreeMap<u64, BigInt> {
        &self.terms
    }

    pub fn total(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn max_degree(&self) -> Option<u64> {
        self.terms.keys().next_back().copied()
    }

    /// Terms of degree ≤ maxdeg.
    pub fn truncate(&self, maxdeg: u64) -> Wwe {
        Wwe {
            terms: self.terms.range(..=maxdeg).map(|(k, v)| (*k, v.clone())).collect(),
        }
    }

    /// Dense coefficient list A_0..A_maxdeg.
    pub fn dense(&self, maxdeg: u64) -> Vec<BigInt> {
        (0..=maxdeg).map(|d| self.coeff(d)).collect()
    }

    /// `1 + 16t + 1848t^2 + …` style rendering up to `maxdeg`.
    pub fn display(&self, maxdeg: Option<u64>) -> String {
        let mut parts = Vec::new();
        for (&d, c) in &self.terms {
            if maxdeg.is_some_and(|m| d > m) {
                parts.push("...".to_string());
                break;
            }
            let mono = match d {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{d}"),
            };
            let body = if d > 0 && c.is_one() {
                mono
            } else {
                format!("{c}{mono}")
            };
            parts.push(body);
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ").replace("+ -", "- ")
        }
    }
}

/// Z_i ↦ t^{w_i}, where `class_weights[i]` is the weight of class i.
pub fn specialize(e: &PartitionEnumerator, class_weights: &[u64]) -> Wwe {
    assert_eq!(class_weights.len(), e.classes(), "class count mismatch");
    let mut w = Wwe::new();
    for (k, c) in e.terms() {
        let deg = k.iter().zip(class_weights).map(|(&n, &wt)| n as u64 * wt).sum();
        w.add(deg, c.clone());
    }
    w
}

type Poly = HashMap<Vec<u32>, BigInt>;

/// (Σ_i K_{ij} Z_i)^n as a sparse map, generated term by term from multinomials.
fn linear_form_power(coeffs: &[BigInt], n: u32) -> Poly {
    let c = coeffs.len();
    let support: Vec<usize> = (0..c).filter(|&i| !coeffs[i].is_zero()).collect();
    let mut out = Poly::new();
    if support.is_empty() {
        if n == 0 {
            out.insert(vec![0; c], BigInt::one());
        }
        return out;
    }
    // binomial row cache
    let mut binom = vec![vec![BigInt::one()]];
    for r in 1..=n as usize {
        let prev = &binom[r - 1];
        let mut row = vec![BigInt::one(); r + 1];
        for t in 1..r {
            row[t] = &prev[t - 1] + &prev[t];
        }
        binom.push(row);
    }
    let powers: Vec<Vec<BigInt>> = coeffs
        .iter()
        .map(|a| {
            let mut v = vec![BigInt::one()];
            for t in 1..=n as usize {
                let next = &v[t - 1] * a;
                v.push(next);
            }
            v
        })
        .collect();
    fn rec(
        pos: usize,
        remaining: u32,
        support: &[usize],
        binom: &[Vec<BigInt>],
        powers: &[Vec<BigInt>],
        exps: &mut Vec<u32>,
        acc: BigInt,
        out: &mut Poly,
    ) {
        let i = support[pos];
        if pos + 1 == support.len() {
            exps[i] = remaining;
            let v = acc * &powers[i][remaining as usize];
            out.insert(exps.clone(), v);
            exps[i] = 0;
            return;
        }
        for e in 0..=remaining {
            exps[i] = e;
            let v = &acc * &binom[remaining as usize][e as usize] * &powers[i][e as usize];
            rec(pos + 1, remaining - e, support, binom, powers, exps, v, out);
        }
        exps[i] = 0;
    }
    let mut exps = vec![0u32; c];
    rec(0, n, &support, &binom, &powers, &mut exps, BigInt::one(), &mut out);
    out
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::with_capacity(a.len().max(b.len()));
    for (ka, ca) in a {
        for (kb, cb) in b {
            let k: Vec<u32> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
            *out.entry(k).or_default() += ca * cb;
        }
    }
    out
}

fn check_kravchuk(e: &PartitionEnumerator, k: &IntMatrix) -> Result<(), Error> {
    if k.len() != e.classes() || k.iter().any(|r| r.len() != e.classes()) {
        return Err(Error::Invalid("Kravchuk matrix does not match the class count".into()));
    }
    Ok(())
}

fn column(k: &IntMatrix, j: usize) -> Vec<BigInt> {
    k.iter().map(|r| r[j].clone()).collect()
}

/// Substitutes 𝒵_j ← Σ_i K_{ij} Z_i, expands, and divides by `code_size`.
pub fn macwilliams_transform(
    e: &PartitionEnumerator,
    k: &IntMatrix,
    code_size: &BigInt,
) -> Result<PartitionEnumerator, Error> {
    check_kravchuk(e, k)?;
    let c = e.classes();
    // distinct (class, exponent) powers needed
    let mut needed: Vec<(usize, u32)> = e
        .terms()
        .keys()
        .flat_map(|exps| exps.iter().enumerate().map(|(j, &n)| (j, n)))
        .filter(|&(_, n)| n > 0)
        .collect();
    needed.sort_unstable();
    needed.dedup();
    let powers: HashMap<(usize, u32), Poly> = needed
        .par_iter()
        .map(|&(j, n)| ((j, n), linear_form_power(&column(k, j), n)))
        .collect();
    let terms: Vec<(&Vec<u32>, &BigInt)> = e.terms().iter().collect();
    let acc: Poly = terms
        .par_iter()
        .map(|(exps, coeff)| {
            let mut prod: Poly = Poly::from([(vec![0u32; c], (*coeff).clone())]);
            for (j, &n) in exps.iter().enumerate() {
                if n > 0 {
                    prod = poly_mul(&prod, &powers[&(j, n)]);
                }
            }
            prod
        })
        .reduce(Poly::new, |mut a, b| {
            for (kk, v) in b {
                *a.entry(kk).or_default() += v;
            }
            a
        });
    let mut out = PartitionEnumerator::new(c, e.length());
    for (kk, v) in acc {
        if v.is_zero() {
            continue;
        }
        let (quo, rem) = v.div_rem(code_size);
        if !rem.is_zero() {
            return Err(Error::NonIntegral(format!(
                "coefficient {v} of {kk:?} is not divisible by |C| = {code_size}"
            )));
        }
        out.terms.insert(kk, quo);
    }
    Ok(out)
}

fn trunc_mul(a: &[BigInt], b: &[BigInt], maxdeg: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); maxdeg + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(maxdeg + 1 - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Dual weight enumerator terms of degree ≤ maxdeg, computed by specializing
/// each linear form to P_j(t) = Σ_i K_{ij} t^{w_i} before expanding.
pub fn truncated_dual_wwe(
    e: &PartitionEnumerator,
    k: &IntMatrix,
    code_size: &BigInt,
    class_weights: &[u64],
    maxdeg: u64,
) -> Result<Wwe, Error> {
    check_kravchuk(e, k)?;
    if class_weights.len() != e.classes() {
        return Err(Error::Invalid("class weights do not match the class count".into()));
    }
    let md = maxdeg as usize;
    let c = e.classes();
    let base: Vec<Vec<BigInt>> = (0..c)
        .map(|j| {
            let mut p = vec![BigInt::zero(); md + 1];
            for (i, &wt) in class_weights.iter().enumerate() {
                if (wt as usize) <= md {
                    p[wt as usize] += &k[i][j];
                }
            }
            p
        })
        .collect();
    let mut max_n = vec![0u32; c];
    for exps in e.terms().keys() {
        for (j, &n) in exps.iter().enumerate() {
            max_n[j] = max_n[j].max(n);
        }
    }
    // successive truncated powers P_j^0..P_j^{max_n[j]}
    let powers: Vec<Vec<Vec<BigInt>>> = (0..c)
        .into_par_iter()
        .map(|j| {
            let mut one = vec![BigInt::zero(); md + 1];
            one[0] = BigInt::one();
            let mut v = vec![one];
            for n in 1..=max_n[j] as usize {
                let next = trunc_mul(&v[n - 1], &base[j], md);
                v.push(next);
            }
            v
        })
        .collect();
    let terms: Vec<(&Vec<u32>, &BigInt)> = e.terms().iter().collect();
    let acc = terms
        .par_iter()
        .map(|(exps, coeff)| {
            let mut prod = vec![BigInt::zero(); md + 1];
            prod[0] = (*coeff).clone();
            for (j, &n) in exps.iter().enumerate() {
                if n > 0 {
                    prod = trunc_mul(&prod, &powers[j][n as usize], md);
                }
            }
            prod
        })
        .reduce(
            || vec![BigInt::zero(); md + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    let mut out = Wwe::new();
    for (d, v) in acc.into_iter().enumerate() {
        let (quo, rem) = v.div_rem(code_size);
        if !rem.is_zero() {
            return Err(Error::NonIntegral(format!(
                "dual coefficient at degree {d} is not divisible by |C| = {code_size}"
            )));
        }
        out.add(d as u64, quo);
    }
    Ok(out)
}

/// The full dual weight enumerator (no truncation).
pub fn dual_wwe(
    e: &PartitionEnumerator,
    k: &IntMatrix,
    code_size: &BigInt,
    class_weights: &[u64],
) -> Result<Wwe, Error> {
    let maxdeg = e.length() * class_weights.iter().copied().max().unwrap_or(0);
    truncated_dual_wwe(e, k, code_size, class_weights, maxdeg)
}
