//! Pairs of chain-ring codes with equal weight enumerators, the closed forms
//! for their low-weight dual counts, and the resulting duality classifier.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::chainring::{orbit_size, ChainRing};
use crate::codes::{ChainCode, ChainModule};
use crate::enumerators::truncated_dual_wwe;
use crate::exactmath::{p_poly, pow, prime_power};
use crate::verdict::{Verdict, Witness};
use crate::weights::{epsilons, Family, WeightTable};
use crate::Error;

/// Default cap on the pair length for end-to-end witness checks.
pub const VERIFY_LENGTH: u64 = 400;

fn chain_params(w: &WeightTable) -> Result<(u64, u32), Error> {
    match w.family() {
        Family::Chain { q, m } => Ok((q, m)),
        _ => Err(Error::Invalid("expected a chain-ring weight".into())),
    }
}

fn check_k(m: u32, k: u32) -> Result<(), Error> {
    if k < 2 || k > m {
        return Err(Error::Invalid(format!("need 2 <= k <= m = {m}, got k = {k}")));
    }
    Ok(())
}

/// Z/p^m when q is prime, otherwise F_q[x]/(x^m).
pub fn default_ring(q: u64, m: u32) -> Result<ChainRing, Error> {
    match prime_power(q) {
        Some((_, 1)) => ChainRing::integers_mod(q, m),
        Some(_) => ChainRing::poly_quotient(q, m),
        None => Err(Error::NotPrimePower(q)),
    }
}

/// a_i = Σ_{j≤i} q^j w_{m−j−1}, for i = 0..k.
pub fn a_coeffs(w: &WeightTable, k: u32) -> Result<Vec<BigInt>, Error> {
    let (q, m) = chain_params(w)?;
    check_k(m, k)?;
    let mut out = Vec::with_capacity(k as usize);
    let mut acc = BigInt::zero();
    for i in 0..k {
        acc += pow(q, i as u64) * w.w((m - i - 1) as usize);
        out.push(acc.clone());
    }
    Ok(out)
}

fn delta_cap_direct(w: &WeightTable, k: u32) -> Result<BigInt, Error> {
    let (q, m) = chain_params(w)?;
    let a = a_coeffs(w, k)?;
    let mut d = BigInt::from(k) * pow(q, (k - 1) as u64) * w.w((m - 1) as usize);
    for (i, ai) in a.iter().enumerate() {
        d -= pow(q, (k as usize - i - 1) as u64) * ai;
    }
    Ok(d)
}

fn delta_cap_epsilon(w: &WeightTable, k: u32) -> Result<BigInt, Error> {
    let (q, m) = chain_params(w)?;
    check_k(m, k)?;
    let e = epsilons(w)?;
    let mut d = p_poly(k as i64 - 1, q) * &e.eps_prime[(m - 1) as usize];
    for j in 2..k {
        d += pow(q, j as u64) * p_poly((k - j) as i64, q) * &e.eps_prime[(m - j) as usize];
    }
    Ok(d)
}

/// Δ_k, the length difference that is balanced by zero columns. Computed from
/// the a_i and from the ε′ expansion; the two must agree.
pub fn delta_cap(w: &WeightTable, k: u32) -> Result<BigInt, Error> {
    let a = delta_cap_direct(w, k)?;
    let b = delta_cap_epsilon(w, k)?;
    if a != b {
        return Err(Error::Inconsistent(format!("Δ_{k}: {a} from a_i, {b} from ε′")));
    }
    Ok(a)
}

#[derive(Debug, Clone)]
pub struct ChainPair {
    pub k: u32,
    pub a: Vec<BigInt>,
    pub delta_cap: BigInt,
    pub c: ChainCode,
    pub d: ChainCode,
}

impl ChainPair {
    pub fn length(&self) -> u64 {
        self.c.length()
    }
}

fn to_count(x: &BigInt) -> Result<u64, Error> {
    x.to_u64()
        .ok_or_else(|| Error::Invalid(format!("multiplicity {x} does not fit in 64 bits")))
}

/// C_k over Z_k and D_k over S_k with equal length and equal w-weight enumerators.
pub fn build_chain_pair(ring: &ChainRing, w: &WeightTable, k: u32) -> Result<ChainPair, Error> {
    let (q, m) = chain_params(w)?;
    if ring.q() != q || ring.m() != m {
        return Err(Error::Invalid("ring does not match the weight family".into()));
    }
    check_k(m, k)?;
    let a = a_coeffs(w, k)?;
    let dc = delta_cap(w, k)?;
    let per = to_count(&(pow(q, (k - 1) as u64) * w.w((m - 1) as usize)))?;
    let mut c_counts = vec![0u64; k as usize + 1];
    c_counts[0] = if dc.is_negative() { to_count(&-&dc)? } else { 0 };
    for c in c_counts.iter_mut().skip(1) {
        *c = per;
    }
    // D_k: each μ ∈ B_i repeated a_i times, B_0 first
    let mut d_counts = vec![if dc.is_positive() { to_count(&dc)? } else { 0 }];
    for i in 0..k {
        let size = q.pow(k - i - 1);
        let ai = to_count(&a[i as usize])?;
        d_counts.extend(std::iter::repeat(ai).take(size as usize));
    }
    let c = ChainCode::new(ring.clone(), ChainModule::Cyclic(k), c_counts)?;
    let d = ChainCode::new(ring.clone(), ChainModule::Semisimple(k), d_counts)?;
    if c.length() != d.length() {
        return Err(Error::Inconsistent("C_k and D_k lengths differ".into()));
    }
    Ok(ChainPair {
        k,
        a,
        delta_cap: dc,
        c,
        d,
    })
}

/// A_d(C_k^⊥) − A_d(D_k^⊥) for ẘ ≤ d < 2ẘ by the singleton closed form.
pub fn general_d_delta(w: &WeightTable, k: u32, d: u64) -> Result<BigInt, Error> {
    let (q, m) = chain_params(w)?;
    check_k(m, k)?;
    let lo = w.min_weight();
    if d < lo || d >= 2 * lo {
        return Err(Error::Invalid(format!("d = {d} lies outside [{lo}, {})", 2 * lo)));
    }
    let idx = w.indices_of(d);
    let per = pow(q, (k - 1) as u64) * w.w((m - 1) as usize);
    let mut out = BigInt::zero();
    if idx.contains(&0) {
        out -= orbit_size(q, m, 0) * delta_cap(w, k)?;
    }
    for &i in idx.iter().filter(|&&i| i > 0 && (i as u32) < k) {
        out -= BigInt::from(k - i as u32) * &per * orbit_size(q, m, i as u32);
    }
    Ok(out)
}

/// δ_k = A_ẘ(C_k^⊥) − A_ẘ(D_k^⊥).
pub fn delta_singleton(w: &WeightTable, k: u32) -> Result<BigInt, Error> {
    general_d_delta(w, k, w.min_weight())
}

/// Singleton count straight from the column multisets: a unit multiple of
/// θ^i kills a column θ^j iff i + j ≥ m, and kills a D-column iff i ≥ 1.
pub fn singleton_count_delta(w: &WeightTable, k: u32, d: u64) -> Result<BigInt, Error> {
    let (q, m) = chain_params(w)?;
    check_k(m, k)?;
    let dc = delta_cap(w, k)?;
    let per = pow(q, (k - 1) as u64) * w.w((m - 1) as usize);
    let zeros_c = if dc.is_negative() { -&dc } else { BigInt::zero() };
    let zeros_d = if dc.is_positive() { dc.clone() } else { BigInt::zero() };
    let len = BigInt::from(k) * &per + &zeros_c;
    let mut out = BigInt::zero();
    for i in w.indices_of(d) {
        let i = i as u32;
        let orb = orbit_size(q, m, i);
        let killed_c = (0..k).filter(|t| i + m - k + t >= m).count();
        let a_c = BigInt::from(killed_c) * &per + &zeros_c;
        let a_d = if i >= 1 { len.clone() } else { zeros_d.clone() };
        out += orb * (a_c - a_d);
    }
    Ok(out)
}

/// (j₀, j₁, j₂) of a weakly monotone weight with at least two values.
pub fn run_indices(w: &WeightTable) -> Option<(u32, u32, Option<u32>)> {
    let v = w.values();
    let m = v.len();
    if v.windows(2).any(|p| p[0] > p[1]) || w.is_constant() {
        return None;
    }
    let j0 = (0..m).take_while(|&i| v[i] == v[0]).last().unwrap() as u32;
    let j1 = (0..m).rev().take_while(|&i| v[i] == v[m - 1]).last().unwrap() as u32;
    let j2 = if j0 + 1 < j1 {
        let t = v[j1 as usize - 1];
        Some((0..j1 as usize).rev().take_while(|&i| v[i] == t).last().unwrap() as u32)
    } else {
        None
    };
    Some((j0, j1, j2))
}

/// δ_k from the ε expansion, valid when I̊ = {0..j₀} with j₀ ≥ 1.
pub fn delta_epsilon_form(w: &WeightTable, k: u32) -> Result<Option<BigInt>, Error> {
    let (q, m) = chain_params(w)?;
    check_k(m, k)?;
    let idx = w.min_indices();
    let j0 = idx.len() as u32 - 1;
    if j0 == 0 || idx.iter().enumerate().any(|(a, &b)| a != b) {
        return Ok(None);
    }
    let e = epsilons(w)?;
    let mut tail = BigInt::zero();
    for j in 1..k {
        tail += pow(q, (j - 1) as u64) * p_poly((k - j) as i64, q) * &e.eps[(m - j) as usize];
    }
    let mut out = -(pow(q, m as u64) * (q - 1) * tail);
    if k >= j0 + 2 {
        let mut coef = BigInt::from(k - j0 - 1) * pow(q, (m + k - j0 - 2) as u64);
        for e2 in (m - 1)..(m + k - j0 - 2) {
            coef -= pow(q, e2 as u64);
        }
        out -= coef * &e.eps[m as usize];
    }
    Ok(Some(out))
}

/// δ_{k+1} − δ_k in closed form, when k ≥ j₀+2 and k ≥ m−j₁.
pub fn delta_step(w: &WeightTable, k: u32) -> Result<Option<BigInt>, Error> {
    let (q, m) = chain_params(w)?;
    let Some((j0, j1, _)) = run_indices(w) else {
        return Ok(None);
    };
    if j0 == 0 || k < j0 + 2 || k + j1 < m || k + 1 > m {
        return Ok(None);
    }
    let e = epsilons(w)?;
    let mut inner = BigInt::from(k - j0) * &e.eps[m as usize];
    for i in (m - j1)..=k {
        inner += pow(q, (j0 + 1) as u64) * BigInt::from(k - i + 1) * &e.eps[(m - i) as usize];
    }
    Ok(Some(-(pow(q, (m + k - j0 - 2) as u64) * (q - 1) * inner)))
}

/// Recomputes A_d(C^⊥) − A_d(D^⊥) and checks wwe(C) = wwe(D) through the
/// symmetrized-enumerator MacWilliams transform.
pub fn verify_pair_delta(pair: &ChainPair, w: &WeightTable, d: u64) -> Result<BigInt, Error> {
    if pair.c.wwe(w) != pair.d.wwe(w) {
        return Err(Error::Inconsistent("primal enumerators differ".into()));
    }
    let kr = pair.c.ring().generalized_kravchuk();
    let cw = w.by_class();
    let dual = |code: &ChainCode| -> Result<BigInt, Error> {
        let se = code.se();
        let total = se.total();
        Ok(truncated_dual_wwe(&se, &kr, &total, &cw, d)?.coeff(d))
    };
    Ok(dual(&pair.c)? - dual(&pair.d)?)
}

#[derive(Debug, Clone, Copy)]
pub struct ClassifyOptions {
    /// Longest pair checked end-to-end; 0 disables the check.
    pub verify_length: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            verify_length: VERIFY_LENGTH,
        }
    }
}

pub fn classify_chain(w: &WeightTable) -> Result<Verdict, Error> {
    classify_chain_with(w, ClassifyOptions::default())
}

fn witness(w: &WeightTable, k: u32, d: u64, opts: ClassifyOptions) -> Result<Option<Witness>, Error> {
    let delta = general_d_delta(w, k, d)?;
    if delta.is_zero() {
        return Ok(None);
    }
    let (q, m) = chain_params(w)?;
    let mut verified = None;
    if let Ok(ring) = default_ring(q, m) {
        let pair = build_chain_pair(&ring, w, k)?;
        if pair.length() <= opts.verify_length {
            verified = Some(verify_pair_delta(&pair, w, d)? == delta);
        }
    }
    Ok(Some(Witness {
        k,
        m: None,
        s: None,
        d,
        delta,
        verified,
    }))
}

pub fn classify_chain_with(w: &WeightTable, opts: ClassifyOptions) -> Result<Verdict, Error> {
    let (q, m) = chain_params(w)?;
    if w.is_constant() {
        return Ok(Verdict::respects("hamming-multiple", "every nonzero orbit has the same weight"));
    }
    if q == 2 && m == 2 && w.w(1) == 2 * w.w(0) {
        return Ok(Verdict::respects(
            "homogeneous-q2-m2",
            "a multiple of the homogeneous weight on a chain ring with q = m = 2",
        ));
    }
    let lo = w.min_weight();
    let imin = w.min_indices();
    let e = epsilons(w)?;

    let mut planned: Option<(&str, u32, u64)> = None;
    if imin[0] != 0 {
        planned = Some(("min-weight-off-units", 1 + imin[0] as u32, lo));
    } else if imin == [0] {
        if m >= 3 {
            let j = (1..m).rev().find(|&j| !e.eps_prime[j as usize].is_zero()).unwrap();
            planned = Some(("only-units-minimal", m - j + 1, lo));
        } else if !e.eps_prime[1].is_zero() {
            planned = Some(("only-units-minimal", 2, lo));
        } else {
            planned = Some(("only-units-minimal-d-w1", 2, w.w(1)));
        }
    } else if let Some((j0, j1, j2)) = run_indices(w) {
        let rule = "weakly-monotone";
        planned = Some(if j0 + j1 >= m {
            (rule, m - j1 + 1, lo)
        } else if j0 + j1 + 2 <= m {
            (rule, j0 + 2, lo)
        } else if BigInt::from(w.w((m - 1) as usize)) != pow(q, (j0 + 1) as u64) * &e.eps[j1 as usize] {
            (rule, j0 + 2, lo)
        } else if let Some(j2) = j2 {
            (rule, m - j2 + 1, lo)
        } else {
            ("weakly-monotone-two-values", j1 + 1, w.w((m - 1) as usize))
        });
    }
    if let Some((rule, k, d)) = planned {
        if let Some(wit) = witness(w, k, d, opts)? {
            return Ok(Verdict::fails(rule, wit));
        }
    }
    for k in 2..=m {
        for &d in &w.singleton_window() {
            if let Some(wit) = witness(w, k, d, opts)? {
                return Ok(Verdict::fails("singleton-scan", wit));
            }
        }
    }
    Ok(Verdict::unknown(
        "singleton-scan-exhausted",
        "every pair (C_k, D_k) has equal singleton counts in the window [ẘ, 2ẘ)",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::homogeneous_chain;

    fn z8(v: &[u64]) -> WeightTable {
        WeightTable::chain(2, v).unwrap()
    }

    #[test]
    fn a_and_delta_fixtures() {
        let w = z8(&[1, 1, 2]);
        assert_eq!(a_coeffs(&w, 3).unwrap(), vec![BigInt::from(2), 4.into(), 8.into()]);
        assert_eq!(delta_cap(&w, 3).unwrap(), BigInt::from(0));
        assert_eq!(delta_cap(&z8(&[1, 2, 2]), 3).unwrap(), BigInt::from(-6));
        assert_eq!(delta_cap(&z8(&[1, 2, 1]), 3).unwrap(), BigInt::from(-11));
    }

    #[test]
    fn small_deltas() {
        assert_eq!(delta_singleton(&z8(&[1, 1, 2]), 3).unwrap(), BigInt::from(-32));
        assert_eq!(delta_singleton(&z8(&[1, 2, 2]), 3).unwrap(), BigInt::from(24));
        assert_eq!(delta_singleton(&z8(&[1, 2, 1]), 3).unwrap(), BigInt::from(40));
        // δ_2 = −|orb(1)|Δ_2 for w_0 = w_2 < w_1
        let w = z8(&[1, 2, 1]);
        assert_eq!(delta_singleton(&w, 2).unwrap(), -BigInt::from(4) * delta_cap(&w, 2).unwrap());
        assert!(delta_singleton(&w, 2).unwrap().is_positive());
    }

    #[test]
    fn window_is_enforced() {
        let w = z8(&[1, 2, 1]);
        assert!(general_d_delta(&w, 2, 2).is_err());
        assert!(general_d_delta(&w, 2, 0).is_err());
    }

    #[test]
    fn pair_shapes() {
        let ring = ChainRing::integers_mod(2, 3).unwrap();
        let p = build_chain_pair(&ring, &z8(&[1, 2, 1]), 3).unwrap();
        assert_eq!(p.c.counts(), &[11, 4, 4, 4]);
        assert_eq!(p.d.counts(), &[0, 1, 1, 1, 1, 5, 5, 9]);
        assert_eq!(p.length(), 23);
    }

    #[test]
    fn epsilon_form_on_homogeneous() {
        let w = homogeneous_chain(2, 3).unwrap();
        assert_eq!(delta_epsilon_form(&w, 3).unwrap(), Some(BigInt::from(-32)));
        assert_eq!(run_indices(&w), Some((1, 2, None)));
    }

    #[test]
    fn classifier_basics() {
        assert!(classify_chain(&homogeneous_chain(2, 2).unwrap()).unwrap().is_respects());
        let v = classify_chain(&homogeneous_chain(2, 3).unwrap()).unwrap();
        let wit = v.witness().unwrap();
        // j₀ + j₁ ≥ m puts the guaranteed negative δ_k at k = 2
        assert_eq!((wit.k, wit.d), (2, 1));
        assert_eq!(wit.delta, BigInt::from(-8));
        assert_eq!(wit.verified, Some(true));
        assert!(classify_chain(&z8(&[1, 2, 1])).unwrap().is_fails());
    }
}
