//! Weights with maximal symmetry, stored by orbit class.
//!
//! Chain family: values w_0..w_{m-1}, w_i being the weight of orb(θ^i).
//! Matrix family: values w_1..w_k, w_i being the weight of rank-i matrices.
//! The weight of zero is always 0 and is never stored.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::chainring::orbit_size;
use crate::exactmath::{choose2, pow, prime_power, qbinom, rat, BigRat};
use crate::matrixring::orbit_size_matrix;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Chain { q: u64, m: u32 },
    Matrix { q: u64, k: u32 },
}

impl Family {
    pub fn q(&self) -> u64 {
        match *self {
            Family::Chain { q, .. } | Family::Matrix { q, .. } => q,
        }
    }

    /// Number of stored values (m or k).
    pub fn len(&self) -> usize {
        match *self {
            Family::Chain { m, .. } => m as usize,
            Family::Matrix { k, .. } => k as usize,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of enumerator classes, zero class included.
    pub fn classes(&self) -> usize {
        self.len() + 1
    }

    /// Class index holding the zero element: m for chain, 0 for matrix.
    pub fn zero_class(&self) -> usize {
        match *self {
            Family::Chain { m, .. } => m as usize,
            Family::Matrix { .. } => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightTable {
    family: Family,
    values: Vec<u64>,
}

impl WeightTable {
    pub fn new(family: Family, values: Vec<u64>) -> Result<Self, Error> {
        if prime_power(family.q()).is_none() {
            return Err(Error::NotPrimePower(family.q()));
        }
        if family.is_empty() {
            return Err(Error::Invalid("m and k must be at least 1".into()));
        }
        if values.len() != family.len() {
            return Err(Error::Invalid(format!(
                "expected {} weight values, got {}",
                family.len(),
                values.len()
            )));
        }
        if values.contains(&0) {
            return Err(Error::Invalid("weight values must be positive".into()));
        }
        Ok(WeightTable { family, values })
    }

    pub fn chain(q: u64, values: &[u64]) -> Result<Self, Error> {
        Self::new(Family::Chain { q, m: values.len() as u32 }, values.to_vec())
    }

    pub fn matrix(q: u64, values: &[u64]) -> Result<Self, Error> {
        Self::new(Family::Matrix { q, k: values.len() as u32 }, values.to_vec())
    }

    pub fn family(&self) -> Family {
        self.family
    }
    pub fn q(&self) -> u64 {
        self.family.q()
    }
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// w_i in the family's own indexing (chain: i in 0..m, matrix: i in 1..=k);
    /// the zero class gives 0.
    pub fn w(&self, i: usize) -> u64 {
        match self.family {
            Family::Chain { m, .. } => {
                if i >= m as usize {
                    0
                } else {
                    self.values[i]
                }
            }
            Family::Matrix { .. } => {
                if i == 0 {
                    0
                } else {
                    self.values[i - 1]
                }
            }
        }
    }

    /// Weight of every enumerator class in class order.
    pub fn by_class(&self) -> Vec<u64> {
        (0..self.family.classes()).map(|c| self.w(c)).collect()
    }

    pub fn max(&self) -> u64 {
        *self.values.iter().max().unwrap()
    }

    pub fn scale(&self, c: u64) -> Result<Self, Error> {
        if c == 0 {
            return Err(Error::Invalid("scale factor must be positive".into()));
        }
        Ok(WeightTable {
            family: self.family,
            values: self.values.iter().map(|v| v * c).collect(),
        })
    }

    pub fn is_constant(&self) -> bool {
        self.values.iter().all(|&v| v == self.values[0])
    }

    /// ẘ, the least value.
    pub fn min_weight(&self) -> u64 {
        *self.values.iter().min().unwrap()
    }

    /// Indices (family indexing) carrying the value d.
    pub fn indices_of(&self, d: u64) -> Vec<usize> {
        let offset = match self.family {
            Family::Chain { .. } => 0,
            Family::Matrix { .. } => 1,
        };
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == d)
            .map(|(i, _)| i + offset)
            .collect()
    }

    /// I̊ = indices achieving ẘ.
    pub fn min_indices(&self) -> Vec<usize> {
        self.indices_of(self.min_weight())
    }

    /// Distinct values d with ẘ ≤ d < 2ẘ, ascending.
    pub fn singleton_window(&self) -> Vec<u64> {
        let lo = self.min_weight();
        let mut v: Vec<u64> = self.values.iter().copied().filter(|&d| d < 2 * lo).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// ε_1..ε_m and ε′_1..ε′_{m−1} of a chain weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsilonData {
    /// `eps[i]` = ε_i for i in 1..=m; index 0 unused.
    pub eps: Vec<BigInt>,
    /// `eps_prime[i]` = ε′_i for i in 1..m; index 0 unused.
    pub eps_prime: Vec<BigInt>,
}

pub fn epsilons(w: &WeightTable) -> Result<EpsilonData, Error> {
    let Family::Chain { q, m } = w.family() else {
        return Err(Error::Invalid("ε data is defined for chain weights".into()));
    };
    let m = m as usize;
    let wi = |i: usize| BigInt::from(w.w(i));
    let mut eps = vec![BigInt::zero(); m + 1];
    for (i, e) in eps.iter_mut().enumerate().skip(1) {
        *e = wi(i) - wi(i - 1);
    }
    let mut eps_prime = vec![BigInt::zero(); m];
    for i in 1..m {
        eps_prime[i] = if i + 1 == m {
            BigInt::from(q) * &eps[m - 1] + &eps[m]
        } else {
            eps[i].clone()
        };
    }
    Ok(EpsilonData { eps, eps_prime })
}

/// Chain homogeneous weight normalised by ζ = q − 1.
pub fn homogeneous_chain(q: u64, m: u32) -> Result<WeightTable, Error> {
    let values = (0..m).map(|i| if i + 1 == m { q } else { q - 1 }).collect();
    WeightTable::new(Family::Chain { q, m }, values)
}

/// Matrix homogeneous weight normalised by ζ = (q^k − 1)⋯(q − 1)/q.
pub fn homogeneous_matrix(k: u32, q: u64) -> Result<WeightTable, Error> {
    if prime_power(q).is_none() {
        return Err(Error::NotPrimePower(q));
    }
    let zeta: BigRat = (1..=k as u64)
        .map(|i| rat(pow(q, i) - 1))
        .product::<BigRat>()
        / rat(q);
    let mut values = Vec::new();
    for rho in 1..=k as u64 {
        let den: BigInt = (0..rho).map(|t| pow(q, k as u64 - t) - 1).product();
        let s = if rho % 2 == 1 { -BigInt::one() } else { BigInt::one() };
        let v = &zeta * (BigRat::one() - BigRat::new(s, den));
        if !v.is_integer() || !v.is_positive() {
            return Err(Error::Invalid("homogeneous weight is not a positive integer".into()));
        }
        values.push(v.to_integer().to_u64().ok_or(Error::Invalid("weight overflow".into()))?);
    }
    WeightTable::new(Family::Matrix { q, k }, values)
}

pub fn hamming(family: Family) -> WeightTable {
    WeightTable::new(family, vec![1; family.len()]).expect("valid family")
}

/// c_1..c_k of the block-diagonal form of W_0 (matrix family).
pub fn c_coefficients(w: &WeightTable) -> Result<Vec<BigInt>, Error> {
    let Family::Matrix { q, k } = w.family() else {
        return Err(Error::Invalid("c_j is defined for matrix weights".into()));
    };
    Ok((1..=k as i64)
        .map(|j| {
            let inner: BigInt = (1..=j)
                .map(|l| {
                    let s = if l % 2 == 1 { -BigInt::one() } else { BigInt::one() };
                    s * pow(q, choose2(l)) * qbinom(j, l, q) * w.w(l as usize)
                })
                .sum();
            let s = if j % 2 == 1 { -BigInt::one() } else { BigInt::one() };
            s * pow(q, choose2(j)) * inner
        })
        .collect())
}

pub fn is_degenerate(w: &WeightTable) -> Result<bool, Error> {
    Ok(c_coefficients(w)?.iter().any(Zero::is_zero))
}

/// γ when every nonzero principal left ideal has average weight γ.
pub fn egalitarian_check(w: &WeightTable) -> Option<BigRational> {
    let averages: Vec<BigRat> = match w.family() {
        Family::Chain { q, m } => (0..m)
            .map(|j| {
                let total: BigInt = (j..m).map(|i| orbit_size(q, m, i) * w.w(i as usize)).sum();
                BigRat::new(total, pow(q, (m - j) as u64))
            })
            .collect(),
        Family::Matrix { q, k } => (1..=k as usize)
            .map(|rho| {
                let total: BigInt = (1..=rho)
                    .map(|i| {
                        qbinom(rho as i64, i as i64, q) * orbit_size_matrix(i, k as usize, q) * w.w(i)
                    })
                    .sum();
                BigRat::new(total, pow(q, k as u64 * rho as u64))
            })
            .collect(),
    };
    let first = averages[0].clone();
    averages.iter().all(|a| *a == first).then_some(first)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn homogeneous_values() {
        assert_eq!(homogeneous_chain(2, 3).unwrap().values(), &[1, 1, 2]);
        assert_eq!(homogeneous_chain(2, 2).unwrap().values(), &[1, 2]);
        assert_eq!(homogeneous_chain(3, 1).unwrap().values(), &[3]);
        assert_eq!(homogeneous_matrix(2, 2).unwrap().values(), &[2, 1]);
        assert_eq!(homogeneous_matrix(3, 2).unwrap().values(), &[12, 10, 11]);
        assert_eq!(homogeneous_matrix(2, 3).unwrap().values(), &[6, 5]);
    }

    #[test]
    fn hamming_and_scale() {
        let h = hamming(Family::Chain { q: 2, m: 3 });
        assert_eq!(h.values(), &[1, 1, 1]);
        assert_eq!(hamming(Family::Matrix { q: 2, k: 2 }).values(), &[1, 1]);
        assert_eq!(h.scale(3).unwrap().values(), &[3, 3, 3]);
        assert!(h.scale(0).is_err());
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(WeightTable::chain(6, &[1, 2]).is_err());
        assert!(WeightTable::chain(2, &[1, 0]).is_err());
        assert!(WeightTable::new(Family::Matrix { q: 2, k: 2 }, vec![1]).is_err());
    }

    #[test]
    fn c_coefficients_k2() {
        let w = homogeneous_matrix(2, 2).unwrap();
        let c = c_coefficients(&w).unwrap();
        assert_eq!(c, vec![BigInt::from(2), BigInt::from(-8)]);
        let deg = WeightTable::matrix(2, &[2, 3]).unwrap();
        assert!(is_degenerate(&deg).unwrap());
        for (w1, w2) in [(1u64, 2u64), (4, 5), (3, 7)] {
            let c = c_coefficients(&WeightTable::matrix(2, &[w1, w2]).unwrap()).unwrap();
            assert_eq!(c[0], BigInt::from(w1));
            assert_eq!(c[1], BigInt::from(2 * (-3 * w1 as i64 + 2 * w2 as i64)));
        }
    }

    #[test]
    fn egalitarian() {
        assert_eq!(
            egalitarian_check(&homogeneous_chain(2, 3).unwrap()),
            Some(rat(1))
        );
        assert_eq!(egalitarian_check(&hamming(Family::Chain { q: 2, m: 2 })), None);
        assert_eq!(
            egalitarian_check(&homogeneous_matrix(2, 2).unwrap()),
            Some(BigRat::new(3.into(), 2.into()))
        );
    }

    #[test]
    fn epsilon_data() {
        let e = epsilons(&WeightTable::chain(2, &[1, 2, 1]).unwrap()).unwrap();
        let b = |x: i64| BigInt::from(x);
        assert_eq!(e.eps[1..], [b(1), b(-1), b(-1)]);
        assert_eq!(e.eps_prime[1..], [b(1), b(-3)]);
    }
}
