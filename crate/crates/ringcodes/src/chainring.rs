//! Finite chain rings: Z/p^m (θ = p) and F_q[x]/(x^m) (θ = x).
//!
//! Elements are packed into `0..q^m`. For Z/p^m the packing is the integer
//! itself; for the polynomial ring, base-q digit i is the coefficient of x^i.
//! In both cases the low k digits carry the class of an element modulo θ^k.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactmath::{pow, prime_power, IntMatrix};
use crate::field::FqField;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Representation {
    IntegersModPM,
    PolyQuotient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingTag {
    pub q: u64,
    pub m: u32,
    pub repr: Representation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChainElement {
    tag: RingTag,
    value: u32,
}

impl ChainElement {
    pub fn value(&self) -> u32 {
        self.value
    }
}

#[derive(Debug, Clone)]
pub struct ChainRing {
    tag: RingTag,
    p: u64,
    size: u32,
    field: Arc<FqField>,
    mul_table: Option<Arc<Vec<u32>>>,
}

impl PartialEq for ChainRing {
    fn eq(&self, other: &Self) -> bool {
        self.tag == other.tag
    }
}
impl Eq for ChainRing {}

const TABLE_LIMIT: u32 = 256;

impl ChainRing {
    /// Z/p^m.
    pub fn integers_mod(p: u64, m: u32) -> Result<Self, Error> {
        match prime_power(p) {
            Some((_, 1)) => {}
            _ => return Err(Error::Invalid(format!("{p} is not prime"))),
        }
        Self::build(p, m, Representation::IntegersModPM)
    }

    /// F_q[x]/(x^m).
    pub fn poly_quotient(q: u64, m: u32) -> Result<Self, Error> {
        Self::build(q, m, Representation::PolyQuotient)
    }

    fn build(q: u64, m: u32, repr: Representation) -> Result<Self, Error> {
        if m == 0 {
            return Err(Error::Invalid("nilpotency index must be at least 1".into()));
        }
        let field = Arc::new(FqField::new(q)?);
        let size = q
            .checked_pow(m)
            .filter(|&s| s <= u32::MAX as u64 / 2)
            .ok_or_else(|| Error::Invalid(format!("ring of order {q}^{m} is too large")))?
            as u32;
        let mut ring = ChainRing {
            tag: RingTag { q, m, repr },
            p: field.p(),
            size,
            field,
            mul_table: None,
        };
        if size <= TABLE_LIMIT {
            let t: Vec<u32> = (0..size * size)
                .map(|ab| ring.mul_slow(ab / size, ab % size))
                .collect();
            ring.mul_table = Some(Arc::new(t));
        }
        Ok(ring)
    }

    pub fn q(&self) -> u64 {
        self.tag.q
    }
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn m(&self) -> u32 {
        self.tag.m
    }
    pub fn representation(&self) -> Representation {
        self.tag.repr
    }
    pub fn size(&self) -> u32 {
        self.size
    }
    pub fn residue_field(&self) -> &FqField {
        &self.field
    }

    pub fn elem(&self, v: u32) -> ChainElement {
        assert!(v < self.size, "element code out of range");
        ChainElement {
            tag: self.tag,
            value: v,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = ChainElement> + '_ {
        (0..self.size).map(|v| self.elem(v))
    }

    fn check(&self, a: &ChainElement) -> Result<u32, Error> {
        if a.tag == self.tag {
            Ok(a.value)
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, a: ChainElement, b: ChainElement) -> Result<ChainElement, Error> {
        Ok(self.elem(self.add_raw(self.check(&a)?, self.check(&b)?)))
    }
    pub fn mul(&self, a: ChainElement, b: ChainElement) -> Result<ChainElement, Error> {
        Ok(self.elem(self.mul_raw(self.check(&a)?, self.check(&b)?)))
    }
    pub fn neg(&self, a: ChainElement) -> Result<ChainElement, Error> {
        Ok(self.elem(self.neg_raw(self.check(&a)?)))
    }
    pub fn is_unit(&self, a: ChainElement) -> Result<bool, Error> {
        Ok(self.valuation_raw(self.check(&a)?) == 0)
    }
    pub fn valuation(&self, a: ChainElement) -> Result<u32, Error> {
        Ok(self.valuation_raw(self.check(&a)?))
    }

    fn digits(&self, a: u32) -> Vec<u32> {
        let q = self.tag.q as u32;
        let mut a = a;
        (0..self.tag.m)
            .map(|_| {
                let d = a % q;
                a /= q;
                d
            })
            .collect()
    }

    fn pack(&self, d: &[u32]) -> u32 {
        let q = self.tag.q as u32;
        d.iter().rev().fold(0, |acc, &x| acc * q + x)
    }

    pub fn add_raw(&self, a: u32, b: u32) -> u32 {
        match self.tag.repr {
            Representation::IntegersModPM => ((a as u64 + b as u64) % self.size as u64) as u32,
            Representation::PolyQuotient => {
                let (da, db) = (self.digits(a), self.digits(b));
                let s: Vec<u32> = da.iter().zip(&db).map(|(&x, &y)| self.field.add(x, y)).collect();
                self.pack(&s)
            }
        }
    }

    pub fn neg_raw(&self, a: u32) -> u32 {
        match self.tag.repr {
            Representation::IntegersModPM => (self.size - a) % self.size,
            Representation::PolyQuotient => {
                let d: Vec<u32> = self.digits(a).iter().map(|&x| self.field.neg(x)).collect();
                self.pack(&d)
            }
        }
    }

    pub fn mul_raw(&self, a: u32, b: u32) -> u32 {
        match &self.mul_table {
            Some(t) => t[(a * self.size + b) as usize],
            None => self.mul_slow(a, b),
        }
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        match self.tag.repr {
            Representation::IntegersModPM => ((a as u64 * b as u64) % self.size as u64) as u32,
            Representation::PolyQuotient => {
                let (da, db) = (self.digits(a), self.digits(b));
                let m = self.tag.m as usize;
                let mut c = vec![0u32; m];
                for i in 0..m {
                    if da[i] == 0 {
                        continue;
                    }
                    for j in 0..m - i {
                        c[i + j] = self.field.add(c[i + j], self.field.mul(da[i], db[j]));
                    }
                }
                self.pack(&c)
            }
        }
    }

    /// ν(a): the exponent of the largest power of θ dividing a, with ν(0) = m.
    pub fn valuation_raw(&self, a: u32) -> u32 {
        if a == 0 {
            return self.tag.m;
        }
        let base = match self.tag.repr {
            Representation::IntegersModPM => self.p as u32,
            Representation::PolyQuotient => self.tag.q as u32,
        };
        let mut a = a;
        let mut v = 0;
        while a % base == 0 {
            a /= base;
            v += 1;
        }
        v
    }

    /// θ^i (zero once i ≥ m).
    pub fn theta_pow_raw(&self, i: u32) -> u32 {
        if i >= self.tag.m {
            0
        } else {
            (self.tag.q as u32).pow(i)
        }
    }

    /// Embeds a residue-field element as a ring element of valuation 0 (or 0).
    pub fn lift_raw(&self, a: u32) -> u32 {
        debug_assert!((a as u64) < self.tag.q);
        a
    }

    /// Order N of the root of unity ζ used by the generating character.
    pub fn character_order(&self) -> u64 {
        match self.tag.repr {
            Representation::IntegersModPM => self.size as u64,
            Representation::PolyQuotient => self.p,
        }
    }

    /// e with χ(s) = ζ_N^e. For Z/p^m this is s itself; for F_q[x]/(x^m) it is
    /// the trace of the coefficient of x^{m−1}.
    pub fn character_exponent(&self, s: u32) -> u64 {
        match self.tag.repr {
            Representation::IntegersModPM => s as u64,
            Representation::PolyQuotient => {
                let top = self.digits(s)[self.tag.m as usize - 1];
                self.field.trace(top) as u64
            }
        }
    }

    /// |orb(θ^i)|.
    pub fn orbit_size(&self, i: u32) -> BigInt {
        orbit_size(self.tag.q, self.tag.m, i)
    }

    pub fn generalized_kravchuk(&self) -> IntMatrix {
        generalized_kravchuk(self.tag.q, self.tag.m)
    }
}

/// q^{m−i−1}(q−1) for i < m, and 1 for i = m.
pub fn orbit_size(q: u64, m: u32, i: u32) -> BigInt {
    assert!(i <= m);
    if i == m {
        BigInt::one()
    } else {
        pow(q, (m - i - 1) as u64) * (q - 1)
    }
}

/// Integer character-sum matrix K with K_{ij} = Σ_{s ∈ orb(θ^i)} χ(θ^j s).
pub fn generalized_kravchuk(q: u64, m: u32) -> IntMatrix {
    let m = m as i64;
    (0..=m)
        .map(|i| {
            (0..=m)
                .map(|j| {
                    if i == m {
                        BigInt::one()
                    } else if i + j <= m - 2 {
                        BigInt::zero()
                    } else if i + j == m - 1 {
                        -pow(q, (m - i - 1) as u64)
                    } else {
                        pow(q, (m - i - 1) as u64) * (q - 1)
                    }
                })
                .collect()
        })
        .collect()
}
