//! Finite fields F_q with q = p^e, elements packed as integers `0..q` whose
//! base-p digits are polynomial coefficients (digit i is the coefficient of x^i).

use crate::exactmath::prime_power;
use crate::Error;

/// Conway polynomials, low coefficient first, leading 1 included.
const BUILTIN: &[(u64, &[u64])] = &[
    (4, &[1, 1, 1]),
    (8, &[1, 1, 0, 1]),
    (9, &[2, 2, 1]),
    (16, &[1, 1, 0, 0, 1]),
    (25, &[2, 4, 1]),
    (27, &[1, 2, 0, 1]),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FqField {
    p: u64,
    e: u32,
    q: u64,
    modulus: Vec<u64>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl FqField {
    /// The field of order q, using the built-in modulus table for extension fields.
    pub fn new(q: u64) -> Result<Self, Error> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if e == 1 {
            return Self::with_modulus(p, &[0, 1]);
        }
        let (_, modulus) = BUILTIN
            .iter()
            .find(|(qq, _)| *qq == q)
            .ok_or(Error::NoFieldModel(q))?;
        Self::with_modulus(p, modulus)
    }

    /// Field F_p[x]/(f) for a monic f given low coefficient first.
    pub fn with_modulus(p: u64, modulus: &[u64]) -> Result<Self, Error> {
        match prime_power(p) {
            Some((_, 1)) => {}
            _ => return Err(Error::Invalid(format!("{p} is not prime"))),
        }
        let e = modulus.len().saturating_sub(1) as u32;
        if e == 0 || *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::Invalid("modulus must be monic with coefficients below p".into()));
        }
        let q = p.pow(e);
        if q > 1 << 16 {
            return Err(Error::Invalid(format!("field order {q} too large for table arithmetic")));
        }
        let mut f = FqField {
            p,
            e,
            q,
            modulus: modulus.to_vec(),
            exp: Vec::new(),
            log: Vec::new(),
        };
        if q == 2 {
            f.exp = vec![1];
            f.log = vec![0, 0];
            return Ok(f);
        }
        for g in 1..q as u32 {
            let mut powers = Vec::with_capacity(q as usize - 1);
            let mut cur = 1u32;
            loop {
                powers.push(cur);
                cur = f.slow_mul(cur, g);
                if cur == 1 || powers.len() >= q as usize {
                    break;
                }
            }
            if powers.len() == q as usize - 1 && cur == 1 {
                let mut log = vec![0u32; q as usize];
                for (i, &x) in powers.iter().enumerate() {
                    log[x as usize] = i as u32;
                }
                f.exp = powers;
                f.log = log;
                return Ok(f);
            }
        }
        Err(Error::Reducible(p))
    }

    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.e
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    fn digits(&self, a: u32) -> Vec<u64> {
        let mut a = a as u64;
        (0..self.e)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    fn pack(&self, d: &[u64]) -> u32 {
        d.iter().rev().fold(0u64, |acc, &x| acc * self.p + x) as u32
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let e = self.e as usize;
        let mut prod = vec![0u64; 2 * e];
        for i in 0..e {
            for j in 0..e {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % self.p;
            }
        }
        for t in (e..2 * e).rev() {
            let c = prod[t];
            if c == 0 {
                continue;
            }
            prod[t] = 0;
            for i in 0..e {
                let sub = c * self.modulus[i] % self.p;
                prod[t - e + i] = (prod[t - e + i] + self.p - sub) % self.p;
            }
        }
        self.pack(&prod[..e])
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return ((a as u64 + b as u64) % self.p) as u32;
        }
        if self.p == 2 {
            return a ^ b;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.pack(&s)
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        if self.e == 1 {
            return ((self.p - a as u64) % self.p) as u32;
        }
        let d: Vec<u64> = self.digits(a).iter().map(|x| (self.p - x) % self.p).collect();
        self.pack(&d)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q as usize - 1;
        self.exp[(self.log[a as usize] as usize + self.log[b as usize] as usize) % n]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.q as usize - 1;
        Some(self.exp[(n - self.log[a as usize] as usize) % n])
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = self.q - 1;
        self.exp[((self.log[a as usize] as u64 * (k % n)) % n) as usize]
    }

    /// Absolute trace to F_p, returned as an integer in `0..p`.
    pub fn trace(&self, a: u32) -> u32 {
        let mut acc = 0;
        let mut cur = a;
        for _ in 0..self.e {
            acc = self.add(acc, cur);
            cur = self.pow(cur, self.p);
        }
        debug_assert!((acc as u64) < self.p);
        acc
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q as u32
    }
}
