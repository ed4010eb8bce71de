//! M_{k×k}(F_q) acting on M_{k×m}(F_q): linear algebra over F_q, the subspace
//! lattice of F_q^m, and the rank-partition Kravchuk matrix.
//!
//! A rank-j module element x is labelled by its row space, a functional λ by
//! its column space; both are j-dimensional subspaces of F_q^m.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::exactmath::{choose2, pow, qbinom, IntMatrix};
use crate::field::FqField;
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FqMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl FqMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FqMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<u32>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        FqMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, f: &FqField, other: &FqMatrix) -> FqMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(t, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, f: &FqField, other: &FqMatrix) -> FqMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        FqMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self, f: &FqField) -> (FqMatrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(piv) = (r..a.rows).find(|&i| a.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..a.cols {
                    a.data.swap(piv * a.cols + j, r * a.cols + j);
                }
            }
            let inv = f.inv(a.get(r, c)).unwrap();
            for j in 0..a.cols {
                let v = f.mul(inv, a.get(r, j));
                a.set(r, j, v);
            }
            for i in 0..a.rows {
                let factor = a.get(i, c);
                if i == r || factor == 0 {
                    continue;
                }
                for j in 0..a.cols {
                    let v = f.sub(a.get(i, j), f.mul(factor, a.get(r, j)));
                    a.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self, f: &FqField) -> usize {
        self.rref(f).1.len()
    }

    /// Row space as a canonical subspace of F_q^cols.
    pub fn row_space(&self, f: &FqField) -> Subspace {
        let rows: Vec<Vec<u32>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        Subspace::span(f, self.cols, &rows)
    }

    pub fn col_space(&self, f: &FqField) -> Subspace {
        self.transpose().row_space(f)
    }
}

/// A subspace of F_q^m stored by its RREF basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    m: usize,
    basis: Vec<Vec<u32>>,
}

impl Subspace {
    pub fn zero(m: usize) -> Self {
        Subspace { m, basis: Vec::new() }
    }

    pub fn full(m: usize) -> Self {
        let id = FqMatrix::identity(m);
        Subspace {
            m,
            basis: (0..m).map(|i| id.row(i).to_vec()).collect(),
        }
    }

    pub fn span(f: &FqField, m: usize, vectors: &[Vec<u32>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(m);
        }
        let (r, piv) = FqMatrix::from_rows(vectors, m).rref(f);
        Subspace {
            m,
            basis: (0..piv.len()).map(|i| r.row(i).to_vec()).collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.m
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    fn same_ambient(&self, other: &Subspace) -> Result<(), Error> {
        if self.m == other.m {
            Ok(())
        } else {
            Err(Error::Invalid("subspaces live in different ambient spaces".into()))
        }
    }

    /// Orthogonal complement under the standard dot product.
    pub fn perp(&self, f: &FqField) -> Subspace {
        let m = self.m;
        if self.basis.is_empty() {
            return Self::full(m);
        }
        let pivots: Vec<usize> = self
            .basis
            .iter()
            .map(|r| r.iter().position(|&x| x != 0).unwrap())
            .collect();
        let free: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();
        let vecs: Vec<Vec<u32>> = free
            .iter()
            .map(|&fc| {
                let mut v = vec![0u32; m];
                v[fc] = 1;
                for (row, &pc) in self.basis.iter().zip(&pivots) {
                    v[pc] = f.neg(row[fc]);
                }
                v
            })
            .collect();
        Subspace::span(f, m, &vecs)
    }

    pub fn sum(&self, f: &FqField, other: &Subspace) -> Result<Subspace, Error> {
        self.same_ambient(other)?;
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Ok(Subspace::span(f, self.m, &v))
    }

    pub fn intersect(&self, f: &FqField, other: &Subspace) -> Result<Subspace, Error> {
        self.same_ambient(other)?;
        Ok(self.perp(f).sum(f, &other.perp(f))?.perp(f))
    }

    pub fn contains(&self, f: &FqField, other: &Subspace) -> bool {
        self.m == other.m && self.sum(f, other).map(|s| s.dim() == self.dim()).unwrap_or(false)
    }

    /// rk(xλ) for x with row space `self` and λ with column space `y`,
    /// computed as dim X − dim(X ∩ Y^⊥).
    pub fn rank_of_pairing(&self, f: &FqField, y: &Subspace) -> Result<usize, Error> {
        let cap = self.intersect(f, &y.perp(f))?;
        Ok(self.dim() - cap.dim())
    }

    /// Same quantity via rank(B_X · B_Y^T); much cheaper.
    pub fn pairing_rank_fast(&self, f: &FqField, y: &Subspace) -> usize {
        if self.basis.is_empty() || y.basis.is_empty() {
            return 0;
        }
        let bx = FqMatrix::from_rows(&self.basis, self.m);
        let by = FqMatrix::from_rows(&y.basis, self.m);
        bx.mul(f, &by.transpose()).rank(f)
    }

    /// A k×m module element whose row space is this subspace.
    pub fn module_rep(&self, k: usize) -> FqMatrix {
        assert!(self.dim() <= k);
        let mut x = FqMatrix::zeros(k, self.m);
        for (i, r) in self.basis.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                x.set(i, j, v);
            }
        }
        x
    }

    /// An m×k functional whose column space is this subspace.
    pub fn functional_rep(&self, k: usize) -> FqMatrix {
        self.module_rep(k).transpose()
    }
}

/// All subspaces of F_q^m of dimension ≤ maxdim, ordered by ascending
/// dimension and lexicographically on the RREF basis within a dimension.
pub fn enumerate_subspaces(f: &FqField, m: usize, maxdim: usize) -> Vec<Subspace> {
    assert!(maxdim <= m);
    let q = f.q() as u32;
    let mut out = Vec::new();
    for d in 0..=maxdim {
        let mut level = Vec::new();
        for pivots in combinations(m, d) {
            // free positions: row i, column c > pivots[i] with c not a pivot
            let slots: Vec<(usize, usize)> = (0..d)
                .flat_map(|i| {
                    let pv = pivots.clone();
                    (pivots[i] + 1..m).filter(move |c| !pv.contains(c)).map(move |c| (i, c))
                })
                .collect();
            let total = (q as u64).pow(slots.len() as u32);
            for code in 0..total {
                let mut basis = vec![vec![0u32; m]; d];
                for (i, &p) in pivots.iter().enumerate() {
                    basis[i][p] = 1;
                }
                let mut c = code;
                for &(i, col) in &slots {
                    basis[i][col] = (c % q as u64) as u32;
                    c /= q as u64;
                }
                level.push(Subspace { m, basis });
            }
        }
        level.sort();
        out.extend(level);
    }
    out
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, r, &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrbitOrdering {
    /// Ascending dimension, lexicographic on RREF bases.
    Lex,
    /// A fixed hand-picked ordering for k=2, m=3, q=2 (CLI name `paper-k2m3q2`),
    /// kept so the worked M_2(F_2) example vectors reproduce entry for entry.
    PaperK2M3Q2,
}

/// Ordered list of orbit labels (subspaces) grouped by dimension 0..=maxdim.
#[derive(Debug, Clone)]
pub struct OrbitIndex {
    m: usize,
    maxdim: usize,
    subspaces: Vec<Subspace>,
    dim_start: Vec<usize>,
    lookup: HashMap<Subspace, usize>,
}

impl OrbitIndex {
    pub fn lex(f: &FqField, m: usize, maxdim: usize) -> Self {
        Self::from_list(m, maxdim, enumerate_subspaces(f, m, maxdim)).unwrap()
    }

    pub fn with_ordering(
        f: &FqField,
        m: usize,
        maxdim: usize,
        ordering: OrbitOrdering,
    ) -> Result<Self, Error> {
        match ordering {
            OrbitOrdering::Lex => Ok(Self::lex(f, m, maxdim)),
            OrbitOrdering::PaperK2M3Q2 => {
                if f.q() != 2 || m != 3 || maxdim != 2 {
                    return Err(Error::Invalid(
                        "the paper-k2m3q2 ordering needs q=2, k=2, m=3".into(),
                    ));
                }
                Self::from_list(m, maxdim, k2m3q2_list(f))
            }
        }
    }

    /// Accepts any list that contains every subspace of dim ≤ maxdim exactly
    /// once, grouped by ascending dimension.
    pub fn from_list(m: usize, maxdim: usize, subspaces: Vec<Subspace>) -> Result<Self, Error> {
        let mut dim_start = vec![0usize; maxdim + 2];
        let mut lookup = HashMap::new();
        let mut last_dim = 0;
        for (i, s) in subspaces.iter().enumerate() {
            if s.ambient() != m || s.dim() > maxdim || s.dim() < last_dim {
                return Err(Error::Invalid("orbit list not grouped by dimension".into()));
            }
            last_dim = s.dim();
            if lookup.insert(s.clone(), i).is_some() {
                return Err(Error::Invalid("repeated subspace in orbit list".into()));
            }
        }
        for d in 0..=maxdim + 1 {
            dim_start[d] = subspaces.iter().filter(|s| s.dim() < d).count();
        }
        Ok(OrbitIndex {
            m,
            maxdim,
            subspaces,
            dim_start,
            lookup,
        })
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }
    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }
    pub fn ambient(&self) -> usize {
        self.m
    }
    pub fn maxdim(&self) -> usize {
        self.maxdim
    }
    pub fn get(&self, i: usize) -> &Subspace {
        &self.subspaces[i]
    }
    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }
    pub fn position(&self, s: &Subspace) -> Option<usize> {
        self.lookup.get(s).copied()
    }
    pub fn dim_of(&self, i: usize) -> usize {
        self.subspaces[i].dim()
    }
    /// Index range of the subspaces of dimension d.
    pub fn dim_range(&self, d: usize) -> std::ops::Range<usize> {
        self.dim_start[d]..self.dim_start[d + 1]
    }
}

fn k2m3q2_list(f: &FqField) -> Vec<Subspace> {
    let lines: [[u32; 3]; 7] = [
        [1, 0, 1],
        [0, 1, 0],
        [0, 0, 1],
        [1, 1, 1],
        [0, 1, 1],
        [1, 0, 0],
        [1, 1, 0],
    ];
    let planes: [[[u32; 3]; 2]; 7] = [
        [[1, 0, 0], [0, 1, 0]],
        [[1, 0, 1], [0, 1, 0]],
        [[1, 0, 0], [0, 0, 1]],
        [[1, 1, 0], [0, 0, 1]],
        [[1, 0, 0], [0, 1, 1]],
        [[0, 1, 0], [0, 0, 1]],
        [[1, 0, 1], [0, 1, 1]],
    ];
    let mut out = vec![Subspace::zero(3)];
    out.extend(lines.iter().map(|l| Subspace::span(f, 3, &[l.to_vec()])));
    out.extend(
        planes
            .iter()
            .map(|p| Subspace::span(f, 3, &[p[0].to_vec(), p[1].to_vec()])),
    );
    out
}

/// The information module M_{k×m}(F_q) with its orbit index and pairing table.
#[derive(Debug)]
pub struct MatrixSpace {
    field: Arc<FqField>,
    k: usize,
    m: usize,
    index: OrbitIndex,
    pair_rank: Vec<u8>,
}

impl MatrixSpace {
    pub fn new(q: u64, k: usize, m: usize, ordering: OrbitOrdering) -> Result<Self, Error> {
        let field = Arc::new(FqField::new(q)?);
        Self::with_field(field, k, m, ordering)
    }

    pub fn with_field(
        field: Arc<FqField>,
        k: usize,
        m: usize,
        ordering: OrbitOrdering,
    ) -> Result<Self, Error> {
        if k == 0 || k > m {
            return Err(Error::Invalid(format!("need 1 <= k <= m, got k={k}, m={m}")));
        }
        let index = OrbitIndex::with_ordering(&field, m, k, ordering)?;
        let n = index.len();
        let f = &*field;
        let pair_rank: Vec<u8> = (0..n * n)
            .into_par_iter()
            .map(|ij| {
                let (i, j) = (ij / n, ij % n);
                index.get(i).pairing_rank_fast(f, index.get(j)) as u8
            })
            .collect();
        Ok(MatrixSpace {
            field,
            k,
            m,
            index,
            pair_rank,
        })
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }
    pub fn field_arc(&self) -> Arc<FqField> {
        self.field.clone()
    }
    pub fn q(&self) -> u64 {
        self.field.q()
    }
    pub fn k(&self) -> usize {
        self.k
    }
    pub fn m(&self) -> usize {
        self.m
    }
    pub fn index(&self) -> &OrbitIndex {
        &self.index
    }
    pub fn num_orbits(&self) -> usize {
        self.index.len()
    }
    /// Rank of xλ for x in module orbit `x` and λ in functional orbit `l`.
    pub fn pair_rank(&self, x: usize, l: usize) -> usize {
        self.pair_rank[x * self.index.len() + l] as usize
    }
    /// Size of the module orbit with the given index.
    pub fn orbit_size(&self, x: usize) -> BigInt {
        orbit_size_matrix(self.index.dim_of(x), self.k, self.q())
    }
}

/// 𝒮_j = (q^k − 1)(q^k − q)⋯(q^k − q^{j−1}).
pub fn orbit_size_matrix(j: usize, k: usize, q: u64) -> BigInt {
    (0..j).map(|i| pow(q, k as u64) - pow(q, i as u64)).product()
}

/// Number of rank-i matrices r ∈ M_k(F_q) with λr = 0, for λ of rank j.
pub fn ann_count(i: usize, j: usize, k: usize, q: u64) -> BigInt {
    if i + j > k {
        return BigInt::zero();
    }
    orbit_size_matrix(i, k, q) * qbinom((k - j) as i64, i as i64, q)
}

/// Number of b-dim B ⊆ F_q^a meeting a fixed c-dim space in dimension d.
pub fn intersect_count(a: i64, b: i64, c: i64, d: i64, q: u64) -> BigInt {
    if d < 0 || b < d || c < d {
        return BigInt::zero();
    }
    pow(q, ((b - d) * (c - d)) as u64) * qbinom(c, d, q) * qbinom(a - c, b - d, q)
}

/// B(i, ℓ) = Σ_j (−1)^{i−j} q^{C(i−j,2)} q^{kj} [ℓ j]_q.
pub fn b_coeff(i: i64, l: i64, k: i64, q: u64) -> BigInt {
    (0..=l)
        .map(|j| {
            let s = if (i - j).rem_euclid(2) == 1 { -BigInt::one() } else { BigInt::one() };
            s * pow(q, choose2(i - j)) * pow(q, (k * j) as u64) * qbinom(l, j, q)
        })
        .sum()
}

/// Rank-partition Kravchuk matrix, rows and columns indexed by rank 0..=k.
pub fn rank_kravchuk(k: usize, q: u64) -> IntMatrix {
    let k = k as i64;
    (0..=k)
        .map(|i| {
            (0..=k)
                .map(|j| {
                    (0..=i)
                        .map(|l| intersect_count(k, i, k - j, l, q) * b_coeff(i, l, k, q))
                        .sum()
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::int_matrix;

    fn f2() -> FqField {
        FqField::new(2).unwrap()
    }

    #[test]
    fn rref_examples() {
        let f = f2();
        assert_eq!(FqMatrix::zeros(2, 3).rank(&f), 0);
        assert_eq!(FqMatrix::identity(2).rank(&f), 2);
        let a = FqMatrix::from_rows(&[vec![1, 0, 1], vec![0, 0, 0]], 3);
        let (r, piv) = a.rref(&f);
        assert_eq!(r, a);
        assert_eq!(piv.len(), 1);
    }

    #[test]
    fn subspace_counts() {
        let f = f2();
        assert_eq!(enumerate_subspaces(&f, 3, 2).len(), 15);
        assert_eq!(enumerate_subspaces(&f, 2, 2).len(), 5);
        assert_eq!(enumerate_subspaces(&FqField::new(5).unwrap(), 1, 0).len(), 1);
    }

    #[test]
    fn perp_and_pairing() {
        let f = f2();
        let x = Subspace::span(&f, 3, &[vec![1, 0, 0]]);
        assert_eq!(
            x.perp(&f),
            Subspace::span(&f, 3, &[vec![0, 1, 0], vec![0, 0, 1]])
        );
        assert_eq!(Subspace::zero(3).perp(&f), Subspace::full(3));
        let y = Subspace::span(&f, 3, &[vec![1, 0, 1]]);
        assert_eq!(y.rank_of_pairing(&f, &y).unwrap(), 0);
        assert_eq!(x.rank_of_pairing(&f, &x).unwrap(), 1);
        assert_eq!(x.rank_of_pairing(&f, &Subspace::zero(3)).unwrap(), 0);
        assert!(x.sum(&f, &Subspace::zero(2)).is_err());
    }

    #[test]
    fn orbit_sizes_and_ann() {
        assert_eq!(orbit_size_matrix(1, 2, 2), BigInt::from(3));
        assert_eq!(orbit_size_matrix(2, 2, 2), BigInt::from(6));
        assert_eq!(orbit_size_matrix(0, 5, 3), BigInt::from(1));
        let table: Vec<Vec<BigInt>> = (0..3)
            .map(|i| (0..3).map(|j| ann_count(i, j, 2, 2)).collect())
            .collect();
        assert_eq!(table, int_matrix(&[&[1, 1, 1], &[9, 3, 0], &[6, 0, 0]]));
        assert_eq!(ann_count(2, 1, 2, 3), BigInt::zero());
    }

    #[test]
    fn rank_kravchuk_k2() {
        assert_eq!(
            rank_kravchuk(2, 2),
            int_matrix(&[&[1, 1, 1], &[9, 1, -3], &[6, -2, 2]])
        );
        let q = 3i64;
        let k3 = rank_kravchuk(2, 3);
        let expect = int_matrix(&[
            &[1, 1, 1],
            &[(q * q - 1) * (q + 1), q * q - q - 1, -q - 1],
            &[(q * q - q) * (q * q - 1), -q * q + q, q],
        ]);
        assert_eq!(k3, expect);
    }

    #[test]
    fn k2m3q2_ordering_is_complete() {
        let f = f2();
        let idx = OrbitIndex::with_ordering(&f, 3, 2, OrbitOrdering::PaperK2M3Q2).unwrap();
        assert_eq!(idx.len(), 15);
        assert_eq!(idx.dim_range(1), 1..8);
        assert_eq!(idx.dim_range(2), 8..15);
    }
}
