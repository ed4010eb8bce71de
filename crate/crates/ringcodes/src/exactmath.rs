//! Exact scalar arithmetic: q-binomials and related closed forms, plus
//! fraction-free linear algebra over the integers.
//!
//! Nothing in this crate uses floating point.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type BigRat = BigRational;

/// `q^e` as a big integer.
pub fn pow(q: u64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(q), e as usize)
}

/// C(j, 2), clamped at zero for j < 2.
pub fn choose2(j: i64) -> u64 {
    if j < 2 {
        0
    } else {
        (j * (j - 1) / 2) as u64
    }
}

fn sign(neg: bool) -> BigInt {
    if neg {
        -BigInt::one()
    } else {
        BigInt::one()
    }
}

/// Gaussian binomial coefficient `[m j]_q`. Zero outside `0 <= j <= m`.
pub fn qbinom(m: i64, j: i64, q: u64) -> BigInt {
    assert!(q >= 2, "q must be at least 2");
    if m < 0 || j < 0 || j > m {
        return BigInt::zero();
    }
    let j = j.min(m - j);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..j {
        num *= pow(q, (m - i) as u64) - 1;
        den *= pow(q, (i + 1) as u64) - 1;
    }
    let (quo, rem) = num.div_rem(&den);
    debug_assert!(rem.is_zero());
    quo
}

/// Σ_j (−1)^j q^{C(j,2)} [k j]_q, which is 1 for k = 0 and 0 otherwise.
pub fn cauchy_alternating_sum(k: i64, q: u64) -> BigInt {
    (0..=k.max(-1))
        .map(|j| sign(j % 2 == 1) * pow(q, choose2(j)) * qbinom(k, j, q))
        .sum()
}

/// p_i = 1 + 2q + 3q² + … + i q^{i−1}, with p_0 = 0.
pub fn p_poly(i: i64, q: u64) -> BigInt {
    (1..=i.max(0))
        .map(|t| BigInt::from(t) * pow(q, (t - 1) as u64))
        .sum()
}

/// Möbius function of the subspace lattice across a codimension-c interval.
pub fn moebius_subspace(c: i64, q: u64) -> BigInt {
    sign(c % 2 == 1) * pow(q, choose2(c))
}

/// Splits `q` as `p^e` by trial division. Returns `None` unless q is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = q;
    let mut d = 2u64;
    while d.saturating_mul(d) <= q {
        if q % d == 0 {
            p = d;
            break;
        }
        d += 1;
    }
    let mut r = q;
    let mut e = 0;
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

pub fn rat(n: impl Into<BigInt>) -> BigRat {
    BigRat::from_integer(n.into())
}

/// Integer matrices are plain row-major vectors of rows.
pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn int_matrix(rows: &[&[i64]]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "dimension mismatch");
            (0..cols)
                .map(|j| {
                    let mut acc = BigInt::zero();
                    for (t, x) in row.iter().enumerate() {
                        if !x.is_zero() && !b[t][j].is_zero() {
                            acc += x * &b[t][j];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn transpose(a: &IntMatrix) -> IntMatrix {
    let cols = a.first().map_or(0, |r| r.len());
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_vec(a: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                .map(|(x, y)| x * y)
                .sum()
        })
        .collect()
}

fn exact_div(a: BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    assert!(r.is_zero(), "Bareiss step was not exact");
    q
}

/// Rank by fraction-free (Bareiss) elimination.
pub fn rank(a: &IntMatrix) -> usize {
    let mut m = a.clone();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = exact_div(v, &prev);
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Determinant of a square integer matrix (Bareiss).
pub fn det(a: &IntMatrix) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut prev = BigInt::one();
    let mut neg = false;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if piv != k {
            m.swap(k, piv);
            neg = !neg;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = exact_div(v, &prev);
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    if neg {
        -prev
    } else {
        prev
    }
}

/// Fraction-free Gauss–Jordan on `[a | rhs]`. On success the left block has
/// become `d·I` and the returned right block `N` satisfies `a·N = d·rhs`.
fn gauss_jordan(a: &IntMatrix, rhs: &IntMatrix) -> Option<(IntMatrix, BigInt)> {
    let n = a.len();
    let extra = rhs.first().map_or(0, |r| r.len());
    let width = n + extra;
    let mut m: IntMatrix = a
        .iter()
        .zip(rhs)
        .map(|(r, s)| {
            assert_eq!(r.len(), n, "matrix must be square");
            r.iter().chain(s.iter()).cloned().collect()
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        let piv = (k..n).find(|&i| !m[i][k].is_zero())?;
        m.swap(k, piv);
        let pivot_row = m[k].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == k {
                continue;
            }
            let f = row[k].clone();
            for j in 0..width {
                if j == k {
                    continue;
                }
                let mut v = &pivot_row[k] * &row[j];
                if !f.is_zero() && !pivot_row[j].is_zero() {
                    v -= &f * &pivot_row[j];
                }
                row[j] = exact_div(v, &prev);
            }
            row[k] = BigInt::zero();
        }
        prev = pivot_row[k].clone();
    }
    let d = prev;
    let n_block = m.into_iter().map(|r| r[n..].to_vec()).collect();
    Some((n_block, d))
}

/// Exact inverse as `(N, d)` with `a·N = d·I`; `None` if singular.
pub fn inverse_scaled(a: &IntMatrix) -> Option<(IntMatrix, BigInt)> {
    let n = a.len();
    let id: IntMatrix = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i32)).collect())
        .collect();
    gauss_jordan(a, &id)
}

/// Solves `a x = b` over the rationals for nonsingular square `a`.
pub fn solve(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigRat>> {
    let rhs: IntMatrix = b.iter().map(|x| vec![x.clone()]).collect();
    let (n, d) = gauss_jordan(a, &rhs)?;
    Some(
        n.into_iter()
            .map(|r| BigRat::new(r[0].clone(), d.clone()))
            .collect(),
    )
}

/// Least common multiple of the denominators of a rational vector.
pub fn denominator_lcm(v: &[BigRat]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Reduces Σ c_e ζ^e, with ζ a primitive n-th root of unity and n = p^a, modulo
/// the n-th cyclotomic polynomial. Returns the value when the sum is rational.
pub fn cyclotomic_sum(coeffs: &[BigInt], p: u64) -> Option<BigInt> {
    let n = coeffs.len();
    let p = p as usize;
    assert!(n >= 1 && n % p == 0 || n == 1, "length must be a power of p");
    if n == 1 {
        return Some(coeffs[0].clone());
    }
    let step = n / p;
    let phi = n - step;
    let mut c = coeffs.to_vec();
    // x^phi = -(1 + x^step + ... + x^{(p-2) step})
    for e in (phi..n).rev() {
        if c[e].is_zero() {
            continue;
        }
        let v = std::mem::take(&mut c[e]);
        let r = e - phi;
        for t in 0..p - 1 {
            c[t * step + r] -= &v;
        }
    }
    c[1..].iter().all(Zero::is_zero).then(|| c[0].clone())
}

pub fn is_nonneg_int(x: &BigRat) -> bool {
    x.is_integer() && !x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn qbinom_values() {
        assert_eq!(qbinom(3, 0, 2), b(1));
        assert_eq!(qbinom(3, 1, 2), b(7));
        assert_eq!(qbinom(2, 1, 2), b(3));
        assert_eq!(qbinom(3, 4, 2), b(0));
        assert_eq!(qbinom(3, -1, 2), b(0));
        assert_eq!(qbinom(4, 2, 3), b(130));
    }

    #[test]
    fn qbinom_counts_lines_in_f2_cubed() {
        // a line is spanned by any of its q-1 nonzero vectors
        let nonzero = 7;
        assert_eq!(qbinom(3, 1, 2), b(nonzero / (2 - 1)));
    }

    #[test]
    fn cauchy_and_p() {
        assert_eq!(cauchy_alternating_sum(0, 5), b(1));
        assert_eq!(cauchy_alternating_sum(3, 2), b(0));
        assert_eq!(cauchy_alternating_sum(2, 3), b(0));
        assert_eq!(p_poly(0, 7), b(0));
        assert_eq!(p_poly(2, 2), b(5));
        assert_eq!(p_poly(3, 2) - 2 * p_poly(2, 2), b(7));
    }

    #[test]
    fn moebius() {
        assert_eq!(moebius_subspace(0, 2), b(1));
        assert_eq!(moebius_subspace(1, 2), b(-1));
        assert_eq!(moebius_subspace(2, 2), b(2));
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(25), Some((5, 2)));
        assert_eq!(prime_power(97), Some((97, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(0), None);
    }

    #[test]
    fn bareiss_basics() {
        let a = int_matrix(&[&[2, 1, 1], &[1, 3, 2], &[1, 0, 0]]);
        assert_eq!(det(&a), b(-1));
        assert_eq!(rank(&a), 3);
        let s = int_matrix(&[&[1, 2], &[2, 4]]);
        assert_eq!(det(&s), b(0));
        assert_eq!(rank(&s), 1);
        assert!(inverse_scaled(&s).is_none());
        let (n, d) = inverse_scaled(&a).unwrap();
        let prod = mat_mul(&a, &n);
        for (i, row) in prod.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert_eq!(*x, if i == j { d.clone() } else { b(0) });
            }
        }
        let x = solve(&a, &[b(4), b(5), b(6)]).unwrap();
        let back: Vec<BigRat> = a
            .iter()
            .map(|r| r.iter().zip(&x).map(|(p, y)| rat(p.clone()) * y).sum())
            .collect();
        assert_eq!(back, vec![rat(4), rat(5), rat(6)]);
    }

    #[test]
    fn cyclotomic_reduction() {
        // 1 + ζ4 + ζ4² + ζ4³ = 0
        assert_eq!(cyclotomic_sum(&[b(1), b(1), b(1), b(1)], 2), Some(b(0)));
        // ζ8 + ζ8^3 + ζ8^5 + ζ8^7 = 0
        let mut c = vec![b(0); 8];
        for e in [1, 3, 5, 7] {
            c[e] = b(1);
        }
        assert_eq!(cyclotomic_sum(&c, 2), Some(b(0)));
        // ζ9^3 + ζ9^6 = -1
        let mut c = vec![b(0); 9];
        c[3] = b(1);
        c[6] = b(1);
        assert_eq!(cyclotomic_sum(&c, 3), Some(b(-1)));
        // ζ4 alone is not rational
        assert_eq!(cyclotomic_sum(&[b(0), b(1), b(0), b(0)], 2), None);
    }
}
