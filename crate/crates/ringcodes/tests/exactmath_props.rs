use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use ringcodes::exactmath::{pow, qbinom, rat, BigRat};

#[test]
fn qbinom_symmetry() {
    for q in [2, 3, 4, 5] {
        for m in 0..=8 {
            for s in 0..=m {
                assert_eq!(qbinom(m, s, q), qbinom(m, m - s, q), "q={q} m={m} s={s}");
            }
        }
    }
}

#[test]
fn qbinom_pascal() {
    for q in [2u64, 3, 4, 5] {
        for m in 1..=8i64 {
            for s in 0..m {
                let lhs = qbinom(m, s, q);
                let a = pow(q, (m - s) as u64) * qbinom(m - 1, s - 1, q) + qbinom(m - 1, s, q);
                let b = qbinom(m - 1, s - 1, q) + pow(q, s as u64) * qbinom(m - 1, s, q);
                assert_eq!(lhs, a, "first form q={q} m={m} s={s}");
                assert_eq!(lhs, b, "second form q={q} m={m} s={s}");
            }
        }
    }
}

#[test]
fn qbinom_monotone_to_middle() {
    for q in [2, 3, 4, 5] {
        for m in 1..=8i64 {
            for s in 0..m {
                if 2 * s < m {
                    assert!(qbinom(m, s, q) <= qbinom(m, s + 1, q));
                }
            }
        }
    }
}

#[test]
fn qbinom_out_of_range_is_zero() {
    assert!(qbinom(4, -1, 2).is_zero());
    assert!(qbinom(4, 5, 3).is_zero());
    assert!(qbinom(-1, 0, 2).is_zero());
}

// Enough s-spaces avoid a fixed hyperplane to pick q^k of them.
#[test]
fn enough_subspaces() {
    for q in [2u64, 3] {
        for m in 2..=7i64 {
            for k in 1..m {
                for s in 1..k {
                    let room = qbinom(m, s, q) - qbinom(m - 1, s, q);
                    assert!(pow(q, k as u64) <= room, "q={q} m={m} k={k} s={s}");
                }
            }
        }
    }
}

fn arb_rat() -> impl Strategy<Value = BigRat> {
    (-1000i64..1000, 1i64..200).prop_map(|(n, d)| BigRat::new(BigInt::from(n), BigInt::from(d)))
}

fn lowest_terms(x: &BigRat) -> bool {
    x.denom().is_positive() && x.numer().gcd(x.denom()).is_one()
}

proptest! {
    #[test]
    fn rationals_stay_reduced(a in arb_rat(), b in arb_rat()) {
        prop_assert!(lowest_terms(&(&a + &b)));
        prop_assert!(lowest_terms(&(&a * &b)));
        prop_assert!(lowest_terms(&(&a - &b)));
        if !b.is_zero() {
            prop_assert!(lowest_terms(&(&a / &b)));
        }
    }

    #[test]
    fn rational_associativity(a in arb_rat(), b in arb_rat(), c in arb_rat()) {
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
    }

    #[test]
    fn integer_embedding(n in -10_000i64..10_000) {
        let x = rat(n);
        prop_assert!(x.is_integer());
        prop_assert_eq!(x.to_integer(), BigInt::from(n));
    }
}
