use num_bigint::BigInt;
use proptest::prelude::*;
use ringcodes::exactmath::{pow, rat, BigRat};
use ringcodes::weights::{
    c_coefficients, egalitarian_check, epsilons, homogeneous_chain, homogeneous_matrix, is_degenerate, WeightTable,
};

#[test]
fn homogeneous_matrix_values_are_integers() {
    for k in 1..=4 {
        for q in [2, 3, 4, 5] {
            let w = homogeneous_matrix(k, q).unwrap_or_else(|e| panic!("k={k} q={q}: {e}"));
            assert_eq!(w.values().len(), k as usize);
        }
    }
}

// w_2 < w_4 < … < ζ < … < w_3 < w_1, and 2w_2 − w_1 > 0 except at (2, 2).
#[test]
fn homogeneous_matrix_order() {
    for k in 1..=4u32 {
        for q in [2u64, 3, 4] {
            let w = homogeneous_matrix(k, q).unwrap();
            let zeta: BigRat = (1..=k as u64).map(|i| rat(pow(q, i) - 1)).product::<BigRat>() / rat(q);
            let even: Vec<u64> = (2..=k as usize).step_by(2).map(|i| w.w(i)).collect();
            let odd: Vec<u64> = (1..=k as usize).step_by(2).map(|i| w.w(i)).collect();
            assert!(even.windows(2).all(|p| p[0] < p[1]), "k={k} q={q}");
            assert!(odd.windows(2).all(|p| p[0] > p[1]), "k={k} q={q}");
            for &e in &even {
                assert!(rat(e) < zeta);
            }
            for &o in &odd {
                assert!(rat(o) > zeta);
            }
            if k >= 2 {
                let gap = 2 * w.w(2) as i64 - w.w(1) as i64;
                if (k, q) == (2, 2) {
                    assert_eq!(gap, 0);
                } else {
                    assert!(gap > 0, "k={k} q={q}");
                }
            }
        }
    }
}

#[test]
fn homogeneous_weights_are_egalitarian() {
    for k in 1..=3 {
        for q in [2, 3] {
            let w = homogeneous_matrix(k, q).unwrap();
            assert!(egalitarian_check(&w).is_some(), "matrix k={k} q={q}");
        }
    }
    for q in [2, 3, 4] {
        for m in 1..=4 {
            let w = homogeneous_chain(q, m).unwrap();
            assert_eq!(egalitarian_check(&w), Some(rat(q - 1)), "chain q={q} m={m}");
        }
    }
}

// Homogeneous weights never have a vanishing c_j.
#[test]
fn homogeneous_is_nondegenerate() {
    for k in 1..=4 {
        for q in [2, 3, 4] {
            let w = homogeneous_matrix(k, q).unwrap();
            assert!(!is_degenerate(&w).unwrap(), "k={k} q={q}");
        }
    }
}

proptest! {
    #[test]
    fn epsilon_scales(q in prop::sample::select(vec![2u64, 3, 4]),
                      vals in prop::collection::vec(1u64..20, 1..5),
                      c in 1u64..7) {
        let w = WeightTable::chain(q, &vals).unwrap();
        let e = epsilons(&w).unwrap();
        let es = epsilons(&w.scale(c).unwrap()).unwrap();
        let cb = BigInt::from(c);
        prop_assert_eq!(es.eps, e.eps.iter().map(|x| x * &cb).collect::<Vec<_>>());
        prop_assert_eq!(es.eps_prime, e.eps_prime.iter().map(|x| x * &cb).collect::<Vec<_>>());
        // ε_m = −w_{m−1} < 0
        prop_assert!(e.eps[vals.len()] < BigInt::from(0));
    }

    #[test]
    fn c_coefficients_scale(q in prop::sample::select(vec![2u64, 3]),
                            vals in prop::collection::vec(1u64..20, 1..4),
                            c in 1u64..7) {
        let w = WeightTable::matrix(q, &vals).unwrap();
        let base = c_coefficients(&w).unwrap();
        let scaled = c_coefficients(&w.scale(c).unwrap()).unwrap();
        let cb = BigInt::from(c);
        prop_assert_eq!(scaled, base.iter().map(|x| x * &cb).collect::<Vec<_>>());
    }

    #[test]
    fn window_and_min(vals in prop::collection::vec(1u64..30, 1..5)) {
        let w = WeightTable::chain(2, &vals).unwrap();
        let lo = w.min_weight();
        prop_assert_eq!(lo, *vals.iter().min().unwrap());
        for d in w.singleton_window() {
            prop_assert!(lo <= d && d < 2 * lo);
            prop_assert!(!w.indices_of(d).is_empty());
        }
    }
}
