use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;
use ringcodes::chainring::ChainRing;
use ringcodes::codes::{ChainCode, ChainModule, MatrixCode};
use ringcodes::exactmath::{pow, BigRat};
use ringcodes::matrixring::{MatrixSpace, OrbitOrdering};
use ringcodes::weights::{homogeneous_chain, homogeneous_matrix, WeightTable};

fn chain_code() -> impl Strategy<Value = (ChainCode, Vec<u64>)> {
    let rings = prop::sample::select(vec![(2u64, 2u32, false), (2, 3, false), (3, 2, false), (2, 3, true), (4, 2, true)]);
    (rings, 1u32..=3, any::<bool>()).prop_flat_map(|((q, m, poly), k, semi)| {
        let k = k.min(m);
        let ring = if poly {
            ChainRing::poly_quotient(q, m).unwrap()
        } else {
            ChainRing::integers_mod(q, m).unwrap()
        };
        let (module, slots) = if semi {
            (ChainModule::Semisimple(k), ((q.pow(k) - 1) / (q - 1)) as usize + 1)
        } else {
            (ChainModule::Cyclic(k), k as usize + 1)
        };
        (
            prop::collection::vec(0u64..4, slots),
            prop::collection::vec(1u64..8, m as usize),
        )
            .prop_map(move |(counts, w)| (ChainCode::new(ring.clone(), module, counts).unwrap(), w))
    })
}

fn matrix_code() -> impl Strategy<Value = (MatrixCode, Vec<u64>)> {
    prop::sample::select(vec![(2u64, 1usize, 2usize), (2, 2, 2), (2, 2, 3), (3, 2, 3), (2, 3, 4)]).prop_flat_map(
        |(q, k, m)| {
            let sp = Arc::new(MatrixSpace::new(q, k, m, OrbitOrdering::Lex).unwrap());
            let n = sp.num_orbits();
            (prop::collection::vec(0u64..3, n), prop::collection::vec(1u64..8, k))
                .prop_map(move |(counts, w)| (MatrixCode::new(sp.clone(), counts).unwrap(), w))
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chain_se_total_is_module_over_kernel((code, _) in chain_code()) {
        let q = code.ring().q();
        let k = code.module().k();
        prop_assert_eq!(code.se().total() * code.kernel_size(), pow(q, k as u64));
    }

    #[test]
    fn matrix_se_total_is_module_over_kernel((code, _) in matrix_code()) {
        let sp = code.space();
        prop_assert_eq!(code.se().total(), code.code_size());
        prop_assert_eq!(code.code_size() * code.kernel_size(), pow(sp.q(), (sp.k() * sp.m()) as u64));
    }

    #[test]
    fn chain_degree_bound((code, w) in chain_code()) {
        let w = WeightTable::chain(code.ring().q(), &w).unwrap();
        let e = code.wwe(&w);
        prop_assert!(e.max_degree().unwrap() <= code.efflength() * w.max());
        prop_assert_eq!(e.coeff(0) >= BigInt::from(1), true);
    }

    #[test]
    fn matrix_degree_bound((code, w) in matrix_code()) {
        let w = WeightTable::matrix(code.space().q(), &w).unwrap();
        let e = code.wwe(&w);
        prop_assert!(e.max_degree().unwrap() <= code.efflength() * w.max());
    }

    // Zero functionals add length but change no codeword weight.
    #[test]
    fn chain_zero_padding((code, w) in chain_code(), z in 1u64..5) {
        let w = WeightTable::chain(code.ring().q(), &w).unwrap();
        let mut counts = code.counts().to_vec();
        counts[0] += z;
        let padded = ChainCode::new(code.ring().clone(), code.module(), counts).unwrap();
        prop_assert_eq!(padded.length(), code.length() + z);
        prop_assert_eq!(padded.efflength(), code.efflength());
        prop_assert_eq!(padded.wwe(&w), code.wwe(&w));
    }

    #[test]
    fn matrix_zero_padding((code, w) in matrix_code(), z in 1u64..5) {
        let w = WeightTable::matrix(code.space().q(), &w).unwrap();
        let mut counts = code.counts().to_vec();
        counts[0] += z;
        let padded = MatrixCode::new(code.space().clone(), counts).unwrap();
        prop_assert_eq!(padded.length(), code.length() + z);
        prop_assert_eq!(padded.wwe(&w), code.wwe(&w));
    }

    // Σ_c w(c) summed by orbits equals the per-coordinate average count, and
    // equals γ·|C|·efflength for egalitarian weights.
    #[test]
    fn chain_weight_sums((code, _) in chain_code()) {
        let w = homogeneous_chain(code.ring().q(), code.ring().m()).unwrap();
        let s = code.weight_sum_check(&w);
        prop_assert_eq!(BigRat::from_integer(s.direct.clone()), s.per_coordinate);
        prop_assert_eq!(Some(BigRat::from_integer(s.direct)), s.egalitarian);
    }

    #[test]
    fn matrix_weight_sums((code, w) in matrix_code()) {
        let w = WeightTable::matrix(code.space().q(), &w).unwrap();
        let s = code.weight_sum_check(&w);
        prop_assert_eq!(BigRat::from_integer(s.direct), s.per_coordinate);
        let h = homogeneous_matrix(code.space().k() as u32, code.space().q()).unwrap();
        let s = code.weight_sum_check(&h);
        prop_assert_eq!(Some(BigRat::from_integer(s.direct)), s.egalitarian);
    }
}

#[test]
fn chain_generator_matrix_spans_the_code() {
    use ringcodes::codes::chain_span;
    let r = ChainRing::integers_mod(2, 2).unwrap();
    let code = ChainCode::new(r.clone(), ChainModule::Semisimple(2), vec![1, 1, 2, 0]).unwrap();
    let g = code.generator_matrix();
    let words = chain_span(&r, &g);
    assert_eq!(BigInt::from(words.len()), code.se().total());
    for wd in &words {
        assert_eq!(wd.len() as u64, code.length());
    }
}
