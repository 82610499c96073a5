use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use csspair::corpus::{random_css, random_mirrored_generators, random_pair};
use csspair::format::{parse_css, parse_matrix, write_css, write_matrix};
use csspair::repeater::{exact_breakdown, ErrorModel};
use csspair::statevec::{encode_logical_packed, StateVector};
use csspair::transversality::{
    check_cnot_transversal, check_cz_sufficient, check_cz_transversal, find_cnot_encoding,
    make_mirrored_pair, mirrored_codes, oracle_cnot, oracle_cz, CnotMode,
};
use csspair::BitMatrix;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn checkers_agree_with_oracles(seed in any::<u64>(), n in 2usize..=6) {
        let p = random_pair(seed, n).unwrap();
        let coset = check_cnot_transversal(&p.qa, &p.qb, CnotMode::Coset).unwrap();
        let strict = check_cnot_transversal(&p.qa, &p.qb, CnotMode::Strict).unwrap();
        prop_assert_eq!(coset.verdict, oracle_cnot(&p.qa, &p.qb).unwrap().holds, "{:?}", p.kind);
        prop_assert!(!strict.verdict || coset.verdict);
        let cz = check_cz_transversal(&p.qa, &p.qb).unwrap();
        prop_assert_eq!(cz.verdict, oracle_cz(&p.qa, &p.qb).unwrap().holds, "{:?}", p.kind);
        let sufficient = check_cz_sufficient(&p.qa, &p.qb).unwrap();
        prop_assert!(!sufficient.verdict || cz.verdict);
    }

    #[test]
    fn mirrored_products_are_invertible(seed in any::<u64>(), n in 2usize..=9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = 1 + (seed as usize % 3).min(n - 2);
        let (g1p, g2p) = random_mirrored_generators(&mut rng, n, k);
        let (u1, u2) = mirrored_codes(&g1p, &g2p).unwrap();
        prop_assert_eq!(u1.encoding().mul_transpose(u2.encoding()).unwrap().rank(), k);
        let (q1, q2) = make_mirrored_pair(&g1p, &g2p).unwrap();
        prop_assert!(q1.encoding().mul_transpose(q2.encoding()).unwrap().is_identity());
        prop_assert!(check_cz_transversal(&q1, &q2).unwrap().verdict);
    }

    #[test]
    fn found_encodings_make_strict_cnot_hold(seed in any::<u64>(), n in 2usize..=8) {
        let p = random_pair(seed, n).unwrap();
        if let Some(common) = find_cnot_encoding(&p.qa, &p.qb) {
            let qa = p.qa.with_encoding(&common).unwrap();
            let qb = p.qb.with_encoding(&common).unwrap();
            prop_assert!(check_cnot_transversal(&qa, &qb, CnotMode::Strict).unwrap().verdict);
        } else {
            prop_assert!(!check_cnot_transversal(&p.qa, &p.qb, CnotMode::Coset).unwrap().verdict);
        }
    }

    #[test]
    fn matrix_text_roundtrips(rows in prop::collection::vec(any::<u64>(), 0..6), cols in 1usize..=64) {
        let mask = if cols == 64 { u64::MAX } else { (1u64 << cols) - 1 };
        let m = BitMatrix::from_rows(cols, rows.iter().map(|r| r & mask).collect()).unwrap();
        prop_assert_eq!(parse_matrix(&write_matrix(&m)).unwrap(), m);
    }

    #[test]
    fn code_files_roundtrip(seed in any::<u64>(), n in 2usize..=12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = random_css(&mut rng, n, 1 + seed as usize % (n - 1)).unwrap();
        let again = parse_css(&write_css(&q)).unwrap();
        prop_assert_eq!(again.encoding(), q.encoding());
        prop_assert_eq!(again.c1(), q.c1());
        prop_assert_eq!(again.c2(), q.c2());
    }

    #[test]
    fn encoded_basis_is_orthonormal(seed in any::<u64>(), n in 2usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = random_css(&mut rng, n, 1 + seed as usize % (n - 1).min(3)).unwrap();
        let states: Vec<StateVector> = (0..1u64 << q.k()).map(|p| encode_logical_packed(&q, p).unwrap()).collect();
        for (i, a) in states.iter().enumerate() {
            for (j, b) in states.iter().enumerate() {
                let ip = a.inner(b).unwrap();
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((ip.re - want).abs() < 1e-12 && ip.im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn breakdown_conserves_probability(seed in any::<u64>(), f in (0.0f64..0.3, 0.0f64..0.3, 0.0f64..0.3)) {
        let p = random_pair(seed, 6).unwrap();
        let model = ErrorModel::new(f.0, f.1, f.2).unwrap();
        let b = exact_breakdown(&p.qa, &p.qb, &model).unwrap();
        prop_assert!((b.total() - 1.0).abs() < 1e-9);
        for pf in b.pair_fidelities() {
            prop_assert!(pf >= b.fidelity() - 1e-12 && pf <= 1.0 + 1e-12);
        }
    }
}
