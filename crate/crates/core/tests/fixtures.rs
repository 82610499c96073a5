use std::path::PathBuf;

use csspair::format::{load_css, load_matrix, parse_css, write_css};
use csspair::transversality::{
    audit_mirrored_display, check_cnot_transversal, check_cz_sufficient, check_cz_transversal,
    find_cnot_encoding, make_mirrored_pair, mirrored_codes, oracle_cnot, oracle_cz, verify_cnot,
    verify_cz, CnotMode,
};
use csspair::{BitMatrix, CssCode, Error};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn code(name: &str) -> CssCode {
    load_css(fixture(name)).unwrap()
}

fn matrix(name: &str) -> BitMatrix {
    load_matrix(fixture(name)).unwrap()
}

#[test]
fn shared_encoding_pair_shapes() {
    let (qa, qb) = (code("shared_encoding_a.css"), code("shared_encoding_b.css"));
    assert_eq!((qa.n(), qa.k()), (7, 2));
    assert_eq!((qb.n(), qb.k()), (7, 2));
    assert_eq!(qa.x_stabilizers().num_rows(), 2);
    assert_eq!(qa.z_stabilizers().num_rows(), 3);
    assert_eq!(qb.x_stabilizers().num_rows(), 3);
    assert_eq!(qb.z_stabilizers().num_rows(), 2);
}

#[test]
fn shared_encoding_pair_is_cnot_transversal() {
    let (qa, qb) = (code("shared_encoding_a.css"), code("shared_encoding_b.css"));
    for mode in [CnotMode::Strict, CnotMode::Coset] {
        let r = verify_cnot(&qa, &qb, mode).unwrap();
        assert!(r.verdict);
        assert!(r.conditions.iter().all(|c| c.holds));
        assert_eq!(r.oracle_agrees(), Some(true));
    }
}

#[test]
fn swapped_representatives_break_cnot() {
    let (qa, qb) = (code("shared_encoding_a.css"), code("shared_encoding_b_swapped.css"));
    let r = verify_cnot(&qa, &qb, CnotMode::Coset).unwrap();
    assert!(!r.verdict);
    assert_eq!(r.condition("C2perp_in_C4perp"), Some(true));
    assert_eq!(r.condition("A_eq_B_mod_C4perp"), Some(false));
    assert_eq!(r.oracle_agrees(), Some(true));
    assert!(r.witness.is_some());
    let common = find_cnot_encoding(&qa, &qb).unwrap();
    assert_eq!(common, *qa.encoding());
}

#[test]
fn nested_counterexample_reports_k_mismatch() {
    let (qa, qb) = (code("shared_encoding_a.css"), code("nested_counterexample_b.css"));
    assert_eq!(qb.k(), 1);
    for mode in [CnotMode::Strict, CnotMode::Coset] {
        let r = check_cnot_transversal(&qa, &qb, mode).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.condition("k_match"), Some(false));
        assert_eq!(r.notes, vec!["k_mismatch: 2 vs 1".to_string()]);
    }
    let r = verify_cnot(&qa, &qb, CnotMode::Coset).unwrap();
    assert!(!r.oracle_checked);
    assert!(find_cnot_encoding(&qa, &qb).is_none());
}

#[test]
fn steane_pairs_with_itself() {
    let s = code("steane.css");
    assert_eq!((s.n(), s.k(), s.distance().unwrap()), (7, 1, 3));
    assert!(verify_cnot(&s, &s, CnotMode::Strict).unwrap().verdict);
    // Odd-weight representatives give A A^T = 1.
    let r = verify_cz(&s, &s).unwrap();
    assert_eq!(r.oracle_agrees(), Some(true));
}

#[test]
fn mirrored_fixture_pair() {
    let (g1p, g2p) = (matrix("mirrored_g1perp.mat"), matrix("mirrored_g2perp.mat"));
    let (u1, u2) = mirrored_codes(&g1p, &g2p).unwrap();
    let u = u1.encoding().mul_transpose(u2.encoding()).unwrap();
    assert_eq!(u.rank(), 2);

    let (q1, q2) = make_mirrored_pair(&g1p, &g2p).unwrap();
    assert!(q1.encoding().mul_transpose(q2.encoding()).unwrap().is_identity());
    let r = verify_cz(&q1, &q2).unwrap();
    assert!(r.verdict);
    assert_eq!(r.oracle_agrees(), Some(true));
    assert!(check_cz_sufficient(&q1, &q2).unwrap().verdict);
    // Mirrored codes are CNOT-transversal only when C2perp ⊆ C1perp.
    let cnot = verify_cnot(&q1, &q2, CnotMode::Coset).unwrap();
    assert_eq!(cnot.oracle_agrees(), Some(true));
}

#[test]
fn display_matrices_are_flagged() {
    let a = matrix("mirrored_display_a.mat");
    let b = matrix("mirrored_display_b.mat");
    assert!(a.mul_transpose(&b).unwrap().is_identity());
    let audit = audit_mirrored_display(
        &matrix("mirrored_g1perp.mat"),
        &matrix("mirrored_g2perp.mat"),
        &a,
        &matrix("mirrored_display_g4perp.mat"),
        &b,
    )
    .unwrap();
    assert!(!audit.consistent);
    let get = |id: &str| audit.conditions.iter().find(|c| c.id == id).unwrap().holds;
    assert!(get("G2perp_orthogonal_G1perp"));
    assert!(get("A_in_C1"));
    assert!(get("ABt_is_identity"));
    assert!(!get("G4perp_rowequiv_G1perp"));
    assert!(!get("B_in_C3"));
}

#[test]
fn cz_fails_on_the_cnot_pair() {
    let (qa, qb) = (code("shared_encoding_a.css"), code("shared_encoding_b.css"));
    let r = check_cz_transversal(&qa, &qb).unwrap();
    let o = oracle_cz(&qa, &qb).unwrap();
    assert_eq!(r.verdict, o.holds);
    assert!(!r.verdict);
}

#[test]
fn code_files_roundtrip() {
    for name in ["shared_encoding_a.css", "shared_encoding_b.css", "steane.css", "nested_counterexample_b.css"] {
        let q = code(name);
        let again = parse_css(&write_css(&q)).unwrap();
        assert_eq!(again.c1(), q.c1());
        assert_eq!(again.c2(), q.c2());
        assert_eq!(again.encoding(), q.encoding());
    }
}

#[test]
fn malformed_matrix_reports_position() {
    match load_matrix(fixture("malformed.mat")) {
        Err(Error::Parse(p)) => assert_eq!((p.line, p.column), (4, 6)),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn missing_file_is_an_io_error() {
    assert!(matches!(load_css(fixture("nope.css")), Err(Error::Io { .. })));
}

#[test]
fn oracle_reports_all_pairs() {
    let (qa, qb) = (code("shared_encoding_a.css"), code("shared_encoding_b.css"));
    let o = oracle_cnot(&qa, &qb).unwrap();
    assert_eq!(o.pairs_checked, 16);
    assert!(o.max_deviation < 1e-12);
}
