use jordanparts::closedform::{decompose_rr1_char2, decompose_rr_char2};
use jordanparts::iima::decompose_iima;
use jordanparts::oracle::decompose_oracle;
use jordanparts::renaud::decompose_renaud;
use jordanparts::verify::{cross_check, CrossCheckOptions};

#[test]
fn algorithms_match_oracle_on_small_grid() {
    for p in [2u64, 3, 5, 7] {
        for s in 1..=10u64 {
            for r in 1..=s {
                let oracle = decompose_oracle(r, s, p).unwrap();
                assert_eq!(
                    decompose_renaud(r, s, p).unwrap(),
                    oracle,
                    "renaud ({r}, {s}, {p})"
                );
                assert_eq!(
                    decompose_iima(r, s, p).unwrap(),
                    oracle,
                    "iima ({r}, {s}, {p})"
                );
            }
        }
    }
}

#[test]
fn rr1_base_case_matches_oracle() {
    for e in 0..=4u32 {
        let r = 1u64 << e;
        assert_eq!(
            decompose_rr1_char2(r).unwrap(),
            decompose_oracle(r, r + 1, 2).unwrap(),
            "r={r}"
        );
    }
    let r = 32;
    assert_eq!(
        decompose_rr1_char2(r).unwrap(),
        decompose_iima(r, r + 1, 2).unwrap()
    );
    assert_eq!(
        decompose_rr1_char2(r).unwrap(),
        decompose_renaud(r, r + 1, 2).unwrap()
    );
}

#[test]
fn char2_closed_forms_match_oracle() {
    for r in 1..=12u64 {
        assert_eq!(
            decompose_rr_char2(r).unwrap(),
            decompose_oracle(r, r, 2).unwrap(),
            "rr r={r}"
        );
        assert_eq!(
            decompose_rr1_char2(r).unwrap(),
            decompose_oracle(r, r + 1, 2).unwrap(),
            "rr1 r={r}"
        );
    }
}

#[test]
fn cross_check_passes_with_oracle() {
    let options = CrossCheckOptions {
        oracle_cap: Some(400),
    };
    for (r, s, p) in [(5, 6, 2), (9, 9, 3), (7, 12, 5), (13, 14, 2), (10, 11, 11)] {
        let report = cross_check(r, s, p, &options);
        assert!(report.passed(), "{:?}", report.failed_checks());
        assert!(report.algorithms.contains_key("oracle"));
    }
}
