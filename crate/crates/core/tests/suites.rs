use glz_core::congruence::unipotent_sqrt_sl2;
use glz_core::verify::{run, run_suite, Suite};
use glz_core::{Error, IntMatrix};

#[test]
fn identity_suite_passes_with_one_trial() {
    for seed in [0, 1, 99] {
        let r = run_suite("C2_1_claim1", 3, 1, seed).unwrap();
        assert!(r.passed);
    }
}

#[test]
fn mutual_subgroup_suite_reference_run() {
    let r = run_suite("L1_7", 4, 1000, 42).unwrap();
    assert!(r.passed, "{:?}", r.failures.first());
    for key in ["shared_hyperplane", "shared_line", "generic_unshared"] {
        assert!(r.count(key) > 0, "branch {key} never sampled");
    }
}

#[test]
fn four_involution_suite_rejects_small_rank() {
    let e = run_suite("L1_5", 5, 10, 1).unwrap_err();
    assert!(e.to_string().contains("out of range"), "{e}");
}

#[test]
fn unknown_suite_is_an_error() {
    assert!(matches!(
        run_suite("L2_0", 4, 1, 0),
        Err(Error::UnknownSuite(_))
    ));
}

#[test]
fn reports_are_byte_identical_on_replay() {
    for suite in Suite::ALL {
        let n = suite.min_rank().max(4);
        let a = run(suite, n, 15, 2024).unwrap().without_timing();
        let b = run(suite, n, 15, 2024).unwrap().without_timing();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }
}

#[test]
fn report_json_has_expected_fields() {
    let r = run_suite("MU_SURJ", 3, 5, 1).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    for key in [
        "suite",
        "n",
        "trials",
        "seed",
        "passed",
        "failures",
        "elapsed_ms",
        "validity",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["suite"], "MU_SURJ");
}

#[test]
fn all_suites_pass_across_ranks() {
    for suite in Suite::ALL {
        let lo = suite.min_rank();
        for n in lo..lo + 3 {
            let r = run(suite, n, 40, 5).unwrap();
            assert!(r.passed, "{suite} n={n}: {:?}", r.failures.first());
        }
    }
}

#[test]
fn summand_encoding_predicate_agreement() {
    let r = run(Suite::SummandEncoding, 4, 500, 8).unwrap();
    assert!(r.passed, "{:?}", r.failures.first());
    for key in [
        "hyperplane_same",
        "hyperplane_different",
        "line_same",
        "line_different",
    ] {
        assert!(r.count(key) > 0, "branch {key} never sampled");
    }
}

#[test]
fn commutant_suite_covers_even_transvections() {
    let r = run(Suite::TransvectionCommutant, 3, 300, 6).unwrap();
    assert!(r.passed, "{:?}", r.failures.first());
    assert!(r.count("commuting_even_transvection") > 0);
    assert!(r.count("not_commuting") > 0);
}

#[test]
fn commuting_family_suite_rejects_random_samples() {
    let r = run(Suite::CommutingFamily, 5, 300, 3).unwrap();
    assert!(r.passed, "{:?}", r.failures.first());
    assert_eq!(r.count("exhaustive_sign_check"), 1);
}

#[test]
fn unipotent_roots_complete_in_box() {
    // brute force over [-100, 100], d solved from the determinant
    for k in -5i64..=5 {
        let t = [[1, 2 * k], [0, 1]];
        let mut found = Vec::new();
        for a in -100i64..=100 {
            for b in -100i64..=100 {
                for c in -100i64..=100 {
                    let ds: Vec<i64> = if a == 0 {
                        if b * c == -1 {
                            (-100..=100).collect()
                        } else {
                            Vec::new()
                        }
                    } else if (1 + b * c) % a == 0 && ((1 + b * c) / a).abs() <= 100 {
                        vec![(1 + b * c) / a]
                    } else {
                        Vec::new()
                    };
                    for d in ds {
                        let sq = [
                            [a * a + b * c, a * b + b * d],
                            [c * a + d * c, c * b + d * d],
                        ];
                        if sq == t {
                            found.push(IntMatrix::from_i64(&[&[a, b], &[c, d]]));
                        }
                    }
                }
            }
        }
        found.sort_by(|x, y| x.entries().cmp(y.entries()));
        let tm = IntMatrix::from_i64(&[&t[0], &t[1]]);
        assert_eq!(found, unipotent_sqrt_sl2(&tm).unwrap(), "k = {k}");
    }
}
