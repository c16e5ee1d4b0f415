//! End-to-end acceptance checks. Each test covers one exit criterion and
//! prints a single PASS line on success (visible with --nocapture).

mod common;

use std::cell::Cell;
use std::collections::BTreeMap;
use std::ops::ControlFlow;
use std::process::Command;

use qg::{
    canonical_form, count_latin_squares, enumerate_latin_squares, holds, parse_identity,
    print_identity, random_quasigroup, registry, relabel, verify_statement, IdentityKey,
    ParastropheKind, Quasigroup, SampleSpec, StatementId, VerificationStatus,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GOLDEN_COUNTS: [(usize, u64); 5] = [(1, 1), (2, 2), (3, 12), (4, 576), (5, 161280)];
const MODELS_UP_TO_4: u64 = 591;
const MODELS_UP_TO_5: u64 = 161871;

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

fn assert_verified(id: StatementId, max_order: usize, sample: Option<SampleSpec>, expect_models: u64) {
    let report = verify_statement(id, max_order, sample, 2).unwrap();
    assert_eq!(
        report.status,
        VerificationStatus::Verified,
        "{id}: expected no counterexamples, got {:#?}",
        report.witnesses
    );
    assert_eq!(report.models_checked, expect_models, "{id}: model count drifted");
    assert!(report.witnesses.is_empty());
}

#[test]
fn c01_enumerator_golden_counts_and_reduced_factorization() {
    for (n, expect) in GOLDEN_COUNTS {
        assert_eq!(count_latin_squares(n).unwrap(), expect, "order {n} count");
        let mut reduced = 0u64;
        let natural: Vec<u8> = (0..n as u8).collect();
        let total = enumerate_latin_squares(n, |q| {
            let row0: Vec<u8> = (0..n as u8).map(|y| q.mul(0, y)).collect();
            let col0: Vec<u8> = (0..n as u8).map(|x| q.mul(x, 0)).collect();
            if row0 == natural && col0 == natural {
                reduced += 1;
            }
            ControlFlow::Continue(())
        })
        .unwrap();
        assert_eq!(total, expect);
        let symmetry = factorial(n as u64) * factorial(n as u64 - 1);
        assert_eq!(reduced * symmetry, total, "order {n} reduced-square factorization");
        if n == 5 {
            assert_eq!(reduced, 56);
        }
    }
    println!("PASS enumerator golden counts 1,2,12,576,161280 and reduced factorization");
}

#[test]
fn c02_e_laws_characterize_trimedial_up_to_order_5() {
    let report = verify_statement(StatementId::Thm1, 5, None, 2).unwrap();
    assert_eq!(report.status, VerificationStatus::Verified, "{:#?}", report.witnesses);
    assert_eq!(report.models_checked, MODELS_UP_TO_5);
    let counts: Vec<(usize, u64)> =
        report.per_order.iter().map(|c| (c.order, c.models)).collect();
    assert_eq!(counts, GOLDEN_COUNTS.to_vec());
    println!("PASS thm1: El and Er together match trimediality on all {MODELS_UP_TO_5} models");
}

#[test]
fn c03_semimedial_f_pairings_characterize_trimedial() {
    assert_verified(StatementId::Thm2, 5, None, MODELS_UP_TO_5);
    println!("PASS thm2: three-way equivalence on all {MODELS_UP_TO_5} models");
}

#[test]
fn c04_prop1_and_kepka_axiom_sets() {
    assert_verified(StatementId::Prop1, 5, None, MODELS_UP_TO_5);
    assert_verified(StatementId::KepkaAxioms, 5, None, MODELS_UP_TO_5);
    println!("PASS prop1 and kepka_axioms on all {MODELS_UP_TO_5} models");
}

#[test]
fn c05_lemmas_exhaustive_small_orders_plus_sampled_order_6() {
    let lemmas = [
        StatementId::Lem1,
        StatementId::Lem2,
        StatementId::Lem3,
        StatementId::Lem4,
        StatementId::Lem5,
        StatementId::Lem6,
        StatementId::Lem7,
    ];
    for id in lemmas {
        let sample = SampleSpec { order: 6, count: 100, seed: 1 };
        assert_verified(id, 4, Some(sample), MODELS_UP_TO_4 + 100);
    }
    println!("PASS lem1..lem7 on {MODELS_UP_TO_4} exhaustive models plus 100 sampled order-6 models each");
}

#[test]
fn c06_parastrophe_involutions_and_mixed_laws() {
    let checked = Cell::new(0u64);
    let check = |q: &Quasigroup| {
        use ParastropheKind::{Left, Opposite, Right};
        assert_eq!(q.parastrophe(Left).parastrophe(Left), *q);
        assert_eq!(q.parastrophe(Right).parastrophe(Right), *q);
        assert_eq!(q.parastrophe(Opposite).parastrophe(Opposite), *q);
        assert_eq!(
            q.parastrophe(Opposite).parastrophe(Left),
            q.parastrophe(Right).parastrophe(Opposite)
        );
        assert_eq!(
            q.parastrophe(Opposite).parastrophe(Right),
            q.parastrophe(Left).parastrophe(Opposite)
        );
        checked.set(checked.get() + 1);
    };
    for n in 1..=4 {
        enumerate_latin_squares(n, |q| {
            check(q);
            ControlFlow::Continue(())
        })
        .unwrap();
    }
    assert_eq!(checked.get(), MODELS_UP_TO_4);
    for i in 0..1000u64 {
        let n = 5 + (i % 2) as usize;
        let q = random_quasigroup(n, 60_000 + i).unwrap();
        check(&q);
    }
    assert_eq!(checked.get(), MODELS_UP_TO_4 + 1000);
    println!("PASS parastrophe involution and mixed table laws on {} models", checked.get());
}

#[test]
fn c07_round_trip_and_golden_registry_print() {
    let golden = include_str!("golden/registry_identities.txt");
    let mut seen = 0;
    for line in golden.lines() {
        let (key, text) = line.split_once(": ").expect("golden line format");
        let key: IdentityKey = key.parse().unwrap();
        let id = registry::named(key);
        assert_eq!(print_identity(id), text, "{key} printed form drifted");
        assert_eq!(&parse_identity(text).unwrap(), id, "{key} does not round-trip");
        seen += 1;
    }
    assert_eq!(seen, 8);

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let vars = ["x", "y", "z", "w", "v0"];
    for _ in 0..1000 {
        let depth = rng.gen_range(0..=5);
        let id = common::random_identity(&mut rng, depth, &vars);
        let printed = print_identity(&id);
        assert_eq!(parse_identity(&printed).unwrap(), id, "round trip failed for {printed}");
    }
    println!("PASS parse/print round trip on registry + 1000 random terms, golden prints exact");
}

#[test]
fn c08_memoized_and_naive_oracles_agree() {
    let mut models = 0u64;
    for n in 1..=4 {
        enumerate_latin_squares(n, |q| {
            assert_eq!(
                qg::is_trimedial(q),
                common::naive_is_trimedial(q),
                "trimediality mismatch on {:?}",
                q
            );
            models += 1;
            ControlFlow::Continue(())
        })
        .unwrap();
    }
    assert_eq!(models, MODELS_UP_TO_4);

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let vars = ["x", "y", "z", "u"];
    for _ in 0..1000 {
        let n = rng.gen_range(1..=6);
        let q = random_quasigroup(n, rng.gen()).unwrap();
        let depth = rng.gen_range(0..=3);
        let id = common::random_identity(&mut rng, depth, &vars);
        let fast = qg::counterexample(&q, &id);
        let slow = common::naive_counterexample(&q, &id, false);
        match (&fast, &slow) {
            (None, None) => {}
            (Some(w), Some((asg, l, r))) => {
                let fast_map: BTreeMap<String, u8> = w.assignment.iter().cloned().collect();
                assert_eq!(&fast_map, asg, "witness assignment differs");
                assert_eq!((w.lhs_value, w.rhs_value), (*l, *r));
            }
            _ => panic!("holds disagrees with naive evaluator on {}", print_identity(&id)),
        }
        // iteration order must not affect the verdict
        assert_eq!(fast.is_none(), common::naive_counterexample(&q, &id, true).is_none());
    }
    println!("PASS oracle agreement: trimediality on {MODELS_UP_TO_4} models, holds on 1000 random pairs");
}

#[test]
fn c09_identity_verdicts_and_canonical_form_are_isomorphism_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..500 {
        let n = rng.gen_range(1..=5);
        let q = random_quasigroup(n, rng.gen()).unwrap();
        let mut perm: Vec<u8> = (0..n as u8).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let relabeled = relabel(&q, &perm);
        for key in IdentityKey::ALL {
            assert_eq!(
                holds(&q, registry::named(key)),
                holds(&relabeled, registry::named(key)),
                "{key} verdict changed under relabeling {perm:?} of {q:?}"
            );
        }
        assert_eq!(canonical_form(&q).unwrap(), canonical_form(&relabeled).unwrap());
    }
    println!("PASS isomorphism invariance on 500 seeded (model, permutation) pairs");
}

#[test]
fn c10_cli_search_and_verify_are_byte_deterministic() {
    let bin = env!("CARGO_BIN_EXE_qg");
    fn search_args(workers: &str) -> Vec<&str> {
        vec![
            "search", "--min-order", "1", "--max-order", "4", "--satisfy", "Fl,Fr", "--violate",
            "Sl", "--dedup", "iso", "--json", "--workers", workers,
        ]
    }
    fn verify_args(workers: &str) -> Vec<&str> {
        vec![
            "verify", "--statement", "lem3", "--max-order", "4", "--sample-order-6", "25",
            "--seed", "7", "--workers", workers,
        ]
    }
    let arg_sets: [fn(&str) -> Vec<&str>; 2] = [search_args, verify_args];
    for args in arg_sets {
        let run = |workers: &str| {
            let out = Command::new(bin).args(args(workers)).output().unwrap();
            assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
            out.stdout
        };
        let base = run("1");
        assert!(!base.is_empty());
        assert_eq!(base, run("1"), "repeated run differs");
        assert_eq!(base, run("3"), "worker count changed the output");
        assert_eq!(base, run("4"), "worker count changed the output");
    }
    println!("PASS search/verify byte-identical across repeated runs and worker counts");
}
