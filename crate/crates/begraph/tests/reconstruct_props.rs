//! Module-level checks of the labelling pipeline; the exhaustive 7-node
//! sweeps live in the acceptance suite.

mod common;

use std::collections::BTreeMap;

use begraph::graph::Graph;
use begraph::reconstruct::{
    extend_labelling, reconstruct, reconstruct_seeded, verify_labelling, verify_maurer,
    BegRejection, ExtendFailure, MaurerVerdict, ReconstructionOutcome,
};

#[test]
fn named_rejections() {
    let cases: &[(&str, Graph)] = &[
        ("5-cycle", common::cycle(5)),
        ("6-cycle", common::cycle(6)),
        ("petersen", common::petersen()),
        ("3-star", common::star(3)),
    ];
    for (name, g) in cases {
        match reconstruct(g) {
            ReconstructionOutcome::NotBeg(BegRejection::IntervalViolation { .. }) => {}
            other => panic!("{name}: expected IntervalViolation, got {other:?}"),
        }
        match verify_maurer(g) {
            MaurerVerdict::Report(report) => {
                assert!(!report.interval, "{name}: interval should fail");
            }
            other => panic!("{name}: {other:?}"),
        }
    }
}

/// Every success re-verifies through the public labelling checker, and the
/// labelling is distance-exact against the returned matroid's own graph.
#[test]
fn success_labellings_verify_and_match_the_matroid() {
    for m in common::matroid_corpus().into_iter().step_by(13) {
        let (g, _) = m.basis_exchange_graph();
        match reconstruct(&g) {
            ReconstructionOutcome::Success { matroid, labelling } => {
                assert!(verify_labelling(&g, &labelling).is_ok());
                // the labels are exactly the matroid's bases
                let mut labels: Vec<_> = labelling.labels().to_vec();
                labels.sort_unstable();
                assert_eq!(&labels, matroid.bases());
            }
            other => panic!("corpus graph rejected: {other:?}"),
        }
    }
}

/// Extension from the seed neighbourhood recovers the original labels when
/// seeded with them.
#[test]
fn extension_recovers_corpus_labellings() {
    for m in common::matroid_corpus().into_iter().step_by(17) {
        let (g, labels) = m.basis_exchange_graph();
        if !g.is_connected() || g.node_count() == 0 {
            continue;
        }
        let mut seed = BTreeMap::new();
        seed.insert(0, labels[0]);
        for w in g.neighbours(0) {
            seed.insert(w, labels[w]);
        }
        match extend_labelling(&g, 0, &seed) {
            Ok(extended) => assert_eq!(extended.labels(), &labels[..]),
            Err(e) => panic!("extension failed on an exchange graph: {e:?}"),
        }
    }
}

#[test]
fn extension_failures_carry_witnesses() {
    // a star seeded at a leaf leaves the far leaves unreachable within the
    // rank-1 level budget
    let claw = common::star(3);
    let mut seed = BTreeMap::new();
    seed.insert(1, common::subset(&[1]));
    seed.insert(0, common::subset(&[2]));
    match extend_labelling(&claw, 1, &seed) {
        Err(ExtendFailure::UnlabelledNode { node }) => assert!(node == 2 || node == 3),
        other => panic!("expected UnlabelledNode, got {other:?}"),
    }

    // the 5-cycle admits no square completion at level two
    let c5 = common::cycle(5);
    let mut seed = BTreeMap::new();
    seed.insert(0, common::subset(&[1, 3]));
    seed.insert(1, common::subset(&[2, 3]));
    seed.insert(4, common::subset(&[1, 4]));
    match extend_labelling(&c5, 0, &seed) {
        Err(ExtendFailure::NoSquareCompletion { node, anchor }) => {
            assert_eq!(anchor, 0);
            assert!(node == 2 || node == 3);
        }
        other => panic!("expected NoSquareCompletion, got {other:?}"),
    }
}

/// The deciders agree on all connected graphs with at most six nodes (the
/// seven-node sweep runs in the acceptance suite).
#[test]
fn reconstruction_agrees_with_the_three_conditions_up_to_six_nodes() {
    for n in 1..=6usize {
        let pair_list = common::pairs(n.max(2));
        let pair_list = &pair_list[..(n * n.saturating_sub(1) / 2)];
        for mask in 0u64..(1 << pair_list.len()) {
            let g = common::graph_from_mask(n, pair_list, mask);
            if !g.is_connected() {
                continue;
            }
            let success = reconstruct(&g).is_success();
            let all_hold = match verify_maurer(&g) {
                MaurerVerdict::Report(report) => report.all_hold(),
                MaurerVerdict::NotConnected { .. } => unreachable!("connected"),
            };
            assert_eq!(
                success, all_hold,
                "deciders disagree on {g:?}"
            );
        }
    }
}

/// Seed-node sweeps on the worked example and a handful of corpus graphs.
#[test]
fn seed_independence_on_samples() {
    let mut graphs = vec![common::m1().basis_exchange_graph().0];
    for m in common::matroid_corpus().into_iter().step_by(101) {
        graphs.push(m.basis_exchange_graph().0);
    }
    for g in graphs {
        let reference = match reconstruct(&g) {
            ReconstructionOutcome::Success { matroid, .. } => matroid.class_canonical(),
            other => panic!("corpus graph rejected: {other:?}"),
        };
        for v in 0..g.node_count() {
            let outcome = reconstruct_seeded(&g, v);
            assert_eq!(
                outcome.matroid().expect("success from every seed").class_canonical(),
                reference
            );
        }
    }
}
