//! End-to-end properties of the embedding pipeline beyond the randomized
//! harness: exhaustive small relations, reinterpretation of the produced
//! terms in a richer structure, and the independence of the structural
//! validator from the builder.

use std::collections::BTreeSet;

use ots_core::{
    build_derivation, check_extraction_invariants, compare, dilate, extract_ranks, takeuti_embed,
    validate_derivation, verify_embedding, DilationMap, FiniteRelation, LinearOrder,
    StructureDescriptor,
};

fn all_loop_free_relations(n: u32) -> Vec<FiniteRelation> {
    let slots: Vec<(u32, u32)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << slots.len()) {
        let edges: BTreeSet<(u32, u32)> = slots
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, e)| *e)
            .collect();
        out.push(FiniteRelation::new(n, edges).unwrap());
    }
    out
}

#[test]
fn every_small_acyclic_relation_verifies() {
    for n in 0..=3u32 {
        for rel in all_loop_free_relations(n) {
            if !ots_core::check_well_founded(&rel) {
                assert!(extract_ranks(&rel).is_err());
                continue;
            }
            let state = extract_ranks(&rel).unwrap();
            assert!(
                check_extraction_invariants(&rel, &state).is_empty(),
                "invariants failed on {:?}",
                rel.edges()
            );
            let report = takeuti_embed(&rel, 12).unwrap();
            let verified = verify_embedding(&rel, &report);
            assert!(verified.all_passed(), "checks failed on {:?}", rel.edges());
        }
    }
}

#[test]
fn embedding_terms_survive_reinterpretation() {
    // the produced terms are generator free, so they live unchanged in any
    // richer structure and under any dilation of it; the edge comparisons
    // carry over
    let rel = FiniteRelation::new(
        5,
        BTreeSet::from([(0, 1), (1, 2), (3, 2), (4, 0), (4, 3)]),
    )
    .unwrap();
    let report = takeuti_embed(&rel, 12).unwrap();
    let base = StructureDescriptor::new(0, LinearOrder::Finite(4));
    let rich = StructureDescriptor::new(1, LinearOrder::Omega);
    let map = DilationMap::new((0..=4).map(|j| (j, 2 * j))).unwrap();
    for &(a, b) in rel.edges() {
        let fa = &report.nodes[a as usize].f;
        let fb = &report.nodes[b as usize].f;
        assert_eq!(compare(fa, fb, &base).unwrap(), std::cmp::Ordering::Less);
        assert_eq!(compare(fa, fb, &rich).unwrap(), std::cmp::Ordering::Less);
        let da = dilate(fa, &map, &rich, &rich).unwrap();
        let db = dilate(fb, &map, &rich, &rich).unwrap();
        assert_eq!(&da, fa);
        assert_eq!(&db, fb);
        assert_eq!(compare(&da, &db, &rich).unwrap(), std::cmp::Ordering::Less);
    }
}

#[test]
fn validator_rejects_foreign_trees() {
    let rel = FiniteRelation::new(3, BTreeSet::from([(0, 2), (1, 2)])).unwrap();
    let good = build_derivation(&rel, 2).unwrap();
    assert!(validate_derivation(&good, &rel).is_empty());

    // a derivation built for a different relation fails structurally
    let other = FiniteRelation::new(3, BTreeSet::from([(0, 2)])).unwrap();
    assert!(!validate_derivation(&good, &other).is_empty());

    // tampered bounds and contexts are caught
    let mut shallow = good.clone();
    shallow.bound = 1;
    assert!(!validate_derivation(&shallow, &rel).is_empty());
    let mut disconnected = good.clone();
    disconnected.premises.clear();
    assert!(!validate_derivation(&disconnected, &rel).is_empty());
    let mut wrong_goal = good;
    wrong_goal.goal.insert(7);
    assert!(!validate_derivation(&wrong_goal, &rel).is_empty());
}

#[test]
fn extraction_states_describe_their_witnesses() {
    let rel = FiniteRelation::new(4, BTreeSet::from([(2, 0), (3, 1), (3, 0)])).unwrap();
    let state = extract_ranks(&rel).unwrap();
    for (m, node) in state.nodes.iter().enumerate() {
        assert_eq!(node.witness.context, node.members);
        assert_eq!(node.witness.goal, node.members);
        assert_eq!(node.witness.bound, node.rank);
        assert!(node.members.contains(&(m as u32)));
        assert!(validate_derivation(&node.witness, &rel).is_empty());
    }
}
