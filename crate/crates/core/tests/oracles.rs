//! Implementations checked against brute-force references.

mod common;

use common::*;
use ifn_core::{
    complete_support, compose, enumerate_canonical_cycles, is_irreducible_matrix,
    normalize_signature, premier_network, strongly_connected_components, FlowNetwork, NodeId,
};
use proptest::prelude::*;

fn names(cycles: &[Vec<NodeId>]) -> Vec<String> {
    cycles
        .iter()
        .map(|c| c.iter().map(NodeId::as_str).collect())
        .collect()
}

#[test]
fn brute_force_fixtures() {
    assert_eq!(
        names(&brute_force_cycles(&complete_support(2, true))),
        ["a", "ab", "b"]
    );
    assert_eq!(
        names(&brute_force_cycles(&complete_support(3, false))),
        ["ab", "abc", "ac", "acb", "bc"]
    );
}

#[test]
fn premier_matches_brute_force_enumeration() {
    for (n, loops) in [(2, true), (3, false), (3, true), (4, false)] {
        let support = complete_support(n, loops);
        let (sig, net) = premier_network(&support).unwrap();
        let expected = brute_force_cycles(&support);
        assert_eq!(sig.len(), expected.len());
        // every link of a complete graph lies on the same number of cycles
        for (p, q, f) in net.links() {
            let on = expected
                .iter()
                .filter(|c| (0..c.len()).any(|i| &c[i] == p && &c[(i + 1) % c.len()] == q))
                .count() as u64;
            assert_eq!(f, on, "{p}->{q}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn johnson_matches_brute_force(net in any_matrix(5)) {
        let fast: Vec<Vec<NodeId>> = enumerate_canonical_cycles(&net)
            .unwrap()
            .into_iter()
            .map(|c| c.nodes().to_vec())
            .collect();
        prop_assert_eq!(fast, brute_force_cycles(&net));
    }

    #[test]
    fn irreducibility_tests_match_reachability(net in any_matrix(7)) {
        let expected = reachability_irreducible(&net);
        prop_assert_eq!(is_irreducible_matrix(&net), expected);
        prop_assert_eq!(strongly_connected_components(&net).len() == 1, expected);
    }

    #[test]
    fn scc_partition_is_mutual_reachability(net in any_matrix(6)) {
        let components = strongly_connected_components(&net);
        let covered: usize = components.iter().map(|c| c.len()).sum();
        prop_assert_eq!(covered, net.node_count());
        for component in &components {
            let mut sub = FlowNetwork::with_nodes(component.iter().cloned());
            for (p, q, f) in net.links() {
                if component.contains(p) && component.contains(q) {
                    sub.set_flow(p.clone(), q.clone(), f);
                }
            }
            prop_assert!(reachability_irreducible(&sub));
        }
    }

    #[test]
    fn compose_matches_entry_formula(terms in raw_terms(6, 6)) {
        let raw: Vec<(i64, Vec<NodeId>)> = terms.iter().map(|(a, c)| (*a as i64, c.clone())).collect();
        let net = compose(&normalize_signature(raw).unwrap(), false).unwrap();
        for p in net.nodes() {
            for q in net.nodes() {
                prop_assert_eq!(net.flow(p, q), entry_formula(&terms, p, q));
            }
        }
    }
}
