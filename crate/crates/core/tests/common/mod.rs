#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use ifn_core::{CanonicalCycle, FlowNetwork, NodeId};
use proptest::prelude::*;

pub fn ids(s: &str) -> Vec<NodeId> {
    s.chars()
        .map(|c| NodeId::new(c.to_string()).unwrap())
        .collect()
}

pub fn labels(n: usize) -> Vec<NodeId> {
    ids(&"abcdefgh"[..n])
}

/// All simple cycles by brute force: every ordering of every node subset,
/// kept when it starts at its minimum and every link is present.
pub fn brute_force_cycles(net: &FlowNetwork) -> Vec<Vec<NodeId>> {
    let nodes = net.node_list();
    let mut out = Vec::new();
    let mut path = Vec::new();
    fn extend(
        net: &FlowNetwork,
        nodes: &[NodeId],
        path: &mut Vec<NodeId>,
        out: &mut Vec<Vec<NodeId>>,
    ) {
        if !path.is_empty() {
            let closes = path.windows(2).all(|w| net.flow(&w[0], &w[1]) > 0)
                && net.flow(path.last().unwrap(), &path[0]) > 0;
            let minimal_first = path.iter().all(|n| *n >= path[0]);
            if closes && minimal_first {
                out.push(path.clone());
            }
        }
        for n in nodes {
            if !path.contains(n) {
                path.push(n.clone());
                extend(net, nodes, path, out);
                path.pop();
            }
        }
    }
    extend(net, &nodes, &mut path, &mut out);
    out.sort();
    out
}

/// Breadth-first reachability from every node.
pub fn reachability_irreducible(net: &FlowNetwork) -> bool {
    let nodes = net.node_list();
    if nodes.is_empty() {
        return false;
    }
    nodes.iter().all(|start| {
        let mut seen: BTreeSet<&NodeId> = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(p) = queue.pop_front() {
            for q in &nodes {
                if net.flow(p, q) > 0 && seen.insert(q) {
                    queue.push_back(q);
                }
            }
        }
        seen.len() == nodes.len()
    })
}

/// Entrywise flows by direct summation over raw terms.
pub fn entry_formula(terms: &[(u64, Vec<NodeId>)], from: &NodeId, to: &NodeId) -> u64 {
    terms
        .iter()
        .filter(|(_, c)| (0..c.len()).any(|i| &c[i] == from && &c[(i + 1) % c.len()] == to))
        .map(|(a, _)| *a)
        .sum()
}

/// One raw cycle: a nonempty ordered subset of the first `n` labels.
pub fn raw_cycle(n: usize) -> impl Strategy<Value = Vec<NodeId>> {
    proptest::sample::subsequence(labels(n), 1..=n).prop_shuffle()
}

/// Raw terms with positive coefficients over up to `n` nodes.
pub fn raw_terms(n: usize, max_terms: usize) -> impl Strategy<Value = Vec<(u64, Vec<NodeId>)>> {
    proptest::collection::vec((1u64..6, raw_cycle(n)), 1..=max_terms)
}

pub fn cycles_of(terms: &[(u64, Vec<NodeId>)]) -> Vec<(u64, CanonicalCycle)> {
    terms
        .iter()
        .map(|(a, c)| (*a, CanonicalCycle::new(c.clone()).unwrap()))
        .collect()
}

/// Random premagic networks: sums of random cycles.
pub fn circulation(n: usize) -> impl Strategy<Value = FlowNetwork> {
    raw_terms(n, 8).prop_map(|terms| {
        let mut net = FlowNetwork::new();
        for (a, c) in cycles_of(&terms) {
            net.assign(a as i64, &c).unwrap();
        }
        net
    })
}

/// Arbitrary nonnegative matrices (not necessarily balanced).
pub fn any_matrix(max_n: usize) -> impl Strategy<Value = FlowNetwork> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(
            proptest::collection::vec(prop_oneof![3 => Just(0u64), 1 => 1u64..4], n),
            n,
        )
        .prop_map(move |m| FlowNetwork::from_dense(&labels(n), &m).unwrap())
    })
}
