//! Sparse nonnegative integer flow matrices over labeled nodes.

use std::collections::{BTreeMap, BTreeSet};

use crate::cycle::NodeId;
use crate::error::{Error, Result};

/// A labeled flow matrix. Zero entries are never stored, so the stored links
/// are exactly the support (adjacency) of the network.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FlowNetwork {
    nodes: BTreeSet<NodeId>,
    flows: BTreeMap<NodeId, BTreeMap<NodeId, u64>>,
}

impl FlowNetwork {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_nodes(nodes: impl IntoIterator<Item = NodeId>) -> Self {
        FlowNetwork {
            nodes: nodes.into_iter().collect(),
            flows: BTreeMap::new(),
        }
    }

    /// Builds a network from a dense row-major matrix. Node order in `nodes`
    /// is free; rows and columns follow it.
    pub fn from_dense(nodes: &[NodeId], matrix: &[Vec<u64>]) -> Result<Self> {
        if matrix.len() != nodes.len() {
            return Err(Error::DimensionMismatch {
                expected: nodes.len(),
                found: matrix.len(),
            });
        }
        let mut net = FlowNetwork::new();
        for node in nodes {
            if !net.nodes.insert(node.clone()) {
                return Err(Error::DuplicateNode(node.clone()));
            }
        }
        for (p, row) in nodes.iter().zip(matrix) {
            if row.len() != nodes.len() {
                return Err(Error::DimensionMismatch {
                    expected: nodes.len(),
                    found: row.len(),
                });
            }
            for (q, &f) in nodes.iter().zip(row) {
                net.set_flow(p.clone(), q.clone(), f);
            }
        }
        Ok(net)
    }

    /// Dense matrix in sorted node order.
    pub fn to_dense(&self) -> Vec<Vec<u64>> {
        self.nodes
            .iter()
            .map(|p| self.nodes.iter().map(|q| self.flow(p, q)).collect())
            .collect()
    }

    pub fn nodes(&self) -> &BTreeSet<NodeId> {
        &self.nodes
    }

    pub fn node_list(&self) -> Vec<NodeId> {
        self.nodes.iter().cloned().collect()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn add_node(&mut self, node: NodeId) {
        self.nodes.insert(node);
    }

    pub fn flow(&self, from: &NodeId, to: &NodeId) -> u64 {
        self.flows
            .get(from)
            .and_then(|row| row.get(to))
            .copied()
            .unwrap_or(0)
    }

    /// Sets a link's flow, creating missing endpoints. Zero removes the link.
    pub fn set_flow(&mut self, from: NodeId, to: NodeId, flow: u64) {
        self.nodes.insert(from.clone());
        self.nodes.insert(to.clone());
        if flow == 0 {
            if let Some(row) = self.flows.get_mut(&from) {
                row.remove(&to);
                if row.is_empty() {
                    self.flows.remove(&from);
                }
            }
        } else {
            self.flows.entry(from).or_default().insert(to, flow);
        }
    }

    /// Links with positive flow, sorted by `(from, to)`.
    pub fn links(&self) -> impl Iterator<Item = (&NodeId, &NodeId, u64)> + '_ {
        self.flows
            .iter()
            .flat_map(|(p, row)| row.iter().map(move |(q, f)| (p, q, *f)))
    }

    pub fn link_count(&self) -> usize {
        self.flows.values().map(BTreeMap::len).sum()
    }

    pub fn has_flow(&self) -> bool {
        !self.flows.is_empty()
    }

    /// Successors of `node` with their flows, in label order.
    pub fn successors<'a>(&'a self, node: &NodeId) -> impl Iterator<Item = (&'a NodeId, u64)> + 'a {
        self.flows
            .get(node)
            .into_iter()
            .flat_map(|row| row.iter().map(|(q, f)| (q, *f)))
    }

    pub fn out_flow(&self, node: &NodeId) -> u64 {
        self.successors(node).map(|(_, f)| f).sum()
    }

    pub fn in_flow(&self, node: &NodeId) -> u64 {
        self.links()
            .filter(|(_, q, _)| *q == node)
            .map(|(_, _, f)| f)
            .sum()
    }

    /// Sum of all entries.
    pub fn total_flow(&self) -> u64 {
        self.flows.values().flat_map(BTreeMap::values).sum()
    }

    /// Per-node (out-flow, in-flow) in sorted node order.
    pub fn node_balances(&self) -> BTreeMap<NodeId, (u64, u64)> {
        let mut sums: BTreeMap<NodeId, (u64, u64)> =
            self.nodes.iter().map(|n| (n.clone(), (0, 0))).collect();
        for (p, q, f) in self.links() {
            if let Some(s) = sums.get_mut(p) {
                s.0 += f;
            }
            if let Some(s) = sums.get_mut(q) {
                s.1 += f;
            }
        }
        sums
    }

    /// Adjacency lists over node indices in sorted order.
    pub(crate) fn adjacency(&self) -> (Vec<NodeId>, Vec<Vec<usize>>) {
        let nodes = self.node_list();
        let index: BTreeMap<&NodeId, usize> =
            nodes.iter().enumerate().map(|(i, n)| (n, i)).collect();
        let mut adj = vec![Vec::new(); nodes.len()];
        for (p, q, _) in self.links() {
            adj[index[p]].push(index[q]);
        }
        (nodes, adj)
    }
}
