//! Quantities read directly off a signature string, and the matrix-side
//! premagic and irreducibility checks.
//!
//! The signature-side functions never compose a matrix: each entry is
//! computed from the terms whose cycles contain the relevant link or node.

use std::collections::BTreeMap;

use crate::algebra::compose;
use crate::cycle::NodeId;
use crate::error::{Error, Result};
use crate::graph::strongly_connected_components;
use crate::network::FlowNetwork;
use crate::rational::{ratio, RationalMatrix};
use crate::signature::Signature;

/// Sum of `coefficient * cycle length` over all terms.
pub fn total_flow(sig: &Signature) -> u64 {
    sig.terms()
        .iter()
        .map(|t| t.coefficient * t.cycle.len() as u64)
        .sum()
}

/// Flow on link `from -> to`: the coefficients of every term whose cycle
/// traverses that link, closing link included.
pub fn link_flow(sig: &Signature, from: &NodeId, to: &NodeId) -> u64 {
    sig.terms()
        .iter()
        .filter(|t| t.cycle.has_link(from, to))
        .map(|t| t.coefficient)
        .sum()
}

/// Row sum (equal to column sum) of `node`: the coefficients of every term
/// whose cycle visits it.
pub fn node_flow_sum(sig: &Signature, node: &NodeId) -> u64 {
    sig.terms()
        .iter()
        .filter(|t| t.cycle.contains(node))
        .map(|t| t.coefficient)
        .sum()
}

fn link_flow_table(sig: &Signature) -> (Vec<NodeId>, Vec<Vec<u64>>) {
    let nodes: Vec<NodeId> = sig.nodes().into_iter().collect();
    let table = nodes
        .iter()
        .map(|p| nodes.iter().map(|q| link_flow(sig, p, q)).collect())
        .collect();
    (nodes, table)
}

/// `P[p][q] = f_pq / kappa`.
pub fn probability_matrix(sig: &Signature) -> Result<RationalMatrix> {
    let kappa = total_flow(sig);
    if kappa == 0 {
        return Err(Error::EmptySignature);
    }
    let (nodes, flows) = link_flow_table(sig);
    let entries = flows
        .into_iter()
        .map(|row| row.into_iter().map(|f| ratio(f, kappa)).collect())
        .collect();
    RationalMatrix::new(nodes, entries)
}

/// Row-stochastic outflow matrix `S[p][q] = f_pq / sigma_p`.
pub fn outflow_stochastic(sig: &Signature) -> Result<RationalMatrix> {
    if sig.is_empty() {
        return Err(Error::EmptySignature);
    }
    let (nodes, flows) = link_flow_table(sig);
    let sums: Vec<u64> = nodes.iter().map(|p| node_flow_sum(sig, p)).collect();
    let entries = flows
        .into_iter()
        .zip(&sums)
        .map(|(row, &s)| row.into_iter().map(|f| ratio(f, s)).collect())
        .collect();
    RationalMatrix::new(nodes, entries)
}

/// Column-stochastic inflow matrix `T[p][q] = f_pq / sigma_q`.
pub fn inflow_stochastic(sig: &Signature) -> Result<RationalMatrix> {
    if sig.is_empty() {
        return Err(Error::EmptySignature);
    }
    let (nodes, flows) = link_flow_table(sig);
    let sums: Vec<u64> = nodes.iter().map(|q| node_flow_sum(sig, q)).collect();
    let entries = flows
        .into_iter()
        .map(|row| {
            row.into_iter()
                .zip(&sums)
                .map(|(f, &s)| ratio(f, s))
                .collect()
        })
        .collect();
    RationalMatrix::new(nodes, entries)
}

/// Link probabilities of a network: every flow divided by the total.
pub fn network_probability_matrix(net: &FlowNetwork) -> Result<RationalMatrix> {
    let kappa = net.total_flow();
    if kappa == 0 {
        return Err(Error::EmptyNetwork);
    }
    let entries = net
        .to_dense()
        .into_iter()
        .map(|row| row.into_iter().map(|f| ratio(f, kappa)).collect())
        .collect();
    RationalMatrix::new(net.node_list(), entries)
}

/// Row-normalized flows. Every node needs positive out-flow.
pub fn network_outflow_stochastic(net: &FlowNetwork) -> Result<RationalMatrix> {
    let nodes = net.node_list();
    let dense = net.to_dense();
    let mut entries = Vec::with_capacity(nodes.len());
    for (node, row) in nodes.iter().zip(dense) {
        let sum: u64 = row.iter().sum();
        if sum == 0 {
            return Err(Error::ZeroNodeFlow(node.clone()));
        }
        entries.push(row.into_iter().map(|f| ratio(f, sum)).collect());
    }
    RationalMatrix::new(nodes, entries)
}

/// Column-normalized flows. Every node needs positive in-flow.
pub fn network_inflow_stochastic(net: &FlowNetwork) -> Result<RationalMatrix> {
    let nodes = net.node_list();
    let dense = net.to_dense();
    let sums: Vec<u64> = (0..nodes.len())
        .map(|j| dense.iter().map(|row| row[j]).sum())
        .collect();
    if let Some(j) = sums.iter().position(|&s| s == 0) {
        return Err(Error::ZeroNodeFlow(nodes[j].clone()));
    }
    let entries = dense
        .into_iter()
        .map(|row| {
            row.into_iter()
                .zip(&sums)
                .map(|(f, &s)| ratio(f, s))
                .collect()
        })
        .collect();
    RationalMatrix::new(nodes, entries)
}

/// Row sum equals column sum at every node.
pub fn is_premagic(net: &FlowNetwork) -> bool {
    first_unbalanced_node(net).is_none()
}

/// The first node (in label order) whose out-flow differs from its in-flow.
pub fn first_unbalanced_node(net: &FlowNetwork) -> Option<(NodeId, u64, u64)> {
    net.node_balances()
        .into_iter()
        .find(|(_, (out, inn))| out != inn)
        .map(|(n, (out, inn))| (n, out, inn))
}

pub(crate) fn require_premagic(net: &FlowNetwork) -> Result<()> {
    match first_unbalanced_node(net) {
        None => Ok(()),
        Some((node, out_flow, in_flow)) => Err(Error::NotPremagic {
            node,
            out_flow,
            in_flow,
        }),
    }
}

/// Square boolean matrix with bit-packed rows.
struct BoolMatrix {
    n: usize,
    words: usize,
    rows: Vec<Vec<u64>>,
}

impl BoolMatrix {
    fn identity_plus(adj: &[Vec<usize>]) -> Self {
        let n = adj.len();
        let words = n.div_ceil(64);
        let mut rows = vec![vec![0u64; words]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i / 64] |= 1 << (i % 64);
            for &j in &adj[i] {
                row[j / 64] |= 1 << (j % 64);
            }
        }
        BoolMatrix { n, words, rows }
    }

    /// Product over the (OR, AND) semiring.
    fn multiply(&self, other: &BoolMatrix) -> BoolMatrix {
        let mut rows = vec![vec![0u64; self.words]; self.n];
        for (out, row) in rows.iter_mut().zip(&self.rows) {
            for k in 0..self.n {
                if row[k / 64] >> (k % 64) & 1 == 1 {
                    for (o, x) in out.iter_mut().zip(&other.rows[k]) {
                        *o |= x;
                    }
                }
            }
        }
        BoolMatrix {
            n: self.n,
            words: self.words,
            rows,
        }
    }

    fn all_ones(&self) -> bool {
        let tail = self.n % 64;
        self.rows.iter().all(|row| {
            row.iter().enumerate().all(|(w, &bits)| {
                if w + 1 == self.words && tail != 0 {
                    bits == (1u64 << tail) - 1
                } else {
                    bits == u64::MAX
                }
            })
        })
    }
}

/// Irreducibility by matrix power: `(I + A)^(n-1)` has no zero entry.
///
/// Entries are kept as booleans, so only the positivity pattern is computed.
/// Powers beyond `n - 1` have the same pattern, which lets repeated squaring
/// overshoot the exponent. A network without nodes is not irreducible.
pub fn is_irreducible_matrix(net: &FlowNetwork) -> bool {
    let (_, adj) = net.adjacency();
    let n = adj.len();
    if n == 0 {
        return false;
    }
    let mut power = BoolMatrix::identity_plus(&adj);
    let mut exponent = 1;
    while exponent < n - 1 {
        power = power.multiply(&power);
        exponent *= 2;
    }
    power.all_ones()
}

/// Irreducibility read off the signature: the graph whose vertices are the
/// terms, with an edge wherever two cycles share a node, must be connected.
pub fn is_irreducible_signature(sig: &Signature) -> Result<bool> {
    if sig.is_empty() {
        return Err(Error::EmptySignature);
    }
    // Union-find over terms; terms meet through any node they share.
    let mut parent: Vec<usize> = (0..sig.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut owner: BTreeMap<&NodeId, usize> = BTreeMap::new();
    for (i, term) in sig.terms().iter().enumerate() {
        for node in term.cycle.nodes() {
            match owner.get(node) {
                Some(&j) => {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
                None => {
                    owner.insert(node, i);
                }
            }
        }
    }
    let root = find(&mut parent, 0);
    Ok((1..sig.len()).all(|i| find(&mut parent, i) == root))
}

/// Irreducibility by strongly connected components.
pub fn is_strongly_connected(net: &FlowNetwork) -> bool {
    strongly_connected_components(net).len() == 1
}

/// How two signatures relate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationClass {
    /// Same canonical cycles with the same coefficients.
    Identical,
    /// Different terms, same labeled matrix.
    Equivalent,
    Distinct,
}

impl RelationClass {
    pub fn as_str(self) -> &'static str {
        match self {
            RelationClass::Identical => "identical",
            RelationClass::Equivalent => "equivalent",
            RelationClass::Distinct => "distinct",
        }
    }
}

pub fn classify_relation(first: &Signature, second: &Signature) -> Result<RelationClass> {
    if first == second {
        return Ok(RelationClass::Identical);
    }
    if compose(first, false)? == compose(second, false)? {
        Ok(RelationClass::Equivalent)
    } else {
        Ok(RelationClass::Distinct)
    }
}

/// Premagic, irreducible, and carrying some positive flow.
pub fn is_ideal_flow(net: &FlowNetwork) -> bool {
    net.has_flow() && is_premagic(net) && is_irreducible_matrix(net)
}

/// Integer row sums of a network keyed by node (the `sigma` vector).
pub fn network_node_sums(net: &FlowNetwork) -> BTreeMap<NodeId, u64> {
    net.node_balances()
        .into_iter()
        .map(|(n, (out, _))| (n, out))
        .collect()
}

/// Sum of every entry of a rational matrix equals one.
pub fn sums_to_one(m: &RationalMatrix) -> bool {
    m.total() == ratio(1, 1)
}
