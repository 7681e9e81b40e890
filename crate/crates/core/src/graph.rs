//! Structure of the support graph: strongly connected components, elementary
//! cycle enumeration, pivots between cycles and the link-cycle incidence
//! system used by the linear decomposition.

use std::collections::{BTreeSet, HashMap};

use num_traits::Zero;

use crate::cycle::{CanonicalCycle, NodeId};
use crate::error::{Error, Result};
use crate::network::FlowNetwork;
use crate::rational::Rational;

/// Default cap on the number of cycles [`enumerate_canonical_cycles`] will
/// produce before giving up.
pub const DEFAULT_CYCLE_BUDGET: usize = 100_000;

/// Tarjan's algorithm over node indices, restricted to `allowed` vertices.
/// Returns each component as a list of indices.
fn tarjan(adj: &[Vec<usize>], allowed: impl Fn(usize) -> bool) -> Vec<Vec<usize>> {
    const UNVISITED: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut components = Vec::new();
    let mut counter = 0;
    // (vertex, next neighbour position)
    let mut work: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED || !allowed(root) {
            continue;
        }
        work.push((root, 0));
        while let Some(&mut (v, ref mut pos)) = work.last_mut() {
            if *pos == 0 && index[v] == UNVISITED {
                index[v] = counter;
                low[v] = counter;
                counter += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if let Some(&w) = adj[v].get(*pos) {
                *pos += 1;
                if !allowed(w) {
                    continue;
                }
                if index[w] == UNVISITED {
                    work.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            work.pop();
            if let Some(&(parent, _)) = work.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut component = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    component.push(w);
                    if w == v {
                        break;
                    }
                }
                components.push(component);
            }
        }
    }
    components
}

/// Maximal strongly connected components, each as a node set, ordered by
/// their smallest node. Every node belongs to exactly one component.
pub fn strongly_connected_components(net: &FlowNetwork) -> Vec<BTreeSet<NodeId>> {
    let (nodes, adj) = net.adjacency();
    let mut components: Vec<BTreeSet<NodeId>> = tarjan(&adj, |_| true)
        .into_iter()
        .map(|c| c.into_iter().map(|i| nodes[i].clone()).collect())
        .collect();
    components.sort();
    components
}

/// Every elementary cycle of the support graph (self-loops included) in
/// canonical rotation, sorted, with the default budget.
pub fn enumerate_canonical_cycles(net: &FlowNetwork) -> Result<Vec<CanonicalCycle>> {
    enumerate_canonical_cycles_with_budget(net, DEFAULT_CYCLE_BUDGET)
}

/// Johnson's circuit enumeration. Fails with `CycleBudgetExceeded` as soon
/// as more than `budget` cycles have been found.
pub fn enumerate_canonical_cycles_with_budget(
    net: &FlowNetwork,
    budget: usize,
) -> Result<Vec<CanonicalCycle>> {
    let (nodes, adj) = net.adjacency();
    let n = nodes.len();
    let mut search = Johnson {
        adj: &adj,
        in_component: vec![false; n],
        blocked: vec![false; n],
        block_map: vec![Vec::new(); n],
        path: Vec::new(),
        found: Vec::new(),
        budget,
    };

    // Node indices follow label order, so a cycle whose least vertex is
    // `start` is discovered already in canonical rotation.
    for start in 0..n {
        let component = tarjan(&adj, |v| v >= start)
            .into_iter()
            .find(|c| c.contains(&start))
            .unwrap_or_default();
        if component.len() == 1 && !adj[start].contains(&start) {
            continue;
        }
        search.in_component.iter_mut().for_each(|x| *x = false);
        for &v in &component {
            search.in_component[v] = true;
            search.blocked[v] = false;
            search.block_map[v].clear();
        }
        search.circuit(start, start)?;
    }

    let mut cycles = search
        .found
        .into_iter()
        .map(|idx| {
            CanonicalCycle::new(idx.into_iter().map(|i| nodes[i].clone()).collect())
                .expect("elementary cycles have distinct nodes")
        })
        .collect::<Vec<_>>();
    cycles.sort();
    cycles.dedup();
    Ok(cycles)
}

struct Johnson<'a> {
    adj: &'a [Vec<usize>],
    in_component: Vec<bool>,
    blocked: Vec<bool>,
    block_map: Vec<Vec<usize>>,
    path: Vec<usize>,
    found: Vec<Vec<usize>>,
    budget: usize,
}

impl Johnson<'_> {
    fn circuit(&mut self, v: usize, start: usize) -> Result<bool> {
        let mut closed = false;
        self.path.push(v);
        self.blocked[v] = true;
        for &w in &self.adj[v] {
            if !self.in_component[w] {
                continue;
            }
            if w == start {
                if self.found.len() == self.budget {
                    return Err(Error::CycleBudgetExceeded {
                        budget: self.budget,
                    });
                }
                self.found.push(self.path.clone());
                closed = true;
            } else if !self.blocked[w] && self.circuit(w, start)? {
                closed = true;
            }
        }
        if closed {
            self.unblock(v);
        } else {
            for &w in &self.adj[v] {
                if self.in_component[w] && !self.block_map[w].contains(&v) {
                    self.block_map[w].push(v);
                }
            }
        }
        self.path.pop();
        Ok(closed)
    }

    fn unblock(&mut self, u: usize) {
        let mut pending = vec![u];
        while let Some(x) = pending.pop() {
            if !self.blocked[x] {
                continue;
            }
            self.blocked[x] = false;
            pending.append(&mut self.block_map[x]);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotKind {
    Node,
    Link,
    Path,
}

/// A node sequence that is contiguous, in the same direction, in two cycles.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pivot {
    pub path: Vec<NodeId>,
}

impl Pivot {
    pub fn kind(&self) -> PivotKind {
        match self.path.len() {
            1 => PivotKind::Node,
            2 => PivotKind::Link,
            _ => PivotKind::Path,
        }
    }
}

/// All maximal common directed paths of two cycles, with wraparound.
///
/// Shared nodes are joined by the links the two cycles have in common. Each
/// shared node has at most one common outgoing and one common incoming link,
/// so the shared structure splits into simple paths, or is a whole cycle
/// when the two cycles coincide.
pub fn find_pivots(first: &CanonicalCycle, second: &CanonicalCycle) -> Vec<Pivot> {
    if first == second {
        return vec![Pivot {
            path: first.nodes().to_vec(),
        }];
    }
    let common_next = |v: &NodeId| -> Option<NodeId> {
        let next = first.successor(v)?;
        second.has_link(v, next).then(|| next.clone())
    };
    let shared: Vec<&NodeId> = first
        .nodes()
        .iter()
        .filter(|v| second.contains(v))
        .collect();
    let has_common_incoming: BTreeSet<NodeId> =
        shared.iter().filter_map(|v| common_next(v)).collect();

    let mut pivots: Vec<Pivot> = shared
        .iter()
        .filter(|v| !has_common_incoming.contains(**v))
        .map(|&v| {
            let mut path = vec![v.clone()];
            while let Some(next) = common_next(path.last().expect("nonempty path")) {
                path.push(next);
            }
            Pivot { path }
        })
        .collect();
    pivots.sort();
    pivots.dedup();
    pivots
}

/// Binary link-by-cycle incidence matrix `H` with the link-flow vector `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkCycleSystem {
    /// Rows of `H`, sorted by `(from, to)`.
    pub links: Vec<(NodeId, NodeId)>,
    /// Columns of `H`, in the order given at construction.
    pub cycles: Vec<CanonicalCycle>,
    /// `incidence[link][cycle]`.
    pub incidence: Vec<Vec<bool>>,
    /// `y`, aligned with `links`.
    pub link_flows: Vec<u64>,
}

impl LinkCycleSystem {
    pub fn link_count(&self) -> usize {
        self.links.len()
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    pub fn column_sums(&self) -> Vec<usize> {
        (0..self.cycle_count())
            .map(|j| self.incidence.iter().filter(|row| row[j]).count())
            .collect()
    }

    /// `H x`.
    pub fn apply(&self, weights: &[Rational]) -> Result<Vec<Rational>> {
        if weights.len() != self.cycle_count() {
            return Err(Error::DimensionMismatch {
                expected: self.cycle_count(),
                found: weights.len(),
            });
        }
        Ok(self
            .incidence
            .iter()
            .map(|row| {
                row.iter()
                    .zip(weights)
                    .filter(|(hit, _)| **hit)
                    .fold(Rational::zero(), |acc, (_, x)| acc + x)
            })
            .collect())
    }
}

pub fn build_link_cycle_system(
    net: &FlowNetwork,
    cycles: &[CanonicalCycle],
) -> Result<LinkCycleSystem> {
    let links: Vec<(NodeId, NodeId)> = net
        .links()
        .map(|(p, q, _)| (p.clone(), q.clone()))
        .collect();
    let link_flows: Vec<u64> = net.links().map(|(_, _, f)| f).collect();
    let row_of: HashMap<(&NodeId, &NodeId), usize> = links
        .iter()
        .enumerate()
        .map(|(i, (p, q))| ((p, q), i))
        .collect();

    let mut incidence = vec![vec![false; cycles.len()]; links.len()];
    for (j, cycle) in cycles.iter().enumerate() {
        for (p, q) in cycle.links() {
            let row = *row_of.get(&(p, q)).ok_or_else(|| Error::UnknownLink {
                from: p.clone(),
                to: q.clone(),
            })?;
            incidence[row][j] = true;
        }
    }
    Ok(LinkCycleSystem {
        links,
        cycles: cycles.to_vec(),
        incidence,
        link_flows,
    })
}
