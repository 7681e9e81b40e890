//! Node labels and canonical cycles.
//!
//! Node labels are ordered by the byte order of their text. That single
//! ordering drives cycle canonicalization, signature sorting, link ordering
//! and every tie-break in the crate.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A node label.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(String);

impl NodeId {
    pub fn new(label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        if !is_valid_label(&label) {
            return Err(Error::InvalidNodeLabel(label));
        }
        Ok(NodeId(label))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// True when the label is a single ASCII letter, i.e. it can be written
    /// in the compact signature syntax.
    pub fn is_single_letter(&self) -> bool {
        self.0.len() == 1 && self.0.as_bytes()[0].is_ascii_alphabetic()
    }
}

pub(crate) fn is_label_char(c: char) -> bool {
    !(c.is_whitespace() || matches!(c, '+' | '(' | ')' | ','))
}

fn is_valid_label(label: &str) -> bool {
    match label.chars().next() {
        None => false,
        Some(first) if first.is_ascii_digit() => false,
        Some(_) => label.chars().all(is_label_char),
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for NodeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NodeId::new(s)
    }
}

impl AsRef<str> for NodeId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// Labels used for generated networks: `a`..`z` for up to 26 nodes,
/// otherwise zero-padded `n01`, `n02`, ... so byte order matches numeric order.
pub fn default_labels(n: usize) -> Vec<NodeId> {
    if n <= 26 {
        (0..n)
            .map(|i| NodeId(((b'a' + i as u8) as char).to_string()))
            .collect()
    } else {
        let width = n.to_string().len();
        (1..=n).map(|i| NodeId(format!("n{i:0width$}"))).collect()
    }
}

/// A directed elementary cycle written from its smallest node, with the
/// closing link back to the first node left implicit.
///
/// The derived ordering compares node sequences lexicographically, so a
/// prefix sorts before any of its extensions (`a < abcd < b < bd`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCycle(Vec<NodeId>);

impl CanonicalCycle {
    /// Rotates `raw` so that it starts at its minimum node.
    pub fn new(raw: Vec<NodeId>) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyCycle);
        }
        let mut seen = HashSet::with_capacity(raw.len());
        for node in &raw {
            if !seen.insert(node) {
                return Err(Error::DuplicateNodeInCycle(node.clone()));
            }
        }
        let start = raw
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.cmp(b.1))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let mut nodes = raw;
        nodes.rotate_left(start);
        Ok(CanonicalCycle(nodes))
    }

    /// Parses a cycle from labels, e.g. `CanonicalCycle::from_labels(&["b", "c", "a"])`.
    pub fn from_labels<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        let nodes = labels
            .iter()
            .map(|l| NodeId::new(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(nodes)
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, node: &NodeId) -> bool {
        self.0.contains(node)
    }

    /// The successor of `node` along the cycle, if `node` is on it.
    pub fn successor(&self, node: &NodeId) -> Option<&NodeId> {
        let i = self.0.iter().position(|n| n == node)?;
        Some(&self.0[(i + 1) % self.0.len()])
    }

    /// True when the cycle traverses the link `from -> to`.
    pub fn has_link(&self, from: &NodeId, to: &NodeId) -> bool {
        self.successor(from) == Some(to)
    }

    /// All links of the cycle, including the closing link.
    pub fn links(&self) -> impl Iterator<Item = (&NodeId, &NodeId)> + '_ {
        let n = self.0.len();
        (0..n).map(move |i| (&self.0[i], &self.0[(i + 1) % n]))
    }
}
