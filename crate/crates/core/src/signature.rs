//! Terms and network signatures.

use std::collections::{BTreeMap, BTreeSet};

use crate::cycle::{CanonicalCycle, NodeId};
use crate::error::{Error, Result};

/// A positive multiple of a canonical cycle.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub coefficient: u64,
    pub cycle: CanonicalCycle,
}

impl Term {
    pub fn new(coefficient: u64, cycle: CanonicalCycle) -> Self {
        Term { coefficient, cycle }
    }
}

/// A normalized network signature: distinct canonical cycles with positive
/// coefficients, sorted by cycle.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Signature {
    terms: Vec<Term>,
}

impl Signature {
    /// Builds a signature from terms whose cycles are already canonical.
    /// Duplicate cycles are merged and zero terms dropped.
    pub fn from_terms(terms: impl IntoIterator<Item = Term>) -> Result<Self> {
        let mut merged: BTreeMap<CanonicalCycle, u64> = BTreeMap::new();
        for term in terms {
            let slot = merged.entry(term.cycle).or_insert(0);
            *slot = slot
                .checked_add(term.coefficient)
                .ok_or(Error::FlowOverflow)?;
        }
        Ok(Signature {
            terms: merged
                .into_iter()
                .filter(|(_, c)| *c > 0)
                .map(|(cycle, coefficient)| Term { coefficient, cycle })
                .collect(),
        })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Every node that occurs in some term, in label order.
    pub fn nodes(&self) -> BTreeSet<NodeId> {
        self.terms
            .iter()
            .flat_map(|t| t.cycle.nodes().iter().cloned())
            .collect()
    }

    /// The same cycles with every coefficient multiplied by `factor`.
    pub fn scaled(&self, factor: u64) -> Result<Self> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                t.coefficient
                    .checked_mul(factor)
                    .map(|c| Term::new(c, t.cycle.clone()))
                    .ok_or(Error::FlowOverflow)
            })
            .collect::<Result<Vec<_>>>()?;
        Signature::from_terms(terms)
    }
}

/// Canonicalizes each raw cycle, merges equal cycles by adding their
/// coefficients, drops zero sums and sorts the result.
pub fn normalize_signature<I>(raw_terms: I) -> Result<Signature>
where
    I: IntoIterator<Item = (i64, Vec<NodeId>)>,
{
    let mut merged: BTreeMap<CanonicalCycle, i128> = BTreeMap::new();
    for (coefficient, nodes) in raw_terms {
        let cycle = CanonicalCycle::new(nodes)?;
        *merged.entry(cycle).or_insert(0) += i128::from(coefficient);
    }
    let mut terms = Vec::with_capacity(merged.len());
    for (cycle, coefficient) in merged {
        if coefficient < 0 {
            return Err(Error::NegativeCoefficient {
                coefficient,
                cycle: cycle
                    .nodes()
                    .iter()
                    .map(NodeId::as_str)
                    .collect::<Vec<_>>()
                    .join(","),
            });
        }
        if coefficient > 0 {
            let coefficient = u64::try_from(coefficient).map_err(|_| Error::FlowOverflow)?;
            terms.push(Term { coefficient, cycle });
        }
    }
    Ok(Signature { terms })
}
