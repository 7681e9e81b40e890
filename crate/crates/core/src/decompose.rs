//! Matrix to signature: greedy cycle extraction and the link-cycle linear
//! system.

use num_traits::{Signed, Zero};

use crate::analysis::require_premagic;
use crate::cycle::{CanonicalCycle, NodeId};
use crate::error::{Error, Result};
use crate::graph::{build_link_cycle_system, enumerate_canonical_cycles, LinkCycleSystem};
use crate::network::FlowNetwork;
use crate::rational::{rational, solve_exact, Rational};
use crate::signature::{Signature, Term};

/// Repeatedly peels one cycle off the network until no flow remains.
///
/// Each walk starts at the smallest node with out-flow and always moves to
/// the smallest successor that still carries flow. The walk stops on the
/// first repeated node; the loop it closes is extracted with the smallest
/// flow along it as coefficient, which zeroes at least one link.
pub fn greedy_decompose(net: &FlowNetwork) -> Result<Signature> {
    require_premagic(net)?;
    let mut rest = net.clone();
    let mut terms = Vec::new();
    loop {
        let start = match rest.links().next() {
            Some((p, _, _)) => p.clone(),
            None => break,
        };
        let mut walk: Vec<NodeId> = vec![start];
        let cycle = loop {
            let current = walk.last().expect("walk is never empty");
            let (next, _) = rest
                .successors(current)
                .next()
                .expect("a balanced node entered by flow has out-flow");
            if let Some(i) = walk.iter().position(|n| n == next) {
                break walk.split_off(i);
            }
            let next = next.clone();
            walk.push(next);
        };
        let cycle = CanonicalCycle::new(cycle)?;
        let coefficient = cycle
            .links()
            .map(|(p, q)| rest.flow(p, q))
            .min()
            .expect("cycles have at least one link");
        rest.assign(-(coefficient as i64), &cycle)?;
        terms.push(Term::new(coefficient, cycle));
    }
    Signature::from_terms(terms)
}

/// Cycle coefficients aligned with a [`LinkCycleSystem`]'s cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleWeights(pub Vec<Rational>);

/// A least-squares solution of `H x = y` and its residual `H x - y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleSolution {
    pub weights: CycleWeights,
    pub residual: Vec<Rational>,
}

impl CycleSolution {
    pub fn is_exact(&self) -> bool {
        self.residual.iter().all(Zero::is_zero)
    }
}

/// Exact least-squares solution of `H x = y`, free variables set to zero.
///
/// When `y` lies in the column space of `H` the system is reduced directly;
/// `H` and `HᵀH` share a row space, so their reduced echelon forms agree and
/// this yields the same solution as the normal equations. Otherwise the
/// normal equations `HᵀH x = Hᵀ y` are solved.
pub fn solve_cycle_weights(system: &LinkCycleSystem) -> Result<CycleSolution> {
    if system.link_flows.len() != system.incidence.len() {
        return Err(Error::DimensionMismatch {
            expected: system.incidence.len(),
            found: system.link_flows.len(),
        });
    }
    let cycles = system.cycle_count();
    if let Some(row) = system.incidence.iter().find(|r| r.len() != cycles) {
        return Err(Error::DimensionMismatch {
            expected: cycles,
            found: row.len(),
        });
    }
    let h: Vec<Vec<Rational>> = system
        .incidence
        .iter()
        .map(|row| row.iter().map(|&b| rational(u8::from(b))).collect())
        .collect();
    let y: Vec<Rational> = system.link_flows.iter().map(|&f| rational(f)).collect();

    let weights = match solve_exact(&h, &y) {
        Some(x) => x,
        None => {
            let (normal, rhs) = normal_equations(system);
            solve_exact(&normal, &rhs).expect("normal equations are always consistent")
        }
    };
    let reconstructed = system.apply(&weights)?;
    let residual = reconstructed
        .into_iter()
        .zip(&y)
        .map(|(hx, y)| hx - y)
        .collect();
    Ok(CycleSolution {
        weights: CycleWeights(weights),
        residual,
    })
}

/// `HᵀH` and `Hᵀy`. Entry `(i, j)` of `HᵀH` counts links shared by cycles `i`
/// and `j`.
fn normal_equations(system: &LinkCycleSystem) -> (Vec<Vec<Rational>>, Vec<Rational>) {
    let k = system.cycle_count();
    let mut gram = vec![vec![0u64; k]; k];
    let mut rhs = vec![0u64; k];
    for (row, &y) in system.incidence.iter().zip(&system.link_flows) {
        let hits: Vec<usize> = (0..k).filter(|&j| row[j]).collect();
        for &i in &hits {
            rhs[i] += y;
            for &j in &hits {
                gram[i][j] += 1;
            }
        }
    }
    (
        gram.into_iter()
            .map(|r| r.into_iter().map(rational).collect())
            .collect(),
        rhs.into_iter().map(rational).collect(),
    )
}

/// Rational cycle weights that do not form an integer signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonIntegerWitness {
    pub cycles: Vec<CanonicalCycle>,
    pub weights: Vec<Rational>,
    pub residual: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearDecomposition {
    Signature(Signature),
    Witness(NonIntegerWitness),
}

/// Decomposition through the link-cycle system over every elementary cycle
/// of the support. Nothing forces the solution to be a nonnegative integer
/// vector; when it is not, the rational weights are returned as a witness.
pub fn linear_decompose(net: &FlowNetwork) -> Result<LinearDecomposition> {
    require_premagic(net)?;
    let cycles = enumerate_canonical_cycles(net)?;
    let system = build_link_cycle_system(net, &cycles)?;
    let solution = solve_cycle_weights(&system)?;
    let integral = solution
        .weights
        .0
        .iter()
        .all(|w| w.is_integer() && !w.is_negative());
    if !(integral && solution.is_exact()) {
        return Ok(LinearDecomposition::Witness(NonIntegerWitness {
            cycles,
            weights: solution.weights.0,
            residual: solution.residual,
        }));
    }
    let terms = cycles
        .into_iter()
        .zip(solution.weights.0)
        .filter(|(_, w)| !w.is_zero())
        .map(|(cycle, w)| {
            let coefficient = u64::try_from(w.to_integer()).map_err(|_| Error::FlowOverflow)?;
            Ok(Term::new(coefficient, cycle))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LinearDecomposition::Signature(Signature::from_terms(
        terms,
    )?))
}
