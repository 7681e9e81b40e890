//! Building ideal flow networks: seeded random signatures, premier networks
//! and integer networks from Markov chains.
//!
//! Random generation uses `ChaCha8Rng::seed_from_u64`, so a given
//! `(nodes, kappa, seed)` always produces the same signature.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::compose;
use crate::analysis::is_irreducible_matrix;
use crate::cycle::{default_labels, CanonicalCycle, NodeId};
use crate::error::{Error, Result};
use crate::graph::{enumerate_canonical_cycles, strongly_connected_components};
use crate::network::FlowNetwork;
use crate::rational::{rational, solve_exact, Rational, RationalMatrix};
use crate::signature::{Signature, Term};

/// A random irreducible signature over `n` nodes with total flow exactly
/// `kappa`.
///
/// The first term is a Hamiltonian cycle through a shuffled node order, which
/// covers every node and makes `kappa = n` feasible. Up to `n` further short
/// cycles follow, each sharing a node with the previous one. Every term
/// starts with coefficient 1; the rest of the flow is spread over the terms
/// as an unbounded knapsack on cycle lengths, adding a self-loop when the
/// remainder is not a combination of the existing lengths.
pub fn random_ifn(n: usize, kappa: u64, seed: u64) -> Result<Signature> {
    if n == 0 {
        return Err(Error::InvalidNodeCount);
    }
    if kappa < n as u64 {
        return Err(Error::InfeasibleKappa { nodes: n, kappa });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels = default_labels(n);
    let mut hamiltonian = labels.clone();
    hamiltonian.shuffle(&mut rng);

    let mut cycles: Vec<Vec<NodeId>> = vec![hamiltonian];
    let mut used = n as u64;
    let extras = rng.random_range(0..=n);
    for _ in 0..extras {
        let room = kappa - used;
        if room == 0 {
            break;
        }
        let len = rng.random_range(1..=room.min(n as u64) as usize);
        let previous = cycles.last().expect("at least the Hamiltonian term");
        let pivot = previous
            .choose(&mut rng)
            .expect("cycles are nonempty")
            .clone();
        let others: Vec<&NodeId> = labels.iter().filter(|l| **l != pivot).collect();
        let mut cycle: Vec<NodeId> = others
            .choose_multiple(&mut rng, len - 1)
            .map(|l| (*l).clone())
            .collect();
        cycle.push(pivot);
        cycle.shuffle(&mut rng);
        used += len as u64;
        cycles.push(cycle);
    }

    let mut coefficients = vec![1u64; cycles.len()];
    let mut remainder = kappa - used;
    let lengths: Vec<u64> = cycles.iter().map(|c| c.len() as u64).collect();
    if !Knapsack::new(&lengths).representable(remainder) {
        let previous = cycles.last().expect("at least the Hamiltonian term");
        let node = previous
            .choose(&mut rng)
            .expect("cycles are nonempty")
            .clone();
        cycles.push(vec![node]);
        coefficients.push(1);
        remainder -= 1;
    }
    let lengths: Vec<u64> = cycles.iter().map(|c| c.len() as u64).collect();
    Knapsack::new(&lengths).distribute(remainder, &mut coefficients, &mut rng);

    let terms = cycles
        .into_iter()
        .zip(coefficients)
        .map(|(nodes, c)| Ok(Term::new(c, CanonicalCycle::new(nodes)?)))
        .collect::<Result<Vec<_>>>()?;
    Signature::from_terms(terms)
}

/// Unbounded knapsack over cycle lengths.
///
/// With `g = gcd(lengths)`, every multiple of `g` of at least
/// `g * (min/g - 1) * (max/g - 1)` is a nonnegative combination of the
/// lengths (Schur's bound on the Frobenius number), so the dynamic program
/// only runs up to `cap`, one longest cycle above that bound.
struct Knapsack<'a> {
    lengths: &'a [u64],
    gcd: u64,
    cap: u64,
}

impl<'a> Knapsack<'a> {
    fn new(lengths: &'a [u64]) -> Self {
        let gcd = lengths.iter().fold(0, |g, &l| g.gcd(&l));
        let shortest = lengths.iter().min().copied().unwrap_or(1) / gcd;
        let longest = lengths.iter().max().copied().unwrap_or(1) / gcd;
        let bound = gcd * (shortest - 1) * (longest - 1);
        Knapsack {
            lengths,
            gcd,
            cap: bound + longest * gcd,
        }
    }

    fn table(&self, target: u64) -> Vec<bool> {
        let mut reachable = vec![false; target as usize + 1];
        reachable[0] = true;
        for r in 1..=target as usize {
            reachable[r] = self
                .lengths
                .iter()
                .any(|&l| l as usize <= r && reachable[r - l as usize]);
        }
        reachable
    }

    fn representable(&self, target: u64) -> bool {
        if target > self.cap {
            target.is_multiple_of(self.gcd)
        } else {
            self.table(target)[target as usize]
        }
    }

    /// Adds to `coefficients` so that `sum(added_i * len_i) = target`.
    fn distribute(&self, mut target: u64, coefficients: &mut [u64], rng: &mut ChaCha8Rng) {
        // Large remainders: pour random multiples into random terms until the
        // rest is small enough for the table. The remainder never drops below
        // `cap - longest`, so it stays representable.
        while target > self.cap {
            let i = rng.random_range(0..self.lengths.len());
            let len = self.lengths[i];
            let most = ((target - self.cap) / len).max(1);
            let take = rng.random_range(1..=most);
            coefficients[i] += take;
            target -= take * len;
        }
        let reachable = self.table(target);
        while target > 0 {
            let options: Vec<usize> = (0..self.lengths.len())
                .filter(|&i| {
                    let l = self.lengths[i];
                    l <= target && reachable[(target - l) as usize]
                })
                .collect();
            let &i = options
                .choose(rng)
                .expect("remainder was checked to be representable");
            coefficients[i] += 1;
            target -= self.lengths[i];
        }
    }
}

/// Support graph on `n` default-labeled nodes with every link present,
/// optionally including self-loops.
pub fn complete_support(n: usize, self_loops: bool) -> FlowNetwork {
    let labels = default_labels(n);
    let mut net = FlowNetwork::with_nodes(labels.iter().cloned());
    for p in &labels {
        for q in &labels {
            if self_loops || p != q {
                net.set_flow(p.clone(), q.clone(), 1);
            }
        }
    }
    net
}

/// Every elementary cycle of a strongly connected support graph, each with
/// coefficient one, and the network they compose to.
pub fn premier_network(support: &FlowNetwork) -> Result<(Signature, FlowNetwork)> {
    if !support.has_flow() || strongly_connected_components(support).len() != 1 {
        return Err(Error::NotIrreducible);
    }
    let cycles = enumerate_canonical_cycles(support)?;
    let sig = Signature::from_terms(cycles.into_iter().map(|c| Term::new(1, c)))?;
    let net = compose(&sig, false)?;
    Ok((sig, net))
}

/// Exact stationary distribution of an irreducible Markov chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StationaryDistribution {
    pub nodes: Vec<NodeId>,
    pub weights: Vec<Rational>,
}

fn check_stochastic(stoch: &RationalMatrix) -> Result<()> {
    if stoch.size() == 0 {
        return Err(Error::NotStochastic("matrix has no rows".into()));
    }
    for (node, row) in stoch.nodes().iter().zip(stoch.entries()) {
        if row.iter().any(Signed::is_negative) {
            return Err(Error::NotStochastic(format!(
                "row {node} has a negative entry"
            )));
        }
        let sum = row.iter().fold(Rational::zero(), |acc, x| acc + x);
        if !sum.is_one() {
            return Err(Error::NotStochastic(format!("row {node} sums to {sum}")));
        }
    }
    Ok(())
}

fn support_of(stoch: &RationalMatrix) -> FlowNetwork {
    let mut net = FlowNetwork::with_nodes(stoch.nodes().iter().cloned());
    for (p, row) in stoch.nodes().iter().zip(stoch.entries()) {
        for (q, x) in stoch.nodes().iter().zip(row) {
            if !x.is_zero() {
                net.set_flow(p.clone(), q.clone(), 1);
            }
        }
    }
    net
}

/// Solves `pi S = pi` with `sum(pi) = 1` by exact elimination on
/// `(Sᵀ - I)` stacked with a row of ones.
pub fn stationary_distribution(stoch: &RationalMatrix) -> Result<StationaryDistribution> {
    check_stochastic(stoch)?;
    if !is_irreducible_matrix(&support_of(stoch)) {
        return Err(Error::NotIrreducible);
    }
    let n = stoch.size();
    let mut system: Vec<Vec<Rational>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    let x = stoch.get(i, j).clone();
                    if i == j {
                        x - Rational::one()
                    } else {
                        x
                    }
                })
                .collect()
        })
        .collect();
    system.push(vec![Rational::one(); n]);
    let mut rhs = vec![Rational::zero(); n];
    rhs.push(Rational::one());
    let weights = solve_exact(&system, &rhs).ok_or(Error::NotIrreducible)?;
    Ok(StationaryDistribution {
        nodes: stoch.nodes().to_vec(),
        weights,
    })
}

/// Integer ideal flow network whose link probabilities are
/// `pi_p * S[p][q]`, scaled by the least common multiple of their reduced
/// denominators (the smallest integer representative).
pub fn markov_to_integer_ifn(stoch: &RationalMatrix) -> Result<FlowNetwork> {
    let pi = stationary_distribution(stoch)?;
    let probabilities: Vec<Vec<Rational>> = stoch
        .entries()
        .iter()
        .zip(&pi.weights)
        .map(|(row, w)| row.iter().map(|s| w * s).collect())
        .collect();
    let scale = probabilities
        .iter()
        .flatten()
        .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let scale = rational(scale);
    let mut net = FlowNetwork::with_nodes(stoch.nodes().iter().cloned());
    for (p, row) in stoch.nodes().iter().zip(&probabilities) {
        for (q, x) in stoch.nodes().iter().zip(row) {
            let flow = (x * &scale)
                .to_integer()
                .to_u64()
                .ok_or(Error::FlowOverflow)?;
            net.set_flow(p.clone(), q.clone(), flow);
        }
    }
    Ok(net)
}
