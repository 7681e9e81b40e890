//! Ideal flow network signatures.
//!
//! An ideal flow network is a strongly connected directed graph whose
//! integer link flows balance at every node. Such a network is a sum of
//! directed cycles, and writing that sum down as text gives its signature:
//! `a + abcd + 3b + bd` puts one unit of flow on the self-loop at `a`, one
//! around `a -> b -> c -> d -> a`, three on the self-loop at `b` and one
//! around `b -> d -> b`.
//!
//! This crate parses and prints signatures ([`sigtext`]), composes them into
//! flow matrices ([`algebra`]), decomposes matrices back into signatures
//! ([`decompose`]), reads flow statistics and stochastic matrices straight
//! off the text ([`analysis`]) and generates networks ([`generators`]).
//!
//! ```
//! use ifn_core::{compose, greedy_decompose, parse_signature, render_signature};
//!
//! let sig = parse_signature("3b + a + bcd + abd")?;
//! let net = compose(&sig, true)?;
//! assert_eq!(net.to_dense(), vec![
//!     vec![1, 1, 0, 0],
//!     vec![0, 3, 1, 1],
//!     vec![0, 0, 0, 1],
//!     vec![1, 1, 0, 0],
//! ]);
//! assert_eq!(render_signature(&greedy_decompose(&net)?), "a + abcd + 3b + bd");
//! # Ok::<(), ifn_core::Error>(())
//! ```

pub mod algebra;
pub mod analysis;
pub mod cycle;
pub mod decompose;
pub mod error;
pub mod generators;
pub mod graph;
pub mod network;
pub mod rational;
pub mod signature;
pub mod sigtext;

pub use algebra::{assign, compose, equivalence_factor, merge, scale_network};
pub use analysis::{
    classify_relation, inflow_stochastic, is_ideal_flow, is_irreducible_matrix,
    is_irreducible_signature, is_premagic, link_flow, node_flow_sum, outflow_stochastic,
    probability_matrix, total_flow, RelationClass,
};
pub use cycle::{CanonicalCycle, NodeId};
pub use decompose::{
    greedy_decompose, linear_decompose, solve_cycle_weights, CycleSolution, CycleWeights,
    LinearDecomposition, NonIntegerWitness,
};
pub use error::{Error, Result};
pub use generators::{
    complete_support, markov_to_integer_ifn, premier_network, random_ifn, stationary_distribution,
    StationaryDistribution,
};
pub use graph::{
    build_link_cycle_system, enumerate_canonical_cycles, find_pivots,
    strongly_connected_components, LinkCycleSystem, Pivot, PivotKind,
};
pub use network::FlowNetwork;
pub use rational::{Rational, RationalMatrix};
pub use signature::{normalize_signature, Signature, Term};
pub use sigtext::{parse_signature, render_signature};
