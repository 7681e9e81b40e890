use thiserror::Error;

use crate::cycle::NodeId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid node label {0:?}: labels must be nonempty, contain no whitespace, '+', '(', ')' or ',', and must not start with a digit")]
    InvalidNodeLabel(String),

    #[error("cycle is empty")]
    EmptyCycle,

    #[error("node {0} appears more than once in a cycle")]
    DuplicateNodeInCycle(NodeId),

    #[error("coefficient {coefficient} for cycle {cycle} is negative; signatures carry nonnegative flow")]
    NegativeCoefficient { coefficient: i128, cycle: String },

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("signature is empty")]
    EmptySignature,

    #[error("assigning {coefficient} along the cycle would drive link {from}->{to} below zero (current flow {current})")]
    NegativeFlowResult {
        coefficient: i64,
        from: NodeId,
        to: NodeId,
        current: u64,
    },

    #[error("flow value overflowed the 64-bit range")]
    FlowOverflow,

    #[error("network is not irreducible (not strongly connected)")]
    NotIrreducible,

    #[error("network is not premagic: node {node} has out-flow {out_flow} but in-flow {in_flow}")]
    NotPremagic {
        node: NodeId,
        out_flow: u64,
        in_flow: u64,
    },

    #[error("cycle enumeration exceeded the budget of {budget} cycles")]
    CycleBudgetExceeded { budget: usize },

    #[error("cycle uses link {from}->{to}, which carries no flow in the network")]
    UnknownLink { from: NodeId, to: NodeId },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("total flow {kappa} is infeasible for {nodes} nodes (need kappa >= nodes)")]
    InfeasibleKappa { nodes: usize, kappa: u64 },

    #[error("node count must be at least 1")]
    InvalidNodeCount,

    #[error("matrix is not row-stochastic: {0}")]
    NotStochastic(String),

    #[error("node {0} carries no flow")]
    ZeroNodeFlow(NodeId),

    #[error("network carries no flow")]
    EmptyNetwork,

    #[error("duplicate node label {0}")]
    DuplicateNode(NodeId),
}
