//! Operations shared by the command line and the service. Each takes parsed
//! input and returns the JSON or text the caller prints.

use clap::ValueEnum;
use ifn_core::sigtext::render_nodes;
use ifn_core::{
    classify_relation, complete_support, compose, find_pivots, greedy_decompose, inflow_stochastic,
    is_ideal_flow, is_irreducible_matrix, is_irreducible_signature, is_premagic, linear_decompose,
    markov_to_integer_ifn, node_flow_sum, outflow_stochastic, parse_signature, premier_network,
    probability_matrix, random_ifn, render_signature, total_flow, Error as CoreError, FlowNetwork,
    LinearDecomposition, NodeId, NonIntegerWitness, Signature,
};
use serde_json::{json, Map, Value};

use crate::document::{node_labels, rational_json, rational_matrix_json, MatrixDocument};
use crate::error::{AppError, AppResult};

/// Largest node count accepted by `random`.
pub const MAX_RANDOM_NODES: usize = 2000;
/// Largest complete graph accepted by `premier`.
pub const MAX_COMPLETE_NODES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Method {
    #[default]
    Greedy,
    Linear,
}

pub fn parse(text: &str) -> AppResult<Signature> {
    Ok(parse_signature(text)?)
}

pub fn compose_text(text: &str, strict: bool) -> AppResult<FlowNetwork> {
    Ok(compose(&parse(text)?, strict)?)
}

fn compact_labels(nodes: &[NodeId]) -> bool {
    nodes.iter().all(NodeId::is_single_letter)
}

/// Every quantity that can be read off a signature, plus the composed matrix
/// and both irreducibility verdicts.
pub fn analysis_report(text: &str) -> AppResult<Value> {
    let sig = parse(text)?;
    let net = compose(&sig, false)?;
    let nodes = net.node_list();
    let compact = compact_labels(&nodes);

    let node_sums: Map<String, Value> = nodes
        .iter()
        .map(|v| (v.as_str().to_owned(), Value::from(node_flow_sum(&sig, v))))
        .collect();

    let terms = sig.terms();
    let mut pivots = Vec::new();
    for (i, first) in terms.iter().enumerate() {
        for second in &terms[i + 1..] {
            let found = find_pivots(&first.cycle, &second.cycle);
            if found.is_empty() {
                continue;
            }
            pivots.push(json!({
                "first": render_nodes(first.cycle.nodes(), compact),
                "second": render_nodes(second.cycle.nodes(), compact),
                "pivots": found.iter().map(|p| render_nodes(&p.path, compact)).collect::<Vec<_>>(),
            }));
        }
    }

    Ok(json!({
        "signature": render_signature(&sig),
        "nodes": node_labels(&nodes),
        "kappa": total_flow(&sig),
        "nodeFlowSums": node_sums,
        "matrix": MatrixDocument::from_network(&net).to_json()["matrix"].clone(),
        "probabilityMatrix": rational_matrix_json(&probability_matrix(&sig)?),
        "outflowStochastic": rational_matrix_json(&outflow_stochastic(&sig)?),
        "inflowStochastic": rational_matrix_json(&inflow_stochastic(&sig)?),
        "pivots": pivots,
        "irreducible": is_irreducible_signature(&sig)?,
        "premagic": is_premagic(&net),
        "idealFlow": is_ideal_flow(&net),
    }))
}

pub fn compose_report(text: &str, strict: bool) -> AppResult<Value> {
    let net = compose_text(text, strict)?;
    let mut out = MatrixDocument::from_network(&net).to_json();
    out["kappa"] = net.total_flow().into();
    out["premagic"] = is_premagic(&net).into();
    out["irreducible"] = is_irreducible_matrix(&net).into();
    Ok(out)
}

pub fn check_report(net: &FlowNetwork) -> Value {
    json!({
        "premagic": is_premagic(net),
        "irreducible": is_irreducible_matrix(net),
        "idealFlow": is_ideal_flow(net),
    })
}

/// Nodes whose in-flow differs from their out-flow, with both sums.
pub fn unbalanced_nodes(net: &FlowNetwork) -> Value {
    Value::Array(
        net.node_balances()
            .into_iter()
            .filter(|(_, (out_flow, in_flow))| out_flow != in_flow)
            .map(|(node, (out_flow, in_flow))| {
                json!({"node": node.as_str(), "outFlow": out_flow, "inFlow": in_flow})
            })
            .collect(),
    )
}

pub fn decompose(net: &FlowNetwork, method: Method) -> AppResult<Signature> {
    if !net.has_flow() {
        return Err(CoreError::EmptyNetwork.into());
    }
    match method {
        Method::Greedy => Ok(greedy_decompose(net)?),
        Method::Linear => match linear_decompose(net)? {
            LinearDecomposition::Signature(sig) => Ok(sig),
            LinearDecomposition::Witness(w) => Err(AppError::NonIntegral(Box::new(w))),
        },
    }
}

pub fn witness_json(witness: &NonIntegerWitness) -> Value {
    let compact = witness.cycles.iter().all(|c| compact_labels(c.nodes()));
    let terms: Vec<Value> = witness
        .cycles
        .iter()
        .zip(&witness.weights)
        .map(
            |(c, w)| json!({"cycle": render_nodes(c.nodes(), compact), "weight": rational_json(w)}),
        )
        .collect();
    json!({
        "witness": terms,
        "residual": witness.residual.iter().map(rational_json).collect::<Vec<_>>(),
    })
}

pub fn relate(first: &str, second: &str) -> AppResult<&'static str> {
    Ok(classify_relation(&parse(first)?, &parse(second)?)?.as_str())
}

pub fn random(nodes: usize, kappa: u64, seed: u64) -> AppResult<Signature> {
    if nodes > MAX_RANDOM_NODES {
        return Err(AppError::input(
            "InvalidNodeCount",
            format!("node count {nodes} exceeds the limit of {MAX_RANDOM_NODES}"),
        ));
    }
    Ok(random_ifn(nodes, kappa, seed)?)
}

pub fn premier_complete(nodes: usize, self_loops: bool) -> AppResult<(Signature, FlowNetwork)> {
    if nodes == 0 || nodes > MAX_COMPLETE_NODES {
        return Err(AppError::input(
            "InvalidNodeCount",
            format!("complete graph size must be between 1 and {MAX_COMPLETE_NODES}, got {nodes}"),
        ));
    }
    Ok(premier_network(&complete_support(nodes, self_loops))?)
}

/// Any positive entry of the document counts as a link of the support.
pub fn premier_graph(doc: &MatrixDocument) -> AppResult<(Signature, FlowNetwork)> {
    Ok(premier_network(&doc.to_network()?)?)
}

pub fn premier_report(sig: &Signature, net: &FlowNetwork) -> Value {
    let mut out = MatrixDocument::from_network(net).to_json();
    out["signature"] = render_signature(sig).into();
    out
}

pub fn markov(doc: &MatrixDocument) -> AppResult<FlowNetwork> {
    Ok(markov_to_integer_ifn(doc.rational_matrix())?)
}
