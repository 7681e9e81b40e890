//! Assign and merge operators, composition, scaling and equivalence.

use num_traits::Zero;

use crate::analysis::is_irreducible_signature;
use crate::cycle::CanonicalCycle;
use crate::error::{Error, Result};
use crate::network::FlowNetwork;
use crate::rational::{ratio, Rational};
use crate::signature::Signature;

impl FlowNetwork {
    /// Adds `coefficient` units of flow along every link of `cycle`,
    /// including the closing link. A negative coefficient removes flow and
    /// fails without modifying the network if any link would go negative.
    pub fn assign(&mut self, coefficient: i64, cycle: &CanonicalCycle) -> Result<()> {
        let magnitude = coefficient.unsigned_abs();
        let mut updates = Vec::with_capacity(cycle.len());
        for (from, to) in cycle.links() {
            let current = self.flow(from, to);
            let next = if coefficient < 0 {
                current
                    .checked_sub(magnitude)
                    .ok_or_else(|| Error::NegativeFlowResult {
                        coefficient,
                        from: from.clone(),
                        to: to.clone(),
                        current,
                    })?
            } else {
                current.checked_add(magnitude).ok_or(Error::FlowOverflow)?
            };
            updates.push((from, to, next));
        }
        for node in cycle.nodes() {
            self.add_node(node.clone());
        }
        for (from, to, next) in updates {
            self.set_flow(from.clone(), to.clone(), next);
        }
        Ok(())
    }
}

/// Value form of [`FlowNetwork::assign`].
pub fn assign(net: &FlowNetwork, coefficient: i64, cycle: &CanonicalCycle) -> Result<FlowNetwork> {
    let mut out = net.clone();
    out.assign(coefficient, cycle)?;
    Ok(out)
}

/// Union of the node sets; link flows add.
pub fn merge(first: &FlowNetwork, second: &FlowNetwork) -> FlowNetwork {
    let mut out = first.clone();
    for node in second.nodes() {
        out.add_node(node.clone());
    }
    for (p, q, f) in second.links() {
        let sum = out.flow(p, q) + f;
        out.set_flow(p.clone(), q.clone(), sum);
    }
    out
}

/// Folds assign over the terms of `sig`, starting from the empty network.
/// In strict mode the signature must pass the irreducibility condition.
pub fn compose(sig: &Signature, strict: bool) -> Result<FlowNetwork> {
    if strict && !is_irreducible_signature(sig)? {
        return Err(Error::NotIrreducible);
    }
    let mut net = FlowNetwork::new();
    for term in sig.terms() {
        let coefficient = i64::try_from(term.coefficient).map_err(|_| Error::FlowOverflow)?;
        net.assign(coefficient, &term.cycle)?;
    }
    Ok(net)
}

/// Multiplies every flow by `factor`.
///
/// Panics if `factor` is zero or a scaled flow overflows `u64`.
pub fn scale_network(net: &FlowNetwork, factor: u64) -> FlowNetwork {
    assert!(factor >= 1, "scaling factor must be positive");
    let mut out = FlowNetwork::with_nodes(net.nodes().iter().cloned());
    for (p, q, f) in net.links() {
        let scaled = f.checked_mul(factor).expect("scaled flow overflows u64");
        out.set_flow(p.clone(), q.clone(), scaled);
    }
    out
}

/// The constant ratio `zeta` with `first = zeta * second`, when one exists.
///
/// Requires identical node sets and identical supports. Networks without any
/// flow have no determinable factor.
pub fn equivalence_factor(first: &FlowNetwork, second: &FlowNetwork) -> Option<Rational> {
    if first.nodes() != second.nodes() || first.link_count() != second.link_count() {
        return None;
    }
    let mut factor: Option<Rational> = None;
    for ((p1, q1, f1), (p2, q2, f2)) in first.links().zip(second.links()) {
        if p1 != p2 || q1 != q2 {
            return None;
        }
        let r = ratio(f1, f2);
        match &factor {
            None => factor = Some(r),
            Some(z) if *z != r => return None,
            Some(_) => {}
        }
    }
    factor.filter(|z| !z.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle::NodeId;
    use crate::rational::rational;
    use crate::sigtext::parse_signature;

    fn ids(s: &str) -> Vec<NodeId> {
        s.chars()
            .map(|c| NodeId::new(c.to_string()).unwrap())
            .collect()
    }

    fn cycle(s: &str) -> CanonicalCycle {
        CanonicalCycle::new(ids(s)).unwrap()
    }

    fn dense(s: &str, m: &[&[u64]]) -> FlowNetwork {
        let rows: Vec<Vec<u64>> = m.iter().map(|r| r.to_vec()).collect();
        FlowNetwork::from_dense(&ids(s), &rows).unwrap()
    }

    fn composed(text: &str) -> FlowNetwork {
        compose(&parse_signature(text).unwrap(), false).unwrap()
    }

    #[test]
    fn assign_self_loop() {
        let net = assign(&FlowNetwork::new(), 1, &cycle("a")).unwrap();
        assert_eq!(net, dense("a", &[&[1]]));
    }

    #[test]
    fn assign_two_cycle() {
        let net = assign(&FlowNetwork::new(), 2, &cycle("ab")).unwrap();
        assert_eq!(net, dense("ab", &[&[0, 2], &[2, 0]]));
    }

    #[test]
    fn assign_exact_cancellation() {
        let start = dense("ab", &[&[0, 3], &[3, 0]]);
        let net = assign(&start, -3, &cycle("ab")).unwrap();
        assert!(!net.has_flow());
        assert_eq!(net.node_count(), 2);
    }

    #[test]
    fn assign_rejects_negative_result_atomically() {
        let start = dense("abc", &[&[0, 3, 0], &[0, 0, 1], &[3, 0, 0]]);
        let mut net = start.clone();
        let err = net.assign(-2, &cycle("abc")).unwrap_err();
        assert!(matches!(err, Error::NegativeFlowResult { current: 1, .. }));
        assert_eq!(net, start);
    }

    #[test]
    fn merge_is_entrywise_sum() {
        let x = dense("ab", &[&[0, 1], &[0, 0]]);
        assert_eq!(merge(&x, &FlowNetwork::new()), x);
        let y = dense("ab", &[&[0, 2], &[1, 0]]);
        assert_eq!(merge(&x, &y), dense("ab", &[&[0, 3], &[1, 0]]));
        assert_eq!(merge(&composed("a"), &composed("ab")), composed("a + ab"));
    }

    #[test]
    fn compose_reference_matrix() {
        let expected = dense(
            "abcd",
            &[&[1, 1, 0, 0], &[0, 3, 1, 1], &[0, 0, 0, 1], &[1, 1, 0, 0]],
        );
        assert_eq!(composed("a + abcd + 3b + bd"), expected);
        assert_eq!(composed("3b + a + bcd + abd"), expected);
        assert_eq!(composed("ab"), dense("ab", &[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn strict_compose() {
        let sig = parse_signature("ab + cd").unwrap();
        assert!(compose(&sig, false).is_ok());
        assert_eq!(compose(&sig, true), Err(Error::NotIrreducible));
        assert!(compose(&parse_signature("abcd + cdabe + ef").unwrap(), true).is_ok());
    }

    #[test]
    fn scaling() {
        let f = dense("ab", &[&[0, 1], &[1, 0]]);
        assert_eq!(scale_network(&f, 1), f);
        assert_eq!(scale_network(&f, 3), dense("ab", &[&[0, 3], &[3, 0]]));
    }

    #[test]
    fn equivalence() {
        let f = composed("a + abcd + 3b + bd");
        assert_eq!(equivalence_factor(&f, &f), Some(rational(1)));
        assert_eq!(
            equivalence_factor(&scale_network(&f, 3), &f),
            Some(rational(3))
        );
        assert_eq!(
            equivalence_factor(&f, &scale_network(&f, 2)),
            Some(ratio(1, 2))
        );
        assert_eq!(
            equivalence_factor(
                &dense("ab", &[&[0, 1], &[1, 0]]),
                &dense("ab", &[&[0, 1], &[2, 0]])
            ),
            None
        );
        assert_eq!(equivalence_factor(&composed("ab"), &composed("ac")), None);
        assert_eq!(
            equivalence_factor(&composed("ab"), &composed("a + ab")),
            None
        );
        assert_eq!(
            equivalence_factor(&FlowNetwork::new(), &FlowNetwork::new()),
            None
        );
    }
}
