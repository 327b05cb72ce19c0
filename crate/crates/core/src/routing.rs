//! Best single repeater path between the endpoints.
//!
//! Weighting each edge by `1 / E_sq` makes the chain bound of a path equal to
//! the reciprocal of its total weight, so maximizing the bound is a shortest
//! path problem with nonnegative weights.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::bounds::harmonic_segment_bound;
use crate::error::{Error, Result};
use crate::netgraph::Network;
use crate::photonics::ChannelSpec;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Route {
    pub nodes: Vec<String>,
    pub edges: Vec<usize>,
    pub per_use_bound_bits: f64,
}

impl Route {
    pub fn hops(&self) -> usize {
        self.edges.len()
    }
}

/// Channel uses per bit of bound: `1 / E_sq`. Lossless edges cost 0,
/// opaque edges cost infinity.
pub fn edge_weight(spec: &ChannelSpec) -> Result<f64> {
    Ok(spec.esq_bound()?.recip())
}

#[derive(Debug, Clone)]
struct Label {
    weight: f64,
    nodes: Vec<usize>,
    edges: Vec<usize>,
}

impl Label {
    fn key_cmp(&self, other: &Label, names: &[String]) -> Ordering {
        self.weight
            .total_cmp(&other.weight)
            .then_with(|| self.edges.len().cmp(&other.edges.len()))
            .then_with(|| {
                let a = self.nodes.iter().map(|&i| &names[i]);
                let b = other.nodes.iter().map(|&i| &names[i]);
                a.cmp(b)
            })
            .then_with(|| self.edges.cmp(&other.edges))
    }
}

/// Heap entry ordered so the smallest label pops first.
struct Pending<'a> {
    label: Label,
    names: &'a [String],
}

impl PartialEq for Pending<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Pending<'_> {}

impl PartialOrd for Pending<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Pending<'_> {
    fn cmp(&self, other: &Self) -> Ordering {
        other.label.key_cmp(&self.label, self.names)
    }
}

/// The `A`-to-`B` path with the least total [`edge_weight`], traversing
/// edges in either direction.
///
/// Ties go to fewer hops, then to the lexicographically least node sequence.
pub fn best_path(network: &Network) -> Result<Route> {
    let names = network.nodes();
    let n = names.len();
    let weights = network
        .edges()
        .iter()
        .map(edge_weight)
        .collect::<Result<Vec<_>>>()?;
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, w) in weights.iter().enumerate() {
        if w.is_finite() {
            let (u, v) = network.edge_ends(i);
            incident[u].push(i);
            incident[v].push(i);
        }
    }

    let src = network.node_index(network.endpoint_a()).expect("validated");
    let dst = network.node_index(network.endpoint_b()).expect("validated");
    let mut best: Vec<Option<Label>> = vec![None; n];
    let start = Label {
        weight: 0.0,
        nodes: vec![src],
        edges: vec![],
    };
    best[src] = Some(start.clone());
    let mut heap = BinaryHeap::from([Pending {
        label: start,
        names,
    }]);

    while let Some(Pending { label, .. }) = heap.pop() {
        let u = *label.nodes.last().expect("nonempty path");
        let current = best[u].as_ref().expect("settled label");
        if label.key_cmp(current, names) != Ordering::Equal {
            continue;
        }
        if u == dst {
            break;
        }
        for &e in &incident[u] {
            let (p, q) = network.edge_ends(e);
            let v = if p == u { q } else { p };
            let mut next = label.clone();
            next.weight += weights[e];
            next.nodes.push(v);
            next.edges.push(e);
            let better = match &best[v] {
                None => true,
                Some(old) => next.key_cmp(old, names) == Ordering::Less,
            };
            if better {
                best[v] = Some(next.clone());
                heap.push(Pending { label: next, names });
            }
        }
    }

    let label = best[dst].take().ok_or_else(|| Error::Disconnected {
        a: network.endpoint_a().to_string(),
        b: network.endpoint_b().to_string(),
    })?;
    let mut route = Route {
        nodes: label.nodes.iter().map(|&i| names[i].clone()).collect(),
        edges: label.edges,
        per_use_bound_bits: 0.0,
    };
    route.per_use_bound_bits = path_bound(network, &route)?;
    Ok(route)
}

/// Per-use bound of a route, treated as an unevenly spaced chain.
pub fn path_bound(network: &Network, route: &Route) -> Result<f64> {
    check_route(network, route)?;
    let bounds = route
        .edges
        .iter()
        .map(|&e| network.edges()[e].esq_bound())
        .collect::<Result<Vec<_>>>()?;
    harmonic_segment_bound(&bounds)
}

fn check_route(network: &Network, route: &Route) -> Result<()> {
    let bad = |msg: String| Err(Error::Validation(msg));
    if route.edges.is_empty() || route.nodes.len() != route.edges.len() + 1 {
        return bad(format!(
            "route with {} nodes cannot use {} edges",
            route.nodes.len(),
            route.edges.len()
        ));
    }
    if route.nodes.first().map(String::as_str) != Some(network.endpoint_a())
        || route.nodes.last().map(String::as_str) != Some(network.endpoint_b())
    {
        return bad("route must run from endpoint A to endpoint B".into());
    }
    for (k, &e) in route.edges.iter().enumerate() {
        let Some(spec) = network.edges().get(e) else {
            return bad(format!("route uses edge {e}, not in the network"));
        };
        if spec.other_end(&route.nodes[k]) != Some(route.nodes[k + 1].as_str()) {
            return bad(format!(
                "edge {e} does not join {} and {}",
                route.nodes[k],
                route.nodes[k + 1]
            ));
        }
    }
    let mut seen = std::collections::HashSet::new();
    if let Some(dup) = route.nodes.iter().find(|n| !seen.insert(n.as_str())) {
        return bad(format!("route revisits node {dup}"));
    }
    Ok(())
}
