//! Networks of lossy channels, bipartition cuts and minimum cuts.
//!
//! A cut is charged for every channel that links its two sides, whatever the
//! channel's direction, so all capacity computations work on the undirected
//! multigraph underneath a [`Network`].

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::photonics::ChannelSpec;

/// Use count assumed for an edge the profile does not mention.
pub const DEFAULT_EDGE_USES: f64 = 1.0;

/// Largest number of intermediate nodes [`enumerate_cuts_oracle`] will scan.
pub const ORACLE_MAX_INTERMEDIATES: usize = 20;

/// Residual capacity at or below this fraction of an edge's capacity counts as saturated.
const SATURATION_RTOL: f64 = 1e-12;

/// Relative gap under which two cut values are treated as tied.
const TIE_RTOL: f64 = 1e-12;

/// A directed multigraph of optical channels with designated endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    nodes: Vec<String>,
    index: HashMap<String, usize>,
    a: String,
    b: String,
    edges: Vec<ChannelSpec>,
    ends: Vec<(usize, usize)>,
}

impl Network {
    /// Builds and validates a network. Node order is preserved as given.
    pub fn new(
        nodes: impl IntoIterator<Item = impl Into<String>>,
        a: impl Into<String>,
        b: impl Into<String>,
        edges: Vec<ChannelSpec>,
    ) -> Result<Self> {
        let nodes: Vec<String> = nodes.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(nodes.len());
        for (i, n) in nodes.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::Validation(format!("duplicate node {n:?}")));
            }
        }
        let mut net = Network {
            nodes,
            index,
            a: a.into(),
            b: b.into(),
            edges,
            ends: Vec::new(),
        };
        net.validate()?;
        net.ends = net
            .edges
            .iter()
            .map(|e| (net.index[&e.from_node], net.index[&e.to_node]))
            .collect();
        Ok(net)
    }

    /// Convenience constructor for a linear chain `A - C1 - ... - Cn - B`.
    pub fn chain(links: Vec<ChannelSpec>) -> Result<Self> {
        let n = links.len().saturating_sub(1);
        let mut nodes = vec!["A".to_string()];
        nodes.extend((1..=n).map(|j| format!("C{j}")));
        nodes.push("B".to_string());
        let edges = links
            .into_iter()
            .enumerate()
            .map(|(j, mut e)| {
                e.from_node = nodes[j].clone();
                e.to_node = nodes[j + 1].clone();
                e
            })
            .collect();
        Network::new(nodes.clone(), "A", "B", edges)
    }

    /// Checks the structural invariants, naming the first offending element.
    pub fn validate(&self) -> Result<()> {
        if self.a == self.b {
            return Err(Error::Validation(format!(
                "endpoints must differ, both are {:?}",
                self.a
            )));
        }
        for end in [&self.a, &self.b] {
            if !self.index.contains_key(end) {
                return Err(Error::Validation(format!("missing endpoint node {end:?}")));
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            for n in [&e.from_node, &e.to_node] {
                if !self.index.contains_key(n) {
                    return Err(Error::Validation(format!(
                        "edge {i} references unknown node {n:?}"
                    )));
                }
            }
            if e.from_node == e.to_node {
                return Err(Error::Validation(format!(
                    "edge {i} is a self-loop on {:?}",
                    e.from_node
                )));
            }
            e.validate()
                .map_err(|err| Error::Validation(format!("edge {i}: {err}")))?;
        }
        Ok(())
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn edges(&self) -> &[ChannelSpec] {
        &self.edges
    }

    pub fn endpoint_a(&self) -> &str {
        &self.a
    }

    pub fn endpoint_b(&self) -> &str {
        &self.b
    }

    pub fn contains(&self, node: &str) -> bool {
        self.index.contains_key(node)
    }

    pub fn node_index(&self, node: &str) -> Option<usize> {
        self.index.get(node).copied()
    }

    /// Endpoint indices of edge `i`, in its stored direction.
    pub fn edge_ends(&self, i: usize) -> (usize, usize) {
        self.ends[i]
    }

    /// Nodes other than the two endpoints, in declaration order.
    pub fn intermediates(&self) -> Vec<&str> {
        self.nodes
            .iter()
            .filter(|n| **n != self.a && **n != self.b)
            .map(String::as_str)
            .collect()
    }

    /// The same network with every edge's direction flipped.
    pub fn reversed(&self) -> Network {
        let mut net = self.clone();
        for e in &mut net.edges {
            std::mem::swap(&mut e.from_node, &mut e.to_node);
        }
        for end in &mut net.ends {
            *end = (end.1, end.0);
        }
        net
    }
}

/// A bipartition of the nodes; `side_a` holds `A`, its complement holds `B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cut {
    pub side_a: BTreeSet<String>,
}

impl Cut {
    pub fn new(side_a: impl IntoIterator<Item = impl Into<String>>) -> Self {
        Cut {
            side_a: side_a.into_iter().map(Into::into).collect(),
        }
    }

    pub fn contains(&self, node: &str) -> bool {
        self.side_a.contains(node)
    }

    pub fn validate(&self, network: &Network) -> Result<()> {
        if !self.side_a.contains(network.endpoint_a()) {
            return Err(Error::Validation(format!(
                "cut side must contain endpoint {:?}",
                network.endpoint_a()
            )));
        }
        if self.side_a.contains(network.endpoint_b()) {
            return Err(Error::Validation(format!(
                "cut side must not contain endpoint {:?}",
                network.endpoint_b()
            )));
        }
        if let Some(n) = self.side_a.iter().find(|n| !network.contains(n)) {
            return Err(Error::Validation(format!("cut names unknown node {n:?}")));
        }
        Ok(())
    }

    /// The complementary side, in network node order.
    pub fn side_b<'a>(&self, network: &'a Network) -> Vec<&'a str> {
        network
            .nodes()
            .iter()
            .filter(|n| !self.side_a.contains(*n))
            .map(String::as_str)
            .collect()
    }

    /// Deterministic witness order: smaller side first, then lexicographic.
    fn tie_order(&self, other: &Cut) -> Ordering {
        self.side_a
            .len()
            .cmp(&other.side_a.len())
            .then_with(|| self.side_a.iter().cmp(other.side_a.iter()))
    }
}

/// Average channel uses per edge, optionally with the total use budget `l`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct UseProfile {
    pub uses: BTreeMap<usize, f64>,
    pub total_uses: Option<f64>,
}

impl UseProfile {
    /// Every edge at [`DEFAULT_EDGE_USES`], no declared total.
    pub fn new() -> Self {
        Self::default()
    }

    /// The same use count on each of `edges` edges.
    pub fn uniform(edges: usize, uses: f64) -> Self {
        UseProfile {
            uses: (0..edges).map(|i| (i, uses)).collect(),
            total_uses: None,
        }
    }

    pub fn from_counts(counts: impl IntoIterator<Item = f64>) -> Self {
        UseProfile {
            uses: counts.into_iter().enumerate().collect(),
            total_uses: None,
        }
    }

    pub fn with_total(mut self, total: f64) -> Self {
        self.total_uses = Some(total);
        self
    }

    pub fn get(&self, edge: usize) -> f64 {
        self.uses.get(&edge).copied().unwrap_or(DEFAULT_EDGE_USES)
    }

    pub fn validate(&self, network: &Network) -> Result<()> {
        let m = network.edges().len();
        for (&i, &u) in &self.uses {
            if i >= m {
                return Err(Error::Validation(format!(
                    "use profile names edge {i} but the network has {m} edges"
                )));
            }
            if !(u >= 0.0) || u.is_infinite() {
                return Err(Error::Validation(format!(
                    "edge {i} has invalid use count {u}"
                )));
            }
        }
        if let Some(l) = self.total_uses {
            if !(l >= 0.0) || l.is_infinite() {
                return Err(Error::Validation(format!("invalid total uses {l}")));
            }
            let sum: f64 = (0..m).map(|i| self.get(i)).sum();
            if (sum - l).abs() > 1e-9 * l.abs().max(sum.abs()) {
                return Err(Error::Validation(format!(
                    "edge uses sum to {sum} but total_uses is {l}"
                )));
            }
        }
        Ok(())
    }
}

/// Edge capacities `uses * E_sq`, with zero-use edges contributing nothing
/// even when lossless.
pub fn edge_capacities(network: &Network, profile: &UseProfile) -> Result<Vec<f64>> {
    profile.validate(network)?;
    network
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let uses = profile.get(i);
            if uses == 0.0 {
                return Ok(0.0);
            }
            let esq = e.esq_bound()?;
            let cap = uses * esq;
            if cap.is_infinite() && esq.is_finite() {
                return Err(Error::Domain(format!(
                    "edge {i}: capacity {uses} x {esq} overflows"
                )));
            }
            Ok(cap)
        })
        .collect()
}

/// Indices of the edges with one endpoint on each side of the cut.
pub fn cut_crossing_edges(network: &Network, cut: &Cut) -> Result<BTreeSet<usize>> {
    cut.validate(network)?;
    Ok(network
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| cut.contains(&e.from_node) != cut.contains(&e.to_node))
        .map(|(i, _)| i)
        .collect())
}

/// Total capacity of the edges crossing `cut`, in bits.
pub fn cut_value(network: &Network, cut: &Cut, profile: &UseProfile) -> Result<f64> {
    let crossing = cut_crossing_edges(network, cut)?;
    let caps = edge_capacities(network, profile)?;
    Ok(crossing.iter().map(|&i| caps[i]).sum())
}

fn sum_crossing(network: &Network, caps: &[f64], in_a: &[bool]) -> f64 {
    (0..caps.len())
        .filter(|&i| {
            let (u, v) = network.edge_ends(i);
            in_a[u] != in_a[v]
        })
        .map(|i| caps[i])
        .sum()
}

/// A minimizing cut and its value.
#[derive(Debug, Clone, PartialEq)]
pub struct MinCut {
    pub value: f64,
    pub witness: Cut,
}

/// Minimum over all A/B-separating cuts of the crossing capacity, by max-flow.
///
/// The witness is the set of nodes reachable from `A` in the final residual
/// graph, which is the inclusion-minimal minimizing cut. Edges with infinite
/// capacity are contracted first. If they join `A` to `B` every cut is
/// infinite and the witness is `{A}`.
pub fn min_cut(network: &Network, profile: &UseProfile) -> Result<MinCut> {
    let caps = edge_capacities(network, profile)?;
    let n = network.nodes().len();
    let a = network.node_index(network.endpoint_a()).expect("validated");
    let b = network.node_index(network.endpoint_b()).expect("validated");

    let mut dsu = Dsu::new(n);
    for (i, &c) in caps.iter().enumerate() {
        if c.is_infinite() {
            let (u, v) = network.edge_ends(i);
            dsu.union(u, v);
        }
    }
    if dsu.find(a) == dsu.find(b) {
        return Ok(MinCut {
            value: f64::INFINITY,
            witness: Cut::new([network.endpoint_a()]),
        });
    }

    // Compact supernode ids, then merge parallel capacities.
    let mut super_id = vec![usize::MAX; n];
    let mut groups = 0;
    for v in 0..n {
        let r = dsu.find(v);
        if super_id[r] == usize::MAX {
            super_id[r] = groups;
            groups += 1;
        }
        super_id[v] = super_id[r];
    }
    let mut merged: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for (i, &c) in caps.iter().enumerate() {
        let (u, v) = network.edge_ends(i);
        let (su, sv) = (super_id[u], super_id[v]);
        if su == sv || c <= 0.0 {
            continue;
        }
        *merged.entry((su.min(sv), su.max(sv))).or_insert(0.0) += c;
    }
    if merged.values().any(|c| c.is_infinite()) {
        return Err(Error::Domain("parallel edge capacities overflow".into()));
    }

    let mut flow = FlowGraph::new(groups);
    for (&(u, v), &c) in &merged {
        flow.add_undirected(u, v, c);
    }
    let reach = flow.max_flow_source_side(super_id[a], super_id[b]);

    let in_a: Vec<bool> = (0..n).map(|v| reach[super_id[v]]).collect();
    let witness = Cut::new(
        network
            .nodes()
            .iter()
            .zip(&in_a)
            .filter(|(_, &s)| s)
            .map(|(id, _)| id.clone()),
    );
    let value = sum_crossing(network, &caps, &in_a);
    Ok(MinCut { value, witness })
}

/// Exhaustive scan of every bipartition; the reference for [`min_cut`].
///
/// Ties (within a relative `1e-12`) go to the smaller side, then to the
/// lexicographically least sorted side.
pub fn enumerate_cuts_oracle(network: &Network, profile: &UseProfile) -> Result<MinCut> {
    let inter: Vec<usize> = network
        .intermediates()
        .iter()
        .map(|id| network.node_index(id).expect("own node"))
        .collect();
    if inter.len() > ORACLE_MAX_INTERMEDIATES {
        return Err(Error::TooManyNodes {
            count: inter.len(),
            limit: ORACLE_MAX_INTERMEDIATES,
        });
    }
    let caps = edge_capacities(network, profile)?;
    let n = network.nodes().len();
    let a = network.node_index(network.endpoint_a()).expect("validated");

    let mut best: Option<(f64, Cut)> = None;
    let mut in_a = vec![false; n];
    for mask in 0u64..(1u64 << inter.len()) {
        in_a.iter_mut().for_each(|s| *s = false);
        in_a[a] = true;
        for (bit, &v) in inter.iter().enumerate() {
            in_a[v] = mask >> bit & 1 == 1;
        }
        let value = sum_crossing(network, &caps, &in_a);
        let replace = match &best {
            None => true,
            Some((bv, bc)) => {
                if values_tie(value, *bv) {
                    let cut = side_from_mask(network, &in_a);
                    cut.tie_order(bc) == Ordering::Less
                } else {
                    value < *bv
                }
            }
        };
        if replace {
            best = Some((value, side_from_mask(network, &in_a)));
        }
    }
    let (value, witness) = best.expect("at least one cut");
    Ok(MinCut { value, witness })
}

fn values_tie(x: f64, y: f64) -> bool {
    if x == y {
        return true;
    }
    if x.is_infinite() || y.is_infinite() {
        return false;
    }
    (x - y).abs() <= TIE_RTOL * x.abs().max(y.abs())
}

fn side_from_mask(network: &Network, in_a: &[bool]) -> Cut {
    Cut::new(
        network
            .nodes()
            .iter()
            .zip(in_a)
            .filter(|(_, &s)| s)
            .map(|(id, _)| id.clone()),
    )
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, u: usize, v: usize) {
        let (ru, rv) = (self.find(u), self.find(v));
        if ru != rv {
            self.parent[ru] = rv;
        }
    }
}

/// Edmonds-Karp over real capacities. Residuals are tracked per arc so the
/// bottleneck arc of each augmentation drops to exactly zero.
struct FlowGraph {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    residual: Vec<f64>,
    capacity: Vec<f64>,
}

impl FlowGraph {
    fn new(n: usize) -> Self {
        FlowGraph {
            adj: vec![Vec::new(); n],
            to: Vec::new(),
            residual: Vec::new(),
            capacity: Vec::new(),
        }
    }

    /// Adds a pair of mutually reverse arcs, each of capacity `c`.
    fn add_undirected(&mut self, u: usize, v: usize, c: f64) {
        let k = self.to.len();
        self.adj[u].push(k);
        self.to.push(v);
        self.adj[v].push(k + 1);
        self.to.push(u);
        self.residual.extend([c, c]);
        self.capacity.extend([c, c]);
    }

    fn open(&self, arc: usize) -> bool {
        self.residual[arc] > SATURATION_RTOL * self.capacity[arc]
    }

    /// Runs max-flow and returns the residual reachability of every node from `s`.
    fn max_flow_source_side(&mut self, s: usize, t: usize) -> Vec<bool> {
        let n = self.adj.len();
        loop {
            let mut via = vec![usize::MAX; n];
            let mut seen = vec![false; n];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                for &arc in &self.adj[u] {
                    let v = self.to[arc];
                    if !seen[v] && self.open(arc) {
                        seen[v] = true;
                        via[v] = arc;
                        queue.push_back(v);
                    }
                }
            }
            if !seen[t] {
                return seen;
            }
            let mut bottleneck = f64::INFINITY;
            let mut v = t;
            while v != s {
                let arc = via[v];
                bottleneck = bottleneck.min(self.residual[arc]);
                v = self.to[arc ^ 1];
            }
            let mut v = t;
            while v != s {
                let arc = via[v];
                self.residual[arc] -= bottleneck;
                self.residual[arc ^ 1] += bottleneck;
                v = self.to[arc ^ 1];
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn link(from: &str, to: &str, eta: f64) -> ChannelSpec {
        ChannelSpec::with_transmittance(from, to, eta)
    }

    fn chain2(eta: f64) -> Network {
        Network::new(
            ["A", "C1", "B"],
            "A",
            "B",
            vec![link("A", "C1", eta), link("C1", "B", eta)],
        )
        .unwrap()
    }

    fn diamond(eta: f64) -> Network {
        Network::new(
            ["A", "C1", "C2", "B"],
            "A",
            "B",
            vec![
                link("A", "C1", eta),
                link("C1", "B", eta),
                link("A", "C2", eta),
                link("C2", "B", eta),
            ],
        )
        .unwrap()
    }

    /// Transmittance whose two-mode E_sq equals `c` bits.
    fn eta_for(c: f64) -> f64 {
        // 2 log2((1+x)/(1-x)) = c  =>  x = tanh(c ln2 / 4)
        (c * std::f64::consts::LN_2 / 4.0).tanh()
    }

    #[test]
    fn validation_errors_name_the_culprit() {
        assert!(Network::new(["A", "B"], "A", "B", vec![link("A", "B", 0.5)]).is_ok());
        let e = Network::new(["A", "B"], "A", "B", vec![link("A", "A", 0.5)]).unwrap_err();
        assert!(e.to_string().contains("self-loop"), "{e}");
        let e = Network::new(["A", "B"], "A", "B", vec![link("A", "X", 0.5)]).unwrap_err();
        assert!(e.to_string().contains("unknown node"), "{e}");
        let e = Network::new(["A", "C"], "A", "B", vec![]).unwrap_err();
        assert!(e.to_string().contains("missing endpoint"), "{e}");
        assert!(Network::new(["A", "B"], "A", "A", vec![]).is_err());
        assert!(Network::new(["A", "A", "B"], "A", "B", vec![]).is_err());
    }

    #[test]
    fn crossing_edges() {
        let net = chain2(0.5);
        assert_eq!(
            cut_crossing_edges(&net, &Cut::new(["A"])).unwrap(),
            BTreeSet::from([0])
        );
        assert_eq!(
            cut_crossing_edges(&net, &Cut::new(["A", "C1"])).unwrap(),
            BTreeSet::from([1])
        );
        let d = diamond(0.5);
        assert_eq!(
            cut_crossing_edges(&d, &Cut::new(["A", "C1"])).unwrap(),
            BTreeSet::from([1, 2])
        );
        assert!(cut_crossing_edges(&d, &Cut::new(["C1"])).is_err());
        assert!(cut_crossing_edges(&d, &Cut::new(["A", "B"])).is_err());
        assert!(cut_crossing_edges(&d, &Cut::new(["A", "Z"])).is_err());
    }

    #[test]
    fn cut_values() {
        let net = chain2(0.5);
        let v = cut_value(&net, &Cut::new(["A"]), &UseProfile::uniform(2, 1.0)).unwrap();
        assert!((v - 3.1699250014423124).abs() < 1e-14);
        let zero = UseProfile::from_counts([0.0, 1.0]);
        assert_eq!(cut_value(&net, &Cut::new(["A"]), &zero).unwrap(), 0.0);
        let v = cut_value(&diamond(0.5), &Cut::new(["A"]), &UseProfile::new()).unwrap();
        assert!((v - 6.3398500028846247).abs() < 1e-13);
        let neg = UseProfile::from_counts([-1.0, 1.0]);
        assert!(cut_value(&net, &Cut::new(["A"]), &neg).is_err());
    }

    #[test]
    fn lossless_crossing_edge_is_infinite_unless_unused() {
        let net = chain2(1.0);
        assert_eq!(
            cut_value(&net, &Cut::new(["A"]), &UseProfile::new()).unwrap(),
            f64::INFINITY
        );
        let unused = UseProfile::from_counts([0.0, 1.0]);
        assert_eq!(cut_value(&net, &Cut::new(["A"]), &unused).unwrap(), 0.0);
    }

    #[test]
    fn chain_min_cut_picks_weaker_link() {
        let net = Network::new(
            ["A", "C1", "B"],
            "A",
            "B",
            vec![link("A", "C1", eta_for(2.0)), link("C1", "B", eta_for(3.0))],
        )
        .unwrap();
        let mc = min_cut(&net, &UseProfile::new()).unwrap();
        assert!((mc.value - 2.0).abs() < 1e-12);
        assert_eq!(mc.witness, Cut::new(["A"]));
        assert_eq!(
            enumerate_cuts_oracle(&net, &UseProfile::new())
                .unwrap()
                .witness,
            mc.witness
        );
    }

    #[test]
    fn diamond_tie_breaks_to_smallest_side() {
        let net = diamond(eta_for(1.0));
        let mc = min_cut(&net, &UseProfile::new()).unwrap();
        assert!((mc.value - 2.0).abs() < 1e-12);
        assert_eq!(mc.witness, Cut::new(["A"]));
        let oracle = enumerate_cuts_oracle(&net, &UseProfile::new()).unwrap();
        assert_eq!(oracle.witness, mc.witness);
    }

    #[test]
    fn disconnected_gives_zero_and_component() {
        let net = Network::new(
            ["A", "C1", "C2", "B"],
            "A",
            "B",
            vec![link("A", "C1", 0.3), link("C2", "B", 0.3)],
        )
        .unwrap();
        let mc = min_cut(&net, &UseProfile::new()).unwrap();
        assert_eq!(mc.value, 0.0);
        assert_eq!(mc.witness, Cut::new(["A", "C1"]));
        assert_eq!(enumerate_cuts_oracle(&net, &UseProfile::new()).unwrap(), mc);
    }

    #[test]
    fn lossless_edges_contract() {
        let net = Network::new(
            ["A", "C1", "B"],
            "A",
            "B",
            vec![link("A", "C1", 1.0), link("C1", "B", 0.5)],
        )
        .unwrap();
        let mc = min_cut(&net, &UseProfile::new()).unwrap();
        assert_eq!(mc.witness, Cut::new(["A", "C1"]));
        assert!((mc.value - 3.1699250014423124).abs() < 1e-14);

        let through = chain2(1.0);
        let mc = min_cut(&through, &UseProfile::new()).unwrap();
        assert_eq!(mc.value, f64::INFINITY);
        assert_eq!(mc.witness, Cut::new(["A"]));
        assert_eq!(
            enumerate_cuts_oracle(&through, &UseProfile::new()).unwrap(),
            mc
        );
    }

    #[test]
    fn oracle_refuses_large_graphs() {
        let links: Vec<_> = (0..22).map(|_| link("x", "y", 0.5)).collect();
        let net = Network::chain(links).unwrap();
        assert_eq!(net.intermediates().len(), 21);
        assert!(matches!(
            enumerate_cuts_oracle(&net, &UseProfile::new()),
            Err(Error::TooManyNodes { count: 21, .. })
        ));
    }

    #[test]
    fn three_node_chain_oracle() {
        let c = eta_for(1.5);
        let net = Network::chain((0..4).map(|_| link("", "", c)).collect()).unwrap();
        let o = enumerate_cuts_oracle(&net, &UseProfile::new()).unwrap();
        assert!((o.value - 1.5).abs() < 1e-12);
        assert_eq!(o.witness, Cut::new(["A"]));
    }

    #[test]
    fn capacity_overflow_is_an_error() {
        let net = chain2(0.5);
        let huge = UseProfile::uniform(2, 1e308);
        assert!(matches!(min_cut(&net, &huge), Err(Error::Domain(_))));
    }

    #[test]
    fn profile_total_must_match() {
        let net = chain2(0.5);
        assert!(UseProfile::uniform(2, 1.5)
            .with_total(3.0)
            .validate(&net)
            .is_ok());
        assert!(UseProfile::uniform(2, 1.5)
            .with_total(4.0)
            .validate(&net)
            .is_err());
        // unmentioned edges count at the default of one use
        assert!(UseProfile::new().with_total(2.0).validate(&net).is_ok());
        let mut p = UseProfile::new();
        p.uses.insert(5, 1.0);
        assert!(p.validate(&net).is_err());
    }
}
