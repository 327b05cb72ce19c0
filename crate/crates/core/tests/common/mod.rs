#![allow(dead_code)]

use qnetbound::{ChannelSpec, Network, UseProfile};
use rand::Rng;

/// Random connected-or-not multigraph on `A`, `B` and up to
/// `max_intermediate` repeaters, with transmittances in [0.05, 0.95] and use
/// counts in [0, 4].
pub fn random_network<R: Rng>(
    rng: &mut R,
    max_intermediate: usize,
    max_edges: usize,
) -> (Network, UseProfile) {
    let k = rng.gen_range(0..=max_intermediate);
    let mut nodes = vec!["A".to_string(), "B".to_string()];
    nodes.extend((1..=k).map(|j| format!("C{j}")));
    let m = rng.gen_range(1..=max_edges);
    let mut edges = Vec::with_capacity(m);
    let mut uses = Vec::with_capacity(m);
    for _ in 0..m {
        let u = rng.gen_range(0..nodes.len());
        let mut v = rng.gen_range(0..nodes.len() - 1);
        if v >= u {
            v += 1;
        }
        let eta = rng.gen_range(0.05..=0.95);
        edges.push(ChannelSpec::with_transmittance(
            nodes[u].clone(),
            nodes[v].clone(),
            eta,
        ));
        uses.push(rng.gen_range(0.0..=4.0));
    }
    let net = Network::new(nodes, "A", "B", edges).expect("generated network is valid");
    (net, UseProfile::from_counts(uses))
}

pub fn rel_diff(a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    (a - b).abs() / a.abs().max(b.abs())
}
