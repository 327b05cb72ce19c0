mod common;

use qnetbound::bounds::{optimal_segment_uses, uneven_chain_bound_per_use};
use qnetbound::photonics::{esq_lossy_bound, Attenuation};
use qnetbound::routing::{best_path, path_bound, Route};
use qnetbound::{
    cut_value, enumerate_cuts_oracle, min_cut, network_bound, ChainSpec, ChannelSpec,
    EpsilonParams, Network, UseProfile,
};
use qnetbound_oracles::lp::max_min_allocation;
use qnetbound_oracles::paths::all_simple_paths;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{random_network, rel_diff};

#[test]
fn min_cut_matches_enumeration_with_same_witness() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for case in 0..150 {
        let (net, prof) = random_network(&mut rng, 8, 24);
        let fast = min_cut(&net, &prof).unwrap();
        let slow = enumerate_cuts_oracle(&net, &prof).unwrap();
        assert!(
            rel_diff(fast.value, slow.value) <= 1e-9,
            "case {case}: {} vs {}",
            fast.value,
            slow.value
        );
        assert_eq!(fast.witness, slow.witness, "case {case}");
        let check = cut_value(&net, &fast.witness, &prof).unwrap();
        assert!(rel_diff(check, fast.value) <= 1e-12);
    }
}

#[test]
fn min_cut_with_lossless_and_unused_edges() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    for case in 0..100 {
        let (net, mut prof) = random_network(&mut rng, 6, 16);
        let mut edges = net.edges().to_vec();
        for (i, e) in edges.iter_mut().enumerate() {
            match rng.gen_range(0..6) {
                0 => e.transmittance_override = Some(1.0),
                1 => {
                    prof.uses.insert(i, 0.0);
                }
                2 => e.transmittance_override = Some(0.0),
                _ => {}
            }
        }
        let net = Network::new(net.nodes().to_vec(), "A", "B", edges).unwrap();
        let fast = min_cut(&net, &prof).unwrap();
        let slow = enumerate_cuts_oracle(&net, &prof).unwrap();
        if slow.value.is_infinite() {
            assert!(fast.value.is_infinite(), "case {case}");
        } else {
            assert!(
                rel_diff(fast.value, slow.value) <= 1e-9,
                "case {case}: {} vs {}",
                fast.value,
                slow.value
            );
        }
        assert_eq!(fast.witness, slow.witness, "case {case}");
    }
}

#[test]
fn min_cut_handles_tiny_capacities() {
    // 1000 km of standard fibre per hop: capacities near 1e-19 bits
    let fib = Attenuation::DbPerKm(0.2);
    let edges = vec![
        ChannelSpec::fiber("A", "C1", 1000.0, fib),
        ChannelSpec::fiber("C1", "B", 900.0, fib),
        ChannelSpec::fiber("A", "C2", 950.0, fib),
        ChannelSpec::fiber("C2", "B", 1000.0, fib),
        ChannelSpec::fiber("C1", "C2", 10.0, fib),
    ];
    let net = Network::new(["A", "C1", "C2", "B"], "A", "B", edges).unwrap();
    let fast = min_cut(&net, &UseProfile::new()).unwrap();
    let slow = enumerate_cuts_oracle(&net, &UseProfile::new()).unwrap();
    assert!(fast.value > 0.0 && fast.value < 1e-18);
    assert!(rel_diff(fast.value, slow.value) <= 1e-9);
    assert_eq!(fast.witness, slow.witness);
}

#[test]
fn uneven_chain_matches_lp_maximum() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    for _ in 0..40 {
        let k = rng.gen_range(1..=6);
        let spacings: Vec<f64> = (0..k).map(|_| rng.gen_range(1.0..150.0)).collect();
        let chain = ChainSpec::spaced(spacings, Attenuation::DbPerKm(0.2)).unwrap();
        let closed = uneven_chain_bound_per_use(&chain).unwrap();
        let e: Vec<f64> = chain
            .segment_transmittances()
            .unwrap()
            .into_iter()
            .map(|eta| esq_lossy_bound(eta, 2).unwrap())
            .collect();
        let lp = max_min_allocation(&e);
        assert!(rel_diff(closed, lp) <= 1e-6, "{closed} vs {lp}");

        // the closed-form allocation achieves the bound on the chain network
        let uses = optimal_segment_uses(&chain, 1.0).unwrap();
        let net = chain.to_network().unwrap();
        let profile = UseProfile::from_counts(uses).with_total(1.0);
        let report = network_bound(&net, &profile, EpsilonParams::zero()).unwrap();
        assert!(rel_diff(report.per_use_bits.unwrap(), closed) <= 1e-9);
    }
}

#[test]
fn best_path_is_best_simple_path() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut checked = 0;
    for case in 0..120 {
        let (net, _) = random_network(&mut rng, 6, 12);
        let ends: Vec<(usize, usize)> = (0..net.edges().len()).map(|i| net.edge_ends(i)).collect();
        let a = net.node_index("A").unwrap();
        let b = net.node_index("B").unwrap();
        let paths = all_simple_paths(net.nodes().len(), &ends, a, b);
        let Ok(route) = best_path(&net) else {
            assert!(paths.is_empty(), "case {case}: route missed");
            continue;
        };
        checked += 1;
        let best = paths
            .iter()
            .map(|p| {
                let e: Vec<f64> = p
                    .edges
                    .iter()
                    .map(|&i| net.edges()[i].esq_bound().unwrap())
                    .collect();
                1.0 / e.iter().map(|x| 1.0 / x).sum::<f64>()
            })
            .fold(0.0, f64::max);
        assert!(
            rel_diff(route.per_use_bound_bits, best) <= 1e-12,
            "case {case}"
        );

        let weight: f64 = route
            .edges
            .iter()
            .map(|&i| qnetbound::edge_weight(&net.edges()[i]).unwrap())
            .sum();
        assert_eq!(route.per_use_bound_bits, 1.0 / weight);
        assert_eq!(path_bound(&net, &route).unwrap(), route.per_use_bound_bits);
    }
    assert!(checked > 60);
}

#[test]
fn path_bound_never_beats_min_cut_on_path_uses() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    for _ in 0..80 {
        let (net, _) = random_network(&mut rng, 6, 12);
        let Ok(route) = best_path(&net) else { continue };
        let profile = path_profile(&net, &route);
        let report = network_bound(&net, &profile, EpsilonParams::zero()).unwrap();
        assert!(route.per_use_bound_bits <= report.per_use_bits.unwrap() * (1.0 + 1e-9));
    }
}

#[test]
fn path_graph_attains_min_cut() {
    let chain = ChainSpec::spaced(vec![30.0, 80.0, 45.0], Attenuation::DbPerKm(0.2)).unwrap();
    let net = chain.to_network().unwrap();
    let route = best_path(&net).unwrap();
    assert_eq!(route.nodes, ["A", "C1", "C2", "B"]);
    let report = network_bound(&net, &path_profile(&net, &route), EpsilonParams::zero()).unwrap();
    assert!(rel_diff(route.per_use_bound_bits, report.per_use_bits.unwrap()) <= 1e-12);
    assert!(
        rel_diff(
            route.per_use_bound_bits,
            uneven_chain_bound_per_use(&chain).unwrap()
        ) <= 1e-12
    );
}

/// One unit of uses spread over the route in proportion to `1 / E_sq`.
fn path_profile(net: &Network, route: &Route) -> UseProfile {
    let inv: Vec<f64> = route
        .edges
        .iter()
        .map(|&i| 1.0 / net.edges()[i].esq_bound().unwrap())
        .collect();
    let total: f64 = inv.iter().sum();
    let mut uses = vec![0.0; net.edges().len()];
    for (&i, w) in route.edges.iter().zip(&inv) {
        uses[i] += w / total;
    }
    let sum: f64 = uses.iter().sum();
    UseProfile::from_counts(uses).with_total(sum)
}
