#![no_main]

use libfuzzer_sys::fuzz_target;
use qnetbound::photonics::EpsilonParams;
use qnetbound::{best_path, network_bound, Network};
use qnetbound_cli::netfile::parse_network_bytes;

fuzz_target!(|data: &[u8]| {
    let Ok((net, profile)) = parse_network_bytes(data) else {
        return;
    };
    // anything that parses must be usable downstream without panicking
    if let Ok(report) = network_bound(&net, &profile, EpsilonParams::zero()) {
        assert!(report.raw_min_cut_bits >= 0.0);
        report
            .witness_cut
            .validate(&net)
            .expect("witness is a valid cut");
    }
    let _ = best_path(&net);
    let _: Network = net.reversed();
});
