//! Upper bounds on two-party key and entanglement rates over networks of
//! lossy optical channels, and an idealized repeater simulation that attains
//! the same scaling.
//!
//! The bound for a network is the minimum, over cuts separating the two
//! parties, of the channel uses crossing the cut weighted by each channel's
//! squashed-entanglement bound. [`bounds`] specializes it to repeater chains,
//! [`repeater`] simulates the matching protocol and [`routing`] picks the best
//! single path through a general network.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod error;
pub mod netgraph;
pub mod photonics;
pub mod repeater;
pub mod routing;

pub use bounds::{
    chain_bound_per_use, chain_bound_total, network_bound, small_eta_chain_approx,
    time_to_first_bit, uneven_chain_bound_per_use, BoundReport, ChainSpec,
};
pub use error::{Error, Result};
pub use netgraph::{
    cut_crossing_edges, cut_value, enumerate_cuts_oracle, min_cut, Cut, MinCut, Network, UseProfile,
};
pub use photonics::{
    binary_entropy, db_to_attenuation_length, epsilon_adjust, esq_lossy_bound, transmittance,
    Attenuation, ChannelSpec, EpsilonParams,
};
pub use repeater::{
    analytic_repeater_rate, sample_link_attempts, scaling_model_rate, simulate, ScalingModel,
    SimConfig, SimResult,
};
pub use routing::{best_path, edge_weight, path_bound, Route};
