//! JSON network descriptions.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "nodes": ["A", "C1", "B"],
//!   "endpoints": {"a": "A", "b": "B"},
//!   "edges": [
//!     {"from": "A", "to": "C1", "length_km": 50, "loss_db_per_km": 0.2, "uses": 2},
//!     {"from": "C1", "to": "B", "transmittance": 0.1}
//!   ]
//! }
//! ```
//!
//! Unknown keys are rejected anywhere in the document.

use serde::{Deserialize, Serialize};

use qnetbound::photonics::{Attenuation, ChannelSpec, DEFAULT_MODE_FACTOR};
use qnetbound::{Network, UseProfile};

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkFile {
    pub schema_version: u32,
    pub nodes: Vec<String>,
    pub endpoints: Endpoints,
    pub edges: Vec<EdgeEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Endpoints {
    pub a: String,
    pub b: String,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeEntry {
    pub from: String,
    pub to: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length_km: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub loss_db_per_km: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attenuation_length_km: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transmittance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode_factor: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub uses: Option<f64>,
}

impl EdgeEntry {
    fn to_channel(&self, i: usize) -> Result<ChannelSpec, CliError> {
        let fail =
            |msg: &str| CliError::Parse(format!("edge {i} ({} -> {}): {msg}", self.from, self.to));
        let attenuation = match (self.loss_db_per_km, self.attenuation_length_km) {
            (Some(_), Some(_)) => {
                return Err(fail(
                    "set only one of loss_db_per_km and attenuation_length_km",
                ))
            }
            (Some(db), None) => Some(Attenuation::DbPerKm(db)),
            (None, Some(l)) => Some(Attenuation::LengthKm(l)),
            (None, None) => None,
        };
        if self.transmittance.is_none() {
            if attenuation.is_none() {
                return Err(fail(
                    "needs transmittance, loss_db_per_km or attenuation_length_km",
                ));
            }
            if self.length_km.is_none() {
                return Err(fail("length_km is required with an attenuation"));
            }
        }
        if let Some(u) = self.uses {
            if !(u >= 0.0) {
                return Err(fail(&format!("uses must be nonnegative, got {u}")));
            }
        }
        let spec = ChannelSpec {
            from_node: self.from.clone(),
            to_node: self.to.clone(),
            length_km: self.length_km.unwrap_or(0.0),
            attenuation,
            mode_factor: self.mode_factor.unwrap_or(DEFAULT_MODE_FACTOR),
            transmittance_override: self.transmittance,
        };
        spec.validate().map_err(|e| fail(&e.to_string()))?;
        Ok(spec)
    }
}

impl NetworkFile {
    /// Builds the network and its use profile; the profile's total is the
    /// sum of all edges' uses.
    pub fn to_network(&self) -> Result<(Network, UseProfile), CliError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(CliError::Parse(format!(
                "schema_version {} is not supported (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| e.to_channel(i))
            .collect::<Result<Vec<_>, _>>()?;
        let network = Network::new(
            self.nodes.iter().cloned(),
            self.endpoints.a.clone(),
            self.endpoints.b.clone(),
            edges,
        )
        .map_err(|e| CliError::Parse(e.to_string()))?;
        let mut profile = UseProfile::new();
        for (i, e) in self.edges.iter().enumerate() {
            if let Some(u) = e.uses {
                profile.uses.insert(i, u);
            }
        }
        let total: f64 = (0..self.edges.len()).map(|i| profile.get(i)).sum();
        if total.is_infinite() {
            return Err(CliError::Parse("edge uses sum to infinity".into()));
        }
        profile.total_uses = Some(total);
        Ok((network, profile))
    }

    /// Serializes a network and profile back to the file schema.
    pub fn from_network(network: &Network, profile: &UseProfile) -> NetworkFile {
        let edges = network
            .edges()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mut e = EdgeEntry {
                    from: c.from_node.clone(),
                    to: c.to_node.clone(),
                    transmittance: c.transmittance_override,
                    mode_factor: Some(c.mode_factor),
                    uses: profile.uses.get(&i).copied(),
                    ..EdgeEntry::default()
                };
                if let Some(att) = c.attenuation {
                    e.length_km = Some(c.length_km);
                    match att {
                        Attenuation::DbPerKm(db) => e.loss_db_per_km = Some(db),
                        Attenuation::LengthKm(l) => e.attenuation_length_km = Some(l),
                    }
                }
                e
            })
            .collect();
        NetworkFile {
            schema_version: SCHEMA_VERSION,
            nodes: network.nodes().to_vec(),
            endpoints: Endpoints {
                a: network.endpoint_a().to_string(),
                b: network.endpoint_b().to_string(),
            },
            edges,
        }
    }
}

/// Parses and validates a network document.
pub fn parse_network_file(text: &str) -> Result<(Network, UseProfile), CliError> {
    let file: NetworkFile = serde_json::from_str(text)
        .map_err(|e| CliError::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
    file.to_network()
}

/// Byte-level entry point: rejects non-UTF-8 before parsing.
pub fn parse_network_bytes(bytes: &[u8]) -> Result<(Network, UseProfile), CliError> {
    let text = std::str::from_utf8(bytes)
        .map_err(|e| CliError::Parse(format!("network file is not UTF-8: {e}")))?;
    parse_network_file(text)
}
