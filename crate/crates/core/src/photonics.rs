//! Closed-form quantities for a single pure-loss optical channel.
//!
//! Entropic quantities are in bits. A lossless channel (`eta == 1`) has an
//! unbounded squashed-entanglement bound, which is reported as `f64::INFINITY`
//! and propagated through every caller rather than clamped.

use std::f64::consts::{LN_10, LN_2};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Optical modes carried by one pulse: the two polarization modes.
pub const DEFAULT_MODE_FACTOR: u32 = 2;

/// Loss figure of a standard telecom fibre, in dB/km.
pub const STANDARD_FIBER_DB_PER_KM: f64 = 0.2;

/// Fibre attenuation, given either as an e-folding length or as a loss rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Attenuation {
    /// Length over which transmittance falls by a factor `e`.
    LengthKm(f64),
    /// Loss in dB per km.
    DbPerKm(f64),
}

impl Attenuation {
    pub fn standard_fiber() -> Self {
        Attenuation::DbPerKm(STANDARD_FIBER_DB_PER_KM)
    }

    /// The attenuation length in km.
    pub fn length_km(self) -> Result<f64> {
        match self {
            Attenuation::LengthKm(l) => {
                if l.is_finite() && l > 0.0 {
                    Ok(l)
                } else {
                    Err(Error::Domain(format!(
                        "attenuation length must be positive and finite, got {l}"
                    )))
                }
            }
            Attenuation::DbPerKm(db) => db_to_attenuation_length(db),
        }
    }

    /// Transmittance of a fibre of the given length.
    pub fn transmittance(self, length_km: f64) -> Result<f64> {
        if !(length_km >= 0.0) || length_km.is_infinite() {
            return Err(Error::Spec(format!(
                "length must be a nonnegative finite number of km, got {length_km}"
            )));
        }
        Ok((-length_km / self.length_km()?).exp())
    }
}

/// Converts a loss rate in dB/km to the equivalent attenuation length in km.
pub fn db_to_attenuation_length(loss_db_per_km: f64) -> Result<f64> {
    if !(loss_db_per_km > 0.0) || loss_db_per_km.is_infinite() {
        return Err(Error::Domain(format!(
            "loss must be positive and finite, got {loss_db_per_km} dB/km"
        )));
    }
    Ok(10.0 / (loss_db_per_km * LN_10))
}

/// Inverse of [`db_to_attenuation_length`].
pub fn attenuation_length_to_db(attenuation_length_km: f64) -> Result<f64> {
    if !(attenuation_length_km > 0.0) || attenuation_length_km.is_infinite() {
        return Err(Error::Domain(format!(
            "attenuation length must be positive and finite, got {attenuation_length_km} km"
        )));
    }
    Ok(10.0 / (attenuation_length_km * LN_10))
}

/// One directed pure-loss optical channel between two nodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelSpec {
    pub from_node: String,
    pub to_node: String,
    pub length_km: f64,
    pub attenuation: Option<Attenuation>,
    /// Optical modes per channel use.
    pub mode_factor: u32,
    /// Takes precedence over `length_km` and `attenuation` when set.
    pub transmittance_override: Option<f64>,
}

impl ChannelSpec {
    pub fn fiber(
        from: impl Into<String>,
        to: impl Into<String>,
        length_km: f64,
        attenuation: Attenuation,
    ) -> Self {
        ChannelSpec {
            from_node: from.into(),
            to_node: to.into(),
            length_km,
            attenuation: Some(attenuation),
            mode_factor: DEFAULT_MODE_FACTOR,
            transmittance_override: None,
        }
    }

    /// A channel described only by its transmittance.
    pub fn with_transmittance(from: impl Into<String>, to: impl Into<String>, eta: f64) -> Self {
        ChannelSpec {
            from_node: from.into(),
            to_node: to.into(),
            length_km: 0.0,
            attenuation: None,
            mode_factor: DEFAULT_MODE_FACTOR,
            transmittance_override: Some(eta),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.from_node == self.to_node {
            return Err(Error::Validation(format!(
                "self-loop edge {} -> {}",
                self.from_node, self.to_node
            )));
        }
        if self.mode_factor == 0 {
            return Err(Error::Spec("mode_factor must be at least 1".into()));
        }
        if let Some(eta) = self.transmittance_override {
            if !(0.0..=1.0).contains(&eta) {
                return Err(Error::Spec(format!(
                    "transmittance must lie in [0, 1], got {eta}"
                )));
            }
            return Ok(());
        }
        match self.attenuation {
            None => Err(Error::Spec(format!(
                "channel {} -> {} has neither attenuation nor transmittance",
                self.from_node, self.to_node
            ))),
            Some(att) => att.transmittance(self.length_km).map(|_| ()),
        }
    }

    /// Returns the endpoint opposite `node`, if `node` is an endpoint.
    pub fn other_end(&self, node: &str) -> Option<&str> {
        if self.from_node == node {
            Some(&self.to_node)
        } else if self.to_node == node {
            Some(&self.from_node)
        } else {
            None
        }
    }

    /// Squashed-entanglement bound of this channel, bits per use.
    pub fn esq_bound(&self) -> Result<f64> {
        esq_lossy_bound(transmittance(self)?, self.mode_factor)
    }
}

/// Transmittance of a channel: the override when present, otherwise `exp(-L / l_att)`.
pub fn transmittance(spec: &ChannelSpec) -> Result<f64> {
    spec.validate()?;
    match (spec.transmittance_override, spec.attenuation) {
        (Some(eta), _) => Ok(eta),
        (None, Some(att)) => att.transmittance(spec.length_km),
        (None, None) => unreachable!("validate rejects channels without loss data"),
    }
}

/// Upper bound on the squashed entanglement of a pure-loss channel with
/// transmittance `eta`: `mode_factor * log2((1 + eta) / (1 - eta))`.
pub fn esq_lossy_bound(eta: f64, mode_factor: u32) -> Result<f64> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::Domain(format!(
            "transmittance must lie in [0, 1], got {eta}"
        )));
    }
    if mode_factor == 0 {
        return Err(Error::Domain("mode_factor must be at least 1".into()));
    }
    if eta == 1.0 {
        return Ok(f64::INFINITY);
    }
    let per_mode = (eta.ln_1p() - (-eta).ln_1p()) / LN_2;
    Ok(f64::from(mode_factor) * per_mode)
}

/// Binary entropy in bits, with `h(0) = h(1) = 0`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!(
            "binary entropy argument must lie in [0, 1], got {x}"
        )));
    }
    let term = |p: f64| if p == 0.0 { 0.0 } else { -p * p.log2() };
    Ok(term(x) + term(1.0 - x))
}

/// Security parameter of the finite-error bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpsilonParams {
    epsilon: f64,
}

impl EpsilonParams {
    /// Exclusive upper limit on epsilon: at `1/256`, `16 * sqrt(eps) == 1`.
    pub const LIMIT: f64 = 1.0 / 256.0;

    pub fn new(epsilon: f64) -> Result<Self> {
        if !(epsilon >= 0.0) {
            return Err(Error::Domain(format!(
                "epsilon must be nonnegative, got {epsilon}"
            )));
        }
        if 16.0 * epsilon.sqrt() >= 1.0 {
            return Err(Error::Domain(format!(
                "epsilon too large: {epsilon} >= 1/256 makes the bound vacuous"
            )));
        }
        Ok(EpsilonParams { epsilon })
    }

    pub fn zero() -> Self {
        EpsilonParams { epsilon: 0.0 }
    }

    pub fn value(self) -> f64 {
        self.epsilon
    }

    /// Additive entropy penalty `4 h(2 sqrt(eps))`.
    pub fn entropy_term(self) -> f64 {
        let x = 2.0 * self.epsilon.sqrt();
        4.0 * binary_entropy(x).expect("2 sqrt(eps) < 1/8 for valid eps")
    }

    /// Multiplicative prefactor `1 / (1 - 16 sqrt(eps))`.
    pub fn prefactor(self) -> f64 {
        1.0 / (1.0 - 16.0 * self.epsilon.sqrt())
    }
}

impl Default for EpsilonParams {
    fn default() -> Self {
        Self::zero()
    }
}

/// Applies the finite-epsilon correction `(raw + 4 h(2 sqrt eps)) / (1 - 16 sqrt eps)`.
pub fn epsilon_adjust(raw_bound: f64, eps: EpsilonParams) -> Result<f64> {
    if !(raw_bound >= 0.0) {
        return Err(Error::Domain(format!(
            "raw bound must be nonnegative, got {raw_bound}"
        )));
    }
    if eps.epsilon == 0.0 {
        return Ok(raw_bound);
    }
    Ok((raw_bound + eps.entropy_term()) * eps.prefactor())
}
