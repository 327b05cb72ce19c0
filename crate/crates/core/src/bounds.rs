//! Rate upper bounds: the general cut bound over a network, and its
//! specializations to linear repeater chains.

use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::netgraph::{min_cut, Cut, Network, UseProfile};
use crate::photonics::{
    epsilon_adjust, esq_lossy_bound, Attenuation, ChannelSpec, EpsilonParams, DEFAULT_MODE_FACTOR,
};

/// A linear chain `A - C1 - ... - Cn - B` of identical fibre.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainSpec {
    pub total_length_km: f64,
    pub num_intermediate: usize,
    /// Per-segment lengths; `None` means equal spacing.
    pub spacings_km: Option<Vec<f64>>,
    pub attenuation: Attenuation,
    pub mode_factor: u32,
}

impl ChainSpec {
    pub fn equal(total_length_km: f64, num_intermediate: usize, attenuation: Attenuation) -> Self {
        ChainSpec {
            total_length_km,
            num_intermediate,
            spacings_km: None,
            attenuation,
            mode_factor: DEFAULT_MODE_FACTOR,
        }
    }

    /// A chain with explicit segment lengths; the total is their sum.
    pub fn spaced(spacings_km: Vec<f64>, attenuation: Attenuation) -> Result<Self> {
        if spacings_km.is_empty() {
            return Err(Error::Spec("a chain needs at least one segment".into()));
        }
        let spec = ChainSpec {
            total_length_km: spacings_km.iter().sum(),
            num_intermediate: spacings_km.len() - 1,
            spacings_km: Some(spacings_km),
            attenuation,
            mode_factor: DEFAULT_MODE_FACTOR,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn segments(&self) -> usize {
        self.num_intermediate + 1
    }

    pub fn validate(&self) -> Result<()> {
        let l = self.total_length_km;
        if !(l >= 0.0) || l.is_infinite() {
            return Err(Error::Spec(format!(
                "total length must be a nonnegative finite number of km, got {l}"
            )));
        }
        if self.mode_factor == 0 {
            return Err(Error::Spec("mode_factor must be at least 1".into()));
        }
        self.attenuation.length_km()?;
        if let Some(sp) = &self.spacings_km {
            if sp.len() != self.segments() {
                return Err(Error::Spec(format!(
                    "{} intermediate nodes need {} spacings, got {}",
                    self.num_intermediate,
                    self.segments(),
                    sp.len()
                )));
            }
            if let Some(bad) = sp.iter().find(|s| !(**s > 0.0) || s.is_infinite()) {
                return Err(Error::Spec(format!("spacing must be positive, got {bad}")));
            }
            let sum: f64 = sp.iter().sum();
            if (sum - l).abs() > 1e-9 * l.max(sum) {
                return Err(Error::Spec(format!(
                    "spacings sum to {sum} km but the chain is {l} km long"
                )));
            }
        }
        Ok(())
    }

    pub fn segment_lengths(&self) -> Vec<f64> {
        match &self.spacings_km {
            Some(sp) => sp.clone(),
            None => vec![self.segment_length(); self.segments()],
        }
    }

    /// `L / (n + 1)`, the equal-spacing segment length.
    pub fn segment_length(&self) -> f64 {
        self.total_length_km / self.segments() as f64
    }

    /// Transmittance of one equal-spacing segment.
    pub fn segment_transmittance(&self) -> Result<f64> {
        self.validate()?;
        self.attenuation.transmittance(self.segment_length())
    }

    pub fn segment_transmittances(&self) -> Result<Vec<f64>> {
        self.validate()?;
        self.segment_lengths()
            .into_iter()
            .map(|len| self.attenuation.transmittance(len))
            .collect()
    }

    /// The chain as a [`Network`] with nodes `A, C1, ..., Cn, B`.
    pub fn to_network(&self) -> Result<Network> {
        self.validate()?;
        let links = self
            .segment_lengths()
            .into_iter()
            .map(|len| {
                let mut c = ChannelSpec::fiber("", "", len, self.attenuation);
                c.mode_factor = self.mode_factor;
                c
            })
            .collect();
        Network::chain(links)
    }

    fn require_equal_spacing(&self) -> Result<()> {
        if self.spacings_km.is_some() {
            return Err(Error::Spec(
                "chain has explicit spacings; use uneven_chain_bound_per_use".into(),
            ));
        }
        Ok(())
    }
}

/// Result of evaluating the cut bound on a network.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub raw_min_cut_bits: f64,
    pub adjusted_bits: f64,
    pub witness_cut: Cut,
    /// `adjusted_bits / l` when the profile declares its total `l`.
    pub per_use_bits: Option<f64>,
    pub epsilon: f64,
}

/// Minimum cut of the network under `profile`, corrected for `eps`.
pub fn network_bound(
    network: &Network,
    profile: &UseProfile,
    eps: EpsilonParams,
) -> Result<BoundReport> {
    let mc = min_cut(network, profile)?;
    let adjusted = epsilon_adjust(mc.value, eps)?;
    let per_use_bits = match profile.total_uses {
        Some(l) if l > 0.0 => Some(adjusted / l),
        Some(_) => None,
        None => None,
    };
    Ok(BoundReport {
        raw_min_cut_bits: mc.value,
        adjusted_bits: adjusted,
        witness_cut: mc.witness,
        per_use_bits,
        epsilon: eps.value(),
    })
}

/// Bits per channel use for an equally spaced chain:
/// `E_sq(eta_{L0}) / (n + 1)`. With `n = 0` this is the point-to-point bound.
pub fn chain_bound_per_use(chain: &ChainSpec) -> Result<f64> {
    chain.require_equal_spacing()?;
    let eta = chain.segment_transmittance()?;
    Ok(esq_lossy_bound(eta, chain.mode_factor)? / chain.segments() as f64)
}

/// Total bits over `total_uses` channel uses, corrected for `eps`.
pub fn chain_bound_total(chain: &ChainSpec, total_uses: f64, eps: EpsilonParams) -> Result<f64> {
    if !(total_uses >= 0.0) || total_uses.is_infinite() {
        return Err(Error::Domain(format!(
            "total uses must be nonnegative and finite, got {total_uses}"
        )));
    }
    let per_use = chain_bound_per_use(chain)?;
    let raw = if total_uses == 0.0 {
        0.0
    } else {
        total_uses * per_use
    };
    epsilon_adjust(raw, eps)
}

/// `1 / sum_j (1 / E_j)`: the best achievable `min_j m_j E_j` per unit of
/// total uses. Infinite `E_j` contribute nothing; all infinite gives infinity.
pub fn harmonic_segment_bound(segment_bounds: &[f64]) -> Result<f64> {
    if segment_bounds.is_empty() {
        return Err(Error::Spec("a chain needs at least one segment".into()));
    }
    if let Some(bad) = segment_bounds.iter().find(|e| !(**e >= 0.0)) {
        return Err(Error::Domain(format!(
            "segment bound must be nonnegative, got {bad}"
        )));
    }
    let inverse_sum: f64 = segment_bounds.iter().map(|e| e.recip()).sum();
    Ok(inverse_sum.recip())
}

/// Per-use bound for a chain with arbitrary segment lengths.
pub fn uneven_chain_bound_per_use(chain: &ChainSpec) -> Result<f64> {
    let bounds = chain
        .segment_transmittances()?
        .into_iter()
        .map(|eta| esq_lossy_bound(eta, chain.mode_factor))
        .collect::<Result<Vec<_>>>()?;
    harmonic_segment_bound(&bounds)
}

/// Use allocation attaining [`uneven_chain_bound_per_use`]: `m_j` proportional
/// to `1 / E_j`, scaled to `total_uses`. Lossless segments receive none unless
/// every segment is lossless, in which case uses are split evenly.
pub fn optimal_segment_uses(chain: &ChainSpec, total_uses: f64) -> Result<Vec<f64>> {
    let bounds = chain
        .segment_transmittances()?
        .into_iter()
        .map(|eta| esq_lossy_bound(eta, chain.mode_factor))
        .collect::<Result<Vec<_>>>()?;
    let weights: Vec<f64> = bounds.iter().map(|e| e.recip()).collect();
    let total: f64 = weights.iter().sum();
    if total == 0.0 {
        let k = bounds.len() as f64;
        return Ok(vec![total_uses / k; bounds.len()]);
    }
    if total.is_infinite() {
        // a zero-capacity segment caps everything at zero; put all uses there
        let zeros = bounds.iter().filter(|e| **e == 0.0).count() as f64;
        return Ok(bounds
            .iter()
            .map(|e| if *e == 0.0 { total_uses / zeros } else { 0.0 })
            .collect());
    }
    Ok(weights.iter().map(|w| total_uses * w / total).collect())
}

/// Low-transmittance form of [`chain_bound_per_use`]:
/// `2 * mode_factor * eta_{L0} / ((n + 1) ln 2)`.
pub fn small_eta_chain_approx(chain: &ChainSpec) -> Result<f64> {
    chain.require_equal_spacing()?;
    let eta = chain.segment_transmittance()?;
    Ok(2.0 * f64::from(chain.mode_factor) * eta / (chain.segments() as f64 * LN_2))
}

/// Seconds until the first bit at the given rate and channel-use clock.
pub fn time_to_first_bit(rate_bits_per_use: f64, clock_hz: f64) -> Result<f64> {
    if !(rate_bits_per_use > 0.0) {
        return Err(Error::Domain(format!(
            "rate must be positive, got {rate_bits_per_use}"
        )));
    }
    if !(clock_hz > 0.0) || clock_hz.is_infinite() {
        return Err(Error::Domain(format!(
            "clock must be positive, got {clock_hz}"
        )));
    }
    Ok(1.0 / (rate_bits_per_use * clock_hz))
}
