//! Monte Carlo model of the idealized qubit repeater chain, plus the analytic
//! achievable rates it is compared against.
//!
//! Every link independently retries photon transmission until a heralded
//! arrival; once all links hold a pair, the repeaters swap deterministically.
//! One trial therefore delivers exactly one ebit and consumes the sum of the
//! per-link attempt counts in channel uses.

use std::fmt;
use std::str::FromStr;

use rand::distributions::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::ChainSpec;
use crate::error::{Error, Result};
use crate::photonics::Attenuation;

/// Trials per work unit. Aggregation happens per chunk, then across chunks in
/// index order, so results do not depend on the thread count.
const CHUNK_TRIALS: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub chain: ChainSpec,
    pub trials: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    pub trials: u64,
    /// Channel uses summed over all trials and links.
    pub total_channel_uses: f64,
    /// Delivered ebits; one per trial in the idealized protocol.
    pub ebits: u64,
    /// Ratio-of-sums estimator `ebits / total_channel_uses`.
    pub rate_per_use: f64,
    /// Delta-method standard error of `rate_per_use`; NaN for a single trial.
    pub stderr_rate: f64,
    pub per_link_mean_uses: Vec<f64>,
}

/// Random stream for one trial: stream `trial` of the ChaCha8 keyed by `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Number of attempts until the first success, `P(m) = (1 - eta)^(m-1) eta`.
///
/// Drawn by inversion, `m = ceil(ln u / ln(1 - eta))`, so the cost does not
/// grow as `eta` shrinks. The count is returned as a whole-valued `f64`
/// because it can exceed `u64::MAX` for very lossy links.
pub fn sample_link_attempts<R: Rng + ?Sized>(rng: &mut R, eta: f64) -> Result<f64> {
    if eta == 0.0 {
        return Err(Error::LinkNeverSucceeds);
    }
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(Error::Domain(format!(
            "transmittance must lie in (0, 1], got {eta}"
        )));
    }
    if eta == 1.0 {
        return Ok(1.0);
    }
    let u: f64 = rng.sample(Open01);
    Ok((u.ln() / (-eta).ln_1p()).ceil().max(1.0))
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn merge(&mut self, other: &CompensatedSum) {
        self.add(other.sum);
        self.add(other.carry);
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Per-chunk aggregate of trial outcomes.
#[derive(Debug, Clone)]
struct Tally {
    trials: u64,
    uses: CompensatedSum,
    per_link: Vec<CompensatedSum>,
    // Welford state for the per-trial use count.
    mean: f64,
    m2: f64,
}

impl Tally {
    fn new(links: usize) -> Self {
        Tally {
            trials: 0,
            uses: CompensatedSum::default(),
            per_link: vec![CompensatedSum::default(); links],
            mean: 0.0,
            m2: 0.0,
        }
    }

    fn record(&mut self, link_uses: &[f64]) {
        let mut trial = CompensatedSum::default();
        for (acc, &m) in self.per_link.iter_mut().zip(link_uses) {
            acc.add(m);
            trial.add(m);
        }
        let x = trial.value();
        self.uses.add(x);
        self.trials += 1;
        let delta = x - self.mean;
        self.mean += delta / self.trials as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(&mut self, other: &Tally) {
        if other.trials == 0 {
            return;
        }
        let (na, nb) = (self.trials as f64, other.trials as f64);
        let n = na + nb;
        let delta = other.mean - self.mean;
        self.mean += delta * nb / n;
        self.m2 += other.m2 + delta * delta * na * nb / n;
        self.trials += other.trials;
        self.uses.merge(&other.uses);
        for (a, b) in self.per_link.iter_mut().zip(&other.per_link) {
            a.merge(b);
        }
    }
}

/// Runs `config.trials` independent protocol rounds.
///
/// Trial `t` draws from [`trial_rng`]`(seed, t)`, so output is bit-identical
/// across runs and thread counts.
pub fn simulate(config: &SimConfig) -> Result<SimResult> {
    if config.trials == 0 {
        return Err(Error::Domain("trials must be at least 1".into()));
    }
    let etas = config.chain.segment_transmittances()?;
    if etas.contains(&0.0) {
        return Err(Error::LinkNeverSucceeds);
    }
    let links = etas.len();
    let chunks = config.trials.div_ceil(CHUNK_TRIALS);

    let tallies: Vec<Tally> = (0..chunks)
        .into_par_iter()
        .map(|c| -> Result<Tally> {
            let start = c * CHUNK_TRIALS;
            let end = (start + CHUNK_TRIALS).min(config.trials);
            let mut tally = Tally::new(links);
            let mut attempts = vec![0.0; links];
            for t in start..end {
                let mut rng = trial_rng(config.seed, t);
                for (slot, &eta) in attempts.iter_mut().zip(&etas) {
                    *slot = sample_link_attempts(&mut rng, eta)?;
                }
                tally.record(&attempts);
            }
            Ok(tally)
        })
        .collect::<Result<_>>()?;

    let mut total = Tally::new(links);
    for t in &tallies {
        total.merge(t);
    }

    let n = total.trials as f64;
    let uses = total.uses.value();
    let rate = n / uses;
    let stderr = if total.trials > 1 {
        let sd = (total.m2 / (n - 1.0)).sqrt();
        sd / (total.mean * total.mean * n.sqrt())
    } else {
        f64::NAN
    };
    Ok(SimResult {
        trials: total.trials,
        total_channel_uses: uses,
        ebits: total.trials,
        rate_per_use: rate,
        stderr_rate: stderr,
        per_link_mean_uses: total.per_link.iter().map(|s| s.value() / n).collect(),
    })
}

/// Ebits per channel use of the idealized protocol on an equally spaced
/// chain: `eta_{L0} / (n + 1)`.
///
/// This is `1 / E[uses per ebit]`, the limit of the ratio-of-sums estimator
/// reported by [`simulate`].
pub fn analytic_repeater_rate(chain: &ChainSpec) -> Result<f64> {
    if chain.spacings_km.is_some() {
        return Err(Error::Spec(
            "chain has explicit spacings; use expected_rate_for_links".into(),
        ));
    }
    Ok(chain.segment_transmittance()? / chain.segments() as f64)
}

/// `1 / sum_j (1 / eta_j)`: the idealized protocol's rate for arbitrary links.
pub fn expected_rate_for_links(etas: &[f64]) -> Result<f64> {
    if etas.is_empty() {
        return Err(Error::Spec("a chain needs at least one link".into()));
    }
    if let Some(bad) = etas.iter().find(|e| !(**e >= 0.0 && **e <= 1.0)) {
        return Err(Error::Domain(format!(
            "transmittance must lie in [0, 1], got {bad}"
        )));
    }
    Ok(etas.iter().map(|e| e.recip()).sum::<f64>().recip())
}

/// Reference achievable-rate scalings for repeaterless and intercity schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalingModel {
    /// Linear in the end-to-end transmittance.
    PointToPoint,
    /// Linear in the square root of the end-to-end transmittance.
    Intercity,
}

impl FromStr for ScalingModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "point_to_point" | "point-to-point" => Ok(ScalingModel::PointToPoint),
            "intercity" => Ok(ScalingModel::Intercity),
            other => Err(Error::Domain(format!("unknown scaling model {other:?}"))),
        }
    }
}

impl fmt::Display for ScalingModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScalingModel::PointToPoint => "point_to_point",
            ScalingModel::Intercity => "intercity",
        })
    }
}

/// `c * eta_L` for point-to-point, `c * eta_{L/2}` for intercity.
pub fn scaling_model_rate(
    model: ScalingModel,
    length_km: f64,
    attenuation: Attenuation,
    prefactor: f64,
) -> Result<f64> {
    if !(prefactor > 0.0) || prefactor.is_infinite() {
        return Err(Error::Domain(format!(
            "prefactor must be positive, got {prefactor}"
        )));
    }
    if !(length_km > 0.0) {
        return Err(Error::Domain(format!(
            "length must be positive, got {length_km}"
        )));
    }
    let effective = match model {
        ScalingModel::PointToPoint => length_km,
        ScalingModel::Intercity => length_km / 2.0,
    };
    Ok(prefactor * attenuation.transmittance(effective)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const FIBER: Attenuation = Attenuation::DbPerKm(0.2);

    #[test]
    fn lossless_link_always_one_attempt() {
        let mut rng = trial_rng(1, 0);
        for _ in 0..100 {
            assert_eq!(sample_link_attempts(&mut rng, 1.0).unwrap(), 1.0);
        }
        assert_eq!(
            sample_link_attempts(&mut rng, 0.0),
            Err(Error::LinkNeverSucceeds)
        );
        assert!(sample_link_attempts(&mut rng, 1.5).is_err());
    }

    #[test]
    fn geometric_mean_matches_inverse_eta() {
        let mut rng = trial_rng(2024, 0);
        let n = 1_000_000;
        let mut sum = 0.0;
        for _ in 0..n {
            let m = sample_link_attempts(&mut rng, 0.5).unwrap();
            assert!(m >= 1.0 && m.fract() == 0.0);
            sum += m;
        }
        let mean = sum / n as f64;
        assert!((mean - 2.0).abs() / 2.0 < 0.01, "mean {mean}");
    }

    #[test]
    fn tiny_eta_samples_in_constant_time() {
        let mut rng = trial_rng(9, 0);
        let m = sample_link_attempts(&mut rng, 1e-20).unwrap();
        assert!(m > 1e15 && m.is_finite());
    }

    #[test]
    fn lossless_point_to_point_rate_is_one() {
        let cfg = SimConfig {
            chain: ChainSpec::equal(0.0, 0, FIBER),
            trials: 1000,
            seed: 3,
        };
        let r = simulate(&cfg).unwrap();
        assert_eq!(r.rate_per_use, 1.0);
        assert_eq!(r.total_channel_uses, 1000.0);
        assert_eq!(r.ebits, 1000);
        assert_eq!(r.stderr_rate, 0.0);
    }

    #[test]
    fn simulate_rejects_dead_links_and_zero_trials() {
        let dead = ChainSpec::equal(1e6, 0, Attenuation::LengthKm(1.0));
        let cfg = SimConfig {
            chain: dead,
            trials: 10,
            seed: 0,
        };
        assert_eq!(simulate(&cfg), Err(Error::LinkNeverSucceeds));
        let cfg = SimConfig {
            chain: ChainSpec::equal(10.0, 0, FIBER),
            trials: 0,
            seed: 0,
        };
        assert!(simulate(&cfg).is_err());
    }

    #[test]
    fn single_trial_has_no_stderr() {
        let cfg = SimConfig {
            chain: ChainSpec::equal(50.0, 1, FIBER),
            trials: 1,
            seed: 7,
        };
        let r = simulate(&cfg).unwrap();
        assert!(r.stderr_rate.is_nan());
        assert!(r.total_channel_uses >= 2.0);
    }

    #[test]
    fn analytic_rates() {
        assert_relative_eq!(
            analytic_repeater_rate(&ChainSpec::equal(100.0, 0, FIBER)).unwrap(),
            1e-2,
            max_relative = 1e-12
        );
        let c = ChainSpec::equal(200.0, 1, Attenuation::LengthKm(21.7147));
        assert_relative_eq!(
            analytic_repeater_rate(&c).unwrap(),
            0.0049999744500175265,
            max_relative = 1e-12
        );
        let short = ChainSpec::equal(1e-9, 9, FIBER);
        assert_relative_eq!(
            analytic_repeater_rate(&short).unwrap(),
            0.1,
            max_relative = 1e-9
        );
        let etas = [0.1; 4];
        assert_relative_eq!(
            expected_rate_for_links(&etas).unwrap(),
            0.025,
            max_relative = 1e-15
        );
    }

    #[test]
    fn scaling_models() {
        // eta_L = 1e-4 at 200 km of 0.2 dB/km
        let p = scaling_model_rate(ScalingModel::PointToPoint, 200.0, FIBER, 1.0).unwrap();
        let i = scaling_model_rate(ScalingModel::Intercity, 200.0, FIBER, 1.0).unwrap();
        assert_relative_eq!(p, 1e-4, max_relative = 1e-12);
        assert_relative_eq!(i, 1e-2, max_relative = 1e-12);
        let half = scaling_model_rate(ScalingModel::PointToPoint, 100.0, FIBER, 1.0).unwrap();
        assert_eq!(i, half);
        assert!("bogus".parse::<ScalingModel>().is_err());
        assert_eq!(
            "intercity".parse::<ScalingModel>().unwrap(),
            ScalingModel::Intercity
        );
        assert!(scaling_model_rate(ScalingModel::Intercity, 200.0, FIBER, 0.0).is_err());
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut s = CompensatedSum::default();
        s.add(1e16);
        for _ in 0..10 {
            s.add(1.0);
        }
        s.add(-1e16);
        assert_eq!(s.value(), 10.0);
    }
}
