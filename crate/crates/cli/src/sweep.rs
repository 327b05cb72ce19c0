//! Distance sweeps over repeater counts, written as CSV.

use std::io::Write;
use std::path::Path;

use rayon::prelude::*;

use qnetbound::bounds::{chain_bound_total, small_eta_chain_approx};
use qnetbound::photonics::{Attenuation, EpsilonParams};
use qnetbound::{analytic_repeater_rate, chain_bound_per_use, simulate, ChainSpec, SimConfig};

use crate::error::CliError;
use crate::format::sig9;

/// Refuse sweeps larger than this many rows.
pub const MAX_ROWS: usize = 10_000_000;

pub const CSV_HEADER: &str = "L_km,n,eta_segment,bound_per_use,achievable_per_use,approx_per_use";
pub const CSV_MC_COLUMNS: &str = ",mc_rate,mc_stderr";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarlo {
    pub trials: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub l_min_km: f64,
    pub l_max_km: f64,
    pub step_km: f64,
    pub n_values: Vec<usize>,
    pub attenuation: Attenuation,
    pub mode_factor: u32,
    pub epsilon: EpsilonParams,
    /// Use budget over which the epsilon penalty is amortized; required when epsilon > 0.
    pub uses_total: Option<f64>,
    pub clock_hz: Option<f64>,
    pub monte_carlo: Option<MonteCarlo>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        let usage = |m: String| Err(CliError::Usage(m));
        if !(self.l_min_km > 0.0) || !self.l_max_km.is_finite() {
            return usage(format!(
                "L range must be positive and finite, got [{}, {}]",
                self.l_min_km, self.l_max_km
            ));
        }
        if !(self.l_min_km <= self.l_max_km) {
            return usage(format!(
                "L_min {} exceeds L_max {}",
                self.l_min_km, self.l_max_km
            ));
        }
        if !(self.step_km > 0.0) {
            return usage(format!("step must be positive, got {}", self.step_km));
        }
        if self.n_values.is_empty() {
            return usage("at least one n value is required".into());
        }
        if self.epsilon.value() > 0.0 && self.uses_total.is_none() {
            return usage("a nonzero epsilon needs --uses-total to amortize over".into());
        }
        if let Some(l) = self.uses_total {
            if !(l > 0.0) || l.is_infinite() {
                return usage(format!("--uses-total must be positive, got {l}"));
            }
        }
        if let Some(c) = self.clock_hz {
            if !(c > 0.0) || c.is_infinite() {
                return usage(format!("--clock-hz must be positive, got {c}"));
            }
        }
        if matches!(self.monte_carlo, Some(MonteCarlo { trials: 0, .. })) {
            return usage("--trials must be at least 1".into());
        }
        let rows = self.lengths()?.len().saturating_mul(self.n_values.len());
        if rows > MAX_ROWS {
            return usage(format!(
                "sweep would produce {rows} rows (limit {MAX_ROWS})"
            ));
        }
        Ok(())
    }

    /// `L_min + k * step` for every `k` that stays within `L_max`.
    pub fn lengths(&self) -> Result<Vec<f64>, CliError> {
        let span = (self.l_max_km - self.l_min_km) / self.step_km;
        let count = (span + 1e-9).floor() + 1.0;
        if !(count <= MAX_ROWS as f64) {
            return Err(CliError::Usage(format!(
                "sweep would produce more than {MAX_ROWS} rows"
            )));
        }
        Ok((0..count as usize)
            .map(|k| self.l_min_km + k as f64 * self.step_km)
            .collect())
    }

    fn sorted_n(&self) -> Vec<usize> {
        let mut n = self.n_values.clone();
        n.sort_unstable();
        n.dedup();
        n
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub l_km: f64,
    pub n: usize,
    pub eta_segment: f64,
    pub bound_per_use: f64,
    pub achievable_per_use: f64,
    pub approx_per_use: f64,
    pub mc: Option<(f64, f64)>,
}

impl SweepRow {
    pub fn to_csv(&self) -> String {
        let mut line = format!(
            "{},{},{},{},{},{}",
            sig9(self.l_km),
            self.n,
            sig9(self.eta_segment),
            sig9(self.bound_per_use),
            sig9(self.achievable_per_use),
            sig9(self.approx_per_use)
        );
        if let Some((rate, se)) = self.mc {
            line.push_str(&format!(",{},{}", sig9(rate), sig9(se)));
        }
        line
    }
}

/// Seed for row `row`, decorrelated from neighbouring rows by a SplitMix64 step.
pub fn row_seed(seed: u64, row: u64) -> u64 {
    let mut z = seed.wrapping_add(0x9e37_79b9_7f4a_7c15u64.wrapping_mul(row.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn compute_row(spec: &SweepSpec, l_km: f64, n: usize, row: u64) -> Result<SweepRow, CliError> {
    let mut chain = ChainSpec::equal(l_km, n, spec.attenuation);
    chain.mode_factor = spec.mode_factor;
    let bound_per_use = match spec.uses_total {
        Some(l) if spec.epsilon.value() > 0.0 => chain_bound_total(&chain, l, spec.epsilon)? / l,
        _ => chain_bound_per_use(&chain)?,
    };
    let mc = match spec.monte_carlo {
        Some(MonteCarlo { trials, seed }) => {
            let r = simulate(&SimConfig {
                chain: chain.clone(),
                trials,
                seed: row_seed(seed, row),
            })?;
            Some((r.rate_per_use, r.stderr_rate))
        }
        None => None,
    };
    Ok(SweepRow {
        l_km,
        n,
        eta_segment: chain.segment_transmittance()?,
        bound_per_use,
        achievable_per_use: analytic_repeater_rate(&chain)?,
        approx_per_use: small_eta_chain_approx(&chain)?,
        mc,
    })
}

/// One row per `(L, n)`, ordered by `n` then `L`.
pub fn sweep_rows(spec: &SweepSpec) -> Result<Vec<SweepRow>, CliError> {
    spec.validate()?;
    let lengths = spec.lengths()?;
    let grid: Vec<(usize, f64)> = spec
        .sorted_n()
        .into_iter()
        .flat_map(|n| lengths.iter().map(move |&l| (n, l)))
        .collect();
    grid.par_iter()
        .enumerate()
        .map(|(row, &(n, l))| compute_row(spec, l, n, row as u64))
        .collect()
}

pub fn render_csv(spec: &SweepSpec, rows: &[SweepRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    if spec.monte_carlo.is_some() {
        out.push_str(CSV_MC_COLUMNS);
    }
    out.push('\n');
    for r in rows {
        out.push_str(&r.to_csv());
        out.push('\n');
    }
    out
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory, then renames it into place.
pub fn write_atomically(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let ctx = |what: &str| format!("{what} {}", path.display());
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .map_err(|e| CliError::io(ctx("cannot create temp file for"), e))?;
    tmp.write_all(contents.as_bytes())
        .and_then(|_| tmp.flush())
        .map_err(|e| CliError::io(ctx("cannot write"), e))?;
    tmp.persist(path)
        .map_err(|e| CliError::io(ctx("cannot rename into"), e.error))?;
    Ok(())
}
