//! Subcommands. Each returns the text to print on success.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use qnetbound::bounds::optimal_segment_uses;
use qnetbound::photonics::{attenuation_length_to_db, Attenuation, EpsilonParams};
use qnetbound::repeater::expected_rate_for_links;
use qnetbound::{
    analytic_repeater_rate, best_path, chain_bound_per_use, db_to_attenuation_length,
    epsilon_adjust, network_bound, simulate, small_eta_chain_approx, time_to_first_bit,
    uneven_chain_bound_per_use, ChainSpec, Cut, SimConfig, UseProfile,
};

use crate::args::{parse_count_list, parse_float_list, CountList, FloatList};
use crate::error::CliError;
use crate::format::sig9;
use crate::netfile::parse_network_file;
use crate::sweep::{render_csv, sweep_rows, write_atomically, MonteCarlo, SweepSpec};

#[derive(Debug, Parser)]
#[command(
    name = "qnetbound",
    version,
    about = "Rate bounds and repeater simulation for lossy optical networks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Upper bounds for a repeater chain or a network file.
    #[command(subcommand)]
    Bound(BoundCommand),
    /// Monte Carlo run of the idealized repeater protocol.
    Simulate(SimulateArgs),
    /// Bound and achievable rate over a grid of distances, as CSV.
    Sweep(SweepArgs),
    /// Best single path between the endpoints of a network file.
    Route(RouteArgs),
    /// Convert between dB/km and attenuation length.
    Convert(ConvertArgs),
}

#[derive(Debug, Subcommand)]
pub enum BoundCommand {
    Chain(BoundChainArgs),
    Network(BoundNetworkArgs),
}

/// Exactly one way of giving the fibre loss.
#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct AttenuationArgs {
    #[arg(long, value_name = "DB")]
    pub loss_db_per_km: Option<f64>,
    #[arg(long, value_name = "KM")]
    pub att_length_km: Option<f64>,
    /// Shorthand for 0.2 dB/km.
    #[arg(long)]
    pub standard_fiber: bool,
}

impl AttenuationArgs {
    pub fn attenuation(&self) -> Attenuation {
        match (self.loss_db_per_km, self.att_length_km) {
            (Some(db), _) => Attenuation::DbPerKm(db),
            (None, Some(l)) => Attenuation::LengthKm(l),
            (None, None) => Attenuation::standard_fiber(),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ChainArgs {
    /// End-to-end length; optional with --spacings.
    #[arg(long, value_name = "KM")]
    pub length_km: Option<f64>,
    /// Number of intermediate repeater nodes.
    #[arg(long, value_name = "N", default_value_t = 0)]
    pub nodes_n: usize,
    /// Comma-separated segment lengths; overrides --nodes-n.
    #[arg(long, value_name = "KM,KM,...", value_parser = parse_float_list)]
    pub spacings: Option<FloatList>,
    #[command(flatten)]
    pub attenuation: AttenuationArgs,
    /// Optical modes per channel use.
    #[arg(long, default_value_t = 2)]
    pub mode_factor: u32,
}

impl ChainArgs {
    pub fn chain(&self) -> Result<ChainSpec, CliError> {
        let att = self.attenuation.attenuation();
        let mut chain = match (&self.spacings, self.length_km) {
            (Some(FloatList(s)), length) => {
                let chain = ChainSpec::spaced(s.clone(), att)?;
                if let Some(l) = length {
                    let tol = 1e-9 * l.abs().max(1.0);
                    if (chain.total_length_km - l).abs() > tol {
                        return Err(CliError::Usage(format!(
                            "--spacings sum to {} km but --length-km is {l}",
                            chain.total_length_km
                        )));
                    }
                }
                chain
            }
            (None, Some(l)) => ChainSpec::equal(l, self.nodes_n, att),
            (None, None) => {
                return Err(CliError::Usage(
                    "--length-km or --spacings is required".into(),
                ))
            }
        };
        chain.mode_factor = self.mode_factor;
        chain.validate()?;
        Ok(chain)
    }
}

fn per_use_bound(chain: &ChainSpec) -> Result<f64, CliError> {
    Ok(if chain.spacings_km.is_some() {
        uneven_chain_bound_per_use(chain)?
    } else {
        chain_bound_per_use(chain)?
    })
}

fn achievable_rate(chain: &ChainSpec) -> Result<f64, CliError> {
    Ok(if chain.spacings_km.is_some() {
        expected_rate_for_links(&chain.segment_transmittances()?)?
    } else {
        analytic_repeater_rate(chain)?
    })
}

fn format_cut(cut: &Cut) -> String {
    cut.side_a.iter().cloned().collect::<Vec<_>>().join(",")
}

#[derive(Debug, Args)]
pub struct BoundChainArgs {
    #[command(flatten)]
    pub chain: ChainArgs,
    #[arg(long, default_value_t = 0.0)]
    pub epsilon: f64,
    /// Total channel uses `l`; enables the total bound.
    #[arg(long, value_name = "L")]
    pub uses_total: Option<f64>,
}

pub fn bound_chain(args: &BoundChainArgs) -> Result<String, CliError> {
    let eps = EpsilonParams::new(args.epsilon)?;
    let chain = args.chain.chain()?;
    let per_use = per_use_bound(&chain)?;
    let mut out = String::new();
    writeln!(out, "per_use_bits={}", sig9(per_use)).unwrap();
    if let Some(l) = args.uses_total {
        if !(l >= 0.0) || l.is_infinite() {
            return Err(CliError::Usage(format!(
                "--uses-total must be nonnegative, got {l}"
            )));
        }
        let raw = if l == 0.0 { 0.0 } else { l * per_use };
        let total = epsilon_adjust(raw, eps)?;
        writeln!(out, "total_bits={}", sig9(total)).unwrap();
        if l > 0.0 {
            writeln!(out, "adjusted_per_use_bits={}", sig9(total / l)).unwrap();
        }
    }
    if chain.spacings_km.is_none() {
        writeln!(
            out,
            "approx_per_use_bits={}",
            sig9(small_eta_chain_approx(&chain)?)
        )
        .unwrap();
    }
    let etas = chain.segment_transmittances()?;
    let etas: Vec<String> = etas.into_iter().map(sig9).collect();
    writeln!(out, "segment_transmittance={}", etas.join(",")).unwrap();

    // witness: the min cut of the chain with uses split optimally over one use per segment
    let network = chain.to_network()?;
    let segments = chain.segments() as f64;
    let profile =
        UseProfile::from_counts(optimal_segment_uses(&chain, segments)?).with_total(segments);
    let report = network_bound(&network, &profile, EpsilonParams::zero())?;
    writeln!(
        out,
        "min_cut_bits={} witness={}",
        sig9(report.raw_min_cut_bits),
        format_cut(&report.witness_cut)
    )
    .unwrap();
    Ok(out)
}

#[derive(Debug, Args)]
pub struct BoundNetworkArgs {
    #[arg(long, value_name = "FILE")]
    pub network: PathBuf,
    #[arg(long, default_value_t = 0.0)]
    pub epsilon: f64,
}

fn read_network(path: &PathBuf) -> Result<(qnetbound::Network, UseProfile), CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::io(format!("cannot read {}", path.display()), e))?;
    parse_network_file(&text).map_err(|e| match e {
        CliError::Parse(m) => CliError::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn bound_network(args: &BoundNetworkArgs) -> Result<String, CliError> {
    let eps = EpsilonParams::new(args.epsilon)?;
    let (network, profile) = read_network(&args.network)?;
    let report = network_bound(&network, &profile, eps)?;
    let mut out = String::new();
    writeln!(
        out,
        "min_cut_bits={} witness={}",
        sig9(report.raw_min_cut_bits),
        format_cut(&report.witness_cut)
    )
    .unwrap();
    let side_b = report.witness_cut.side_b(&network);
    writeln!(out, "side_a={}", format_cut(&report.witness_cut)).unwrap();
    writeln!(out, "side_b={}", side_b.join(",")).unwrap();
    writeln!(out, "adjusted_bits={}", sig9(report.adjusted_bits)).unwrap();
    if let Some(p) = report.per_use_bits {
        writeln!(out, "per_use_bits={}", sig9(p)).unwrap();
    }
    Ok(out)
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub chain: ChainArgs,
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

pub fn simulate_cmd(args: &SimulateArgs) -> Result<String, CliError> {
    let chain = args.chain.chain()?;
    let result = simulate(&SimConfig {
        chain: chain.clone(),
        trials: args.trials,
        seed: args.seed,
    })?;
    let analytic = achievable_rate(&chain)?;
    let bound = per_use_bound(&chain)?;
    let mut out = String::new();
    writeln!(out, "trials={}", result.trials).unwrap();
    writeln!(
        out,
        "total_channel_uses={}",
        sig9(result.total_channel_uses)
    )
    .unwrap();
    writeln!(out, "rate_per_use={}", sig9(result.rate_per_use)).unwrap();
    writeln!(out, "stderr={}", sig9(result.stderr_rate)).unwrap();
    writeln!(out, "analytic_rate={}", sig9(analytic)).unwrap();
    writeln!(out, "bound_per_use={}", sig9(bound)).unwrap();
    writeln!(out, "ratio_to_bound={}", sig9(result.rate_per_use / bound)).unwrap();
    let means: Vec<String> = result
        .per_link_mean_uses
        .iter()
        .copied()
        .map(sig9)
        .collect();
    writeln!(out, "per_link_mean_uses={}", means.join(",")).unwrap();
    Ok(out)
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_name = "KM")]
    pub l_min_km: f64,
    #[arg(long, value_name = "KM")]
    pub l_max_km: f64,
    #[arg(long, value_name = "KM")]
    pub step_km: f64,
    #[arg(long, value_name = "N,N,...", value_parser = parse_count_list)]
    pub n_values: CountList,
    #[command(flatten)]
    pub attenuation: AttenuationArgs,
    #[arg(long, default_value_t = 2)]
    pub mode_factor: u32,
    #[arg(long, default_value_t = 0.0)]
    pub epsilon: f64,
    /// Use budget over which a nonzero epsilon is amortized.
    #[arg(long, value_name = "L")]
    pub uses_total: Option<f64>,
    /// Report time to the first bit at L_max for this clock rate.
    #[arg(long, value_name = "HZ")]
    pub clock_hz: Option<f64>,
    /// Adds Monte Carlo columns with this many trials per row.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: Option<u64>,
    #[arg(long, requires = "trials")]
    pub seed: Option<u64>,
    #[arg(long, value_name = "CSV")]
    pub out: PathBuf,
}

impl SweepArgs {
    pub fn spec(&self) -> Result<SweepSpec, CliError> {
        Ok(SweepSpec {
            l_min_km: self.l_min_km,
            l_max_km: self.l_max_km,
            step_km: self.step_km,
            n_values: self.n_values.0.clone(),
            attenuation: self.attenuation.attenuation(),
            mode_factor: self.mode_factor,
            epsilon: EpsilonParams::new(self.epsilon)?,
            uses_total: self.uses_total,
            clock_hz: self.clock_hz,
            monte_carlo: self.trials.map(|trials| MonteCarlo {
                trials,
                seed: self.seed.unwrap_or(0),
            }),
        })
    }
}

pub fn sweep_cmd(args: &SweepArgs) -> Result<String, CliError> {
    let spec = args.spec()?;
    let rows = sweep_rows(&spec)?;
    write_atomically(&args.out, &render_csv(&spec, &rows))?;
    let mut out = format!("wrote {} rows to {}\n", rows.len(), args.out.display());
    if let Some(clock) = spec.clock_hz {
        let l_max = rows
            .iter()
            .map(|r| r.l_km)
            .fold(f64::NEG_INFINITY, f64::max);
        for r in rows.iter().filter(|r| r.l_km == l_max) {
            let bound = time_to_first_bit(r.bound_per_use, clock)
                .map(sig9)
                .unwrap_or_else(|_| "inf".into());
            let achievable = time_to_first_bit(r.achievable_per_use, clock)
                .map(sig9)
                .unwrap_or_else(|_| "inf".into());
            writeln!(
                out,
                "n={} L_km={} seconds_to_first_bit_bound={bound} seconds_to_first_bit_achievable={achievable}",
                r.n,
                sig9(r.l_km)
            )
            .unwrap();
        }
    }
    Ok(out)
}

#[derive(Debug, Args)]
pub struct RouteArgs {
    #[arg(long, value_name = "FILE")]
    pub network: PathBuf,
}

pub fn route_cmd(args: &RouteArgs) -> Result<String, CliError> {
    let (network, _) = read_network(&args.network)?;
    let route = best_path(&network)?;
    let edges: Vec<String> = route.edges.iter().map(|e| e.to_string()).collect();
    Ok(format!(
        "path={}\nedges={}\nhops={}\nper_use_bits={}\n",
        route.nodes.join(","),
        edges.join(","),
        route.hops(),
        sig9(route.per_use_bound_bits)
    ))
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct ConvertArgs {
    /// Loss in dB/km to convert to an attenuation length.
    #[arg(long, value_name = "DB")]
    pub db_per_km: Option<f64>,
    /// Attenuation length in km to convert to dB/km.
    #[arg(long, value_name = "KM")]
    pub att_length_km: Option<f64>,
}

pub fn convert_cmd(args: &ConvertArgs) -> Result<String, CliError> {
    match (args.db_per_km, args.att_length_km) {
        (Some(db), _) => Ok(format!(
            "attenuation_length_km={}\n",
            sig9(db_to_attenuation_length(db)?)
        )),
        (None, Some(l)) => Ok(format!(
            "loss_db_per_km={}\n",
            sig9(attenuation_length_to_db(l)?)
        )),
        (None, None) => Err(CliError::Usage(
            "give --db-per-km or --att-length-km".into(),
        )),
    }
}

pub fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Bound(BoundCommand::Chain(a)) => bound_chain(a),
        Command::Bound(BoundCommand::Network(a)) => bound_network(a),
        Command::Simulate(a) => simulate_cmd(a),
        Command::Sweep(a) => sweep_cmd(a),
        Command::Route(a) => route_cmd(a),
        Command::Convert(a) => convert_cmd(a),
    }
}

/// Reads `QNETBOUND_THREADS`: unset means rayon's default.
pub fn thread_limit(value: Option<&str>) -> Result<Option<usize>, CliError> {
    match value {
        None => Ok(None),
        Some(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!(
                "QNETBOUND_THREADS must be a positive integer, got {v:?}"
            ))),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    fn run_args(args: &[&str]) -> Result<String, CliError> {
        let cli = Cli::try_parse_from(std::iter::once("qnetbound").chain(args.iter().copied()))
            .map_err(|e| CliError::Usage(e.to_string()))?;
        run(&cli)
    }

    #[test]
    fn clap_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn lossless_chain_is_unbounded() {
        let out = run_args(&["bound", "chain", "--length-km", "0", "--standard-fiber"]).unwrap();
        assert!(out.starts_with("per_use_bits=inf\n"), "{out}");
    }

    #[test]
    fn two_hundred_km_one_repeater() {
        let out = run_args(&[
            "bound",
            "chain",
            "--length-km",
            "200",
            "--nodes-n",
            "1",
            "--loss-db-per-km",
            "0.2",
            "--epsilon",
            "0",
        ])
        .unwrap();
        assert!(out.starts_with("per_use_bits=0.0288548627\n"), "{out}");
        assert!(out.contains("witness=A\n"), "{out}");
    }

    #[test]
    fn large_epsilon_is_a_domain_error() {
        let err = run_args(&[
            "bound",
            "chain",
            "--length-km",
            "200",
            "--standard-fiber",
            "--epsilon",
            "0.01",
        ])
        .unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert!(err.to_string().contains("epsilon too large"));
    }

    #[test]
    fn attenuation_is_required_and_exclusive() {
        assert!(run_args(&["bound", "chain", "--length-km", "10"]).is_err());
        assert!(run_args(&[
            "bound",
            "chain",
            "--length-km",
            "10",
            "--standard-fiber",
            "--loss-db-per-km",
            "0.3"
        ])
        .is_err());
    }

    #[test]
    fn spacings_must_agree_with_length() {
        let ok = run_args(&[
            "bound",
            "chain",
            "--spacings",
            "100,100",
            "--standard-fiber",
        ])
        .unwrap();
        assert!(ok.starts_with("per_use_bits=0.0288548627"), "{ok}");
        assert!(!ok.contains("approx"));
        let err = run_args(&[
            "bound",
            "chain",
            "--spacings",
            "100,100",
            "--length-km",
            "150",
            "--standard-fiber",
        ])
        .unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn convert_round_trip() {
        let out = run_args(&["convert", "--db-per-km", "0.2"]).unwrap();
        assert_eq!(out, "attenuation_length_km=21.7147241\n");
        let out = run_args(&["convert", "--att-length-km", "21.714724095162591"]).unwrap();
        assert_eq!(out, "loss_db_per_km=0.2\n");
    }

    #[test]
    fn thread_limit_parsing() {
        assert_eq!(thread_limit(None).unwrap(), None);
        assert_eq!(thread_limit(Some("4")).unwrap(), Some(4));
        assert!(thread_limit(Some("0")).is_err());
        assert!(thread_limit(Some("many")).is_err());
    }
}
