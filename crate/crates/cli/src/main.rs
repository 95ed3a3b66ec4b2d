//! Batch scenario runner for the cislunar link simulator.
//!
//! Subcommands map onto the two studies plus their combination:
//! `access` (constellation visibility statistics), `link` (per-hop RF/FSO
//! metrics), `chain` (end-to-end hybrid evaluation), and `report` (all of
//! the above plus a markdown summary).

// `!(x > 0.0)` instead of `x <= 0.0`: the negated form also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use cislunar_cli::scenario::{parse_size, Scenario, ScenarioError};
use cislunar_cli::{report, study};

#[derive(Parser)]
#[command(
    name = "cislunar",
    version,
    about = "Hybrid RF/FSO Earth-Moon relay chain simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Scenario file (TOML). Defaults to the bundled case study.
    #[arg(long)]
    scenario: Option<PathBuf>,
    /// Output directory for CSV/markdown reports.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Override the scenario grid step, seconds.
    #[arg(long)]
    step: Option<f64>,
    /// Constellation sizes for the access study, e.g. 1x1,2x2,3x3,4x4.
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<String>>,
}

#[derive(Subcommand)]
enum Command {
    /// Access intervals and statistics per constellation size.
    Access(CommonArgs),
    /// Per-hop RF and FSO link metrics over each hop's access windows.
    Link(CommonArgs),
    /// End-to-end chain evaluation per switching pattern.
    Chain(CommonArgs),
    /// Everything, plus summary.md.
    Report(CommonArgs),
}

/// Exit code 2: scenario/validation problems. Exit code 1: internal faults.
enum CliError {
    Validation(String),
    Internal(anyhow::Error),
}

impl From<ScenarioError> for CliError {
    fn from(e: ScenarioError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Internal(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Access(args) => run_access(args),
        Command::Link(args) => run_link(args),
        Command::Chain(args) => run_chain(args),
        Command::Report(args) => run_report(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Validation(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
        Err(CliError::Internal(err)) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn load_scenario(args: &CommonArgs) -> Result<Scenario, CliError> {
    let text = match &args.scenario {
        Some(path) => std::fs::read_to_string(path)
            .with_context(|| format!("reading scenario {}", path.display()))
            .map_err(|e| CliError::Validation(format!("{e:#}")))?,
        None => cislunar_cli::PAPER_CASE_STUDY_TOML.to_string(),
    };
    let mut scenario = Scenario::load(&text)?;
    if let Some(step) = args.step {
        if !(step > 0.0 && step <= scenario.duration_s) {
            return Err(CliError::Validation(format!(
                "--step must satisfy 0 < step <= duration (got {step})"
            )));
        }
        scenario.step_s = step;
        scenario.refine_tol_s = scenario.refine_tol_s.min(step);
    }
    Ok(scenario)
}

fn study_sizes(args: &CommonArgs, scenario: &Scenario) -> Result<Vec<(u32, u32)>, CliError> {
    match &args.sizes {
        None => Ok(scenario.study_sizes.clone()),
        Some(names) => {
            let mut sizes = Vec::new();
            for name in names {
                match parse_size(name) {
                    Some(ps) => sizes.push(ps),
                    None => {
                        return Err(CliError::Validation(format!(
                            "--sizes entries look like PxS (got {name})"
                        )))
                    }
                }
            }
            Ok(sizes)
        }
    }
}

fn run_access(args: &CommonArgs) -> Result<(), CliError> {
    let scenario = load_scenario(args)?;
    let sizes = study_sizes(args, &scenario)?;
    let access = study::run_access_study(&scenario, &sizes).map_err(CliError::Internal)?;
    report::write_access_reports(&args.out, &access).map_err(CliError::Internal)?;
    print_access_overview(&access);
    Ok(())
}

fn run_link(args: &CommonArgs) -> Result<(), CliError> {
    let scenario = load_scenario(args)?;
    let links = study::run_link_study(&scenario).map_err(CliError::Internal)?;
    report::write_link_reports(&args.out, &links).map_err(CliError::Internal)?;
    for hop in &links.hops {
        for rf in [true, false] {
            let s = hop.summary(rf);
            println!(
                "{} {}: {} samples, mean distance {:.1} km, BER mean {:.3e}",
                hop.hop.label(),
                if rf { "RF " } else { "FSO" },
                s.samples,
                s.mean_distance_km,
                s.ber_mean,
            );
        }
    }
    Ok(())
}

fn run_chain(args: &CommonArgs) -> Result<(), CliError> {
    let scenario = load_scenario(args)?;
    let chains = study::run_chain_study(&scenario).map_err(CliError::Internal)?;
    report::write_chain_reports(&args.out, &chains).map_err(CliError::Internal)?;
    for r in &chains {
        println!(
            "{:9} chain access {:.3} s, bottleneck {:.3} Mbps, volumes [{:.3}, {:.3}, {:.3}] GB",
            r.mode.label(),
            r.chain_access_s,
            r.bottleneck_rate_mbps,
            r.volume_gb[0],
            r.volume_gb[1],
            r.volume_gb[2],
        );
    }
    Ok(())
}

fn run_report(args: &CommonArgs) -> Result<(), CliError> {
    let scenario = load_scenario(args)?;
    let sizes = study_sizes(args, &scenario)?;
    let access = study::run_access_study(&scenario, &sizes).map_err(CliError::Internal)?;
    let links = study::run_link_study(&scenario).map_err(CliError::Internal)?;
    let chains = study::run_chain_study(&scenario).map_err(CliError::Internal)?;
    report::write_access_reports(&args.out, &access).map_err(CliError::Internal)?;
    report::write_link_reports(&args.out, &links).map_err(CliError::Internal)?;
    report::write_chain_reports(&args.out, &chains).map_err(CliError::Internal)?;
    report::write_summary(&args.out, &scenario, &access, &links, &chains)
        .map_err(CliError::Internal)?;
    print_access_overview(&access);
    println!("reports written to {}", args.out.display());
    Ok(())
}

fn print_access_overview(access: &study::AccessStudy) {
    for size in &access.sizes {
        println!(
            "{}x{}: E2L {:9.3} s ({} windows), L2G {:9.3} s, G2M {:9.3} s, chain {:9.3} s",
            size.planes,
            size.sats_per_plane,
            size.e2l.stats.sum_s,
            size.e2l.stats.count,
            size.l2g.stats.sum_s,
            size.g2m.stats.sum_s,
            size.chain.stats.sum_s,
        );
    }
}
