//! The three analyses behind the CLI subcommands: per-size access
//! statistics, per-hop link metrics, and end-to-end chain evaluation.

use anyhow::Result;

use cislunar_core::access::{
    access_intervals, access_stats, intersect_chain, union_access, AccessStats, Interval,
};
use cislunar_core::hybrid::{evaluate_chain, ChainMode, ChainReport, Hop};
use cislunar_core::linkbudget::{evaluate_link, LinkMetricsSample};
use cislunar_core::TimeGrid;

use crate::geometry::Geometry;
use crate::scenario::Scenario;

/// Access intervals and statistics for one hop of one study size.
#[derive(Debug, Clone)]
pub struct HopAccess {
    pub intervals: Vec<Interval>,
    pub stats: AccessStats,
}

/// Per-constellation-size access results.
#[derive(Debug, Clone)]
pub struct SizeAccess {
    pub planes: u32,
    pub sats_per_plane: u32,
    /// Union over satellites: at least one satellite sees the station.
    pub e2l: HopAccess,
    /// Union over satellites: at least one satellite sees the Gateway.
    pub l2g: HopAccess,
    pub g2m: HopAccess,
    /// Simultaneous access of all three hops.
    pub chain: HopAccess,
}

#[derive(Debug, Clone)]
pub struct AccessStudy {
    pub sizes: Vec<SizeAccess>,
}

fn hop_access(intervals: Vec<Interval>) -> Result<HopAccess> {
    let stats = access_stats(&intervals)?;
    Ok(HopAccess { intervals, stats })
}

/// Recomputes the Walker fleet for every requested size and extracts
/// per-hop and chain access.
pub fn run_access_study(scenario: &Scenario, sizes: &[(u32, u32)]) -> Result<AccessStudy> {
    let grid = grid(scenario)?;
    let mut out = Vec::with_capacity(sizes.len());
    for &(planes, sats_per_plane) in sizes {
        let geo = Geometry::with_walker(scenario, planes, sats_per_plane);

        let mut e2l_per_sat = Vec::with_capacity(geo.satellite_count());
        let mut l2g_per_sat = Vec::with_capacity(geo.satellite_count());
        for sat in 0..geo.satellite_count() {
            e2l_per_sat.push(access_intervals(
                |t| geo.e2l_visible(sat, t),
                &grid,
                scenario.refine_tol_s,
            )?);
            l2g_per_sat.push(access_intervals(
                |t| geo.l2g_visible(sat, t),
                &grid,
                scenario.refine_tol_s,
            )?);
        }
        let e2l = union_access(&e2l_per_sat);
        let l2g = union_access(&l2g_per_sat);
        let g2m = access_intervals(|t| geo.g2m_visible(t), &grid, scenario.refine_tol_s)?;
        let chain = intersect_chain(&[e2l.clone(), l2g.clone(), g2m.clone()]);

        out.push(SizeAccess {
            planes,
            sats_per_plane,
            e2l: hop_access(e2l)?,
            l2g: hop_access(l2g)?,
            g2m: hop_access(g2m)?,
            chain: hop_access(chain)?,
        });
    }
    Ok(AccessStudy { sizes: out })
}

/// Time series of RF and FSO metrics for one hop, sampled on the grid
/// inside the hop's own access windows.
#[derive(Debug, Clone)]
pub struct HopLinkSeries {
    pub hop: Hop,
    pub rf: Vec<LinkMetricsSample>,
    pub fso: Vec<LinkMetricsSample>,
}

impl HopLinkSeries {
    pub fn summary(&self, technology_rf: bool) -> LinkSummary {
        let series = if technology_rf { &self.rf } else { &self.fso };
        LinkSummary::from_series(series)
    }
}

/// Min/mean/max BER plus mean distance and delay, mirroring the derived
/// columns of the case-study table.
#[derive(Debug, Clone, Copy)]
pub struct LinkSummary {
    pub ber_min: f64,
    pub ber_mean: f64,
    pub ber_max: f64,
    pub mean_distance_km: f64,
    pub mean_delay_s: f64,
    pub mean_snr_db: f64,
    pub mean_fspl_db: f64,
    pub samples: usize,
}

impl LinkSummary {
    fn from_series(series: &[LinkMetricsSample]) -> LinkSummary {
        let n = series.len().max(1) as f64;
        let mut s = LinkSummary {
            ber_min: f64::INFINITY,
            ber_mean: 0.0,
            ber_max: f64::NEG_INFINITY,
            mean_distance_km: 0.0,
            mean_delay_s: 0.0,
            mean_snr_db: 0.0,
            mean_fspl_db: 0.0,
            samples: series.len(),
        };
        for m in series {
            s.ber_min = s.ber_min.min(m.ber);
            s.ber_max = s.ber_max.max(m.ber);
            s.ber_mean += m.ber / n;
            s.mean_distance_km += m.distance_km / n;
            s.mean_delay_s += m.delay_s / n;
            s.mean_snr_db += m.snr_db / n;
            s.mean_fspl_db += m.fspl_db / n;
        }
        if series.is_empty() {
            s.ber_min = 0.0;
            s.ber_max = 0.0;
        }
        s
    }
}

#[derive(Debug, Clone)]
pub struct LinkStudy {
    pub hops: Vec<HopLinkSeries>,
}

/// Evaluates both technologies of every hop at each grid sample inside the
/// hop's access windows (using the scenario's own constellation size).
pub fn run_link_study(scenario: &Scenario) -> Result<LinkStudy> {
    let grid = grid(scenario)?;
    let geo = Geometry::new(scenario);
    let access = run_access_study(
        scenario,
        &[(scenario.walker.planes, scenario.walker.sats_per_plane)],
    )?;
    let size = &access.sizes[0];

    let mut hops = Vec::new();
    for hop in Hop::ALL {
        let windows = match hop {
            Hop::E2l => &size.e2l.intervals,
            Hop::L2g => &size.l2g.intervals,
            Hop::G2m => &size.g2m.intervals,
        };
        let config = scenario.hop(hop);
        let mut rf = Vec::new();
        let mut fso = Vec::new();
        for t in grid.times() {
            if !windows.iter().any(|iv| t >= iv.start_s && t <= iv.stop_s) {
                continue;
            }
            let d = geo.hop_distance_km(hop, t);
            rf.push(evaluate_link(
                &config.rf_tx,
                &config.rf_rx,
                t,
                d,
                config.atmospheric_rf_db,
            )?);
            fso.push(evaluate_link(
                &config.fso_tx,
                &config.fso_rx,
                t,
                d,
                config.atmospheric_fso_db,
            )?);
        }
        hops.push(HopLinkSeries { hop, rf, fso });
    }
    Ok(LinkStudy { hops })
}

/// Chain access for the scenario's own constellation plus one report per
/// configured pattern.
pub fn run_chain_study(scenario: &Scenario) -> Result<Vec<ChainReport>> {
    let grid = grid(scenario)?;
    let access = run_access_study(
        scenario,
        &[(scenario.walker.planes, scenario.walker.sats_per_plane)],
    )?;
    let chain_intervals = &access.sizes[0].chain.intervals;
    let geo = Geometry::new(scenario);

    let mut reports = Vec::new();
    for mode in &scenario.forced_patterns {
        reports.push(run_chain_mode(
            scenario,
            &geo,
            chain_intervals,
            &grid,
            *mode,
        )?);
    }
    Ok(reports)
}

fn run_chain_mode(
    scenario: &Scenario,
    geo: &Geometry,
    chain_intervals: &[Interval],
    grid: &TimeGrid,
    mode: ChainMode,
) -> Result<ChainReport> {
    Ok(evaluate_chain(
        &scenario.hops,
        chain_intervals,
        grid,
        &scenario.policy,
        mode,
        scenario.relay_processing_delay_s,
        |hop, t| geo.hop_distance_km(hop, t),
    )?)
}

fn grid(scenario: &Scenario) -> Result<TimeGrid> {
    Ok(TimeGrid::new(
        scenario.epoch,
        scenario.duration_s,
        scenario.step_s,
    )?)
}
