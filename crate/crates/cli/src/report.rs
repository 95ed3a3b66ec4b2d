//! Report emission: fixed-format CSV files and a markdown summary.
//!
//! Formatting is pinned (3 decimals for seconds and kilometers, 2 for dB,
//! 6 significant digits scientific for BER) so repeated runs of the same
//! scenario produce byte-identical outputs.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};

use cislunar_core::hybrid::ChainReport;

use crate::scenario::Scenario;
use crate::study::{AccessStudy, LinkStudy, SizeAccess};

pub fn fmt_seconds(v: f64) -> String {
    format!("{v:.3}")
}

pub fn fmt_db(v: f64) -> String {
    format!("{v:.2}")
}

pub fn fmt_km(v: f64) -> String {
    format!("{v:.3}")
}

/// 6 significant digits, scientific.
pub fn fmt_ber(v: f64) -> String {
    format!("{v:.5e}")
}

fn size_label(size: &SizeAccess) -> String {
    format!("{}x{}", size.planes, size.sats_per_plane)
}

// ---------------------------------------------------------------------------
// CSV renderers (string-level, so tests can golden-check without IO)
// ---------------------------------------------------------------------------

pub fn render_access_intervals_csv(study: &AccessStudy) -> String {
    let mut out = String::from("pair,start_s,stop_s,duration_s\n");
    for size in &study.sizes {
        let label = size_label(size);
        for (hop, access) in [
            ("E2L", &size.e2l),
            ("L2G", &size.l2g),
            ("G2M", &size.g2m),
            ("CHAIN", &size.chain),
        ] {
            for iv in &access.intervals {
                let _ = writeln!(
                    out,
                    "{hop}_{label},{},{},{}",
                    fmt_seconds(iv.start_s),
                    fmt_seconds(iv.stop_s),
                    fmt_seconds(iv.duration_s()),
                );
            }
        }
    }
    out
}

pub fn render_access_stats_csv(study: &AccessStudy) -> String {
    let mut out = String::from("pair,count,min_s,mean_s,max_s,sum_s\n");
    for size in &study.sizes {
        let label = size_label(size);
        for (hop, access) in [
            ("E2L", &size.e2l),
            ("L2G", &size.l2g),
            ("G2M", &size.g2m),
            ("CHAIN", &size.chain),
        ] {
            let s = &access.stats;
            let opt = |v: Option<f64>| v.map(fmt_seconds).unwrap_or_default();
            let _ = writeln!(
                out,
                "{hop}_{label},{},{},{},{},{}",
                s.count,
                opt(s.min_s),
                opt(s.mean_s),
                opt(s.max_s),
                fmt_seconds(s.sum_s),
            );
        }
    }
    out
}

pub fn render_link_metrics_csv(study: &LinkStudy) -> String {
    let mut out =
        String::from("t_s,hop,technology,distance_km,fspl_db,pr_dbw,snr_db,ebn0_db,ber,delay_s\n");
    for hop in &study.hops {
        for (tech, series) in [("RF", &hop.rf), ("FSO", &hop.fso)] {
            for m in series {
                let _ = writeln!(
                    out,
                    "{},{},{tech},{},{},{},{},{},{},{}",
                    fmt_seconds(m.t_s),
                    hop.hop.label(),
                    fmt_km(m.distance_km),
                    fmt_db(m.fspl_db),
                    fmt_db(m.received_power_dbw),
                    fmt_db(m.snr_db),
                    fmt_db(m.eb_n0_db),
                    fmt_ber(m.ber),
                    fmt_seconds(m.delay_s),
                );
            }
        }
    }
    out
}

pub fn render_chain_summary_csv(reports: &[ChainReport]) -> String {
    let mut out = String::from(
        "pattern,chain_access_s,bottleneck_rate_mbps,mean_e2e_delay_s,mean_e2e_ber,\
         volume_e2l_gb,volume_l2g_gb,volume_g2m_gb\n",
    );
    for r in reports {
        let _ = writeln!(
            out,
            "{},{},{:.3},{},{},{:.3},{:.3},{:.3}",
            r.mode.label(),
            fmt_seconds(r.chain_access_s),
            r.bottleneck_rate_mbps,
            fmt_seconds(r.mean_e2e_delay_s),
            fmt_ber(r.mean_e2e_ber),
            r.volume_gb[0],
            r.volume_gb[1],
            r.volume_gb[2],
        );
    }
    out
}

// ---------------------------------------------------------------------------
// Markdown summary
// ---------------------------------------------------------------------------

pub fn render_summary_md(
    scenario: &Scenario,
    access: &AccessStudy,
    links: &LinkStudy,
    chains: &[ChainReport],
) -> String {
    let mut md = String::new();
    let _ = writeln!(md, "# Scenario report: {}\n", scenario.name);
    let _ = writeln!(
        md,
        "- epoch: JD {}\n- duration: {} s, grid step {} s\n- station: ({}, {}) deg, \
         facility: ({}, {}) deg\n- constellation: {} planes x {} sats (F={})\n",
        scenario.epoch.julian_date(),
        scenario.duration_s,
        scenario.step_s,
        scenario.earth_station.latitude_deg,
        scenario.earth_station.longitude_deg,
        scenario.lunar_facility.latitude_deg,
        scenario.lunar_facility.longitude_deg,
        scenario.walker.planes,
        scenario.walker.sats_per_plane,
        scenario.walker.phasing,
    );

    let _ = writeln!(md, "## Access statistics\n");
    let _ = writeln!(
        md,
        "| pair | count | min (s) | mean (s) | max (s) | sum (s) | day fraction |"
    );
    let _ = writeln!(md, "|---|---|---|---|---|---|---|");
    for size in &access.sizes {
        let label = size_label(size);
        for (hop, a) in [
            ("E2L", &size.e2l),
            ("L2G", &size.l2g),
            ("G2M", &size.g2m),
            ("chain", &size.chain),
        ] {
            let s = &a.stats;
            let opt = |v: Option<f64>| v.map(fmt_seconds).unwrap_or_else(|| "-".into());
            let _ = writeln!(
                md,
                "| {hop} {label} | {} | {} | {} | {} | {} | {:.2}% |",
                s.count,
                opt(s.min_s),
                opt(s.mean_s),
                opt(s.max_s),
                fmt_seconds(s.sum_s),
                100.0 * s.sum_s / scenario.duration_s,
            );
        }
    }

    let _ = writeln!(md, "\n## Link metrics by hop\n");
    let _ = writeln!(
        md,
        "| hop | technology | samples | mean distance (km) | mean FSPL (dB) | mean SNR (dB) | \
         BER min | BER mean | BER max | mean delay (s) |"
    );
    let _ = writeln!(md, "|---|---|---|---|---|---|---|---|---|---|");
    for hop in &links.hops {
        for rf in [true, false] {
            let s = hop.summary(rf);
            let _ = writeln!(
                md,
                "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |",
                hop.hop.label(),
                if rf { "RF" } else { "FSO" },
                s.samples,
                fmt_km(s.mean_distance_km),
                fmt_db(s.mean_fspl_db),
                fmt_db(s.mean_snr_db),
                fmt_ber(s.ber_min),
                fmt_ber(s.ber_mean),
                fmt_ber(s.ber_max),
                fmt_seconds(s.mean_delay_s),
            );
        }
    }

    let _ = writeln!(md, "\n## Chain evaluation\n");
    let _ = writeln!(
        md,
        "| pattern | chain access (s) | bottleneck (Mbps) | mean E2E delay (s) | mean E2E BER | \
         volume E2L (GB) | volume L2G (GB) | volume G2M (GB) | FSO share |"
    );
    let _ = writeln!(md, "|---|---|---|---|---|---|---|---|---|");
    for r in chains {
        let samples = r.samples.len().max(1);
        let fso_share: f64 =
            r.fso_selected.iter().map(|&c| c as f64).sum::<f64>() / (3.0 * samples as f64);
        let _ = writeln!(
            md,
            "| {} | {} | {:.3} | {} | {} | {:.3} | {:.3} | {:.3} | {:.0}% |",
            r.mode.label(),
            fmt_seconds(r.chain_access_s),
            r.bottleneck_rate_mbps,
            fmt_seconds(r.mean_e2e_delay_s),
            fmt_ber(r.mean_e2e_ber),
            r.volume_gb[0],
            r.volume_gb[1],
            r.volume_gb[2],
            100.0 * fso_share,
        );
    }
    md
}

// ---------------------------------------------------------------------------
// File emission
// ---------------------------------------------------------------------------

/// Writes a file atomically: content lands in a sibling temp file first,
/// then replaces the target.
fn write_atomic(path: &Path, content: &str) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, content).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("replacing {}", path.display()))?;
    Ok(())
}

pub fn write_access_reports(dir: &Path, study: &AccessStudy) -> Result<()> {
    fs::create_dir_all(dir)?;
    write_atomic(
        &dir.join("access_intervals.csv"),
        &render_access_intervals_csv(study),
    )?;
    write_atomic(
        &dir.join("access_stats.csv"),
        &render_access_stats_csv(study),
    )?;
    Ok(())
}

pub fn write_link_reports(dir: &Path, study: &LinkStudy) -> Result<()> {
    fs::create_dir_all(dir)?;
    write_atomic(
        &dir.join("link_metrics.csv"),
        &render_link_metrics_csv(study),
    )
}

pub fn write_chain_reports(dir: &Path, reports: &[ChainReport]) -> Result<()> {
    fs::create_dir_all(dir)?;
    write_atomic(
        &dir.join("chain_summary.csv"),
        &render_chain_summary_csv(reports),
    )
}

pub fn write_summary(
    dir: &Path,
    scenario: &Scenario,
    access: &AccessStudy,
    links: &LinkStudy,
    chains: &[ChainReport],
) -> Result<()> {
    fs::create_dir_all(dir)?;
    write_atomic(
        &dir.join("summary.md"),
        &render_summary_md(scenario, access, links, chains),
    )
}
