//! Hard-switching link selection and end-to-end chain evaluation.
//!
//! Relays operate decode-store-and-forward, so hops are independent: the
//! end-to-end bit error rate composes as 1 - prod(1 - ber_hop), the delay
//! as the sum of hop delays plus per-relay processing, and the deliverable
//! rate as the bottleneck (minimum) across hops.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::string::String;
use alloc::vec::Vec;

use crate::access::Interval;
use crate::error::{Error, Result};
use crate::linkbudget::{evaluate_link, LinkMetricsSample, Role, Technology, TransceiverSpec};
use crate::time::TimeGrid;

/// Hops of the Earth-to-Moon chain, in order.
pub const HOP_COUNT: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hop {
    /// Earth station to LEO constellation (proximity link).
    E2l = 0,
    /// Constellation to lunar Gateway (trunk link).
    L2g = 1,
    /// Gateway to lunar facility (proximity link).
    G2m = 2,
}

impl Hop {
    pub const ALL: [Hop; HOP_COUNT] = [Hop::E2l, Hop::L2g, Hop::G2m];

    pub fn label(self) -> &'static str {
        match self {
            Hop::E2l => "E2L",
            Hop::L2g => "L2G",
            Hop::G2m => "G2M",
        }
    }
}

/// RF and FSO transceiver pairs for one hop, with per-technology
/// atmospheric loss terms (a configurable stand-in for full atmospheric
/// models on Earth-space hops).
#[derive(Debug, Clone, PartialEq)]
pub struct HopConfig {
    pub hop: Hop,
    pub rf_tx: TransceiverSpec,
    pub rf_rx: TransceiverSpec,
    pub fso_tx: TransceiverSpec,
    pub fso_rx: TransceiverSpec,
    pub atmospheric_rf_db: f64,
    pub atmospheric_fso_db: f64,
}

impl HopConfig {
    pub fn validate(&self) -> Result<()> {
        for (spec, tech, role) in [
            (&self.rf_tx, Technology::Rf, Role::Tx),
            (&self.rf_rx, Technology::Rf, Role::Rx),
            (&self.fso_tx, Technology::Fso, Role::Tx),
            (&self.fso_rx, Technology::Fso, Role::Rx),
        ] {
            spec.validate()?;
            if spec.technology != tech || spec.role != role {
                return Err(Error::TechnologyMismatch);
            }
        }
        Ok(())
    }
}

/// Which technology carries the hop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkChoice {
    Rf,
    Fso,
}

impl LinkChoice {
    pub fn label(self) -> &'static str {
        match self {
            LinkChoice::Rf => "RF",
            LinkChoice::Fso => "OP",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preference {
    /// FSO whenever its BER qualifies; RF is the always-available fallback.
    FsoIfQualified,
    RfOnly,
    FsoOnly,
}

/// Hard-switching policy: per hop and per sample, FSO is selected exactly
/// when its instantaneous BER meets the threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwitchPolicy {
    pub ber_threshold: f64,
    pub prefer: Preference,
}

impl Default for SwitchPolicy {
    fn default() -> Self {
        SwitchPolicy {
            ber_threshold: 1e-6,
            prefer: Preference::FsoIfQualified,
        }
    }
}

impl SwitchPolicy {
    pub fn validate(&self) -> Result<()> {
        if !(self.ber_threshold > 0.0 && self.ber_threshold < 0.5) {
            return Err(Error::Domain {
                what: "switch BER threshold must lie in (0, 0.5)",
                value: self.ber_threshold,
            });
        }
        Ok(())
    }
}

/// Selects the technology for one hop at one instant.
pub fn select_link(
    rf: &LinkMetricsSample,
    fso: &LinkMetricsSample,
    policy: &SwitchPolicy,
) -> LinkChoice {
    let _ = rf;
    match policy.prefer {
        Preference::RfOnly => LinkChoice::Rf,
        Preference::FsoOnly => LinkChoice::Fso,
        Preference::FsoIfQualified => {
            if fso.ber <= policy.ber_threshold {
                LinkChoice::Fso
            } else {
                LinkChoice::Rf
            }
        }
    }
}

/// Chain evaluation mode: a forced per-hop technology pattern (for
/// all-RF / all-FSO / mixed comparisons) or policy-driven switching.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainMode {
    Forced([LinkChoice; HOP_COUNT]),
    Policy,
}

impl ChainMode {
    pub fn label(&self) -> String {
        match self {
            ChainMode::Policy => String::from("policy"),
            ChainMode::Forced(choices) => {
                let mut s = String::new();
                for (i, c) in choices.iter().enumerate() {
                    if i > 0 {
                        s.push('-');
                    }
                    s.push_str(c.label());
                }
                s
            }
        }
    }
}

/// Decimal megabit-to-gigabyte accounting: duration * rate / 8 / 1000.
pub fn data_volume_gb(duration_s: f64, rate_mbps: f64) -> f64 {
    duration_s * rate_mbps / 8.0 / 1000.0
}

/// Per-sample record of an evaluated chain instant.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainSample {
    pub t_s: f64,
    /// Portion of the chain-access window this sample stands for, s.
    pub weight_s: f64,
    pub choices: [LinkChoice; HOP_COUNT],
    pub rf: [LinkMetricsSample; HOP_COUNT],
    pub fso: [LinkMetricsSample; HOP_COUNT],
    pub selected_rate_mbps: [f64; HOP_COUNT],
    pub bottleneck_rate_mbps: f64,
    pub e2e_ber: f64,
    pub e2e_delay_s: f64,
}

/// Aggregated end-to-end results for one chain mode.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainReport {
    pub mode: ChainMode,
    pub chain_access_s: f64,
    /// True when the chain was never accessible; all aggregates are zero.
    pub empty: bool,
    pub samples: Vec<ChainSample>,
    /// Time-weighted mean of the per-sample bottleneck rate, Mbps.
    pub bottleneck_rate_mbps: f64,
    pub mean_e2e_delay_s: f64,
    pub mean_e2e_ber: f64,
    /// Deliverable volume per hop over the chain-access time, GB/day units.
    pub volume_gb: [f64; HOP_COUNT],
    /// Samples carried by FSO, per hop.
    pub fso_selected: [usize; HOP_COUNT],
}

/// Evaluates the chain over its access windows.
///
/// `hop_distance_km(hop, t)` supplies per-sample geometry. Within each
/// access window, metrics are evaluated at the grid samples it contains
/// (or its midpoint when it holds none) and aggregated with trapezoid-style
/// weights that sum exactly to the window duration, so constant-rate
/// volumes reproduce duration*rate arithmetic bit-for-bit.
pub fn evaluate_chain<F>(
    hops: &[HopConfig; HOP_COUNT],
    chain_intervals: &[Interval],
    grid: &TimeGrid,
    policy: &SwitchPolicy,
    mode: ChainMode,
    relay_processing_delay_s: f64,
    hop_distance_km: F,
) -> Result<ChainReport>
where
    F: Fn(Hop, f64) -> f64,
{
    for hop in hops {
        hop.validate()?;
    }
    policy.validate()?;

    let mut samples = Vec::new();
    let mut chain_access_s = 0.0;

    for interval in chain_intervals {
        chain_access_s += interval.duration_s();
        let points = sample_points(interval, grid);
        for (t, weight) in points {
            let mut rf = [None; HOP_COUNT];
            let mut fso = [None; HOP_COUNT];
            let mut choices = [LinkChoice::Rf; HOP_COUNT];
            let mut rates = [0.0; HOP_COUNT];
            let mut e2e_delay = 2.0 * relay_processing_delay_s;
            let mut prod_ok = 1.0;
            let mut bottleneck = f64::INFINITY;

            for (i, hop) in hops.iter().enumerate() {
                let d = hop_distance_km(Hop::ALL[i], t);
                let rf_m = evaluate_link(&hop.rf_tx, &hop.rf_rx, t, d, hop.atmospheric_rf_db)?;
                let fso_m = evaluate_link(&hop.fso_tx, &hop.fso_rx, t, d, hop.atmospheric_fso_db)?;
                let choice = match mode {
                    ChainMode::Forced(forced) => forced[i],
                    ChainMode::Policy => select_link(&rf_m, &fso_m, policy),
                };
                let (selected, rate) = match choice {
                    LinkChoice::Rf => (&rf_m, hop.rf_tx.data_rate_mbps),
                    LinkChoice::Fso => (&fso_m, hop.fso_tx.data_rate_mbps),
                };
                e2e_delay += selected.delay_s;
                prod_ok *= 1.0 - selected.ber;
                bottleneck = bottleneck.min(rate);
                choices[i] = choice;
                rates[i] = rate;
                rf[i] = Some(rf_m);
                fso[i] = Some(fso_m);
            }

            samples.push(ChainSample {
                t_s: t,
                weight_s: weight,
                choices,
                rf: [rf[0].unwrap(), rf[1].unwrap(), rf[2].unwrap()],
                fso: [fso[0].unwrap(), fso[1].unwrap(), fso[2].unwrap()],
                selected_rate_mbps: rates,
                bottleneck_rate_mbps: bottleneck,
                e2e_ber: 1.0 - prod_ok,
                e2e_delay_s: e2e_delay,
            });
        }
    }

    if samples.is_empty() {
        return Ok(ChainReport {
            mode,
            chain_access_s,
            empty: true,
            samples,
            bottleneck_rate_mbps: 0.0,
            mean_e2e_delay_s: 0.0,
            mean_e2e_ber: 0.0,
            volume_gb: [0.0; HOP_COUNT],
            fso_selected: [0; HOP_COUNT],
        });
    }

    let total_weight: f64 = samples.iter().map(|s| s.weight_s).sum();
    let mut volume = [0.0; HOP_COUNT];
    let mut fso_selected = [0usize; HOP_COUNT];
    let mut mean_rate = 0.0;
    let mut mean_delay = 0.0;
    let mut mean_ber = 0.0;
    for s in &samples {
        mean_rate += s.weight_s * s.bottleneck_rate_mbps;
        mean_delay += s.weight_s * s.e2e_delay_s;
        mean_ber += s.weight_s * s.e2e_ber;
        for i in 0..HOP_COUNT {
            volume[i] += data_volume_gb(s.weight_s, s.selected_rate_mbps[i]);
            if s.choices[i] == LinkChoice::Fso {
                fso_selected[i] += 1;
            }
        }
    }

    Ok(ChainReport {
        mode,
        chain_access_s,
        empty: false,
        samples,
        bottleneck_rate_mbps: mean_rate / total_weight,
        mean_e2e_delay_s: mean_delay / total_weight,
        mean_e2e_ber: mean_ber / total_weight,
        volume_gb: volume,
        fso_selected,
    })
}

/// Grid samples inside an interval with weights summing exactly to the
/// interval duration. Windows that contain no grid sample are represented
/// by their midpoint.
fn sample_points(interval: &Interval, grid: &TimeGrid) -> Vec<(f64, f64)> {
    let step = grid.step_s();
    let first_idx = (interval.start_s / step).ceil() as i64;
    let last_idx = (interval.stop_s / step).floor() as i64;
    let times: Vec<f64> = (first_idx..=last_idx)
        .map(|i| i as f64 * step)
        .filter(|&t| t >= interval.start_s && t <= interval.stop_s)
        .collect();

    if times.is_empty() {
        return alloc::vec![(
            0.5 * (interval.start_s + interval.stop_s),
            interval.duration_s()
        )];
    }
    if times.len() == 1 {
        return alloc::vec![(times[0], interval.duration_s())];
    }

    let n = times.len();
    let mut weighted = Vec::with_capacity(n);
    for (k, &t) in times.iter().enumerate() {
        let w = if k == 0 {
            (times[1] - times[0]) / 2.0 + (times[0] - interval.start_s)
        } else if k == n - 1 {
            (times[n - 1] - times[n - 2]) / 2.0 + (interval.stop_s - times[n - 1])
        } else {
            (times[k + 1] - times[k - 1]) / 2.0
        };
        weighted.push((t, w));
    }
    weighted
}
