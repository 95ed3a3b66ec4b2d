//! RF and FSO physical-layer evaluation: antenna gains, free-space path
//! loss, noise, SNR/Eb/N0, modulation and coding BER, propagation delay.
//!
//! Everything works in dB/dBW with explicit unit suffixes. Noise bandwidth
//! defaults to the data rate, so SNR equals Eb/N0 unless a bandwidth is
//! given explicitly.

#[allow(unused_imports)]
use num_traits::Float;

use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::{BOLTZMANN_J_PER_K, SPEED_OF_LIGHT_KM_S};

/// Reference temperature for noise-figure conversion, K.
pub const NOISE_REFERENCE_TEMP_K: f64 = 290.0;

/// BCH(127,64) code used on the trunk RF link: corrects up to 10 errors.
pub const BCH_N: u32 = 127;
pub const BCH_K: u32 = 64;
pub const BCH_T: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Technology {
    Rf,
    Fso,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Tx,
    Rx,
}

/// Modulations appearing in the case study. QPSK and BPSK share the same
/// per-bit error rate; the BCH variant wraps BPSK in a (127,64) block code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Modulation {
    Qpsk,
    BpskBch127_64,
    Ook,
}

/// One side of a link. Role-dependent fields (`data_rate_mbps`,
/// `modulation` on transmitters; noise parameters on receivers) are only
/// meaningful for the matching role.
#[derive(Debug, Clone, PartialEq)]
pub struct TransceiverSpec {
    pub technology: Technology,
    pub role: Role,
    pub frequency_ghz: f64,
    pub tx_power_dbw: f64,
    /// Parabolic dish diameter (RF), m.
    pub antenna_diameter_m: Option<f64>,
    /// Effective aperture (FSO), m^2.
    pub effective_aperture_m2: Option<f64>,
    pub efficiency: f64,
    /// Overrides the computed antenna gain when present.
    pub explicit_gain_db: Option<f64>,
    pub data_rate_mbps: f64,
    pub modulation: Option<Modulation>,
    pub noise_figure_db: f64,
    /// Antenna noise temperature seen by the receiver, K.
    pub noise_temperature_k: f64,
    pub extra_losses_db: f64,
}

impl TransceiverSpec {
    pub fn rf_tx(
        frequency_ghz: f64,
        antenna_diameter_m: f64,
        tx_power_dbw: f64,
        data_rate_mbps: f64,
        modulation: Modulation,
    ) -> TransceiverSpec {
        TransceiverSpec {
            technology: Technology::Rf,
            role: Role::Tx,
            frequency_ghz,
            tx_power_dbw,
            antenna_diameter_m: Some(antenna_diameter_m),
            effective_aperture_m2: None,
            efficiency: 0.55,
            explicit_gain_db: None,
            data_rate_mbps,
            modulation: Some(modulation),
            noise_figure_db: 0.0,
            noise_temperature_k: NOISE_REFERENCE_TEMP_K,
            extra_losses_db: 0.0,
        }
    }

    pub fn rf_rx(frequency_ghz: f64, antenna_diameter_m: f64) -> TransceiverSpec {
        TransceiverSpec {
            role: Role::Rx,
            data_rate_mbps: 0.0,
            modulation: None,
            ..TransceiverSpec::rf_tx(
                frequency_ghz,
                antenna_diameter_m,
                0.0,
                1.0,
                Modulation::Qpsk,
            )
        }
    }

    pub fn fso_tx(
        frequency_ghz: f64,
        effective_aperture_m2: f64,
        tx_power_dbw: f64,
        data_rate_mbps: f64,
    ) -> TransceiverSpec {
        TransceiverSpec {
            technology: Technology::Fso,
            role: Role::Tx,
            frequency_ghz,
            tx_power_dbw,
            antenna_diameter_m: None,
            effective_aperture_m2: Some(effective_aperture_m2),
            efficiency: 0.70,
            explicit_gain_db: None,
            data_rate_mbps,
            modulation: Some(Modulation::Ook),
            noise_figure_db: 3.0,
            noise_temperature_k: 273.0,
            extra_losses_db: 0.0,
        }
    }

    pub fn fso_rx(frequency_ghz: f64, effective_aperture_m2: f64) -> TransceiverSpec {
        TransceiverSpec {
            role: Role::Rx,
            data_rate_mbps: 0.0,
            modulation: None,
            ..TransceiverSpec::fso_tx(frequency_ghz, effective_aperture_m2, 0.0, 1.0)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.tx_power_dbw.is_finite() {
            return Err(Error::Domain {
                what: "transmit power must be finite",
                value: self.tx_power_dbw,
            });
        }
        if self.role == Role::Tx && !(self.data_rate_mbps > 0.0) {
            return Err(Error::Domain {
                what: "transmitter data rate must be positive",
                value: self.data_rate_mbps,
            });
        }
        if !(self.efficiency > 0.0 && self.efficiency <= 1.0) {
            return Err(Error::Domain {
                what: "antenna efficiency must lie in (0, 1]",
                value: self.efficiency,
            });
        }
        if !(self.noise_figure_db >= 0.0) {
            return Err(Error::Domain {
                what: "noise figure must be non-negative",
                value: self.noise_figure_db,
            });
        }
        if !(self.noise_temperature_k > 0.0) {
            return Err(Error::Domain {
                what: "noise temperature must be positive",
                value: self.noise_temperature_k,
            });
        }
        Ok(())
    }

    /// Wavelength implied by the carrier frequency, m.
    pub fn wavelength_m(&self) -> f64 {
        SPEED_OF_LIGHT_KM_S * 1e3 / (self.frequency_ghz * 1e9)
    }

    /// Antenna gain: the explicit override when present, otherwise the
    /// parabolic-dish or effective-aperture formula for the technology.
    pub fn gain_db(&self) -> Result<f64> {
        if let Some(gain) = self.explicit_gain_db {
            return Ok(gain);
        }
        match self.technology {
            Technology::Rf => {
                let d = self.antenna_diameter_m.ok_or(Error::Domain {
                    what: "RF transceiver needs an antenna diameter or explicit gain",
                    value: f64::NAN,
                })?;
                parabolic_gain_db(d, self.frequency_ghz, self.efficiency)
            }
            Technology::Fso => {
                let ae = self.effective_aperture_m2.ok_or(Error::Domain {
                    what: "FSO transceiver needs an effective aperture or explicit gain",
                    value: f64::NAN,
                })?;
                optical_gain_db(ae, self.wavelength_m(), self.efficiency)
            }
        }
    }

    /// System noise temperature seen at this receiver, K.
    pub fn system_noise_temperature_k(&self) -> f64 {
        system_noise_temperature_k(
            self.noise_figure_db,
            self.noise_temperature_k,
            NOISE_REFERENCE_TEMP_K,
        )
    }
}

/// Per-instant metrics of one evaluated hop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkMetricsSample {
    pub t_s: f64,
    pub distance_km: f64,
    pub fspl_db: f64,
    pub received_power_dbw: f64,
    pub snr_db: f64,
    pub eb_n0_db: f64,
    pub ber: f64,
    pub delay_s: f64,
}

// ---------------------------------------------------------------------------
// Gains and losses
// ---------------------------------------------------------------------------

/// Parabolic-dish gain G = 10 log10(eta (pi D / lambda)^2), dB.
pub fn parabolic_gain_db(diameter_m: f64, frequency_ghz: f64, efficiency: f64) -> Result<f64> {
    if !(diameter_m > 0.0) {
        return Err(Error::Domain {
            what: "antenna diameter must be positive",
            value: diameter_m,
        });
    }
    if !(frequency_ghz > 0.0) {
        return Err(Error::Domain {
            what: "frequency must be positive",
            value: frequency_ghz,
        });
    }
    let lambda = SPEED_OF_LIGHT_KM_S * 1e3 / (frequency_ghz * 1e9);
    let ratio = PI * diameter_m / lambda;
    Ok(10.0 * (efficiency * ratio * ratio).log10())
}

/// Half-power beamwidth from the Kraus approximation
/// theta = sqrt(32400 / G_linear), degrees.
pub fn half_power_beamwidth_deg(gain_db: f64) -> f64 {
    (32_400.0 / 10.0_f64.powf(gain_db / 10.0)).sqrt()
}

/// Optical antenna gain G = 10 log10(eta 4 pi Ae / lambda^2), dB.
pub fn optical_gain_db(aperture_m2: f64, wavelength_m: f64, efficiency: f64) -> Result<f64> {
    if !(aperture_m2 > 0.0) {
        return Err(Error::Domain {
            what: "effective aperture must be positive",
            value: aperture_m2,
        });
    }
    if !(wavelength_m > 0.0) {
        return Err(Error::Domain {
            what: "wavelength must be positive",
            value: wavelength_m,
        });
    }
    Ok(10.0 * (efficiency * 4.0 * PI * aperture_m2 / (wavelength_m * wavelength_m)).log10())
}

/// Free-space path loss L = 20 log10(4 pi d / lambda), dB.
pub fn free_space_path_loss_db(distance_km: f64, frequency_ghz: f64) -> Result<f64> {
    if !(distance_km > 0.0) {
        return Err(Error::Domain {
            what: "path-loss distance must be positive",
            value: distance_km,
        });
    }
    let lambda_m = SPEED_OF_LIGHT_KM_S * 1e3 / (frequency_ghz * 1e9);
    Ok(20.0 * (4.0 * PI * distance_km * 1e3 / lambda_m).log10())
}

/// T_sys = T_antenna + T_ref (10^(NF/10) - 1), K.
pub fn system_noise_temperature_k(
    noise_figure_db: f64,
    antenna_temp_k: f64,
    reference_temp_k: f64,
) -> f64 {
    antenna_temp_k + reference_temp_k * (10.0_f64.powf(noise_figure_db / 10.0) - 1.0)
}

/// Received power Pr = Pt + Gt - FSPL - atmospheric - extra losses + Gr, dBW.
pub fn received_power_dbw(
    tx: &TransceiverSpec,
    rx: &TransceiverSpec,
    distance_km: f64,
    atmospheric_loss_db: f64,
) -> Result<f64> {
    if tx.technology != rx.technology {
        return Err(Error::TechnologyMismatch);
    }
    let fspl = free_space_path_loss_db(distance_km, tx.frequency_ghz)?;
    Ok(tx.tx_power_dbw + tx.gain_db()?
        - fspl
        - atmospheric_loss_db
        - tx.extra_losses_db
        - rx.extra_losses_db
        + rx.gain_db()?)
}

// ---------------------------------------------------------------------------
// Noise ratios
// ---------------------------------------------------------------------------

/// Eb/N0 = Pr - 10 log10(k T_sys) - 10 log10(Rb), dB.
pub fn eb_n0_db(received_power_dbw: f64, t_sys_k: f64, data_rate_mbps: f64) -> f64 {
    received_power_dbw
        - 10.0 * (BOLTZMANN_J_PER_K * t_sys_k).log10()
        - 10.0 * (data_rate_mbps * 1e6).log10()
}

/// SNR = Pr - 10 log10(k T_sys B), dB.
pub fn snr_db(received_power_dbw: f64, t_sys_k: f64, bandwidth_hz: f64) -> f64 {
    received_power_dbw - 10.0 * (BOLTZMANN_J_PER_K * t_sys_k * bandwidth_hz).log10()
}

// ---------------------------------------------------------------------------
// Bit error rates
// ---------------------------------------------------------------------------

/// Gaussian tail probability Q(x) = erfc(x / sqrt 2) / 2.
pub fn q_function(x: f64) -> f64 {
    0.5 * libm::erfc(x / core::f64::consts::SQRT_2)
}

/// Uncoded coherent BPSK/QPSK per-bit error rate Q(sqrt(2 Eb/N0)).
pub fn ber_uncoded_psk(eb_n0_db: f64) -> f64 {
    let lin = 10.0_f64.powf(eb_n0_db / 10.0);
    q_function((2.0 * lin).sqrt()).clamp(0.0, 0.5)
}

/// Post-decoding bit error rate of a t-error-correcting (n, k) block code
/// under bounded-distance decoding:
///
/// P_b ~= (1/n) sum_{i=t+1..n} (i + t) C(n, i) p^i (1-p)^(n-i)
///
/// with channel bit error rate `p`, clamped to [0, 0.5]. Terms are summed
/// in log space so large binomial coefficients and tiny powers of p do not
/// overflow or underflow.
pub fn ber_block_coded(channel_ber: f64, n: u32, t: u32) -> Result<f64> {
    if !(0.0..=0.5).contains(&channel_ber) {
        return Err(Error::Domain {
            what: "channel bit error rate must lie in [0, 0.5]",
            value: channel_ber,
        });
    }
    if channel_ber == 0.0 {
        return Ok(0.0);
    }
    let ln_p = channel_ber.ln();
    let ln_q = (1.0 - channel_ber).ln();
    let mut sum = 0.0;
    for i in (t + 1)..=n {
        let ln_term =
            ln_choose(n, i) + i as f64 * ln_p + (n - i) as f64 * ln_q + ((i + t) as f64).ln();
        sum += ln_term.exp();
    }
    Ok((sum / n as f64).clamp(0.0, 0.5))
}

/// BCH(127,64): the code used on the trunk RF link.
pub fn ber_bch_coded(channel_ber: f64) -> Result<f64> {
    ber_block_coded(channel_ber, BCH_N, BCH_T)
}

/// On-off keying with equal Gaussian noise on both levels and a midpoint
/// threshold: BER = Q(sqrt(SNR) / 2).
pub fn ber_ook(snr_db: f64) -> f64 {
    let lin = 10.0_f64.powf(snr_db / 10.0);
    q_function(lin.sqrt() / 2.0).clamp(0.0, 0.5)
}

/// ln C(n, i) via a natural-log factorial sum; exact enough (about 1e-13
/// relative) for the BER magnitudes used here.
fn ln_choose(n: u32, i: u32) -> f64 {
    ln_factorial(n) - ln_factorial(i) - ln_factorial(n - i)
}

fn ln_factorial(n: u32) -> f64 {
    let mut acc = 0.0;
    for k in 2..=n as u64 {
        acc += (k as f64).ln();
    }
    acc
}

// ---------------------------------------------------------------------------
// Delay and composition
// ---------------------------------------------------------------------------

/// One-way propagation delay d/c, seconds.
pub fn propagation_delay_s(distance_km: f64) -> f64 {
    distance_km / SPEED_OF_LIGHT_KM_S
}

/// Full budget chain for one hop at one instant: FSPL, received power,
/// noise, SNR and Eb/N0, modulation BER, delay.
///
/// Distances below 1 km are rejected (near-field regime where the far-field
/// budget model stops being meaningful). Noise bandwidth equals the data
/// rate, so SNR = Eb/N0.
pub fn evaluate_link(
    tx: &TransceiverSpec,
    rx: &TransceiverSpec,
    t_s: f64,
    distance_km: f64,
    atmospheric_loss_db: f64,
) -> Result<LinkMetricsSample> {
    if tx.role != Role::Tx || rx.role != Role::Rx {
        return Err(Error::Domain {
            what: "evaluate_link needs a transmitter and a receiver, in that order",
            value: f64::NAN,
        });
    }
    if !(distance_km >= 1.0) {
        return Err(Error::Domain {
            what: "link distance must be at least 1 km",
            value: distance_km,
        });
    }
    tx.validate()?;
    rx.validate()?;

    let fspl = free_space_path_loss_db(distance_km, tx.frequency_ghz)?;
    let pr = received_power_dbw(tx, rx, distance_km, atmospheric_loss_db)?;
    let t_sys = rx.system_noise_temperature_k();
    let ebn0 = eb_n0_db(pr, t_sys, tx.data_rate_mbps);
    let snr = snr_db(pr, t_sys, tx.data_rate_mbps * 1e6);

    let modulation = tx.modulation.ok_or(Error::Domain {
        what: "transmitter needs a modulation",
        value: f64::NAN,
    })?;
    let ber = match modulation {
        Modulation::Qpsk => ber_uncoded_psk(ebn0),
        Modulation::BpskBch127_64 => {
            // channel bits run at the code-rate-adjusted Ec/N0 = (k/n) Eb/N0
            let rate_adjust_db = 10.0 * (BCH_K as f64 / BCH_N as f64).log10();
            let channel = ber_uncoded_psk(ebn0 + rate_adjust_db);
            ber_bch_coded(channel)?
        }
        Modulation::Ook => ber_ook(snr),
    };

    Ok(LinkMetricsSample {
        t_s,
        distance_km,
        fspl_db: fspl,
        received_power_dbw: pr,
        snr_db: snr,
        eb_n0_db: ebn0,
        ber,
        delay_s: propagation_delay_s(distance_km),
    })
}
