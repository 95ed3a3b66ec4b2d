//! Scenario file format: a flat TOML document with dotted-key sections.
//!
//! `load` applies the documented defaults for every omitted optional key
//! and reports *all* missing required keys and constraint violations at
//! once, each naming the offending key. `emit` writes every field
//! explicitly, so `load(emit(s))` reproduces `s` exactly.

use std::fmt;

use serde::{Deserialize, Serialize};

use cislunar_core::bodies::{BodyConstants, GroundSite};
use cislunar_core::hybrid::{ChainMode, Hop, HopConfig, LinkChoice, Preference, SwitchPolicy};
use cislunar_core::linkbudget::{Modulation, Role, Technology, TransceiverSpec};
use cislunar_core::orbits::OrbitalElements;
use cislunar_core::walker::WalkerSpec;
use cislunar_core::Epoch;

/// Default FSO carrier: 1550 nm expressed in GHz.
pub const FSO_FREQUENCY_GHZ: f64 = 193_414.0;
pub const DEFAULT_TX_POWER_DBW: f64 = 1.0;
pub const DEFAULT_RF_EFFICIENCY: f64 = 0.55;
pub const DEFAULT_FSO_EFFICIENCY: f64 = 0.70;
pub const DEFAULT_FSO_NOISE_FIGURE_DB: f64 = 3.0;
pub const DEFAULT_FSO_NOISE_TEMP_K: f64 = 273.0;
/// RF receiver default: a plain 290 K system with no extra noise figure.
pub const DEFAULT_RF_NOISE_FIGURE_DB: f64 = 0.0;
pub const DEFAULT_RF_NOISE_TEMP_K: f64 = 290.0;

/// Scenario validation failure; each message names the offending key and
/// the violated constraint.
#[derive(Debug, thiserror::Error)]
pub struct ScenarioError {
    pub messages: Vec<String>,
}

impl fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "invalid scenario:")?;
        for m in &self.messages {
            writeln!(f, "  - {m}")?;
        }
        Ok(())
    }
}

/// Fully validated scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub epoch: Epoch,
    pub duration_s: f64,
    pub step_s: f64,
    pub refine_tol_s: f64,
    pub earth: BodyConstants,
    pub moon: BodyConstants,
    pub earth_station: GroundSite,
    pub lunar_facility: GroundSite,
    pub walker: WalkerSpec,
    pub leo_base: OrbitalElements,
    pub gateway: OrbitalElements,
    pub hops: [HopConfig; 3],
    pub policy: SwitchPolicy,
    pub forced_patterns: Vec<ChainMode>,
    pub relay_processing_delay_s: f64,
    pub study_sizes: Vec<(u32, u32)>,
}

impl Scenario {
    pub fn load(text: &str) -> Result<Scenario, ScenarioError> {
        let raw: RawDocument = toml::from_str(text).map_err(|e| ScenarioError {
            messages: vec![format!("TOML parse error: {e}")],
        })?;
        Validator::default().build(raw)
    }

    /// Serializes with every field explicit; `load` of the result yields an
    /// identical scenario.
    pub fn emit(&self) -> String {
        toml::to_string_pretty(&RawDocument::from_scenario(self))
            .expect("scenario serialization cannot fail")
    }

    pub fn hop(&self, hop: Hop) -> &HopConfig {
        &self.hops[hop as usize]
    }
}

// ---------------------------------------------------------------------------
// Raw document schema (everything optional; validation fills defaults)
// ---------------------------------------------------------------------------

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    #[serde(skip_serializing_if = "Option::is_none")]
    scenario: Option<RawMeta>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bodies: Option<RawBodies>,
    #[serde(skip_serializing_if = "Option::is_none")]
    earth_station: Option<RawSite>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lunar_facility: Option<RawSite>,
    #[serde(skip_serializing_if = "Option::is_none")]
    constellation: Option<RawConstellation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    gateway: Option<RawElements>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hops: Option<RawHops>,
    #[serde(skip_serializing_if = "Option::is_none")]
    policy: Option<RawPolicy>,
    #[serde(skip_serializing_if = "Option::is_none")]
    chain: Option<RawChain>,
    #[serde(skip_serializing_if = "Option::is_none")]
    study: Option<RawStudy>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMeta {
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    epoch_jd: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    duration_s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    step_s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    refine_tol_s: Option<f64>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBodies {
    #[serde(skip_serializing_if = "Option::is_none")]
    earth: Option<RawBody>,
    #[serde(skip_serializing_if = "Option::is_none")]
    moon: Option<RawBody>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBody {
    #[serde(skip_serializing_if = "Option::is_none")]
    mu_km3_s2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    radius_km: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rotation_period_s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rotation_epoch_meridian_deg: Option<f64>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSite {
    #[serde(skip_serializing_if = "Option::is_none")]
    body: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    latitude_deg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    longitude_deg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    altitude_km: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    min_elevation_deg: Option<f64>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConstellation {
    #[serde(skip_serializing_if = "Option::is_none")]
    planes: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sats_per_plane: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    phasing: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    base: Option<RawElements>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawElements {
    #[serde(skip_serializing_if = "Option::is_none")]
    semi_major_axis_km: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    eccentricity: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    inclination_deg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    arg_perigee_deg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    raan_deg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    true_anomaly_deg: Option<f64>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHops {
    #[serde(skip_serializing_if = "Option::is_none")]
    e2l: Option<RawHop>,
    #[serde(skip_serializing_if = "Option::is_none")]
    l2g: Option<RawHop>,
    #[serde(skip_serializing_if = "Option::is_none")]
    g2m: Option<RawHop>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHop {
    #[serde(skip_serializing_if = "Option::is_none")]
    rf: Option<RawLinkPair>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fso: Option<RawLinkPair>,
    #[serde(skip_serializing_if = "Option::is_none")]
    atmospheric: Option<RawAtmosphere>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLinkPair {
    #[serde(skip_serializing_if = "Option::is_none")]
    tx: Option<RawTransceiver>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rx: Option<RawTransceiver>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTransceiver {
    #[serde(skip_serializing_if = "Option::is_none")]
    frequency_ghz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    power_dbw: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    antenna_diameter_m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    effective_aperture_m2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    efficiency: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    explicit_gain_db: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    data_rate_mbps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    modulation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    noise_figure_db: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    noise_temperature_k: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    extra_losses_db: Option<f64>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAtmosphere {
    #[serde(skip_serializing_if = "Option::is_none")]
    rf_loss_db: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fso_loss_db: Option<f64>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPolicy {
    #[serde(skip_serializing_if = "Option::is_none")]
    ber_threshold: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    prefer: Option<String>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChain {
    #[serde(skip_serializing_if = "Option::is_none")]
    forced_patterns: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    relay_processing_delay_s: Option<f64>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStudy {
    #[serde(skip_serializing_if = "Option::is_none")]
    sizes: Option<Vec<String>>,
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

#[derive(Default)]
struct Validator {
    errors: Vec<String>,
}

impl Validator {
    fn missing(&mut self, key: &str) {
        self.errors.push(format!("{key}: required key is missing"));
    }

    fn fail(&mut self, key: &str, constraint: &str, value: impl fmt::Display) {
        let value = value.to_string();
        if value.is_empty() {
            self.errors.push(format!("{key}: {constraint}"));
        } else {
            self.errors
                .push(format!("{key}: {constraint} (got {value})"));
        }
    }

    fn require<T: Copy>(&mut self, key: &str, value: Option<T>) -> Option<T> {
        if value.is_none() {
            self.missing(key);
        }
        value
    }

    fn build(mut self, raw: RawDocument) -> Result<Scenario, ScenarioError> {
        let meta = raw.scenario.unwrap_or_default();
        let name = meta.name.unwrap_or_else(|| "scenario".into());
        let epoch_jd = self.require("scenario.epoch_jd", meta.epoch_jd);
        let duration_s = meta.duration_s.unwrap_or(86_400.0);
        let step_s = meta.step_s.unwrap_or(10.0);
        let refine_tol_s = meta.refine_tol_s.unwrap_or(1e-3);

        if !(duration_s > 0.0) {
            self.fail("scenario.duration_s", "must be positive", duration_s);
        }
        if !(step_s > 0.0 && step_s <= duration_s) {
            self.fail(
                "scenario.step_s",
                "must satisfy 0 < step <= duration",
                step_s,
            );
        }
        if !(refine_tol_s > 0.0 && refine_tol_s <= step_s) {
            self.fail(
                "scenario.refine_tol_s",
                "must lie in (0, step_s]",
                refine_tol_s,
            );
        }

        let epoch = epoch_jd.and_then(|jd| match Epoch::from_julian_date(jd) {
            Ok(e) => Some(e),
            Err(err) => {
                self.fail("scenario.epoch_jd", &err.to_string(), jd);
                None
            }
        });

        let bodies = raw.bodies.unwrap_or_default();
        let earth = self.body("bodies.earth", bodies.earth, BodyConstants::earth());
        let moon = self.body("bodies.moon", bodies.moon, BodyConstants::moon());

        let earth_station = self.site(
            "earth_station",
            raw.earth_station,
            "earth",
            // unstated in the source material; a mid-latitude station
            (36.12, -97.07, 0.3),
        );
        let lunar_facility = self.site(
            "lunar_facility",
            raw.lunar_facility,
            "moon",
            // polar facility default (Artemis-style south pole site)
            (-89.5, 0.0, 0.0),
        );

        let (walker, leo_base) = self.constellation(raw.constellation);
        let gateway = self.elements("gateway", raw.gateway);

        let hops = self.hops(raw.hops);

        let policy_raw = raw.policy.unwrap_or_default();
        let prefer = match policy_raw.prefer.as_deref() {
            None => Preference::FsoIfQualified,
            Some(s) => match s.to_ascii_lowercase().as_str() {
                "fso-if-qualified" => Preference::FsoIfQualified,
                "rf-only" => Preference::RfOnly,
                "fso-only" => Preference::FsoOnly,
                other => {
                    self.fail(
                        "policy.prefer",
                        "must be one of fso-if-qualified, rf-only, fso-only",
                        other,
                    );
                    Preference::FsoIfQualified
                }
            },
        };
        let policy = SwitchPolicy {
            ber_threshold: policy_raw.ber_threshold.unwrap_or(1e-6),
            prefer,
        };
        if let Err(e) = policy.validate() {
            self.fail("policy.ber_threshold", &e.to_string(), policy.ber_threshold);
        }

        let chain = raw.chain.unwrap_or_default();
        let pattern_names = chain
            .forced_patterns
            .unwrap_or_else(|| vec!["RF-RF-RF".into(), "OP-OP-OP".into(), "RF-OP-RF".into()]);
        let mut forced_patterns = Vec::new();
        for name in &pattern_names {
            match parse_pattern(name) {
                Some(p) => forced_patterns.push(p),
                None => self.fail(
                    "chain.forced_patterns",
                    "patterns are three RF|OP tokens joined by '-' (e.g. RF-OP-RF) or 'policy'",
                    name,
                ),
            }
        }
        let relay_processing_delay_s = chain.relay_processing_delay_s.unwrap_or(0.0);
        if !(relay_processing_delay_s >= 0.0) {
            self.fail(
                "chain.relay_processing_delay_s",
                "must be non-negative",
                relay_processing_delay_s,
            );
        }

        let study = raw.study.unwrap_or_default();
        let size_names = study
            .sizes
            .unwrap_or_else(|| vec!["1x1".into(), "2x2".into(), "3x3".into(), "4x4".into()]);
        let mut study_sizes = Vec::new();
        for name in &size_names {
            match parse_size(name) {
                Some(ps) => study_sizes.push(ps),
                None => self.fail("study.sizes", "sizes look like PxS, e.g. 4x4", name),
            }
        }

        if !self.errors.is_empty() {
            return Err(ScenarioError {
                messages: self.errors,
            });
        }

        Ok(Scenario {
            name,
            epoch: epoch.expect("validated"),
            duration_s,
            step_s,
            refine_tol_s,
            earth,
            moon,
            earth_station,
            lunar_facility,
            walker,
            leo_base: leo_base.expect("validated"),
            gateway: gateway.expect("validated"),
            hops: hops.expect("validated"),
            policy,
            forced_patterns,
            relay_processing_delay_s,
            study_sizes,
        })
    }

    fn body(&mut self, key: &str, raw: Option<RawBody>, default: BodyConstants) -> BodyConstants {
        let raw = raw.unwrap_or_default();
        let body = BodyConstants {
            mu_km3_s2: raw.mu_km3_s2.unwrap_or(default.mu_km3_s2),
            radius_km: raw.radius_km.unwrap_or(default.radius_km),
            rotation_period_s: raw.rotation_period_s.unwrap_or(default.rotation_period_s),
            rotation_epoch_meridian_deg: raw
                .rotation_epoch_meridian_deg
                .unwrap_or(default.rotation_epoch_meridian_deg),
            name: default.name,
        };
        if !(body.mu_km3_s2 > 0.0) {
            self.fail(
                &format!("{key}.mu_km3_s2"),
                "must be positive",
                body.mu_km3_s2,
            );
        }
        if !(body.radius_km > 0.0) {
            self.fail(
                &format!("{key}.radius_km"),
                "must be positive",
                body.radius_km,
            );
        }
        body
    }

    fn site(
        &mut self,
        key: &str,
        raw: Option<RawSite>,
        expected_body: &str,
        default_lat_lon_alt: (f64, f64, f64),
    ) -> GroundSite {
        let raw = raw.unwrap_or_default();
        let body = raw.body.unwrap_or_else(|| expected_body.into());
        if body != "earth" && body != "moon" {
            self.fail(
                &format!("{key}.body"),
                "unknown body identifier (expected earth or moon)",
                &body,
            );
        }
        let site = GroundSite {
            body,
            latitude_deg: raw.latitude_deg.unwrap_or(default_lat_lon_alt.0),
            longitude_deg: raw.longitude_deg.unwrap_or(default_lat_lon_alt.1),
            altitude_km: raw.altitude_km.unwrap_or(default_lat_lon_alt.2),
            min_elevation_deg: raw.min_elevation_deg.unwrap_or(0.0),
        };
        if let Err(e) = site.validate() {
            self.fail(key, &e.to_string(), "");
        }
        site
    }

    fn constellation(
        &mut self,
        raw: Option<RawConstellation>,
    ) -> (WalkerSpec, Option<OrbitalElements>) {
        let Some(raw) = raw else {
            self.missing("constellation");
            return (
                WalkerSpec {
                    planes: 1,
                    sats_per_plane: 1,
                    phasing: 0,
                },
                None,
            );
        };
        let planes = self
            .require("constellation.planes", raw.planes)
            .unwrap_or(1);
        let sats = self
            .require("constellation.sats_per_plane", raw.sats_per_plane)
            .unwrap_or(1);
        let phasing = raw.phasing.unwrap_or(0);
        let spec = match WalkerSpec::new(planes, sats, phasing) {
            Ok(s) => s,
            Err(e) => {
                self.fail("constellation", &e.to_string(), phasing);
                WalkerSpec {
                    planes: 1,
                    sats_per_plane: 1,
                    phasing: 0,
                }
            }
        };
        let base = self.elements("constellation.base", raw.base);
        (spec, base)
    }

    fn elements(&mut self, key: &str, raw: Option<RawElements>) -> Option<OrbitalElements> {
        let Some(raw) = raw else {
            self.missing(key);
            return None;
        };
        let a = self.require(&format!("{key}.semi_major_axis_km"), raw.semi_major_axis_km);
        let e = self.require(&format!("{key}.eccentricity"), raw.eccentricity);
        let i = self.require(&format!("{key}.inclination_deg"), raw.inclination_deg);
        let w = self.require(&format!("{key}.arg_perigee_deg"), raw.arg_perigee_deg);
        let o = self.require(&format!("{key}.raan_deg"), raw.raan_deg);
        let nu = self.require(&format!("{key}.true_anomaly_deg"), raw.true_anomaly_deg);
        let (a, e, i, w, o, nu) = (a?, e?, i?, w?, o?, nu?);
        // epoch is attached at run time; J2000 here is a placeholder that
        // keeps elements comparable for round-trip equality
        match OrbitalElements::new(a, e, i, w, o, nu, Epoch::J2000) {
            Ok(el) => Some(el),
            Err(err) => {
                let field = match err {
                    cislunar_core::Error::Domain { what, .. } if what.contains("eccentricity") => {
                        format!("{key}.eccentricity")
                    }
                    cislunar_core::Error::Domain { what, .. } if what.contains("inclination") => {
                        format!("{key}.inclination_deg")
                    }
                    _ => format!("{key}.semi_major_axis_km"),
                };
                self.fail(&field, &err.to_string(), "");
                None
            }
        }
    }

    fn hops(&mut self, raw: Option<RawHops>) -> Option<[HopConfig; 3]> {
        let Some(raw) = raw else {
            self.missing("hops.e2l");
            self.missing("hops.l2g");
            self.missing("hops.g2m");
            return None;
        };
        let e2l = self.hop("hops.e2l", Hop::E2l, raw.e2l);
        let l2g = self.hop("hops.l2g", Hop::L2g, raw.l2g);
        let g2m = self.hop("hops.g2m", Hop::G2m, raw.g2m);
        Some([e2l?, l2g?, g2m?])
    }

    fn hop(&mut self, key: &str, hop: Hop, raw: Option<RawHop>) -> Option<HopConfig> {
        let Some(raw) = raw else {
            self.missing(key);
            return None;
        };
        let rf = raw.rf.unwrap_or_default();
        let fso = raw.fso.unwrap_or_default();
        let rf_tx = self.transceiver(&format!("{key}.rf.tx"), Technology::Rf, Role::Tx, rf.tx);
        let rf_rx = self.transceiver(&format!("{key}.rf.rx"), Technology::Rf, Role::Rx, rf.rx);
        let fso_tx = self.transceiver(&format!("{key}.fso.tx"), Technology::Fso, Role::Tx, fso.tx);
        let fso_rx = self.transceiver(&format!("{key}.fso.rx"), Technology::Fso, Role::Rx, fso.rx);
        let atmos = raw.atmospheric.unwrap_or_default();
        let config = HopConfig {
            hop,
            rf_tx: rf_tx?,
            rf_rx: rf_rx?,
            fso_tx: fso_tx?,
            fso_rx: fso_rx?,
            atmospheric_rf_db: atmos.rf_loss_db.unwrap_or(0.0),
            atmospheric_fso_db: atmos.fso_loss_db.unwrap_or(0.0),
        };
        if let Err(e) = config.validate() {
            self.fail(key, &e.to_string(), "");
            return None;
        }
        Some(config)
    }

    fn transceiver(
        &mut self,
        key: &str,
        technology: Technology,
        role: Role,
        raw: Option<RawTransceiver>,
    ) -> Option<TransceiverSpec> {
        let Some(raw) = raw else {
            self.missing(key);
            return None;
        };

        let frequency_ghz = match technology {
            Technology::Rf => self.require(&format!("{key}.frequency_ghz"), raw.frequency_ghz)?,
            Technology::Fso => raw.frequency_ghz.unwrap_or(FSO_FREQUENCY_GHZ),
        };

        let efficiency = raw.efficiency.unwrap_or(match technology {
            Technology::Rf => DEFAULT_RF_EFFICIENCY,
            Technology::Fso => DEFAULT_FSO_EFFICIENCY,
        });

        let (noise_figure_db, noise_temperature_k) = match technology {
            Technology::Rf => (
                raw.noise_figure_db.unwrap_or(DEFAULT_RF_NOISE_FIGURE_DB),
                raw.noise_temperature_k.unwrap_or(DEFAULT_RF_NOISE_TEMP_K),
            ),
            Technology::Fso => (
                raw.noise_figure_db.unwrap_or(DEFAULT_FSO_NOISE_FIGURE_DB),
                raw.noise_temperature_k.unwrap_or(DEFAULT_FSO_NOISE_TEMP_K),
            ),
        };

        // aperture geometry: required unless an explicit gain is given
        let antenna_diameter_m = raw.antenna_diameter_m;
        let effective_aperture_m2 = raw.effective_aperture_m2;
        if raw.explicit_gain_db.is_none() {
            match technology {
                Technology::Rf if antenna_diameter_m.is_none() => {
                    self.missing(&format!("{key}.antenna_diameter_m"));
                    return None;
                }
                Technology::Fso if effective_aperture_m2.is_none() => {
                    self.missing(&format!("{key}.effective_aperture_m2"));
                    return None;
                }
                _ => {}
            }
        }

        let (data_rate_mbps, modulation) = match role {
            Role::Rx => (0.0, None),
            Role::Tx => {
                let rate = self.require(&format!("{key}.data_rate_mbps"), raw.data_rate_mbps)?;
                let modulation = match technology {
                    Technology::Fso => match raw.modulation.as_deref() {
                        None => Modulation::Ook,
                        Some(s) => match parse_modulation(s) {
                            Some(m @ Modulation::Ook) => m,
                            _ => {
                                self.fail(&format!("{key}.modulation"), "FSO links use ook", s);
                                Modulation::Ook
                            }
                        },
                    },
                    Technology::Rf => {
                        let name =
                            self.require(&format!("{key}.modulation"), raw.modulation.as_deref())?;
                        match parse_modulation(name) {
                            Some(m) if m != Modulation::Ook => m,
                            _ => {
                                self.fail(
                                    &format!("{key}.modulation"),
                                    "RF modulation must be qpsk or bpsk-bch-127-64",
                                    name,
                                );
                                return None;
                            }
                        }
                    }
                };
                (rate, Some(modulation))
            }
        };

        let spec = TransceiverSpec {
            technology,
            role,
            frequency_ghz,
            tx_power_dbw: raw.power_dbw.unwrap_or(match role {
                Role::Tx => DEFAULT_TX_POWER_DBW,
                Role::Rx => 0.0,
            }),
            antenna_diameter_m,
            effective_aperture_m2,
            efficiency,
            explicit_gain_db: raw.explicit_gain_db,
            data_rate_mbps,
            modulation,
            noise_figure_db,
            noise_temperature_k,
            extra_losses_db: raw.extra_losses_db.unwrap_or(0.0),
        };
        if let Err(e) = spec.validate() {
            self.fail(key, &e.to_string(), "");
            return None;
        }
        Some(spec)
    }
}

fn parse_modulation(s: &str) -> Option<Modulation> {
    match s.to_ascii_lowercase().as_str() {
        "qpsk" => Some(Modulation::Qpsk),
        "bpsk-bch-127-64" => Some(Modulation::BpskBch127_64),
        "ook" => Some(Modulation::Ook),
        _ => None,
    }
}

fn modulation_name(m: Modulation) -> &'static str {
    match m {
        Modulation::Qpsk => "qpsk",
        Modulation::BpskBch127_64 => "bpsk-bch-127-64",
        Modulation::Ook => "ook",
    }
}

/// Parses "RF-OP-RF" style patterns or "policy".
pub fn parse_pattern(s: &str) -> Option<ChainMode> {
    if s.eq_ignore_ascii_case("policy") {
        return Some(ChainMode::Policy);
    }
    let tokens: Vec<&str> = s.split('-').collect();
    if tokens.len() != 3 {
        return None;
    }
    let mut choices = [LinkChoice::Rf; 3];
    for (i, token) in tokens.iter().enumerate() {
        choices[i] = match token.to_ascii_uppercase().as_str() {
            "RF" => LinkChoice::Rf,
            "OP" | "FSO" => LinkChoice::Fso,
            _ => return None,
        };
    }
    Some(ChainMode::Forced(choices))
}

/// Parses "PxS" constellation sizes.
pub fn parse_size(s: &str) -> Option<(u32, u32)> {
    let (p, sats) = s.split_once(['x', 'X'])?;
    let p = p.trim().parse().ok()?;
    let sats = sats.trim().parse().ok()?;
    if p >= 1 && sats >= 1 {
        Some((p, sats))
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Emission (round-trip)
// ---------------------------------------------------------------------------

impl RawDocument {
    fn from_scenario(s: &Scenario) -> RawDocument {
        RawDocument {
            scenario: Some(RawMeta {
                name: Some(s.name.clone()),
                epoch_jd: Some(s.epoch.julian_date()),
                duration_s: Some(s.duration_s),
                step_s: Some(s.step_s),
                refine_tol_s: Some(s.refine_tol_s),
            }),
            bodies: Some(RawBodies {
                earth: Some(RawBody::from_body(&s.earth)),
                moon: Some(RawBody::from_body(&s.moon)),
            }),
            earth_station: Some(RawSite::from_site(&s.earth_station)),
            lunar_facility: Some(RawSite::from_site(&s.lunar_facility)),
            constellation: Some(RawConstellation {
                planes: Some(s.walker.planes),
                sats_per_plane: Some(s.walker.sats_per_plane),
                phasing: Some(s.walker.phasing),
                base: Some(RawElements::from_elements(&s.leo_base)),
            }),
            gateway: Some(RawElements::from_elements(&s.gateway)),
            hops: Some(RawHops {
                e2l: Some(RawHop::from_hop(&s.hops[0])),
                l2g: Some(RawHop::from_hop(&s.hops[1])),
                g2m: Some(RawHop::from_hop(&s.hops[2])),
            }),
            policy: Some(RawPolicy {
                ber_threshold: Some(s.policy.ber_threshold),
                prefer: Some(
                    match s.policy.prefer {
                        Preference::FsoIfQualified => "fso-if-qualified",
                        Preference::RfOnly => "rf-only",
                        Preference::FsoOnly => "fso-only",
                    }
                    .into(),
                ),
            }),
            chain: Some(RawChain {
                forced_patterns: Some(s.forced_patterns.iter().map(|p| p.label()).collect()),
                relay_processing_delay_s: Some(s.relay_processing_delay_s),
            }),
            study: Some(RawStudy {
                sizes: Some(
                    s.study_sizes
                        .iter()
                        .map(|(p, sats)| format!("{p}x{sats}"))
                        .collect(),
                ),
            }),
        }
    }
}

impl RawBody {
    fn from_body(b: &BodyConstants) -> RawBody {
        RawBody {
            mu_km3_s2: Some(b.mu_km3_s2),
            radius_km: Some(b.radius_km),
            rotation_period_s: Some(b.rotation_period_s),
            rotation_epoch_meridian_deg: Some(b.rotation_epoch_meridian_deg),
        }
    }
}

impl RawSite {
    fn from_site(s: &GroundSite) -> RawSite {
        RawSite {
            body: Some(s.body.clone()),
            latitude_deg: Some(s.latitude_deg),
            longitude_deg: Some(s.longitude_deg),
            altitude_km: Some(s.altitude_km),
            min_elevation_deg: Some(s.min_elevation_deg),
        }
    }
}

impl RawElements {
    fn from_elements(el: &OrbitalElements) -> RawElements {
        RawElements {
            semi_major_axis_km: Some(el.semi_major_axis_km),
            eccentricity: Some(el.eccentricity),
            inclination_deg: Some(el.inclination_deg),
            arg_perigee_deg: Some(el.arg_perigee_deg),
            raan_deg: Some(el.raan_deg),
            true_anomaly_deg: Some(el.true_anomaly_deg),
        }
    }
}

impl RawHop {
    fn from_hop(h: &HopConfig) -> RawHop {
        RawHop {
            rf: Some(RawLinkPair {
                tx: Some(RawTransceiver::from_spec(&h.rf_tx)),
                rx: Some(RawTransceiver::from_spec(&h.rf_rx)),
            }),
            fso: Some(RawLinkPair {
                tx: Some(RawTransceiver::from_spec(&h.fso_tx)),
                rx: Some(RawTransceiver::from_spec(&h.fso_rx)),
            }),
            atmospheric: Some(RawAtmosphere {
                rf_loss_db: Some(h.atmospheric_rf_db),
                fso_loss_db: Some(h.atmospheric_fso_db),
            }),
        }
    }
}

impl RawTransceiver {
    fn from_spec(t: &TransceiverSpec) -> RawTransceiver {
        RawTransceiver {
            frequency_ghz: Some(t.frequency_ghz),
            power_dbw: Some(t.tx_power_dbw),
            antenna_diameter_m: t.antenna_diameter_m,
            effective_aperture_m2: t.effective_aperture_m2,
            efficiency: Some(t.efficiency),
            explicit_gain_db: t.explicit_gain_db,
            data_rate_mbps: match t.role {
                Role::Tx => Some(t.data_rate_mbps),
                Role::Rx => None,
            },
            modulation: t.modulation.map(|m| modulation_name(m).into()),
            noise_figure_db: Some(t.noise_figure_db),
            noise_temperature_k: Some(t.noise_temperature_k),
            extra_losses_db: Some(t.extra_losses_db),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_lists_required_keys() {
        let err = Scenario::load("").unwrap_err();
        let text = err.to_string();
        for key in [
            "scenario.epoch_jd",
            "constellation",
            "gateway",
            "hops.e2l",
            "hops.l2g",
            "hops.g2m",
        ] {
            assert!(text.contains(key), "error must mention {key}: {text}");
        }
    }

    #[test]
    fn bad_eccentricity_names_the_field() {
        let text = crate::PAPER_CASE_STUDY_TOML.replace("eccentricity = 0.6", "eccentricity = 1.2");
        let err = Scenario::load(&text).unwrap_err();
        assert!(
            err.to_string().contains("gateway.eccentricity"),
            "got: {err}"
        );
    }

    #[test]
    fn unknown_pattern_rejected_with_guidance() {
        let text = crate::PAPER_CASE_STUDY_TOML.replace("\"RF-OP-RF\"", "\"RF-XX-RF\"");
        let err = Scenario::load(&text).unwrap_err();
        assert!(err.to_string().contains("chain.forced_patterns"), "{err}");
        assert!(err.to_string().contains("RF|OP"), "{err}");
    }

    #[test]
    fn pattern_and_size_parsing() {
        assert_eq!(
            parse_pattern("RF-OP-RF"),
            Some(ChainMode::Forced([
                LinkChoice::Rf,
                LinkChoice::Fso,
                LinkChoice::Rf
            ]))
        );
        assert_eq!(parse_pattern("policy"), Some(ChainMode::Policy));
        assert_eq!(parse_pattern("RF-RF"), None);
        assert_eq!(parse_size("4x4"), Some((4, 4)));
        assert_eq!(parse_size("0x4"), None);
    }
}
