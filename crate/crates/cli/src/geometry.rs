//! Binds a scenario to time-parameterized positions and visibility
//! predicates.
//!
//! Every accessor is a pure function of the sample time, so interval
//! extraction can re-evaluate geometry at arbitrary refinement instants.

use cislunar_core::access::{elevation_deg, line_of_sight};
use cislunar_core::ephemeris;
use cislunar_core::frames::site_position_inertial;
use cislunar_core::hybrid::Hop;
use cislunar_core::orbits::{propagate, OrbitalElements};
use cislunar_core::walker::walker_constellation;
use cislunar_core::{Epoch, Vec3};

use crate::scenario::Scenario;

/// Scenario geometry for one constellation size.
pub struct Geometry<'a> {
    scenario: &'a Scenario,
    fleet: Vec<OrbitalElements>,
    start: Epoch,
}

impl<'a> Geometry<'a> {
    /// Geometry with the scenario's own constellation.
    pub fn new(scenario: &'a Scenario) -> Geometry<'a> {
        Self::with_walker(
            scenario,
            scenario.walker.planes,
            scenario.walker.sats_per_plane,
        )
    }

    /// Geometry with an overridden Walker size (same seed orbit and phasing).
    pub fn with_walker(scenario: &'a Scenario, planes: u32, sats_per_plane: u32) -> Geometry<'a> {
        let spec = cislunar_core::walker::WalkerSpec::new(
            planes,
            sats_per_plane,
            scenario.walker.phasing.min(planes.saturating_sub(1)),
        )
        .expect("validated scenario walker sizes");
        let base = OrbitalElements {
            epoch: scenario.epoch,
            ..scenario.leo_base
        };
        let fleet = walker_constellation(&spec, &base).expect("validated walker seed");
        Geometry {
            scenario,
            fleet,
            start: scenario.epoch,
        }
    }

    pub fn satellite_count(&self) -> usize {
        self.fleet.len()
    }

    pub fn epoch_at(&self, t_s: f64) -> Epoch {
        self.start.plus_seconds(t_s)
    }

    // -- positions --

    pub fn moon_center(&self, t_s: f64) -> Vec3 {
        ephemeris::moon_position_at(self.epoch_at(t_s))
    }

    pub fn station_position(&self, t_s: f64) -> Vec3 {
        site_position_inertial(
            &self.scenario.earth_station,
            &self.scenario.earth,
            Vec3::ZERO,
            self.epoch_at(t_s),
        )
    }

    pub fn facility_position(&self, t_s: f64) -> Vec3 {
        site_position_inertial(
            &self.scenario.lunar_facility,
            &self.scenario.moon,
            self.moon_center(t_s),
            self.epoch_at(t_s),
        )
    }

    pub fn satellite_position(&self, index: usize, t_s: f64) -> Vec3 {
        propagate(&self.fleet[index], self.scenario.earth.mu_km3_s2, t_s)
            .expect("fleet elements are valid closed orbits")
            .position_km
    }

    pub fn gateway_position(&self, t_s: f64) -> Vec3 {
        let gw = OrbitalElements {
            epoch: self.start,
            ..self.scenario.gateway
        };
        self.moon_center(t_s)
            + propagate(&gw, self.scenario.moon.mu_km3_s2, t_s)
                .expect("gateway elements are a valid closed orbit")
                .position_km
    }

    fn occluders(&self, t_s: f64) -> [(Vec3, f64); 2] {
        [
            (Vec3::ZERO, self.scenario.earth.radius_km),
            (self.moon_center(t_s), self.scenario.moon.radius_km),
        ]
    }

    // -- visibility predicates --

    /// Earth station sees satellite `index`: elevation at the station meets
    /// its mask and the segment clears both bodies.
    pub fn e2l_visible(&self, index: usize, t_s: f64) -> bool {
        let station = self.station_position(t_s);
        let sat = self.satellite_position(index, t_s);
        let elev = elevation_deg(station, Vec3::ZERO, sat);
        if elev < self.scenario.earth_station.min_elevation_deg {
            return false;
        }
        line_of_sight(station, sat, &self.occluders(t_s)).unwrap_or(false)
    }

    /// Satellite `index` sees the Gateway (no site: pure line of sight).
    pub fn l2g_visible(&self, index: usize, t_s: f64) -> bool {
        let sat = self.satellite_position(index, t_s);
        let gw = self.gateway_position(t_s);
        line_of_sight(sat, gw, &self.occluders(t_s)).unwrap_or(false)
    }

    /// Gateway sees the lunar facility.
    pub fn g2m_visible(&self, t_s: f64) -> bool {
        let facility = self.facility_position(t_s);
        let gw = self.gateway_position(t_s);
        let elev = elevation_deg(facility, self.moon_center(t_s), gw);
        if elev < self.scenario.lunar_facility.min_elevation_deg {
            return false;
        }
        line_of_sight(facility, gw, &self.occluders(t_s)).unwrap_or(false)
    }

    // -- hop ranges --

    /// Distance carried by a hop at an instant, km.
    ///
    /// Relayed hops (E2L, L2G) use the nearest currently-visible satellite;
    /// outside any visibility window they fall back to the nearest
    /// satellite so the value stays defined for plotting.
    pub fn hop_distance_km(&self, hop: Hop, t_s: f64) -> f64 {
        match hop {
            Hop::E2l => {
                let station = self.station_position(t_s);
                self.nearest_satellite(station, t_s, |i| self.e2l_visible(i, t_s))
            }
            Hop::L2g => {
                let gw = self.gateway_position(t_s);
                self.nearest_satellite(gw, t_s, |i| self.l2g_visible(i, t_s))
            }
            Hop::G2m => self
                .gateway_position(t_s)
                .distance(self.facility_position(t_s)),
        }
    }

    fn nearest_satellite<V: Fn(usize) -> bool>(&self, from: Vec3, t_s: f64, visible: V) -> f64 {
        let mut best_visible = f64::INFINITY;
        let mut best_any = f64::INFINITY;
        for index in 0..self.fleet.len() {
            let d = from.distance(self.satellite_position(index, t_s));
            best_any = best_any.min(d);
            if visible(index) {
                best_visible = best_visible.min(d);
            }
        }
        if best_visible.is_finite() {
            best_visible
        } else {
            best_any
        }
    }
}
