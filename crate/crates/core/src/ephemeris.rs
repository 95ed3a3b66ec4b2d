//! Geocentric lunar ephemeris from two-body propagation of mean elements.
//!
//! Day-scale access statistics are geometry-dominated, so a Keplerian
//! ephemeris with almanac mean elements (sub-1% position error) is enough;
//! it also keeps the crate dependency-free. The element angles are treated
//! as referred to the Earth equatorial inertial frame, a documented
//! approximation (the 5.145 degree inclination is nominally ecliptic-
//! relative; the equatorial offset oscillates a few degrees per month and
//! does not change day-scale access trends).

#[allow(unused_imports)]
use num_traits::Float;

use crate::bodies::{MU_EARTH, MU_MOON};
use crate::orbits::{self, OrbitalElements, StateVector};
use crate::time::Epoch;
use crate::vec3::Vec3;

/// Mean lunar orbit elements at J2000.0 (almanac values).
pub const MOON_SEMI_MAJOR_AXIS_KM: f64 = 384_400.0;
pub const MOON_ECCENTRICITY: f64 = 0.0549;
pub const MOON_INCLINATION_DEG: f64 = 5.145;
pub const MOON_RAAN_J2000_DEG: f64 = 125.0446;
pub const MOON_ARG_PERIGEE_J2000_DEG: f64 = 318.3087;
pub const MOON_MEAN_ANOMALY_J2000_DEG: f64 = 134.9634;

/// Gravitational parameter of the Earth-Moon two-body problem, km^3/s^2.
pub const MU_EARTH_MOON: f64 = MU_EARTH + MU_MOON;

/// Lunar mean elements at the J2000.0 reference epoch.
pub fn moon_elements() -> OrbitalElements {
    let nu = orbits::mean_to_true(MOON_MEAN_ANOMALY_J2000_DEG.to_radians(), MOON_ECCENTRICITY)
        .expect("lunar mean elements are a valid closed orbit")
        .to_degrees();
    OrbitalElements::new(
        MOON_SEMI_MAJOR_AXIS_KM,
        MOON_ECCENTRICITY,
        MOON_INCLINATION_DEG,
        MOON_ARG_PERIGEE_J2000_DEG,
        MOON_RAAN_J2000_DEG,
        nu,
        Epoch::J2000,
    )
    .expect("lunar mean elements are a valid closed orbit")
}

/// Sidereal period implied by the mean elements, seconds.
pub fn moon_orbital_period_s() -> f64 {
    orbits::orbital_period_s(MOON_SEMI_MAJOR_AXIS_KM, MU_EARTH_MOON)
        .expect("lunar semi-major axis is positive")
}

/// Earth-centered inertial state of the Moon barycenter.
///
/// Total on valid epochs: the element set is fixed and closed, so
/// propagation cannot fail.
pub fn moon_state_at(epoch: Epoch) -> StateVector {
    let dt = epoch.seconds_since(Epoch::J2000);
    orbits::propagate(&moon_elements(), MU_EARTH_MOON, dt)
        .expect("two-body propagation of the lunar mean elements is total")
}

/// Inertial angle (degrees) of the Moon's Earth-facing meridian at J2000.0.
///
/// The tidally locked prime meridian points at the Earth, i.e. opposite
/// the Moon's geocentric position.
pub fn earth_facing_meridian_j2000_deg() -> f64 {
    let pos = moon_state_at(Epoch::J2000).position_km;
    let to_earth = -pos;
    orbits::normalize_deg(f64::atan2(to_earth.y, to_earth.x).to_degrees())
}

/// Convenience: geocentric lunar position at an epoch.
pub fn moon_position_at(epoch: Epoch) -> Vec3 {
    moon_state_at(epoch).position_km
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perigee_and_apogee_radii() {
        // Shift the epoch so the anomaly sweeps through perigee/apogee and
        // check against a(1-e) and a(1+e).
        let el = moon_elements();
        let period = moon_orbital_period_s();
        let m0 = orbits::true_to_mean(el.true_anomaly_deg.to_radians(), el.eccentricity);
        // time from epoch back to perigee (M = 0)
        let n = 2.0 * core::f64::consts::PI / period;
        let to_perigee = -m0 / n;
        let r_perigee = moon_position_at(Epoch::J2000.plus_seconds(to_perigee)).norm();
        let r_apogee =
            moon_position_at(Epoch::J2000.plus_seconds(to_perigee + period / 2.0)).norm();
        assert!(
            (r_perigee - 384_400.0 * (1.0 - 0.0549)).abs() < 0.5,
            "perigee radius {r_perigee}"
        );
        assert!(
            (r_apogee - 384_400.0 * (1.0 + 0.0549)).abs() < 0.5,
            "apogee radius {r_apogee}"
        );
    }

    #[test]
    fn radius_stays_within_orbit_bounds() {
        for day in 0..28 {
            let r = moon_position_at(Epoch::J2000.plus_seconds(day as f64 * 86_400.0)).norm();
            assert!(
                (356_000.0..=407_000.0).contains(&r),
                "lunar radius {r} out of range on day {day}"
            );
        }
    }

    #[test]
    fn periodic_with_orbital_period() {
        let p0 = moon_position_at(Epoch::J2000);
        let p1 = moon_position_at(Epoch::J2000.plus_seconds(moon_orbital_period_s()));
        assert!(p0.distance(p1) / p0.norm() < 1e-6);
    }

    #[test]
    fn meridian_faces_earth_at_reference_epoch() {
        let meridian = earth_facing_meridian_j2000_deg();
        let pos = moon_position_at(Epoch::J2000);
        let expected = orbits::normalize_deg(f64::atan2(-pos.y, -pos.x).to_degrees());
        assert!((meridian - expected).abs() < 1e-12);
    }
}
