//! Body-fixed to inertial transforms for ground sites.
//!
//! Bodies spin uniformly about the inertial +Z axis: the prime meridian
//! sits at `rotation_epoch_meridian_deg` at J2000.0 and advances 360
//! degrees per rotation period.

#[allow(unused_imports)]
use num_traits::Float;

use crate::bodies::{BodyConstants, GroundSite};
use crate::orbits::normalize_deg;
use crate::time::Epoch;
use crate::vec3::Vec3;

/// Inertial angle of the body's prime meridian at `epoch`, degrees in [0, 360).
pub fn rotation_angle_deg(body: &BodyConstants, epoch: Epoch) -> f64 {
    let dt = epoch.seconds_since(Epoch::J2000);
    normalize_deg(body.rotation_epoch_meridian_deg + 360.0 * dt / body.rotation_period_s)
}

/// Site offset from the body center in the body-fixed frame, km.
pub fn site_body_fixed(site: &GroundSite, body: &BodyConstants) -> Vec3 {
    let r = body.radius_km + site.altitude_km;
    let (sin_lat, cos_lat) = site.latitude_deg.to_radians().sin_cos();
    let (sin_lon, cos_lon) = site.longitude_deg.to_radians().sin_cos();
    Vec3::new(r * cos_lat * cos_lon, r * cos_lat * sin_lon, r * sin_lat)
}

/// Inertial site position: the body-fixed offset rotated by the body's
/// spin angle, translated by the body center.
pub fn site_position_inertial(
    site: &GroundSite,
    body: &BodyConstants,
    body_center_km: Vec3,
    epoch: Epoch,
) -> Vec3 {
    let fixed = site_body_fixed(site, body);
    let (sin_t, cos_t) = rotation_angle_deg(body, epoch).to_radians().sin_cos();
    body_center_km
        + Vec3::new(
            cos_t * fixed.x - sin_t * fixed.y,
            sin_t * fixed.x + cos_t * fixed.y,
            fixed.z,
        )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::MOON_SIDEREAL_PERIOD_S;

    #[test]
    fn pole_site_is_rotation_invariant() {
        let earth = BodyConstants::earth();
        let site = GroundSite::new("earth", 90.0, 0.0, 0.0, 0.0).unwrap();
        for hours in [0.0, 5.0, 13.0] {
            let epoch = Epoch::J2000.plus_seconds(hours * 3_600.0);
            let pos = site_position_inertial(&site, &earth, Vec3::ZERO, epoch);
            assert!(pos.distance(Vec3::new(0.0, 0.0, 6_378.137)) < 1e-9);
        }
    }

    #[test]
    fn prime_meridian_equator_site_at_zero_rotation() {
        // Body with meridian angle 0 at J2000: the lat=0/lon=0 site lies on +X.
        let body = BodyConstants::new("test", 1.0, 6_378.137, 86_164.090_5, 0.0).unwrap();
        let site = GroundSite::new("test", 0.0, 0.0, 0.0, 0.0).unwrap();
        let pos = site_position_inertial(&site, &body, Vec3::ZERO, Epoch::J2000);
        assert!(pos.distance(Vec3::new(6_378.137, 0.0, 0.0)) < 1e-9);
    }

    #[test]
    fn lunar_site_repeats_after_one_sidereal_rotation() {
        let moon = BodyConstants::moon();
        let site = GroundSite::new("moon", 0.0, 0.0, 0.0, 0.0).unwrap();
        let p0 = site_position_inertial(&site, &moon, Vec3::ZERO, Epoch::J2000);
        let p1 = site_position_inertial(
            &site,
            &moon,
            Vec3::ZERO,
            Epoch::J2000.plus_seconds(MOON_SIDEREAL_PERIOD_S),
        );
        assert!(p0.distance(p1) < 1e-6);
    }

    #[test]
    fn site_distance_from_center_is_constant() {
        let earth = BodyConstants::earth();
        let site = GroundSite::new("earth", 36.12, -97.07, 0.3, 0.0).unwrap();
        let expected = 6_378.137 + 0.3;
        for t in [0.0, 12_345.0, 86_400.0] {
            let pos =
                site_position_inertial(&site, &earth, Vec3::ZERO, Epoch::J2000.plus_seconds(t));
            assert!(
                ((pos.norm() - expected) / expected).abs() < 1e-9,
                "radius drifted at t={t}"
            );
        }
    }
}
