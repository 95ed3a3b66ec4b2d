//! Central-body constants and ground-site definitions.

use alloc::string::String;

use crate::error::{Error, Result};

/// Standard gravitational parameter of the Earth, km^3/s^2.
pub const MU_EARTH: f64 = 398_600.441_8;
/// Standard gravitational parameter of the Moon, km^3/s^2.
pub const MU_MOON: f64 = 4_902.800066;
/// Mean equatorial radius of the Earth, km.
pub const EARTH_RADIUS_KM: f64 = 6_378.137;
/// Mean radius of the Moon, km.
pub const MOON_RADIUS_KM: f64 = 1_737.4;
/// Sidereal rotation period of the Earth, s.
pub const EARTH_SIDEREAL_DAY_S: f64 = 86_164.090_5;
/// Sidereal rotation (= orbital) period of the tidally locked Moon, s.
pub const MOON_SIDEREAL_PERIOD_S: f64 = 27.321_661 * crate::time::SECONDS_PER_DAY;
/// Greenwich mean sidereal angle at J2000.0, degrees.
pub const EARTH_MERIDIAN_J2000_DEG: f64 = 280.460_618_37;

/// Spherical central body with a uniform spin model.
///
/// `rotation_epoch_meridian_deg` is the inertial angle of the body's prime
/// meridian at J2000.0; the meridian advances by 360 degrees per
/// `rotation_period_s` thereafter.
#[derive(Debug, Clone, PartialEq)]
pub struct BodyConstants {
    pub name: String,
    pub mu_km3_s2: f64,
    pub radius_km: f64,
    pub rotation_period_s: f64,
    pub rotation_epoch_meridian_deg: f64,
}

impl BodyConstants {
    pub fn new(
        name: &str,
        mu_km3_s2: f64,
        radius_km: f64,
        rotation_period_s: f64,
        rotation_epoch_meridian_deg: f64,
    ) -> Result<BodyConstants> {
        if !(mu_km3_s2 > 0.0) {
            return Err(Error::Domain {
                what: "body mu must be positive",
                value: mu_km3_s2,
            });
        }
        if !(radius_km > 0.0) {
            return Err(Error::Domain {
                what: "body radius must be positive",
                value: radius_km,
            });
        }
        Ok(BodyConstants {
            name: String::from(name),
            mu_km3_s2,
            radius_km,
            rotation_period_s,
            rotation_epoch_meridian_deg,
        })
    }

    /// Earth with IAU constants and uniform sidereal spin (no precession
    /// or nutation; sub-arcminute frame effects do not matter at the 24 h
    /// access-statistics scale).
    pub fn earth() -> BodyConstants {
        BodyConstants {
            name: String::from("earth"),
            mu_km3_s2: MU_EARTH,
            radius_km: EARTH_RADIUS_KM,
            rotation_period_s: EARTH_SIDEREAL_DAY_S,
            rotation_epoch_meridian_deg: EARTH_MERIDIAN_J2000_DEG,
        }
    }

    /// Tidally locked Moon: the prime meridian faces the mean Earth
    /// direction at J2000.0 and spins once per sidereal month.
    pub fn moon() -> BodyConstants {
        BodyConstants {
            name: String::from("moon"),
            mu_km3_s2: MU_MOON,
            radius_km: MOON_RADIUS_KM,
            rotation_period_s: MOON_SIDEREAL_PERIOD_S,
            rotation_epoch_meridian_deg: crate::ephemeris::earth_facing_meridian_j2000_deg(),
        }
    }
}

/// Surface site on a spherical body.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundSite {
    pub body: String,
    pub latitude_deg: f64,
    pub longitude_deg: f64,
    pub altitude_km: f64,
    pub min_elevation_deg: f64,
}

impl GroundSite {
    pub fn new(
        body: &str,
        latitude_deg: f64,
        longitude_deg: f64,
        altitude_km: f64,
        min_elevation_deg: f64,
    ) -> Result<GroundSite> {
        let site = GroundSite {
            body: String::from(body),
            latitude_deg,
            longitude_deg,
            altitude_km,
            min_elevation_deg,
        };
        site.validate()?;
        Ok(site)
    }

    pub fn validate(&self) -> Result<()> {
        if !(-90.0..=90.0).contains(&self.latitude_deg) {
            return Err(Error::Domain {
                what: "site latitude must lie in [-90, 90] degrees",
                value: self.latitude_deg,
            });
        }
        if !(-180.0..=180.0).contains(&self.longitude_deg) {
            return Err(Error::Domain {
                what: "site longitude must lie in [-180, 180] degrees",
                value: self.longitude_deg,
            });
        }
        if !(self.altitude_km >= 0.0) {
            return Err(Error::Domain {
                what: "site altitude must be non-negative",
                value: self.altitude_km,
            });
        }
        if !(-5.0..=90.0).contains(&self.min_elevation_deg) {
            return Err(Error::Domain {
                what: "site minimum elevation must lie in [-5, 90] degrees",
                value: self.min_elevation_deg,
            });
        }
        Ok(())
    }
}
