//! Walker-delta constellation generation.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::orbits::{self, OrbitalElements};

/// Walker-delta pattern: P equally spaced planes with S equally spaced
/// satellites each, phased between planes by F slots.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkerSpec {
    pub planes: u32,
    pub sats_per_plane: u32,
    /// Inter-plane phasing factor, in [0, planes).
    pub phasing: u32,
}

impl WalkerSpec {
    pub fn new(planes: u32, sats_per_plane: u32, phasing: u32) -> Result<WalkerSpec> {
        if planes < 1 {
            return Err(Error::Domain {
                what: "walker planes must be >= 1",
                value: planes as f64,
            });
        }
        if sats_per_plane < 1 {
            return Err(Error::Domain {
                what: "walker sats per plane must be >= 1",
                value: sats_per_plane as f64,
            });
        }
        if phasing >= planes {
            return Err(Error::Domain {
                what: "walker phasing factor must lie in [0, planes)",
                value: phasing as f64,
            });
        }
        Ok(WalkerSpec {
            planes,
            sats_per_plane,
            phasing,
        })
    }

    pub fn total_satellites(&self) -> usize {
        self.planes as usize * self.sats_per_plane as usize
    }
}

/// Expands a Walker spec around a seed element set into P*S element sets.
///
/// Plane p gets RAAN = base + p*(360/P); slot s in plane p gets mean
/// anomaly = base + s*(360/S) + p*F*(360/(P*S)). Spacing is applied in
/// mean anomaly so slots are exactly equally spaced in time (identical to
/// true-anomaly spacing for circular orbits), then converted back.
pub fn walker_constellation(
    spec: &WalkerSpec,
    base: &OrbitalElements,
) -> Result<Vec<OrbitalElements>> {
    base.validate()?;
    let p_count = spec.planes as f64;
    let s_count = spec.sats_per_plane as f64;
    let total = p_count * s_count;
    let base_mean_deg =
        orbits::true_to_mean(base.true_anomaly_deg.to_radians(), base.eccentricity).to_degrees();

    let mut fleet = Vec::with_capacity(spec.total_satellites());
    for plane in 0..spec.planes {
        let raan = orbits::normalize_deg(base.raan_deg + plane as f64 * 360.0 / p_count);
        for slot in 0..spec.sats_per_plane {
            let mean_deg = base_mean_deg
                + slot as f64 * 360.0 / s_count
                + plane as f64 * spec.phasing as f64 * 360.0 / total;
            let nu = orbits::mean_to_true(mean_deg.to_radians(), base.eccentricity)?.to_degrees();
            fleet.push(OrbitalElements {
                raan_deg: raan,
                true_anomaly_deg: orbits::normalize_deg(nu),
                ..*base
            });
        }
    }
    Ok(fleet)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::time::Epoch;

    fn base() -> OrbitalElements {
        OrbitalElements::new(7_400.0, 0.0, 120.0, 0.0, 0.0, 90.0, Epoch::J2000).unwrap()
    }

    fn approx(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-9
    }

    #[test]
    fn one_by_one_is_identity() {
        let fleet = walker_constellation(&WalkerSpec::new(1, 1, 0).unwrap(), &base()).unwrap();
        assert_eq!(fleet.len(), 1);
        assert_eq!(fleet[0], base());
    }

    #[test]
    fn three_by_three_spacing() {
        let fleet = walker_constellation(&WalkerSpec::new(3, 3, 0).unwrap(), &base()).unwrap();
        assert_eq!(fleet.len(), 9);
        for (i, sat) in fleet.iter().enumerate() {
            let plane = i / 3;
            let slot = i % 3;
            assert!(
                approx(sat.raan_deg, plane as f64 * 120.0),
                "raan of sat {i}"
            );
            let expected = crate::orbits::normalize_deg(90.0 + slot as f64 * 120.0);
            assert!(
                approx(sat.true_anomaly_deg, expected),
                "anomaly of sat {i}: {} vs {expected}",
                sat.true_anomaly_deg
            );
        }
    }

    #[test]
    fn four_by_four_count() {
        let fleet = walker_constellation(&WalkerSpec::new(4, 4, 0).unwrap(), &base()).unwrap();
        assert_eq!(fleet.len(), 16);
    }

    #[test]
    fn slot_zero_of_plane_zero_is_the_seed() {
        for (p, s, f) in [(2, 2, 1), (3, 3, 2), (4, 4, 3)] {
            let fleet = walker_constellation(&WalkerSpec::new(p, s, f).unwrap(), &base()).unwrap();
            assert_eq!(
                fleet[0],
                base(),
                "walker {p}x{s} F={f} must contain the seed"
            );
        }
    }

    #[test]
    fn distinct_slots_and_planes() {
        for f in 0..4 {
            let fleet = walker_constellation(&WalkerSpec::new(4, 4, f).unwrap(), &base()).unwrap();
            let mut raans: alloc::vec::Vec<i64> = fleet
                .iter()
                .map(|el| (el.raan_deg * 1e6).round() as i64)
                .collect();
            raans.sort_unstable();
            raans.dedup();
            assert_eq!(raans.len(), 4, "expected 4 distinct planes at F={f}");

            let mut pairs: alloc::vec::Vec<(i64, i64)> = fleet
                .iter()
                .map(|el| {
                    (
                        (el.raan_deg * 1e6).round() as i64,
                        (el.true_anomaly_deg * 1e6).round() as i64,
                    )
                })
                .collect();
            pairs.sort_unstable();
            pairs.dedup();
            assert_eq!(pairs.len(), 16, "slots must be pairwise distinct at F={f}");
        }
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(WalkerSpec::new(0, 1, 0).is_err());
        assert!(WalkerSpec::new(1, 0, 0).is_err());
        assert!(WalkerSpec::new(2, 2, 2).is_err());
    }
}
