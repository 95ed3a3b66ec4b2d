//! Classical-element two-body propagation.
//!
//! No perturbations (J2, third body, SRP): day-scale access trends for the
//! scenarios modeled here are geometry-dominated, and the source element
//! sets are plain classical elements.

#[allow(unused_imports)]
use num_traits::Float;

use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::time::Epoch;
use crate::vec3::Vec3;

/// Classical Keplerian element set. Angles in degrees, normalized to
/// [0, 360) on construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitalElements {
    pub semi_major_axis_km: f64,
    pub eccentricity: f64,
    pub inclination_deg: f64,
    pub arg_perigee_deg: f64,
    pub raan_deg: f64,
    pub true_anomaly_deg: f64,
    pub epoch: Epoch,
}

impl OrbitalElements {
    pub fn new(
        semi_major_axis_km: f64,
        eccentricity: f64,
        inclination_deg: f64,
        arg_perigee_deg: f64,
        raan_deg: f64,
        true_anomaly_deg: f64,
        epoch: Epoch,
    ) -> Result<OrbitalElements> {
        let el = OrbitalElements {
            semi_major_axis_km,
            eccentricity,
            inclination_deg,
            arg_perigee_deg: normalize_deg(arg_perigee_deg),
            raan_deg: normalize_deg(raan_deg),
            true_anomaly_deg: normalize_deg(true_anomaly_deg),
            epoch,
        };
        el.validate()?;
        Ok(el)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.semi_major_axis_km > 0.0) {
            return Err(Error::Domain {
                what: "semi-major axis must be positive",
                value: self.semi_major_axis_km,
            });
        }
        if !(0.0..1.0).contains(&self.eccentricity) {
            return Err(Error::Domain {
                what: "eccentricity must lie in [0, 1) for closed orbits",
                value: self.eccentricity,
            });
        }
        if !(0.0..=180.0).contains(&self.inclination_deg) {
            return Err(Error::Domain {
                what: "inclination must lie in [0, 180] degrees",
                value: self.inclination_deg,
            });
        }
        Ok(())
    }
}

/// Inertial position/velocity at an instant, in the central body's frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVector {
    pub position_km: Vec3,
    pub velocity_km_s: Vec3,
    pub epoch: Epoch,
}

/// Wraps an angle to [0, 360) degrees.
pub fn normalize_deg(angle: f64) -> f64 {
    let a = angle - 360.0 * (angle / 360.0).floor();
    // floor() can round a up to exactly 360.0 for tiny negative inputs
    if a >= 360.0 {
        a - 360.0
    } else {
        a
    }
}

fn normalize_rad(angle: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let a = angle - two_pi * (angle / two_pi).floor();
    if a >= two_pi {
        a - two_pi
    } else {
        a
    }
}

// ---------------------------------------------------------------------------
// Anomaly conversions (all radians)
// ---------------------------------------------------------------------------

pub fn true_to_eccentric(true_anomaly: f64, e: f64) -> f64 {
    let (s, c) = true_anomaly.sin_cos();
    normalize_rad(f64::atan2((1.0 - e * e).sqrt() * s, e + c))
}

pub fn eccentric_to_true(eccentric_anomaly: f64, e: f64) -> f64 {
    let (s, c) = eccentric_anomaly.sin_cos();
    normalize_rad(f64::atan2((1.0 - e * e).sqrt() * s, c - e))
}

pub fn eccentric_to_mean(eccentric_anomaly: f64, e: f64) -> f64 {
    normalize_rad(eccentric_anomaly - e * eccentric_anomaly.sin())
}

pub fn true_to_mean(true_anomaly: f64, e: f64) -> f64 {
    eccentric_to_mean(true_to_eccentric(true_anomaly, e), e)
}

pub fn mean_to_true(mean_anomaly: f64, e: f64) -> Result<f64> {
    Ok(eccentric_to_true(solve_kepler(mean_anomaly, e)?, e))
}

/// Solves Kepler's equation `E - e sin E = M` by Newton iteration.
///
/// Initial guess E0 = M for e < 0.8 and E0 = pi otherwise; converges to
/// |E - e sin E - M| < 1e-12 rad within 50 iterations for all e < 1.
pub fn solve_kepler(mean_anomaly: f64, e: f64) -> Result<f64> {
    const TOL: f64 = 1e-12;
    const MAX_ITER: usize = 50;

    let m = normalize_rad(mean_anomaly);
    let mut ecc_anomaly = if e < 0.8 { m } else { PI };
    for _ in 0..MAX_ITER {
        let f = ecc_anomaly - e * ecc_anomaly.sin() - m;
        if f.abs() < TOL {
            return Ok(ecc_anomaly);
        }
        let f_prime = 1.0 - e * ecc_anomaly.cos();
        ecc_anomaly -= f / f_prime;
    }
    let residual = ecc_anomaly - e * ecc_anomaly.sin() - m;
    if residual.abs() < TOL {
        Ok(ecc_anomaly)
    } else {
        Err(Error::KeplerDiverged {
            eccentricity: e,
            mean_anomaly_rad: m,
        })
    }
}

// ---------------------------------------------------------------------------
// Element / state conversions
// ---------------------------------------------------------------------------

/// Position and velocity from classical elements.
///
/// Perifocal radius r = a(1-e^2)/(1+e cos nu), rotated by the argument of
/// perigee, inclination, and RAAN into the inertial frame.
pub fn elements_to_state(el: &OrbitalElements, mu_km3_s2: f64) -> Result<StateVector> {
    el.validate()?;
    if !(mu_km3_s2 > 0.0) {
        return Err(Error::Domain {
            what: "mu must be positive",
            value: mu_km3_s2,
        });
    }

    let e = el.eccentricity;
    let p = el.semi_major_axis_km * (1.0 - e * e);
    let nu = el.true_anomaly_deg.to_radians();
    let (sin_nu, cos_nu) = nu.sin_cos();
    let r = p / (1.0 + e * cos_nu);

    // perifocal frame: x toward perigee, z along angular momentum
    let r_pf = Vec3::new(r * cos_nu, r * sin_nu, 0.0);
    let v_scale = (mu_km3_s2 / p).sqrt();
    let v_pf = Vec3::new(-v_scale * sin_nu, v_scale * (e + cos_nu), 0.0);

    let (sin_w, cos_w) = el.arg_perigee_deg.to_radians().sin_cos();
    let (sin_i, cos_i) = el.inclination_deg.to_radians().sin_cos();
    let (sin_o, cos_o) = el.raan_deg.to_radians().sin_cos();

    let rotate = |v: Vec3| -> Vec3 {
        Vec3::new(
            (cos_o * cos_w - sin_o * sin_w * cos_i) * v.x
                + (-cos_o * sin_w - sin_o * cos_w * cos_i) * v.y,
            (sin_o * cos_w + cos_o * sin_w * cos_i) * v.x
                + (-sin_o * sin_w + cos_o * cos_w * cos_i) * v.y,
            (sin_w * sin_i) * v.x + (cos_w * sin_i) * v.y,
        )
    };

    Ok(StateVector {
        position_km: rotate(r_pf),
        velocity_km_s: rotate(v_pf),
        epoch: el.epoch,
    })
}

/// Advances the element set by `dt_s` seconds of two-body motion.
///
/// The true anomaly is converted to mean anomaly, advanced by n*dt with
/// n = sqrt(mu/a^3), and converted back through Kepler's equation. All
/// other elements are unchanged.
pub fn propagate_elements(
    el: &OrbitalElements,
    mu_km3_s2: f64,
    dt_s: f64,
) -> Result<OrbitalElements> {
    el.validate()?;
    if !dt_s.is_finite() {
        return Err(Error::Domain {
            what: "propagation offset must be finite",
            value: dt_s,
        });
    }
    let e = el.eccentricity;
    let n = (mu_km3_s2 / el.semi_major_axis_km.powi(3)).sqrt();
    let m0 = true_to_mean(el.true_anomaly_deg.to_radians(), e);
    let nu = mean_to_true(m0 + n * dt_s, e)?;
    Ok(OrbitalElements {
        true_anomaly_deg: normalize_deg(nu.to_degrees()),
        epoch: el.epoch.plus_seconds(dt_s),
        ..*el
    })
}

/// Two-body state `dt_s` seconds after the element epoch.
pub fn propagate(el: &OrbitalElements, mu_km3_s2: f64, dt_s: f64) -> Result<StateVector> {
    elements_to_state(&propagate_elements(el, mu_km3_s2, dt_s)?, mu_km3_s2)
}

/// Orbital period 2*pi*sqrt(a^3/mu), seconds.
pub fn orbital_period_s(semi_major_axis_km: f64, mu_km3_s2: f64) -> Result<f64> {
    if !(semi_major_axis_km > 0.0) {
        return Err(Error::Domain {
            what: "semi-major axis must be positive",
            value: semi_major_axis_km,
        });
    }
    if !(mu_km3_s2 > 0.0) {
        return Err(Error::Domain {
            what: "mu must be positive",
            value: mu_km3_s2,
        });
    }
    Ok(2.0 * PI * (semi_major_axis_km.powi(3) / mu_km3_s2).sqrt())
}

/// Specific orbital energy -mu/2a, km^2/s^2.
pub fn specific_energy(state: &StateVector, mu_km3_s2: f64) -> f64 {
    state.velocity_km_s.norm_squared() / 2.0 - mu_km3_s2 / state.position_km.norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::{MU_EARTH, MU_MOON};

    fn leo_table() -> OrbitalElements {
        OrbitalElements::new(7_400.0, 0.0, 120.0, 0.0, 0.0, 90.0, Epoch::J2000).unwrap()
    }

    fn gateway_table() -> OrbitalElements {
        OrbitalElements::new(6_142.4, 0.6, 67.7, 270.0, 270.0, 90.0, Epoch::J2000).unwrap()
    }

    #[test]
    fn circular_leo_radius_is_semi_major_axis() {
        let state = elements_to_state(&leo_table(), MU_EARTH).unwrap();
        assert!((state.position_km.norm() - 7_400.0).abs() < 1e-9);
    }

    #[test]
    fn gateway_apolune_radius() {
        let mut el = gateway_table();
        el.true_anomaly_deg = 180.0;
        let state = elements_to_state(&el, MU_MOON).unwrap();
        // a(1+e) = 6142.4 * 1.6
        assert!((state.position_km.norm() - 9_827.84).abs() < 1e-9);
    }

    #[test]
    fn axis_aligned_equatorial_case() {
        let el = OrbitalElements::new(7_000.0, 0.0, 0.0, 0.0, 0.0, 0.0, Epoch::J2000).unwrap();
        let state = elements_to_state(&el, MU_EARTH).unwrap();
        let v_circ = (MU_EARTH / 7_000.0).sqrt();
        assert!((state.position_km - Vec3::new(7_000.0, 0.0, 0.0)).norm() < 1e-9);
        assert!((state.velocity_km_s - Vec3::new(0.0, v_circ, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn vis_viva_holds_for_table_orbits() {
        for (el, mu) in [(leo_table(), MU_EARTH), (gateway_table(), MU_MOON)] {
            let state = elements_to_state(&el, mu).unwrap();
            let v2 = state.velocity_km_s.norm_squared();
            let expected = mu * (2.0 / state.position_km.norm() - 1.0 / el.semi_major_axis_km);
            assert!(
                ((v2 - expected) / expected).abs() < 1e-9,
                "vis-viva violated: v^2={v2}, expected {expected}"
            );
        }
    }

    #[test]
    fn hyperbolic_elements_rejected() {
        assert!(OrbitalElements::new(7_000.0, 1.2, 0.0, 0.0, 0.0, 0.0, Epoch::J2000).is_err());
        assert!(OrbitalElements::new(7_000.0, 1.0, 0.0, 0.0, 0.0, 0.0, Epoch::J2000).is_err());
    }

    #[test]
    fn propagation_is_periodic() {
        for (el, mu) in [(leo_table(), MU_EARTH), (gateway_table(), MU_MOON)] {
            let period = orbital_period_s(el.semi_major_axis_km, mu).unwrap();
            let s0 = elements_to_state(&el, mu).unwrap();
            let s1 = propagate(&el, mu, period).unwrap();
            assert!(
                s0.position_km.distance(s1.position_km) < 1e-6,
                "state after one period drifted {} km",
                s0.position_km.distance(s1.position_km)
            );
        }
    }

    #[test]
    fn propagation_composes() {
        let el = gateway_table();
        let direct = propagate(&el, MU_MOON, 10_000.0).unwrap();
        let step1 = propagate_elements(&el, MU_MOON, 4_000.0).unwrap();
        let composed = propagate(&step1, MU_MOON, 6_000.0).unwrap();
        assert!(direct.position_km.distance(composed.position_km) < 1e-6);
    }

    #[test]
    fn energy_and_momentum_conserved_over_a_day() {
        for (el, mu) in [(leo_table(), MU_EARTH), (gateway_table(), MU_MOON)] {
            let e0 = -mu / (2.0 * el.semi_major_axis_km);
            let h0 =
                (mu * el.semi_major_axis_km * (1.0 - el.eccentricity * el.eccentricity)).sqrt();
            for i in 0..=24 {
                let state = propagate(&el, mu, i as f64 * 3_600.0).unwrap();
                let energy = specific_energy(&state, mu);
                let h = state.position_km.cross(state.velocity_km_s).norm();
                assert!(((energy - e0) / e0).abs() < 1e-9, "energy drift at {i} h");
                assert!(((h - h0) / h0).abs() < 1e-9, "momentum drift at {i} h");
            }
        }
    }

    #[test]
    fn kepler_solver_tolerance_across_eccentricities() {
        for e_step in 0..=19 {
            let e = e_step as f64 * 0.05;
            for m_step in 0..36 {
                let m = m_step as f64 * 10.0_f64.to_radians();
                let ecc = solve_kepler(m, e).unwrap();
                assert!(
                    (ecc - e * ecc.sin() - m).abs() < 1e-12,
                    "residual too large at e={e}, M={m}"
                );
            }
        }
    }

    #[test]
    fn anomaly_conversions_round_trip() {
        let e = 0.6;
        for nu_deg in [0.0, 45.0, 90.0, 179.0, 180.0, 270.0, 359.0] {
            let nu = nu_deg.to_radians();
            let m = true_to_mean(nu, e);
            let back = mean_to_true(m, e).unwrap();
            assert!(
                (normalize_rad(back - nu)).min((normalize_rad(nu - back)).abs()) < 1e-10,
                "round trip failed at nu={nu_deg}"
            );
        }
    }

    #[test]
    fn period_scaling_law() {
        let t1 = orbital_period_s(7_400.0, MU_EARTH).unwrap();
        let t2 = orbital_period_s(7_400.0, 4.0 * MU_EARTH).unwrap();
        assert!((t1 / t2 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn normalize_deg_wraps() {
        assert_eq!(normalize_deg(360.0), 0.0);
        assert_eq!(normalize_deg(-90.0), 270.0);
        assert_eq!(normalize_deg(725.0), 5.0);
        assert!(normalize_deg(-1e-18) < 360.0);
    }
}
