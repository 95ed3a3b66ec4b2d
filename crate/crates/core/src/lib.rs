//! Orbit propagation, visibility analysis, and RF/FSO link budgets for
//! Earth-Moon relay chains.
//!
//! The crate models a three-hop communication chain between an Earth
//! station and a lunar surface facility: Earth station to a LEO SmallSat
//! constellation (`E2L`), constellation to a lunar-orbit Gateway relay
//! (`L2G`), and Gateway to the facility (`G2M`). Every hop carries both an
//! RF and a free-space-optical (FSO) transceiver pair, and a hard-switching
//! policy picks one of the two per time sample.
//!
//! The building blocks are deliberately small and composable:
//!
//! - [`time`] / [`bodies`]: uniform time scale, spherical central bodies,
//!   ground sites.
//! - [`ephemeris`] / [`frames`]: a two-body lunar ephemeris and body-fixed
//!   to inertial transforms for sites.
//! - [`orbits`] / [`walker`]: classical-element two-body propagation and
//!   Walker-delta constellation generation.
//! - [`access`]: line-of-sight and elevation predicates, access-interval
//!   extraction with bisection refinement, and interval set algebra.
//! - [`linkbudget`]: antenna gains, path loss, noise, SNR/Eb/N0, and
//!   modulation/coding BER models.
//! - [`hybrid`]: per-hop RF/FSO selection and end-to-end chain evaluation
//!   (bottleneck rate, composite BER, delay, data volume).
//!
//! All computations are pure functions of their inputs: no global state,
//! no randomness, results independent of evaluation order. The crate is
//! `no_std`-compatible (with `alloc`); the companion CLI crate carries the
//! scenario file format and report emission.

#![cfg_attr(not(feature = "std"), no_std)]
// Validation deliberately writes `!(x > 0.0)` rather than `x <= 0.0`: the
// negated form also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod access;
pub mod bodies;
pub mod ephemeris;
mod error;
pub mod frames;
pub mod hybrid;
pub mod linkbudget;
pub mod orbits;
pub mod time;
pub mod vec3;
pub mod walker;

pub use error::{Error, Result};
pub use time::{Epoch, TimeGrid};
pub use vec3::Vec3;

/// Speed of light, km/s.
pub const SPEED_OF_LIGHT_KM_S: f64 = 299_792.458;

/// Boltzmann constant, J/K.
pub const BOLTZMANN_J_PER_K: f64 = 1.380_649e-23;
