//! Scenario ingestion, study orchestration, and report emission for the
//! cislunar link simulator.
//!
//! The library half of the CLI: [`scenario`] parses and validates the TOML
//! scenario format, [`geometry`] binds the scenario to positions and
//! visibility predicates, [`study`] runs the access/link/chain analyses,
//! and [`report`] renders the CSV and markdown outputs.

// `!(x > 0.0)` instead of `x <= 0.0`: the negated form also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod geometry;
pub mod report;
pub mod scenario;
pub mod study;

/// The bundled case-study scenario: an Earth station, a 4x4 LEO Walker
/// constellation, a lunar-orbit Gateway relay, and a polar lunar facility.
pub const PAPER_CASE_STUDY_TOML: &str = include_str!("../../../scenarios/paper_case_study.toml");
