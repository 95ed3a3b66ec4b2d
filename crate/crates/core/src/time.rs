//! Uniform time scale and sampling grids.
//!
//! A single continuous day-count scale (TT-like) is used throughout; leap
//! seconds and relativistic scale differences are ignored, since only
//! relative time over day-long scenarios matters here.

use crate::error::{Error, Result};

pub const SECONDS_PER_DAY: f64 = 86_400.0;

/// Julian date of the J2000.0 reference epoch (2000-01-01 12:00 TT).
pub const J2000_JD: f64 = 2_451_545.0;

/// Instant on the uniform day-count scale.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Epoch {
    julian_date: f64,
}

impl Epoch {
    /// J2000.0, the anchor for body rotation models and the lunar element set.
    pub const J2000: Epoch = Epoch {
        julian_date: J2000_JD,
    };

    /// Modern-era scenarios only: the date must be finite and past JD 2400000.
    pub fn from_julian_date(julian_date: f64) -> Result<Epoch> {
        if !julian_date.is_finite() || julian_date <= 2_400_000.0 {
            return Err(Error::Domain {
                what: "epoch julian date must be finite and > 2400000",
                value: julian_date,
            });
        }
        Ok(Epoch { julian_date })
    }

    pub fn julian_date(self) -> f64 {
        self.julian_date
    }

    pub fn plus_seconds(self, dt_s: f64) -> Epoch {
        Epoch {
            julian_date: self.julian_date + dt_s / SECONDS_PER_DAY,
        }
    }

    /// Signed offset `self - other` in seconds.
    pub fn seconds_since(self, other: Epoch) -> f64 {
        (self.julian_date - other.julian_date) * SECONDS_PER_DAY
    }
}

/// Evenly spaced sampling of a scenario window.
///
/// Samples sit at `start + i*step` for `i in 0..sample_count()`; the last
/// sample equals `duration` exactly when the duration is a multiple of the
/// step. Events shorter than one step can be missed by grid scans; the step
/// is the knob.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    start: Epoch,
    duration_s: f64,
    step_s: f64,
}

impl TimeGrid {
    pub fn new(start: Epoch, duration_s: f64, step_s: f64) -> Result<TimeGrid> {
        if !duration_s.is_finite() || duration_s <= 0.0 {
            return Err(Error::Domain {
                what: "grid duration must be positive",
                value: duration_s,
            });
        }
        if !step_s.is_finite() || step_s <= 0.0 || step_s > duration_s {
            return Err(Error::Domain {
                what: "grid step must satisfy 0 < step <= duration",
                value: step_s,
            });
        }
        Ok(TimeGrid {
            start,
            duration_s,
            step_s,
        })
    }

    pub fn start(&self) -> Epoch {
        self.start
    }

    pub fn duration_s(&self) -> f64 {
        self.duration_s
    }

    pub fn step_s(&self) -> f64 {
        self.step_s
    }

    /// `floor(duration/step) + 1` samples, including the start.
    pub fn sample_count(&self) -> usize {
        (self.duration_s / self.step_s) as usize + 1
    }

    /// Sample offsets in seconds from the scenario start.
    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        let step = self.step_s;
        (0..self.sample_count()).map(move |i| i as f64 * step)
    }

    pub fn epoch_at(&self, t_s: f64) -> Epoch {
        self.start.plus_seconds(t_s)
    }
}
