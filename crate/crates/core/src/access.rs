//! Visibility predicates, access-interval extraction, and interval algebra.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::time::TimeGrid;
use crate::vec3::Vec3;

/// Relative tolerance when testing whether a line-of-sight endpoint sits
/// inside an occluding sphere. Sites at zero altitude lie exactly on their
/// body's sphere; without the slack, rounding in the rotation chain would
/// flag them as occluded endpoints.
const OCCLUDER_EPS: f64 = 1e-9;

/// Contiguous window in scenario-relative seconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub start_s: f64,
    pub stop_s: f64,
}

impl Interval {
    pub fn new(start_s: f64, stop_s: f64) -> Interval {
        Interval { start_s, stop_s }
    }

    pub fn duration_s(&self) -> f64 {
        self.stop_s - self.start_s
    }
}

/// Count/min/mean/max/sum summary of interval durations. `min`, `mean`,
/// and `max` are absent for an empty interval set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccessStats {
    pub count: usize,
    pub min_s: Option<f64>,
    pub mean_s: Option<f64>,
    pub max_s: Option<f64>,
    pub sum_s: f64,
}

// ---------------------------------------------------------------------------
// Geometric predicates
// ---------------------------------------------------------------------------

/// True iff the segment p1-p2 misses every occluding sphere.
///
/// Per occluder, the segment is clear when the closest point of the
/// infinite line lies outside the segment (the endpoints are already known
/// to be outside) or when its distance to the center is at least the
/// radius. Symmetric in p1/p2.
pub fn line_of_sight(p1: Vec3, p2: Vec3, occluders: &[(Vec3, f64)]) -> Result<bool> {
    let d = p2 - p1;
    let len2 = d.norm_squared();
    for &(center, radius) in occluders {
        let limit = radius * (1.0 - OCCLUDER_EPS);
        if p1.distance(center) < limit || p2.distance(center) < limit {
            return Err(Error::EndpointInsideOccluder);
        }
        if len2 == 0.0 {
            continue;
        }
        let t = (center - p1).dot(d) / len2;
        if t <= 0.0 || t >= 1.0 {
            continue;
        }
        let closest = p1 + d * t;
        if closest.distance(center) < radius {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Elevation of `target` above the local horizon of a site, degrees.
///
/// 90 degrees minus the angle between the site zenith (site position minus
/// body center) and the site-to-target direction.
pub fn elevation_deg(site_position: Vec3, body_center: Vec3, target: Vec3) -> f64 {
    let zenith = (site_position - body_center).normalized();
    let to_target = (target - site_position).normalized();
    let cos_zenith_angle = zenith.dot(to_target).clamp(-1.0, 1.0);
    90.0 - cos_zenith_angle.acos().to_degrees()
}

// ---------------------------------------------------------------------------
// Interval extraction
// ---------------------------------------------------------------------------

/// Scans the grid for windows where `visible` holds, refining every
/// transition between adjacent samples by bisection to `refine_tol_s`.
///
/// Intervals are clipped to [0, duration], sorted, and pairwise disjoint.
/// Windows shorter than one grid step can be missed entirely; the step is
/// the knob. Deterministic for a deterministic predicate.
pub fn access_intervals<F: Fn(f64) -> bool>(
    visible: F,
    grid: &TimeGrid,
    refine_tol_s: f64,
) -> Result<Vec<Interval>> {
    if !(refine_tol_s > 0.0 && refine_tol_s <= grid.step_s()) {
        return Err(Error::Domain {
            what: "refinement tolerance must lie in (0, grid step]",
            value: refine_tol_s,
        });
    }

    let times: Vec<f64> = grid.times().collect();
    let states: Vec<bool> = times.iter().map(|&t| visible(t)).collect();

    let mut intervals = Vec::new();
    let mut open_start: Option<f64> = None;
    if states[0] {
        open_start = Some(0.0);
    }
    for i in 1..times.len() {
        if states[i] == states[i - 1] {
            continue;
        }
        let boundary = bisect_transition(&visible, times[i - 1], times[i], refine_tol_s);
        if states[i] {
            open_start = Some(boundary);
        } else if let Some(start) = open_start.take() {
            intervals.push(Interval::new(start, boundary));
        }
    }
    if let Some(start) = open_start {
        intervals.push(Interval::new(start, grid.duration_s()));
    }

    // clip and drop anything degenerate after refinement
    let duration = grid.duration_s();
    let mut cleaned: Vec<Interval> = Vec::with_capacity(intervals.len());
    for iv in intervals {
        let start = iv.start_s.max(0.0);
        let stop = iv.stop_s.min(duration);
        if stop > start {
            match cleaned.last_mut() {
                Some(prev) if start <= prev.stop_s => prev.stop_s = prev.stop_s.max(stop),
                _ => cleaned.push(Interval::new(start, stop)),
            }
        }
    }
    Ok(cleaned)
}

/// Bisects a predicate transition inside (lo, hi) down to `tol`, returning
/// the bracket midpoint.
fn bisect_transition<F: Fn(f64) -> bool>(visible: &F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let lo_state = visible(lo);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if visible(mid) == lo_state {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Duration statistics over sorted, disjoint intervals.
pub fn access_stats(intervals: &[Interval]) -> Result<AccessStats> {
    validate_sorted_disjoint(intervals)?;
    if intervals.is_empty() {
        return Ok(AccessStats {
            count: 0,
            min_s: None,
            mean_s: None,
            max_s: None,
            sum_s: 0.0,
        });
    }
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    let mut sum = 0.0;
    for iv in intervals {
        let d = iv.duration_s();
        min = min.min(d);
        max = max.max(d);
        sum += d;
    }
    Ok(AccessStats {
        count: intervals.len(),
        min_s: Some(min),
        mean_s: Some(sum / intervals.len() as f64),
        max_s: Some(max),
        sum_s: sum,
    })
}

fn validate_sorted_disjoint(intervals: &[Interval]) -> Result<()> {
    for (i, iv) in intervals.iter().enumerate() {
        if !(iv.start_s < iv.stop_s) {
            return Err(Error::OverlappingIntervals);
        }
        if i > 0 && iv.start_s < intervals[i - 1].stop_s {
            return Err(Error::OverlappingIntervals);
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Interval set algebra
// ---------------------------------------------------------------------------

/// Set union of any number of interval lists ("any satellite visible").
/// Touching or overlapping windows merge; output is sorted and disjoint.
pub fn union_access(lists: &[Vec<Interval>]) -> Vec<Interval> {
    let mut all: Vec<Interval> = lists.iter().flatten().copied().collect();
    all.sort_by(|a, b| a.start_s.total_cmp(&b.start_s));
    let mut merged: Vec<Interval> = Vec::with_capacity(all.len());
    for iv in all {
        match merged.last_mut() {
            Some(prev) if iv.start_s <= prev.stop_s => prev.stop_s = prev.stop_s.max(iv.stop_s),
            _ => merged.push(iv),
        }
    }
    merged
}

/// Set intersection across hops: instants where every list is accessible.
pub fn intersect_chain(lists: &[Vec<Interval>]) -> Vec<Interval> {
    let Some(first) = lists.first() else {
        return Vec::new();
    };
    let mut acc = first.clone();
    for list in &lists[1..] {
        acc = intersect_two(&acc, list);
        if acc.is_empty() {
            break;
        }
    }
    acc
}

fn intersect_two(a: &[Interval], b: &[Interval]) -> Vec<Interval> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let lo = a[i].start_s.max(b[j].start_s);
        let hi = a[i].stop_s.min(b[j].stop_s);
        if hi > lo {
            out.push(Interval::new(lo, hi));
        }
        if a[i].stop_s <= b[j].stop_s {
            i += 1;
        } else {
            j += 1;
        }
    }
    out
}
