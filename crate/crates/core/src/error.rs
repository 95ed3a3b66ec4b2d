use core::fmt;

/// Errors raised by the geometry and link-budget primitives.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A numeric input violated a documented domain constraint.
    Domain { what: &'static str, value: f64 },
    /// Kepler solver failed to converge. Should not occur for e < 1 with
    /// the mandated tolerance; treated as an internal fault.
    KeplerDiverged {
        eccentricity: f64,
        mean_anomaly_rad: f64,
    },
    /// A line-of-sight query was made with an endpoint inside an
    /// occluding sphere.
    EndpointInsideOccluder,
    /// Access statistics were requested over unsorted or overlapping
    /// intervals.
    OverlappingIntervals,
    /// A link was evaluated across transceivers of different technologies.
    TechnologyMismatch,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => write!(f, "{what} (got {value})"),
            Error::KeplerDiverged {
                eccentricity,
                mean_anomaly_rad,
            } => write!(
                f,
                "Kepler solver did not converge (e={eccentricity}, M={mean_anomaly_rad} rad)"
            ),
            Error::EndpointInsideOccluder => {
                write!(f, "line-of-sight endpoint lies inside an occluding sphere")
            }
            Error::OverlappingIntervals => {
                write!(f, "intervals must be sorted and pairwise disjoint")
            }
            Error::TechnologyMismatch => {
                write!(f, "transmitter and receiver technologies differ")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
