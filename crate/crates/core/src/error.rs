use thiserror::Error;

use crate::channels::Regime;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Reasons a candidate extreme-point list is not a usable polygonal rate region.
///
/// Segment indices are 1-based: segment `j` joins `A_j` and `A_{j+1}`.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolygonError {
    #[error("polygon needs at least 3 extreme points, got {0}")]
    TooFewPoints(usize),
    #[error("point A_{index} is negative or not finite")]
    BadPoint { index: usize },
    #[error("segment {segment} is degenerate (zero length or its line passes through the origin)")]
    Degenerate { segment: usize },
    #[error("polygon is not convex at segment {segment}: {reason}")]
    NonConvex { segment: usize, reason: String },
    #[error("first segment is not horizontal (a_1 = {a1})")]
    FirstNotHorizontal { a1: f64 },
    #[error("last segment {segment} is not vertical (b = {b})")]
    LastNotVertical { segment: usize, b: f64 },
    #[error("polygon has {0} extreme points, more than the supported six")]
    TooManyPoints(usize),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid channel: {0}")]
    InvalidChannel(String),
    #[error("operation requires the {expected} regime, channel is {actual}")]
    WrongRegime {
        expected: &'static str,
        actual: Regime,
    },
    #[error("unbounded completion time: {0}")]
    Unbounded(String),
    #[error("invalid polygon: {0}")]
    Polygon(#[from] PolygonError),
    #[error("region mismatch: {0}")]
    RegionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}
