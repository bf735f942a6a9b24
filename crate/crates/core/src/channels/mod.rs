//! Channel models, interference regimes and rate-region constructors.

mod etw;
mod gbc;
mod gic;
pub mod io;
mod polygon;

pub use etw::{etw_constraints, etw_polygon, EtwKind};
pub use gbc::GbcChannel;
pub use gic::{classify_gic, GicChannel, Regime};
pub use polygon::{
    intersect_load_ray_polygon, polygon_from_constraints, validate_polygon, PolygonalRateRegion,
    RateConstraint, Segment,
};

use crate::math::{RatePair, EPS_MEMBER};

/// A standard (unconstrained) rate region, queried by membership only.
pub trait RateRegion: Sync {
    fn contains_with(&self, r: RatePair, eps: f64) -> bool;

    fn contains(&self, r: RatePair) -> bool {
        self.contains_with(r, EPS_MEMBER)
    }
}

impl<F> RateRegion for F
where
    F: Fn(RatePair) -> bool + Sync,
{
    fn contains_with(&self, r: RatePair, _eps: f64) -> bool {
        self(r)
    }
}
