//! Weighted-sum completion-time minimization.

mod gbc;
mod polygon;

use serde::{Serialize, Serializer};

use crate::ctmap::Side;
use crate::math::{CompletionTimePair, RatePair};
use crate::regions::round12;

pub use gbc::{gbc_min_weighted, gbc_tangent, nonconvexity_certificate, GbcSolution, NonconvexityCertificate, TangentLine};
pub use polygon::{polygon_min_weighted, polygon_partitions, PartitionSet};

/// Where a minimizer comes from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Minimizer {
    /// Polygon extreme point `A_j` (1-based).
    Vertex(usize),
    /// The load-ray boundary point `C`.
    LoadRayPoint,
    /// Broadcast boundary point generated by this power split.
    Power(f64),
}

impl Serialize for Minimizer {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match *self {
            Minimizer::Vertex(j) => s.serialize_str(&format!("A{j}")),
            Minimizer::LoadRayPoint => s.serialize_str("C"),
            Minimizer::Power(p) => s.serialize_str(&format!("P1={}", round12(p))),
        }
    }
}

/// Weight interval on which a minimizer is optimal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightInterval {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl WeightInterval {
    pub fn contains(&self, w: f64) -> bool {
        let above = if self.lo_closed { w >= self.lo } else { w > self.lo };
        let below = if self.hi_closed { w <= self.hi } else { w < self.hi };
        above && below
    }

    pub(crate) fn point(w: f64) -> Self {
        Self {
            lo: w,
            hi: w,
            lo_closed: true,
            hi_closed: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolverResult {
    pub minimizer_rate: RatePair,
    pub minimizer_ct: CompletionTimePair,
    pub objective: f64,
    pub side: Side,
    pub weight_interval: WeightInterval,
    pub source: Minimizer,
}
