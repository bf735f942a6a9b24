use serde::Serialize;

use super::{Minimizer, SolverResult, WeightInterval};
use crate::channels::{intersect_load_ray_polygon, PolygonalRateRegion};
use crate::ctmap::{map_side1, map_side2, Side};
use crate::error::{Error, Result};
use crate::math::{LoadSpec, RatePair, SoloCaps, EPS_MEMBER};

/// Weight partitions of `[0, 1]` for a polygonal region. Interval `l` of
/// `pi1` is `(pi1[l−1], pi1[l]]` (closed at 0), and likewise for `pi2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartitionSet {
    pub j_star: usize,
    pub k1_star: usize,
    pub k2_star: usize,
    pub pi1: Vec<f64>,
    pub pi2: Vec<f64>,
    /// `w¹_j = 1 − cap2·b_j` for `j = 1..J−1`.
    pub w1: Vec<f64>,
    /// `w²_j = a_j·cap1` for `j = 1..J−1`.
    pub w2: Vec<f64>,
    pub c: RatePair,
}

pub fn polygon_partitions(region: &PolygonalRateRegion, caps: &SoloCaps, load: &LoadSpec) -> PartitionSet {
    let (c, j_star) = intersect_load_ray_polygon(region, load);
    let segs = region.segments();
    let last = segs.len();
    let w1: Vec<f64> = segs.iter().map(|s| 1.0 - caps.cap2 * s.b).collect();
    let w2: Vec<f64> = segs.iter().map(|s| s.a * caps.cap1).collect();

    let k1_star = (j_star..=last)
        .find(|&j| w1[j - 1] >= -EPS_MEMBER)
        .unwrap_or(last);
    let k2_star = (1..=j_star)
        .rev()
        .find(|&j| w2[j - 1] <= 1.0 + EPS_MEMBER)
        .unwrap_or(1);

    let mut pi1 = vec![0.0];
    pi1.extend_from_slice(&w1[k1_star - 1..]);
    let mut pi2 = vec![0.0];
    pi2.extend_from_slice(&w2[1..k2_star]);
    pi2.push(1.0);

    PartitionSet {
        j_star,
        k1_star,
        k2_star,
        pi1,
        pi2,
        w1,
        w2,
        c,
    }
}

/// 1-based interval of `pi` holding `w`; ties go to the lower interval.
fn locate(pi: &[f64], w: f64) -> usize {
    (1..pi.len()).find(|&l| w <= pi[l]).unwrap_or(pi.len() - 1)
}

fn interval(pi: &[f64], l: usize) -> WeightInterval {
    WeightInterval {
        lo: pi[l - 1],
        hi: pi[l],
        lo_closed: l == 1,
        hi_closed: true,
    }
}

impl PartitionSet {
    pub fn side1_solution(&self, l: usize) -> Minimizer {
        if l + self.k1_star == self.j_star + 1 {
            Minimizer::LoadRayPoint
        } else {
            Minimizer::Vertex(l + self.k1_star - 1)
        }
    }

    pub fn side2_solution(&self, l: usize) -> Minimizer {
        if l == self.j_star {
            Minimizer::LoadRayPoint
        } else {
            Minimizer::Vertex(l + 1)
        }
    }

    /// Minimizers over all weights, in interval order.
    pub fn side1_solutions(&self) -> Vec<Minimizer> {
        (1..self.pi1.len()).map(|l| self.side1_solution(l)).collect()
    }

    pub fn side2_solutions(&self) -> Vec<Minimizer> {
        (1..self.pi2.len()).map(|l| self.side2_solution(l)).collect()
    }

    pub fn locate(&self, side: Side, w: f64) -> (Minimizer, WeightInterval) {
        match side {
            Side::One => {
                let l = locate(&self.pi1, w);
                (self.side1_solution(l), interval(&self.pi1, l))
            }
            Side::Two => {
                let l = locate(&self.pi2, w);
                (self.side2_solution(l), interval(&self.pi2, l))
            }
        }
    }
}

/// Minimizes `w·d1 + (1−w)·d2` over one side of a polygonal region's image.
pub fn polygon_min_weighted(
    region: &PolygonalRateRegion,
    caps: &SoloCaps,
    load: &LoadSpec,
    w: f64,
    side: Side,
) -> Result<SolverResult> {
    if !(0.0..=1.0).contains(&w) {
        return Err(Error::Domain(format!("weight {w} outside [0, 1]")));
    }
    let parts = polygon_partitions(region, caps, load);
    let (source, weight_interval) = parts.locate(side, w);
    let r = match source {
        Minimizer::Vertex(j) => region.point(j),
        _ => parts.c,
    };
    let d = match side {
        Side::One => map_side1(r, load, caps.cap2)?,
        Side::Two => map_side2(r, load, caps.cap1)?,
    };
    Ok(SolverResult {
        minimizer_rate: r,
        minimizer_ct: d,
        objective: w * d.d1 + (1.0 - w) * d.d2,
        side,
        weight_interval,
        source,
    })
}
