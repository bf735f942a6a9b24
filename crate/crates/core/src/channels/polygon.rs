//! Convex polygonal rate regions described by their dominant face.

use serde::Serialize;

use super::RateRegion;
use crate::error::PolygonError;
use crate::math::{LoadSpec, RatePair};

/// Relative tolerance for coefficient comparisons and vertex merging.
const COEF_TOL: f64 = 1e-12;
/// Absolute tolerance for the horizontal-first / vertical-last checks.
const AXIS_TOL: f64 = 1e-9;

/// Normalized line `a·r1 + b·r2 = 1` through one face segment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Segment {
    pub a: f64,
    pub b: f64,
}

impl Segment {
    #[inline]
    pub fn eval(&self, r: RatePair) -> f64 {
        self.a * r.r1 + self.b * r.r2
    }
}

/// `alpha·r1 + beta·r2 ≤ rhs`, with non-negative coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateConstraint {
    pub alpha: f64,
    pub beta: f64,
    pub rhs: f64,
}

impl RateConstraint {
    pub fn new(alpha: f64, beta: f64, rhs: f64) -> Self {
        Self { alpha, beta, rhs }
    }

    fn satisfied(&self, r: RatePair) -> bool {
        self.alpha * r.r1 + self.beta * r.r2 <= self.rhs * (1.0 + COEF_TOL) + 1e-14
    }
}

/// Convex rate region whose dominant face is the chain `A_1 … A_J`.
///
/// `A_1` ends a horizontal first segment, `A_J` ends a vertical last
/// segment, and the region is `{r ≥ 0 : a_j·r1 + b_j·r2 ≤ 1 ∀j}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolygonalRateRegion {
    points: Vec<RatePair>,
    segments: Vec<Segment>,
}

impl PolygonalRateRegion {
    /// Extreme points `A_1 … A_J`.
    pub fn points(&self) -> &[RatePair] {
        &self.points
    }

    /// Segment coefficients; `segments()[j-1]` is segment `j`.
    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Number of extreme points `J`.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// 1-based accessor `A_j`.
    pub fn point(&self, j: usize) -> RatePair {
        self.points[j - 1]
    }

    /// 1-based accessor for segment `j` (joining `A_j` and `A_{j+1}`).
    pub fn segment(&self, j: usize) -> Segment {
        self.segments[j - 1]
    }

    pub fn max_r1(&self) -> f64 {
        self.points.last().map_or(0.0, |p| p.r1)
    }

    pub fn max_r2(&self) -> f64 {
        self.points.first().map_or(0.0, |p| p.r2)
    }
}

impl RateRegion for PolygonalRateRegion {
    fn contains_with(&self, r: RatePair, eps: f64) -> bool {
        r.r1 >= -eps
            && r.r2 >= -eps
            && self.segments.iter().all(|s| s.eval(r) <= 1.0 + eps)
    }
}

/// Validates an ordered extreme-point list and computes its segment lines.
pub fn validate_polygon(points: &[RatePair]) -> Result<PolygonalRateRegion, PolygonError> {
    if points.len() < 3 {
        return Err(PolygonError::TooFewPoints(points.len()));
    }
    for (i, p) in points.iter().enumerate() {
        if !(p.r1.is_finite() && p.r2.is_finite()) || p.r1 < 0.0 || p.r2 < 0.0 {
            return Err(PolygonError::BadPoint { index: i + 1 });
        }
    }

    let mut segments = Vec::with_capacity(points.len() - 1);
    for (j, w) in points.windows(2).enumerate() {
        let segment = j + 1;
        let (p, q) = (w[0], w[1]);
        if q.r2 == p.r2 && q.r1 == p.r1 {
            return Err(PolygonError::Degenerate { segment });
        }
        if q.r2 > p.r2 {
            return Err(PolygonError::NonConvex {
                segment,
                reason: format!("r2 rises from {} to {}", p.r2, q.r2),
            });
        }
        if q.r1 < p.r1 {
            return Err(PolygonError::NonConvex {
                segment,
                reason: format!("r1 falls from {} to {}", p.r1, q.r1),
            });
        }
        // Two-point line through p and q, scaled so the right-hand side is 1.
        let k = p.r2 * q.r1 - p.r1 * q.r2;
        let scale = (p.r1.abs() + p.r2.abs()) * (q.r1.abs() + q.r2.abs());
        if k <= COEF_TOL * scale {
            return Err(PolygonError::Degenerate { segment });
        }
        segments.push(Segment {
            a: (p.r2 - q.r2) / k,
            b: (q.r1 - p.r1) / k,
        });
    }

    let first = &mut segments[0];
    if first.a.abs() > AXIS_TOL * first.b.abs().max(1.0) {
        return Err(PolygonError::FirstNotHorizontal { a1: first.a });
    }
    first.a = 0.0;
    let last_idx = segments.len();
    let last = &mut segments[last_idx - 1];
    if last.b.abs() > AXIS_TOL * last.a.abs().max(1.0) {
        return Err(PolygonError::LastNotVertical {
            segment: last_idx,
            b: last.b,
        });
    }
    last.b = 0.0;

    for (j, w) in segments.windows(2).enumerate() {
        let (s, t) = (w[0], w[1]);
        let tol = COEF_TOL * (s.a.abs() + s.b.abs() + t.a.abs() + t.b.abs());
        if t.a <= s.a + tol || t.b >= s.b - tol {
            return Err(PolygonError::NonConvex {
                segment: j + 2,
                reason: format!(
                    "coefficients must satisfy a_{} < a_{} and b_{} > b_{} (got a: {} -> {}, b: {} -> {})",
                    j + 1,
                    j + 2,
                    j + 1,
                    j + 2,
                    s.a,
                    t.a,
                    s.b,
                    t.b
                ),
            });
        }
    }

    Ok(PolygonalRateRegion {
        points: points.to_vec(),
        segments,
    })
}

/// Builds the dominant face of `{r ≥ 0 : every constraint holds}` by vertex
/// enumeration. Constraints made redundant by the others or by non-negativity
/// contribute no extreme point and drop out.
pub fn polygon_from_constraints(
    constraints: &[RateConstraint],
) -> Result<PolygonalRateRegion, PolygonError> {
    let mut lines: Vec<RateConstraint> = constraints.to_vec();
    // The axes, as r1 ≥ 0 and r2 ≥ 0 boundaries.
    lines.push(RateConstraint::new(1.0, 0.0, 0.0));
    lines.push(RateConstraint::new(0.0, 1.0, 0.0));

    let feasible = |r: RatePair| r.r1 >= -1e-14 && r.r2 >= -1e-14 && constraints.iter().all(|c| c.satisfied(r));

    let mut candidates = Vec::new();
    for i in 0..lines.len() {
        for k in (i + 1)..lines.len() {
            let (l, m) = (lines[i], lines[k]);
            let det = l.alpha * m.beta - l.beta * m.alpha;
            if det.abs() < 1e-300 {
                continue;
            }
            let r1 = (l.rhs * m.beta - l.beta * m.rhs) / det;
            let r2 = (l.alpha * m.rhs - l.rhs * m.alpha) / det;
            let r = RatePair {
                r1: r1.max(0.0),
                r2: r2.max(0.0),
            };
            if r1.is_finite() && r2.is_finite() && feasible(r) {
                candidates.push(r);
            }
        }
    }
    if candidates.is_empty() {
        return Err(PolygonError::TooFewPoints(0));
    }

    candidates.sort_by(|p, q| p.r1.total_cmp(&q.r1).then(q.r2.total_cmp(&p.r2)));
    let scale = candidates
        .iter()
        .fold(0.0f64, |m, p| m.max(p.r1).max(p.r2))
        .max(1e-300);
    let merge = COEF_TOL * 100.0 * scale;
    // One point per abscissa: the highest.
    let mut columns: Vec<RatePair> = Vec::new();
    for p in candidates {
        match columns.last() {
            Some(q) if (p.r1 - q.r1).abs() <= merge => {}
            _ => columns.push(p),
        }
    }

    // Upper hull, dropping collinear middles.
    let mut hull: Vec<RatePair> = Vec::new();
    for p in columns {
        while hull.len() >= 2 {
            let o = hull[hull.len() - 2];
            let a = hull[hull.len() - 1];
            let cross = (a.r1 - o.r1) * (p.r2 - o.r2) - (a.r2 - o.r2) * (p.r1 - o.r1);
            if cross >= -merge * scale {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    // Rounding can lift r2 by an ulp along a horizontal face.
    for i in 1..hull.len() {
        hull[i].r2 = hull[i].r2.min(hull[i - 1].r2);
    }
    if let Some(last) = hull.last().copied() {
        if last.r2 > merge {
            hull.push(RatePair {
                r1: last.r1,
                r2: 0.0,
            });
        }
    }
    validate_polygon(&hull)
}

/// Boundary point `C` where the load ray `r2/r1 = τ₂/τ₁` leaves the region,
/// and the 1-based index `j*` of the segment containing it. A vertex hit is
/// assigned to the lower of its two segments.
pub fn intersect_load_ray_polygon(
    region: &PolygonalRateRegion,
    load: &LoadSpec,
) -> (RatePair, usize) {
    let ts: Vec<f64> = region
        .segments
        .iter()
        .map(|s| {
            let denom = s.a * load.tau1 + s.b * load.tau2;
            if denom > 0.0 {
                1.0 / denom
            } else {
                f64::INFINITY
            }
        })
        .collect();
    let t_min = ts.iter().copied().fold(f64::INFINITY, f64::min);
    let j_star = ts
        .iter()
        .position(|&t| t <= t_min * (1.0 + 1e-12))
        .expect("a non-empty segment list")
        + 1;
    (
        RatePair {
            r1: t_min * load.tau1,
            r2: t_min * load.tau2,
        },
        j_star,
    )
}
