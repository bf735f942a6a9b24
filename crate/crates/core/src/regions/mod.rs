//! Completion-time regions: two convex sub-regions, one on each side of the
//! diagonal `d1 = d2`, meeting on a shared 45° ray from `C̄`.

mod build;
mod strong;

use serde::{Serialize, Serializer};

use crate::channels::GbcChannel;
use crate::ctmap::Side;
use crate::math::{gamma_unchecked, inv_gamma_unchecked, CompletionTimePair, LoadSpec, SoloCaps, EPS_MEMBER};

pub use build::{gbc_ctr, polygon_ctr, very_strong_ctr};
pub use strong::{strong_ctr_closed_form, HalfPlane, StrongCtrClosedForm};

/// Anything that can answer "is this completion-time pair in the region".
pub trait CtMembership: Sync {
    fn ct_contains_with(&self, d: CompletionTimePair, eps: f64) -> bool;

    fn ct_contains(&self, d: CompletionTimePair) -> bool {
        self.ct_contains_with(d, EPS_MEMBER)
    }

    /// Corner points of the region, used to size comparison grids.
    fn corners(&self) -> Vec<CompletionTimePair>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RegionTag {
    Exact,
    Achievable,
    Outer,
}

/// Open ray `from + t·dir`, `t ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ray {
    pub from: CompletionTimePair,
    pub dir: [f64; 2],
}

pub const UP: [f64; 2] = [0.0, 1.0];
pub const RIGHT: [f64; 2] = [1.0, 0.0];
pub const DIAGONAL: [f64; 2] = [1.0, 1.0];

/// Smooth broadcast-channel boundary, traced by the power split `P1` of user 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GbcArc {
    pub channel: GbcChannel,
    pub load: LoadSpec,
    /// The load-ray split `P1′`.
    pub p1_prime: f64,
    pub p1_lo: f64,
    pub p1_hi: f64,
}

impl GbcArc {
    fn caps(&self) -> SoloCaps {
        self.channel.caps()
    }

    /// Side-one image `(τ1/γ(h1²P1), τ2/R2* + γ(h2²P1)·τ1/(R2*·γ(h1²P1)))`.
    pub(crate) fn side1_point(&self, p1: f64) -> CompletionTimePair {
        let ch = &self.channel;
        let cap2 = self.caps().cap2;
        let r1 = ch.r1_at(p1);
        CompletionTimePair {
            d1: self.load.tau1 / r1,
            d2: self.load.tau2 / cap2 + gamma_unchecked(ch.g2() * p1) * self.load.tau1 / (cap2 * r1),
        }
    }

    /// Side-two image `(τ1/R1* + (R1* − r1)·τ2/(R1*·r2), τ2/r2)`.
    pub(crate) fn side2_point(&self, p1: f64) -> CompletionTimePair {
        let ch = &self.channel;
        let cap1 = self.caps().cap1;
        let (r1, r2) = (ch.r1_at(p1), ch.r2_at(p1));
        CompletionTimePair {
            d1: self.load.tau1 / cap1 + (cap1 - r1) * self.load.tau2 / (cap1 * r2),
            d2: self.load.tau2 / r2,
        }
    }

    fn contains(&self, side: Side, d: CompletionTimePair, eps: f64) -> bool {
        let ch = &self.channel;
        let caps = self.caps();
        let load = &self.load;
        match side {
            Side::One => {
                if d.d1 > d.d2 + eps || d.d1 < load.tau1 / caps.cap1 - eps {
                    return false;
                }
                // The cheapest split that still delivers τ1/d1 to user 1.
                let need = inv_gamma_unchecked(load.tau1 / d.d1) / ch.g1();
                let p1 = need.max(self.p1_prime).min(ch.power());
                d.d2 >= self.side1_point(p1).d2 - eps
            }
            Side::Two => {
                if d.d2 > d.d1 + eps || d.d2 < load.tau2 / caps.cap2 - eps {
                    return false;
                }
                let room = (caps.cap2 - load.tau2 / d.d2).max(0.0);
                let p1_max = inv_gamma_unchecked(room) / ch.g2();
                let p1 = p1_max.min(self.p1_prime).max(0.0);
                if ch.r2_at(p1) <= 0.0 {
                    return false;
                }
                d.d1 >= self.side2_point(p1).d1 - eps
            }
        }
    }

    fn point(&self, side: Side, p1: f64) -> CompletionTimePair {
        match side {
            Side::One => self.side1_point(p1),
            Side::Two => self.side2_point(p1),
        }
    }
}

/// One convex completion-time sub-region.
///
/// `vertices` run along the lower-left boundary with `d1` increasing. The
/// region is everything to the left of the path that comes in along
/// `-ray_in` to the first vertex, follows the vertices (or the arc), and
/// leaves along `ray_out` from the last vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexCtSubregion {
    side: Side,
    vertices: Vec<CompletionTimePair>,
    ray_in: [f64; 2],
    ray_out: [f64; 2],
    arc: Option<GbcArc>,
    /// Vertices not dominated by any other point of the sub-region.
    pareto: Vec<CompletionTimePair>,
}

impl ConvexCtSubregion {
    /// `vertices` in traversal order, from the end of the incoming ray to the
    /// start of the outgoing one.
    pub(crate) fn polyline(side: Side, mut vertices: Vec<CompletionTimePair>) -> Self {
        vertices.dedup_by(|p, q| same_point(*p, *q));
        let (ray_in, ray_out) = side_rays(side);
        let pareto = pareto_front(&vertices);
        Self {
            side,
            vertices,
            ray_in,
            ray_out,
            arc: None,
            pareto,
        }
    }

    pub(crate) fn arc(side: Side, arc: GbcArc) -> Self {
        let (ray_in, ray_out) = side_rays(side);
        // Both sides trace from the larger split down to the smaller one.
        let vertices = vec![arc.point(side, arc.p1_hi), arc.point(side, arc.p1_lo)];
        Self {
            side,
            pareto: vertices.clone(),
            vertices,
            ray_in,
            ray_out,
            arc: Some(arc),
        }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn vertices(&self) -> &[CompletionTimePair] {
        &self.vertices
    }

    pub fn arc_descriptor(&self) -> Option<&GbcArc> {
        self.arc.as_ref()
    }

    pub fn rays(&self) -> [Ray; 2] {
        [
            Ray {
                from: self.vertices[0],
                dir: self.ray_in,
            },
            Ray {
                from: *self.vertices.last().expect("non-empty vertex chain"),
                dir: self.ray_out,
            },
        ]
    }

    pub fn contains_with(&self, d: CompletionTimePair, eps: f64) -> bool {
        if let Some(arc) = &self.arc {
            return arc.contains(self.side, d, eps);
        }
        // Upward closure of the sub-region: its Pareto chain closed off by a
        // vertical and a horizontal ray. Equal to the sub-region itself
        // whenever C̄ is not dominated.
        let left_of = |p: CompletionTimePair, e: [f64; 2]| {
            let len = e[0].hypot(e[1]);
            (e[0] * (d.d2 - p.d2) - e[1] * (d.d1 - p.d1)) / len >= -eps
        };
        let chain = &self.pareto;
        if !left_of(chain[0], [0.0, -1.0]) {
            return false;
        }
        for w in chain.windows(2) {
            if !left_of(w[0], [w[1].d1 - w[0].d1, w[1].d2 - w[0].d2]) {
                return false;
            }
        }
        left_of(*chain.last().unwrap(), RIGHT)
    }

    /// Lower envelope `min d2` over the sub-region's upward closure at `d1`.
    fn envelope(&self, x: f64) -> f64 {
        let c = &self.pareto;
        if x < c[0].d1 {
            return f64::INFINITY;
        }
        for w in c.windows(2) {
            if x <= w[1].d1 {
                let t = if w[1].d1 > w[0].d1 { (x - w[0].d1) / (w[1].d1 - w[0].d1) } else { 1.0 };
                return w[0].d2 + t * (w[1].d2 - w[0].d2);
            }
        }
        c.last().unwrap().d2
    }

    /// Arc samples from the first vertex to the last, `extra` of them in between.
    fn trace(&self, extra: usize) -> Vec<CompletionTimePair> {
        match &self.arc {
            Some(arc) => {
                let (from, to) = (arc.p1_hi, arc.p1_lo);
                let k = extra + 1;
                (0..=k)
                    .map(|i| arc.point(self.side, from + (to - from) * i as f64 / k as f64))
                    .collect()
            }
            None => sample_polyline(&self.vertices, extra),
        }
    }
}

fn side_rays(side: Side) -> ([f64; 2], [f64; 2]) {
    match side {
        Side::One => (UP, DIAGONAL),
        Side::Two => (DIAGONAL, RIGHT),
    }
}

/// A completion-time region as the union of its two sub-regions.
#[derive(Debug, Clone, PartialEq)]
pub struct CTRegion {
    pub tag: RegionTag,
    pub sub1: ConvexCtSubregion,
    pub sub2: ConvexCtSubregion,
}

/// Lower-left boundary of a region: enters along `-start_ray` into
/// `points[0]`, leaves along `end_ray` from the last point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryTrace {
    pub start_ray: [f64; 2],
    #[serde(serialize_with = "ser_points")]
    pub points: Vec<CompletionTimePair>,
    pub end_ray: [f64; 2],
}

impl BoundaryTrace {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("d1,d2\n");
        for p in &self.points {
            s.push_str(&format!("{},{}\n", fmt12(p.d1), fmt12(p.d2)));
        }
        s
    }
}

impl CTRegion {
    /// The shared corner `C̄` on the diagonal.
    pub fn c_bar(&self) -> CompletionTimePair {
        *self.sub1.vertices.last().unwrap()
    }

    pub fn contains_with(&self, d: CompletionTimePair, eps: f64) -> bool {
        self.sub1.contains_with(d, eps) || self.sub2.contains_with(d, eps)
    }

    pub fn contains(&self, d: CompletionTimePair) -> bool {
        self.contains_with(d, EPS_MEMBER)
    }

    /// All distinct corner points in boundary order.
    pub fn vertices(&self) -> Vec<CompletionTimePair> {
        let mut v = self.sub1.vertices.clone();
        v.extend(self.sub2.vertices.iter().copied());
        v.dedup_by(|p, q| same_point(*p, *q));
        v
    }

    /// About `n` points along the lower-left boundary, monotone in `d1`.
    ///
    /// Corners are always present; points lying on a straight run (including
    /// the two rays) are dropped; the remaining budget is spread along the
    /// edges. A region with a single corner repeats it to honour `n`.
    pub fn boundary(&self, n: usize) -> BoundaryTrace {
        let n = n.max(2);
        let has_arc = self.sub1.arc.is_some() || self.sub2.arc.is_some();
        let corners = if has_arc { self.vertices() } else { self.union_corners() };
        let corners = drop_collinear(corners, UP, RIGHT);
        let points = if corners.len() >= n {
            corners
        } else if corners.len() == 1 {
            vec![corners[0]; n]
        } else if !has_arc {
            sample_polyline(&corners, n - corners.len())
        } else {
            let extra = n - corners.len();
            let n1 = self.sub1.vertices.len();
            let n2 = self.sub2.vertices.len();
            let e1 = extra * n1 / (n1 + n2).max(1);
            let mut pts = self.sub1.trace(e1);
            let rest = self.sub2.trace(extra - e1);
            pts.extend(rest.into_iter().skip(1));
            pts
        };
        BoundaryTrace {
            start_ray: self.sub1.ray_in,
            points,
            end_ray: self.sub2.ray_out,
        }
    }

    /// Corners of the lower envelope of the two upward-closed sub-regions,
    /// including where the envelopes cross and where one starts under the
    /// other.
    fn union_corners(&self) -> Vec<CompletionTimePair> {
        let (a, b) = (&self.sub1, &self.sub2);
        let mut xs: Vec<f64> = a.pareto.iter().chain(&b.pareto).map(|p| p.d1).collect();
        xs.sort_by(f64::total_cmp);
        xs.dedup_by(|p, q| (*p - *q).abs() <= 1e-12);
        let diff = |x: f64| a.envelope(x) - b.envelope(x);
        let mut all = xs.clone();
        for w in xs.windows(2) {
            let (f0, f1) = (diff(w[0]), diff(w[1]));
            if f0.is_finite() && f1.is_finite() && f0 * f1 < 0.0 {
                all.push(w[0] + (w[1] - w[0]) * f0 / (f0 - f1));
            }
        }
        all.sort_by(f64::total_cmp);
        let start = [a.pareto[0].d1, b.pareto[0].d1];
        let mut out = Vec::new();
        for x in all {
            let v = a.envelope(x).min(b.envelope(x));
            // Just left of x, a sub-region starting exactly at x is absent.
            let left = [a, b]
                .iter()
                .zip(start)
                .filter(|(_, s)| x > *s + 1e-12)
                .map(|(sub, _)| sub.envelope(x))
                .fold(f64::INFINITY, f64::min);
            if left.is_finite() && left > v + 1e-12 {
                out.push(CompletionTimePair { d1: x, d2: left });
            }
            out.push(CompletionTimePair { d1: x, d2: v });
        }
        out
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(CtrExport::from(self)).expect("plain data serializes")
    }
}

impl CtMembership for CTRegion {
    fn ct_contains_with(&self, d: CompletionTimePair, eps: f64) -> bool {
        self.contains_with(d, eps)
    }

    fn corners(&self) -> Vec<CompletionTimePair> {
        self.vertices()
    }
}

fn drop_collinear(pts: Vec<CompletionTimePair>, ray_in: [f64; 2], ray_out: [f64; 2]) -> Vec<CompletionTimePair> {
    let n = pts.len();
    if n <= 1 {
        return pts;
    }
    let dir = |a: CompletionTimePair, b: CompletionTimePair| [b.d1 - a.d1, b.d2 - a.d2];
    let straight = |u: [f64; 2], v: [f64; 2]| {
        let cross = u[0] * v[1] - u[1] * v[0];
        let dot = u[0] * v[0] + u[1] * v[1];
        cross.abs() <= 1e-12 * u[0].hypot(u[1]) * v[0].hypot(v[1]) && dot > 0.0
    };
    let mut out = Vec::with_capacity(n);
    let mut prev_dir = [-ray_in[0], -ray_in[1]];
    for i in 0..n {
        let next_dir = if i + 1 < n { dir(pts[i], pts[i + 1]) } else { ray_out };
        if straight(prev_dir, next_dir) {
            continue;
        }
        out.push(pts[i]);
        prev_dir = next_dir;
    }
    if out.is_empty() {
        out.push(pts[0]);
    }
    out
}

fn same_point(p: CompletionTimePair, q: CompletionTimePair) -> bool {
    let tol = 1e-10 * (1.0 + p.d1.abs().max(p.d2.abs()));
    (p.d1 - q.d1).abs() <= tol && (p.d2 - q.d2).abs() <= tol
}

/// Non-dominated points in ascending `d1`.
fn pareto_front(pts: &[CompletionTimePair]) -> Vec<CompletionTimePair> {
    let mut out: Vec<CompletionTimePair> = Vec::new();
    for (i, &p) in pts.iter().enumerate() {
        let dominated = pts.iter().enumerate().any(|(k, &q)| {
            k != i && !same_point(p, q) && q.d1 <= p.d1 + 1e-12 && q.d2 <= p.d2 + 1e-12
        });
        if !dominated && !out.iter().any(|&q| same_point(p, q)) {
            out.push(p);
        }
    }
    out.sort_by(|p, q| p.d1.total_cmp(&q.d1).then(q.d2.total_cmp(&p.d2)));
    out
}

/// Inserts `extra` points along a polyline, spread by edge length.
fn sample_polyline(corners: &[CompletionTimePair], extra: usize) -> Vec<CompletionTimePair> {
    let lengths: Vec<f64> = corners
        .windows(2)
        .map(|w| (w[1].d1 - w[0].d1).hypot(w[1].d2 - w[0].d2))
        .collect();
    let total: f64 = lengths.iter().sum();
    let edges = lengths.len();
    let mut out = vec![corners[0]];
    let mut given = 0;
    for (i, w) in corners.windows(2).enumerate() {
        let share = if i + 1 == edges {
            extra - given
        } else if total > 0.0 {
            ((extra as f64 * lengths[i] / total).round() as usize).min(extra - given)
        } else {
            0
        };
        given += share;
        for s in 1..=share {
            let t = s as f64 / (share + 1) as f64;
            out.push(CompletionTimePair {
                d1: w[0].d1 + t * (w[1].d1 - w[0].d1),
                d2: w[0].d2 + t * (w[1].d2 - w[0].d2),
            });
        }
        out.push(w[1]);
    }
    out
}

pub(crate) fn fmt12(x: f64) -> String {
    let r: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    format!("{r}")
}

/// Rounds to 12 significant digits for stable text output.
pub fn round12(x: f64) -> f64 {
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn ser_points<S: Serializer>(pts: &[CompletionTimePair], s: S) -> Result<S::Ok, S::Error> {
    let v: Vec<[f64; 2]> = pts.iter().map(|p| [round12(p.d1), round12(p.d2)]).collect();
    v.serialize(s)
}

#[derive(Serialize)]
struct RayExport {
    from: [f64; 2],
    dir: [f64; 2],
}

#[derive(Serialize)]
struct ArcExport {
    p1_from: f64,
    p1_to: f64,
}

#[derive(Serialize)]
struct SubExport {
    side: Side,
    vertices: Vec<[f64; 2]>,
    rays: Vec<RayExport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    arc: Option<ArcExport>,
}

#[derive(Serialize)]
struct CtrExport {
    tag: RegionTag,
    sub1: SubExport,
    sub2: SubExport,
}

impl From<&ConvexCtSubregion> for SubExport {
    fn from(s: &ConvexCtSubregion) -> Self {
        let pt = |p: CompletionTimePair| [round12(p.d1), round12(p.d2)];
        SubExport {
            side: s.side,
            vertices: s.vertices.iter().map(|&p| pt(p)).collect(),
            rays: s
                .rays()
                .iter()
                .map(|r| RayExport {
                    from: pt(r.from),
                    dir: r.dir,
                })
                .collect(),
            arc: s.arc.map(|a| ArcExport {
                p1_from: round12(a.p1_hi),
                p1_to: round12(a.p1_lo),
            }),
        }
    }
}

impl From<&CTRegion> for CtrExport {
    fn from(c: &CTRegion) -> Self {
        CtrExport {
            tag: c.tag,
            sub1: (&c.sub1).into(),
            sub2: (&c.sub2).into(),
        }
    }
}
