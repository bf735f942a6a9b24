use serde::Serialize;

use super::{Minimizer, SolverResult, WeightInterval};
use crate::channels::GbcChannel;
use crate::ctmap::{map_side1, map_side2, Side};
use crate::error::{Error, Result};
use crate::math::{bisect, LoadSpec, RatePair, EPS_MEMBER, EPS_ROOT};

/// Supporting line `a·r1 + b·r2 = 1` of the broadcast region at the boundary
/// point generated by `P1`, with the weights for which that point is optimal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TangentLine {
    pub a: f64,
    pub b: f64,
    /// `a/b = (1/h1² + P1)/(1/h2² + P1)`.
    pub g: f64,
    pub p1: f64,
    /// `1 − b·R2*`: side-one weight.
    pub w1: f64,
    /// `a·R1*`: side-two weight.
    pub w2: f64,
}

pub fn gbc_tangent(ch: &GbcChannel, p1: f64) -> Result<TangentLine> {
    let r = ch.boundary_point(p1)?;
    Ok(tangent_at(ch, p1, r))
}

fn tangent_at(ch: &GbcChannel, p1: f64, r: RatePair) -> TangentLine {
    let caps = ch.caps();
    let g = (1.0 / ch.g1() + p1) / (1.0 / ch.g2() + p1);
    let b = 1.0 / (r.r2 + g * r.r1);
    let a = g * b;
    TangentLine {
        a,
        b,
        g,
        p1,
        w1: 1.0 - b * caps.cap2,
        w2: a * caps.cap1,
    }
}

fn tangent(ch: &GbcChannel, p1: f64) -> TangentLine {
    tangent_at(
        ch,
        p1,
        RatePair {
            r1: ch.r1_at(p1),
            r2: ch.r2_at(p1),
        },
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GbcSolution {
    pub best: SolverResult,
    pub side1: SolverResult,
    pub side2: SolverResult,
}

/// Minimizes `w·d1 + (1−w)·d2` over the broadcast region, on each side of the
/// diagonal separately, and returns the better of the two.
pub fn gbc_min_weighted(ch: &GbcChannel, load: &LoadSpec, w: f64) -> Result<GbcSolution> {
    if !(0.0..=1.0).contains(&w) {
        return Err(Error::Domain(format!("weight {w} outside [0, 1]")));
    }
    let caps = ch.caps();
    let power = ch.power();
    let (c, p1c) = ch.load_ray_intersection(load);
    let at_c = tangent_at(ch, p1c, c);

    // Side one: w1 grows from w1(C) at P1′ to w1(B) at P.
    let at_b = tangent(ch, power);
    let (p1, source, interval) = if w <= at_c.w1 {
        (p1c, Minimizer::LoadRayPoint, closed(0.0, at_c.w1))
    } else if w >= at_b.w1 {
        (power, Minimizer::Power(power), closed(at_b.w1, 1.0))
    } else {
        let p1 = bisect(|p| tangent(ch, p).w1 - w, p1c, power, EPS_ROOT);
        (p1, Minimizer::Power(p1), WeightInterval::point(w))
    };
    let r = if source == Minimizer::LoadRayPoint { c } else { point(ch, p1) };
    let d = map_side1(r, load, caps.cap2)?;
    let side1 = SolverResult {
        minimizer_rate: r,
        minimizer_ct: d,
        objective: w * d.d1 + (1.0 - w) * d.d2,
        side: Side::One,
        weight_interval: interval,
        source,
    };

    // Side two: w2 grows from w2(A) at 0 to w2(C) at P1′.
    let at_a = tangent(ch, 0.0);
    let (p1, source, interval) = if w <= at_a.w2 {
        (0.0, Minimizer::Power(0.0), closed(0.0, at_a.w2))
    } else if w >= at_c.w2 {
        (p1c, Minimizer::LoadRayPoint, closed(at_c.w2, 1.0))
    } else {
        let p1 = bisect(|p| tangent(ch, p).w2 - w, 0.0, p1c, EPS_ROOT);
        (p1, Minimizer::Power(p1), WeightInterval::point(w))
    };
    let r = if source == Minimizer::LoadRayPoint { c } else { point(ch, p1) };
    let d = map_side2(r, load, caps.cap1)?;
    let side2 = SolverResult {
        minimizer_rate: r,
        minimizer_ct: d,
        objective: w * d.d1 + (1.0 - w) * d.d2,
        side: Side::Two,
        weight_interval: interval,
        source,
    };

    let best = if side2.objective < side1.objective { side2 } else { side1 };
    Ok(GbcSolution { best, side1, side2 })
}

fn point(ch: &GbcChannel, p1: f64) -> RatePair {
    RatePair {
        r1: ch.r1_at(p1),
        r2: ch.r2_at(p1),
    }
}

fn closed(lo: f64, hi: f64) -> WeightInterval {
    WeightInterval {
        lo,
        hi,
        lo_closed: true,
        hi_closed: true,
    }
}

/// Evidence that the broadcast region is not convex: the supporting line at
/// `C` leaves both single-user corners strictly outside, i.e. `w1(C) < w2(C)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NonconvexityCertificate {
    pub p1_prime: f64,
    pub c: RatePair,
    pub w1c: f64,
    pub w2c: f64,
    /// Boundary slopes `w/(w − 1)` at `C̄` on each side; `None` when vertical.
    pub s1: Option<f64>,
    pub s2: Option<f64>,
    pub nonconvex: bool,
}

pub fn nonconvexity_certificate(ch: &GbcChannel, load: &LoadSpec) -> NonconvexityCertificate {
    let (c, p1_prime) = ch.load_ray_intersection(load);
    let t = tangent_at(ch, p1_prime, c);
    let slope = |w: f64| {
        if (w - 1.0).abs() <= EPS_MEMBER {
            None
        } else {
            Some(w / (w - 1.0))
        }
    };
    NonconvexityCertificate {
        p1_prime,
        c,
        w1c: t.w1,
        w2c: t.w2,
        s1: slope(t.w1),
        s2: slope(t.w2),
        nonconvex: t.w1 < t.w2 - EPS_MEMBER,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ctmap::objective_d;

    const ONE: LoadSpec = LoadSpec { tau1: 1.0, tau2: 1.0 };

    fn asym() -> GbcChannel {
        GbcChannel::new(1.0, 0.5f64.sqrt(), 6.0).unwrap()
    }

    #[test]
    fn tangent_example() {
        let t = gbc_tangent(&asym(), 2.0).unwrap();
        assert!((t.g - 0.75).abs() < 1e-12);
        assert!((t.b - 0.913_776).abs() < 1e-6, "{t:?}");
        assert!((t.a - 0.685_332).abs() < 1e-6);
        assert!((t.w1 - 0.086_224).abs() < 1e-6);
        // Exact value; a rounded figure 2e-4 higher circulates for this point.
        assert!((t.w2 - 0.961_984_350_351_914).abs() < 1e-12, "{}", t.w2);
        assert!((t.a / t.b - t.g).abs() < 1e-12);
        let r = asym().boundary_point(2.0).unwrap();
        assert!((t.a * r.r1 + t.b * r.r2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tangent_endpoints() {
        let ch = asym();
        assert!(gbc_tangent(&ch, 0.0).unwrap().w1.abs() < 1e-12);
        assert!((gbc_tangent(&ch, 6.0).unwrap().w2 - 1.0).abs() < 1e-12);
        assert!(gbc_tangent(&ch, 6.5).is_err());
    }

    #[test]
    fn symmetric_half_weight() {
        let ch = GbcChannel::new(1.0, 1.0, 3.0).unwrap();
        let s = gbc_min_weighted(&ch, &ONE, 0.5).unwrap();
        assert_eq!(s.side1.source, Minimizer::Power(3.0));
        assert!((s.side1.minimizer_ct.d1 - 1.0).abs() < 1e-12);
        assert!((s.side1.minimizer_ct.d2 - 2.0).abs() < 1e-12);
        assert!((s.best.objective - 1.5).abs() < 1e-12);
    }

    #[test]
    fn zero_weight() {
        // Side one settles at C̄; side two minimizes d2 alone at the r2-axis end.
        let ch = asym();
        let s = gbc_min_weighted(&ch, &ONE, 0.0).unwrap();
        assert_eq!(s.side1.source, Minimizer::LoadRayPoint);
        assert!((s.side1.objective - 1.604_782).abs() < 1e-6);
        assert_eq!(s.side2.source, Minimizer::Power(0.0));
        assert!((s.side2.objective - 1.0 / ch.caps().cap2).abs() < 1e-12);
        assert_eq!(s.best.side, Side::Two);
    }

    #[test]
    fn interior_weight_recovers_power() {
        let ch = asym();
        let w = gbc_tangent(&ch, 2.0).unwrap().w1;
        let s = gbc_min_weighted(&ch, &ONE, w).unwrap();
        match s.side1.source {
            Minimizer::Power(p) => assert!((p - 2.0).abs() < 1e-9, "{p}"),
            other => panic!("{other:?}"),
        }
        let caps = ch.caps();
        let v = objective_d(Side::One, s.side1.minimizer_rate, &ONE, w, &caps).unwrap();
        assert!((v - s.side1.objective).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_weight() {
        assert!(gbc_min_weighted(&asym(), &ONE, 1.2).is_err());
    }

    #[test]
    fn certificates() {
        let c = nonconvexity_certificate(&asym(), &ONE);
        assert!((c.p1_prime - 1.372_281).abs() < 1e-6);
        assert!((c.w1c - 0.057_930_588_2).abs() < 1e-9, "{}", c.w1c);
        assert!((c.w2c - 0.930_234_884_3).abs() < 1e-9, "{}", c.w2c);
        assert!(c.nonconvex);

        let c = nonconvexity_certificate(&GbcChannel::new(1.0, 1.0, 3.0).unwrap(), &ONE);
        assert!(c.w1c.abs() < 1e-12 && (c.w2c - 1.0).abs() < 1e-12);
        assert!(c.s1.unwrap().abs() < 1e-12);
        assert_eq!(c.s2, None);
        assert!(c.nonconvex);
    }
}
