use super::{CTRegion, ConvexCtSubregion, GbcArc, RegionTag};
use crate::channels::{GbcChannel, GicChannel, PolygonalRateRegion};
use crate::ctmap::{map_side1, map_side2, Side};
use crate::error::{Error, Result};
use crate::math::{CompletionTimePair, LoadSpec, RatePair, SoloCaps};
use crate::optimize::{polygon_partitions, Minimizer};

/// Exact region of a broadcast channel. Side one is traced by `P1 ∈ [P1′, P]`,
/// side two by `P1 ∈ [0, P1′]`.
pub fn gbc_ctr(ch: &GbcChannel, load: &LoadSpec) -> CTRegion {
    let (_, p1_prime) = ch.load_ray_intersection(load);
    let arc = |p1_lo, p1_hi| GbcArc {
        channel: *ch,
        load: *load,
        p1_prime,
        p1_lo,
        p1_hi,
    };
    CTRegion {
        tag: RegionTag::Exact,
        sub1: ConvexCtSubregion::arc(Side::One, arc(p1_prime, ch.power())),
        sub2: ConvexCtSubregion::arc(Side::Two, arc(0.0, p1_prime)),
    }
}

/// Exact region in the very strong regime: the product of the two
/// single-user half-lines.
pub fn very_strong_ctr(ch: &GicChannel, load: &LoadSpec) -> Result<CTRegion> {
    ch.very_strong_rectangle()?;
    Ok(product_ctr(&ch.caps(), load, RegionTag::Exact))
}

pub(crate) fn product_ctr(caps: &SoloCaps, load: &LoadSpec, tag: RegionTag) -> CTRegion {
    let t1 = load.tau1 / caps.cap1;
    let t2 = load.tau2 / caps.cap2;
    let m = t1.max(t2);
    let c_bar = CompletionTimePair { d1: m, d2: m };
    let k = CompletionTimePair { d1: t1, d2: t2 };
    let (v1, v2) = if t1 < t2 {
        (vec![k, c_bar], vec![c_bar])
    } else if t2 < t1 {
        (vec![c_bar], vec![c_bar, k])
    } else {
        (vec![c_bar], vec![c_bar])
    };
    CTRegion {
        tag,
        sub1: ConvexCtSubregion::polyline(Side::One, v1),
        sub2: ConvexCtSubregion::polyline(Side::Two, v2),
    }
}

/// Region generated by a polygonal rate region: each side is the convex hull
/// of the mapped weighted-sum minimizers, closed off by its two rays.
pub fn polygon_ctr(
    region: &PolygonalRateRegion,
    caps: &SoloCaps,
    load: &LoadSpec,
    tag: RegionTag,
) -> Result<CTRegion> {
    if caps.cap1 < region.max_r1() - 1e-12 || caps.cap2 < region.max_r2() - 1e-12 {
        return Err(Error::RegionMismatch(format!(
            "solo caps ({}, {}) below the region's single-user corners ({}, {})",
            caps.cap1,
            caps.cap2,
            region.max_r1(),
            region.max_r2()
        )));
    }
    let parts = polygon_partitions(region, caps, load);
    let point = |m: Minimizer| -> RatePair {
        match m {
            Minimizer::Vertex(j) => region.point(j),
            _ => parts.c,
        }
    };
    let c_bar = {
        let t = load.tau1 / parts.c.r1;
        CompletionTimePair { d1: t, d2: t }
    };

    // Chains in traversal order: side one from Ā_{J−1} towards C̄, side two
    // from C̄ towards Ā_2.
    let mut v1 = Vec::new();
    for m in parts.side1_solutions().into_iter().rev() {
        v1.push(match m {
            Minimizer::Vertex(_) => map_side1(point(m), load, caps.cap2)?,
            _ => c_bar,
        });
    }
    if v1.last() != Some(&c_bar) {
        v1.push(c_bar);
    }
    let mut v2 = Vec::new();
    for m in parts.side2_solutions().into_iter().rev() {
        v2.push(match m {
            Minimizer::Vertex(_) => map_side2(point(m), load, caps.cap1)?,
            _ => c_bar,
        });
    }
    if v2.first() != Some(&c_bar) {
        v2.insert(0, c_bar);
    }
    Ok(CTRegion {
        tag,
        sub1: ConvexCtSubregion::polyline(Side::One, v1),
        sub2: ConvexCtSubregion::polyline(Side::Two, v2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{etw_polygon, validate_polygon, EtwKind};

    const ONE: LoadSpec = LoadSpec { tau1: 1.0, tau2: 1.0 };

    fn p(d1: f64, d2: f64) -> CompletionTimePair {
        CompletionTimePair { d1, d2 }
    }

    fn near(a: CompletionTimePair, d1: f64, d2: f64, tol: f64) -> bool {
        (a.d1 - d1).abs() <= tol && (a.d2 - d2).abs() <= tol
    }

    #[test]
    fn symmetric_broadcast_region() {
        let ch = GbcChannel::new(1.0, 1.0, 3.0).unwrap();
        let ctr = gbc_ctr(&ch, &ONE);
        assert!(near(ctr.sub1.vertices()[0], 1.0, 2.0, 1e-12));
        assert!(near(ctr.c_bar(), 2.0, 2.0, 1e-10));
        assert!(near(*ctr.sub2.vertices().last().unwrap(), 2.0, 1.0, 1e-12));
        assert!(ctr.contains(p(1.0, 2.0)));
        assert!(ctr.contains(p(2.0, 1.0)));
        assert!(!ctr.contains(p(1.5, 1.5)));
        assert!(!ctr.contains(p(1.5, 1.99)));
        assert!(ctr.contains(p(1.2, 2.0)));
        assert!(!ctr.contains(p(0.99, 5.0)));
    }

    #[test]
    fn asymmetric_broadcast_corner() {
        let ch = GbcChannel::new(1.0, 0.5f64.sqrt(), 6.0).unwrap();
        let ctr = gbc_ctr(&ch, &ONE);
        let c = ctr.c_bar();
        assert!(near(c, 1.604_782, 1.604_782, 1e-6), "{c:?}");
        let c2 = ctr.sub2.vertices()[0];
        assert!((c2.d1 - c.d1).abs() < 1e-10 && (c2.d2 - c.d2).abs() < 1e-10);
    }

    #[test]
    fn very_strong_product() {
        let ch = GicChannel::new(2.0, 2.0, 3.0, 3.0).unwrap();
        let ctr = very_strong_ctr(&ch, &LoadSpec { tau1: 2.0, tau2: 3.0 }).unwrap();
        assert!(ctr.contains(p(2.0, 3.0)));
        assert!(ctr.contains(p(7.0, 3.0)));
        assert!(ctr.contains(p(2.0, 9.0)));
        assert!(!ctr.contains(p(1.99, 3.0)));
        assert!(!ctr.contains(p(5.0, 2.99)));

        let ch = GicChannel::new(2.0, 2.0, 1.0, 3.0).unwrap();
        let ctr = very_strong_ctr(&ch, &ONE).unwrap();
        assert!(ctr.contains(p(2.0, 1.0)));
        assert!(!ctr.contains(p(1.99, 1.0)));

        let weak = GicChannel::new(0.5, 0.5, 1.0, 1.0).unwrap();
        assert!(very_strong_ctr(&weak, &ONE).is_err());
    }

    #[test]
    fn pentagon_region_vertices() {
        let ch = GicChannel::new(1.0, 1.0, 3.0, 3.0).unwrap();
        let poly = ch.strong_ic_polygon().unwrap();
        let ctr = polygon_ctr(&poly, &ch.caps(), &ONE, RegionTag::Exact).unwrap();
        let v1 = ctr.sub1.vertices();
        assert_eq!(v1.len(), 2);
        assert!(near(v1[0], 1.0, 1.596_323, 1e-6));
        assert!(near(v1[1], 1.424_829, 1.424_829, 1e-6));
        let v2 = ctr.sub2.vertices();
        assert_eq!(v2.len(), 2);
        assert!(near(v2[1], 1.596_323, 1.0, 1e-6));
        assert_eq!(v1[1], v2[0]);
    }

    #[test]
    fn etw_region_extreme_points() {
        let ch = GicChannel::new(0.8, 0.6, 10.0, 15.0).unwrap();
        let poly = etw_polygon(&ch, EtwKind::Achievable).unwrap();
        let caps = ch.caps();
        let ctr = polygon_ctr(&poly, &caps, &ONE, RegionTag::Achievable).unwrap();
        let a5 = map_side1(poly.point(5), &ONE, caps.cap2).unwrap();
        assert_eq!(ctr.sub1.vertices(), &[a5, ctr.c_bar()]);
        let want: Vec<_> = [4, 3, 2]
            .iter()
            .map(|&j| map_side2(poly.point(j), &ONE, caps.cap1).unwrap())
            .collect();
        assert_eq!(ctr.sub2.vertices()[0], ctr.c_bar());
        assert_eq!(&ctr.sub2.vertices()[1..], &want[..]);
        // Ā4 dominates C̄ here, so C̄ is not a corner of the union.
        assert!(want[0].d1 < ctr.c_bar().d1 && want[0].d2 < ctr.c_bar().d2);
        let b = ctr.boundary(2).points;
        assert!(!b.contains(&ctr.c_bar()));
        assert!(b.windows(2).all(|w| w[1].d1 >= w[0].d1 && w[1].d2 <= w[0].d2));
    }

    #[test]
    fn rectangle_region_is_the_product() {
        let poly = validate_polygon(&[
            RatePair { r1: 0.0, r2: 1.0 },
            RatePair { r1: 1.0, r2: 1.0 },
            RatePair { r1: 1.0, r2: 0.0 },
        ])
        .unwrap();
        let caps = SoloCaps { cap1: 1.0, cap2: 1.0 };
        let load = LoadSpec { tau1: 1.0, tau2: 2.0 };
        let ctr = polygon_ctr(&poly, &caps, &load, RegionTag::Exact).unwrap();
        let prod = product_ctr(&caps, &load, RegionTag::Exact);
        for i in 0..40 {
            for k in 0..40 {
                let d = p(0.5 + 0.1 * i as f64, 0.5 + 0.1 * k as f64);
                assert_eq!(ctr.contains(d), prod.contains(d), "{d:?}");
            }
        }
    }

    #[test]
    fn boundary_traces() {
        let ch = GbcChannel::new(1.0, 1.0, 3.0).unwrap();
        let b = gbc_ctr(&ch, &ONE).boundary(3);
        assert_eq!(b.points.len(), 3);
        assert!(near(b.points[0], 1.0, 2.0, 1e-12));
        assert!(near(b.points[1], 2.0, 2.0, 1e-10));
        assert!(near(b.points[2], 2.0, 1.0, 1e-12));

        let b = gbc_ctr(&ch, &ONE).boundary(50);
        assert!(b.points.len() >= 50);
        assert!(b.points.windows(2).all(|w| w[1].d1 >= w[0].d1 - 1e-12));

        let g = GicChannel::new(1.0, 1.0, 3.0, 3.0).unwrap();
        let ctr = polygon_ctr(&g.strong_ic_polygon().unwrap(), &g.caps(), &ONE, RegionTag::Exact).unwrap();
        let b = ctr.boundary(5);
        assert_eq!(b.points.len(), 5);
        for v in ctr.vertices() {
            assert!(b.points.contains(&v));
        }
        assert!(b.points.windows(2).all(|w| w[1].d1 >= w[0].d1));

        let vs = GicChannel::new(2.0, 2.0, 3.0, 3.0).unwrap();
        let b = very_strong_ctr(&vs, &LoadSpec { tau1: 2.0, tau2: 3.0 }).unwrap().boundary(2);
        assert_eq!(b.points, vec![p(2.0, 3.0); 2]);
        assert_eq!((b.start_ray, b.end_ray), ([0.0, 1.0], [1.0, 0.0]));
    }

    #[test]
    fn json_export_shape() {
        let ch = GbcChannel::new(1.0, 1.0, 3.0).unwrap();
        let v = gbc_ctr(&ch, &ONE).to_json_value();
        assert_eq!(v["tag"], "exact");
        assert_eq!(v["sub1"]["side"], 1);
        assert_eq!(v["sub1"]["vertices"][0], serde_json::json!([1.0, 2.0]));
        assert_eq!(v["sub1"]["rays"][0]["dir"], serde_json::json!([0.0, 1.0]));
        assert_eq!(v["sub2"]["rays"][1]["dir"], serde_json::json!([1.0, 0.0]));
    }
}
