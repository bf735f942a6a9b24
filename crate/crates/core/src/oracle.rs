//! Brute-force checks: push a rate grid through the side mappings, minimize
//! weighted sums over the resulting cloud, and compare a closed-form region
//! with the ratio-constrained membership test point by point.

use serde::Serialize;

use crate::channels::RateRegion;
use crate::ctmap::{ct_achievable, map_side1, map_side2, Side};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::math::{CompletionTimePair, LoadSpec, RatePair, SoloCaps};
use crate::regions::CtMembership;

/// Width of the tolerated disagreement band around the true boundary, in grid steps.
pub const BAND_STEPS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CloudPoint {
    pub rate: RatePair,
    pub ct: CompletionTimePair,
    pub side: Side,
}

fn check_n(n: usize) -> Result<()> {
    if n < 10 {
        return Err(Error::Domain(format!("grid resolution {n} below 10")));
    }
    Ok(())
}

/// Maps a member rate pair through the mapping for its side of the load ray.
fn image(r: RatePair, caps: &SoloCaps, load: &LoadSpec) -> Option<CloudPoint> {
    let (side, ct) = if r.r2 * load.tau1 <= load.tau2 * r.r1 {
        (Side::One, map_side1(r, load, caps.cap2).ok()?)
    } else {
        (Side::Two, map_side2(r, load, caps.cap1).ok()?)
    };
    Some(CloudPoint { rate: r, ct, side })
}

fn row<'a, R: RateRegion + ?Sized>(
    region: &'a R,
    caps: &SoloCaps,
    load: &LoadSpec,
    n: usize,
    i: usize,
) -> impl Iterator<Item = CloudPoint> + 'a {
    let r1 = caps.cap1 * i as f64 / n as f64;
    let (caps, load) = (*caps, *load);
    (0..=n).filter_map(move |k| {
        let r = RatePair {
            r1,
            r2: caps.cap2 * k as f64 / n as f64,
        };
        if region.contains(r) {
            image(r, &caps, &load)
        } else {
            None
        }
    })
}

/// Images of every member of the `(n+1)×(n+1)` rate grid over
/// `[0, cap1] × [0, cap2]`, in row-major order.
pub fn grid_ct_cloud<R: RateRegion + ?Sized>(
    region: &R,
    caps: &SoloCaps,
    load: &LoadSpec,
    n: usize,
) -> Result<Vec<CloudPoint>> {
    grid_ct_cloud_with(Exec::default(), region, caps, load, n)
}

pub fn grid_ct_cloud_with<R: RateRegion + ?Sized>(
    exec: Exec,
    region: &R,
    caps: &SoloCaps,
    load: &LoadSpec,
    n: usize,
) -> Result<Vec<CloudPoint>> {
    check_n(n)?;
    Ok(exec.flat_map(n + 1, |i| row(region, caps, load, n, i).collect()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridMin {
    pub weight: f64,
    pub objective: f64,
    pub argmin: CloudPoint,
}

/// Smallest `w·d1 + (1−w)·d2` over the grid cloud (both sides).
pub fn grid_min_weighted<R: RateRegion + ?Sized>(
    region: &R,
    caps: &SoloCaps,
    load: &LoadSpec,
    w: f64,
    n: usize,
) -> Result<GridMin> {
    let mut v = grid_min_weighted_many_with(Exec::default(), region, caps, load, &[w], n, None)?;
    Ok(v.remove(0))
}

/// One sweep, many weights; optionally restricted to one side of the diagonal.
/// Ties keep the first point in row-major order, so the result does not
/// depend on the execution strategy.
pub fn grid_min_weighted_many_with<R: RateRegion + ?Sized>(
    exec: Exec,
    region: &R,
    caps: &SoloCaps,
    load: &LoadSpec,
    weights: &[f64],
    n: usize,
    side: Option<Side>,
) -> Result<Vec<GridMin>> {
    check_n(n)?;
    if let Some(w) = weights.iter().find(|w| !(0.0..=1.0).contains(*w)) {
        return Err(Error::Domain(format!("weight {w} outside [0, 1]")));
    }
    let per_row = exec.map(n + 1, |i| {
        let mut best: Vec<Option<GridMin>> = vec![None; weights.len()];
        for p in row(region, caps, load, n, i) {
            if side.is_some_and(|s| s != p.side) {
                continue;
            }
            for (slot, &w) in best.iter_mut().zip(weights) {
                let v = w * p.ct.d1 + (1.0 - w) * p.ct.d2;
                if slot.is_none_or(|b| v < b.objective) {
                    *slot = Some(GridMin {
                        weight: w,
                        objective: v,
                        argmin: p,
                    });
                }
            }
        }
        best
    });
    let mut best: Vec<Option<GridMin>> = vec![None; weights.len()];
    for r in per_row {
        for (slot, cand) in best.iter_mut().zip(r) {
            if let Some(c) = cand {
                if slot.is_none_or(|b| c.objective < b.objective) {
                    *slot = Some(c);
                }
            }
        }
    }
    best.into_iter()
        .map(|b| b.ok_or_else(|| Error::Domain("no grid point maps to the requested side".into())))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridMeta {
    pub n: usize,
    pub d1_range: [f64; 2],
    pub d2_range: [f64; 2],
    pub step: [f64; 2],
    pub band_steps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareReport {
    pub both: usize,
    pub analytic_only: usize,
    pub oracle_only: usize,
    pub neither: usize,
    pub analytic_only_outside_band: usize,
    pub oracle_only_outside_band: usize,
    /// Largest distance from a failing disagreement to the true boundary.
    pub worst_distance: f64,
    pub worst_point: Option<[f64; 2]>,
    pub pass: bool,
    pub grid: GridMeta,
}

/// Classifies an `n×n` completion-time grid over
/// `[½·min corner, 4·max corner]` by analytic and oracle membership.
/// Passes when every disagreement lies within `BAND_STEPS` grid steps of the
/// oracle's boundary.
pub fn compare_regions<A, R>(
    analytic: &A,
    region: &R,
    caps: &SoloCaps,
    load: &LoadSpec,
    n: usize,
) -> Result<CompareReport>
where
    A: CtMembership + ?Sized,
    R: RateRegion + ?Sized,
{
    compare_regions_with(Exec::default(), analytic, region, caps, load, n)
}

pub fn compare_regions_with<A, R>(
    exec: Exec,
    analytic: &A,
    region: &R,
    caps: &SoloCaps,
    load: &LoadSpec,
    n: usize,
) -> Result<CompareReport>
where
    A: CtMembership + ?Sized,
    R: RateRegion + ?Sized,
{
    check_n(n)?;
    let corners = analytic.corners();
    if corners.is_empty() {
        return Err(Error::Domain("analytic region reports no corners".into()));
    }
    let span = |f: fn(&CompletionTimePair) -> f64| {
        let lo = corners.iter().map(f).fold(f64::INFINITY, f64::min);
        let hi = corners.iter().map(f).fold(0.0, f64::max);
        [0.5 * lo, 4.0 * hi]
    };
    let d1_range = span(|p| p.d1);
    let d2_range = span(|p| p.d2);
    let step = [
        (d1_range[1] - d1_range[0]) / (n - 1) as f64,
        (d2_range[1] - d2_range[0]) / (n - 1) as f64,
    ];
    let at = |i: usize, k: usize| CompletionTimePair {
        d1: d1_range[0] + step[0] * i as f64,
        d2: d2_range[0] + step[1] * k as f64,
    };

    let cells: Vec<(bool, bool)> = exec.flat_map(n, |i| {
        (0..n)
            .map(|k| {
                let d = at(i, k);
                (analytic.ct_contains(d), ct_achievable(region, caps, load, d))
            })
            .collect()
    });
    let truth = |i: usize, k: usize| cells[i * n + k].1;

    let near_true_boundary = |i: usize, k: usize| {
        let t = truth(i, k);
        let b = BAND_STEPS;
        (i.saturating_sub(b)..=(i + b).min(n - 1))
            .any(|a| (k.saturating_sub(b)..=(k + b).min(n - 1)).any(|c| truth(a, c) != t))
    };
    let distance_to_boundary = |i: usize, k: usize| -> f64 {
        let t = truth(i, k);
        let mut best = f64::INFINITY;
        let mut limit = n;
        for r in 1..n {
            if r > limit {
                break;
            }
            let (lo_i, hi_i) = (i.saturating_sub(r), (i + r).min(n - 1));
            let (lo_k, hi_k) = (k.saturating_sub(r), (k + r).min(n - 1));
            for a in lo_i..=hi_i {
                for c in lo_k..=hi_k {
                    let on_ring = a.abs_diff(i) == r || c.abs_diff(k) == r;
                    if on_ring && truth(a, c) != t {
                        let dx = (a as f64 - i as f64) * step[0];
                        let dy = (c as f64 - k as f64) * step[1];
                        best = best.min(dx.hypot(dy));
                    }
                }
            }
            if best.is_finite() && limit == n {
                // A closer point can still sit on a ring up to √2 further out.
                limit = ((r as f64) * std::f64::consts::SQRT_2).ceil() as usize + 1;
            }
        }
        best
    };

    let mut report = CompareReport {
        both: 0,
        analytic_only: 0,
        oracle_only: 0,
        neither: 0,
        analytic_only_outside_band: 0,
        oracle_only_outside_band: 0,
        worst_distance: 0.0,
        worst_point: None,
        pass: true,
        grid: GridMeta {
            n,
            d1_range,
            d2_range,
            step,
            band_steps: BAND_STEPS,
        },
    };
    for i in 0..n {
        for k in 0..n {
            let (a, o) = cells[i * n + k];
            match (a, o) {
                (true, true) => report.both += 1,
                (false, false) => report.neither += 1,
                (true, false) => report.analytic_only += 1,
                (false, true) => report.oracle_only += 1,
            }
            if a == o || near_true_boundary(i, k) {
                continue;
            }
            if a {
                report.analytic_only_outside_band += 1;
            } else {
                report.oracle_only_outside_band += 1;
            }
            let dist = distance_to_boundary(i, k);
            let dist = if dist.is_finite() { dist } else { step[0].hypot(step[1]) * n as f64 };
            if report.worst_point.is_none() || dist > report.worst_distance {
                report.worst_distance = dist;
                let d = at(i, k);
                report.worst_point = Some([d.d1, d.d2]);
            }
        }
    }
    report.pass = report.analytic_only_outside_band == 0 && report.oracle_only_outside_band == 0;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{GbcChannel, GicChannel};
    use crate::regions::{gbc_ctr, polygon_ctr, strong_ctr_closed_form, RegionTag};

    const ONE: LoadSpec = LoadSpec { tau1: 1.0, tau2: 1.0 };

    #[test]
    fn etw_region_closes_a_pocket_the_literal_test_misses() {
        // The ETW polygon tops out below the solo caps, so the ratio test loses
        // its tail credit near the diagonal: a point above Ā4 fails it.
        let ch = GicChannel::new(0.8, 0.6, 10.0, 15.0).unwrap();
        let poly = crate::channels::etw_polygon(&ch, crate::channels::EtwKind::Achievable).unwrap();
        let caps = ch.caps();
        let ctr = polygon_ctr(&poly, &caps, &ONE, RegionTag::Achievable).unwrap();
        let a4 = ctr.sub2.vertices()[1];
        let d = CompletionTimePair { d1: 0.963_357_579, d2: 0.960_945_021 };
        assert!(d.d1 >= a4.d1 && d.d2 >= a4.d2);
        assert!(ct_achievable(&poly, &caps, &ONE, a4));
        assert!(!ct_achievable(&poly, &caps, &ONE, d));
        assert!(ctr.contains(d));
        // Thinner than the band at n = 1000, visible at n = 2000.
        let r = compare_regions(&ctr, &poly, &caps, &ONE, 1000).unwrap();
        assert!(r.pass && r.analytic_only > 0 && r.oracle_only == 0);
    }

    #[test]
    fn cloud_is_sound() {
        let ch = GicChannel::new(1.0, 1.0, 3.0, 3.0).unwrap();
        let poly = ch.strong_ic_polygon().unwrap();
        let caps = ch.caps();
        let cloud = grid_ct_cloud(&poly, &caps, &ONE, 60).unwrap();
        assert!(!cloud.is_empty());
        for p in &cloud {
            assert!(ct_achievable(&poly, &caps, &ONE, p.ct), "{p:?}");
        }
    }

    #[test]
    fn rectangle_cloud_corner() {
        let ch = GicChannel::new(2.0, 2.0, 1.0, 3.0).unwrap();
        let rect = ch.very_strong_rectangle().unwrap();
        let caps = ch.caps();
        let cloud = grid_ct_cloud(&rect, &caps, &ONE, 50).unwrap();
        let min1 = cloud.iter().map(|p| p.ct.d1).fold(f64::INFINITY, f64::min);
        let min2 = cloud.iter().map(|p| p.ct.d2).fold(f64::INFINITY, f64::min);
        assert!((min1 - 2.0).abs() < 1e-12 && (min2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn grid_minima() {
        let ch = GbcChannel::new(1.0, 1.0, 3.0).unwrap();
        let m = grid_min_weighted(&ch, &ch.caps(), &ONE, 0.5, 400).unwrap();
        assert!((m.objective - 1.5).abs() < 0.01, "{m:?}");

        let g = GicChannel::new(1.0, 1.0, 3.0, 3.0).unwrap();
        let poly = g.strong_ic_polygon().unwrap();
        let m = grid_min_weighted(&poly, &g.caps(), &ONE, 0.5, 400).unwrap();
        assert!((m.objective - 1.298_162).abs() < 0.01, "{m:?}");
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let ch = GbcChannel::new(1.2, 0.7, 4.0).unwrap();
        let ws = [0.0, 0.3, 0.9];
        let a = grid_min_weighted_many_with(Exec::Sequential, &ch, &ch.caps(), &ONE, &ws, 150, None).unwrap();
        let b = grid_min_weighted_many_with(Exec::Parallel, &ch, &ch.caps(), &ONE, &ws, 150, None).unwrap();
        assert_eq!(a, b);
        let ctr = gbc_ctr(&ch, &ONE);
        let a = compare_regions_with(Exec::Sequential, &ctr, &ch, &ch.caps(), &ONE, 60).unwrap();
        let b = compare_regions_with(Exec::Parallel, &ctr, &ch, &ch.caps(), &ONE, 60).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn exact_regions_pass() {
        let ch = GbcChannel::new(1.0, 1.0, 3.0).unwrap();
        let r = compare_regions(&gbc_ctr(&ch, &ONE), &ch, &ch.caps(), &ONE, 100).unwrap();
        assert!(r.pass, "{r:?}");

        let g = GicChannel::new(1.0, 1.0, 3.0, 3.0).unwrap();
        let poly = g.strong_ic_polygon().unwrap();
        let ctr = polygon_ctr(&poly, &g.caps(), &ONE, RegionTag::Exact).unwrap();
        let r = compare_regions(&ctr, &poly, &g.caps(), &ONE, 100).unwrap();
        assert_eq!(r.analytic_only, 0, "{r:?}");
        assert!(r.pass);
    }

    #[test]
    fn literal_middle_case_fails() {
        let g = GicChannel::new(1.0, 1.0, 3.0, 3.0).unwrap();
        let poly = g.strong_ic_polygon().unwrap();
        let cf = strong_ctr_closed_form(&g, &ONE).unwrap();
        // The missing wedge is about 0.12 deep: coarse grids hide it in the band.
        let r = compare_regions(&cf, &poly, &g.caps(), &ONE, 100).unwrap();
        assert!(r.pass && r.oracle_only > 0);
        let r = compare_regions(&cf, &poly, &g.caps(), &ONE, 500).unwrap();
        assert!(!r.pass);
        assert!(r.oracle_only_outside_band > 0);
        assert_eq!(r.analytic_only_outside_band, 0);
    }

    #[test]
    fn small_grids_rejected() {
        let ch = GbcChannel::new(1.0, 1.0, 3.0).unwrap();
        assert!(grid_ct_cloud(&ch, &ch.caps(), &ONE, 5).is_err());
    }
}
