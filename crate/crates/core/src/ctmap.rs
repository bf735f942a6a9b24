//! Rate pair → completion-time pair mappings, weighted objectives and the
//! ratio-constrained membership test that defines achievability.

use serde::{Serialize, Serializer};

use crate::channels::RateRegion;
use crate::error::{Error, Result};
use crate::math::{CompletionTimePair, LoadSpec, RatePair, SoloCaps, EPS_MEMBER};

/// Which side of the diagonal `d1 = d2` a completion-time pair lives on.
///
/// Side one finishes user 1 first (`d1 ≤ d2`), side two user 2 first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    One,
    Two,
}

impl Side {
    pub fn index(self) -> u8 {
        match self {
            Side::One => 1,
            Side::Two => 2,
        }
    }

    pub fn from_index(i: u8) -> Option<Self> {
        match i {
            1 => Some(Side::One),
            2 => Some(Side::Two),
            _ => None,
        }
    }
}

impl Serialize for Side {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.index())
    }
}

/// Side-one mapping: user 1 finishes at `τ₁/r₁`, user 2 then drains its
/// remaining bits alone at `R₂″`.
///
/// Requires `r1 > 0`, `r2 ≤ R₂″` and `r2/r1 ≤ τ₂/τ₁`. `r2 = 0` is allowed.
pub fn map_side1(r: RatePair, load: &LoadSpec, r2pp: f64) -> Result<CompletionTimePair> {
    if r.r1 <= 0.0 {
        return Err(Error::Unbounded("side-one mapping needs r1 > 0".into()));
    }
    if r.r2 < 0.0 || r.r2 > r2pp + EPS_MEMBER || r2pp <= 0.0 {
        return Err(Error::Domain(format!(
            "side-one mapping needs 0 <= r2 <= R2'' (r2={}, R2''={r2pp})",
            r.r2
        )));
    }
    if r.r2 / r.r1 > load.ratio() + EPS_MEMBER {
        return Err(Error::Domain(format!(
            "rate ratio {} exceeds the load ratio {}; use the side-two mapping",
            r.r2 / r.r1,
            load.ratio()
        )));
    }
    Ok(CompletionTimePair {
        d1: load.tau1 / r.r1,
        d2: load.tau2 / r2pp + (r2pp - r.r2) * load.tau1 / (r2pp * r.r1),
    })
}

/// Side-two mapping: the mirror image of [`map_side1`].
pub fn map_side2(r: RatePair, load: &LoadSpec, r1pp: f64) -> Result<CompletionTimePair> {
    if r.r2 <= 0.0 {
        return Err(Error::Unbounded("side-two mapping needs r2 > 0".into()));
    }
    if r.r1 < 0.0 || r.r1 > r1pp + EPS_MEMBER || r1pp <= 0.0 {
        return Err(Error::Domain(format!(
            "side-two mapping needs 0 <= r1 <= R1'' (r1={}, R1''={r1pp})",
            r.r1
        )));
    }
    if r.r1 > 0.0 && r.r2 / r.r1 < load.ratio() - EPS_MEMBER {
        return Err(Error::Domain(format!(
            "rate ratio {} is below the load ratio {}; use the side-one mapping",
            r.r2 / r.r1,
            load.ratio()
        )));
    }
    Ok(CompletionTimePair {
        d1: load.tau1 / r1pp + (r1pp - r.r1) * load.tau2 / (r1pp * r.r2),
        d2: load.tau2 / r.r2,
    })
}

/// Maps through the side selected by the rate ratio, with `R″` set to the caps.
pub fn map_auto(r: RatePair, load: &LoadSpec, caps: &SoloCaps) -> Result<(Side, CompletionTimePair)> {
    if r.r2 * load.tau1 <= load.tau2 * r.r1 {
        map_side1(r, load, caps.cap2).map(|d| (Side::One, d))
    } else {
        map_side2(r, load, caps.cap1).map(|d| (Side::Two, d))
    }
}

/// Weighted completion time `w·d1 + (1−w)·d2` of the side mapping with `R″`
/// equal to the solo caps.
pub fn objective_d(side: Side, r: RatePair, load: &LoadSpec, w: f64, caps: &SoloCaps) -> Result<f64> {
    if !(0.0..=1.0).contains(&w) {
        return Err(Error::Domain(format!("weight {w} outside [0, 1]")));
    }
    let d = match side {
        Side::One => map_side1(r, load, caps.cap2)?,
        Side::Two => map_side2(r, load, caps.cap1)?,
    };
    Ok(w * d.d1 + (1.0 - w) * d.d2)
}

/// Closed forms `D₁ = w̄τ₂/R₂* + τ₁(R₂* − w̄r₂)/(R₂*r₁)` and
/// `D₂ = wτ₁/R₁* + τ₂(R₁* − wr₁)/(R₁*r₂)`.
pub fn objective_closed_form(side: Side, r: RatePair, load: &LoadSpec, w: f64, caps: &SoloCaps) -> f64 {
    let wb = 1.0 - w;
    match side {
        Side::One => {
            wb * load.tau2 / caps.cap2 + load.tau1 * (caps.cap2 - wb * r.r2) / (caps.cap2 * r.r1)
        }
        Side::Two => {
            w * load.tau1 / caps.cap1 + load.tau2 * (caps.cap1 - w * r.r1) / (caps.cap1 * r.r2)
        }
    }
}

/// Membership of a ratio-constrained rate pair `R` (codeword-length ratio
/// `c = n1/n2`) given the standard region: the user with the longer codeword
/// is credited the solo-cap rate for its tail, and the reduced pair is tested.
pub fn constrained_membership<R: RateRegion + ?Sized>(
    region: &R,
    caps: &SoloCaps,
    rate: RatePair,
    c: f64,
) -> bool {
    if c.is_nan() || c <= 0.0 || rate.r1 < 0.0 || rate.r2 < 0.0 {
        return false;
    }
    let reduced = if c <= 1.0 {
        RatePair {
            r1: rate.r1,
            r2: (rate.r2 / c - (1.0 / c - 1.0) * caps.cap2).max(0.0),
        }
    } else {
        RatePair {
            r1: (c * rate.r1 - (c - 1.0) * caps.cap1).max(0.0),
            r2: rate.r2,
        }
    };
    region.contains(reduced)
}

/// Ground-truth achievability of a completion-time pair.
pub fn ct_achievable<R: RateRegion + ?Sized>(
    region: &R,
    caps: &SoloCaps,
    load: &LoadSpec,
    d: CompletionTimePair,
) -> bool {
    if !(d.d1 > 0.0 && d.d2 > 0.0) {
        return false;
    }
    let rate = RatePair {
        r1: load.tau1 / d.d1,
        r2: load.tau2 / d.d2,
    };
    constrained_membership(region, caps, rate, d.d1 / d.d2)
}
