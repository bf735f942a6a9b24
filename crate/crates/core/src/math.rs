//! Scalar rate math, the base value types and the numeric tolerance policy.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute slack used when testing a point against a region boundary.
pub const EPS_MEMBER: f64 = 1e-9;
/// Termination tolerance for one-dimensional bisection.
pub const EPS_ROOT: f64 = 1e-12;
/// Default resolution of brute-force grids.
pub const GRID_N: usize = 2000;

/// Tolerances shared by every membership test, root finder and grid oracle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NumericPolicy {
    pub eps_member: f64,
    pub eps_root: f64,
    pub grid_n: usize,
}

impl Default for NumericPolicy {
    fn default() -> Self {
        Self {
            eps_member: EPS_MEMBER,
            eps_root: EPS_ROOT,
            grid_n: GRID_N,
        }
    }
}

impl NumericPolicy {
    pub fn new(eps_member: f64, eps_root: f64, grid_n: usize) -> Result<Self> {
        let finite_pos = |x: f64| x.is_finite() && x > 0.0;
        if !finite_pos(eps_member) || !finite_pos(eps_root) || grid_n == 0 {
            return Err(Error::Domain(
                "numeric policy tolerances must be strictly positive".into(),
            ));
        }
        if eps_root >= eps_member {
            return Err(Error::Domain(format!(
                "eps_root ({eps_root}) must be smaller than eps_member ({eps_member})"
            )));
        }
        Ok(Self {
            eps_member,
            eps_root,
            grid_n,
        })
    }
}

/// `½·log₂(1+x)`, the capacity of a real AWGN link at SNR `x`.
pub fn gamma(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!("gamma expects a finite x >= 0, got {x}")));
    }
    Ok(gamma_unchecked(x))
}

/// Inverse of [`gamma`]: the SNR `2^(2r) − 1` that supports rate `r`.
pub fn inv_gamma(r: f64) -> Result<f64> {
    if !r.is_finite() || r < 0.0 {
        return Err(Error::Domain(format!("inv_gamma expects a finite r >= 0, got {r}")));
    }
    Ok(inv_gamma_unchecked(r))
}

#[inline]
pub(crate) fn gamma_unchecked(x: f64) -> f64 {
    0.5 * x.ln_1p() / std::f64::consts::LN_2
}

#[inline]
pub(crate) fn inv_gamma_unchecked(r: f64) -> f64 {
    (2.0 * r * std::f64::consts::LN_2).exp_m1()
}

/// Bisection for the root of a function that changes sign on `[lo, hi]`.
///
/// `f` must be monotone on the bracket; the endpoint whose sign matches the
/// root side is returned if no sign change is present.
pub(crate) fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return lo;
    }
    if fhi == 0.0 {
        return hi;
    }
    if flo.signum() == fhi.signum() {
        return if flo.abs() < fhi.abs() { lo } else { hi };
    }
    let increasing = flo < 0.0;
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == increasing {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// A point in rate space, in bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatePair {
    pub r1: f64,
    pub r2: f64,
}

impl RatePair {
    pub fn new(r1: f64, r2: f64) -> Result<Self> {
        if !(r1.is_finite() && r2.is_finite()) || r1 < 0.0 || r2 < 0.0 {
            return Err(Error::Domain(format!(
                "rate pair must be finite and non-negative, got ({r1}, {r2})"
            )));
        }
        Ok(Self { r1, r2 })
    }
}

/// A point in completion-time space: channel uses per source sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompletionTimePair {
    pub d1: f64,
    pub d2: f64,
}

impl CompletionTimePair {
    pub fn new(d1: f64, d2: f64) -> Result<Self> {
        if !(d1.is_finite() && d2.is_finite()) || d1 <= 0.0 || d2 <= 0.0 {
            return Err(Error::Domain(format!(
                "completion times must be finite and positive, got ({d1}, {d2})"
            )));
        }
        Ok(Self { d1, d2 })
    }
}

/// Bits per source sample that each user has to deliver.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LoadSpec {
    pub tau1: f64,
    pub tau2: f64,
}

impl LoadSpec {
    pub fn new(tau1: f64, tau2: f64) -> Result<Self> {
        if !(tau1.is_finite() && tau2.is_finite()) || tau1 <= 0.0 || tau2 <= 0.0 {
            return Err(Error::Domain(format!(
                "loads must be finite and positive, got ({tau1}, {tau2})"
            )));
        }
        Ok(Self { tau1, tau2 })
    }

    /// Slope `τ₂/τ₁` of the load ray in rate space.
    pub fn ratio(&self) -> f64 {
        self.tau2 / self.tau1
    }

    /// Load with the users exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            tau1: self.tau2,
            tau2: self.tau1,
        }
    }
}

/// Largest single-user rate of each user when the other is silent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SoloCaps {
    pub cap1: f64,
    pub cap2: f64,
}

impl SoloCaps {
    pub fn new(cap1: f64, cap2: f64) -> Result<Self> {
        if !(cap1.is_finite() && cap2.is_finite()) || cap1 <= 0.0 || cap2 <= 0.0 {
            return Err(Error::Domain(format!(
                "solo caps must be finite and positive, got ({cap1}, {cap2})"
            )));
        }
        Ok(Self { cap1, cap2 })
    }
}
