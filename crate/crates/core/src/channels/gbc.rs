use serde::Serialize;

use super::RateRegion;
use crate::error::{Error, Result};
use crate::math::{bisect, gamma_unchecked, inv_gamma_unchecked, LoadSpec, RatePair, SoloCaps, EPS_ROOT};

/// Two-user Gaussian broadcast channel `Y_i = h_i·X + Z_i`, `E[X²] ≤ P`.
///
/// User 1 is the stronger receiver: `h1 ≥ h2 > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GbcChannel {
    h1: f64,
    h2: f64,
    power: f64,
}

impl GbcChannel {
    pub fn new(h1: f64, h2: f64, power: f64) -> Result<Self> {
        if ![h1, h2, power].iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidChannel("GBC parameters must be finite".into()));
        }
        if h2 <= 0.0 {
            return Err(Error::InvalidChannel(format!("h2 must be positive, got {h2}")));
        }
        if h1 < h2 {
            return Err(Error::InvalidChannel(format!(
                "users must be ordered with h1 >= h2 (got h1={h1}, h2={h2}); relabel the users explicitly"
            )));
        }
        if power <= 0.0 {
            return Err(Error::InvalidChannel(format!("power must be positive, got {power}")));
        }
        Ok(Self { h1, h2, power })
    }

    pub fn h1(&self) -> f64 {
        self.h1
    }

    pub fn h2(&self) -> f64 {
        self.h2
    }

    pub fn power(&self) -> f64 {
        self.power
    }

    pub(crate) fn g1(&self) -> f64 {
        self.h1 * self.h1
    }

    pub(crate) fn g2(&self) -> f64 {
        self.h2 * self.h2
    }

    /// `R_i* = γ(h_i²P)`.
    pub fn caps(&self) -> SoloCaps {
        SoloCaps {
            cap1: gamma_unchecked(self.g1() * self.power),
            cap2: gamma_unchecked(self.g2() * self.power),
        }
    }

    #[inline]
    pub(crate) fn r1_at(&self, p1: f64) -> f64 {
        gamma_unchecked(self.g1() * p1)
    }

    #[inline]
    pub(crate) fn r2_at(&self, p1: f64) -> f64 {
        (gamma_unchecked(self.g2() * self.power) - gamma_unchecked(self.g2() * p1)).max(0.0)
    }

    fn check_power(&self, p1: f64) -> Result<()> {
        if !p1.is_finite() || p1 < 0.0 || p1 > self.power {
            return Err(Error::Domain(format!(
                "power split P1={p1} outside [0, {}]",
                self.power
            )));
        }
        Ok(())
    }

    /// Superposition-coding boundary point for the power split `P1`:
    /// `(γ(h1²P1), γ(h2²P) − γ(h2²P1))`.
    pub fn boundary_point(&self, p1: f64) -> Result<RatePair> {
        self.check_power(p1)?;
        Ok(RatePair {
            r1: self.r1_at(p1),
            r2: self.r2_at(p1),
        })
    }

    /// Smallest power for user 1 that supports rate `r1`.
    #[inline]
    pub(crate) fn min_power_for(&self, r1: f64) -> f64 {
        inv_gamma_unchecked(r1.max(0.0)) / self.g1()
    }

    /// Power split `P1′` at which the load ray meets the boundary, and the
    /// boundary point `C` itself.
    pub fn load_ray_intersection(&self, load: &LoadSpec) -> (RatePair, f64) {
        // γ(h1²P1)·τ2 − r2(P1)·τ1 increases from negative at 0 to positive at P.
        let p1 = bisect(
            |p1| self.r1_at(p1) * load.tau2 - self.r2_at(p1) * load.tau1,
            0.0,
            self.power,
            EPS_ROOT,
        );
        (
            RatePair {
                r1: self.r1_at(p1),
                r2: self.r2_at(p1),
            },
            p1,
        )
    }

    /// The same physical channel with the user labels exchanged; fails when
    /// the swapped gains violate the ordering.
    pub fn relabeled(h1: f64, h2: f64, power: f64) -> Result<Self> {
        Self::new(h2, h1, power)
    }
}

impl RateRegion for GbcChannel {
    fn contains_with(&self, r: RatePair, eps: f64) -> bool {
        if r.r1 < -eps || r.r2 < -eps {
            return false;
        }
        let p1_min = self.min_power_for(r.r1);
        if p1_min > self.power {
            // Beyond the single-user rate of user 1; allow only the slack.
            return r.r1 <= self.caps().cap1 + eps && r.r2 <= eps;
        }
        r.r2 <= self.r2_at(p1_min) + eps
    }
}
