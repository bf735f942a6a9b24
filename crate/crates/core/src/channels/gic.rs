use std::fmt;

use serde::Serialize;

use super::polygon::{validate_polygon, PolygonalRateRegion};
use crate::error::{Error, Result};
use crate::math::{gamma_unchecked, RatePair, SoloCaps};

/// Two-user Gaussian interference channel in standard form:
/// `Y1 = X1 + b·X2 + Z1`, `Y2 = a·X1 + X2 + Z2`, `E[X_i²] ≤ P_i`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GicChannel {
    a: f64,
    b: f64,
    p1: f64,
    p2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    VeryStrong,
    Strong,
    Weak,
    Mixed,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::VeryStrong => "very-strong",
            Regime::Strong => "strong",
            Regime::Weak => "weak",
            Regime::Mixed => "mixed",
        })
    }
}

impl GicChannel {
    pub fn new(a: f64, b: f64, p1: f64, p2: f64) -> Result<Self> {
        if ![a, b, p1, p2].iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidChannel("GIC parameters must be finite".into()));
        }
        if a < 0.0 || b < 0.0 {
            return Err(Error::InvalidChannel(format!(
                "cross gains must be non-negative, got a={a}, b={b}"
            )));
        }
        if p1 <= 0.0 || p2 <= 0.0 {
            return Err(Error::InvalidChannel(format!(
                "powers must be positive, got P1={p1}, P2={p2}"
            )));
        }
        Ok(Self { a, b, p1, p2 })
    }

    /// Gain of user 1's signal at receiver 2.
    pub fn a(&self) -> f64 {
        self.a
    }

    /// Gain of user 2's signal at receiver 1.
    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }

    pub fn p2(&self) -> f64 {
        self.p2
    }

    pub fn regime(&self) -> Regime {
        classify_gic(self)
    }

    /// Interference-free single-user rates `γ(P_i)`.
    pub fn caps(&self) -> SoloCaps {
        SoloCaps {
            cap1: gamma_unchecked(self.p1),
            cap2: gamma_unchecked(self.p2),
        }
    }

    /// Compound-MAC sum rate `min{γ(P1 + b²P2), γ(a²P1 + P2)}`.
    pub fn sum_rate_cap(&self) -> f64 {
        gamma_unchecked(self.p1 + self.b * self.b * self.p2)
            .min(gamma_unchecked(self.a * self.a * self.p1 + self.p2))
    }

    fn require(&self, expected: Regime, name: &'static str) -> Result<()> {
        let actual = self.regime();
        if actual != expected {
            return Err(Error::WrongRegime { expected: name, actual });
        }
        Ok(())
    }

    /// Capacity region in the strong regime: the pentagon
    /// `r1 ≤ γ(P1), r2 ≤ γ(P2), r1 + r2 ≤ r_s`.
    pub fn strong_ic_polygon(&self) -> Result<PolygonalRateRegion> {
        self.require(Regime::Strong, "strong")?;
        let SoloCaps { cap1, cap2 } = self.caps();
        let rs = self.sum_rate_cap();
        assert!(
            rs < cap1 + cap2 && rs > cap1.max(cap2),
            "sum-rate face must be active in the strong regime"
        );
        let points = [
            RatePair { r1: 0.0, r2: cap2 },
            RatePair { r1: rs - cap2, r2: cap2 },
            RatePair { r1: cap1, r2: rs - cap1 },
            RatePair { r1: cap1, r2: 0.0 },
        ];
        Ok(validate_polygon(&points)?)
    }

    /// Capacity region in the very strong regime: the rectangle
    /// `[0, γ(P1)] × [0, γ(P2)]`.
    pub fn very_strong_rectangle(&self) -> Result<PolygonalRateRegion> {
        self.require(Regime::VeryStrong, "very-strong")?;
        let SoloCaps { cap1, cap2 } = self.caps();
        let points = [
            RatePair { r1: 0.0, r2: cap2 },
            RatePair { r1: cap1, r2: cap2 },
            RatePair { r1: cap1, r2: 0.0 },
        ];
        Ok(validate_polygon(&points)?)
    }

    /// The capacity (or, for weak/mixed, the achievable) polygon appropriate
    /// to this channel's regime.
    pub fn rate_polygon(&self) -> Result<PolygonalRateRegion> {
        match self.regime() {
            Regime::VeryStrong => self.very_strong_rectangle(),
            Regime::Strong => self.strong_ic_polygon(),
            Regime::Weak | Regime::Mixed => super::etw_polygon(self, super::EtwKind::Achievable),
        }
    }
}

/// Interference regime of a standard-form channel.
///
/// Both links at or above `√(1+P_j)` is very strong; both links at least 1
/// (but not both very strong) is strong; both below 1 is weak; anything else
/// is mixed.
pub fn classify_gic(ch: &GicChannel) -> Regime {
    let very_a = ch.a >= (1.0 + ch.p2).sqrt();
    let very_b = ch.b >= (1.0 + ch.p1).sqrt();
    match (ch.a >= 1.0, ch.b >= 1.0) {
        _ if very_a && very_b => Regime::VeryStrong,
        (true, true) => Regime::Strong,
        (false, false) => Regime::Weak,
        _ => Regime::Mixed,
    }
}
