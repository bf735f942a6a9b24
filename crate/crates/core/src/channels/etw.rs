//! Etkin–Tse–Wang rate regions for weak and mixed interference.
//!
//! The achievable region is the Han–Kobayashi region with Gaussian codebooks
//! in which each user's private message is received at the other receiver at
//! the noise level (private power `min{P_i, 1/c²}` for a cross gain `c < 1`,
//! and no private message across a strong link). The outer bound is the
//! genie-aided bound set, restricted to the inequalities that hold for the
//! link strengths at hand.

use serde::Serialize;

use super::gic::{GicChannel, Regime};
use super::polygon::{polygon_from_constraints, PolygonalRateRegion, RateConstraint};
use crate::error::{Error, PolygonError, Result};
use crate::math::gamma_unchecked as g;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EtwKind {
    Achievable,
    Outer,
}

/// Private-message power of a user whose signal reaches the other receiver
/// with gain `cross`.
fn private_power(power: f64, cross: f64) -> f64 {
    if cross >= 1.0 {
        0.0
    } else if cross == 0.0 {
        power
    } else {
        power.min(1.0 / (cross * cross))
    }
}

/// The raw inequality list (before redundancy pruning).
pub fn etw_constraints(ch: &GicChannel, kind: EtwKind) -> Vec<RateConstraint> {
    let (a2, b2) = (ch.a() * ch.a(), ch.b() * ch.b());
    let (p1, p2) = (ch.p1(), ch.p2());
    let c = RateConstraint::new;
    match kind {
        EtwKind::Achievable => {
            let p1p = private_power(p1, ch.a());
            let p2p = private_power(p2, ch.b());
            // Noise plus the other user's private interference at each receiver.
            let n1 = 1.0 + b2 * p2p;
            let n2 = 1.0 + a2 * p1p;
            let (p1c, p2c) = (p1 - p1p, p2 - p2p);

            let own1 = g(p1 / n1); // I(X1;Y1|U2)
            let own2 = g(p2 / n2);
            let all1 = g((p1 + b2 * p2c) / n1); // I(X1,U2;Y1)
            let all2 = g((p2 + a2 * p1c) / n2);
            let priv1 = g(p1p / n1); // I(X1;Y1|U1,U2)
            let priv2 = g(p2p / n2);
            let cross1 = g((p1p + b2 * p2c) / n1); // I(X1,U2;Y1|U1)
            let cross2 = g((p2p + a2 * p1c) / n2);

            vec![
                c(1.0, 0.0, own1),
                c(0.0, 1.0, own2),
                c(1.0, 1.0, all1 + priv2),
                c(1.0, 1.0, all2 + priv1),
                c(1.0, 1.0, cross1 + cross2),
                c(2.0, 1.0, all1 + priv1 + cross2),
                c(1.0, 2.0, all2 + priv2 + cross1),
            ]
        }
        EtwKind::Outer => {
            let (snr1, snr2) = (p1, p2);
            let (inr1, inr2) = (b2 * p2, a2 * p1);
            let mut out = vec![
                c(1.0, 0.0, g(snr1)),
                c(0.0, 1.0, g(snr2)),
                c(1.0, 1.0, g(inr1 + snr1 / (1.0 + inr2)) + g(inr2 + snr2 / (1.0 + inr1))),
                c(
                    2.0,
                    1.0,
                    g(snr1 + inr1) + g(snr1 / (1.0 + inr2)) + g(inr2 + snr2 / (1.0 + inr1)),
                ),
                c(
                    1.0,
                    2.0,
                    g(snr2 + inr2) + g(snr2 / (1.0 + inr1)) + g(inr1 + snr1 / (1.0 + inr2)),
                ),
            ];
            // One-sided bounds: the weak-link form where the link is weak,
            // the compound-MAC form where it is strong.
            if ch.a() < 1.0 {
                out.push(c(1.0, 1.0, g(snr1) + g(snr2 / (1.0 + inr2))));
            } else {
                out.push(c(1.0, 1.0, g(snr2 + inr2)));
            }
            if ch.b() < 1.0 {
                out.push(c(1.0, 1.0, g(snr2) + g(snr1 / (1.0 + inr1))));
            } else {
                out.push(c(1.0, 1.0, g(snr1 + inr1)));
            }
            out
        }
    }
}

/// Polygonal ETW region (achievable or outer) for a weak or mixed channel.
pub fn etw_polygon(ch: &GicChannel, kind: EtwKind) -> Result<PolygonalRateRegion> {
    let regime = ch.regime();
    if !matches!(regime, Regime::Weak | Regime::Mixed) {
        return Err(Error::WrongRegime {
            expected: "weak or mixed",
            actual: regime,
        });
    }
    let poly = polygon_from_constraints(&etw_constraints(ch, kind))?;
    if poly.len() > 6 {
        return Err(PolygonError::TooManyPoints(poly.len()).into());
    }
    Ok(poly)
}
