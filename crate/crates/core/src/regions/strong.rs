//! The strong-regime region written as a literal list of half-planes, one
//! list per load-ratio case. Kept for comparison against the ratio-constrained
//! membership test, which is the authoritative definition.

use serde::Serialize;

use super::CtMembership;
use crate::channels::GicChannel;
use crate::error::Result;
use crate::math::{CompletionTimePair, LoadSpec};

/// `c1·d1 + c2·d2 ≥ rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HalfPlane {
    pub c1: f64,
    pub c2: f64,
    pub rhs: f64,
}

impl HalfPlane {
    fn holds(&self, d: CompletionTimePair, eps: f64) -> bool {
        let norm = self.c1.hypot(self.c2);
        (self.c1 * d.d1 + self.c2 * d.d2 - self.rhs) / norm >= -eps
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrongCtrClosedForm {
    /// 1, 2 or 3, by where `τ2/τ1` falls between the two thresholds.
    pub case: u8,
    /// `(r_s − γ(P1))/γ(P1)` and `γ(P2)/(r_s − γ(P2))`.
    pub thresholds: [f64; 2],
    pub sum_rate: f64,
    pub constraints: Vec<HalfPlane>,
}

pub fn strong_ctr_closed_form(ch: &GicChannel, load: &LoadSpec) -> Result<StrongCtrClosedForm> {
    ch.strong_ic_polygon()?;
    let caps = ch.caps();
    let (g1, g2) = (caps.cap1, caps.cap2);
    let rs = ch.sum_rate_cap();
    let lo = (rs - g1) / g1;
    let hi = g2 / (rs - g2);
    let ratio = load.ratio();
    let total = load.tau1 + load.tau2;

    let mut constraints = vec![
        HalfPlane {
            c1: g1,
            c2: 0.0,
            rhs: load.tau1,
        },
        HalfPlane {
            c1: 0.0,
            c2: g2,
            rhs: load.tau2,
        },
    ];
    let face2 = HalfPlane {
        c1: rs - g2,
        c2: g2,
        rhs: total,
    };
    let face1 = HalfPlane {
        c1: g1,
        c2: rs - g1,
        rhs: total,
    };
    let case = if ratio <= lo {
        constraints.push(face1);
        1
    } else if ratio < hi {
        constraints.push(face2);
        constraints.push(face1);
        2
    } else {
        constraints.push(face2);
        3
    };
    Ok(StrongCtrClosedForm {
        case,
        thresholds: [lo, hi],
        sum_rate: rs,
        constraints,
    })
}

impl CtMembership for StrongCtrClosedForm {
    fn ct_contains_with(&self, d: CompletionTimePair, eps: f64) -> bool {
        self.constraints.iter().all(|h| h.holds(d, eps))
    }

    fn corners(&self) -> Vec<CompletionTimePair> {
        let mut out = Vec::new();
        for (i, h) in self.constraints.iter().enumerate() {
            for k in &self.constraints[i + 1..] {
                let det = h.c1 * k.c2 - h.c2 * k.c1;
                if det.abs() < 1e-300 {
                    continue;
                }
                let d = CompletionTimePair {
                    d1: (h.rhs * k.c2 - h.c2 * k.rhs) / det,
                    d2: (h.c1 * k.rhs - h.rhs * k.c1) / det,
                };
                if d.d1 > 0.0 && d.d2 > 0.0 && self.ct_contains_with(d, 1e-9) {
                    out.push(d);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn middle_case_on_symmetric_channel() {
        let ch = GicChannel::new(1.0, 1.0, 3.0, 3.0).unwrap();
        let cf = strong_ctr_closed_form(&ch, &LoadSpec { tau1: 1.0, tau2: 1.0 }).unwrap();
        assert_eq!(cf.case, 2);
        assert!((cf.thresholds[0] - 0.403_677).abs() < 1e-6);
        assert!((cf.thresholds[1] - 2.477_225_251_693_334).abs() < 1e-12);
        let corner = cf
            .corners()
            .into_iter()
            .find(|c| (c.d1 - c.d2).abs() < 1e-9)
            .unwrap();
        assert!((corner.d1 - 1.424_829).abs() < 1e-6);
        // The literal conjunction rejects a point the ratio test accepts.
        assert!(!cf.ct_contains(CompletionTimePair { d1: 1.0, d2: 1.596_323 }));
    }

    #[test]
    fn first_case_constraints() {
        let ch = GicChannel::new(1.0, 1.0, 3.0, 3.0).unwrap();
        let cf = strong_ctr_closed_form(&ch, &LoadSpec { tau1: 1.0, tau2: 0.2 }).unwrap();
        assert_eq!(cf.case, 1);
        assert_eq!(cf.constraints.len(), 3);
        let h = cf.constraints[2];
        assert!((h.c1 - 1.0).abs() < 1e-12);
        assert!((h.c2 - 0.403_677).abs() < 1e-6);
        assert!((h.rhs - 1.2).abs() < 1e-12);
    }

    #[test]
    fn requires_strong() {
        let ch = GicChannel::new(2.0, 2.0, 1.0, 1.0).unwrap();
        assert!(strong_ctr_closed_form(&ch, &LoadSpec { tau1: 1.0, tau2: 1.0 }).is_err());
    }
}
