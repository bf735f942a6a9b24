//! JSON channel and polygon files.
//!
//! Channel: `{"type":"gbc","h1":x,"h2":x,"P":x}` or
//! `{"type":"gic","a":x,"b":x,"P1":x,"P2":x}`.
//! Polygon: `{"points":[[r1,r2],...]}` ordered `A_1 … A_J`.

use serde::{Deserialize, Serialize};

use super::{validate_polygon, GbcChannel, GicChannel, PolygonalRateRegion};
use crate::error::{Error, Result};
use crate::math::RatePair;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum ChannelFile {
    Gbc {
        h1: f64,
        h2: f64,
        #[serde(rename = "P")]
        power: f64,
    },
    Gic {
        a: f64,
        b: f64,
        #[serde(rename = "P1")]
        p1: f64,
        #[serde(rename = "P2")]
        p2: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Channel {
    Gbc(GbcChannel),
    Gic(GicChannel),
}

impl ChannelFile {
    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Validates the parameters. With `swap_users`, a broadcast channel is
    /// relabeled so that the stronger receiver becomes user 1.
    pub fn build(&self, swap_users: bool) -> Result<Channel> {
        match *self {
            ChannelFile::Gbc { h1, h2, power } if swap_users => {
                GbcChannel::relabeled(h1, h2, power).map(Channel::Gbc)
            }
            ChannelFile::Gbc { h1, h2, power } => GbcChannel::new(h1, h2, power).map(Channel::Gbc),
            ChannelFile::Gic { a, b, p1, p2 } if swap_users => {
                GicChannel::new(b, a, p2, p1).map(Channel::Gic)
            }
            ChannelFile::Gic { a, b, p1, p2 } => GicChannel::new(a, b, p1, p2).map(Channel::Gic),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolygonFile {
    pub points: Vec<[f64; 2]>,
}

impl PolygonFile {
    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_region(region: &PolygonalRateRegion) -> Self {
        Self {
            points: region.points().iter().map(|p| [p.r1, p.r2]).collect(),
        }
    }

    pub fn build(&self) -> Result<PolygonalRateRegion> {
        let pts: Vec<RatePair> = self
            .points
            .iter()
            .map(|&[r1, r2]| RatePair { r1, r2 })
            .collect();
        Ok(validate_polygon(&pts)?)
    }
}
