//! Completion-time regions for two-user Gaussian broadcast and interference
//! channels.
//!
//! A completion-time pair `(d1, d2)` is achievable when the rate pair
//! `(τ1/d1, τ2/d2)` lies in the rate region constrained to the codeword
//! ratio `d1/d2`. This crate builds those regions in closed form, minimizes
//! weighted sums of completion times over them, and checks every closed form
//! against a brute-force grid oracle.

pub mod channels;
pub mod ctmap;
pub mod error;
pub mod exec;
pub mod math;
pub mod optimize;
pub mod oracle;
pub mod regions;

pub use channels::{
    classify_gic, etw_polygon, intersect_load_ray_polygon, validate_polygon, EtwKind, GbcChannel,
    GicChannel, PolygonalRateRegion, RateRegion, Regime,
};
pub use ctmap::{
    constrained_membership, ct_achievable, map_side1, map_side2, objective_d, Side,
};
pub use error::{Error, PolygonError, Result};
pub use exec::Exec;
pub use optimize::{
    gbc_min_weighted, gbc_tangent, nonconvexity_certificate, polygon_min_weighted,
    polygon_partitions, Minimizer, PartitionSet, SolverResult, TangentLine,
};
pub use oracle::{compare_regions, grid_ct_cloud, grid_min_weighted, CompareReport};
pub use regions::{
    gbc_ctr, polygon_ctr, strong_ctr_closed_form, very_strong_ctr, CTRegion, ConvexCtSubregion,
    CtMembership, RegionTag,
};
pub use math::{
    gamma, inv_gamma, CompletionTimePair, LoadSpec, NumericPolicy, RatePair, SoloCaps, EPS_MEMBER,
    EPS_ROOT, GRID_N,
};
