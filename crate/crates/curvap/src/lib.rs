//! Spatial characterization of curvature-reconfigurable antenna apertures.
//!
//! The crate models densely sampled 1D arc and 2D cylindrical-section
//! apertures whose bend angle is a free parameter, and computes the
//! second-order spatial statistics that curvature reshapes:
//!
//! - visibility-gated channel vectors under the tangent-plane
//!   self-occlusion criterion ([`visibility`]);
//! - power-balanced correlation-matrix distances and Renyi-2 effective
//!   rank ([`metrics`]);
//! - closed-form isotropic-scattering correlation kernels with a
//!   curvature coverage-extension term, validated against brute-force
//!   angular quadrature ([`channels`], [`numerics`]);
//! - the two-stage non-stationarity pipeline: local stationarity
//!   screening, direction-resolved heatmaps, separation statistics, and
//!   realizable port-mode budgets ([`snspipe`]);
//! - a scenario runner with a JSON config, CSV/JSON artifacts, and a
//!   CLI front end ([`runner`]).
//!
//! All angles are radians internally; degrees appear only at the CLI
//! and report boundaries. Geometry objects are immutable after
//! construction and safe to share across threads.

pub mod channels;
pub mod geometry;
pub mod metrics;
pub mod numerics;
pub mod runner;
pub mod snspipe;
pub mod visibility;

pub use geometry::{
    Arc1DGeometry, ApertureSpec, Curvature, Cyl2DGeometry, Geometry, GeometryError,
    SteeringVector, UserLocation, Vec3,
};
pub use visibility::{VisibilityMask, VrPolicy};
