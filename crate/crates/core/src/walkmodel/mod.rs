//! Step sets, kernels, the group of the walk and conformal data.

pub mod angle;
pub mod branch;
pub mod catalog;
pub mod conformal;
pub mod group;
pub mod kernel;
pub mod model;

pub use angle::{angle, AngleData};
pub use branch::{branch_points, BranchData, BranchPoint};
pub use catalog::{catalog_model, conformal_lookup, walk, Walk};
pub use conformal::{validate_conformal, ConformalData, ConformalSource, UserConformal};
pub use group::{group_orbit, signed_orbit_sum, GroupData, DEFAULT_GROUP_CAP};
pub use kernel::{kernel, Kernel};
pub use model::{validate_model, StepModel};
