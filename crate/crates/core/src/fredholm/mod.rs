//! Fredholm determinants for the Airy₁/Airy₂ finite-dimensional laws.

pub mod joint;
pub mod lu;
pub mod moments;
pub mod nystrom;
pub mod points;
pub mod query;
pub mod series;

pub use joint::{joint_law, joint_law_from, JointLaw, JOINT_TOL};
pub use moments::{cdf_moments, MomentEstimate, TabulatedCdf};
pub use nystrom::{fredholm_det_nystrom, fredholm_det_with, NystromParams, NystromSystem};
pub use points::{f1_scaled_point, f2_point, one_point, one_point_table, one_point_with, ONE_POINT_RANGE};
pub use query::DistributionQuery;
pub use series::{fredholm_series_oracle, MAX_SERIES_ORDER};
