//! From particle positions to Airy-process samples and the statistics
//! used to compare them with the limit laws.

pub mod density;
pub mod rescale;
pub mod stats;

pub use density::{empirical_density, rost_density, DensityBin, DensityProfile};
pub use rescale::{
    alternating_label, n_index, periodic_constants, rescale_alternating, rescale_periodic,
    rescale_step, step_label, IcTag, RescaledSample,
};
pub use stats::{
    correlation, ecdf, ks_statistic, ks_tabulated, mean, sample_variance, variance_g, Ecdf,
    VarianceEstimate, MIN_SAMPLES,
};
