//! Configured experiments: presets, runner and CSV tables.

mod config;
mod presets;
mod run;
mod table;

pub use config::{
    Analysis, Dynamics, ExperimentConfig, Grid, SaturationCheck, SlopeCheck,
};
pub use presets::{preset, PRESETS};
pub use run::{reference_kernel, run_experiment, Check, ExperimentSummary};
pub use table::{cdf_table, emit_table, Table, TableKind};
