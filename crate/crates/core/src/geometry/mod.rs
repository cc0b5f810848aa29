//! Height functions and the last passage percolation picture.

pub mod border;
pub mod coupling;
pub mod height;
pub mod io;
pub mod lpp;

pub use border::{border_set, BorderSet};
pub use coupling::{
    coupled_jump_times, initial_positions, tasep_lpp_equivalence, tasep_lpp_equivalence_with,
    EquivalenceReport,
};
pub use height::{height_apply_jump, height_from_config, HeightFunction};
pub use io::{read_grid_binary, write_grid_binary, write_grid_csv, GRID_MAGIC};
pub use lpp::{
    lpp_brute_force, lpp_passage_times, lpp_passage_times_row_major, lpp_sample_weights,
    LppGeometry, LppGrid,
};
