//! TASEP configurations and their dynamics.

pub mod batch;
pub mod coins;
pub mod continuous;
pub mod discrete;
pub mod ic;
pub mod oracle;
pub mod seed;
pub mod system;
pub mod trajectory;

pub use batch::{run_replicas, BatchMetadata, TrajectoryBatch};
pub use coins::{AlwaysSucceed, CoinSource, HashedCoins};
pub use continuous::simulate_continuous;
pub use discrete::{
    simulate_discrete_parallel, simulate_discrete_sequential, simulate_discrete_with, UpdateRule,
};
pub use ic::{init_configuration, light_cone_padding, InitialCondition, Window};
pub use oracle::{exact_transient_oracle, poisson_truncation, TransientLaw};
pub use seed::{replica_seed, splitmix64};
pub use system::ParticleSystem;
pub use trajectory::{check_current_duality, integrated_current, JumpEvent, RunSpec, Trajectory};
