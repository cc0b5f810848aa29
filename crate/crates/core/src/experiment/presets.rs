//! Named experiments.

use super::config::{Analysis, Dynamics, ExperimentConfig, Grid, SaturationCheck, SlopeCheck};
use crate::error::{Error, Result};
use crate::geometry::LppGeometry;
use crate::kernels::KernelKind;
use crate::sim::InitialCondition;

pub const PRESETS: [&str; 7] = [
    "step-airy2-onepoint",
    "alternating-airy1-onepoint",
    "periodic-airy1-onepoint",
    "rost-density",
    "covariance-slope",
    "lpp-equivalence",
    "transient-oracle",
];

const T: f64 = 1000.0;

fn limit_table() -> Grid {
    Grid {
        lo: -7.0,
        hi: 6.0,
        step: 0.01,
    }
}

pub fn preset(name: &str) -> Result<ExperimentConfig> {
    let base = |seed, runs, ic, dynamics, analysis| ExperimentConfig {
        name: name.to_string(),
        seed,
        runs,
        ic,
        dynamics,
        analysis,
        write_trajectories: true,
        output_dir: None,
    };
    let continuous = Some(Dynamics::Continuous { t: T });
    Ok(match name {
        "step-airy2-onepoint" => base(
            1,
            5000,
            Some(InitialCondition::Step),
            continuous,
            Analysis::OnePoint {
                u: vec![0.0],
                reference: KernelKind::Airy2,
                ks_threshold: 0.05,
                table: limit_table(),
                nystrom: None,
            },
        ),
        "alternating-airy1-onepoint" => base(
            2,
            5000,
            Some(InitialCondition::Alternating),
            continuous,
            Analysis::OnePoint {
                u: vec![0.0],
                reference: KernelKind::Airy1,
                ks_threshold: 0.05,
                table: limit_table(),
                nystrom: None,
            },
        ),
        "periodic-airy1-onepoint" => base(
            3,
            5000,
            Some(InitialCondition::PeriodicD { d: 2 }),
            Some(Dynamics::Sequential { p: 0.5, steps: 1000 }),
            Analysis::OnePoint {
                u: vec![0.0, 1.0],
                reference: KernelKind::Airy1,
                ks_threshold: 0.06,
                table: limit_table(),
                nystrom: None,
            },
        ),
        "rost-density" => base(
            4,
            200,
            Some(InitialCondition::Step),
            continuous,
            Analysis::RostDensity {
                bin_width: 50,
                xi_range: (-1.5, 1.5),
                l1_threshold: 0.02,
            },
        ),
        "covariance-slope" => base(
            5,
            10_000,
            Some(InitialCondition::Step),
            continuous,
            Analysis::Covariance {
                u: vec![0.25, 0.5, 1.0, 2.0, 4.0],
                slope: SlopeCheck {
                    u: 0.25,
                    band: (0.85, 1.15),
                },
                saturation: Some(SaturationCheck {
                    u: 4.0,
                    target: 1.6264,
                    tolerance: 0.1,
                }),
            },
        ),
        "lpp-equivalence" => base(
            6,
            100,
            None,
            None,
            Analysis::LppEquivalence {
                m: 20,
                n: 20,
                geometry: LppGeometry::PointToPoint,
            },
        ),
        "transient-oracle" => base(
            7,
            1_000_000,
            Some(InitialCondition::Step),
            Some(Dynamics::Continuous { t: 1.0 }),
            Analysis::Transient {
                n_particles: 3,
                epsilon: 1e-6,
            },
        ),
        other => {
            return Err(Error::Config(format!(
                "unknown preset {other}; known: {}",
                PRESETS.join(", ")
            )))
        }
    })
}
