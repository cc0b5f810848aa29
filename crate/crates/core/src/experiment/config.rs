use crate::error::{Error, Result};
use crate::fredholm::NystromParams;
use crate::geometry::LppGeometry;
use crate::kernels::KernelKind;
use crate::sim::InitialCondition;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Dynamics {
    Continuous { t: f64 },
    Sequential { p: f64, steps: u64 },
    Parallel { p: f64, steps: u64 },
}

impl Dynamics {
    /// End time; steps for the discrete rules.
    pub fn horizon(&self) -> f64 {
        match *self {
            Dynamics::Continuous { t } => t,
            Dynamics::Sequential { steps, .. } | Dynamics::Parallel { steps, .. } => steps as f64,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Dynamics::Continuous { t } if !(t >= 0.0 && t.is_finite()) => {
                Err(Error::Config(format!("invalid time {t}")))
            }
            Dynamics::Sequential { p, .. } | Dynamics::Parallel { p, .. } if !(p > 0.0 && p < 1.0) => {
                Err(Error::Config(format!("jump probability {p} outside (0, 1)")))
            }
            _ => Ok(()),
        }
    }
}

/// Uniform grid `lo, lo + step, ..., hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl Grid {
    pub fn points(&self) -> Result<Vec<f64>> {
        let n = crate::fredholm::moments::grid_len(self.lo, self.hi, self.step)
            .map_err(|e| Error::Config(e.to_string()))?;
        Ok((0..n).map(|i| self.lo + i as f64 * self.step).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SlopeCheck {
    pub u: f64,
    /// Accepted range of `g_emp(u) / (2u)`.
    pub band: (f64, f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SaturationCheck {
    pub u: f64,
    pub target: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Analysis {
    /// Trajectories only.
    None {
        labels: (i64, i64),
        #[serde(default)]
        sample_times: Vec<f64>,
    },
    /// ECDF of the rescaled position at `u[0]` against the limit law; with
    /// a second `u`, also the two-point covariance ordering.
    OnePoint {
        u: Vec<f64>,
        reference: KernelKind,
        ks_threshold: f64,
        table: Grid,
        nystrom: Option<NystromParams>,
    },
    RostDensity {
        bin_width: usize,
        xi_range: (f64, f64),
        l1_threshold: f64,
    },
    Covariance {
        u: Vec<f64>,
        slope: SlopeCheck,
        saturation: Option<SaturationCheck>,
    },
    LppEquivalence {
        m: usize,
        n: usize,
        geometry: LppGeometry,
    },
    /// Marginals of the first particles against the exact law.
    Transient { n_particles: usize, epsilon: f64 },
}

/// A complete, reproducible experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub name: String,
    pub seed: u64,
    pub runs: u64,
    pub ic: Option<InitialCondition>,
    pub dynamics: Option<Dynamics>,
    pub analysis: Analysis,
    #[serde(default = "default_true")]
    pub write_trajectories: bool,
    pub output_dir: Option<PathBuf>,
}

fn default_true() -> bool {
    true
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Serialization(e.to_string()))
    }

    /// SHA-256 of the JSON form, output directory excluded.
    pub fn hash(&self) -> String {
        let mut c = self.clone();
        c.output_dir = None;
        let json = serde_json::to_string(&c).expect("config serializes");
        hex::encode(Sha256::digest(json.as_bytes()))
    }

    pub fn ic(&self) -> Result<&InitialCondition> {
        self.ic
            .as_ref()
            .ok_or_else(|| Error::Config(format!("experiment {} needs an initial condition", self.name)))
    }

    pub fn dynamics(&self) -> Result<Dynamics> {
        self.dynamics
            .ok_or_else(|| Error::Config(format!("experiment {} needs dynamics", self.name)))
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::Config("run count must be positive".into()));
        }
        if let Some(ic) = &self.ic {
            ic.validate().map_err(|e| Error::Config(e.to_string()))?;
        }
        if let Some(d) = &self.dynamics {
            d.validate()?;
        }
        let needs_sim = !matches!(self.analysis, Analysis::LppEquivalence { .. });
        if needs_sim {
            self.ic()?;
        }
        match &self.analysis {
            Analysis::None { labels, .. } => {
                self.dynamics()?;
                if labels.0 > labels.1 {
                    return Err(Error::Config("empty label range".into()));
                }
            }
            Analysis::OnePoint { u, table, ks_threshold, .. } => {
                self.dynamics()?;
                if u.is_empty() || u.len() > 2 {
                    return Err(Error::Config("one-point analysis takes one or two u values".into()));
                }
                table.points()?;
                if !(*ks_threshold > 0.0) {
                    return Err(Error::Config("KS threshold must be positive".into()));
                }
                match (self.ic()?, self.dynamics()?) {
                    (InitialCondition::Step | InitialCondition::Alternating, Dynamics::Continuous { .. }) => {}
                    (InitialCondition::PeriodicD { .. }, Dynamics::Sequential { .. }) => {}
                    (ic, d) => {
                        return Err(Error::Config(format!(
                            "no rescaling for {ic:?} under {d:?}"
                        )))
                    }
                }
            }
            Analysis::RostDensity { bin_width, xi_range, .. } => {
                if !matches!(self.ic()?, InitialCondition::Step)
                    || !matches!(self.dynamics()?, Dynamics::Continuous { .. })
                {
                    return Err(Error::Config("density profile needs the continuous step model".into()));
                }
                if *bin_width == 0 || !(xi_range.0 < xi_range.1) {
                    return Err(Error::Config("bad density binning".into()));
                }
            }
            Analysis::Covariance { u, slope, saturation } => {
                if !matches!(self.ic()?, InitialCondition::Step)
                    || !matches!(self.dynamics()?, Dynamics::Continuous { .. })
                {
                    return Err(Error::Config("covariance needs the continuous step model".into()));
                }
                let needed = std::iter::once(slope.u).chain(saturation.map(|s| s.u));
                for v in needed {
                    if !u.contains(&v) {
                        return Err(Error::Config(format!("checked u = {v} missing from the u list")));
                    }
                }
                if u.iter().any(|&v| !(v > 0.0)) {
                    return Err(Error::Config("covariance u values must be positive".into()));
                }
            }
            Analysis::LppEquivalence { m, n, .. } => {
                if *m == 0 || *n == 0 {
                    return Err(Error::Config("empty LPP grid".into()));
                }
            }
            Analysis::Transient { .. } => {
                if !matches!(self.dynamics()?, Dynamics::Continuous { .. }) {
                    return Err(Error::Config("the transient oracle is continuous-time".into()));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_round_trip() {
        let text = r#"
name = "demo"
seed = 7
runs = 10

[ic]
kind = "step"

[dynamics]
kind = "continuous"
t = 20.0

[analysis]
kind = "one_point"
u = [0.0]
reference = "airy2"
ks_threshold = 0.05
table = { lo = -7.0, hi = 6.0, step = 0.01 }
"#;
        let cfg = ExperimentConfig::from_toml(text).unwrap();
        assert!(cfg.write_trajectories);
        let back = ExperimentConfig::from_toml(&cfg.to_toml().unwrap()).unwrap();
        assert_eq!(back, cfg);
        assert_eq!(back.hash(), cfg.hash());
    }

    #[test]
    fn hash_ignores_output_dir_only() {
        let mut a = super::super::presets::preset("lpp-equivalence").unwrap();
        let h = a.hash();
        a.output_dir = Some("/tmp/x".into());
        assert_eq!(a.hash(), h);
        a.seed += 1;
        assert_ne!(a.hash(), h);
    }

    #[test]
    fn invalid_configs() {
        assert!(ExperimentConfig::from_toml("name = 1").is_err());
        let mut cfg = super::super::presets::preset("step-airy2-onepoint").unwrap();
        cfg.dynamics = Some(Dynamics::Sequential { p: 0.5, steps: 10 });
        assert!(cfg.validate().is_err());
        cfg.dynamics = Some(Dynamics::Continuous { t: -1.0 });
        assert!(cfg.validate().is_err());
        let mut cfg = super::super::presets::preset("covariance-slope").unwrap();
        cfg.runs = 0;
        assert!(cfg.validate().is_err());
    }
}
