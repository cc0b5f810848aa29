//! Running an experiment into an output directory.

use super::config::{Analysis, Dynamics, ExperimentConfig};
use super::table::{cdf_table, Table};
use crate::error::{Error, Result};
use crate::fredholm::{cdf_moments, TabulatedCdf};
use crate::geometry::tasep_lpp_equivalence_with;
use crate::kernels::KernelKind;
use crate::scaling::{
    self, alternating_label, empirical_density, n_index, rescale_alternating, rescale_periodic,
    rescale_step, step_label, variance_g,
};
use crate::sim::{
    exact_transient_oracle, init_configuration, light_cone_padding, replica_seed, run_replicas,
    simulate_continuous, simulate_discrete_parallel, simulate_discrete_sequential,
    InitialCondition, ParticleSystem, RunSpec, Trajectory, TrajectoryBatch, Window,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

/// One pass/fail comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    /// Human-readable acceptance condition.
    pub condition: String,
    pub passed: bool,
}

impl Check {
    fn at_most(name: &str, value: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            value,
            condition: format!("<= {bound}"),
            passed: value <= bound,
        }
    }

    fn within(name: &str, value: f64, lo: f64, hi: f64) -> Self {
        Self {
            name: name.into(),
            value,
            condition: format!("in [{lo}, {hi}]"),
            passed: lo <= value && value <= hi,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSummary {
    pub name: String,
    pub version: String,
    pub config_hash: String,
    pub seed: u64,
    pub runs: u64,
    pub checks: Vec<Check>,
    pub info: BTreeMap<String, Value>,
    /// Wall-clock seconds per stage; not part of the reproducible output.
    pub timings: BTreeMap<String, f64>,
    /// Data files written, relative to the output directory.
    pub files: Vec<String>,
    pub passed: bool,
}

struct Context<'a> {
    cfg: &'a ExperimentConfig,
    dir: PathBuf,
    files: Vec<String>,
    checks: Vec<Check>,
    info: BTreeMap<String, Value>,
    timings: BTreeMap<String, f64>,
}

impl Context<'_> {
    fn header(&self) -> Vec<(String, String)> {
        let mut cfg = self.cfg.clone();
        cfg.output_dir = None;
        vec![
            ("experiment".into(), self.cfg.name.clone()),
            ("config_hash".into(), self.cfg.hash()),
            ("seed".into(), self.cfg.seed.to_string()),
            ("runs".into(), self.cfg.runs.to_string()),
            ("version".into(), crate::VERSION.into()),
            (
                "config".into(),
                serde_json::to_string(&cfg).expect("config serializes"),
            ),
        ]
    }

    fn save_table(&mut self, file: &str, mut table: Table) -> Result<()> {
        let mut meta = self.header();
        meta.append(&mut table.meta);
        table.meta = meta;
        table.save(&self.dir.join(file))?;
        self.files.push(file.into());
        Ok(())
    }

    fn save_trajectories(&mut self, batch: &TrajectoryBatch) -> Result<()> {
        if !self.cfg.write_trajectories {
            return Ok(());
        }
        let path = self.dir.join("trajectories.csv");
        let file = std::fs::File::create(&path).map_err(|e| Error::io(&path, e))?;
        let mut out = BufWriter::new(file);
        let io = |e| Error::io(&path, e);
        for (k, v) in self.header() {
            writeln!(out, "# {k}: {v}").map_err(io)?;
        }
        batch.write_csv(&mut out).map_err(io)?;
        out.flush().map_err(io)?;
        let meta_path = self.dir.join("trajectories.json");
        let meta = serde_json::to_string_pretty(&batch.metadata())
            .map_err(|e| Error::Serialization(e.to_string()))?;
        std::fs::write(&meta_path, meta + "\n").map_err(|e| Error::io(&meta_path, e))?;
        self.files.push("trajectories.csv".into());
        self.files.push("trajectories.json".into());
        Ok(())
    }

    fn time<T>(&mut self, stage: &str, f: impl FnOnce(&mut Self) -> Result<T>) -> Result<T> {
        let start = Instant::now();
        let out = f(self)?;
        self.timings
            .insert(stage.into(), start.elapsed().as_secs_f64());
        Ok(out)
    }
}

/// Runs `cfg`, writing data files and `summary.json` into `out`.
pub fn run_experiment(cfg: &ExperimentConfig, out: &Path) -> Result<ExperimentSummary> {
    cfg.validate()?;
    std::fs::create_dir_all(out).map_err(|e| Error::io(out, e))?;
    let mut ctx = Context {
        cfg,
        dir: out.to_path_buf(),
        files: Vec::new(),
        checks: Vec::new(),
        info: BTreeMap::new(),
        timings: BTreeMap::new(),
    };
    match &cfg.analysis {
        Analysis::None {
            labels,
            sample_times,
        } => {
            let times = if sample_times.is_empty() {
                vec![cfg.dynamics()?.horizon()]
            } else {
                sample_times.clone()
            };
            let labels: Vec<i64> = (labels.0..=labels.1).collect();
            let runs = ctx.time("simulate", |c| simulate_batch(c.cfg, &labels, &times))?;
            ctx.save_trajectories(&TrajectoryBatch::new(cfg.seed, cfg.ic.clone(), runs))?;
        }
        Analysis::OnePoint { .. } => one_point(&mut ctx)?,
        Analysis::RostDensity { .. } => rost(&mut ctx)?,
        Analysis::Covariance { .. } => covariance(&mut ctx)?,
        Analysis::LppEquivalence { .. } => lpp(&mut ctx)?,
        Analysis::Transient { .. } => transient(&mut ctx)?,
    }
    let summary = ExperimentSummary {
        name: cfg.name.clone(),
        version: crate::VERSION.into(),
        config_hash: cfg.hash(),
        seed: cfg.seed,
        runs: cfg.runs,
        passed: ctx.checks.iter().all(|c| c.passed),
        checks: ctx.checks,
        info: ctx.info,
        timings: ctx.timings,
        files: ctx.files,
    };
    let path = out.join("summary.json");
    let text =
        serde_json::to_string_pretty(&summary).map_err(|e| Error::Serialization(e.to_string()))?;
    std::fs::write(&path, text + "\n").map_err(|e| Error::io(&path, e))?;
    Ok(summary)
}

/// Window holding `labels` with light-cone padding to the right.
fn window_for(ic: &InitialCondition, labels: &[i64], horizon: f64) -> Result<Window> {
    let lo = *labels.iter().min().expect("labels");
    let hi = *labels.iter().max().expect("labels");
    match *ic {
        InitialCondition::Bernoulli { rho, reference, .. } => {
            // enough sites left of the reference to hold the labels with
            // overwhelming probability; checked after initialization
            let need = (hi.max(1) as f64 / rho.max(0.05) * 2.0).ceil() as i64 + 50;
            let right = (-lo).max(0) as f64 / rho.max(0.05) * 2.0;
            Window::new(
                reference - need,
                reference + right.ceil() as i64 + light_cone_padding(horizon),
            )
        }
        _ => ic.window_for_labels(lo, hi, horizon),
    }
}

fn simulate_batch(cfg: &ExperimentConfig, labels: &[i64], times: &[f64]) -> Result<Vec<Trajectory>> {
    let ic = cfg.ic()?.clone();
    let dynamics = cfg.dynamics()?;
    let window = window_for(&ic, labels, dynamics.horizon())?;
    let template = init_configuration(&ic, window)?;
    for &k in labels {
        template
            .position(k)
            .map_err(|_| Error::Config(format!("label {k} is not inside the simulated window")))?;
    }
    let spec = RunSpec::new(times.to_vec(), labels.to_vec());
    run_replicas(cfg.runs, cfg.seed, |_, seed| {
        let ps = match ic {
            // random configurations are redrawn per run
            InitialCondition::Bernoulli { rho, reference, .. } => init_configuration(
                &InitialCondition::Bernoulli {
                    rho,
                    seed,
                    reference,
                },
                window,
            )?,
            _ => template.clone(),
        };
        match dynamics {
            Dynamics::Continuous { t } => simulate_continuous(ps, t, seed, &spec),
            Dynamics::Sequential { p, steps } => simulate_discrete_sequential(ps, steps, p, seed, &spec),
            Dynamics::Parallel { p, steps } => simulate_discrete_parallel(ps, steps, p, seed, &spec),
        }
    })
}

fn sorted_labels(mut v: Vec<i64>) -> Vec<i64> {
    v.sort_unstable();
    v.dedup();
    v
}

fn one_point(ctx: &mut Context) -> Result<()> {
    let cfg = ctx.cfg;
    let Analysis::OnePoint {
        u,
        reference,
        ks_threshold,
        table,
        nystrom,
    } = &cfg.analysis
    else {
        unreachable!()
    };
    let ic = cfg.ic()?.clone();
    let dynamics = cfg.dynamics()?;
    let t = dynamics.horizon();
    let label_of = |v: f64| -> Result<i64> {
        match (&ic, dynamics) {
            (InitialCondition::Step, _) => step_label(t, v),
            (InitialCondition::Alternating, _) => alternating_label(t, v),
            (InitialCondition::PeriodicD { d }, Dynamics::Sequential { p, .. }) => n_index(*d, p, v, t),
            _ => Err(Error::Config("no rescaling for this model".into())),
        }
    };
    let labels = sorted_labels(u.iter().map(|&v| label_of(v)).collect::<Result<_>>()?);
    let runs = ctx.time("simulate", |c| simulate_batch(c.cfg, &labels, &[0.0, t]))?;

    let rescale = |tr: &Trajectory, v: f64| -> Result<f64> {
        Ok(match (&ic, dynamics) {
            (InitialCondition::Step, _) => rescale_step(tr, t, v)?.value,
            (InitialCondition::Alternating, _) => rescale_alternating(tr, t, v)?.value,
            (InitialCondition::PeriodicD { d }, Dynamics::Sequential { p, .. }) => {
                rescale_periodic(tr, *d, p, t, v)?.value
            }
            _ => unreachable!(),
        })
    };
    let mut samples: Vec<Vec<f64>> = Vec::new();
    let mut sample_table = Table::new(&["run", "u", "label", "x", "value"]);
    for &v in u {
        let k = label_of(v)?;
        let mut col = Vec::with_capacity(runs.len());
        for (r, tr) in runs.iter().enumerate() {
            let value = rescale(tr, v)?;
            sample_table.push([
                r.to_string(),
                v.to_string(),
                k.to_string(),
                tr.position(1, k)?.to_string(),
                value.to_string(),
            ]);
            col.push(value);
        }
        samples.push(col);
    }

    let ref_table = ctx.time("reference", |_| cdf_table(*reference, *table, *nystrom))?;
    let cdf = TabulatedCdf::new(ref_table.column("s")?, ref_table.column(ref_table.columns[1].as_str())?)?;
    let e = scaling::ecdf(&samples[0])?;
    let ks = scaling::ks_statistic(&e, |x| cdf.eval(x));
    ctx.checks.push(Check::at_most(
        &format!("ks_u{}", u[0]),
        ks,
        *ks_threshold,
    ));

    let mut ecdf_table = Table::new(&["s", "ecdf", "reference"]).meta("u", u[0]);
    for (&s, &f) in cdf.s.iter().zip(&cdf.f) {
        ecdf_table.push([s, e.eval(s), f]);
    }

    let ref_mean = cdf_moments(&cdf, 1)?;
    let ref_var = cdf_moments(&cdf, 2)?;
    let emp_var = scaling::sample_variance(&samples[0])?;
    ctx.info.insert("reference_mean".into(), json!(ref_mean.value));
    ctx.info.insert("reference_variance".into(), json!(ref_var.value));
    ctx.info.insert("sample_mean".into(), json!(scaling::mean(&samples[0])));
    ctx.info.insert("sample_variance".into(), json!(emp_var.value));
    ctx.info.insert("ks".into(), json!(ks));

    // tagged particle at u[0]: displacement per unit time
    let k0 = label_of(u[0])?;
    let speed = runs
        .iter()
        .map(|tr| Ok((tr.position(1, k0)? - tr.position(0, k0)?) as f64 / t))
        .collect::<Result<Vec<f64>>>()?;
    ctx.info.insert("tagged_label".into(), json!(k0));
    ctx.info.insert("tagged_speed".into(), json!(scaling::mean(&speed)));
    let final_ratio = runs
        .iter()
        .map(|tr| Ok(tr.position(1, k0)? as f64 / t))
        .collect::<Result<Vec<f64>>>()?;
    ctx.info.insert("tagged_position_over_t".into(), json!(scaling::mean(&final_ratio)));

    if samples.len() == 2 {
        let a = &samples[0];
        let b = &samples[1];
        let (ma, mb) = (scaling::mean(a), scaling::mean(b));
        let cov = a.iter().zip(b).map(|(x, y)| (x - ma) * (y - mb)).sum::<f64>() / (a.len() - 1) as f64;
        let var = emp_var.value;
        ctx.info.insert("covariance".into(), json!(cov));
        ctx.info.insert("correlation".into(), json!(scaling::correlation(a, b)?));
        ctx.checks.push(Check {
            name: format!("covariance_u{}_ordering", u[1]),
            value: cov,
            condition: format!("in (0, {var})"),
            passed: cov > 0.0 && cov < var,
        });
    }

    let batch = TrajectoryBatch::new(cfg.seed, cfg.ic.clone(), runs);
    ctx.save_trajectories(&batch)?;
    ctx.save_table("samples.csv", sample_table)?;
    ctx.save_table("reference.csv", ref_table)?;
    ctx.save_table("ecdf.csv", ecdf_table)?;
    Ok(())
}

fn rost(ctx: &mut Context) -> Result<()> {
    let cfg = ctx.cfg;
    let Analysis::RostDensity {
        bin_width,
        xi_range,
        l1_threshold,
    } = cfg.analysis
    else {
        unreachable!()
    };
    let t = cfg.dynamics()?.horizon();
    // every particle that can be right of xi_lo * t
    let last = (-xi_range.0 * t).ceil() as i64 + (10.0 * t.sqrt()).ceil() as i64 + bin_width as i64;
    let labels: Vec<i64> = (1..=last.max(1)).collect();
    let runs = ctx.time("simulate", |c| simulate_batch(c.cfg, &labels, &[t]))?;
    let profile = empirical_density(&runs, t, bin_width, xi_range)?;
    let l1 = profile.l1_distance();
    ctx.checks.push(Check::at_most("rost_l1", l1, l1_threshold));
    let mut table = Table::new(&["xi", "site_lo", "site_hi", "density", "reference"])
        .meta("bin_width", bin_width)
        .meta("t", t);
    for b in &profile.bins {
        table.push([
            b.xi.to_string(),
            b.sites.0.to_string(),
            b.sites.1.to_string(),
            b.density.to_string(),
            b.reference.to_string(),
        ]);
    }
    ctx.save_trajectories(&TrajectoryBatch::new(cfg.seed, cfg.ic.clone(), runs))?;
    ctx.save_table("density.csv", table)?;
    Ok(())
}

fn covariance(ctx: &mut Context) -> Result<()> {
    let cfg = ctx.cfg;
    let Analysis::Covariance {
        u,
        slope,
        saturation,
    } = &cfg.analysis
    else {
        unreachable!()
    };
    let t = cfg.dynamics()?.horizon();
    let mut all_u = vec![0.0];
    all_u.extend(u.iter().copied());
    let labels = sorted_labels(all_u.iter().map(|&v| step_label(t, v)).collect::<Result<_>>()?);
    let runs = ctx.time("simulate", |c| simulate_batch(c.cfg, &labels, &[t]))?;
    let at = |v: f64| -> Result<Vec<f64>> {
        runs.iter().map(|tr| Ok(rescale_step(tr, t, v)?.value)).collect()
    };
    let base = at(0.0)?;
    let mut table = Table::new(&["u", "g_emp", "stderr"]).meta("t", t);
    table.push([0.0, 0.0, 0.0]);
    let mut g = Vec::new();
    for &v in u {
        let est = variance_g(&at(v)?, &base)?;
        table.push([v, est.value, est.stderr]);
        g.push((v, est));
    }
    let find = |v: f64| g.iter().find(|(w, _)| *w == v).map(|(_, e)| *e).expect("validated");
    let s = find(slope.u);
    ctx.checks.push(Check::within(
        &format!("g_slope_u{}", slope.u),
        s.value / (2.0 * slope.u),
        slope.band.0,
        slope.band.1,
    ));
    if let Some(sat) = saturation {
        let e = find(sat.u);
        ctx.checks.push(Check::at_most(
            &format!("g_saturation_u{}", sat.u),
            (e.value - sat.target).abs(),
            sat.tolerance,
        ));
    }
    // nondecreasing on (0, 2] up to three standard errors of the difference
    let mut worst: f64 = f64::INFINITY;
    let mut prev: Option<crate::scaling::VarianceEstimate> = None;
    for (v, e) in g.iter().filter(|(v, _)| *v <= 2.0) {
        let _ = v;
        if let Some(p) = prev {
            let band = 3.0 * (p.stderr * p.stderr + e.stderr * e.stderr).sqrt();
            worst = worst.min(e.value - p.value + band);
        }
        prev = Some(*e);
    }
    if worst.is_finite() {
        ctx.checks.push(Check {
            name: "g_nondecreasing".into(),
            value: worst,
            condition: ">= 0 (increment plus 3 standard errors)".into(),
            passed: worst >= 0.0,
        });
    }
    ctx.info.insert("base_variance".into(), json!(scaling::sample_variance(&base)?.value));
    ctx.save_trajectories(&TrajectoryBatch::new(cfg.seed, cfg.ic.clone(), runs))?;
    ctx.save_table("g.csv", table)?;
    Ok(())
}

fn lpp(ctx: &mut Context) -> Result<()> {
    let cfg = ctx.cfg;
    let Analysis::LppEquivalence { m, n, geometry } = cfg.analysis else {
        unreachable!()
    };
    let reports = ctx.time("compare", |c| {
        run_replicas(c.cfg.runs, c.cfg.seed, |_, seed| {
            tasep_lpp_equivalence_with(seed, m, n, geometry)
        })
    })?;
    let mut table = Table::new(&["run", "seed", "cells", "mismatch_m", "mismatch_n"])
        .meta("grid", format!("{m}x{n}"))
        .meta("geometry", json!(geometry).as_str().unwrap_or_default());
    let mut failures = 0;
    for (r, rep) in reports.iter().enumerate() {
        debug_assert_eq!(rep.seed, replica_seed(cfg.seed, r as u64));
        let (a, b) = rep
            .first_mismatch
            .map_or((String::new(), String::new()), |(a, b)| (a.to_string(), b.to_string()));
        failures += usize::from(!rep.passed());
        table.push([r.to_string(), rep.seed.to_string(), rep.cells_checked.to_string(), a, b]);
    }
    ctx.checks.push(Check::at_most("lpp_mismatches", failures as f64, 0.0));
    ctx.save_table("lpp.csv", table)?;
    Ok(())
}

fn transient(ctx: &mut Context) -> Result<()> {
    let cfg = ctx.cfg;
    let Analysis::Transient {
        n_particles,
        epsilon,
    } = cfg.analysis
    else {
        unreachable!()
    };
    let ic = cfg.ic()?.clone();
    let t = cfg.dynamics()?.horizon();
    let law = exact_transient_oracle(&ic, n_particles, t, epsilon)?;
    let start: Vec<i64> = law
        .labels
        .iter()
        .map(|&k| ic.initial_position(k).expect("deterministic"))
        .collect();
    let spec = RunSpec::new(vec![t], law.labels.clone());
    let finals = ctx.time("simulate", |c| {
        run_replicas(c.cfg.runs, c.cfg.seed, |_, seed| {
            let ps = ParticleSystem::new(1, start.clone())?;
            Ok(simulate_continuous(ps, t, seed, &spec)?.samples.swap_remove(0))
        })
    })?;
    let n = finals.len() as f64;
    let mut table = Table::new(&["label", "x", "exact", "empirical"])
        .meta("t", t)
        .meta("truncation", law.truncation)
        .meta("error_bound", law.error_bound);
    let mut worst_margin = f64::INFINITY;
    for (i, &label) in law.labels.iter().enumerate() {
        let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
        for f in &finals {
            *counts.entry(f[i]).or_default() += 1;
        }
        let mut support: Vec<i64> = law.marginals[i].keys().copied().collect();
        support.extend(counts.keys().copied());
        support.sort_unstable();
        support.dedup();
        let mut tv = 0.0;
        let mut band = 0.0;
        for &x in &support {
            let p = law.marginals[i].get(&x).copied().unwrap_or(0.0);
            let q = counts.get(&x).copied().unwrap_or(0) as f64 / n;
            tv += 0.5 * (p - q).abs();
            band += 0.5 * 3.0 * (p * (1.0 - p) / n).sqrt();
            table.push([label.to_string(), x.to_string(), p.to_string(), q.to_string()]);
        }
        let bound = epsilon + band;
        ctx.checks.push(Check::at_most(&format!("tv_label{label}"), tv, bound));
        worst_margin = worst_margin.min(bound - tv);
    }
    ctx.info.insert("truncation".into(), json!(law.truncation));
    ctx.info.insert("worst_margin".into(), json!(worst_margin));
    ctx.save_table("transient.csv", table)?;
    Ok(())
}

/// Sanity hook used by [`ExperimentSummary`] readers: the reference kernel
/// of a one-point analysis.
pub fn reference_kernel(cfg: &ExperimentConfig) -> Option<KernelKind> {
    match cfg.analysis {
        Analysis::OnePoint { reference, .. } => Some(reference),
        _ => None,
    }
}
