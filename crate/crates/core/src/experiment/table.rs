//! CSV tables with `#` metadata lines.

use super::config::Grid;
use crate::error::{Error, Result};
use crate::fredholm::{one_point_with, NystromParams};
use crate::kernels::{KernelKind, KernelPoint};
use crate::scaling::rost_density;
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::Path;

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            meta: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta(mut self, key: &str, value: impl ToString) -> Self {
        self.meta.push((key.to_string(), value.to_string()));
        self
    }

    pub fn push_meta(&mut self, key: &str, value: impl ToString) {
        self.meta.push((key.to_string(), value.to_string()));
    }

    pub fn push<I: IntoIterator<Item = T>, T: ToString>(&mut self, row: I) {
        self.rows.push(row.into_iter().map(|v| v.to_string()).collect());
    }

    pub fn write<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        for (k, v) in &self.meta {
            writeln!(out, "# {k}: {v}")?;
        }
        writeln!(out, "{}", self.columns.join(","))?;
        for row in &self.rows {
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii")
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv()).map_err(|e| Error::io(path, e))
    }

    /// Numeric value of column `name` in every row.
    pub fn column(&self, name: &str) -> Result<Vec<f64>> {
        let j = self
            .columns
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| Error::InvalidArgument(format!("no column {name}")))?;
        self.rows
            .iter()
            .map(|r| {
                r[j].parse::<f64>()
                    .map_err(|e| Error::Serialization(format!("column {name}: {e}")))
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TableKind {
    F2 {
        grid: Grid,
        nystrom: Option<NystromParams>,
    },
    F1scaled {
        grid: Grid,
        nystrom: Option<NystromParams>,
    },
    /// `K(u, s; u', s')` over `s`; `s' = s` unless `s_prime` is given.
    KernelSlice {
        kernel: KernelKind,
        u: f64,
        u_prime: f64,
        grid: Grid,
        s_prime: Option<f64>,
    },
    Rost {
        grid: Grid,
    },
}

/// Rows between which the error estimate of a CDF table is sampled.
pub const ERROR_SAMPLE_STRIDE: usize = 10;

pub fn emit_table(kind: &TableKind) -> Result<Table> {
    match *kind {
        TableKind::F2 { grid, nystrom } => cdf_table(KernelKind::Airy2, grid, nystrom),
        TableKind::F1scaled { grid, nystrom } => cdf_table(KernelKind::Airy1, grid, nystrom),
        TableKind::KernelSlice {
            kernel,
            u,
            u_prime,
            grid,
            s_prime,
        } => {
            let mut t = Table::new(&["s", "s_prime", "k"])
                .meta("table", "kernel-slice")
                .meta("kernel", kernel.name())
                .meta("u", u)
                .meta("u_prime", u_prime);
            for s in grid.points()? {
                let sp = s_prime.unwrap_or(s);
                let v = kernel.eval(KernelPoint::new(u, s, u_prime, sp))?;
                t.push([s, sp, v]);
            }
            Ok(t)
        }
        TableKind::Rost { grid } => {
            let mut t = Table::new(&["xi", "density"]).meta("table", "rost");
            for xi in grid.points()? {
                t.push([xi, rost_density(xi)]);
            }
            Ok(t)
        }
    }
}

/// One-point CDF on `grid`. The error estimate is the largest change on
/// every `ERROR_SAMPLE_STRIDE`-th row when `L` and the node count double.
pub fn cdf_table(kernel: KernelKind, grid: Grid, nystrom: Option<NystromParams>) -> Result<Table> {
    let params = nystrom.unwrap_or_else(|| NystromParams::default_for(kernel));
    let finer = NystromParams {
        length: 2.0 * params.length,
        nodes: 2 * params.nodes,
        theta: params.theta,
    };
    let s = grid.points()?;
    let f = s
        .iter()
        .map(|&x| one_point_with(kernel, x, params))
        .collect::<Result<Vec<_>>>()?;
    let mut err: f64 = 0.0;
    for i in (0..s.len()).step_by(ERROR_SAMPLE_STRIDE) {
        err = err.max((one_point_with(kernel, s[i], finer)? - f[i]).abs());
    }
    let (name, column) = match kernel {
        KernelKind::Airy2 => ("f2", "F2"),
        KernelKind::Airy1 => ("f1scaled", "F1_2s"),
    };
    let mut t = Table::new(&["s", column])
        .meta("table", name)
        .meta("kernel", kernel.name())
        .meta("L", params.length)
        .meta("n_nodes", params.nodes)
        .meta("theta", params.theta)
        .meta("error_estimate", format!("{err:.3e}"));
    for (x, v) in s.iter().zip(&f) {
        t.push([*x, *v]);
    }
    Ok(t)
}
