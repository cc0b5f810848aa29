//! Grid files.
//!
//! Binary layout, little endian:
//!
//! | bytes | content |
//! |-------|---------|
//! | 8     | magic `b"LPPGRID1"` |
//! | 8     | `M` (u64) |
//! | 8     | `N` (u64) |
//! | 8     | seed (u64) |
//! | 4     | flags (u32): bit 0 passage times present, bit 1 point-to-line |
//! | 8 M N | weights (f64), row-major in `n` |
//! | 8 M N | passage times (f64), if flagged |

use super::lpp::{LppGeometry, LppGrid};
use crate::error::{Error, Result};
use std::io::{Read, Write};

pub const GRID_MAGIC: &[u8; 8] = b"LPPGRID1";
const HAS_PASSAGE: u32 = 1;
const POINT_TO_LINE: u32 = 2;

pub fn write_grid_binary<W: Write>(grid: &LppGrid, out: &mut W) -> std::io::Result<()> {
    out.write_all(GRID_MAGIC)?;
    out.write_all(&(grid.m as u64).to_le_bytes())?;
    out.write_all(&(grid.n as u64).to_le_bytes())?;
    out.write_all(&grid.seed.to_le_bytes())?;
    let mut flags = 0;
    if grid.passage.is_some() {
        flags |= HAS_PASSAGE;
    }
    if grid.geometry == Some(LppGeometry::PointToLine) {
        flags |= POINT_TO_LINE;
    }
    out.write_all(&flags.to_le_bytes())?;
    for w in &grid.weights {
        out.write_all(&w.to_le_bytes())?;
    }
    if let Some(g) = &grid.passage {
        for v in g {
            out.write_all(&v.to_le_bytes())?;
        }
    }
    Ok(())
}

pub fn read_grid_binary<R: Read>(input: &mut R) -> Result<LppGrid> {
    let bad = |e: std::io::Error| Error::Serialization(format!("grid file: {e}"));
    let mut magic = [0u8; 8];
    input.read_exact(&mut magic).map_err(bad)?;
    if &magic != GRID_MAGIC {
        return Err(Error::Serialization("not an LPP grid file".into()));
    }
    let mut u64s = [0u64; 3];
    for v in &mut u64s {
        let mut b = [0u8; 8];
        input.read_exact(&mut b).map_err(bad)?;
        *v = u64::from_le_bytes(b);
    }
    let [m, n, seed] = u64s;
    let mut b = [0u8; 4];
    input.read_exact(&mut b).map_err(bad)?;
    let flags = u32::from_le_bytes(b);
    let len = (m as usize)
        .checked_mul(n as usize)
        .ok_or_else(|| Error::Serialization("grid too large".into()))?;
    let mut read_block = || -> Result<Vec<f64>> {
        let mut raw = vec![0u8; len * 8];
        input.read_exact(&mut raw).map_err(bad)?;
        Ok(raw
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
            .collect())
    };
    let weights = read_block()?;
    let passage = if flags & HAS_PASSAGE != 0 {
        Some(read_block()?)
    } else {
        None
    };
    let mut grid = LppGrid::from_weights(m as usize, n as usize, seed, weights)?;
    grid.geometry = passage.as_ref().map(|_| {
        if flags & POINT_TO_LINE != 0 {
            LppGeometry::PointToLine
        } else {
            LppGeometry::PointToPoint
        }
    });
    grid.passage = passage;
    Ok(grid)
}

/// `m,n,omega,G` rows; `G` empty when not computed. Floats use the
/// shortest representation that reads back exactly.
pub fn write_grid_csv<W: Write>(grid: &LppGrid, out: &mut W) -> std::io::Result<()> {
    writeln!(out, "m,n,omega,G")?;
    for n in 1..=grid.n {
        for m in 1..=grid.m {
            let k = grid.index(m, n);
            match &grid.passage {
                Some(g) => writeln!(out, "{m},{n},{:?},{:?}", grid.weights[k], g[k])?,
                None => writeln!(out, "{m},{n},{:?},", grid.weights[k])?,
            }
        }
    }
    Ok(())
}
