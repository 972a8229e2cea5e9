//! Grid sweeps over the `(r, a, b)` region.

use std::io::Write;

use niep_core::oracle::verify_spectrum;
use niep_core::realize::{realize_region, region_check, RegionPoint};
use niep_core::structured::is_permutative;
use rayon::prelude::*;

use crate::CliError;

/// Oracle tolerance for region matrices (spectral radius 1).
pub const SWEEP_TOL: f64 = 1e-8;

pub const CSV_HEADER: [&str; 5] = ["r", "a", "b", "in_region", "verified"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl Axis {
    /// `lo + (hi − lo)·i/(steps − 1)`; a single step sits at `lo`.
    pub fn value(&self, i: usize) -> f64 {
        if self.steps == 1 {
            self.lo
        } else {
            self.lo + (self.hi - self.lo) * i as f64 / (self.steps - 1) as f64
        }
    }

    fn parse(text: &str) -> Result<Axis, CliError> {
        let parts: Vec<&str> = text.split(':').collect();
        let [lo, hi, steps] = parts[..] else {
            return Err(CliError::Input(format!(
                "axis range `{text}` is not lo:hi:steps"
            )));
        };
        let num = |s: &str| {
            s.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| CliError::Input(format!("`{s}` is not a finite number")))
        };
        let steps: usize = steps
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("`{steps}` is not a step count")))?;
        if steps == 0 {
            return Err(CliError::Input("step counts must be positive".into()));
        }
        Ok(Axis {
            lo: num(lo)?,
            hi: num(hi)?,
            steps,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub r: Axis,
    pub a: Axis,
    pub b: Axis,
}

impl Default for Grid {
    /// 21³ points over `[0, 1] × [−1, 1] × [−1, 1]`.
    fn default() -> Self {
        let axis = |lo, hi| Axis { lo, hi, steps: 21 };
        Grid {
            r: axis(0.0, 1.0),
            a: axis(-1.0, 1.0),
            b: axis(-1.0, 1.0),
        }
    }
}

impl Grid {
    /// Parses `r=lo:hi:steps,a=lo:hi:steps,b=lo:hi:steps`. Omitted axes keep
    /// their defaults.
    pub fn parse(text: &str) -> Result<Grid, CliError> {
        let mut grid = Grid::default();
        for item in text.split(',').filter(|s| !s.trim().is_empty()) {
            let (name, range) = item
                .split_once('=')
                .ok_or_else(|| CliError::Input(format!("grid item `{item}` lacks `=`")))?;
            let axis = Axis::parse(range)?;
            match name.trim() {
                "r" => grid.r = axis,
                "a" => grid.a = axis,
                "b" => grid.b = axis,
                other => return Err(CliError::Input(format!("unknown grid axis `{other}`"))),
            }
        }
        let r_ok = |x: f64| (0.0..=1.0).contains(&x);
        if !(r_ok(grid.r.lo) && r_ok(grid.r.hi)) {
            return Err(CliError::Input("the r range must lie in [0, 1]".into()));
        }
        Ok(grid)
    }

    pub fn len(&self) -> usize {
        self.r.steps * self.a.steps * self.b.steps
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Points in grid order: `r` outermost, `b` innermost.
    pub fn points(&self) -> Vec<(f64, f64, f64)> {
        let mut pts = Vec::with_capacity(self.len());
        for i in 0..self.r.steps {
            for j in 0..self.a.steps {
                for k in 0..self.b.steps {
                    pts.push((self.r.value(i), self.a.value(j), self.b.value(k)));
                }
            }
        }
        pts
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub r: f64,
    pub a: f64,
    pub b: f64,
    pub in_region: bool,
    pub verified: bool,
}

impl SweepRow {
    /// An in-region point whose matrix failed verification.
    pub fn is_failure(&self) -> bool {
        self.in_region && !self.verified
    }
}

/// Evaluates one point. `verified` requires a nonnegative permutative matrix
/// whose oracle spectrum matches `{1, r, a ± ib}` within [`SWEEP_TOL`].
pub fn evaluate(r: f64, a: f64, b: f64) -> Result<SweepRow, CliError> {
    let p = RegionPoint::new(r, a, b)?;
    let in_region = region_check(&p);
    let verified = in_region
        && match realize_region(&p) {
            Ok(m) => {
                m.min_entry() >= 0.0
                    && is_permutative(&m).is_some()
                    && verify_spectrum(&m, &p.target_spectrum(), SWEEP_TOL)
                        .map(|rep| rep.matched)
                        .unwrap_or(false)
            }
            Err(e) => {
                log::error!("in-region point ({r}, {a}, {b}) not realized: {e}");
                false
            }
        };
    if in_region && !verified {
        log::error!("verification failed at ({r}, {a}, {b})");
    }
    Ok(SweepRow {
        r,
        a,
        b,
        in_region,
        verified,
    })
}

/// Evaluates every grid point in parallel; rows come back in grid order.
pub fn sweep(grid: &Grid) -> Result<Vec<SweepRow>, CliError> {
    let pts = grid.points();
    log::info!("sweeping {} grid points", pts.len());
    pts.par_iter()
        .map(|&(r, a, b)| evaluate(r, a, b))
        .collect()
}

/// Floats with 17 significant digits.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    let flag = |b: bool| if b { "1" } else { "0" };
    for row in rows {
        w.write_record([
            fmt_float(row.r),
            fmt_float(row.a),
            fmt_float(row.b),
            flag(row.in_region).to_string(),
            flag(row.verified).to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
