//! Rectangular parameter grids evaluated point by point.
//!
//! Points are enumerated in lexicographic order with T varying slowest and
//! Jm fastest. Chunks of points are evaluated in parallel and handed to the
//! sink strictly in grid order.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};

use crate::correlations::{report_with, CorrelationReport, Flag, MeasureSet, ReportOptions, StateSource};
use crate::error::{Error, Result};
use crate::exec::{map_indexed, Execution};
use crate::oracles::GridSpec;
use crate::params::ChainParams;

pub const DEFAULT_GRID_CAP: u64 = 10_000_000;
pub const DEFAULT_TEMP_FLOOR: f64 = 1e-3;
/// Points evaluated between two ordered flushes.
pub const CHUNK_SIZE: usize = 256;

/// Either a fixed value or `steps` evenly spaced values over [start, stop].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamRange {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl ParamRange {
    pub fn fixed(value: f64) -> Self {
        Self { start: value, stop: value, steps: 1 }
    }

    pub fn new(start: f64, stop: f64, steps: usize) -> Result<Self> {
        let r = Self { start, stop, steps };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.start.is_finite() || !self.stop.is_finite() {
            return Err(Error::InvalidRange(format!("non-finite bound in {self}")));
        }
        if self.steps == 0 {
            return Err(Error::InvalidRange(format!("steps must be at least 1 in {self}")));
        }
        if self.start > self.stop {
            return Err(Error::InvalidRange(format!("start exceeds stop in {self}")));
        }
        Ok(())
    }

    pub fn value(&self, i: usize) -> f64 {
        if self.steps == 1 {
            self.start
        } else {
            self.start + (self.stop - self.start) * i as f64 / (self.steps - 1) as f64
        }
    }
}

impl fmt::Display for ParamRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps == 1 && self.start == self.stop {
            write!(f, "{}", self.start)
        } else {
            write!(f, "{}:{}:{}", self.start, self.stop, self.steps)
        }
    }
}

impl FromStr for ParamRange {
    type Err = Error;

    /// `VALUE` or `START:STOP:STEPS`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |what: &str| Error::InvalidRange(format!("`{s}`: {what}"));
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |p: &str| p.trim().parse::<f64>().map_err(|_| bad("not a number"));
        let range = match parts.as_slice() {
            [v] => Self::fixed(num(v)?),
            [a, b, n] => Self {
                start: num(a)?,
                stop: num(b)?,
                steps: n.trim().parse().map_err(|_| bad("steps must be a positive integer"))?,
            },
            _ => return Err(bad("expected VALUE or START:STOP:STEPS")),
        };
        range.validate()?;
        Ok(range)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SweepSpec {
    pub t: ParamRange,
    pub h: ParamRange,
    pub j: ParamRange,
    pub j2: ParamRange,
    pub jm: ParamRange,
    pub measures: MeasureSet,
    /// Substituted for any requested T <= 0.
    pub temp_floor: f64,
    pub grid_cap: u64,
    pub source: StateSource,
    pub grid: GridSpec,
}

impl SweepSpec {
    pub fn single(params: ChainParams) -> Self {
        Self {
            t: ParamRange::fixed(params.t),
            h: ParamRange::fixed(params.h),
            j: ParamRange::fixed(params.j),
            j2: ParamRange::fixed(params.j2),
            jm: ParamRange::fixed(params.jm),
            measures: MeasureSet::all(),
            temp_floor: DEFAULT_TEMP_FLOOR,
            grid_cap: DEFAULT_GRID_CAP,
            source: StateSource::Exact,
            grid: GridSpec::default(),
        }
    }

    fn axes(&self) -> [&ParamRange; 5] {
        [&self.t, &self.h, &self.j, &self.j2, &self.jm]
    }

    pub fn len(&self) -> u128 {
        self.axes().iter().map(|r| r.steps as u128).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn validate(&self) -> Result<()> {
        for r in self.axes() {
            r.validate()?;
        }
        if self.temp_floor.is_nan() || self.temp_floor <= 0.0 {
            return Err(Error::TemperatureTooLow(self.temp_floor));
        }
        self.grid.validate()?;
        let points = self.len();
        if points > self.grid_cap as u128 {
            return Err(Error::GridTooLarge { points, cap: self.grid_cap });
        }
        Ok(())
    }

    /// Parameters of grid point `index` and whether the temperature floor
    /// was applied.
    pub fn point(&self, index: usize) -> (ChainParams, bool) {
        let mut rest = index;
        let mut vals = [0.0; 5];
        for (k, r) in self.axes().iter().enumerate().rev() {
            vals[k] = r.value(rest % r.steps);
            rest /= r.steps;
        }
        let [t, h, j, j2, jm] = vals;
        let floored = t <= 0.0;
        let t = if floored { self.temp_floor } else { t };
        (ChainParams { j, j2, jm, h, t }, floored)
    }

    pub fn report_options(&self) -> ReportOptions {
        ReportOptions {
            grid: self.grid,
            source: self.source,
            measures: self.measures,
            ..ReportOptions::default()
        }
    }

    pub fn evaluate(&self, index: usize) -> Result<CorrelationReport> {
        let (params, floored) = self.point(index);
        let mut report = report_with(&params, &self.report_options())?;
        if floored {
            report.add_flag(Flag::TempFloor);
        }
        Ok(report)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepOutcome {
    pub rows: u64,
    pub cancelled: bool,
}

/// Evaluates every grid point and passes the reports to `emit` in grid
/// order. When `cancel` becomes true the already-completed prefix has been
/// emitted and the sweep stops early.
pub fn run_sweep<F>(spec: &SweepSpec, exec: Execution, cancel: Option<&AtomicBool>, mut emit: F) -> Result<SweepOutcome>
where
    F: FnMut(&CorrelationReport) -> std::io::Result<()>,
{
    spec.validate()?;
    let total = spec.len() as usize;
    let mut rows = 0u64;
    let mut start = 0usize;
    while start < total {
        if cancel.is_some_and(|c| c.load(Ordering::SeqCst)) {
            return Ok(SweepOutcome { rows, cancelled: true });
        }
        let len = CHUNK_SIZE.min(total - start);
        let chunk = map_indexed(exec, len, |k| spec.evaluate(start + k));
        for report in chunk {
            emit(&report?)?;
            rows += 1;
        }
        start += len;
    }
    Ok(SweepOutcome { rows, cancelled: false })
}
