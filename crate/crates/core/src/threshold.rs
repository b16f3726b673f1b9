//! Location of the boundary where a measure falls to (or rises from) the
//! dead level ε_dead along T or H.

use std::str::FromStr;

use serde::Serialize;

use crate::correlations::{evaluate_measure, Measure, ReportOptions};
use crate::error::{Error, Result};
use crate::exec::map_indexed;
use crate::params::ChainParams;

pub const DEFAULT_EPS_DEAD: f64 = 1e-9;
pub const DEFAULT_TOLERANCE: f64 = 1e-4;
/// Coarse samples across the bracket before bisecting.
pub const SCAN_SAMPLES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ScanParam {
    Temperature,
    Field,
}

impl FromStr for ScanParam {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "T" | "t" | "temp" | "temperature" => Ok(ScanParam::Temperature),
            "H" | "h" | "field" => Ok(ScanParam::Field),
            other => Err(format!("unknown scan parameter `{other}` (expected T or H)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdQuery {
    pub scan: ScanParam,
    pub lo: f64,
    pub hi: f64,
    pub measure: Measure,
    pub eps_dead: f64,
    pub tol: f64,
}

impl ThresholdQuery {
    pub fn new(scan: ScanParam, lo: f64, hi: f64, measure: Measure) -> Self {
        Self { scan, lo, hi, measure, eps_dead: DEFAULT_EPS_DEAD, tol: DEFAULT_TOLERANCE }
    }

    fn at(&self, fixed: &ChainParams, x: f64) -> ChainParams {
        match self.scan {
            ScanParam::Temperature => fixed.with_temperature(x),
            ScanParam::Field => fixed.with_field(x),
        }
    }
}

/// Scans the bracket on a coarse grid, then bisects the first interval on
/// which the measure crosses ε_dead.
///
/// Returns [`Error::NoThreshold`] when the measure stays above ε_dead on
/// every sample and [`Error::NoBracket`] when it stays dead throughout.
pub fn find_threshold(query: &ThresholdQuery, fixed: &ChainParams, opts: &ReportOptions) -> Result<f64> {
    if !query.lo.is_finite() || !query.hi.is_finite() || query.lo >= query.hi {
        return Err(Error::NoBracket(format!("empty bracket [{}, {}]", query.lo, query.hi)));
    }
    if query.tol.is_nan() || query.tol <= 0.0 {
        return Err(Error::NoBracket(format!("tolerance must be positive, got {}", query.tol)));
    }
    let alive = |x: f64| -> Result<bool> {
        Ok(evaluate_measure(&query.at(fixed, x), query.measure, opts)? > query.eps_dead)
    };
    let xs: Vec<f64> = (0..=SCAN_SAMPLES)
        .map(|i| query.lo + (query.hi - query.lo) * i as f64 / SCAN_SAMPLES as f64)
        .collect();
    let states = map_indexed(opts.exec, xs.len(), |i| alive(xs[i]))
        .into_iter()
        .collect::<Result<Vec<bool>>>()?;

    let Some(k) = states.windows(2).position(|w| w[0] != w[1]) else {
        return if states[0] {
            Err(Error::NoThreshold)
        } else {
            Err(Error::NoBracket(format!(
                "{} stays at or below {:e} over [{}, {}]",
                query.measure, query.eps_dead, query.lo, query.hi
            )))
        };
    };

    let (mut a, mut b) = (xs[k], xs[k + 1]);
    let alive_at_a = states[k];
    while b - a > query.tol {
        let mid = 0.5 * (a + b);
        if alive(mid)? == alive_at_a {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}
