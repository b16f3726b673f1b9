use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::concurrence::concurrence_wootters;
use super::discord::{discord_parts, min_conditional_entropy_closed};
use super::entropy::mutual_information;
use super::geometric::{gmqd, gqd_1norm_bell};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::model::{
    bell_diagonal_coeffs, boltzmann_elements_with, thermal_state_closed_form_with, thermal_state_exact,
    BellCoeffs, Density4, Subsystem, VElement, BELL_TOL,
};
use crate::oracles::GridSpec;
use crate::params::ChainParams;

/// Fast-path excess over the measured minimum that is reported.
pub const FAST_PATH_DEVIATION_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Concurrence,
    Qd,
    Gmqd,
    Gqd1,
}

impl Measure {
    pub const ALL: [Measure; 4] = [Measure::Concurrence, Measure::Qd, Measure::Gmqd, Measure::Gqd1];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Concurrence => "concurrence",
            Measure::Qd => "qd",
            Measure::Gmqd => "gmqd",
            Measure::Gqd1 => "gqd1",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Measure::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown measure `{s}` (expected concurrence, qd, gmqd or gqd1)"))
    }
}

/// Which measures to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeasureSet([bool; 4]);

impl MeasureSet {
    pub fn all() -> Self {
        Self([true; 4])
    }

    pub fn only(measures: &[Measure]) -> Self {
        let mut set = [false; 4];
        for m in measures {
            set[*m as usize] = true;
        }
        Self(set)
    }

    pub fn contains(&self, m: Measure) -> bool {
        self.0[m as usize]
    }
}

impl Default for MeasureSet {
    fn default() -> Self {
        Self::all()
    }
}

/// How the thermal state is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StateSource {
    /// Hamiltonian trace-out.
    #[default]
    Exact,
    /// Closed-form X-state.
    ClosedForm(VElement),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, PartialOrd, Ord, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Flag {
    /// Requested T = 0 was replaced by the temperature floor.
    TempFloor,
    /// The state was assembled with the verbatim |11> weight.
    VerbatimV,
    /// gqd1 is undefined because the state is not Bell-diagonal.
    NotBellDiagonal,
    /// The binary-entropy shortcut exceeds the measured minimum.
    FastPathDeviation,
}

impl Flag {
    pub fn name(self) -> &'static str {
        match self {
            Flag::TempFloor => "temp_floor",
            Flag::VerbatimV => "verbatim_v",
            Flag::NotBellDiagonal => "not_bell_diagonal",
            Flag::FastPathDeviation => "fast_path_deviation",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ReportOptions {
    pub grid: GridSpec,
    pub source: StateSource,
    pub bell_tol: f64,
    pub measures: MeasureSet,
    /// Parallelism inside the measurement search of a single point.
    pub exec: Execution,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            grid: GridSpec::default(),
            source: StateSource::Exact,
            bell_tol: BELL_TOL,
            measures: MeasureSet::all(),
            exec: Execution::Sequential,
        }
    }
}

/// Every measure at one parameter point. Measures that were not requested
/// are `None`; `gqd_1norm` is also `None` off the Bell-diagonal family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationReport {
    pub params: ChainParams,
    pub concurrence: Option<f64>,
    pub quantum_discord: Option<f64>,
    pub classical_correlation: Option<f64>,
    pub mutual_information: Option<f64>,
    pub gmqd: Option<f64>,
    pub gqd_1norm: Option<f64>,
    /// θ of the binary-entropy shortcut.
    pub theta: f64,
    pub fast_conditional_entropy: f64,
    pub min_conditional_entropy: Option<f64>,
    pub bell_coeffs: Option<BellCoeffs>,
    pub flags: Vec<Flag>,
}

impl CorrelationReport {
    pub fn value(&self, m: Measure) -> Option<f64> {
        match m {
            Measure::Concurrence => self.concurrence,
            Measure::Qd => self.quantum_discord,
            Measure::Gmqd => self.gmqd,
            Measure::Gqd1 => self.gqd_1norm,
        }
    }

    pub fn add_flag(&mut self, flag: Flag) {
        if !self.flags.contains(&flag) {
            self.flags.push(flag);
            self.flags.sort();
        }
    }
}

/// Maps tiny negative values of nonnegative quantities, left over from
/// cancellation between entropies, to zero.
fn clamp_roundoff(x: f64) -> f64 {
    if x < 0.0 && x > -ROUNDOFF {
        0.0
    } else {
        x
    }
}

const ROUNDOFF: f64 = 1e-12;

pub fn build_state(params: &ChainParams, source: StateSource) -> Result<Density4> {
    match source {
        StateSource::Exact => thermal_state_exact(params),
        StateSource::ClosedForm(v) => thermal_state_closed_form_with(params, v),
    }
}

pub fn full_report(params: &ChainParams) -> Result<CorrelationReport> {
    report_with(params, &ReportOptions::default())
}

pub fn report_with(params: &ChainParams, opts: &ReportOptions) -> Result<CorrelationReport> {
    let rho = build_state(params, opts.source)?;
    let v_element = match opts.source {
        StateSource::ClosedForm(v) => v,
        StateSource::Exact => VElement::Corrected,
    };
    let el = boltzmann_elements_with(params, v_element)?;
    let fast = min_conditional_entropy_closed(&el);
    let want = |m| opts.measures.contains(m);

    let mut flags = Vec::new();
    if v_element == VElement::Verbatim {
        flags.push(Flag::VerbatimV);
    }

    let concurrence = want(Measure::Concurrence).then(|| concurrence_wootters(&rho)).transpose()?;

    let (mut qd, mut cc, mut min_ce) = (None, None, None);
    let mi;
    if want(Measure::Qd) {
        let parts = discord_parts(&rho, Subsystem::First, &opts.grid, opts.exec)?;
        qd = Some(clamp_roundoff(parts.quantum_discord));
        cc = Some(clamp_roundoff(parts.classical_correlation));
        mi = Some(clamp_roundoff(parts.mutual_information));
        min_ce = Some(parts.min_conditional_entropy);
        if fast.value - parts.min_conditional_entropy > FAST_PATH_DEVIATION_TOL {
            flags.push(Flag::FastPathDeviation);
        }
    } else {
        mi = Some(clamp_roundoff(mutual_information(&rho)?));
    }

    let gm = want(Measure::Gmqd).then(|| gmqd(&rho));

    let bell = bell_diagonal_coeffs(&rho, opts.bell_tol).ok();
    let gqd1 = match (want(Measure::Gqd1), bell) {
        (true, Some(c)) => Some(gqd_1norm_bell(&c)),
        (true, None) => {
            flags.push(Flag::NotBellDiagonal);
            None
        }
        (false, _) => None,
    };
    flags.sort();

    Ok(CorrelationReport {
        params: *params,
        concurrence,
        quantum_discord: qd,
        classical_correlation: cc,
        mutual_information: mi,
        gmqd: gm,
        gqd_1norm: gqd1,
        theta: fast.theta,
        fast_conditional_entropy: fast.value,
        min_conditional_entropy: min_ce,
        bell_coeffs: bell,
        flags,
    })
}

/// One measure at one point; errors when gqd1 is asked of a state outside
/// the Bell-diagonal family.
pub fn evaluate_measure(params: &ChainParams, m: Measure, opts: &ReportOptions) -> Result<f64> {
    let opts = ReportOptions { measures: MeasureSet::only(&[m]), ..*opts };
    let report = report_with(params, &opts)?;
    match report.value(m) {
        Some(v) => Ok(v),
        None => {
            let rho = build_state(params, opts.source)?;
            Err(bell_diagonal_coeffs(&rho, opts.bell_tol).err().unwrap_or(Error::NotBellDiagonal(f64::NAN)))
        }
    }
}
