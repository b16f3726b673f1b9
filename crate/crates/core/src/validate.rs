//! Validation harness: construction cross-checks, oracle equivalences and
//! symmetry identities over a deterministic parameter grid.

use serde::Serialize;

use crate::correlations::{
    concurrence_closed_form, concurrence_wootters, discord_parts, gmqd, gqd_1norm_bell,
    min_conditional_entropy_closed, report_with, Measure, ReportOptions, FAST_PATH_DEVIATION_TOL,
};
use crate::error::Result;
use crate::exec::{map_indexed, Execution};
use crate::model::{
    bell_diagonal_coeffs, bloch_decompose, boltzmann_elements, thermal_state_closed_form_with,
    thermal_state_exact, validate_constructions, Subsystem, VElement, BELL_TOL,
};
use crate::oracles::{gmqd_variational_with, gqd_1norm_variational_with, GridSpec, VariationalBudget};
use crate::params::ChainParams;

pub const DEFAULT_POINTS: usize = 200;

pub const TOL_CONSTRUCTION: f64 = 1e-12;
pub const TOL_CONCURRENCE: f64 = 1e-10;
pub const TOL_IDENTITY: f64 = 1e-9;
pub const TOL_GMQD_ORACLE: f64 = 1e-4;
pub const TOL_GQD1_ORACLE: f64 = 1e-3;
pub const TOL_GRID_DOUBLING: f64 = 1e-8;
pub const HOT_TEMPERATURE: f64 = 1e3;
pub const HOT_BOUND: f64 = 1e-3;

/// Van der Corput radical inverse of `i` in `base`.
fn radical_inverse(mut i: usize, base: usize) -> f64 {
    let mut inv = 1.0 / base as f64;
    let mut out = 0.0;
    while i > 0 {
        out += (i % base) as f64 * inv;
        i /= base;
        inv /= base as f64;
    }
    out
}

/// Deterministic low-discrepancy sample of J, J2 ∈ [-2, 2], Jm ∈ [0, 3],
/// H ∈ [-4, 4], T ∈ [0.05, 5]. Point 0 is (J, J2, Jm, H, T) = (0, 1, 0, 0, 1)
/// and every tenth point has J = 0.
pub fn validation_grid(n: usize) -> Vec<ChainParams> {
    (0..n)
        .map(|i| {
            if i == 0 {
                return ChainParams::new(0.0, 1.0, 0.0, 0.0, 1.0);
            }
            let u = [2, 3, 5, 7, 11].map(|b| radical_inverse(i, b));
            let j = if i % 10 == 0 { 0.0 } else { -2.0 + 4.0 * u[0] };
            ChainParams::new(j, -2.0 + 4.0 * u[1], 3.0 * u[2], -4.0 + 8.0 * u[3], 0.05 + 4.95 * u[4])
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    /// A tolerance was exceeded.
    Failure,
    /// A known discrepancy in a closed-form shortcut.
    Deviation,
    /// Expected consequence of an opt-in variant.
    Warning,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Finding {
    pub severity: Severity,
    pub check: &'static str,
    pub params: ChainParams,
    pub detail: String,
}

#[derive(Debug, Clone, Copy)]
pub struct ValidationOptions {
    pub points: usize,
    pub use_verbatim_v: bool,
    pub grid: GridSpec,
    pub budget: VariationalBudget,
    pub exec: Execution,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        Self {
            points: DEFAULT_POINTS,
            use_verbatim_v: false,
            grid: GridSpec::default(),
            budget: VariationalBudget::default(),
            exec: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ValidationSummary {
    pub points: usize,
    pub checks: usize,
    pub failures: Vec<Finding>,
    pub deviations: Vec<Finding>,
    pub warnings: Vec<Finding>,
}

impl ValidationSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct PointLog {
    params: ChainParams,
    checks: usize,
    findings: Vec<Finding>,
}

impl PointLog {
    fn new(params: ChainParams) -> Self {
        Self { params, checks: 0, findings: Vec::new() }
    }

    fn note(&mut self, severity: Severity, check: &'static str, detail: String) {
        self.findings.push(Finding { severity, check, params: self.params, detail });
    }

    /// Records a failure unless `ok`.
    fn expect(&mut self, check: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.note(Severity::Failure, check, detail());
        }
    }
}

fn check_point(p: ChainParams, opts: &ValidationOptions) -> Result<PointLog> {
    let mut log = PointLog::new(p);

    // Closed-form elements against the Hamiltonian trace-out.
    let cons = validate_constructions(&p)?;
    log.expect("construction_corrected", cons.corrected.agrees(TOL_CONSTRUCTION), || format!("{:?}", cons.corrected));
    log.expect("construction_uwy", cons.verbatim.max_uwy() <= TOL_CONSTRUCTION, || format!("{:?}", cons.verbatim));
    if p.j == 0.0 {
        log.expect("construction_verbatim_j0", cons.verbatim.agrees(TOL_CONSTRUCTION), || {
            format!("{:?}", cons.verbatim)
        });
    } else if !cons.verbatim.agrees(TOL_CONSTRUCTION) {
        let severity = if opts.use_verbatim_v { Severity::Warning } else { Severity::Deviation };
        log.note(
            severity,
            "v_element",
            format!("verbatim |11> weight off by {:.3e} (Z off by {:.3e})", cons.verbatim.dv, cons.verbatim.dz),
        );
    }
    if opts.use_verbatim_v {
        if let Err(e) = thermal_state_closed_form_with(&p, VElement::Verbatim) {
            log.note(Severity::Warning, "verbatim_positivity", e.to_string());
        }
    }

    let rho = thermal_state_exact(&p)?;
    let el = boltzmann_elements(&p)?;

    log.expect("swap_symmetry_state", rho.max_abs_diff(&rho.swapped()) <= TOL_CONSTRUCTION, || {
        format!("max |Δ| = {:e}", rho.max_abs_diff(&rho.swapped()))
    });
    let recon = (bloch_decompose(&rho).reconstruct() - rho.matrix()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    log.expect("bloch_reconstruction", recon <= TOL_CONSTRUCTION, || format!("max |Δ| = {recon:e}"));

    let cw = concurrence_wootters(&rho)?;
    let cc = concurrence_closed_form(&el);
    log.expect("concurrence_oracle", (cw - cc).abs() <= TOL_CONCURRENCE, || format!("wootters {cw} vs closed {cc}"));

    let first = discord_parts(&rho, Subsystem::First, &opts.grid, Execution::Sequential)?;
    let second = discord_parts(&rho, Subsystem::Second, &opts.grid, Execution::Sequential)?;
    let additivity = (first.mutual_information - first.classical_correlation - first.quantum_discord).abs();
    log.expect("additivity", additivity <= TOL_IDENTITY, || format!("|I - C - D| = {additivity:e}"));
    log.expect("discord_nonnegative", first.quantum_discord >= -TOL_IDENTITY, || {
        format!("D = {}", first.quantum_discord)
    });
    let swap = (first.quantum_discord - second.quantum_discord).abs();
    log.expect("measurement_side_swap", swap <= TOL_IDENTITY, || format!("|D_A - D_B| = {swap:e}"));

    let fast = min_conditional_entropy_closed(&el);
    let excess = fast.value - first.min_conditional_entropy;
    log.expect("fast_path_bound", excess >= -TOL_IDENTITY, || {
        format!("fast path {} below measured minimum {}", fast.value, first.min_conditional_entropy)
    });
    if excess > FAST_PATH_DEVIATION_TOL {
        log.note(
            Severity::Deviation,
            "fast_path_entropy",
            format!("shortcut exceeds measured minimum by {excess:.3e} (θ = {:.6})", fast.theta),
        );
    }

    let closed = gmqd(&rho);
    let var = gmqd_variational_with(&rho, &opts.budget, Execution::Sequential).value;
    log.expect("gmqd_oracle", (var - closed).abs() <= TOL_GMQD_ORACLE && var >= closed - 1e-6, || {
        format!("variational {var} vs closed {closed}")
    });

    // Field-free companion point: Bell-diagonal structure and J-sign symmetry.
    let p0 = p.with_field(0.0);
    let rho0 = thermal_state_exact(&p0)?;
    match bell_diagonal_coeffs(&rho0, BELL_TOL) {
        Ok(c) => {
            log.expect("bell_c1_eq_c2", (c.c1 - c.c2).abs() <= TOL_CONSTRUCTION, || format!("{c:?}"));
            let median = gqd_1norm_bell(&c);
            let var = gqd_1norm_variational_with(&rho0, &opts.budget, Execution::Sequential).value;
            log.expect("gqd1_oracle", (var - median).abs() <= TOL_GQD1_ORACLE, || {
                format!("variational {var} vs median {median}")
            });
        }
        Err(e) => log.expect("bell_structure", false, || e.to_string()),
    }
    let mirrored = p0.with_j(-p0.j);
    let rho_m = thermal_state_exact(&mirrored)?;
    log.expect("j_sign_state", rho0.max_abs_diff(&rho_m) <= TOL_CONSTRUCTION, || {
        format!("max |Δ| = {:e}", rho0.max_abs_diff(&rho_m))
    });
    let ropts = ReportOptions { grid: opts.grid, ..ReportOptions::default() };
    let (ra, rb) = (report_with(&p0, &ropts)?, report_with(&mirrored, &ropts)?);
    for m in Measure::ALL {
        let (a, b) = (ra.value(m).unwrap_or(0.0), rb.value(m).unwrap_or(0.0));
        log.expect("j_sign_measures", (a - b).abs() <= TOL_IDENTITY, || format!("{m}: {a} vs {b}"));
    }

    let hot = report_with(&p.with_temperature(HOT_TEMPERATURE), &ropts)?;
    if p.j.abs().max(p.j2.abs()).max(p.jm.abs()).max(p.h.abs()) <= 1.0 {
        for m in Measure::ALL {
            if let Some(v) = hot.value(m) {
                log.expect("hot_limit", v < HOT_BOUND, || format!("{m} = {v:e} at T = {HOT_TEMPERATURE}"));
            }
        }
    }

    Ok(log)
}

/// Grid-doubling stability of the measured discord on every tenth point.
fn check_refinement(p: ChainParams, opts: &ValidationOptions) -> Result<PointLog> {
    let mut log = PointLog::new(p);
    let rho = thermal_state_exact(&p)?;
    let a = discord_parts(&rho, Subsystem::First, &opts.grid, Execution::Sequential)?.min_conditional_entropy;
    let b = discord_parts(&rho, Subsystem::First, &opts.grid.doubled(), Execution::Sequential)?.min_conditional_entropy;
    log.expect("grid_doubling", (a - b).abs() <= TOL_GRID_DOUBLING, || format!("{a} vs {b}"));
    log.expect("monotone_refinement", b <= a + 1e-12, || format!("doubled grid raised minimum: {a} -> {b}"));
    Ok(log)
}

pub fn run_validate(opts: &ValidationOptions) -> ValidationSummary {
    let grid = validation_grid(opts.points);
    let logs = map_indexed(opts.exec, grid.len(), |i| {
        let mut logs = vec![check_point(grid[i], opts)];
        if i % 10 == 0 {
            logs.push(check_refinement(grid[i], opts));
        }
        logs
    });

    let mut summary = ValidationSummary { points: grid.len(), ..Default::default() };
    for (i, log) in logs.into_iter().flatten().enumerate() {
        match log {
            Ok(log) => {
                summary.checks += log.checks;
                for f in log.findings {
                    match f.severity {
                        Severity::Failure => summary.failures.push(f),
                        Severity::Deviation => summary.deviations.push(f),
                        Severity::Warning => summary.warnings.push(f),
                    }
                }
            }
            Err(e) => summary.failures.push(Finding {
                severity: Severity::Failure,
                check: "evaluation",
                params: grid[i.min(grid.len() - 1)],
                detail: e.to_string(),
            }),
        }
    }
    summary
}
