//! Reference values computed with the brute-force oracles and frozen here.

use approx::assert_abs_diff_eq;
use diamond_core::correlations::{full_report, Flag};
use diamond_core::oracles::{gmqd_variational, gqd_1norm_variational, minimize_conditional_entropy, GridSpec, VariationalBudget};
use diamond_core::model::thermal_state_exact;
use diamond_core::sweep::{run_sweep, ParamRange, SweepSpec};
use diamond_core::threshold::{find_threshold, ScanParam, ThresholdQuery};
use diamond_core::{ChainParams, Error, Execution, Measure, ReportOptions};

const UNIT: ChainParams = ChainParams { j: 1.0, j2: 1.0, jm: 0.0, h: 0.0, t: 0.5 };

#[test]
fn unit_couplings_at_half_temperature() {
    let r = full_report(&UNIT).unwrap();
    assert_abs_diff_eq!(r.concurrence.unwrap(), 0.123703844609, epsilon = 1e-11);
    assert_abs_diff_eq!(r.quantum_discord.unwrap(), 0.179588237441, epsilon = 1e-11);
    assert_abs_diff_eq!(r.classical_correlation.unwrap(), 0.177671733261, epsilon = 1e-11);
    assert_abs_diff_eq!(r.mutual_information.unwrap(), 0.357259970702, epsilon = 1e-11);
    assert_abs_diff_eq!(r.gmqd.unwrap(), 0.0780174352385, epsilon = 1e-11);
    assert_abs_diff_eq!(r.gqd_1norm.unwrap(), 0.485813533262, epsilon = 1e-11);
}

#[test]
fn frozen_values_agree_with_oracles() {
    let rho = thermal_state_exact(&UNIT).unwrap();
    let budget = VariationalBudget::default();
    assert_abs_diff_eq!(gmqd_variational(&rho, &budget).value, 0.0780174352385, epsilon = 1e-6);
    assert_abs_diff_eq!(gqd_1norm_variational(&rho, &budget).value, 0.485813533262, epsilon = 1e-6);
    let (s_min, _) = minimize_conditional_entropy(&rho, &GridSpec::default());
    let r = full_report(&UNIT).unwrap();
    assert_abs_diff_eq!(r.min_conditional_entropy.unwrap(), s_min, epsilon = 1e-12);
}

#[test]
fn ground_state_dip_and_saturation() {
    let dip = full_report(&UNIT.with_temperature(1e-3)).unwrap();
    assert_abs_diff_eq!(dip.concurrence.unwrap(), 1.0 / 3.0, epsilon = 1e-9);
    assert_abs_diff_eq!(dip.gqd_1norm.unwrap(), 2.0 / 3.0, epsilon = 1e-9);
    let above = full_report(&UNIT.with_temperature(1e-3).with_field(2.5)).unwrap();
    assert!(above.concurrence.unwrap() < 1e-100);
    assert!(above.flags.contains(&Flag::NotBellDiagonal));
    assert!(above.gqd_1norm.is_none());
}

#[test]
fn decoupled_heisenberg_pair_is_classical() {
    let free = full_report(&ChainParams { j2: 0.0, ..UNIT }).unwrap();
    for m in Measure::ALL {
        assert_eq!(free.value(m), Some(0.0), "{m}");
    }
}

#[test]
fn sweep_rows_follow_grid_order_and_match_points() {
    let mut spec = SweepSpec::single(UNIT);
    spec.t = ParamRange::new(0.2, 1.0, 3).unwrap();
    spec.j = ParamRange::new(-1.0, 1.0, 2).unwrap();
    spec.h = ParamRange::new(0.0, 0.5, 2).unwrap();
    let mut seq = Vec::new();
    run_sweep(&spec, Execution::Sequential, None, |r| {
        seq.push(r.clone());
        Ok(())
    })
    .unwrap();
    let mut par = Vec::new();
    run_sweep(&spec, Execution::default(), None, |r| {
        par.push(r.clone());
        Ok(())
    })
    .unwrap();
    assert_eq!(seq.len(), 12);
    assert_eq!(seq, par);
    for (i, r) in seq.iter().enumerate() {
        assert_eq!(*r, full_report(&spec.point(i).0).unwrap());
    }
    let order: Vec<_> = seq.iter().map(|r| (r.params.t, r.params.h, r.params.j)).collect();
    let mut sorted = order.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    assert_eq!(order, sorted);
}

#[test]
fn zero_temperature_is_floored_in_sweeps() {
    let mut spec = SweepSpec::single(UNIT);
    spec.t = ParamRange::new(0.0, 0.5, 2).unwrap();
    let mut rows = Vec::new();
    run_sweep(&spec, Execution::Sequential, None, |r| {
        rows.push(r.clone());
        Ok(())
    })
    .unwrap();
    assert_eq!(rows[0].params.t, spec.temp_floor);
    assert!(rows[0].flags.contains(&Flag::TempFloor));
    assert!(!rows[1].flags.contains(&Flag::TempFloor));
}

#[test]
fn concurrence_death_temperature_is_tolerance_stable() {
    let q = ThresholdQuery::new(ScanParam::Temperature, 0.1, 5.0, Measure::Concurrence);
    let opts = ReportOptions::default();
    let a = find_threshold(&q, &UNIT, &opts).unwrap();
    let b = find_threshold(&ThresholdQuery { tol: q.tol / 2.0, ..q }, &UNIT, &opts).unwrap();
    assert!((a - b).abs() <= q.tol);
    assert!(a > 0.6 && a < 0.7, "{a}");
}

#[test]
fn discord_has_no_temperature_threshold() {
    let q = ThresholdQuery::new(ScanParam::Temperature, 0.1, 10.0, Measure::Qd);
    assert_eq!(find_threshold(&q, &UNIT, &ReportOptions::default()), Err(Error::NoThreshold));
}
