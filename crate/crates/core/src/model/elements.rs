//! Closed-form Boltzmann combinations u, v, w, y and the partition function,
//! evaluated in log space so that low temperatures do not overflow.

use serde::Serialize;

use super::hamiltonian::boltzmann_weights;
use super::state::{Density4, PSD_TOL};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues4, log_sum_exp, Op4, C64};
use crate::params::ChainParams;

/// Which form of the |11> weight to use.
///
/// The verbatim closed form carries `(H + Jm - 4J + 2J)/2T` in the
/// mixed-configuration exponent. Tracing the Hamiltonian gives
/// `(H + Jm + 4J - 2J)/2T`; the two coincide only at J = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VElement {
    #[default]
    Corrected,
    Verbatim,
}

/// u, v, w, y and Z, all multiplied by `exp(-log_scale)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClusterElements {
    pub u: f64,
    pub v: f64,
    pub w: f64,
    pub y: f64,
    pub z: f64,
    pub log_scale: f64,
    pub v_element: VElement,
}

impl ClusterElements {
    pub fn normalized(&self) -> [f64; 4] {
        [self.u / self.z, self.v / self.z, self.w / self.z, self.y / self.z]
    }
}

/// ln(e^a - 1) for a > 0 and ln(1 - e^a) for a < 0, without overflow.
fn ln_abs_expm1(a: f64) -> f64 {
    if a > 0.0 {
        a + (-(-a).exp_m1()).ln()
    } else {
        (-a.exp_m1()).ln()
    }
}

pub fn boltzmann_elements(params: &ChainParams) -> Result<ClusterElements> {
    boltzmann_elements_with(params, VElement::Corrected)
}

pub fn boltzmann_elements_with(params: &ChainParams, variant: VElement) -> Result<ClusterElements> {
    params.validate()?;
    let ChainParams { j, j2, jm, h, t } = *params;
    let ln2 = std::f64::consts::LN_2;

    let ln_u = log_sum_exp(&[
        ln2 + (4.0 * h + jm - j2) / (4.0 * t),
        -(-2.0 * h + jm - 4.0 * j + j2) / (4.0 * t),
        -(-6.0 * h + jm + 4.0 * j + j2) / (4.0 * t),
    ]);

    let mixed = match variant {
        VElement::Verbatim => (h + jm - 4.0 * j + 2.0 * j) / (2.0 * t),
        VElement::Corrected => (h + jm + 4.0 * j - 2.0 * j) / (2.0 * t),
    };
    let ln_v = -(6.0 * h + jm + j2 + 4.0 * j) / (4.0 * t)
        + log_sum_exp(&[ln2 + mixed, (h + 2.0 * j) / t, 0.0]);

    let ln_common = -(2.0 * h + jm + j2) / (4.0 * t)
        + log_sum_exp(&[ln2 + (h + jm) / (2.0 * t), h / t, 0.0])
        - ln2;
    let ln_w = ln_common + log_sum_exp(&[j2 / t, 0.0]);

    let log_scale = ln_u.max(ln_v).max(ln_w);
    let u = (ln_u - log_scale).exp();
    let v = (ln_v - log_scale).exp();
    let w = (ln_w - log_scale).exp();
    let y = if j2 == 0.0 {
        0.0
    } else {
        let mag = (ln_common + ln_abs_expm1(j2 / t) - log_scale).exp();
        -j2.signum() * mag
    };

    Ok(ClusterElements {
        u,
        v,
        w,
        y,
        z: u + v + 2.0 * w,
        log_scale,
        v_element: variant,
    })
}

pub fn x_state_matrix(el: &ClusterElements) -> Op4 {
    let mut m = Op4::zeros();
    let z = el.z;
    m[(0, 0)] = C64::from(el.u / z);
    m[(1, 1)] = C64::from(el.w / z);
    m[(2, 2)] = C64::from(el.w / z);
    m[(3, 3)] = C64::from(el.v / z);
    m[(1, 2)] = C64::from(el.y / z);
    m[(2, 1)] = C64::from(el.y / z);
    m
}

pub fn thermal_state_closed_form(params: &ChainParams) -> Result<Density4> {
    thermal_state_closed_form_with(params, VElement::Corrected)
}

/// Assembles the X-state from the closed-form elements. A spectrum below
/// `-PSD_TOL` is reported as a positivity violation, never repaired.
pub fn thermal_state_closed_form_with(params: &ChainParams, variant: VElement) -> Result<Density4> {
    let el = boltzmann_elements_with(params, variant)?;
    let m = x_state_matrix(&el);
    let min = hermitian_eigenvalues4(&m)[3];
    if min < -PSD_TOL {
        return Err(Error::PositivityViolation(min));
    }
    Density4::new(m)
}

/// Absolute element differences between the closed form and the
/// Hamiltonian trace-out, both on the closed form's scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ElementDiscrepancy {
    pub variant: VElement,
    pub du: f64,
    pub dv: f64,
    pub dw: f64,
    pub dy: f64,
    /// |Z - trace of the trace-out weights|.
    pub dz: f64,
}

impl ElementDiscrepancy {
    pub fn max(&self) -> f64 {
        [self.du, self.dv, self.dw, self.dy, self.dz].into_iter().fold(0.0, f64::max)
    }

    /// Largest of the u, w, y differences, which do not depend on the variant.
    pub fn max_uwy(&self) -> f64 {
        self.du.max(self.dw).max(self.dy)
    }

    pub fn agrees(&self, tol: f64) -> bool {
        self.max() <= tol
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstructionReport {
    pub params: ChainParams,
    pub corrected: ElementDiscrepancy,
    pub verbatim: ElementDiscrepancy,
}

impl ConstructionReport {
    pub fn max_abs(&self) -> f64 {
        self.corrected.max().max(self.verbatim.max())
    }
}

pub fn validate_constructions(params: &ChainParams) -> Result<ConstructionReport> {
    let (weights, exact_scale) = boltzmann_weights(params)?;
    let compare = |variant| -> Result<ElementDiscrepancy> {
        let el = boltzmann_elements_with(params, variant)?;
        let w = weights * (exact_scale - el.log_scale).exp();
        Ok(ElementDiscrepancy {
            variant,
            du: (el.u - w[(0, 0)]).abs(),
            dv: (el.v - w[(3, 3)]).abs(),
            dw: (el.w - w[(1, 1)]).abs().max((el.w - w[(2, 2)]).abs()),
            dy: (el.y - w[(1, 2)]).abs().max((el.y - w[(2, 1)]).abs()),
            dz: (el.z - w.trace()).abs(),
        })
    };
    Ok(ConstructionReport {
        params: *params,
        corrected: compare(VElement::Corrected)?,
        verbatim: compare(VElement::Verbatim)?,
    })
}
