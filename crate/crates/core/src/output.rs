//! Plot-ready row formats shared by the CLI and the tests.

use serde::Serialize;

use crate::correlations::CorrelationReport;

pub const CSV_HEADER: &str = "T,H,J,J2,Jm,concurrence,qd,classical_corr,mutual_info,gmqd,gqd1,theta,flags";
pub const NA: &str = "NA";

/// `%.12g`-style formatting: 12 significant digits, trailing zeros removed,
/// scientific notation outside [1e-5, 1e12).
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..12).contains(&exp) {
        return format!("{}e{}", trim_zeros(mantissa), exp);
    }
    let decimals = (11 - exp) as usize;
    trim_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// One output row, keyed by the CSV column names.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[allow(non_snake_case)]
pub struct OutputRow {
    pub T: f64,
    pub H: f64,
    pub J: f64,
    pub J2: f64,
    pub Jm: f64,
    pub concurrence: Option<f64>,
    pub qd: Option<f64>,
    pub classical_corr: Option<f64>,
    pub mutual_info: Option<f64>,
    pub gmqd: Option<f64>,
    pub gqd1: Option<f64>,
    pub theta: f64,
    pub flags: String,
}

impl From<&CorrelationReport> for OutputRow {
    fn from(r: &CorrelationReport) -> Self {
        Self {
            T: r.params.t,
            H: r.params.h,
            J: r.params.j,
            J2: r.params.j2,
            Jm: r.params.jm,
            concurrence: r.concurrence,
            qd: r.quantum_discord,
            classical_corr: r.classical_correlation,
            mutual_info: r.mutual_information,
            gmqd: r.gmqd,
            gqd1: r.gqd_1norm,
            theta: r.theta,
            flags: r.flags.iter().map(|f| f.name()).collect::<Vec<_>>().join("|"),
        }
    }
}

impl OutputRow {
    pub fn to_csv(&self) -> String {
        let opt = |v: Option<f64>| v.map_or_else(|| NA.to_string(), fmt_sig);
        [
            fmt_sig(self.T),
            fmt_sig(self.H),
            fmt_sig(self.J),
            fmt_sig(self.J2),
            fmt_sig(self.Jm),
            opt(self.concurrence),
            opt(self.qd),
            opt(self.classical_corr),
            opt(self.mutual_info),
            opt(self.gmqd),
            opt(self.gqd1),
            fmt_sig(self.theta),
            self.flags.clone(),
        ]
        .join(",")
    }
}
