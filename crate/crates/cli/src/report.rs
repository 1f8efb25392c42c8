//! Row types for the three report schemas and their CSV / JSON encodings.

use epir_core::analysis::verify::{Check, Report};
use epir_core::analysis::{BoundRecord, FailureStats};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureRow {
    pub n: u32,
    pub modulus: String,
    #[serde(rename = "F")]
    pub f: String,
    pub eta_exact_num: String,
    pub eta_exact_den: String,
    pub eta_5dp: String,
}

impl FailureRow {
    pub fn new(stats: &FailureStats, modulus: String, f: String) -> Self {
        Self {
            n: stats.n,
            modulus,
            f,
            eta_exact_num: stats.eta.numer().to_string(),
            eta_exact_den: stats.eta.denom().to_string(),
            eta_5dp: stats.eta_5dp(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRow {
    pub n: u32,
    pub h: u32,
    pub omega_exact_num: u64,
    pub omega_exact_den: u64,
    pub omega_5dp: String,
}

impl From<&BoundRecord> for BoundRow {
    fn from(r: &BoundRecord) -> Self {
        Self {
            n: r.n,
            h: r.h,
            omega_exact_num: *r.omega.numer(),
            omega_exact_den: *r.omega.denom(),
            omega_5dp: r.omega_5dp(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRow {
    pub check: String,
    pub subject: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

impl From<&Check> for CheckRow {
    fn from(c: &Check) -> Self {
        Self {
            check: c.kind.name().to_string(),
            subject: c.subject.clone(),
            lhs: c.lhs.clone(),
            rhs: c.rhs.clone(),
            holds: c.holds,
        }
    }
}

pub fn check_rows(report: &Report) -> Vec<CheckRow> {
    report.checks.iter().map(CheckRow::from).collect()
}

pub fn to_csv<T: Serialize>(rows: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).expect("rows serialize");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
}

pub fn to_json<T: Serialize>(rows: &[T]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
    s.push('\n');
    s
}
