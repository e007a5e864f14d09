//! Serialized shapes: check reports, measure documents and CSV tables.

use std::io::Write;

use serde::{Deserialize, Serialize};
use stieltjes_core::monotonicity::{CheckReport, Witness};
use stieltjes_core::stieltjes::{PiecewisePolynomial, RepresentingMeasure};
use stieltjes_core::suites::{CaseOutcome, SuiteOutcome};

use crate::error::CliError;

fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub x: f64,
    pub n: usize,
    pub value: Option<f64>,
    pub slack: f64,
}

impl From<&Witness> for WitnessDoc {
    fn from(w: &Witness) -> Self {
        Self { x: w.x, n: w.n, value: finite(w.value), slack: w.slack }
    }
}

/// `{verdict, worst_margin, witnesses:[{x,n,value,slack}]}`; a margin that is
/// not finite (no sampled points, or an evaluation error) is `null`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReportDoc {
    pub verdict: String,
    pub worst_margin: Option<f64>,
    pub witnesses: Vec<WitnessDoc>,
}

impl From<&CheckReport> for CheckReportDoc {
    fn from(r: &CheckReport) -> Self {
        Self {
            verdict: r.verdict.as_str().into(),
            worst_margin: finite(r.worst_margin),
            witnesses: r.witnesses.iter().map(WitnessDoc::from).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseDoc {
    pub label: String,
    pub verdict: String,
    pub worst_margin: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl From<&CaseOutcome> for CaseDoc {
    fn from(c: &CaseOutcome) -> Self {
        let verdict = if c.error.is_none() && c.report.passed() { "pass" } else { "fail" };
        Self {
            label: c.label.clone(),
            verdict: verdict.into(),
            worst_margin: finite(c.report.worst_margin),
            error: c.error.clone(),
        }
    }
}

/// A suite report: the merged [`CheckReportDoc`] plus the suite name and a
/// per-case summary.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteDoc {
    pub suite: String,
    #[serde(flatten)]
    pub report: CheckReportDoc,
    pub cases: Vec<CaseDoc>,
}

impl From<&SuiteOutcome> for SuiteDoc {
    fn from(s: &SuiteOutcome) -> Self {
        let mut report = CheckReportDoc::from(&s.report);
        if !s.passed() {
            report.verdict = "fail".into();
        }
        Self { suite: s.suite.clone(), report, cases: s.cases.iter().map(CaseDoc::from).collect() }
    }
}

/// JSON form of a representing measure. The density has one coefficient row
/// per interval, plus one for `[last breakpoint, ∞)` when it has a tail.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureDoc {
    pub breakpoints: Vec<f64>,
    pub coeffs: Vec<Vec<f64>>,
    /// `[t, mass]` pairs.
    pub atoms: Vec<[f64; 2]>,
    pub order: f64,
    pub constant: f64,
}

impl From<&RepresentingMeasure> for MeasureDoc {
    fn from(m: &RepresentingMeasure) -> Self {
        let d = m.density();
        let coeffs = d
            .rows()
            .map(|r| {
                let end = r.iter().rposition(|&c| c != 0.0).map_or(1, |i| i + 1);
                r[..end].to_vec()
            })
            .collect();
        Self {
            breakpoints: d.breakpoints().to_vec(),
            coeffs,
            atoms: m.atoms().iter().map(|&(t, w)| [t, w]).collect(),
            order: m.order(),
            constant: m.constant(),
        }
    }
}

impl TryFrom<MeasureDoc> for RepresentingMeasure {
    type Error = CliError;

    fn try_from(doc: MeasureDoc) -> Result<Self, CliError> {
        let intervals = doc.breakpoints.len().saturating_sub(1);
        let tail = match doc.coeffs.len() {
            n if n == intervals => false,
            n if n == intervals + 1 => true,
            _ => return Err(CliError::usage("coeffs must have one row per interval, plus an optional tail row")),
        };
        let density = if doc.coeffs.is_empty() && doc.breakpoints == [0.0] {
            PiecewisePolynomial::zero()
        } else {
            PiecewisePolynomial::new(doc.breakpoints, doc.coeffs, tail)?
        };
        let atoms = doc.atoms.into_iter().map(|[t, w]| (t, w)).collect();
        Ok(RepresentingMeasure::new(atoms, density, doc.order, doc.constant)?)
    }
}

/// Writes a header and rows of numbers as CSV.
pub fn write_csv<W: Write, const N: usize>(out: W, header: [&str; N], rows: &[[f64; N]]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for r in rows {
        w.serialize(&r[..])?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use stieltjes_core::stieltjes::{gamma_ratio_cap, measure_gamma_ratio, stieltjes_eval};

    #[test]
    fn measure_round_trip() {
        let m = measure_gamma_ratio(0.5, 1.3, gamma_ratio_cap(0.5, 1.3, 0.5, 1e-7)).unwrap();
        let doc = MeasureDoc::from(&m);
        let text = serde_json::to_string(&doc).unwrap();
        let back: MeasureDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
        let m2 = RepresentingMeasure::try_from(back).unwrap();
        for x in [0.5, 2.0, 30.0] {
            assert_eq!(stieltjes_eval(&m, x).unwrap(), stieltjes_eval(&m2, x).unwrap());
        }
        for key in ["breakpoints", "coeffs", "atoms", "order", "constant"] {
            assert!(text.contains(&format!("\"{key}\"")));
        }
    }

    #[test]
    fn rejects_mismatched_rows() {
        let doc = MeasureDoc { breakpoints: vec![0.0, 1.0], coeffs: vec![], atoms: vec![], order: 1.0, constant: 0.0 };
        assert!(RepresentingMeasure::try_from(doc).is_err());
    }

    #[test]
    fn csv_header_and_rows() {
        let mut buf = Vec::new();
        write_csv(&mut buf, ["x", "value"], &[[1.0, std::f64::consts::LN_2]]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "x,value\n1.0,0.6931471805599453\n");
    }

    #[test]
    fn report_schema() {
        let r = CheckReport {
            verdict: stieltjes_core::monotonicity::Verdict::Fail,
            worst_margin: -1e-3,
            witnesses: vec![Witness { x: 1.0, n: 2, value: -1e-3, slack: 1e-12 }],
        };
        let v: serde_json::Value = serde_json::to_value(CheckReportDoc::from(&r)).unwrap();
        assert_eq!(v["verdict"], "fail");
        assert_eq!(v["witnesses"][0]["n"], 2);
        assert_eq!(v.as_object().unwrap().len(), 3);
    }
}
