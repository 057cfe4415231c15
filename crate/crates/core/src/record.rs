//! Experiment records and their CSV/JSON serialisations.
//!
//! One schema serves every suite: `experiment,n,value_re,value_im,ref_re,
//! ref_im,error,bound,status`. Floats are written with Rust's shortest
//! round-trip formatting, so identical runs produce byte-identical files.

use num_complex::Complex64;
use serde::Serialize;
use std::io::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    WithinBound,
    TrendOk,
    Diverging,
    Failed,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::WithinBound => "within_bound",
            Status::TrendOk => "trend_ok",
            Status::Diverging => "diverging",
            Status::Failed => "failed",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentRecord {
    pub experiment: String,
    pub n: u64,
    pub value: Complex64,
    pub reference: Complex64,
    pub error: f64,
    pub bound: Option<f64>,
    pub status: Status,
}

impl ExperimentRecord {
    pub fn new(
        experiment: impl Into<String>,
        n: u64,
        value: Complex64,
        reference: Complex64,
        bound: Option<f64>,
        status: Status,
    ) -> Self {
        ExperimentRecord {
            experiment: experiment.into(),
            n,
            error: (value - reference).norm(),
            value,
            reference,
            bound,
            status,
        }
    }
}

pub const CSV_HEADER: &str = "experiment,n,value_re,value_im,ref_re,ref_im,error,bound,status";

pub fn write_csv<W: Write>(records: &[ExperimentRecord], out: &mut W) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        let bound = match r.bound {
            Some(b) => format!("{b}"),
            None => String::new(),
        };
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.experiment,
            r.n,
            r.value.re,
            r.value.im,
            r.reference.re,
            r.reference.im,
            r.error,
            bound,
            r.status.as_str()
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct JsonRecord<'a> {
    experiment: &'a str,
    n: u64,
    value_re: f64,
    value_im: f64,
    ref_re: f64,
    ref_im: f64,
    error: f64,
    bound: Option<f64>,
    status: &'a str,
}

pub fn to_json(records: &[ExperimentRecord]) -> serde_json::Value {
    serde_json::to_value(
        records
            .iter()
            .map(|r| JsonRecord {
                experiment: &r.experiment,
                n: r.n,
                value_re: r.value.re,
                value_im: r.value.im,
                ref_re: r.reference.re,
                ref_im: r.reference.im,
                error: r.error,
                bound: r.bound,
                status: r.status.as_str(),
            })
            .collect::<Vec<_>>(),
    )
    .expect("record serialisation cannot fail")
}

pub fn write_json<W: Write>(records: &[ExperimentRecord], out: &mut W) -> std::io::Result<()> {
    let v = to_json(records);
    writeln!(out, "{}", serde_json::to_string_pretty(&v)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_roundtrip_shape() {
        let recs = vec![ExperimentRecord::new(
            "demo",
            8,
            Complex64::new(1.5, -0.25),
            Complex64::new(1.0, 0.0),
            Some(0.75),
            Status::WithinBound,
        )];
        let mut buf = Vec::new();
        write_csv(&recs, &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        let mut lines = s.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        assert_eq!(
            lines.next().unwrap(),
            "demo,8,1.5,-0.25,1,0,0.5590169943749475,0.75,within_bound"
        );
    }

    #[test]
    fn json_fields_match_csv() {
        let recs = vec![ExperimentRecord::new(
            "demo",
            2,
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            None,
            Status::TrendOk,
        )];
        let v = to_json(&recs);
        assert_eq!(v[0]["status"], "trend_ok");
        assert!(v[0]["bound"].is_null());
        assert_eq!(v[0]["n"], 2);
    }
}
