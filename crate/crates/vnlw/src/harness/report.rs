use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::fit::Fit;
use crate::regimes::RegimePlan;
use crate::Result;

pub const SCHEMA_VERSION: u32 = 1;

/// Column order of the sample CSV.
pub const CSV_HEADER: &str = "experiment,d,k,s,sigma,N,R,A,t,level,norm_hs,norm_hsigma,norm_fl01";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentParams {
    pub d: usize,
    pub k: usize,
    pub s: f64,
    pub sigma: Option<f64>,
    pub n: Option<u64>,
    pub extra: Vec<(String, f64)>,
}

/// One measured norm. `level` is the Picard level, or `None` for a full
/// solution or data measurement.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    #[serde(rename = "N")]
    pub big_n: f64,
    #[serde(rename = "R")]
    pub r: f64,
    #[serde(rename = "A")]
    pub a: f64,
    pub t: f64,
    pub level: Option<usize>,
    pub norm_hs: Option<f64>,
    pub norm_hsigma: Option<f64>,
    pub norm_fl01: Option<f64>,
}

/// ‖term‖ / ‖reference‖ against a required factor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Dominance {
    pub reference: String,
    pub term: String,
    pub t: f64,
    #[serde(deserialize_with = "nan_from_null")]
    pub ratio: f64,
    pub required: f64,
    pub pass: bool,
}

impl Dominance {
    /// Passes iff reference ≥ required·term, i.e. ratio = term/reference ≤ 1/required.
    pub fn new(reference: &str, term: &str, t: f64, reference_norm: f64, term_norm: f64, required: f64) -> Self {
        let ratio = term_norm / reference_norm;
        Self { reference: reference.into(), term: term.into(), t, ratio, required, pass: ratio * required <= 1.0 }
    }
}

fn nan_from_null<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// Non-finite values are written as null and read back as NaN.
    #[serde(deserialize_with = "nan_from_null")]
    pub value: f64,
    pub bound: String,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, value: f64, bound: impl Into<String>, pass: bool) -> Self {
        Self { name: name.into(), value, bound: bound.into(), pass }
    }

    pub fn below(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Self::new(name, value, format!("< {}", number(limit)), value < limit)
    }

    pub fn at_most(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Self::new(name, value, format!("<= {}", number(limit)), value <= limit)
    }

    pub fn above(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Self::new(name, value, format!("> {}", number(limit)), value > limit)
    }

    pub fn within(name: impl Into<String>, value: f64, target: f64, tol: f64) -> Self {
        Self::new(name, value, format!("{} ± {}", number(target), number(tol)), (value - target).abs() <= tol)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema_version: u32,
    pub experiment: String,
    pub params: ExperimentParams,
    /// Planner output the run was parameterised by, if any.
    pub plan: Option<RegimePlan>,
    pub samples: Vec<Sample>,
    pub fits: Vec<Fit>,
    pub dominance: Vec<Dominance>,
    pub checks: Vec<Check>,
    pub verdict: bool,
    pub notes: Vec<String>,
}

impl ExperimentReport {
    pub fn new(experiment: &str, params: ExperimentParams) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            experiment: experiment.into(),
            params,
            plan: None,
            samples: Vec::new(),
            fits: Vec::new(),
            dominance: Vec::new(),
            checks: Vec::new(),
            verdict: false,
            notes: Vec::new(),
        }
    }

    /// Sets the verdict: true iff every fit, dominance and check passed and
    /// there was something to check.
    pub fn finish(mut self) -> Self {
        let parts = self.fits.len() + self.dominance.len() + self.checks.len();
        self.verdict = parts > 0
            && self.fits.iter().all(|f| f.pass)
            && self.dominance.iter().all(|d| d.pass)
            && self.checks.iter().all(|c| c.pass);
        self
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn fit(&self, name: &str) -> Option<&Fit> {
        self.fits.iter().find(|f| f.name == name)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{CSV_HEADER}")?;
        let opt = |v: Option<f64>| v.map(number).unwrap_or_default();
        let p = &self.params;
        for s in &self.samples {
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{},{},{},{},{}",
                self.experiment,
                p.d,
                p.k,
                number(p.s),
                opt(p.sigma),
                number(s.big_n),
                number(s.r),
                number(s.a),
                number(s.t),
                s.level.map(|l| l.to_string()).unwrap_or_default(),
                opt(s.norm_hs),
                opt(s.norm_hsigma),
                opt(s.norm_fl01)
            )?;
        }
        Ok(())
    }
}

/// Shortest round-trip text; scientific notation outside [1e-4, 1e7).
pub(crate) fn number(x: f64) -> String {
    if x == 0.0 || (1e-4..1e7).contains(&x.abs()) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// Writes `report` to `path` in `format`.
pub fn emit_report(report: &ExperimentReport, format: Format, path: &Path) -> Result<()> {
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    match format {
        Format::Json => {
            file.write_all(report.to_json()?.as_bytes())?;
            file.write_all(b"\n")?;
        }
        Format::Csv => report.write_csv(&mut file)?,
    }
    file.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> ExperimentParams {
        ExperimentParams { d: 1, k: 2, s: -0.75, sigma: None, n: None, extra: vec![("A".into(), 1.0)] }
    }

    #[test]
    fn empty_sweep_is_header_only() {
        let r = ExperimentReport::new("empty", params()).finish();
        let mut out = Vec::new();
        r.write_csv(&mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), format!("{CSV_HEADER}\n"));
        assert!(!r.verdict);
    }

    #[test]
    fn json_round_trip() {
        let mut r = ExperimentReport::new("rt", params());
        r.samples.push(Sample {
            big_n: 16.0,
            r: 0.1,
            a: 1.0,
            t: 1.0 / 3.0,
            level: Some(1),
            norm_hs: Some(1e-300),
            norm_hsigma: None,
            norm_fl01: Some(2.5),
        });
        r.checks.push(Check::below("x", 0.2, 0.5));
        r.dominance.push(Dominance::new("Xi1", "Xi2", 0.1, 1.0, 0.05, 10.0));
        let r = r.finish();
        assert!(r.verdict);
        assert_eq!(ExperimentReport::from_json(&r.to_json().unwrap()).unwrap(), r);
        let mut out = Vec::new();
        r.write_csv(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let row = text.lines().nth(1).unwrap();
        assert_eq!(row.split(',').count(), CSV_HEADER.split(',').count());
    }

    #[test]
    fn non_finite_check_survives_json() {
        let mut r = ExperimentReport::new("nan", params());
        r.checks.push(Check::below("x", f64::INFINITY, 1.0));
        let back = ExperimentReport::from_json(&r.finish().to_json().unwrap()).unwrap();
        assert!(back.checks[0].value.is_nan());
        assert!(!back.checks[0].pass);
    }

    #[test]
    fn verdict_needs_every_part() {
        let mut r = ExperimentReport::new("v", params());
        r.checks.push(Check::above("a", 3.0, 2.0));
        r.dominance.push(Dominance::new("Xi1", "Xi2", 0.1, 1.0, 0.5, 10.0));
        assert!(!r.finish().verdict);
    }
}
