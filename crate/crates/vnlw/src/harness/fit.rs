use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Least-squares line through (log x, log y).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fit {
    pub name: String,
    pub slope: f64,
    pub intercept: f64,
    /// RMS residual in log y.
    pub residual: f64,
    /// Standard error of the slope (0 for two points).
    pub stderr: f64,
    pub expected: Option<f64>,
    pub tolerance: Option<f64>,
    pub pass: bool,
}

pub fn log_log_fit(name: &str, x: &[f64], y: &[f64]) -> Result<Fit> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(Error::Domain(format!("fit {name} needs at least two paired samples")));
    }
    if x.iter().chain(y).any(|v| !(*v > 0.0) || !v.is_finite()) {
        return Err(Error::Domain(format!("fit {name} needs positive finite samples")));
    }
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    if sxx == 0.0 {
        return Err(Error::Domain(format!("fit {name}: all abscissae equal")));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = lx.iter().zip(&ly).map(|(a, b)| (b - intercept - slope * a).powi(2)).sum();
    let stderr = if lx.len() > 2 { (sse / (n - 2.0) / sxx).sqrt() } else { 0.0 };
    Ok(Fit {
        name: name.into(),
        slope,
        intercept,
        residual: (sse / n).sqrt(),
        stderr,
        expected: None,
        tolerance: None,
        pass: true,
    })
}

impl Fit {
    /// Marks pass iff |slope − expected| ≤ tolerance.
    pub fn expect(mut self, expected: f64, tolerance: f64) -> Self {
        self.expected = Some(expected);
        self.tolerance = Some(tolerance);
        self.pass = (self.slope - expected).abs() <= tolerance;
        self
    }

    /// slope ± 2·stderr
    pub fn bracket(&self) -> (f64, f64) {
        (self.slope - 2.0 * self.stderr, self.slope + 2.0 * self.stderr)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let x = [1.0, 2.0, 4.0, 8.0, 16.0];
        let y: Vec<f64> = x.iter().map(|v: &f64| 3.0 * v.powf(-1.5)).collect();
        let f = log_log_fit("p", &x, &y).unwrap().expect(-1.5, 1e-12);
        assert!(f.pass);
        assert!(f.residual < 1e-14 && f.stderr < 1e-14);
        assert!((f.intercept - 3f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn rejects_degenerate() {
        assert!(log_log_fit("p", &[1.0], &[1.0]).is_err());
        assert!(log_log_fit("p", &[1.0, 1.0], &[1.0, 2.0]).is_err());
        assert!(log_log_fit("p", &[1.0, 2.0], &[0.0, 2.0]).is_err());
    }
}
