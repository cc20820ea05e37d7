//! Key-value run configuration.
//!
//! One `key = value` per line; `#` starts a comment. Unknown keys are errors
//! so typos do not silently fall back to defaults.
//!
//! | key                    | default | meaning                                           |
//! |------------------------|---------|---------------------------------------------------|
//! | `margin`               | 10      | factor standing in for "≪" in plan ledgers        |
//! | `quadrature_order`     | 8       | Gauss points per panel / Lobatto nodes per panel  |
//! | `lattice_cap_1d`       | 8192    | largest lattice side (2M+1) in one dimension      |
//! | `lattice_cap_2d`       | 512     | largest lattice side in two dimensions            |
//! | `seed`                 | 7       | background data seed                              |
//! | `series_time_safety`   | 0.01    | c in T ≤ c·min(M^{−(k−1)/2}, 1) for the series    |
//! | `quadrature_tol`       | 1e-10   | agreement required between panel doublings        |
//! | `distance_safety`      | 1.05    | calibrated long-time plan: distance ≤ 1/(n·this)  |

use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Config {
    pub margin: f64,
    pub quadrature_order: usize,
    pub lattice_cap_1d: usize,
    pub lattice_cap_2d: usize,
    pub seed: u64,
    pub series_time_safety: f64,
    pub quadrature_tol: f64,
    pub distance_safety: f64,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            margin: 10.0,
            quadrature_order: 8,
            lattice_cap_1d: 8192,
            lattice_cap_2d: 512,
            seed: 7,
            series_time_safety: 0.01,
            quadrature_tol: 1e-10,
            distance_safety: 1.05,
        }
    }
}

fn parse<T: FromStr>(key: &str, value: &str, line: usize) -> Result<T> {
    value.parse().map_err(|_| Error::Parse(format!("line {line}: bad value {value:?} for {key}")))
}

impl FromStr for Config {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut c = Config::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", i + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            let n = i + 1;
            match key {
                "margin" => c.margin = parse(key, value, n)?,
                "quadrature_order" => c.quadrature_order = parse(key, value, n)?,
                "lattice_cap_1d" => c.lattice_cap_1d = parse(key, value, n)?,
                "lattice_cap_2d" => c.lattice_cap_2d = parse(key, value, n)?,
                "seed" => c.seed = parse(key, value, n)?,
                "series_time_safety" => c.series_time_safety = parse(key, value, n)?,
                "quadrature_tol" => c.quadrature_tol = parse(key, value, n)?,
                "distance_safety" => c.distance_safety = parse(key, value, n)?,
                _ => return Err(Error::Parse(format!("line {n}: unknown key {key:?}"))),
            }
        }
        c.validate()?;
        Ok(c)
    }
}

impl Config {
    pub fn load(path: &Path) -> Result<Self> {
        std::fs::read_to_string(path)?.parse()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.margin >= 1.0) {
            return Err(Error::Config(format!("margin {} < 1", self.margin)));
        }
        if self.quadrature_order < 2 {
            return Err(Error::Config("quadrature_order must be at least 2".into()));
        }
        if !(self.series_time_safety > 0.0) || !(self.quadrature_tol > 0.0) || !(self.distance_safety >= 1.0) {
            return Err(Error::Config("safety factors and tolerances must be positive".into()));
        }
        Ok(())
    }

    /// Lattice side cap for dimension d; d = 3 shares the 2-d cap.
    pub fn lattice_cap(&self, d: usize) -> usize {
        if d == 1 {
            self.lattice_cap_1d
        } else {
            self.lattice_cap_2d
        }
    }

    /// Renders the configuration in the file format.
    pub fn to_text(&self) -> String {
        format!(
            "margin = {}\nquadrature_order = {}\nlattice_cap_1d = {}\nlattice_cap_2d = {}\nseed = {}\n\
             series_time_safety = {}\nquadrature_tol = {:e}\ndistance_safety = {}\n",
            self.margin,
            self.quadrature_order,
            self.lattice_cap_1d,
            self.lattice_cap_2d,
            self.seed,
            self.series_time_safety,
            self.quadrature_tol,
            self.distance_safety
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_round_trips() {
        let c: Config = "# run\nmargin = 4\nseed=11  # trailing\n\nquadrature_tol = 1e-9\n".parse().unwrap();
        assert_eq!((c.margin, c.seed, c.quadrature_tol), (4.0, 11, 1e-9));
        assert_eq!(c.to_text().parse::<Config>().unwrap(), c);
    }

    #[test]
    fn rejects_bad_input() {
        assert!("margin 4".parse::<Config>().is_err());
        assert!("marginn = 4".parse::<Config>().is_err());
        assert!("margin = x".parse::<Config>().is_err());
        assert!("margin = 0.5".parse::<Config>().is_err());
    }
}
