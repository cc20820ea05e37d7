use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::estimates::Thresholds;

/// Default factor standing in for "≪".
pub const DEFAULT_MARGIN: f64 = 10.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// lhs ≪ rhs, checked as lhs·margin ≤ rhs
    Much,
    Less,
    LessEq,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub name: String,
    pub relation: Relation,
    pub lhs: f64,
    pub rhs: f64,
    /// rhs / lhs
    pub margin: f64,
    pub pass: bool,
}

impl LedgerEntry {
    pub fn new(name: impl Into<String>, relation: Relation, lhs: f64, rhs: f64) -> Self {
        let mut e = Self { name: name.into(), relation, lhs, rhs, margin: rhs / lhs, pass: false };
        e.pass = e.passes(1.0);
        e
    }

    pub fn passes(&self, margin: f64) -> bool {
        match self.relation {
            Relation::Much => self.lhs * margin <= self.rhs,
            Relation::Less => self.lhs < self.rhs,
            Relation::LessEq => self.lhs <= self.rhs,
        }
    }
}

/// An exponent interval (lower, upper) kept exactly and as floats.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub name: String,
    pub lower: f64,
    pub upper: f64,
    pub lower_exact: String,
    pub upper_exact: String,
    pub chosen: f64,
}

impl Window {
    pub(crate) fn exact(name: &str, lower: Ratio<i64>, upper: Ratio<i64>) -> Self {
        let mid = (lower + upper) / 2;
        Self {
            name: name.into(),
            lower: to_f64(lower),
            upper: to_f64(upper),
            lower_exact: lower.to_string(),
            upper_exact: upper.to_string(),
            chosen: to_f64(mid),
        }
    }

    pub(crate) fn numeric(name: &str, lower: f64, upper: f64, chosen: f64) -> Self {
        Self {
            name: name.into(),
            lower,
            upper,
            lower_exact: format!("{lower}"),
            upper_exact: format!("{upper}"),
            chosen,
        }
    }

    pub fn is_empty(&self) -> bool {
        !(self.lower < self.upper)
    }
}

pub(crate) fn to_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Parameters chosen for one regime at one N, with every inequality evaluated.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegimePlan {
    pub regime: String,
    pub d: usize,
    pub k: usize,
    pub s: f64,
    pub sigma: Option<f64>,
    /// Target inflation level n (distance < 1/n, norm > n).
    pub n: Option<u64>,
    #[serde(rename = "N")]
    pub big_n: f64,
    pub windows: Vec<Window>,
    #[serde(rename = "R")]
    pub r: f64,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "T")]
    pub t: f64,
    /// Admissible time interval at this N.
    pub t_window: (f64, f64),
    /// Predicted growth exponent in N, where the regime has one.
    pub growth_exponent: Option<f64>,
    pub margin: f64,
    /// Smallest N at which every ledger entry passes with `margin`.
    pub min_n: Option<f64>,
    pub symbolic_feasible: bool,
    pub feasible: bool,
    /// Constraint(s) responsible for infeasibility.
    pub binding: Option<String>,
    pub ledger: Vec<LedgerEntry>,
    pub notes: Vec<String>,
}

impl RegimePlan {
    pub(crate) fn finish(mut self) -> Self {
        for e in &mut self.ledger {
            e.pass = e.passes(self.margin);
        }
        self.feasible = self.symbolic_feasible && self.ledger.iter().all(|e| e.pass);
        if self.binding.is_none() && !self.feasible {
            self.binding = self.ledger.iter().find(|e| !e.pass).map(|e| e.name.clone());
        }
        self
    }

    pub fn entry(&self, name: &str) -> Option<&LedgerEntry> {
        self.ledger.iter().find(|e| e.name == name)
    }

    pub fn window(&self, name: &str) -> Option<&Window> {
        self.windows.iter().find(|w| w.name == name)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain struct")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LedgerReport {
    pub margin: f64,
    pub entries: Vec<LedgerEntry>,
    pub pass: bool,
}

/// Re-evaluates every ledger entry with a new margin.
pub fn check_ledger(plan: &RegimePlan, margin: f64) -> LedgerReport {
    let entries: Vec<LedgerEntry> = plan
        .ledger
        .iter()
        .map(|e| LedgerEntry { pass: e.passes(margin), ..e.clone() })
        .collect();
    let pass = plan.symbolic_feasible && entries.iter().all(|e| e.pass);
    LedgerReport { margin, entries, pass }
}

/// Smallest N (to 1%) at which `build(N)` is feasible, searching N ≤ 10^300.
pub(crate) fn minimum_n(build: impl Fn(f64) -> Option<bool>) -> Option<f64> {
    let mut hi = 2.0f64;
    while build(hi) != Some(true) {
        hi *= 4.0;
        if hi > 1e300 {
            return None;
        }
    }
    let mut lo = hi / 4.0;
    if lo < 2.0 || build(lo) == Some(true) {
        return Some(lo.max(2.0));
    }
    while hi / lo > 1.01 {
        let mid = (lo * hi).sqrt();
        if build(mid) == Some(true) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

pub(crate) fn rational(x: f64) -> Ratio<i64> {
    Ratio::<i64>::approximate_float(x).unwrap_or_else(|| Ratio::from_integer(x.round() as i64))
}

pub(crate) fn threshold_note(t: &Thresholds) -> String {
    format!("s_scal = {}, s_vis = {}, s_m = {}", t.s_scal, t.s_vis, t.s_m)
}
