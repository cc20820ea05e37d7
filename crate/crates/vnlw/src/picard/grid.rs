use serde::{Deserialize, Serialize};

use super::quadrature::lobatto_unit;
use crate::{Error, Result};

/// How to lay out panels on [0, T].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    /// Gauss–Lobatto nodes per panel (polynomial degree + 1).
    pub nodes_per_panel: usize,
    /// End of the first panel [0, first].
    pub first: f64,
    /// Width growth factor for the geometric part.
    pub ratio: f64,
    /// Widest allowed panel; the grid turns uniform once reached.
    pub max_width: f64,
    /// Times forced to be panel edges.
    pub breakpoints: Vec<f64>,
}

impl GridSpec {
    /// Geometric grading from `first` up to `max_width`.
    pub fn graded(first: f64, ratio: f64, max_width: f64) -> Self {
        Self { nodes_per_panel: 8, first, ratio, max_width, breakpoints: Vec::new() }
    }

    /// Panels of equal width.
    pub fn uniform(width: f64) -> Self {
        Self::graded(width, 1.0, width)
    }

    pub fn with_breakpoints(mut self, points: impl IntoIterator<Item = f64>) -> Self {
        self.breakpoints.extend(points);
        self
    }

    /// Grading suited to data oscillating at frequency ≈ `scale`: panels resolve 1/scale near 0.
    pub fn for_frequency(scale: f64, t_end: f64) -> Self {
        let s = scale.max(1.0);
        Self::graded((0.05 / s).min(t_end), 1.15, (1.0 / s).max(t_end / 64.0).min(0.05).max(1.0 / s))
    }

    pub fn build(&self, t_end: f64) -> Result<TimeGrid> {
        TimeGrid::new(t_end, self)
    }
}

/// Panels [e_p, e_{p+1}] with shared Lobatto nodes; node q = p·(n−1) + i.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    edges: Vec<f64>,
    theta: Vec<f64>,
    times: Vec<f64>,
}

impl TimeGrid {
    pub fn new(t_end: f64, spec: &GridSpec) -> Result<Self> {
        if !(t_end > 0.0) || !t_end.is_finite() {
            return Err(Error::Domain(format!("grid end {t_end} must be positive")));
        }
        if spec.nodes_per_panel < 2 || !(spec.first > 0.0) || !(spec.ratio >= 1.0) || !(spec.max_width > 0.0) {
            return Err(Error::Config(format!("invalid grid spec {spec:?}")));
        }
        let mut edges = vec![0.0];
        let mut width = spec.first.min(t_end);
        let mut t = 0.0;
        while t < t_end {
            let next = (t + width).min(t_end);
            // avoid a sliver at the end
            let next = if t_end - next < 0.25 * width { t_end } else { next };
            edges.push(next);
            t = next;
            width = (width * spec.ratio).min(spec.max_width);
            if edges.len() > 2_000_000 {
                return Err(Error::Config("time grid too fine".into()));
            }
        }
        for &b in &spec.breakpoints {
            if b > 0.0 && b < t_end && !edges.iter().any(|&e| (e - b).abs() <= 1e-12 * t_end) {
                let pos = edges.partition_point(|&e| e < b);
                edges.insert(pos, b);
            }
        }
        Ok(Self::from_edges(edges, spec.nodes_per_panel))
    }

    /// Grid from explicit ascending panel edges starting at 0.
    pub fn from_edges(edges: Vec<f64>, nodes_per_panel: usize) -> Self {
        let theta = lobatto_unit(nodes_per_panel);
        let mut times = vec![0.0];
        for w in edges.windows(2) {
            let (a, h) = (w[0], w[1] - w[0]);
            times.extend(theta[1..].iter().map(|th| a + h * th));
        }
        // panel ends exactly at the edges
        let n = nodes_per_panel;
        for (p, &e) in edges.iter().enumerate().skip(1) {
            times[p * (n - 1)] = e;
        }
        Self { edges, theta, times }
    }

    pub fn edges(&self) -> &[f64] {
        &self.edges
    }

    pub fn panels(&self) -> usize {
        self.edges.len() - 1
    }

    pub fn nodes_per_panel(&self) -> usize {
        self.theta.len()
    }

    /// Relative node positions in [0, 1].
    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn end(&self) -> f64 {
        *self.edges.last().unwrap()
    }

    pub fn node(&self, panel: usize, i: usize) -> usize {
        panel * (self.theta.len() - 1) + i
    }

    /// Index of the node at time t, if t is a node.
    pub fn node_at(&self, t: f64) -> Option<usize> {
        let tol = 1e-13 * self.end().max(1e-300);
        let q = self.times.partition_point(|&x| x < t - tol);
        (q < self.times.len() && (self.times[q] - t).abs() <= tol).then_some(q)
    }

    /// Panel containing t and barycentric interpolation weights for its nodes.
    pub fn interpolation(&self, t: f64) -> Result<(usize, Vec<f64>)> {
        let end = self.end();
        if t < 0.0 || t > end * (1.0 + 1e-14) {
            return Err(Error::Domain(format!("time {t} outside [0, {end}]")));
        }
        let p = (self.edges.partition_point(|&e| e <= t).max(1) - 1).min(self.panels() - 1);
        let (a, b) = (self.edges[p], self.edges[p + 1]);
        let x = ((t - a) / (b - a)).clamp(0.0, 1.0);
        let n = self.theta.len();
        let mut out = vec![0.0; n];
        if let Some(i) = self.theta.iter().position(|&th| (th - x).abs() < 1e-15) {
            out[i] = 1.0;
            return Ok((p, out));
        }
        let mut total = 0.0;
        for i in 0..n {
            let bw: f64 = 1.0 / (0..n).filter(|&j| j != i).map(|j| self.theta[i] - self.theta[j]).product::<f64>();
            out[i] = bw / (x - self.theta[i]);
            total += out[i];
        }
        for w in &mut out {
            *w /= total;
        }
        Ok((p, out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_layout() {
        let g = GridSpec::graded(1e-3, 2.0, 0.1).with_breakpoints([0.55]).build(1.0).unwrap();
        assert_eq!(g.edges()[0], 0.0);
        assert_eq!(g.end(), 1.0);
        assert!(g.edges().windows(2).all(|w| w[1] > w[0]));
        assert!(g.node_at(0.55).is_some());
        assert_eq!(g.len(), g.panels() * 7 + 1);
        assert_eq!(*g.times().last().unwrap(), 1.0);
    }

    #[test]
    fn interpolation_reproduces_polynomials() {
        let g = GridSpec::uniform(0.3).build(1.0).unwrap();
        let f = |t: f64| 1.0 - 2.0 * t + 3.0 * t.powi(5) - t.powi(7);
        for t in [0.0, 0.123, 0.3, 0.77, 1.0] {
            let (p, w) = g.interpolation(t).unwrap();
            let v: f64 = (0..g.nodes_per_panel()).map(|i| w[i] * f(g.times()[g.node(p, i)])).sum();
            assert!((v - f(t)).abs() < 1e-13);
        }
        assert!(g.interpolation(1.5).is_err());
    }
}
