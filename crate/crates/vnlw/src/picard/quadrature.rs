//! Gauss–Legendre and Gauss–Lobatto nodes.

use std::f64::consts::PI;

/// (P_n(x), P_n'(x)) by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let (mut p0, mut p1) = (1.0, x);
    for j in 2..=n {
        let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
        p0 = p1;
        p1 = p2;
    }
    let dp = if (1.0 - x * x).abs() < 1e-300 {
        let sign = if x > 0.0 || n % 2 == 1 { 1.0 } else { -1.0 };
        sign * (n * (n + 1)) as f64 / 2.0
    } else {
        n as f64 * (x * p1 - p0) / (x * x - 1.0)
    };
    (p1, dp)
}

/// Gauss–Legendre nodes and weights on [−1, 1], nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = -(PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

/// Gauss–Lobatto nodes on [0, 1], ascending, including both endpoints.
pub fn lobatto_unit(n: usize) -> Vec<f64> {
    assert!(n >= 2);
    let m = n - 1;
    let mut out = vec![0.0; n];
    out[0] = -1.0;
    out[m] = 1.0;
    for i in 1..m {
        // roots of P_m'
        let mut x = -(PI * i as f64 / m as f64).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(m, x);
            // (1−x²)P'' = 2xP' − m(m+1)P
            let ddp = (2.0 * x * dp - (m * (m + 1)) as f64 * p) / (1.0 - x * x);
            let dx = dp / ddp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out[i] = x;
    }
    out.iter().map(|x| 0.5 * (x + 1.0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_exact_for_polynomials() {
        let (x, w) = gauss_legendre(8);
        for p in 0..16 {
            let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(p)).sum();
            let exact = if p % 2 == 1 { 0.0 } else { 2.0 / (p + 1) as f64 };
            assert!((q - exact).abs() < 1e-14, "degree {p}");
        }
    }

    #[test]
    fn lobatto_nodes_symmetric() {
        let t = lobatto_unit(8);
        assert_eq!((t[0], t[7]), (0.0, 1.0));
        for i in 0..8 {
            assert!((t[i] + t[7 - i] - 1.0).abs() < 1e-15);
        }
        // known interior node of the 4-point rule: (1 ± 1/√5)/2
        let t4 = lobatto_unit(4);
        assert!((t4[1] - 0.5 * (1.0 - 1.0 / 5f64.sqrt())).abs() < 1e-15);
    }
}
