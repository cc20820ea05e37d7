use num_complex::Complex64;

/// φ₀(w), …, φ_n(w) where φ₀ = e^w and φ_{j+1}(w) = (φ_j(w) − 1/j!)/w.
///
/// Equivalently φ_j(w) = ∫₀¹ e^{w(1−σ)} σ^{j−1}/(j−1)! dσ for j ≥ 1. Small
/// arguments use the Taylor series of φ_n and the stable downward recurrence
/// φ_j = 1/j! + w φ_{j+1}; larger ones (|w| ≥ 8) recur upward from e^w.
pub fn phi_functions(w: Complex64, n: usize) -> Vec<Complex64> {
    if w.norm() < 8.0 {
        phi_downward(w, n)
    } else {
        phi_upward(w, n)
    }
}

fn inverse_factorials(n: usize) -> Vec<f64> {
    let mut inv_fact = vec![1.0; n + 1];
    for j in 1..=n {
        inv_fact[j] = inv_fact[j - 1] / j as f64;
    }
    inv_fact
}

fn phi_downward(w: Complex64, n: usize) -> Vec<Complex64> {
    let inv_fact = inverse_factorials(n);
    let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
    let mut term = Complex64::new(inv_fact[n], 0.0);
    let mut sum = term;
    for m in 1..200 {
        term = term * w / (m + n) as f64;
        sum += term;
        if term.norm() <= 1e-18 * sum.norm() {
            break;
        }
    }
    out[n] = sum;
    for j in (0..n).rev() {
        out[j] = w * out[j + 1] + inv_fact[j];
    }
    out
}

fn phi_upward(w: Complex64, n: usize) -> Vec<Complex64> {
    let inv_fact = inverse_factorials(n);
    let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
    out[0] = w.exp();
    for j in 0..n {
        out[j + 1] = (out[j] - inv_fact[j]) / w;
    }
    out
}

/// ∫₀¹ e^{wσ} dσ
fn int_exp(w: Complex64) -> Complex64 {
    if w.norm() < 1.0 {
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        for m in 1..60 {
            term = term * w / (m + 1) as f64;
            sum += term;
            if term.norm() <= 1e-18 {
                break;
            }
        }
        sum
    } else {
        (w.exp() - 1.0) / w
    }
}

/// ∫₀¹ σ e^{wσ} dσ
fn int_sigma_exp(w: Complex64) -> Complex64 {
    if w.norm() < 1.0 {
        // Σ w^m / (m! (m+2))
        let mut pow_over_fact = Complex64::new(1.0, 0.0);
        let mut sum = Complex64::new(0.5, 0.0);
        for m in 1..60 {
            pow_over_fact = pow_over_fact * w / m as f64;
            let term = pow_over_fact / (m + 2) as f64;
            sum += term;
            if term.norm() <= 1e-18 {
                break;
            }
        }
        sum
    } else {
        (w.exp() * (w - 1.0) + 1.0) / (w * w)
    }
}

/// ∫₀ᵗ e^{at′} cos(bt′ + c) dt′.
///
/// Equal to [e^{at′}(a cos(bt′+c) + b sin(bt′+c))/(a²+b²)]₀ᵗ, evaluated as
/// Re(e^{ic}(e^{zt} − 1)/z) with z = a + ib; a = b = 0 gives t·cos c.
pub fn exact_time_integral(a: f64, b: f64, c: f64, t: f64) -> f64 {
    let z = Complex64::new(a, b);
    (Complex64::from_polar(1.0, c) * int_exp(z * t) * t).re
}

/// ∫₀ᵗ t′ e^{at′} cos(bt′ + c) dt′.
pub fn exact_time_moment(a: f64, b: f64, c: f64, t: f64) -> f64 {
    let z = Complex64::new(a, b);
    (Complex64::from_polar(1.0, c) * int_sigma_exp(z * t) * (t * t)).re
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_and_decay() {
        assert!((exact_time_integral(0.0, 0.0, 0.3, 2.0) - 2.0 * 0.3f64.cos()).abs() < 1e-15);
        for t in [0.01, 0.5, 3.0] {
            assert!((exact_time_integral(-1.0, 0.0, 0.0, t) - (1.0 - (-t).exp())).abs() < 1e-15);
        }
    }

    #[test]
    fn antiderivative_formula() {
        let (a, b, c, t) = (-0.7, 3.1, 0.4, 1.9);
        let f = |x: f64| (a * x).exp() * (a * (b * x + c).cos() + b * (b * x + c).sin()) / (a * a + b * b);
        assert!((exact_time_integral(a, b, c, t) - (f(t) - f(0.0))).abs() < 1e-14);
    }

    #[test]
    fn phi_recurrence_consistent_across_branches() {
        for w in [Complex64::new(-7.9, 0.5), Complex64::new(-8.1, 0.5), Complex64::new(-0.01, 2.0)] {
            let p = phi_functions(w, 8);
            for j in 0..8 {
                let fact: f64 = (1..=j).map(|x| x as f64).product();
                assert!((p[j] - (1.0 / fact + w * p[j + 1])).norm() < 1e-13);
            }
        }
        for w in [Complex64::new(-8.0, 1.0), Complex64::new(0.0, 8.0), Complex64::new(-5.0, -6.0)] {
            let a = phi_downward(w, 8);
            let b = phi_upward(w, 8);
            // φ₀ = e^w is small here, so the downward branch only holds it absolutely
            assert!((a[0] - b[0]).norm() < 1e-11);
            for j in 1..=8 {
                assert!((a[j] - b[j]).norm() < 1e-10 * a[j].norm(), "w = {w}, j = {j}");
            }
        }
    }

    #[test]
    fn moment_by_parts() {
        // d/dt of t·I(t) − M(t) is I(t)
        let (a, b, c) = (-2.0, 5.0, 1.0);
        let h = 1e-5;
        let g = |t: f64| t * exact_time_integral(a, b, c, t) - exact_time_moment(a, b, c, t);
        let t = 0.8;
        let fd = (g(t + h) - g(t - h)) / (2.0 * h);
        assert!((fd - exact_time_integral(a, b, c, t)).abs() < 1e-8);
    }
}
