//! Gauss–Legendre and Gauss–Jacobi rules and an adaptive Gauss–Legendre integrator.

use alloc::vec::Vec;
use core::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    /// `sum_i w_i f(a + (b - a)(x_i + 1)/2) * (b - a)/2`.
    pub fn integrate<F: FnMut(f64) -> Complex64>(&self, a: f64, b: f64, mut f: F) -> Complex64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut s = Complex64::new(0.0, 0.0);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            s += f(mid + half * x) * *w;
        }
        s * half
    }
}

/// Gauss–Legendre rule with `n` points, nodes by Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> Rule {
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = libm::cos(PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        nodes.push(x);
        weights.push(2.0 / ((1.0 - x * x) * dp * dp));
    }
    Rule { nodes, weights }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Gauss–Jacobi rule for the weight `(1 - x)^alpha (1 + x)^beta` on `[-1, 1]` (Golub–Welsch).
pub fn gauss_jacobi(n: usize, alpha: f64, beta: f64) -> Result<Rule> {
    if !(alpha > -1.0 && beta > -1.0) {
        return Err(Error::Config(alloc::format!(
            "Gauss-Jacobi needs exponents > -1, got ({alpha}, {beta})"
        )));
    }
    let ab = alpha + beta;
    let mut jm = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        let kf = k as f64;
        let diag = if k == 0 {
            (beta - alpha) / (ab + 2.0)
        } else {
            (beta * beta - alpha * alpha) / ((2.0 * kf + ab) * (2.0 * kf + ab + 2.0))
        };
        jm[(k, k)] = diag;
        if k + 1 < n {
            let m = kf + 1.0;
            let s = 2.0 * m + ab;
            let b2 = if k == 0 {
                4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab))
            } else {
                4.0 * m * (m + alpha) * (m + beta) * (m + ab) / (s * s * (s + 1.0) * (s - 1.0))
            };
            let b = libm::sqrt(b2);
            jm[(k, k + 1)] = b;
            jm[(k + 1, k)] = b;
        }
    }
    let mu0 = libm::pow(2.0, ab + 1.0) * libm::tgamma(alpha + 1.0) * libm::tgamma(beta + 1.0)
        / libm::tgamma(ab + 2.0);
    let eig = SymmetricEigen::new(jm);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            (eig.eigenvalues[i], mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(Rule { nodes: pairs.iter().map(|p| p.0).collect(), weights: pairs.iter().map(|p| p.1).collect() })
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub error: f64,
    pub evaluations: usize,
}

/// Adaptive bisection with a fixed Gauss–Legendre panel rule.
pub struct Adaptive {
    rule: Rule,
    pub rel_tol: f64,
    pub max_depth: u32,
    pub max_evaluations: usize,
}

impl Adaptive {
    pub fn new(rel_tol: f64) -> Self {
        Self { rule: gauss_legendre(24), rel_tol, max_depth: 30, max_evaluations: 2_000_000 }
    }

    pub fn integrate<F: FnMut(f64) -> Complex64>(&self, a: f64, b: f64, mut f: F) -> Estimate {
        let mut evals = 0usize;
        let whole = self.rule.integrate(a, b, &mut f);
        evals += self.rule.nodes.len();
        // Scale for the absolute target: a coarse magnitude of the integral.
        let scale = whole.norm().max(1e-300);
        let mut stack: Vec<(f64, f64, Complex64, u32)> = alloc::vec![(a, b, whole, 0)];
        let mut total = Complex64::new(0.0, 0.0);
        let mut error = 0.0;
        while let Some((lo, hi, est, depth)) = stack.pop() {
            let mid = 0.5 * (lo + hi);
            let left = self.rule.integrate(lo, mid, &mut f);
            let right = self.rule.integrate(mid, hi, &mut f);
            evals += 2 * self.rule.nodes.len();
            let refined = left + right;
            let diff = (refined - est).norm();
            let width = (hi - lo) / (b - a).abs().max(1e-300);
            let target = self.rel_tol * scale * width.max(1e-6);
            if diff <= target || depth >= self.max_depth || evals >= self.max_evaluations {
                total += refined;
                error += diff;
            } else {
                stack.push((lo, mid, left, depth + 1));
                stack.push((mid, hi, right, depth + 1));
            }
        }
        Estimate { value: total, error, evaluations: evals }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_integrates_polynomials() {
        let r = gauss_legendre(10);
        let s: f64 = r.weights.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
        let v = r.integrate(0.0, 1.0, |x| Complex64::new(libm::pow(x, 19.0), 0.0));
        assert!((v.re - 1.0 / 20.0).abs() < 1e-15);
    }

    #[test]
    fn jacobi_moments() {
        let (a, b) = (-0.4, 0.3);
        let r = gauss_jacobi(20, a, b).unwrap();
        // int (1-x)^a (1+x)^b x dx = mu0 * (b - a)/(a + b + 2)
        let mu0 = libm::pow(2.0, a + b + 1.0) * libm::tgamma(a + 1.0) * libm::tgamma(b + 1.0) / libm::tgamma(a + b + 2.0);
        let s0: f64 = r.weights.iter().sum();
        let s1: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| x * w).sum();
        assert!((s0 - mu0).abs() < 1e-13 * mu0);
        assert!((s1 - mu0 * (b - a) / (a + b + 2.0)).abs() < 1e-13);
    }

    #[test]
    fn jacobi_half_sum_case() {
        // alpha + beta = -1 hits the special first off-diagonal entry.
        let r = gauss_jacobi(12, -0.5, -0.5).unwrap();
        let s0: f64 = r.weights.iter().sum();
        assert!((s0 - PI).abs() < 1e-13);
    }

    #[test]
    fn adaptive_handles_peaked_integrand() {
        let ad = Adaptive::new(1e-13);
        let est = ad.integrate(-1.0, 1.0, |x| Complex64::new(1.0 / (1e-4 + x * x), 0.0));
        let exact = 2.0 * libm::atan(1.0 / 1e-2) / 1e-2;
        assert!((est.value.re - exact).abs() < 1e-10 * exact);
    }
}
