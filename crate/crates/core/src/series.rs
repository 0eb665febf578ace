//! Truncated power and Laurent series in a local coordinate.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

/// Where a local expansion is centered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionPoint {
    /// `z_j` for `j = 0..=4`, local coordinate `u = t - z_j`.
    Finite(usize),
    /// `t = inf`, local coordinate `s = 1/t`.
    Infinity,
}

impl ExpansionPoint {
    pub fn index(self) -> usize {
        match self {
            Self::Finite(j) => j,
            Self::Infinity => 5,
        }
    }

    pub fn from_index(j: usize) -> Self {
        if j >= 5 {
            Self::Infinity
        } else {
            Self::Finite(j)
        }
    }
}

/// `sum_k coeffs[k] * u^(min_power + k)`, multiplied by the loaded local power `u^exponent_offset`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentSeries {
    pub point: ExpansionPoint,
    pub min_power: i32,
    pub coeffs: Vec<Complex64>,
    pub exponent_offset: Complex64,
}

impl LaurentSeries {
    pub fn new(point: ExpansionPoint, min_power: i32, coeffs: Vec<Complex64>) -> Self {
        Self { point, min_power, coeffs, exponent_offset: Complex64::new(0.0, 0.0) }
    }

    /// Coefficient of `u^power`; zero outside the stored window.
    pub fn coeff(&self, power: i32) -> Complex64 {
        let k = power - self.min_power;
        if k < 0 {
            return Complex64::new(0.0, 0.0);
        }
        self.coeffs.get(k as usize).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Highest power represented exactly.
    pub fn max_power(&self) -> i32 {
        self.min_power + self.coeffs.len() as i32 - 1
    }

    /// Coefficient of `u^{-1}`.
    pub fn residue(&self) -> Complex64 {
        self.coeff(-1)
    }

    /// Product, truncated to the window both factors determine.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        let coeffs = mul_truncated(&self.coeffs, &other.coeffs, n);
        Self {
            point: self.point,
            min_power: self.min_power + other.min_power,
            coeffs,
            exponent_offset: self.exponent_offset + other.exponent_offset,
        }
    }

    /// Lowest power with a coefficient above `tol` (relative to the largest stored one).
    pub fn valuation(&self, tol: f64) -> Option<i32> {
        let scale = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        self.coeffs
            .iter()
            .position(|c| c.norm() > tol * scale)
            .map(|k| self.min_power + k as i32)
    }
}

/// Cauchy product of two coefficient vectors, keeping `n` terms.
pub fn mul_truncated(a: &[Complex64], b: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for (i, ai) in a.iter().enumerate().take(n) {
        if *ai == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(n - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Coefficients of `(1 + u / w)^beta`, `n` terms.
pub fn binomial_series(w: Complex64, beta: Complex64, n: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(n);
    let mut c = Complex64::new(1.0, 0.0);
    for k in 0..n {
        out.push(c);
        c = c * (beta - k as f64) / ((k + 1) as f64 * w);
    }
    out
}

/// Coefficients of `(1 + r u)^beta` with `r` possibly zero.
pub fn binomial_series_rate(r: Complex64, beta: Complex64, n: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(n);
    let mut c = Complex64::new(1.0, 0.0);
    for k in 0..n {
        out.push(c);
        c = c * (beta - k as f64) * r / (k + 1) as f64;
    }
    out
}

/// Coefficients of `p(center + u)` for a polynomial given in ascending order.
pub fn taylor_shift(p: &[Complex64], center: Complex64) -> Vec<Complex64> {
    let mut q = p.to_vec();
    let n = q.len();
    // Repeated synthetic division.
    for k in 0..n {
        for i in (k..n - 1).rev() {
            let next = q[i + 1];
            q[i] += center * next;
        }
    }
    q
}

/// Evaluates a polynomial given in ascending order.
pub fn poly_eval(p: &[Complex64], t: Complex64) -> Complex64 {
    p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * t + c)
}

/// `p(t) * (t - root)`.
pub fn poly_mul_linear(p: &[Complex64], root: Complex64) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); p.len() + 1];
    for (i, c) in p.iter().enumerate() {
        out[i + 1] += c;
        out[i] -= c * root;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn taylor_shift_of_cubic() {
        // p(t) = 1 + 2t + 3t^2 + 4t^3 around t = 2
        let p = [c(1.0), c(2.0), c(3.0), c(4.0)];
        let q = taylor_shift(&p, c(2.0));
        for u in [0.0, 0.3, -1.1] {
            let lhs = poly_eval(&q, c(u));
            let rhs = poly_eval(&p, c(2.0 + u));
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn binomial_matches_power() {
        let coeffs = binomial_series(c(2.0), c(-0.7), 60);
        let u = 0.5;
        let sum = poly_eval(&coeffs, c(u));
        let exact = libm::pow(1.0 + u / 2.0, -0.7);
        assert!((sum.re - exact).abs() < 1e-14);
    }

    #[test]
    fn linear_factor_product() {
        let p = poly_mul_linear(&[c(1.0), c(1.0)], c(3.0));
        assert_eq!(p, alloc::vec![c(-3.0), c(-2.0), c(1.0)]);
    }
}
