//! Complex gamma function and the Lauricella `F_D` series.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::{binomial_series_rate, mul_truncated};

/// `B_{2k} / (2k (2k - 1))` for `k = 1..=10`.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];
const STIRLING_MIN_RE: f64 = 20.0;
const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_741_780_329_736_4;

/// `Gamma(s)` from the Stirling series at `Re s >= 20`, reached by the recurrence
/// `Gamma(s) = Gamma(s + n) / (s (s + 1) ... (s + n - 1))`; reflection far to the left.
pub fn gamma_fn(s: Complex64) -> Result<Complex64> {
    if s.im == 0.0 && s.re <= 0.0 && s.re == libm::round(s.re) {
        return Err(Error::Pole(s.re));
    }
    if s.re < -STIRLING_MIN_RE {
        let n = libm::round(s.re);
        let sign = if (n as i64) % 2 == 0 { 1.0 } else { -1.0 };
        let sin = ((s - n) * PI).sin() * sign;
        return Ok(Complex64::new(PI, 0.0) / (sin * gamma_fn(Complex64::new(1.0, 0.0) - s)?));
    }
    let steps = if s.re < STIRLING_MIN_RE { libm::ceil(STIRLING_MIN_RE - s.re) as usize } else { 0 };
    let mut den = Complex64::new(1.0, 0.0);
    for k in 0..steps {
        den *= s + k as f64;
    }
    Ok(ln_gamma_stirling(s + steps as f64).exp() / den)
}

fn ln_gamma_stirling(s: Complex64) -> Complex64 {
    let inv = Complex64::new(1.0, 0.0) / s;
    let inv2 = inv * inv;
    let mut corr = Complex64::new(0.0, 0.0);
    let mut p = inv;
    for c in STIRLING {
        corr += p * c;
        p *= inv2;
    }
    (s - 0.5) * s.ln() - s + HALF_LN_TWO_PI + corr
}

/// Parameters of `F_D(a, b1, b2, b3, c; z1, z2, z3)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdParams {
    pub a: Complex64,
    pub b: [Complex64; 3],
    pub c: Complex64,
}

/// Largest total degree summed before giving up.
pub const FD_MAX_DEGREE: usize = 100_000;

/// Triple series of `F_D`, summed by total degree `k`:
/// `sum_k (a)_k/(c)_k * [u^k] prod_i (1 - z_i u)^{-b_i}`,
/// stopped once a geometric majorant bounds the tail below `tol` relative.
pub fn fd_series(p: &FdParams, z: [Complex64; 3], tol: f64) -> Result<Complex64> {
    for (i, zi) in z.iter().enumerate() {
        if zi.norm() >= 1.0 {
            return Err(Error::Divergence { index: i + 1, modulus: zi.norm() });
        }
    }
    if p.c.im == 0.0 && p.c.re <= 0.0 && p.c.re == libm::round(p.c.re) {
        return Err(Error::Pole(p.c.re));
    }
    let r = z.iter().map(|zi| zi.norm()).fold(0.0, f64::max);
    if r == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let bsum: f64 = p.b.iter().map(|b| b.norm()).sum();
    let (an, cn) = (p.a.norm(), p.c.norm());

    let mut coeffs: Vec<Complex64> = Vec::new();
    let mut block = 64usize;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut poch = Complex64::new(1.0, 0.0);
    // Majorant term (|a|)_k / prod(k - |c|) * (B)_k / k! * r^k, tracked by ratios.
    let mut major = 1.0;
    let mut k = 0usize;
    loop {
        if k >= coeffs.len() {
            block = (block * 2).min(FD_MAX_DEGREE + 1);
            coeffs = degree_coefficients(&p.b, &z, block);
        }
        sum += poch * coeffs[k];
        let kf = k as f64;
        if kf > cn {
            let rho = (an + kf) / (kf - cn) * f64::max(1.0, (bsum + kf) / (kf + 1.0)) * r;
            if rho < 1.0 {
                let tail = major * rho / (1.0 - rho);
                if tail <= tol * sum.norm() {
                    return Ok(sum);
                }
            }
        }
        let next_ratio = (p.a + kf) / (p.c + kf);
        poch *= next_ratio;
        let denom = if kf + 1.0 > cn { kf + 1.0 - cn } else { (p.c + kf).norm().max(1e-300) };
        major *= (an + kf) / denom * (bsum + kf) / (kf + 1.0) * r;
        k += 1;
        if k > FD_MAX_DEGREE {
            return Err(Error::TailBound { terms: k, bound: major });
        }
    }
}

fn degree_coefficients(b: &[Complex64; 3], z: &[Complex64; 3], n: usize) -> Vec<Complex64> {
    let mut out = alloc::vec![Complex64::new(0.0, 0.0); n];
    out[0] = Complex64::new(1.0, 0.0);
    for i in 0..3 {
        let f = binomial_series_rate(-z[i], -b[i], n);
        out = mul_truncated(&out, &f, n);
    }
    out
}
