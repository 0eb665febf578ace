//! Differential forms, closed-form cohomology intersection matrices and the
//! residue (Laurent-series) intersection oracle.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{block_diag, labels, CMatrix, IntersectionMatrix, Pairing};
use crate::multivalued::{BranchConfig, BranchState};
use crate::params::{ExponentVector, TwistSpec};
use crate::series::{
    binomial_series, binomial_series_rate, mul_truncated, poly_eval, poly_mul_linear,
    taylor_shift, ExpansionPoint, LaurentSeries,
};

/// Default number of series coefficients kept by the residue engine.
pub const SERIES_ORDER: usize = 12;

const RESONANCE_TOL: f64 = 1e-8;

fn two_pi_i() -> Complex64 {
    Complex64::new(0.0, 2.0 * PI)
}

/// `scale * N(t) / prod_k (t - z_k)^{poles[k]} dt` with poles only at the finite branch points.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalForm {
    pub scale: Complex64,
    /// Numerator coefficients in ascending order.
    pub numerator: Vec<Complex64>,
    /// Pole orders at `z_0..z_4`.
    pub poles: [u32; 5],
}

impl RationalForm {
    pub fn new(scale: Complex64, numerator: Vec<Complex64>, poles: [u32; 5]) -> Self {
        Self { scale, numerator, poles }
    }

    /// `scale dt / ((t - z_i)(t - z_j))`-style forms with unit numerator.
    pub fn simple(scale: Complex64, poles: [u32; 5]) -> Self {
        Self::new(scale, vec![Complex64::new(1.0, 0.0)], poles)
    }

    pub fn zero() -> Self {
        Self::new(Complex64::new(0.0, 0.0), vec![Complex64::new(1.0, 0.0)], [0; 5])
    }

    pub fn is_zero(&self) -> bool {
        self.scale == Complex64::new(0.0, 0.0) || self.numerator.iter().all(|c| c.norm() == 0.0)
    }

    pub fn degree(&self) -> usize {
        self.numerator.iter().rposition(|c| c.norm() != 0.0).unwrap_or(0)
    }

    /// Coefficient of `dt` at `t`.
    pub fn eval(&self, t: Complex64, cfg: &BranchConfig) -> Complex64 {
        let pts = cfg.points();
        let mut den = Complex64::new(1.0, 0.0);
        for k in 0..5 {
            for _ in 0..self.poles[k] {
                den *= t - pts[k];
            }
        }
        self.scale * poly_eval(&self.numerator, t) / den
    }

    /// Multiplies by `f^2 = t(t-1) / ((t-z1)(t-z2)(t-z3))`, cancelling common factors.
    pub fn times_f_squared(&self, cfg: &BranchConfig) -> Self {
        let pts = cfg.points();
        let mut out = self.clone();
        for k in [0usize, 4] {
            if out.poles[k] > 0 {
                out.poles[k] -= 1;
            } else {
                out.numerator = poly_mul_linear(&out.numerator, pts[k]);
            }
        }
        for k in 1..4 {
            out.poles[k] += 1;
        }
        out
    }

    /// Order of the coefficient function at `point` (negative = pole), assuming the
    /// numerator does not vanish at the finite poles. At infinity this is the order of the `ds` coefficient, `s = 1/t`.
    pub fn order_at(&self, point: ExpansionPoint) -> i32 {
        match point {
            ExpansionPoint::Finite(k) => -(self.poles[k] as i32),
            ExpansionPoint::Infinity => {
                let total: u32 = self.poles.iter().sum();
                total as i32 - self.degree() as i32 - 2
            }
        }
    }

    /// Laurent expansion of the form in the local coordinate at `point`
    /// (`du` with `u = t - z_k`, or `ds` with `s = 1/t`), `n` coefficients.
    pub fn laurent_at(&self, point: ExpansionPoint, cfg: &BranchConfig, n: usize) -> LaurentSeries {
        let pts = cfg.points();
        match point {
            ExpansionPoint::Finite(k) => {
                let zk = pts[k];
                let mut coeffs = taylor_shift(&self.numerator, zk);
                coeffs.resize(n.max(coeffs.len()), Complex64::new(0.0, 0.0));
                coeffs.truncate(n);
                for (i, &m) in self.poles.iter().enumerate() {
                    if i == k || m == 0 {
                        continue;
                    }
                    let w = zk - pts[i];
                    let factor = binomial_series(w, Complex64::new(-(m as f64), 0.0), n);
                    let lead = w.powi(-(m as i32));
                    coeffs = mul_truncated(&coeffs, &factor, n).into_iter().map(|c| c * lead).collect();
                }
                let coeffs = coeffs.into_iter().map(|c| c * self.scale).collect();
                LaurentSeries::new(point, -(self.poles[k] as i32), coeffs)
            }
            ExpansionPoint::Infinity => {
                let d = self.degree();
                let mut coeffs: Vec<Complex64> = (0..n)
                    .map(|i| if i <= d { self.numerator[d - i] } else { Complex64::new(0.0, 0.0) })
                    .collect();
                let mut min_power = -(d as i32) - 2;
                for (i, &m) in self.poles.iter().enumerate() {
                    if m == 0 {
                        continue;
                    }
                    min_power += m as i32;
                    let factor = binomial_series_rate(-pts[i], Complex64::new(-(m as f64), 0.0), n);
                    coeffs = mul_truncated(&coeffs, &factor, n);
                }
                let coeffs = coeffs.into_iter().map(|c| -c * self.scale).collect();
                LaurentSeries::new(point, min_power, coeffs)
            }
        }
    }
}

/// Laurent expansion of `dlog T_eff` at `point`, `n` coefficients starting at power -1.
pub fn twist_log_derivative(
    spec: &TwistSpec,
    point: ExpansionPoint,
    cfg: &BranchConfig,
    n: usize,
) -> LaurentSeries {
    let pts = cfg.points();
    let powers: [Complex64; 5] = core::array::from_fn(|k| spec.effective(k) * 2.0);
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
    match point {
        ExpansionPoint::Finite(k) => {
            coeffs[0] = powers[k];
            for i in (0..5).filter(|&i| i != k) {
                let w = pts[k] - pts[i];
                // 1/(u + w) = (1/w) sum (-u/w)^m
                let mut term = powers[i] / w;
                for c in coeffs.iter_mut().skip(1) {
                    *c += term;
                    term *= -1.0 / w;
                }
            }
        }
        ExpansionPoint::Infinity => {
            // -sum_i p_i / s * 1/(1 - z_i s)
            for (i, p) in powers.iter().enumerate() {
                let mut zpow = Complex64::new(1.0, 0.0);
                for c in coeffs.iter_mut() {
                    *c -= p * zpow;
                    zpow *= pts[i];
                }
            }
        }
    }
    let mut s = LaurentSeries::new(point, -1, coeffs);
    s.exponent_offset = if let ExpansionPoint::Finite(k) = point { powers[k] } else { spec.effective(5) * 2.0 };
    s
}

/// Local solution `F` of `dF + F dlog T_eff = phi` at `point`, coefficients from
/// power `ord(phi) + 1` up to `max_power`.
pub fn local_primitive(
    phi: &LaurentSeries,
    omega: &LaurentSeries,
    max_power: i32,
) -> Result<LaurentSeries> {
    let alpha = omega.coeff(-1);
    let start = phi.min_power + 1;
    let len = (max_power - start + 1).max(0) as usize;
    let needed_phi = max_power - 1;
    if needed_phi > phi.max_power() || (len as i32) > omega.coeffs.len() as i32 {
        return Err(Error::Truncation { order: phi.coeffs.len(), tail: f64::INFINITY });
    }
    let mut f = vec![Complex64::new(0.0, 0.0); len];
    for idx in 0..len {
        let power = start + idx as i32;
        // (power + alpha) f_power = phi_{power-1} - sum_{k>=0} w_k f_{power-1-k}
        let mut rhs = phi.coeff(power - 1);
        for k in 0..idx {
            let w = omega.coeff(k as i32);
            rhs -= w * f[idx - 1 - k];
        }
        let denom = alpha + power as f64;
        if denom.norm() < RESONANCE_TOL {
            return Err(Error::Resonance { point: phi.point.index(), exponent: alpha.re });
        }
        f[idx] = rhs / denom;
    }
    Ok(LaurentSeries::new(phi.point, start, f))
}

/// `<phi, psi>_ch = 2 pi i sum_p Res_p(F_p psi)` where `F_p` is the local primitive of
/// `phi` for the twist `spec` and `psi` belongs to the dual twist.
pub fn residue_intersection(
    phi: &RationalForm,
    psi: &RationalForm,
    spec: &TwistSpec,
    cfg: &BranchConfig,
) -> Result<Complex64> {
    if phi.is_zero() || psi.is_zero() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut total = Complex64::new(0.0, 0.0);
    for p in 0..6 {
        let point = ExpansionPoint::from_index(p);
        let psi_order = psi.order_at(point);
        let phi_order = phi.order_at(point);
        // Res(F psi) needs F up to power -psi_order - 1; F starts at phi_order + 1.
        let max_power = -psi_order - 1;
        if max_power < phi_order + 1 {
            continue;
        }
        let n = SERIES_ORDER.max((max_power - phi_order + 4) as usize);
        let phi_s = phi.laurent_at(point, cfg, n);
        let psi_s = psi.laurent_at(point, cfg, n);
        let omega = twist_log_derivative(spec, point, cfg, n);
        let f = local_primitive(&phi_s, &omega, max_power)?;
        for a in f.min_power..=f.max_power() {
            total += f.coeff(a) * psi_s.coeff(-1 - a);
        }
    }
    Ok(two_pi_i() * total)
}

/// Kind of a form descriptor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormKind {
    Genus0Log,
    Genus2,
}

/// A basis form: `f^{f_power} * base` with `base` a rational form pulled back from the line.
#[derive(Debug, Clone, PartialEq)]
pub struct FormDescriptor {
    pub kind: FormKind,
    pub index: usize,
    pub base: RationalForm,
    pub f_power: u8,
    /// Eigenvalue under the hyperelliptic involution (`+1` for genus-0 forms).
    pub eigenvalue: i8,
}

impl FormDescriptor {
    pub fn label(&self) -> alloc::string::String {
        alloc::format!("phi{}", self.index)
    }

    /// Value of the coefficient of `dx` at a point of the curve.
    pub fn eval(&self, state: &BranchState, cfg: &BranchConfig) -> Complex64 {
        let mut v = self.base.eval(state.x, cfg);
        for _ in 0..self.f_power {
            v *= state.f();
        }
        v
    }

    /// Order of the form in a local coordinate of the compact curve at `P_p`
    /// (all six points are ramification points: `x - z = w^2`, or `x = w^{-2}` at infinity).
    pub fn curve_order(&self, p: usize, cfg: &BranchConfig) -> Result<i32> {
        let point = ExpansionPoint::from_index(p);
        let n = SERIES_ORDER;
        let base = self.base.laurent_at(point, cfg, n);
        let base_order = base.valuation(1e-12).ok_or(Error::Truncation { order: n, tail: 0.0 })?;
        // base_order is the order of the dt/ds coefficient; convert via t - z = w^2 (dt = 2w dw)
        // or s = w^2 (ds = 2w dw).
        let mut order = 2 * base_order + 1;
        if self.f_power > 0 {
            let f_order = match point {
                ExpansionPoint::Finite(k) if k == 0 || k == 4 => 1,
                ExpansionPoint::Finite(_) => -1,
                ExpansionPoint::Infinity => 1,
            };
            order += f_order * self.f_power as i32;
        }
        Ok(order)
    }
}

/// `phi1 = dt/(t-1)`, `phi2 = dt/(t(t-1))`, `phi3 = (1-z1)dt/((t-1)(t-z1))`,
/// `phi4 = (1-z2)dt/((t-1)(t-z2))`.
pub fn genus0_rational_forms(cfg: &BranchConfig) -> [RationalForm; 4] {
    let one = Complex64::new(1.0, 0.0);
    [
        RationalForm::simple(one, [0, 0, 0, 0, 1]),
        RationalForm::simple(one, [1, 0, 0, 0, 1]),
        RationalForm::simple(one - cfg.z(1), [0, 1, 0, 0, 1]),
        RationalForm::simple(one - cfg.z(2), [0, 0, 1, 0, 1]),
    ]
}

pub fn genus0_forms(cfg: &BranchConfig) -> [FormDescriptor; 4] {
    let bases = genus0_rational_forms(cfg);
    core::array::from_fn(|i| FormDescriptor {
        kind: FormKind::Genus0Log,
        index: i + 1,
        base: bases[i].clone(),
        f_power: 0,
        eigenvalue: 1,
    })
}

/// `phi1..phi4` pulled back to the curve and `phi_{i+4} = f phi_i`
/// (`x dx/y`, `dx/y`, `(1-z1) x dx/((x-z1)y)`, `(1-z2) x dx/((x-z2)y)`).
pub fn genus2_forms(cfg: &BranchConfig) -> [FormDescriptor; 8] {
    let bases = genus0_rational_forms(cfg);
    core::array::from_fn(|i| FormDescriptor {
        kind: FormKind::Genus2,
        index: i + 1,
        base: bases[i % 4].clone(),
        f_power: u8::from(i >= 4),
        eigenvalue: if i < 4 { 1 } else { -1 },
    })
}

/// Closed-form cohomology intersection matrix on the line for the twist `spec`:
/// `2 pi i (1/(2e4) + delta_ij / (2 d_i))` with `d = (e5, e0, e1, e2)`.
pub fn intersect_y_cohomology(spec: &TwistSpec) -> Result<IntersectionMatrix> {
    crate::params::validate_admissible(&spec.effective_vector())?;
    let e = spec.effective_all();
    let d = [e[5], e[0], e[1], e[2]];
    let common = Complex64::new(1.0, 0.0) / (e[4] * 2.0);
    let m = CMatrix::from_fn(4, 4, |i, j| {
        let diag = if i == j { Complex64::new(1.0, 0.0) / (d[i] * 2.0) } else { Complex64::new(0.0, 0.0) };
        two_pi_i() * (common + diag)
    });
    let pairing = if spec.f_twist != 0 { Pairing::Ch0F } else { Pairing::Ch0 };
    Ok(IntersectionMatrix::new(m, labels(&["phi1", "phi2", "phi3", "phi4"]), labels(&["phi1", "phi2", "phi3", "phi4"]), pairing))
}

/// `C(1)` without the `2 pi i` factor.
pub fn c_plus_block(v: &ExponentVector) -> CMatrix {
    let c = v.as_array();
    let d = [c[5], c[0], c[1], c[2]];
    CMatrix::from_fn(4, 4, |i, j| {
        if i == j {
            (c[4] + d[i]) / (c[4] * d[i])
        } else {
            Complex64::new(1.0, 0.0) / c[4]
        }
    })
}

/// `C(-1)` without the `2 pi i` factor, entry by entry as in the closed form.
pub fn c_minus_block(v: &ExponentVector, cfg: &BranchConfig) -> CMatrix {
    let c = v.as_array();
    let (z1, z2, z3) = (cfg.z(1), cfg.z(2), cfg.z(3));
    let one = Complex64::new(1.0, 0.0);
    let p1 = c[1] * 2.0 + 0.5;
    let m1 = c[1] * 2.0 - 0.5;
    let p2 = c[2] * 2.0 + 0.5;
    let m2 = c[2] * 2.0 - 0.5;
    let c33 = (one - z1) * z1 / (m1 * p1 * (z1 - z3))
        * ((c[0] * 2.0 - c[1] * 2.0) / z1
            + (c[2] * 2.0 + c[1] * 2.0) / (z1 - z2)
            + (c[3] * 2.0 + c[1] * 2.0) / (z1 - z3)
            + (c[1] * 2.0 + c[4] * 2.0) / (z1 - one));
    let c34 = -one / (z1 - z2) * (z1 * (one - z2) / (m1 * (z1 - z3)) + z2 * (one - z1) / (p2 * (z2 - z3)));
    let c43 = -one / (z1 - z2) * (z1 * (one - z2) / (p1 * (z1 - z3)) + z2 * (one - z1) / (m2 * (z2 - z3)));
    let c44 = -(one - z2) * z2 / (m2 * p2 * (z2 - z3))
        * ((c[0] * 2.0 - c[2] * 2.0) / z2
            + (c[1] * 2.0 + c[2] * 2.0) / (z2 - z1)
            + (c[3] * 2.0 + c[2] * 2.0) / (z2 - z3)
            + (c[2] * 2.0 + c[4] * 2.0) / (z2 - one));
    let zero = Complex64::new(0.0, 0.0);
    let rows = [
        [zero, zero, -z1 / (p1 * (z1 - z3)), z2 / (p2 * (z2 - z3))],
        [zero, zero, -one / (p1 * (z1 - z3)), one / (p2 * (z2 - z3))],
        [-z1 / (m1 * (z1 - z3)), -one / (m1 * (z1 - z3)), c33, c34],
        [z2 / (m2 * (z2 - z3)), one / (m2 * (z2 - z3)), c43, c44],
    ];
    let pre = Complex64::new(2.0, 0.0) / (z1 - z2);
    CMatrix::from_fn(4, 4, |i, j| pre * rows[i][j])
}

/// The 8x8 intersection matrix of `phi1..phi8`: `2 pi i diag(C(1), C(-1))`.
pub fn build_c(v: &ExponentVector, cfg: &BranchConfig) -> Result<IntersectionMatrix> {
    crate::params::validate_admissible(v)?;
    let m = block_diag(&c_plus_block(v), &c_minus_block(v, cfg)) * two_pi_i();
    let names = labels(&["phi1", "phi2", "phi3", "phi4", "phi5", "phi6", "phi7", "phi8"]);
    Ok(IntersectionMatrix::new(m, names.clone(), names, Pairing::Ch))
}

/// `det C(1) = -c3 / (c0 c1 c2 c4 c5)`.
pub fn det_c_plus_closed_form(v: &ExponentVector) -> Complex64 {
    let c = v.as_array();
    -c[3] / (c[0] * c[1] * c[2] * c[4] * c[5])
}

/// `det C(-1) = 2^8 / ((z1-z2)^2 (z1-z3)^2 (z2-z3)^2 (4c1-1)(4c1+1)(4c2-1)(4c2+1))`.
pub fn det_c_minus_closed_form(v: &ExponentVector, cfg: &BranchConfig) -> Complex64 {
    let c = v.as_array();
    let (z1, z2, z3) = (cfg.z(1), cfg.z(2), cfg.z(3));
    let d = (z1 - z2).powi(2) * (z1 - z3).powi(2) * (z2 - z3).powi(2)
        * (c[1] * 4.0 - 1.0)
        * (c[1] * 4.0 + 1.0)
        * (c[2] * 4.0 - 1.0)
        * (c[2] * 4.0 + 1.0);
    Complex64::new(256.0, 0.0) / d
}

/// Residue-oracle assembly of `C(-1)` (without `2 pi i`):
/// `2 <phi_i, f^2 phi_j>_{ch,0,f} / (2 pi i)`.
pub fn c_minus_block_from_residues(v: &ExponentVector, cfg: &BranchConfig) -> Result<CMatrix> {
    let spec = TwistSpec::f_twisted(*v);
    let forms = genus0_rational_forms(cfg);
    let mut out = CMatrix::zeros(4, 4);
    for i in 0..4 {
        for j in 0..4 {
            let psi = forms[j].times_f_squared(cfg);
            out[(i, j)] = residue_intersection(&forms[i], &psi, &spec, cfg)? * 2.0 / two_pi_i();
        }
    }
    Ok(out)
}

/// Residue-oracle version of the 4x4 line matrix for `spec` (including `2 pi i`).
pub fn y_cohomology_from_residues(spec: &TwistSpec, cfg: &BranchConfig) -> Result<CMatrix> {
    let forms = genus0_rational_forms(cfg);
    let mut out = CMatrix::zeros(4, 4);
    for i in 0..4 {
        for j in 0..4 {
            out[(i, j)] = residue_intersection(&forms[i], &forms[j], spec, cfg)?;
        }
    }
    Ok(out)
}
