//! Regularized interval periods, period matrices and the `F_D` integral.
//!
//! An interval `(z_j, z_{j+1})` is split into two endpoint pieces and a centre. On an
//! endpoint piece the integrand is `w^alpha h(w)` with `h` analytic; its regularized
//! integral over `[0, delta]` is the termwise continuation `sum h_n delta^{alpha+n+1} / (alpha+n+1)`.
//! The centre is integrated by adaptive Gauss–Legendre. The interval `(1, inf)` uses `s = 1/t`
//! near infinity.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::cohomology::{FormDescriptor, RationalForm};
use crate::error::{Error, Result};
use crate::homology::{expand_in_pm_basis, pm_basis_symbols, CycleClass, CycleSymbol, Eigen};
use crate::matrix::CMatrix;
use crate::multivalued::{interval_phase_factor, BranchConfig};
use crate::params::{unit_phase, TwistSpec};
use crate::quadrature::{gauss_jacobi, Adaptive};
use crate::series::{binomial_series, binomial_series_rate, mul_truncated, ExpansionPoint};
use crate::special::{fd_series, gamma_fn, FdParams};

const RESONANCE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadMethod {
    /// Endpoint series plus adaptive central quadrature (handles divergent endpoints).
    EndpointSeries,
    /// Gauss–Jacobi with the endpoint powers as weight; convergent real exponents only.
    JacobiWeighted,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub method: QuadMethod,
    pub tol: f64,
    pub max_nodes: usize,
    /// Endpoint piece length as a fraction of the distance to the nearest other branch point.
    pub split_fraction: f64,
    pub series_terms: usize,
    pub jacobi_nodes: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            method: QuadMethod::EndpointSeries,
            tol: 1e-12,
            max_nodes: 2_000_000,
            split_fraction: 0.1,
            series_terms: 40,
            jacobi_nodes: 80,
        }
    }
}

impl QuadratureSpec {
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_method(mut self, method: QuadMethod) -> Self {
        self.method = method;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 1e-15 && self.tol < 1e-3) {
            return Err(Error::Config(alloc::format!("quadrature tolerance {} outside (1e-15, 1e-3)", self.tol)));
        }
        if !(self.split_fraction > 0.0 && self.split_fraction < 0.5) {
            return Err(Error::Config(alloc::format!("split fraction {} outside (0, 0.5)", self.split_fraction)));
        }
        if self.series_terms < 4 || self.jacobi_nodes < 2 {
            return Err(Error::Config("too few series terms or quadrature nodes".into()));
        }
        Ok(())
    }
}

/// A value with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodValue {
    pub value: Complex64,
    pub error: f64,
}

impl PeriodValue {
    fn zero() -> Self {
        Self { value: Complex64::new(0.0, 0.0), error: 0.0 }
    }

    fn add(self, other: Self) -> Self {
        Self { value: self.value + other.value, error: self.error + other.error }
    }

    fn scale(self, k: Complex64) -> Self {
        Self { value: self.value * k, error: self.error * k.norm() }
    }
}

/// The loaded integrand `phase * prod |t - z_k|^{p_k} * R(t)` on a real interval.
struct Integrand<'a> {
    form: &'a RationalForm,
    cfg: &'a BranchConfig,
    pts: [f64; 5],
    powers: [Complex64; 5],
    infinity_power: Complex64,
    phase: Complex64,
}

impl<'a> Integrand<'a> {
    fn new(j: usize, form: &'a RationalForm, spec: &TwistSpec, cfg: &'a BranchConfig) -> Self {
        Self {
            form,
            cfg,
            pts: cfg.real_points(),
            powers: core::array::from_fn(|k| spec.effective(k) * 2.0),
            infinity_power: spec.effective(5) * 2.0,
            phase: interval_phase_factor(j, spec),
        }
    }

    fn modulus_power(&self, t: f64) -> Complex64 {
        let mut log = Complex64::new(0.0, 0.0);
        for k in 0..5 {
            log += self.powers[k] * libm::log((t - self.pts[k]).abs());
        }
        log.exp()
    }

    fn eval(&self, t: f64) -> Complex64 {
        self.phase * self.modulus_power(t) * self.form.eval(Complex64::new(t, 0.0), self.cfg)
    }

    /// Local exponent of the full integrand at an endpoint.
    fn local_exponent(&self, point: ExpansionPoint) -> Complex64 {
        let order = match point {
            ExpansionPoint::Finite(k) => -(self.form.poles[k] as i32),
            ExpansionPoint::Infinity => self.form.order_at(ExpansionPoint::Infinity),
        };
        let p = match point {
            ExpansionPoint::Finite(k) => self.powers[k],
            ExpansionPoint::Infinity => self.infinity_power,
        };
        p + order as f64
    }

    /// Taylor coefficients of the analytic factor `h` at an endpoint, with the exponent `alpha`.
    /// For a finite point the local variable is `w >= 0` with `t = z_k + sigma w`; at infinity it
    /// is `s = 1/t` and the integrand is `F(1/s) / s^2`.
    fn endpoint_expansion(&self, point: ExpansionPoint, sigma: f64, n: usize) -> (Vec<Complex64>, Complex64) {
        let laurent = self.form.laurent_at(point, self.cfg, n);
        match point {
            ExpansionPoint::Finite(k) => {
                let zk = self.pts[k];
                let mut factor = alloc::vec![Complex64::new(0.0, 0.0); n];
                factor[0] = Complex64::new(1.0, 0.0);
                let mut lead = Complex64::new(0.0, 0.0);
                for i in (0..5).filter(|&i| i != k) {
                    let d = zk - self.pts[i];
                    lead += self.powers[i] * libm::log(d.abs());
                    let b = binomial_series(Complex64::new(sigma * d, 0.0), self.powers[i], n);
                    factor = mul_truncated(&factor, &b, n);
                }
                let rational: Vec<Complex64> = laurent
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(m, c)| {
                        let power = laurent.min_power + m as i32;
                        if sigma < 0.0 && power.rem_euclid(2) == 1 {
                            -c
                        } else {
                            *c
                        }
                    })
                    .collect();
                let h = mul_truncated(&factor, &rational, n);
                let scale = self.phase * lead.exp();
                (h.into_iter().map(|c| c * scale).collect(), self.powers[k] + laurent.min_power as f64)
            }
            ExpansionPoint::Infinity => {
                let mut factor = alloc::vec![Complex64::new(0.0, 0.0); n];
                factor[0] = Complex64::new(1.0, 0.0);
                for i in 0..5 {
                    let b = binomial_series_rate(Complex64::new(-self.pts[i], 0.0), self.powers[i], n);
                    factor = mul_truncated(&factor, &b, n);
                }
                let h = mul_truncated(&factor, &laurent.coeffs, n);
                (h.into_iter().map(|c| -c * self.phase).collect(), self.infinity_power + laurent.min_power as f64)
            }
        }
    }

    /// Direct evaluation of the analytic factor at a complex local coordinate `w`.
    fn analytic_factor(&self, point: ExpansionPoint, sigma: f64, w: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        match point {
            ExpansionPoint::Finite(k) => {
                let zk = self.pts[k];
                let mut v = self.phase;
                for i in (0..5).filter(|&i| i != k) {
                    let d = zk - self.pts[i];
                    let ratio = one + w * sigma / d;
                    v *= (self.powers[i] * libm::log(d.abs()) + self.powers[i] * ratio.ln()).exp();
                }
                let t = Complex64::new(zk, 0.0) + w * sigma;
                // Strip the integer pole order so the remaining factor is analytic at w = 0.
                let m = self.form.poles[k] as i32;
                v * self.form.eval(t, self.cfg) * w.powi(m)
            }
            ExpansionPoint::Infinity => {
                let mut v = self.phase;
                for i in 0..5 {
                    v *= (self.powers[i] * (one - w * self.pts[i]).ln()).exp();
                }
                let t = one / w;
                let order = self.form.order_at(ExpansionPoint::Infinity);
                // F(1/s)/s^2 = s^{p5} prod(1 - z s)^{p} R(1/s) / s^2
                v * self.form.eval(t, self.cfg) / (w * w) * w.powi(-order)
            }
        }
    }
}

fn endpoint_series_integral(h: &[Complex64], alpha: Complex64, delta: f64, point: usize) -> Result<PeriodValue> {
    let ln_delta = libm::log(delta);
    let mut total = Complex64::new(0.0, 0.0);
    let mut tail = 0.0;
    let n = h.len();
    for (k, hk) in h.iter().enumerate() {
        let e = alpha + (k + 1) as f64;
        if e.norm() < RESONANCE_TOL {
            return Err(Error::Resonance { point, exponent: alpha.re });
        }
        let term = hk * (e * ln_delta).exp() / e;
        total += term;
        if k + 2 >= n {
            tail += term.norm();
        }
    }
    Ok(PeriodValue { value: total, error: tail })
}

struct Layout {
    left: (ExpansionPoint, f64),
    right: (ExpansionPoint, f64),
    centre: (f64, f64),
}

fn layout(j: usize, cfg: &BranchConfig, q: &QuadratureSpec) -> Layout {
    let pts = cfg.real_points();
    let dl = q.split_fraction * cfg.isolation(j);
    if j < 4 {
        let dr = q.split_fraction * cfg.isolation(j + 1);
        Layout {
            left: (ExpansionPoint::Finite(j), dl),
            right: (ExpansionPoint::Finite(j + 1), dr),
            centre: (pts[j] + dl, pts[j + 1] - dr),
        }
    } else {
        let ds = q.split_fraction / cfg.max_modulus();
        Layout { left: (ExpansionPoint::Finite(4), dl), right: (ExpansionPoint::Infinity, ds), centre: (1.0 + dl, 1.0 / ds) }
    }
}

fn centre_integral(f: &Integrand, a: f64, b: f64, q: &QuadratureSpec) -> Result<PeriodValue> {
    let mut adaptive = Adaptive::new(q.tol * 0.1);
    adaptive.max_evaluations = q.max_nodes;
    let est = adaptive.integrate(a, b, |t| f.eval(t));
    Ok(PeriodValue { value: est.value, error: est.error })
}

fn check_inputs(j: usize, spec: &TwistSpec, cfg: &BranchConfig, q: &QuadratureSpec) -> Result<()> {
    check_shape(j, cfg, q)?;
    crate::params::validate_admissible(&spec.effective_vector())
}

fn check_shape(j: usize, cfg: &BranchConfig, q: &QuadratureSpec) -> Result<()> {
    if j > 4 {
        return Err(Error::Config(alloc::format!("interval index {j} out of range")));
    }
    cfg.require_real_ordered()?;
    q.validate()
}

fn finish(total: PeriodValue, q: &QuadratureSpec) -> Result<PeriodValue> {
    let scale = total.value.norm();
    if total.error > q.tol * scale.max(1e-300) && total.error > 1e-280 {
        return Err(Error::Tolerance { tolerance: q.tol, estimate: total.error / scale.max(1e-300) });
    }
    Ok(total)
}

/// Regularized period of `T_eff * form` over the lift of `(z_j, z_{j+1})` with the branch
/// fixed by continuation through the lower half-plane.
pub fn interval_period(
    j: usize,
    form: &RationalForm,
    spec: &TwistSpec,
    cfg: &BranchConfig,
    q: &QuadratureSpec,
) -> Result<PeriodValue> {
    check_inputs(j, spec, cfg, q)?;
    if form.is_zero() {
        return Ok(PeriodValue::zero());
    }
    match q.method {
        QuadMethod::EndpointSeries => series_route(j, form, spec, cfg, q),
        QuadMethod::JacobiWeighted => jacobi_route(j, form, spec, cfg, q),
    }
}

fn series_route(j: usize, form: &RationalForm, spec: &TwistSpec, cfg: &BranchConfig, q: &QuadratureSpec) -> Result<PeriodValue> {
    let f = Integrand::new(j, form, spec, cfg);
    let lay = layout(j, cfg, q);
    let (lp, dl) = lay.left;
    let (h, alpha) = f.endpoint_expansion(lp, 1.0, q.series_terms);
    let left = endpoint_series_integral(&h, alpha, dl, lp.index())?;
    let (rp, dr) = lay.right;
    let (h, alpha) = f.endpoint_expansion(rp, -1.0, q.series_terms);
    let right = endpoint_series_integral(&h, alpha, dr, rp.index())?;
    let centre = centre_integral(&f, lay.centre.0, lay.centre.1, q)?;
    finish(left.add(right).add(centre), q)
}

fn real_exponent(a: Complex64) -> Result<f64> {
    if a.im.abs() > 1e-15 {
        return Err(Error::Config("Gauss-Jacobi route needs real exponents".into()));
    }
    Ok(a.re)
}

fn jacobi_route(j: usize, form: &RationalForm, spec: &TwistSpec, cfg: &BranchConfig, q: &QuadratureSpec) -> Result<PeriodValue> {
    let f = Integrand::new(j, form, spec, cfg);
    let pts = cfg.real_points();
    let n = q.jacobi_nodes;
    if j < 4 {
        let b = real_exponent(f.local_exponent(ExpansionPoint::Finite(j)))?;
        let a = real_exponent(f.local_exponent(ExpansionPoint::Finite(j + 1)))?;
        let rule = gauss_jacobi(n, a, b)?;
        let half = 0.5 * (pts[j + 1] - pts[j]);
        let mid = 0.5 * (pts[j + 1] + pts[j]);
        let mut s = Complex64::new(0.0, 0.0);
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            let t = mid + half * x;
            let weight = libm::pow(t - pts[j], b) * libm::pow(pts[j + 1] - t, a);
            s += f.eval(t) / weight * *w;
        }
        let value = s * libm::pow(half, a + b + 1.0);
        let coarse = jacobi_coarse(&f, j, a, b, n / 2)?;
        Ok(PeriodValue { value, error: (value - coarse).norm() })
    } else {
        let b = real_exponent(f.local_exponent(ExpansionPoint::Infinity))?;
        let a = real_exponent(f.local_exponent(ExpansionPoint::Finite(4)))?;
        let value = jacobi_infinity(&f, a, b, n)?;
        let coarse = jacobi_infinity(&f, a, b, n / 2)?;
        Ok(PeriodValue { value, error: (value - coarse).norm() })
    }
}

fn jacobi_coarse(f: &Integrand, j: usize, a: f64, b: f64, n: usize) -> Result<Complex64> {
    let rule = gauss_jacobi(n, a, b)?;
    let half = 0.5 * (f.pts[j + 1] - f.pts[j]);
    let mid = 0.5 * (f.pts[j + 1] + f.pts[j]);
    let mut s = Complex64::new(0.0, 0.0);
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        let t = mid + half * x;
        let weight = libm::pow(t - f.pts[j], b) * libm::pow(f.pts[j + 1] - t, a);
        s += f.eval(t) / weight * *w;
    }
    Ok(s * libm::pow(half, a + b + 1.0))
}

fn jacobi_infinity(f: &Integrand, a: f64, b: f64, n: usize) -> Result<Complex64> {
    // t = 1/s, s = (1 + x)/2; weight s^b (1 - s)^a.
    let rule = gauss_jacobi(n, a, b)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        let s = 0.5 * (1.0 + x);
        let g = f.eval(1.0 / s) / (s * s);
        sum += g / (libm::pow(s, b) * libm::pow(1.0 - s, a)) * *w;
    }
    Ok(sum * libm::pow(2.0, -a - b - 1.0))
}

/// Cross-check route: each endpoint piece is replaced by a loop of radius `eps` around the
/// endpoint divided by `e(p) - 1` (`p` the twist exponent there) plus the straight segment
/// `[eps, delta]`. The loop integrand is evaluated directly, without series.
pub fn circle_regularized_interval(
    j: usize,
    form: &RationalForm,
    spec: &TwistSpec,
    cfg: &BranchConfig,
    q: &QuadratureSpec,
) -> Result<PeriodValue> {
    check_inputs(j, spec, cfg, q)?;
    if form.is_zero() {
        return Ok(PeriodValue::zero());
    }
    let f = Integrand::new(j, form, spec, cfg);
    let lay = layout(j, cfg, q);
    let left = circle_piece(&f, lay.left.0, 1.0, lay.left.1, q)?;
    let right = circle_piece(&f, lay.right.0, -1.0, lay.right.1, q)?;
    let centre = centre_integral(&f, lay.centre.0, lay.centre.1, q)?;
    finish(left.add(right).add(centre), q)
}

fn circle_piece(f: &Integrand, point: ExpansionPoint, sigma: f64, delta: f64, q: &QuadratureSpec) -> Result<PeriodValue> {
    let p = match point {
        ExpansionPoint::Finite(k) => f.powers[k],
        ExpansionPoint::Infinity => f.infinity_power,
    };
    let alpha = f.local_exponent(point);
    let monodromy = unit_phase(p) - 1.0;
    if monodromy.norm() < RESONANCE_TOL {
        return Err(Error::Resonance { point: point.index(), exponent: p.re });
    }
    let eps = 0.5 * delta;
    let ln_eps = libm::log(eps);
    let mut adaptive = Adaptive::new(q.tol * 0.1);
    adaptive.max_evaluations = q.max_nodes;
    // w = eps e^{i theta}; w^alpha continued along the loop, dw = i w dtheta.
    let lp = adaptive.integrate(0.0, 2.0 * PI, |theta| {
        let w = Complex64::from_polar(eps, theta);
        let w_alpha = (alpha * Complex64::new(ln_eps, theta)).exp();
        w_alpha * f.analytic_factor(point, sigma, w) * Complex64::new(0.0, 1.0) * w
    });
    let seg = adaptive.integrate(eps, delta, |w| {
        let wc = Complex64::new(w, 0.0);
        (alpha * libm::log(w)).exp() * f.analytic_factor(point, sigma, wc)
    });
    Ok(PeriodValue { value: lp.value / monodromy + seg.value, error: lp.error / monodromy.norm() + seg.error })
}

/// Which sheet of `y` a lifted interval is evaluated on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sheet {
    /// The branch fixed by the lower half-plane rule.
    Principal,
    /// The image under the involution `y -> -y`.
    Flipped,
}

/// Period of a basis form over the lift of `(z_j, z_{j+1})`. A form `f^k phi` is integrated as
/// `phi` against `T_eff f^k`, so the `f` factor rides on the twist and its branch.
pub fn quad_regularized_interval_on_sheet(
    j: usize,
    phi: &FormDescriptor,
    spec: &TwistSpec,
    cfg: &BranchConfig,
    q: &QuadratureSpec,
    sheet: Sheet,
) -> Result<PeriodValue> {
    let twisted = spec.with_f_twist(spec.f_twist + phi.f_power as i8);
    let v = interval_period(j, &phi.base, &twisted, cfg, q)?;
    let flip = sheet == Sheet::Flipped && phi.f_power % 2 == 1;
    Ok(if flip { v.scale(Complex64::new(-1.0, 0.0)) } else { v })
}

pub fn quad_regularized_interval(
    j: usize,
    phi: &FormDescriptor,
    spec: &TwistSpec,
    cfg: &BranchConfig,
    q: &QuadratureSpec,
) -> Result<Complex64> {
    Ok(quad_regularized_interval_on_sheet(j, phi, spec, cfg, q, Sheet::Principal)?.value)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodMatrix {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub entries: CMatrix,
    pub errors: DMatrix<f64>,
    pub spec: TwistSpec,
}

impl PeriodMatrix {
    /// Entries whose error estimate exceeds `tol` relative to the largest entry.
    pub fn flagged(&self, tol: f64) -> Vec<(usize, usize)> {
        let scale = crate::matrix::max_abs(&self.entries);
        let mut out = Vec::new();
        for r in 0..self.errors.nrows() {
            for c in 0..self.errors.ncols() {
                if self.errors[(r, c)] > tol * scale {
                    out.push((r, c));
                }
            }
        }
        out
    }
}

/// Periods `int_{cycle} T phi` for every pair. Interval lifts are integrated directly,
/// eigencycles through `1/2 (int_s T phi +- int_s T iota^* phi)` and lambda cycles through
/// their eigen expansion.
pub fn period_matrix(
    cycles: &[(String, CycleClass<Complex64>)],
    forms: &[FormDescriptor],
    spec: &TwistSpec,
    cfg: &BranchConfig,
    q: &QuadratureSpec,
) -> Result<PeriodMatrix> {
    let mut cache: Vec<Option<(PeriodValue, PeriodValue)>> = alloc::vec![None; 5 * forms.len()];
    let mut interval = |j: usize, fi: usize| -> Result<(PeriodValue, PeriodValue)> {
        if let Some(v) = cache[j * forms.len() + fi] {
            return Ok(v);
        }
        let a = quad_regularized_interval_on_sheet(j, &forms[fi], spec, cfg, q, Sheet::Principal)?;
        let b = quad_regularized_interval_on_sheet(j, &forms[fi], spec, cfg, q, Sheet::Flipped)?;
        cache[j * forms.len() + fi] = Some((a, b));
        Ok((a, b))
    };
    let mut entries = CMatrix::zeros(cycles.len(), forms.len());
    let mut errors = DMatrix::<f64>::zeros(cycles.len(), forms.len());
    for (r, (_, cycle)) in cycles.iter().enumerate() {
        if cycle.dual != spec.dual {
            return Err(Error::UnknownSymbol(alloc::format!(
                "cycle {} is loaded with the {} system but the twist is {}",
                cycles[r].0,
                if cycle.dual { "dual" } else { "primal" },
                if spec.dual { "dual" } else { "primal" }
            )));
        }
        let resolved = resolve_lambdas(cycle, spec)?;
        for fi in 0..forms.len() {
            let mut acc = PeriodValue::zero();
            for (sym, k) in resolved.terms() {
                let v = match *sym {
                    CycleSymbol::Sigma(j) => interval(j as usize, fi)?.0,
                    CycleSymbol::SigmaPm(j, sign) => {
                        let (a, b) = interval(j as usize, fi)?;
                        let s = sign.sign() as f64;
                        PeriodValue { value: (a.value + b.value * s) * 0.5, error: 0.5 * (a.error + b.error) }
                    }
                    CycleSymbol::Lambda(_) => unreachable!("lambda cycles are resolved first"),
                };
                acc = acc.add(v.scale(*k));
            }
            entries[(r, fi)] = acc.value;
            errors[(r, fi)] = acc.error;
        }
    }
    Ok(PeriodMatrix {
        rows: cycles.iter().map(|(n, _)| n.clone()).collect(),
        cols: forms.iter().map(|f| f.label()).collect(),
        entries,
        errors,
        spec: *spec,
    })
}

fn resolve_lambdas(cycle: &CycleClass<Complex64>, spec: &TwistSpec) -> Result<CycleClass<Complex64>> {
    let mut out = CycleClass::zero(cycle.dual);
    let mut lambdas = CycleClass::zero(cycle.dual);
    for (s, k) in cycle.terms() {
        match s {
            CycleSymbol::Lambda(_) => lambdas.add_term(*s, *k),
            _ => out.add_term(*s, *k),
        }
    }
    if !lambdas.is_zero() {
        let coeffs = expand_in_pm_basis(&lambdas, &spec.exponents)?;
        for (sym, k) in pm_basis_symbols().iter().zip(coeffs) {
            out.add_term(*sym, k);
        }
    }
    Ok(out)
}

/// The interval lifts `s01..s34` as cycle classes.
pub fn interval_cycles(dual: bool) -> Vec<(String, CycleClass<Complex64>)> {
    (0..4u8)
        .map(|j| {
            let s = CycleSymbol::Sigma(j);
            (s.name(), CycleClass::symbol(s, dual))
        })
        .collect()
}

/// The eigencycles `s01+, .., s34-` as cycle classes.
pub fn eigen_cycles(dual: bool) -> Vec<(String, CycleClass<Complex64>)> {
    pm_basis_symbols().iter().map(|s| (s.name(), CycleClass::symbol(*s, dual))).collect()
}

/// Eigenvalue of a cycle symbol, when it has one.
pub fn symbol_eigen(s: CycleSymbol) -> Option<Eigen> {
    match s {
        CycleSymbol::SigmaPm(_, e) => Some(e),
        _ => None,
    }
}

/// `F_D` through its Euler integral over `(1, inf)`:
/// `Gamma(c)/(Gamma(a)Gamma(c-a)) * int_1^inf T phi_1`.
pub fn fd_via_integral(
    p: &crate::params::LauricellaParams,
    cfg: &BranchConfig,
    q: &QuadratureSpec,
) -> Result<Complex64> {
    let v = crate::params::derive_exponents_unchecked(p);
    let phi1 = &crate::cohomology::genus0_rational_forms(cfg)[0];
    // Exponents may vanish here (e.g. b2 = b3 = 0); only the endpoints of (1, inf) matter
    // and a resonance there is reported by the series itself.
    check_shape(4, cfg, q)?;
    let integral = match q.method {
        QuadMethod::EndpointSeries => series_route(4, phi1, &TwistSpec::raw(v), cfg, q)?,
        QuadMethod::JacobiWeighted => jacobi_route(4, phi1, &TwistSpec::raw(v), cfg, q)?,
    }
    .value;
    let pref = gamma_fn(p.c)? / (gamma_fn(p.a)? * gamma_fn(p.c - p.a)?);
    Ok(integral * pref)
}

/// `F_D` by its series, with parameters taken from the Lauricella block.
pub fn fd_via_series(p: &crate::params::LauricellaParams, cfg: &BranchConfig, tol: f64) -> Result<Complex64> {
    let params = FdParams { a: p.a, b: [p.b1, p.b2, p.b3], c: p.c };
    fd_series(&params, [cfg.z(1), cfg.z(2), cfg.z(3)], tol)
}
