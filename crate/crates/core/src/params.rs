//! Parameter model: Lauricella parameters, the six exponents `c_0..c_5`,
//! the `f`-twist shift and dualization.
//!
//! The integrand is `T = prod_{j=0}^{4} (x - z_j)^{2 c_j}`; exponents are always
//! stored as `c_j` (never as the power `2 c_j`).

use core::f64::consts::PI;

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Tolerance for "4 c_j is an integer".
pub const INTEGRALITY_TOL: f64 = 1e-12;
/// Tolerance for `sum c_j = 0` on direct construction.
pub const SUM_TOL: f64 = 1e-14;

/// Exponent shift induced by multiplying `T` with `f = x(x-1)/y`.
pub const F_SHIFT: [f64; 6] = [0.25, -0.25, -0.25, -0.25, 0.25, 0.25];

/// `e(u) = exp(2 pi i u)`.
pub fn unit_phase(u: Complex64) -> Complex64 {
    (Complex64::i() * (2.0 * PI) * u).exp()
}

/// Real-argument shorthand for [`unit_phase`].
pub fn e(u: f64) -> Complex64 {
    unit_phase(Complex64::new(u, 0.0))
}

fn near_integer(w: Complex64, tol: f64) -> bool {
    w.im.abs() <= tol && (w.re - libm::round(w.re)).abs() <= tol
}

/// Parameters of `F_D(a, b1, b2, b3, c; z1, z2, z3)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LauricellaParams {
    pub a: Complex64,
    pub b1: Complex64,
    pub b2: Complex64,
    pub b3: Complex64,
    pub c: Complex64,
}

impl LauricellaParams {
    pub fn real(a: f64, b1: f64, b2: f64, b3: f64, c: f64) -> Self {
        let r = |v| Complex64::new(v, 0.0);
        Self { a: r(a), b1: r(b1), b2: r(b2), b3: r(b3), c: r(c) }
    }
}

/// Where an exponent vector came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Raw,
    Shifted,
    Dual,
}

/// The six exponents `c_0, ..., c_5` attached to `z_0 = 0, z_1, z_2, z_3, z_4 = 1, z_5 = inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentVector {
    c: [Complex64; 6],
    provenance: Provenance,
}

impl ExponentVector {
    /// Builds a vector and checks it with [`validate_admissible`].
    pub fn new(c: [Complex64; 6]) -> Result<Self> {
        let v = Self { c, provenance: Provenance::Raw };
        validate_admissible(&v)?;
        Ok(v)
    }

    pub fn from_real(c: [f64; 6]) -> Result<Self> {
        Self::new(c.map(|x| Complex64::new(x, 0.0)))
    }

    /// Builds a vector without any validation.
    pub fn new_unchecked(c: [Complex64; 6]) -> Self {
        Self { c, provenance: Provenance::Raw }
    }

    #[inline]
    pub fn c(&self, j: usize) -> Complex64 {
        self.c[j]
    }

    /// Real part of `c_j`; the period engine works with real exponents.
    #[inline]
    pub fn re(&self, j: usize) -> f64 {
        self.c[j].re
    }

    pub fn as_array(&self) -> [Complex64; 6] {
        self.c
    }

    pub fn real_parts(&self) -> [f64; 6] {
        self.c.map(|x| x.re)
    }

    pub fn is_real(&self) -> bool {
        self.c.iter().all(|x| x.im == 0.0)
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn sum(&self) -> Complex64 {
        self.c.iter().sum()
    }

    /// `c_j -> -c_j`.
    pub fn negated(&self) -> Self {
        Self { c: self.c.map(|x| -x), provenance: Provenance::Dual }
    }
}

/// `c_0 = (b1+b2+b3-c)/2`, `c_{1,2,3} = -b_{1,2,3}/2`, `c_4 = (c-a)/2`, `c_5 = a/2`.
pub fn derive_exponents(p: &LauricellaParams) -> Result<ExponentVector> {
    let v = derive_exponents_unchecked(p);
    check_integrality(&v)?;
    Ok(v)
}

/// The same map without the resonance check; used where some exponents may vanish.
pub fn derive_exponents_unchecked(p: &LauricellaParams) -> ExponentVector {
    let mut c = [
        (p.b1 + p.b2 + p.b3 - p.c) / 2.0,
        -p.b1 / 2.0,
        -p.b2 / 2.0,
        -p.b3 / 2.0,
        (p.c - p.a) / 2.0,
        p.a / 2.0,
    ];
    // The sum vanishes identically; remove floating-point residue so it is exact.
    let residue: Complex64 = c.iter().sum();
    c[0] -= residue;
    ExponentVector { c, provenance: Provenance::Raw }
}

/// Inverse of the exponent map: `a = 2c5`, `b_i = -2c_i`, `c = 2c4 + 2c5`.
pub fn lauricella_from_exponents(v: &ExponentVector) -> LauricellaParams {
    LauricellaParams { a: v.c(5) * 2.0, b1: -v.c(1) * 2.0, b2: -v.c(2) * 2.0, b3: -v.c(3) * 2.0, c: (v.c(4) + v.c(5)) * 2.0 }
}

/// `c' = c + (1/4, -1/4, -1/4, -1/4, 1/4, 1/4)`; the exponents of `T f`.
pub fn shift_exponents(v: &ExponentVector) -> ExponentVector {
    let mut c = v.c;
    for (cj, s) in c.iter_mut().zip(F_SHIFT) {
        *cj += s;
    }
    let out = ExponentVector { c, provenance: Provenance::Shifted };
    debug_assert!(check_integrality(&out).is_ok() || check_integrality(v).is_err());
    out
}

fn check_integrality(v: &ExponentVector) -> Result<()> {
    for (index, cj) in v.c.iter().enumerate() {
        if near_integer(*cj * 4.0, INTEGRALITY_TOL) {
            return Err(Error::Admissibility { index, value: cj.re });
        }
    }
    Ok(())
}

/// Passes iff `4 c_j` is not an integer for every `j` and the exponents sum to zero.
pub fn validate_admissible(v: &ExponentVector) -> Result<()> {
    check_integrality(v)?;
    let residual = v.sum().norm();
    if residual > SUM_TOL {
        return Err(Error::Sum { residual });
    }
    Ok(())
}

/// The twist carried by a cycle or a form: `T^{+-1} f^{k}`.
///
/// The effective exponent at `z_j` is `s c_j + k F_SHIFT[j]` with `s = -1` for the dual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwistSpec {
    pub exponents: ExponentVector,
    pub f_twist: i8,
    pub dual: bool,
}

impl TwistSpec {
    pub fn raw(exponents: ExponentVector) -> Self {
        Self { exponents, f_twist: 0, dual: false }
    }

    pub fn f_twisted(exponents: ExponentVector) -> Self {
        Self { exponents, f_twist: 1, dual: false }
    }

    pub fn with_f_twist(mut self, f_twist: i8) -> Self {
        self.f_twist = f_twist;
        self
    }

    pub fn effective(&self, j: usize) -> Complex64 {
        let sign = if self.dual { -1.0 } else { 1.0 };
        self.exponents.c(j) * sign + F_SHIFT[j] * f64::from(self.f_twist)
    }

    pub fn effective_all(&self) -> [Complex64; 6] {
        core::array::from_fn(|j| self.effective(j))
    }

    /// The effective exponents packaged as an (unvalidated) vector.
    pub fn effective_vector(&self) -> ExponentVector {
        let provenance = if self.dual {
            Provenance::Dual
        } else if self.f_twist != 0 {
            Provenance::Shifted
        } else {
            Provenance::Raw
        };
        ExponentVector { c: self.effective_all(), provenance }
    }
}

/// `T -> T^{-1}`: flips the dual flag and negates the `f` power, so every
/// effective exponent changes sign.
pub fn dualize(t: &TwistSpec) -> TwistSpec {
    TwistSpec { exponents: t.exponents, f_twist: -t.f_twist, dual: !t.dual }
}

/// Exact rational exponents, used for the sum and resonance checks without rounding.
pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactExponents {
    pub c: [Rational; 6],
}

impl ExactExponents {
    pub fn derive(a: Rational, b1: Rational, b2: Rational, b3: Rational, c: Rational) -> Self {
        let two = Rational::from_integer(2);
        Self {
            c: [(b1 + b2 + b3 - c) / two, -b1 / two, -b2 / two, -b3 / two, (c - a) / two, a / two],
        }
    }

    pub fn sum(&self) -> Rational {
        self.c.iter().copied().fold(Rational::zero(), |acc, x| acc + x)
    }

    pub fn shifted(&self) -> Self {
        let q = Rational::new(1, 4);
        let signs = [1, -1, -1, -1, 1, 1];
        Self { c: core::array::from_fn(|j| self.c[j] + q * Rational::from_integer(signs[j])) }
    }

    pub fn validate(&self) -> Result<()> {
        for (index, cj) in self.c.iter().enumerate() {
            if (*cj * Rational::from_integer(4)).is_integer() {
                return Err(Error::Admissibility { index, value: to_f64(*cj) });
            }
        }
        if !self.sum().is_zero() {
            return Err(Error::Sum { residual: libm::fabs(to_f64(self.sum())) });
        }
        Ok(())
    }

    pub fn to_vector(&self) -> Result<ExponentVector> {
        self.validate()?;
        ExponentVector::from_real(self.c.map(to_f64))
    }
}

fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Desk-scale reference configuration used across tests and the CLI defaults.
pub const REFERENCE_EXPONENTS: [f64; 6] = [-0.20, -0.15, -0.10, 0.05, 0.22, 0.18];
pub const REFERENCE_Z: [f64; 3] = [0.2, 0.45, 0.7];

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn derive_matches_definitions() {
        let p = LauricellaParams::real(0.36, 0.30, 0.20, -0.10, 0.80);
        let v = derive_exponents(&p).unwrap();
        let want = REFERENCE_EXPONENTS;
        for j in 0..6 {
            assert!((v.re(j) - want[j]).abs() < 1e-15, "c{j} = {}", v.re(j));
        }
        assert!(v.sum().norm() < 1e-16);
        validate_admissible(&v).unwrap();
    }

    #[test]
    fn c5_is_half_a() {
        let p = LauricellaParams::real(1.0 / 3.0, 0.1, 0.2, 0.3, 0.7);
        let v = derive_exponents(&p).unwrap();
        assert!((v.re(5) - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn equal_b_and_c_gives_half_c() {
        let p = LauricellaParams::real(0.3, 0.4, 0.4, 0.4, 0.4);
        let v = derive_exponents(&p).unwrap();
        assert!((v.re(0) - 0.4).abs() < 1e-15);
        let head = v.re(0) + v.re(1) + v.re(2) + v.re(3);
        assert!((head + 0.2).abs() < 1e-15);
    }

    #[test]
    fn resonant_exponent_rejected() {
        let v = ExponentVector::from_real([-0.2, -0.15, -0.1, 0.05, 0.15, 0.25]);
        assert_eq!(v.unwrap_err(), Error::Admissibility { index: 5, value: 0.25 });
        let p = LauricellaParams::real(0.5, 0.3, 0.2, -0.1, 0.8);
        assert!(matches!(derive_exponents(&p), Err(Error::Admissibility { index: 5, .. })));
    }

    #[test]
    fn nonzero_sum_rejected() {
        let v = ExponentVector::from_real([-0.1, -0.15, -0.1, 0.05, 0.22, 0.18]);
        assert!(matches!(v, Err(Error::Sum { .. })));
    }

    #[test]
    fn reference_configuration_accepted() {
        ExponentVector::from_real(REFERENCE_EXPONENTS).unwrap();
    }

    #[test]
    fn shift_pattern_and_phase_flip() {
        let v = ExponentVector::from_real(REFERENCE_EXPONENTS).unwrap();
        let s = shift_exponents(&v);
        for j in 0..6 {
            assert!(close(s.c(j) - v.c(j), Complex64::new(F_SHIFT[j], 0.0), 1e-15));
            assert!(close(unit_phase(s.c(j) * 2.0), -unit_phase(v.c(j) * 2.0), 1e-14));
        }
        assert!(close(s.sum(), v.sum(), 1e-15));
        assert_eq!(s.provenance(), Provenance::Shifted);
        validate_admissible(&s).unwrap();
    }

    #[test]
    fn unit_phase_values() {
        assert!(close(e(0.0), Complex64::new(1.0, 0.0), 1e-15));
        assert!(close(e(0.5), Complex64::new(-1.0, 0.0), 1e-15));
        assert!(close(e(0.25), Complex64::i(), 1e-15));
    }

    #[test]
    fn dualize_is_an_involution() {
        let v = ExponentVector::from_real(REFERENCE_EXPONENTS).unwrap();
        for t in [TwistSpec::raw(v), TwistSpec::f_twisted(v)] {
            assert_eq!(dualize(&dualize(&t)), t);
            let d = dualize(&t);
            for j in 0..6 {
                assert!(close(d.effective(j), -t.effective(j), 1e-15));
            }
        }
    }

    #[test]
    fn dual_of_f_twist_is_negated_shift() {
        let v = ExponentVector::from_real(REFERENCE_EXPONENTS).unwrap();
        let d = dualize(&TwistSpec::f_twisted(v));
        let direct = shift_exponents(&v).negated();
        for j in 0..6 {
            assert!(close(d.effective(j), direct.c(j), 1e-15));
        }
    }

    #[test]
    fn exact_mode_sum_is_zero() {
        let r = |n, d| Rational::new(n, d);
        let x = ExactExponents::derive(r(9, 25), r(3, 10), r(1, 5), r(-1, 10), r(4, 5));
        assert!(x.sum().is_zero());
        x.validate().unwrap();
        x.shifted().validate().unwrap();
        let v = x.to_vector().unwrap();
        assert!((v.re(4) - 0.22).abs() < 1e-15);
        let bad = ExactExponents::derive(r(1, 2), r(3, 10), r(1, 5), r(-1, 10), r(4, 5));
        assert!(matches!(bad.validate(), Err(Error::Admissibility { index: 5, .. })));
    }
}
