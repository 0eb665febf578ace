//! Twisted cycle algebra on the genus-2 cover and closed-form homology intersection matrices.
//!
//! Cycle coefficients live in any [`Coefficient`] ring: complex doubles for numerics, or
//! [`PhasePoly`] for exact symbolic manipulation of phases `e(linear form in c)`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{block_diag, labels, CMatrix, IntersectionMatrix, Pairing};
use crate::params::{ExponentVector, Rational, TwistSpec};

/// `sum_{j<5} coeffs[j] c_j + constant`, with `c_5` eliminated through `sum c_j = 0`
/// and the constant reduced modulo 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PhaseArg {
    pub coeffs: [Rational; 5],
    pub constant: Rational,
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn frac_mod1(q: Rational) -> Rational {
    q - q.floor()
}

impl PhaseArg {
    /// From integer coefficients on `c_0..c_5`.
    pub fn new(c: [i64; 6]) -> Self {
        Self::from_rational(c.map(rat), Rational::zero())
    }

    pub fn from_rational(c: [Rational; 6], constant: Rational) -> Self {
        let coeffs = core::array::from_fn(|j| c[j] - c[5]);
        Self { coeffs, constant: frac_mod1(constant) }
    }

    pub fn zero() -> Self {
        Self::new([0; 6])
    }

    pub fn plus(&self, other: &Self) -> Self {
        Self {
            coeffs: core::array::from_fn(|j| self.coeffs[j] + other.coeffs[j]),
            constant: frac_mod1(self.constant + other.constant),
        }
    }

    pub fn negated(&self) -> Self {
        Self { coeffs: self.coeffs.map(|c| -c), constant: frac_mod1(-self.constant) }
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self { coeffs: self.coeffs.map(|c| c * k), constant: frac_mod1(self.constant * k) }
    }

    /// The dual local system replaces `c` by `-c`.
    pub fn dualized(&self) -> Self {
        Self { coeffs: self.coeffs.map(|c| -c), constant: self.constant }
    }

    pub fn signed(&self, dual: bool) -> Self {
        if dual {
            self.dualized()
        } else {
            self.clone()
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero()) && self.constant.is_zero()
    }

    /// Value of the linear form at `v` (assumes `sum v = 0`).
    pub fn eval(&self, v: &ExponentVector) -> Complex64 {
        let mut s = Complex64::new(to_f64(self.constant), 0.0);
        for j in 0..5 {
            s += v.c(j) * to_f64(self.coeffs[j]);
        }
        s
    }
}

fn to_f64(q: Rational) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

/// Ring of coefficients for cycle classes.
pub trait Coefficient:
    Clone
    + fmt::Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    type Context;
    fn zero() -> Self;
    fn one() -> Self;
    fn rational(q: Rational) -> Self;
    fn phase(ctx: &Self::Context, arg: &PhaseArg) -> Self;
    fn is_negligible(&self) -> bool;
}

impl Coefficient for Complex64 {
    type Context = ExponentVector;
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn rational(q: Rational) -> Self {
        Complex64::new(to_f64(q), 0.0)
    }
    fn phase(ctx: &ExponentVector, arg: &PhaseArg) -> Self {
        crate::params::unit_phase(arg.eval(ctx))
    }
    fn is_negligible(&self) -> bool {
        self.norm() < 1e-13
    }
}

/// Finite sum `sum q_k e(u_k)` with rational `q_k`, kept in a canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PhasePoly {
    terms: BTreeMap<PhaseArg, Rational>,
}

impl PhasePoly {
    pub fn monomial(q: Rational, arg: PhaseArg) -> Self {
        let mut p = Self::default();
        p.push(q, arg);
        p
    }

    fn push(&mut self, q: Rational, mut arg: PhaseArg) {
        let mut q = q;
        // e(1/2) = -1
        if arg.constant == Rational::new(1, 2) {
            arg.constant = Rational::zero();
            q = -q;
        }
        let v = self.terms.remove(&arg).unwrap_or_else(Rational::zero) + q;
        if !v.is_zero() {
            self.terms.insert(arg, v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PhaseArg, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, v: &ExponentVector) -> Complex64 {
        self.terms
            .iter()
            .map(|(arg, q)| crate::params::unit_phase(arg.eval(v)) * to_f64(*q))
            .sum()
    }

    /// The single term of a monomial, if it is one.
    pub fn as_monomial(&self) -> Option<(Rational, &PhaseArg)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(a, q)| (*q, a))
        } else {
            None
        }
    }
}

impl Add for PhasePoly {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (a, q) in rhs.terms {
            self.push(q, a);
        }
        self
    }
}

impl Neg for PhasePoly {
    type Output = Self;
    fn neg(self) -> Self {
        Self { terms: self.terms.into_iter().map(|(a, q)| (a, -q)).collect() }
    }
}

impl Sub for PhasePoly {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for PhasePoly {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::default();
        for (a, p) in &self.terms {
            for (b, q) in &rhs.terms {
                out.push(p * q, a.plus(b));
            }
        }
        out
    }
}

impl Coefficient for PhasePoly {
    type Context = ();
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::monomial(Rational::one(), PhaseArg::zero())
    }
    fn rational(q: Rational) -> Self {
        Self::monomial(q, PhaseArg::zero())
    }
    fn phase(_: &(), arg: &PhaseArg) -> Self {
        Self::monomial(Rational::one(), arg.clone())
    }
    fn is_negligible(&self) -> bool {
        self.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Eigen {
    Plus,
    Minus,
}

impl Eigen {
    pub fn sign(self) -> i64 {
        match self {
            Self::Plus => 1,
            Self::Minus => -1,
        }
    }
}

/// Named cycles on the cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CycleSymbol {
    /// Lift of the interval `(z_j, z_{j+1})`, `j = 0..=4`.
    Sigma(u8),
    /// Regularized symplectic cycles `lambda_1..lambda_4`.
    Lambda(u8),
    /// Eigencycles `sigma_{j,j+1,+-}`, `j = 0..=3`.
    SigmaPm(u8, Eigen),
}

impl CycleSymbol {
    pub fn name(&self) -> String {
        match *self {
            Self::Sigma(j) => alloc::format!("s{}{}", j, j + 1),
            Self::Lambda(k) => alloc::format!("l{k}"),
            Self::SigmaPm(j, Eigen::Plus) => alloc::format!("s{}{}+", j, j + 1),
            Self::SigmaPm(j, Eigen::Minus) => alloc::format!("s{}{}-", j, j + 1),
        }
    }

    /// Index of the interval the symbol projects to, when it is an interval lift.
    pub fn pushforward_interval(&self) -> Option<u8> {
        match *self {
            Self::Sigma(j) => Some(j),
            _ => None,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let sym = match s {
            "s01" => Self::Sigma(0),
            "s12" => Self::Sigma(1),
            "s23" => Self::Sigma(2),
            "s34" => Self::Sigma(3),
            "s45" => Self::Sigma(4),
            "l1" => Self::Lambda(1),
            "l2" => Self::Lambda(2),
            "l3" => Self::Lambda(3),
            "l4" => Self::Lambda(4),
            _ => {
                let (body, sign) = match s.as_bytes().last() {
                    Some(b'+') => (&s[..s.len() - 1], Eigen::Plus),
                    Some(b'-') => (&s[..s.len() - 1], Eigen::Minus),
                    _ => return Err(Error::UnknownSymbol(s.into())),
                };
                match Self::parse(body)? {
                    Self::Sigma(j) if j < 4 => Self::SigmaPm(j, sign),
                    _ => return Err(Error::UnknownSymbol(s.into())),
                }
            }
        };
        Ok(sym)
    }
}

/// Basis order `s01+, .., s34+, s01-, .., s34-`.
pub fn pm_basis_symbols() -> [CycleSymbol; 8] {
    core::array::from_fn(|i| CycleSymbol::SigmaPm((i % 4) as u8, if i < 4 { Eigen::Plus } else { Eigen::Minus }))
}

/// Linear combination of cycle symbols, all loaded with `L` or all with the dual.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleClass<K> {
    terms: BTreeMap<CycleSymbol, K>,
    pub dual: bool,
}

impl<K: Coefficient> CycleClass<K> {
    pub fn zero(dual: bool) -> Self {
        Self { terms: BTreeMap::new(), dual }
    }

    pub fn symbol(s: CycleSymbol, dual: bool) -> Self {
        let mut c = Self::zero(dual);
        c.terms.insert(s, K::one());
        c
    }

    pub fn from_terms(terms: Vec<(CycleSymbol, K)>, dual: bool) -> Self {
        let mut c = Self::zero(dual);
        for (s, k) in terms {
            c.add_term(s, k);
        }
        c
    }

    pub fn add_term(&mut self, s: CycleSymbol, k: K) {
        let v = match self.terms.remove(&s) {
            Some(old) => old + k,
            None => k,
        };
        if !v.is_negligible() {
            self.terms.insert(s, v);
        }
    }

    pub fn coeff(&self, s: CycleSymbol) -> K {
        self.terms.get(&s).cloned().unwrap_or_else(K::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CycleSymbol, &K)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, k: &K) -> Self {
        let mut out = Self::zero(self.dual);
        for (s, v) in &self.terms {
            out.add_term(*s, v.clone() * k.clone());
        }
        out
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        if self.dual != other.dual {
            return Err(Error::Config("cannot add cycles loaded with different local systems".into()));
        }
        let mut out = self.clone();
        for (s, v) in &other.terms {
            out.add_term(*s, v.clone());
        }
        Ok(out)
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.plus(&other.scaled(&(-K::one())))
    }
}

/// Phase `u_j` attached to the eigen-decomposition of `s_{j,j+1}`:
/// `c0-c1`, `c0-2c1-c2`, `c0-2c1+c3`, `c0-2c1-c4`.
pub fn eigen_phase_arg(j: u8) -> PhaseArg {
    match j {
        0 => PhaseArg::new([1, -1, 0, 0, 0, 0]),
        1 => PhaseArg::new([1, -2, -1, 0, 0, 0]),
        2 => PhaseArg::new([1, -2, 0, 1, 0, 0]),
        3 => PhaseArg::new([1, -2, 0, 0, -1, 0]),
        _ => unreachable!("no eigen phase for s45"),
    }
}

/// The lambda combination paired with `s_{j,j+1}`: `l3`, `l1 - l2`, `l4`, `l2`.
fn lambda_partner<K: Coefficient>(j: u8, dual: bool) -> CycleClass<K> {
    use CycleSymbol::Lambda;
    match j {
        0 => CycleClass::symbol(Lambda(3), dual),
        1 => CycleClass::from_terms(vec![(Lambda(1), K::one()), (Lambda(2), -K::one())], dual),
        2 => CycleClass::symbol(Lambda(4), dual),
        3 => CycleClass::symbol(Lambda(2), dual),
        _ => unreachable!(),
    }
}

fn phase<K: Coefficient>(ctx: &K::Context, arg: &PhaseArg, dual: bool) -> K {
    K::phase(ctx, &arg.signed(dual))
}

fn half<K: Coefficient>() -> K {
    K::rational(Rational::new(1, 2))
}

/// `s_{j,j+1,+-}` over `{s_{j,j+1}, lambda_k}`:
/// `-+ 1/(2 e(u_j)) (partner_j - (1 +- e(u_j)) s_{j,j+1})`.
pub fn eigen_cycle<K: Coefficient>(j: u8, sign: Eigen, ctx: &K::Context, dual: bool) -> CycleClass<K> {
    let u = eigen_phase_arg(j);
    let a = phase::<K>(ctx, &u, dual);
    let inv = phase::<K>(ctx, &u.negated(), dual);
    let s = K::rational(rat(sign.sign()));
    let pref = -(s.clone() * half::<K>() * inv);
    let sigma = CycleClass::symbol(CycleSymbol::Sigma(j), dual).scaled(&(K::one() + s * a));
    lambda_partner::<K>(j, dual).minus(&sigma).expect("same dual").scaled(&pref)
}

/// The eight eigencycles in basis order.
pub fn eigen_basis<K: Coefficient>(ctx: &K::Context, dual: bool) -> [CycleClass<K>; 8] {
    core::array::from_fn(|i| {
        eigen_cycle((i % 4) as u8, if i < 4 { Eigen::Plus } else { Eigen::Minus }, ctx, dual)
    })
}

/// Image of a single symbol under the involution, over `{s, lambda}` or eigen symbols.
fn involution_symbol<K: Coefficient>(s: CycleSymbol, ctx: &K::Context, dual: bool) -> Result<CycleClass<K>> {
    use CycleSymbol::*;
    match s {
        Sigma(4) => Err(Error::UnknownSymbol(s.name())),
        Sigma(j) => {
            // i(s_j) = -e(-u_j) (partner_j - s_j)
            let inv = phase::<K>(ctx, &eigen_phase_arg(j).negated(), dual);
            Ok(lambda_partner::<K>(j, dual)
                .minus(&CycleClass::symbol(Sigma(j), dual))?
                .scaled(&(-inv)))
        }
        SigmaPm(j, sign) => Ok(CycleClass::symbol(SigmaPm(j, sign), dual).scaled(&K::rational(rat(sign.sign())))),
        Lambda(k) => {
            // partner_j = s_j - e(u_j) i(s_j), hence i(partner_j) = i(s_j) - e(u_j) s_j.
            let pulled = |j: u8| -> Result<CycleClass<K>> {
                let a = phase::<K>(ctx, &eigen_phase_arg(j), dual);
                involution_symbol::<K>(Sigma(j), ctx, dual)?.minus(&CycleClass::symbol(Sigma(j), dual).scaled(&a))
            };
            match k {
                3 => pulled(0),
                4 => pulled(2),
                2 => pulled(3),
                1 => pulled(3)?.plus(&pulled(1)?),
                _ => Err(Error::UnknownSymbol(s.name())),
            }
        }
    }
}

/// Involution pushforward, extended linearly.
pub fn involution_pushforward<K: Coefficient>(c: &CycleClass<K>, ctx: &K::Context) -> Result<CycleClass<K>> {
    let mut out = CycleClass::zero(c.dual);
    for (s, k) in c.terms() {
        out = out.plus(&involution_symbol::<K>(*s, ctx, c.dual)?.scaled(k))?;
    }
    Ok(out)
}

/// Coefficients of a class in the eigen basis `s01+, .., s34-`.
pub fn expand_in_pm_basis<K: Coefficient>(c: &CycleClass<K>, ctx: &K::Context) -> Result<Vec<K>> {
    let mut out = vec![K::zero(); 8];
    let dual = c.dual;
    // l_k contributes (1 -+ e(u_j)) on s_{j,+-} for each pair (j, weight).
    let lambda_pairs = |k: u8| -> &'static [u8] {
        match k {
            1 => &[1, 3],
            2 => &[3],
            3 => &[0],
            4 => &[2],
            _ => &[],
        }
    };
    for (s, k) in c.terms() {
        match *s {
            CycleSymbol::Sigma(4) => return Err(Error::UnknownSymbol(s.name())),
            CycleSymbol::Sigma(j) => {
                out[j as usize] = out[j as usize].clone() + k.clone();
                out[j as usize + 4] = out[j as usize + 4].clone() + k.clone();
            }
            CycleSymbol::SigmaPm(j, Eigen::Plus) => out[j as usize] = out[j as usize].clone() + k.clone(),
            CycleSymbol::SigmaPm(j, Eigen::Minus) => {
                out[j as usize + 4] = out[j as usize + 4].clone() + k.clone()
            }
            CycleSymbol::Lambda(l) => {
                let pairs = lambda_pairs(l);
                if pairs.is_empty() {
                    return Err(Error::UnknownSymbol(s.name()));
                }
                for &j in pairs {
                    let a = phase::<K>(ctx, &eigen_phase_arg(j), dual);
                    let j = j as usize;
                    out[j] = out[j].clone() + k.clone() * (K::one() - a.clone());
                    out[j + 4] = out[j + 4].clone() + k.clone() * (K::one() + a);
                }
            }
        }
    }
    Ok(out)
}

/// `Q` with `(s01, .., s34, l1, .., l4) = (s01+, .., s34-) Q`, as rows of columns.
pub fn change_of_basis_q<K: Coefficient>(ctx: &K::Context, dual: bool) -> Result<Vec<Vec<K>>> {
    let symbols = [
        CycleSymbol::Sigma(0),
        CycleSymbol::Sigma(1),
        CycleSymbol::Sigma(2),
        CycleSymbol::Sigma(3),
        CycleSymbol::Lambda(1),
        CycleSymbol::Lambda(2),
        CycleSymbol::Lambda(3),
        CycleSymbol::Lambda(4),
    ];
    let cols: Vec<Vec<K>> = symbols
        .iter()
        .map(|s| expand_in_pm_basis(&CycleClass::symbol(*s, dual), ctx))
        .collect::<Result<_>>()?;
    Ok((0..8).map(|r| (0..8).map(|c| cols[c][r].clone()).collect()).collect())
}

/// Determinant by cofactor expansion along the first row, skipping zero entries.
pub fn determinant<K: Coefficient>(m: &[Vec<K>]) -> K {
    let n = m.len();
    if n == 0 {
        return K::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = K::zero();
    for col in 0..n {
        if m[0][col].is_negligible() {
            continue;
        }
        let minor: Vec<Vec<K>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != col).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = m[0][col].clone() * determinant(&minor);
        total = if col % 2 == 0 { total + term } else { total - term };
    }
    total
}

/// `det Q = -2^4 e(4c0 - 7c1 - c2 + c3 - c4)`.
pub fn det_q_closed_form<K: Coefficient>(ctx: &K::Context, dual: bool) -> K {
    K::rational(rat(-16)) * phase::<K>(ctx, &PhaseArg::new([4, -7, -1, 1, -1, 0]), dual)
}

/// Both sides of the linear relation between the lambda cycles and the interval lifts.
pub fn mw_relation<K: Coefficient>(ctx: &K::Context, dual: bool) -> (CycleClass<K>, CycleClass<K>) {
    use CycleSymbol::*;
    let p = |c: [i64; 6]| phase::<K>(ctx, &PhaseArg::new(c), dual);
    let one = K::one();
    let lhs = CycleClass::from_terms(
        vec![
            (Lambda(1), one.clone() - p([0, -1, 0, 0, 0, 1])),
            (Lambda(2), p([-1, -2, 0, 1, 0, 0]) - p([0, -1, 0, 0, 0, 1])),
            (Lambda(3), p([1, 0, 0, 0, 0, 1]) - p([-1, -1, 0, 0, 0, 0])),
            (Lambda(4), p([-1, -2, 0, 0, -1, 0]) - p([-1, -2, -1, 0, 0, 0])),
        ],
        dual,
    );
    let rhs = CycleClass::from_terms(
        vec![
            (Sigma(0), one.clone() - p([-4, 0, 0, 0, 0, 0])),
            (Sigma(1), one.clone() - p([-4, -4, 0, 0, 0, 0])),
            (Sigma(2), one.clone() - p([-4, -4, -4, 0, 0, 0])),
            (Sigma(3), one.clone() - p([-4, -4, -4, -4, 0, 0])),
            (Sigma(4), one - p([0, 0, 0, 0, 0, 4])),
        ],
        dual,
    );
    (lhs, rhs)
}

/// Coefficients `(k_01, k_12, k_23, k_34)` and `k_45` of the period relation
/// `k_45 int_{s45} T phi = sum_j k_j int_{s_j} T phi` for eigenforms of the given sign,
/// typed as displayed.
pub fn corollary_coefficients<K: Coefficient>(sign: Eigen, ctx: &K::Context, dual: bool) -> ([K; 4], K) {
    let p = |c: [i64; 6]| phase::<K>(ctx, &PhaseArg::new(c), dual);
    let one = K::one;
    let s = K::rational(rat(sign.sign()));
    let mp = |c: [i64; 6]| one() - s.clone() * p(c);
    let k01 = (p([1, 0, 0, 0, 0, 1]) - p([-1, -1, 0, 0, 0, 0])) * mp([1, -1, 0, 0, 0, 0])
        - (one() - p([-4, 0, 0, 0, 0, 0]));
    let k12 = (one() - p([0, -1, 0, 0, 0, 1])) * mp([1, -2, -1, 0, 0, 0]) - (one() - p([-4, -4, 0, 0, 0, 0]));
    let k23 = (p([-1, -2, 0, 0, -1, 0]) - p([-1, -2, -1, 0, 0, 0])) * mp([1, -2, 0, 1, 0, 0])
        - (one() - p([-4, -4, -4, 0, 0, 0]));
    let k34 = (one() + p([-1, -2, 0, 1, 0, 0]) - K::rational(rat(2)) * p([0, -1, 0, 0, 0, 1]))
        * mp([1, -2, 0, 0, -1, 0])
        - (one() - p([-4, -4, -4, -4, 0, 0]));
    let k45 = one() - p([0, 0, 0, 0, 0, 4]);
    ([k01, k12, k23, k34], k45)
}

/// The same coefficients obtained by expanding the lambda side of [`mw_relation`] in the
/// eigen basis and moving the interval terms across.
pub fn corollary_coefficients_from_relation<K: Coefficient>(
    sign: Eigen,
    ctx: &K::Context,
    dual: bool,
) -> Result<([K; 4], K)> {
    let (lhs, rhs) = mw_relation::<K>(ctx, dual);
    let expanded = expand_in_pm_basis(&lhs, ctx)?;
    let offset = if sign == Eigen::Plus { 0 } else { 4 };
    let ks = core::array::from_fn(|j| expanded[j + offset].clone() - rhs.coeff(CycleSymbol::Sigma(j as u8)));
    Ok((ks, rhs.coeff(CycleSymbol::Sigma(4))))
}

/// Tridiagonal intersection matrix of `s01..s34` from `d_j = e(2 c_j)`.
pub fn homology_matrix_from_phases(d: [Complex64; 5]) -> CMatrix {
    let one = Complex64::new(1.0, 0.0);
    CMatrix::from_fn(4, 4, |i, k| {
        if i == k {
            (one - d[i] * d[i + 1]) / ((one - d[i]) * (one - d[i + 1]))
        } else if k == i + 1 {
            one / (one - d[i + 1])
        } else if i == k + 1 {
            d[i] / (one - d[i])
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Intersection matrix of the interval cycles on the line for the twist `spec`.
pub fn intersect_y_homology(spec: &TwistSpec) -> Result<IntersectionMatrix> {
    crate::params::validate_admissible(&spec.effective_vector())?;
    let d = core::array::from_fn(|j| crate::params::unit_phase(spec.effective(j) * 2.0));
    let names = labels(&["s01", "s12", "s23", "s34"]);
    let pairing = if spec.f_twist != 0 { Pairing::H0F } else { Pairing::H0 };
    Ok(IntersectionMatrix::new(homology_matrix_from_phases(d), names.clone(), names, pairing))
}

/// `H(+1)` or `H(-1)`: the line matrix with `e(2c_j)` replaced by `+- e(2c_j)`.
pub fn h_block(v: &ExponentVector, sign: Eigen) -> CMatrix {
    let s = sign.sign() as f64;
    homology_matrix_from_phases(core::array::from_fn(|j| crate::params::unit_phase(v.c(j) * 2.0) * s))
}

/// `H = 1/2 diag(H(1), H(-1))` on the eigen basis.
pub fn build_h(v: &ExponentVector) -> Result<IntersectionMatrix> {
    crate::params::validate_admissible(v)?;
    let m = block_diag(&h_block(v, Eigen::Plus), &h_block(v, Eigen::Minus)) * Complex64::new(0.5, 0.0);
    let names: Vec<String> = pm_basis_symbols().iter().map(|s| s.name()).collect();
    Ok(IntersectionMatrix::new(m, names.clone(), names, Pairing::H))
}

/// Determinant of `H(s)` for the block sign `s`, whose phases are `d_j = s e(2c_j)`:
/// `(1 - s e(-2c5)) / prod_{j<5} (1 - s e(2c_j))`.
pub fn det_h_closed_form(v: &ExponentVector, sign: Eigen) -> Complex64 {
    let s = sign.sign() as f64;
    let one = Complex64::new(1.0, 0.0);
    let mut den = one;
    for j in 0..5 {
        den *= one - crate::params::unit_phase(v.c(j) * 2.0) * s;
    }
    (one - crate::params::unit_phase(-v.c(5) * 2.0) * s) / den
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::relative_deviation;
    use crate::params::{unit_phase, REFERENCE_EXPONENTS};

    fn fixture() -> ExponentVector {
        ExponentVector::from_real(REFERENCE_EXPONENTS).unwrap()
    }

    fn exact_symbols() -> Vec<CycleSymbol> {
        let mut v: Vec<CycleSymbol> = (0..4).map(CycleSymbol::Sigma).collect();
        v.extend((1..=4).map(CycleSymbol::Lambda));
        v
    }

    #[test]
    fn phase_arg_eliminates_c5() {
        // 4 c5 = -4 (c0 + .. + c4)
        let a = PhaseArg::new([0, 0, 0, 0, 0, 4]);
        assert_eq!(a, PhaseArg::new([-4, -4, -4, -4, -4, 0]));
        let v = fixture();
        assert!((a.eval(&v) - Complex64::new(0.72, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn phase_poly_normalizes_half_period() {
        let half = PhaseArg::from_rational([Rational::zero(); 6], Rational::new(1, 2));
        let p = PhasePoly::phase(&(), &half);
        assert_eq!(p, PhasePoly::rational(rat(-1)));
        let u = eigen_phase_arg(0);
        let q = PhasePoly::phase(&(), &u) * PhasePoly::phase(&(), &u.negated());
        assert_eq!(q, PhasePoly::one());
    }

    #[test]
    fn line_homology_entries() {
        let v = fixture();
        let h = intersect_y_homology(&TwistSpec::raw(v)).unwrap().entries;
        assert_eq!(h[(0, 2)], Complex64::new(0.0, 0.0));
        let d1 = unit_phase(v.c(1) * 2.0);
        assert!((h[(1, 0)] * (Complex64::new(1.0, 0.0) - d1) - d1).norm() < 1e-14);
    }

    #[test]
    fn minus_block_is_shifted_line_matrix() {
        let v = fixture();
        let shifted = intersect_y_homology(&TwistSpec::f_twisted(v)).unwrap().entries;
        assert!(relative_deviation(&shifted, &h_block(&v, Eigen::Minus)) < 1e-13);
        let plus = intersect_y_homology(&TwistSpec::raw(v)).unwrap().entries;
        assert!(relative_deviation(&plus, &h_block(&v, Eigen::Plus)) < 1e-15);
    }

    #[test]
    fn h_determinants() {
        let v = fixture();
        for s in [Eigen::Plus, Eigen::Minus] {
            let d = h_block(&v, s).determinant();
            assert!((d - det_h_closed_form(&v, s)).norm() < 1e-12 * d.norm());
        }
        let h = build_h(&v).unwrap().entries;
        assert_eq!(h[(1, 5)], Complex64::new(0.0, 0.0));
        assert!((h[(0, 0)] * 2.0 - h_block(&v, Eigen::Plus)[(0, 0)]).norm() < 1e-15);
    }

    #[test]
    fn eigen_cycles_sum_to_interval() {
        for dual in [false, true] {
            for j in 0..4 {
                let p = eigen_cycle::<PhasePoly>(j, Eigen::Plus, &(), dual);
                let m = eigen_cycle::<PhasePoly>(j, Eigen::Minus, &(), dual);
                let sum = p.plus(&m).unwrap();
                assert_eq!(sum, CycleClass::symbol(CycleSymbol::Sigma(j), dual));
            }
        }
    }

    #[test]
    fn lambda3_coefficient_of_s01_plus() {
        let c = eigen_cycle::<PhasePoly>(0, Eigen::Plus, &(), false);
        let want = PhasePoly::monomial(Rational::new(-1, 2), PhaseArg::new([-1, 1, 0, 0, 0, 0]));
        assert_eq!(c.coeff(CycleSymbol::Lambda(3)), want);
    }

    #[test]
    fn involution_squares_to_identity() {
        for dual in [false, true] {
            for s in exact_symbols() {
                let c = CycleClass::<PhasePoly>::symbol(s, dual);
                let once = involution_pushforward(&c, &()).unwrap();
                let twice = involution_pushforward(&once, &()).unwrap();
                assert_eq!(twice, c, "{}", s.name());
            }
        }
    }

    #[test]
    fn involution_of_s23_matches_display() {
        let c = CycleClass::<PhasePoly>::symbol(CycleSymbol::Sigma(2), false);
        let img = involution_pushforward(&c, &()).unwrap();
        let inv = PhasePoly::phase(&(), &PhaseArg::new([-1, 2, 0, -1, 0, 0]));
        assert_eq!(img.coeff(CycleSymbol::Lambda(4)), -inv.clone());
        assert_eq!(img.coeff(CycleSymbol::Sigma(2)), inv);
    }

    #[test]
    fn eigen_cycles_are_eigenvectors() {
        for dual in [false, true] {
            for (i, c) in eigen_basis::<PhasePoly>(&(), dual).iter().enumerate() {
                let img = involution_pushforward(c, &()).unwrap();
                let want = if i < 4 { c.clone() } else { c.scaled(&PhasePoly::rational(rat(-1))) };
                assert_eq!(img, want);
            }
        }
    }

    #[test]
    fn expansion_inverts_eigen_basis() {
        for (i, c) in eigen_basis::<PhasePoly>(&(), false).iter().enumerate() {
            let coeffs = expand_in_pm_basis(c, &()).unwrap();
            for (k, x) in coeffs.iter().enumerate() {
                let want = if k == i { PhasePoly::one() } else { PhasePoly::zero() };
                assert_eq!(*x, want);
            }
        }
        let v = fixture();
        for (i, c) in eigen_basis::<Complex64>(&v, true).iter().enumerate() {
            let coeffs = expand_in_pm_basis(c, &v).unwrap();
            for (k, x) in coeffs.iter().enumerate() {
                let want = if k == i { 1.0 } else { 0.0 };
                assert!((x - Complex64::new(want, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn expansion_examples() {
        let s01 = CycleClass::<PhasePoly>::symbol(CycleSymbol::Sigma(0), false);
        let e = expand_in_pm_basis(&s01, &()).unwrap();
        let unit: Vec<bool> = e.iter().map(|x| *x == PhasePoly::one()).collect();
        assert_eq!(unit, [true, false, false, false, true, false, false, false]);
        let diff = CycleClass::<PhasePoly>::from_terms(
            vec![(CycleSymbol::Lambda(1), PhasePoly::one()), (CycleSymbol::Lambda(2), -PhasePoly::one())],
            false,
        );
        let e = expand_in_pm_basis(&diff, &()).unwrap();
        for (k, x) in e.iter().enumerate() {
            assert_eq!(x.is_empty(), k % 4 != 1, "slot {k}");
        }
        let s45 = CycleClass::<PhasePoly>::symbol(CycleSymbol::Sigma(4), false);
        assert!(matches!(expand_in_pm_basis(&s45, &()), Err(Error::UnknownSymbol(_))));
        assert!(matches!(involution_pushforward(&s45, &()), Err(Error::UnknownSymbol(_))));
    }

    #[test]
    fn change_of_basis_determinant() {
        for dual in [false, true] {
            let q = change_of_basis_q::<PhasePoly>(&(), dual).unwrap();
            assert_eq!(determinant(&q), det_q_closed_form::<PhasePoly>(&(), dual));
        }
        let v = fixture();
        let q = change_of_basis_q::<Complex64>(&v, false).unwrap();
        let m = CMatrix::from_fn(8, 8, |r, c| q[r][c]);
        let d = m.determinant();
        assert!((d - det_q_closed_form::<Complex64>(&v, false)).norm() < 1e-12 * 16.0);
        assert!((d.norm() - 16.0).abs() < 1e-12);
    }

    #[test]
    fn relation_coefficients() {
        let (lhs, rhs) = mw_relation::<PhasePoly>(&(), false);
        assert_eq!(lhs.terms().count(), 4);
        let want01 = PhasePoly::one() - PhasePoly::phase(&(), &PhaseArg::new([-4, 0, 0, 0, 0, 0]));
        assert_eq!(rhs.coeff(CycleSymbol::Sigma(0)), want01);
        let want45 = PhasePoly::one() - PhasePoly::phase(&(), &PhaseArg::new([0, 0, 0, 0, 0, 4]));
        assert_eq!(rhs.coeff(CycleSymbol::Sigma(4)), want45);
    }

    #[test]
    fn corollary_follows_from_relation() {
        for dual in [false, true] {
            for sign in [Eigen::Plus, Eigen::Minus] {
                let (typed, t45) = corollary_coefficients::<PhasePoly>(sign, &(), dual);
                let (derived, d45) = corollary_coefficients_from_relation::<PhasePoly>(sign, &(), dual).unwrap();
                assert_eq!(t45, d45);
                for j in 0..4 {
                    assert_eq!(typed[j], derived[j], "sign {sign:?} interval {j}");
                }
            }
        }
    }
}
