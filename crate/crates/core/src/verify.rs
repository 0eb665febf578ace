//! Numerical checks tying the closed forms, the cycle algebra and the period engine together.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::{format, vec};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cohomology::{
    build_c, c_minus_block, c_minus_block_from_residues, c_plus_block, det_c_minus_closed_form,
    det_c_plus_closed_form, genus0_forms, genus2_forms, intersect_y_cohomology, y_cohomology_from_residues,
};
use crate::error::{Error, Result};
use crate::homology::{
    build_h, change_of_basis_q, corollary_coefficients, det_h_closed_form, det_q_closed_form, determinant,
    h_block, intersect_y_homology, Eigen, PhasePoly,
};
use crate::matrix::{max_abs, relative_deviation, relative_gap, CMatrix};
use crate::multivalued::{loop_monodromy, BranchConfig, Space};
use crate::params::{dualize, e, lauricella_from_exponents, unit_phase, ExponentVector, LauricellaParams, TwistSpec};
use crate::periods::{
    circle_regularized_interval, eigen_cycles, fd_via_integral, fd_via_series, interval_cycles, interval_period,
    period_matrix, quad_regularized_interval, QuadMethod, QuadratureSpec,
};

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub metadata: Vec<(String, String)>,
}

impl CheckResult {
    pub fn new(name: &str, residual: f64, tolerance: f64) -> Self {
        Self { name: name.to_string(), residual, tolerance, pass: residual < tolerance, metadata: Vec::new() }
    }

    pub fn with(mut self, key: &str, value: String) -> Self {
        self.metadata.push((key.to_string(), value));
        self
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Draw of exponents with every `c_j` in `(-0.23, 0.35)`, summing to zero and at least
/// `margin` away (in `4 c_j`) from the integers.
pub fn random_admissible(rng: &mut ChaCha8Rng, margin: f64) -> ExponentVector {
    loop {
        let mut c = [0.0f64; 6];
        for cj in c.iter_mut().take(5) {
            *cj = rng.random_range(-0.23..0.35);
        }
        c[5] = -c[..5].iter().sum::<f64>();
        let ok = c.iter().all(|&x| {
            let f = 4.0 * x;
            x > -0.23 && x < 0.35 && (f - libm::round(f)).abs() > margin
        });
        if ok {
            if let Ok(v) = ExponentVector::from_real(c) {
                return v;
            }
        }
    }
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One of the candidate forms of the bilinear period relation
/// `C = kappa * P^T G M^{-1} G P^dual`, with `M = H` or `H^T` and `G` either the identity or
/// the sign gauge `diag(1, -1, 1, -1)` (per eigenblock on the curve), which reverses the
/// orientation of `s12` and `s34`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Convention {
    pub transpose: bool,
    pub kappa: i8,
    pub alternating_gauge: bool,
}

impl Convention {
    /// Search order: the plain candidates first, the gauged ones after.
    pub fn candidates() -> [Convention; 8] {
        let mut out = [Convention { transpose: false, kappa: 1, alternating_gauge: false }; 8];
        let mut i = 0;
        for gauge in [false, true] {
            for transpose in [false, true] {
                for kappa in [1, -1] {
                    out[i] = Convention { transpose, kappa, alternating_gauge: gauge };
                    i += 1;
                }
            }
        }
        out
    }

    pub fn describe(&self) -> String {
        format!(
            "C = {}P^T {}{}{} P_dual",
            if self.kappa < 0 { "-" } else { "" },
            if self.alternating_gauge { "G " } else { "" },
            if self.transpose { "H^-T" } else { "H^-1" },
            if self.alternating_gauge { " G" } else { "" }
        )
    }

    fn gauge(&self, n: usize) -> CMatrix {
        let sign = |i: usize| if self.alternating_gauge && (i % 4) % 2 == 1 { -1.0 } else { 1.0 };
        DMatrix::from_fn(n, n, |i, j| if i == j { Complex64::new(sign(i), 0.0) } else { Complex64::new(0.0, 0.0) })
    }

    pub fn assemble(&self, p: &CMatrix, pd: &CMatrix, h: &CMatrix) -> Result<CMatrix> {
        let m = if self.transpose { h.transpose() } else { h.clone() };
        let inv = m.try_inverse().ok_or_else(|| Error::DegenerateConfig("singular homology intersection matrix".into()))?;
        let g = self.gauge(h.nrows());
        Ok(p.transpose() * &g * inv * &g * pd * Complex64::new(f64::from(self.kappa), 0.0))
    }
}

/// Period matrices and intersection matrices entering the bilinear relation.
pub struct RelationData {
    pub p: CMatrix,
    pub pd: CMatrix,
    pub h: CMatrix,
    pub c: CMatrix,
}

pub fn relation_data(space: Space, v: &ExponentVector, cfg: &BranchConfig, q: &QuadratureSpec) -> Result<RelationData> {
    let spec = TwistSpec::raw(*v);
    let dspec = dualize(&spec);
    match space {
        Space::Y => {
            let forms = genus0_forms(cfg);
            Ok(RelationData {
                p: period_matrix(&interval_cycles(false), &forms, &spec, cfg, q)?.entries,
                pd: period_matrix(&interval_cycles(true), &forms, &dspec, cfg, q)?.entries,
                h: intersect_y_homology(&spec)?.entries,
                c: intersect_y_cohomology(&spec)?.entries,
            })
        }
        Space::X => {
            let forms = genus2_forms(cfg);
            Ok(RelationData {
                p: period_matrix(&eigen_cycles(false), &forms, &spec, cfg, q)?.entries,
                pd: period_matrix(&eigen_cycles(true), &forms, &dspec, cfg, q)?.entries,
                h: build_h(v)?.entries,
                c: build_c(v, cfg)?.entries,
            })
        }
    }
}

/// First candidate convention that closes the relation on the line within `tol`.
pub fn freeze_convention(v: &ExponentVector, cfg: &BranchConfig, q: &QuadratureSpec, tol: f64) -> Result<(Convention, f64)> {
    let data = relation_data(Space::Y, v, cfg, q)?;
    let mut best = f64::INFINITY;
    for conv in Convention::candidates() {
        let r = relative_deviation(&conv.assemble(&data.p, &data.pd, &data.h)?, &data.c);
        if r < tol {
            return Ok((conv, r));
        }
        best = best.min(r);
    }
    Err(Error::Convention { best })
}

/// Bilinear period relation on `space`, with the convention frozen on the line.
/// Residual: `max |lhs - rhs| / max |entry|`.
pub fn check_period_relation(space: Space, v: &ExponentVector, cfg: &BranchConfig, q: &QuadratureSpec) -> Result<CheckResult> {
    let (conv, y_res) = freeze_convention(v, cfg, q, 1e-8)?;
    let (name, tol, residual) = match space {
        Space::Y => ("period_relation_y", 1e-8, y_res),
        Space::X => {
            let data = relation_data(Space::X, v, cfg, q)?;
            ("period_relation_x", 1e-7, relative_deviation(&conv.assemble(&data.p, &data.pd, &data.h)?, &data.c))
        }
    };
    Ok(CheckResult::new(name, residual, tol).with("convention", conv.describe()))
}

/// Vanishing of the pairings between eigencycles and forms of the opposite eigenvalue,
/// for the loaded and the dual system, relative to the largest period.
pub fn check_orthogonality(v: &ExponentVector, cfg: &BranchConfig, q: &QuadratureSpec) -> Result<CheckResult> {
    let data = relation_data(Space::X, v, cfg, q)?;
    let cross = |m: &CMatrix| {
        let mut worst: f64 = 0.0;
        for r in 0..8 {
            for c in 0..8 {
                if (r < 4) != (c < 4) {
                    worst = worst.max(m[(r, c)].norm());
                }
            }
        }
        worst / max_abs(m)
    };
    let residual = cross(&data.p).max(cross(&data.pd));
    Ok(CheckResult::new("eigen_orthogonality", residual, 1e-9))
}

/// Residue oracle against the closed cohomology matrices on the line (loaded and `f`-shifted).
pub fn check_genus0_cohomology(v: &ExponentVector, cfg: &BranchConfig) -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    for spec in [TwistSpec::raw(*v), TwistSpec::f_twisted(*v)] {
        let oracle = y_cohomology_from_residues(&spec, cfg)?;
        worst = worst.max(relative_deviation(&oracle, &intersect_y_cohomology(&spec)?.entries));
    }
    Ok(CheckResult::new("cohomology_y_residues", worst, 1e-10))
}

/// Residue assembly of `C(-1)` against its closed form over seeded draws.
pub fn check_c_minus(cfg: &BranchConfig, seed: u64, draws: usize) -> Result<CheckResult> {
    let mut rng = seeded_rng(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..draws {
        let v = random_admissible(&mut rng, 0.02);
        worst = worst.max(relative_deviation(&c_minus_block_from_residues(&v, cfg)?, &c_minus_block(&v, cfg)));
    }
    Ok(CheckResult::new("c_minus_residues", worst, 1e-10).with("draws", format!("{draws}")))
}

/// Determinants of `C(1)`, `C(-1)`, `H(+1)`, `H(-1)` and `Q` against their closed forms.
pub fn check_determinants(cfg: &BranchConfig, seed: u64, draws: usize) -> Result<CheckResult> {
    let mut rng = seeded_rng(seed);
    let mut worst = [0.0f64; 5];
    for _ in 0..draws {
        let v = random_admissible(&mut rng, 0.02);
        let pairs = [
            (c_plus_block(&v).determinant(), det_c_plus_closed_form(&v)),
            (c_minus_block(&v, cfg).determinant(), det_c_minus_closed_form(&v, cfg)),
            (h_block(&v, Eigen::Plus).determinant(), det_h_closed_form(&v, Eigen::Plus)),
            (h_block(&v, Eigen::Minus).determinant(), det_h_closed_form(&v, Eigen::Minus)),
            (
                determinant::<Complex64>(&change_of_basis_q::<Complex64>(&v, false)?),
                det_q_closed_form::<Complex64>(&v, false),
            ),
        ];
        for (w, (a, b)) in worst.iter_mut().zip(pairs) {
            *w = w.max(relative_gap(a, b));
        }
    }
    // Exact phase-polynomial identity, independent of any draw.
    let exact = determinant::<PhasePoly>(&change_of_basis_q::<PhasePoly>(&(), false)?) - det_q_closed_form::<PhasePoly>(&(), false);
    let residual = worst.iter().copied().fold(0.0, f64::max);
    Ok(CheckResult::new("determinants", residual, 1e-10)
        .with("det_c_plus", format!("{:e}", worst[0]))
        .with("det_c_minus", format!("{:e}", worst[1]))
        .with("det_h_plus", format!("{:e}", worst[2]))
        .with("det_h_minus", format!("{:e}", worst[3]))
        .with("det_q", format!("{:e}", worst[4]))
        .with("det_q_exact_zero", format!("{}", exact.is_empty()))
        .with("draws", format!("{draws}")))
}

/// The relation among `s01..s45` periods as displayed, for every basis eigenform.
/// Residual: `max |lhs - rhs| / sum |terms|`.
pub fn check_corollary_relation(v: &ExponentVector, cfg: &BranchConfig, q: &QuadratureSpec) -> Result<CheckResult> {
    let spec = TwistSpec::raw(*v);
    let mut worst = [0.0f64; 2];
    for phi in genus2_forms(cfg).iter() {
        let sign = if phi.eigenvalue > 0 { Eigen::Plus } else { Eigen::Minus };
        let (k, k45) = corollary_coefficients::<Complex64>(sign, v, false);
        let per: Vec<Complex64> = (0..5).map(|j| quad_regularized_interval(j, phi, &spec, cfg, q)).collect::<Result<_>>()?;
        let lhs = k45 * per[4];
        let terms: Vec<Complex64> = (0..4).map(|j| k[j] * per[j]).collect();
        let rhs: Complex64 = terms.iter().sum();
        let scale = lhs.norm() + terms.iter().map(|t| t.norm()).sum::<f64>();
        let slot = usize::from(phi.eigenvalue < 0);
        worst[slot] = worst[slot].max((lhs - rhs).norm() / scale);
    }
    Ok(CheckResult::new("corollary_relation", worst[0].max(worst[1]), 1e-8)
        .with("plus_forms", format!("{:e}", worst[0]))
        .with("minus_forms", format!("{:e}", worst[1])))
}

/// Coefficients of the relation among `s01..s45` obtained by closing the real line through the
/// lower and through the upper half-plane, for the twist `spec` on the line:
/// `sum_j (prod_{k>j} e(2e_k) - e(-2e_5)) int_{s_j} = 0`.
pub fn contour_relation_coefficients(spec: &TwistSpec) -> [Complex64; 5] {
    let ex = spec.effective_all();
    let tail = unit_phase(-ex[5] * 2.0);
    core::array::from_fn(|j| {
        let mut u = Complex64::new(1.0, 0.0);
        for k in (j + 1)..5 {
            u *= unit_phase(ex[k] * 2.0);
        }
        u - tail
    })
}

/// The contour relation for every basis eigenform (forms `f phi` use the `f`-shifted twist).
pub fn check_contour_relation(v: &ExponentVector, cfg: &BranchConfig, q: &QuadratureSpec) -> Result<CheckResult> {
    let spec = TwistSpec::raw(*v);
    let mut worst: f64 = 0.0;
    for phi in genus2_forms(cfg).iter() {
        let k = contour_relation_coefficients(&spec.with_f_twist(phi.f_power as i8));
        let terms: Vec<Complex64> =
            (0..5).map(|j| quad_regularized_interval(j, phi, &spec, cfg, q).map(|p| p * k[j])).collect::<Result<_>>()?;
        let scale: f64 = terms.iter().map(|t| t.norm()).sum();
        worst = worst.max(terms.iter().sum::<Complex64>().norm() / scale);
    }
    Ok(CheckResult::new("contour_relation", worst, 1e-8))
}

/// `F_D` from the Euler integral against the triple series.
pub fn check_fd_identity(p: &LauricellaParams, cfg: &BranchConfig, q: &QuadratureSpec) -> Result<CheckResult> {
    let a = fd_via_integral(p, cfg, q)?;
    let b = fd_via_series(p, cfg, 1e-15)?;
    Ok(CheckResult::new("fd_identity", relative_gap(a, b), 1e-8).with("value", format!("{} {}", b.re, b.im)))
}

/// Gauss series `2F1(a, b; c; z)`, summed until the terms stop mattering.
pub fn hyp2f1_series(a: Complex64, b: Complex64, c: Complex64, z: Complex64) -> Result<Complex64> {
    if z.norm() >= 1.0 {
        return Err(Error::Divergence { index: 1, modulus: z.norm() });
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for n in 0..100_000 {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        sum += term;
        if term.norm() < 1e-17 * sum.norm() && nf > (a.norm() + b.norm() + c.norm()) {
            return Ok(sum);
        }
    }
    Err(Error::TailBound { terms: 100_000, bound: term.norm() })
}

/// With `b2 = b3 = 0` the integral reduces to Euler's integral for `2F1(a, b1; c; z1)`.
pub fn check_2f1_degeneration(p: &LauricellaParams, cfg: &BranchConfig, q: &QuadratureSpec) -> Result<CheckResult> {
    let zero = Complex64::new(0.0, 0.0);
    let reduced = LauricellaParams { b2: zero, b3: zero, ..*p };
    let a = fd_via_integral(&reduced, cfg, q)?;
    let b = hyp2f1_series(p.a, p.b1, p.c, cfg.z(1))?;
    Ok(CheckResult::new("fd_2f1_degeneration", relative_gap(a, b), 1e-10))
}

/// Continued local monodromy of the twist at all six punctures, on the line and on the curve.
pub fn check_monodromy(v: &ExponentVector, cfg: &BranchConfig) -> Result<CheckResult> {
    let spec = TwistSpec::raw(*v);
    let mut worst: f64 = 0.0;
    for p in 0..6 {
        let y = loop_monodromy(p, Space::Y, &spec, cfg)?;
        let x = loop_monodromy(p, Space::X, &spec, cfg)?;
        worst = worst.max((y - e(2.0 * v.re(p))).norm()).max((x - e(4.0 * v.re(p))).norm());
    }
    Ok(CheckResult::new("monodromy", worst, 1e-10))
}

/// Numerical rank of the 8x8 period matrix on the curve.
pub fn check_rank(v: &ExponentVector, cfg: &BranchConfig, q: &QuadratureSpec) -> Result<CheckResult> {
    let data = relation_data(Space::X, v, cfg, q)?;
    let sv = data.p.singular_values();
    let max = sv.iter().copied().fold(0.0, f64::max);
    let min = sv.iter().copied().fold(f64::INFINITY, f64::min);
    let rank = sv.iter().filter(|s| **s > 1e-10 * max).count();
    // Residual is the rank deficit; the tolerance admits zero only.
    Ok(CheckResult::new("period_rank", (8 - rank) as f64, 0.5)
        .with("rank", format!("{rank}"))
        .with("condition", format!("{:e}", max / min)))
}

/// Endpoint-series periods against the loop-corrected oracle on a divergent endpoint, and
/// against Gauss–Jacobi where every endpoint converges, over seeded draws.
pub fn check_regularization(cfg: &BranchConfig, q: &QuadratureSpec, seed: u64, draws: usize) -> Result<CheckResult> {
    let mut rng = seeded_rng(seed);
    let forms = genus0_forms(cfg);
    let qj = q.with_method(QuadMethod::JacobiWeighted);
    let (mut divergent, mut convergent) = (0.0f64, 0.0f64);
    let mut compared = 0usize;
    let mut n = 0;
    while n < draws {
        let v = random_admissible(&mut rng, 0.02);
        if v.re(0) >= -0.02 {
            continue;
        }
        n += 1;
        let spec = TwistSpec::raw(v);
        // phi2 has exponent 2 c0 - 1 < -1 at z0.
        let a = interval_period(0, &forms[1].base, &spec, cfg, q)?;
        let b = circle_regularized_interval(0, &forms[1].base, &spec, cfg, q)?;
        divergent = divergent.max(relative_gap(a.value, b.value));
        for form in forms.iter() {
            for j in 0..5 {
                if let Ok(plain) = interval_period(j, &form.base, &spec, cfg, &qj) {
                    let s = interval_period(j, &form.base, &spec, cfg, q)?;
                    convergent = convergent.max(relative_gap(s.value, plain.value));
                    compared += 1;
                }
            }
        }
    }
    Ok(CheckResult::new("regularization", divergent.max(convergent), 1e-8)
        .with("divergent", format!("{divergent:e}"))
        .with("convergent", format!("{convergent:e}"))
        .with("convergent_pairs", format!("{compared}")))
}

/// Which checks to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    PeriodRelation,
    Corollary,
    Dets,
    Fd,
    Monodromy,
}

impl Suite {
    pub fn parse(name: &str) -> Option<Self> {
        Some(match name {
            "all" => Suite::All,
            "period-relation" => Suite::PeriodRelation,
            "corollary" => Suite::Corollary,
            "dets" => Suite::Dets,
            "fd" => Suite::Fd,
            "monodromy" => Suite::Monodromy,
            _ => return None,
        })
    }
}

/// Runs a suite at the exponents `v`; seeded draws use `seed`. The `F_D` checks use the
/// Lauricella parameters of `v` and need `c4, c5 > 0`.
pub fn run_suite(suite: Suite, v: &ExponentVector, cfg: &BranchConfig, q: &QuadratureSpec, seed: u64) -> Result<VerificationReport> {
    let all = suite == Suite::All;
    let mut checks = vec![];
    if all || suite == Suite::PeriodRelation {
        checks.push(check_genus0_cohomology(v, cfg)?);
        checks.push(check_c_minus(cfg, seed, 20)?);
        checks.push(check_period_relation(Space::Y, v, cfg, q)?);
        checks.push(check_period_relation(Space::X, v, cfg, q)?);
        checks.push(check_orthogonality(v, cfg, q)?);
    }
    if all || suite == Suite::Dets {
        checks.push(check_determinants(cfg, seed, 20)?);
    }
    if all || suite == Suite::Monodromy {
        checks.push(check_monodromy(v, cfg)?);
        checks.push(check_rank(v, cfg, q)?);
    }
    if all || suite == Suite::Corollary {
        checks.push(check_corollary_relation(v, cfg, q)?);
        checks.push(check_contour_relation(v, cfg, q)?);
    }
    if all || suite == Suite::Fd {
        let p = lauricella_from_exponents(v);
        checks.push(check_fd_identity(&p, cfg, q)?);
        checks.push(check_2f1_degeneration(&p, cfg, q)?);
    }
    if all {
        checks.push(check_regularization(cfg, q, seed, 5)?);
    }
    Ok(VerificationReport { checks })
}
