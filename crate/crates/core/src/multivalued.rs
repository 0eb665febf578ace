//! Branch-tracked evaluation of the multivalued sections `T`, `T f`, `y` and `f`.
//!
//! Branch rule: on `(1, inf)` every `arg(t - z_k)` is zero and `y > 0`; every
//! other branch is reached by continuation through the lower half-plane, so a
//! point left of `z_k` on the real axis carries `arg(t - z_k) = -pi`.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{e, TwistSpec};

/// The finite branch points `z_0 = 0, z_1, z_2, z_3, z_4 = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchConfig {
    z: [Complex64; 3],
}

impl BranchConfig {
    pub fn new(z: [Complex64; 3]) -> Result<Self> {
        let cfg = Self { z };
        let pts = cfg.points();
        for i in 0..5 {
            for j in (i + 1)..5 {
                if (pts[i] - pts[j]).norm() < 1e-12 {
                    return Err(Error::DegenerateConfig(format!("z{i} and z{j} coincide")));
                }
            }
        }
        Ok(cfg)
    }

    pub fn real(z1: f64, z2: f64, z3: f64) -> Result<Self> {
        Self::new([z1, z2, z3].map(|x| Complex64::new(x, 0.0)))
    }

    /// `[0, z1, z2, z3, 1]`.
    pub fn points(&self) -> [Complex64; 5] {
        [Complex64::new(0.0, 0.0), self.z[0], self.z[1], self.z[2], Complex64::new(1.0, 0.0)]
    }

    pub fn z(&self, k: usize) -> Complex64 {
        self.points()[k]
    }

    pub fn real_points(&self) -> [f64; 5] {
        self.points().map(|p| p.re)
    }

    /// True iff `0 < z1 < z2 < z3 < 1` on the real line.
    pub fn real_ordered(&self) -> bool {
        let p = self.points();
        p.iter().all(|w| w.im == 0.0) && p.windows(2).all(|w| w[0].re < w[1].re)
    }

    pub fn require_real_ordered(&self) -> Result<()> {
        if self.real_ordered() {
            Ok(())
        } else {
            Err(Error::Config(format!("branch points {:?} are not real and ordered", self.z)))
        }
    }

    /// Smallest distance between two finite branch points.
    pub fn min_gap(&self) -> f64 {
        let p = self.points();
        let mut gap = f64::INFINITY;
        for i in 0..5 {
            for j in (i + 1)..5 {
                gap = gap.min((p[i] - p[j]).norm());
            }
        }
        gap
    }

    /// Distance from `z_k` to the nearest other finite branch point.
    pub fn isolation(&self, k: usize) -> f64 {
        let p = self.points();
        (0..5).filter(|&i| i != k).map(|i| (p[i] - p[k]).norm()).fold(f64::INFINITY, f64::min)
    }

    pub fn exclusion_radius(&self) -> f64 {
        1e-3 * self.min_gap()
    }

    pub fn max_modulus(&self) -> f64 {
        self.points().iter().map(|p| p.norm()).fold(1.0, f64::max)
    }

    pub fn base_point(&self) -> f64 {
        2.0 * self.max_modulus() + 1.0
    }
}

/// A point of the base together with continuously tracked `arg(x - z_k)` and `y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchState {
    pub x: Complex64,
    pub args: [f64; 5],
    pub y: Complex64,
}

impl BranchState {
    /// `prod_k (x - z_k)^{powers[k]}` on the tracked branch.
    pub fn loaded_power(&self, cfg: &BranchConfig, powers: &[Complex64; 5]) -> Complex64 {
        let pts = cfg.points();
        let mut log = Complex64::new(0.0, 0.0);
        for k in 0..5 {
            let local = Complex64::new(libm::log((self.x - pts[k]).norm()), self.args[k]);
            log += powers[k] * local;
        }
        log.exp()
    }

    /// `T_eff` for the given twist (powers `2 e_k`).
    pub fn loaded_twist(&self, cfg: &BranchConfig, spec: &TwistSpec) -> Complex64 {
        let powers: [Complex64; 5] = core::array::from_fn(|k| spec.effective(k) * 2.0);
        self.loaded_power(cfg, &powers)
    }

    /// `y` computed from the tracked arguments.
    pub fn y_from_args(&self, cfg: &BranchConfig) -> Complex64 {
        self.loaded_power(cfg, &[Complex64::new(0.5, 0.0); 5])
    }

    /// `f = x (x - 1) / y` on the tracked sheet.
    pub fn f(&self) -> Complex64 {
        self.x * (self.x - 1.0) / self.y
    }

    /// The same point on the other sheet of the curve.
    pub fn involution(&self) -> Self {
        Self { y: -self.y, ..*self }
    }
}

/// Base point on the lift of `(1, inf)` with all arguments zero and `y > 0`.
pub fn init_base_branch(cfg: &BranchConfig) -> Result<BranchState> {
    cfg.require_real_ordered()?;
    let xb = cfg.base_point();
    let x = Complex64::new(xb, 0.0);
    let prod: Complex64 = cfg.points().iter().map(|z| x - z).product();
    Ok(BranchState { x, args: [0.0; 5], y: Complex64::new(libm::sqrt(prod.re), 0.0) })
}

/// One piece of a continuation path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PathSegment {
    /// Straight line to the given point.
    Line(Complex64),
    /// Arc around `center` through `sweep` radians (positive = counter-clockwise),
    /// starting from the current point.
    Arc { center: Complex64, sweep: f64 },
}

const MAX_ARG_STEP: f64 = FRAC_PI_4;

fn try_step(
    state: &BranchState,
    x_new: Complex64,
    pts: &[Complex64; 5],
    exclusion: f64,
) -> Result<Option<BranchState>> {
    let mut args = state.args;
    for k in 0..5 {
        let d = x_new - pts[k];
        if d.norm() < exclusion {
            return Err(Error::Singularity { index: k, distance: d.norm() });
        }
        let delta = (d / (state.x - pts[k])).arg();
        if delta.abs() >= MAX_ARG_STEP {
            return Ok(None);
        }
        args[k] += delta;
    }
    let prod: Complex64 = pts.iter().map(|z| x_new - z).product();
    let root = prod.sqrt();
    let y = if (root - state.y).norm() <= (root + state.y).norm() { root } else { -root };
    if (y - state.y).norm() > 0.5 * state.y.norm() {
        return Ok(None);
    }
    Ok(Some(BranchState { x: x_new, args, y }))
}

fn run_segment(
    mut state: BranchState,
    pts: &[Complex64; 5],
    exclusion: f64,
    position: impl Fn(f64) -> Complex64,
) -> Result<BranchState> {
    let mut tau: f64 = 0.0;
    let mut h: f64 = 1.0 / 16.0;
    while tau < 1.0 {
        let next = (tau + h).min(1.0);
        match try_step(&state, position(next), pts, exclusion)? {
            Some(s) => {
                state = s;
                tau = next;
                h = (2.0 * h).min(0.125);
            }
            None => {
                h *= 0.5;
                if h < 1e-14 {
                    return Err(Error::Config("continuation step underflow".into()));
                }
            }
        }
    }
    Ok(state)
}

/// Continues `state` along `path`, tracking every argument and `y` continuously.
pub fn continue_along_path(
    state: BranchState,
    cfg: &BranchConfig,
    path: &[PathSegment],
) -> Result<BranchState> {
    let pts = cfg.points();
    let exclusion = cfg.exclusion_radius();
    let mut state = state;
    for seg in path {
        let start = state.x;
        state = match *seg {
            PathSegment::Line(end) => {
                run_segment(state, &pts, exclusion, |tau| start + (end - start) * tau)?
            }
            PathSegment::Arc { center, sweep } => {
                let radius = (start - center).norm();
                let theta0 = (start - center).arg();
                run_segment(state, &pts, exclusion, |tau| {
                    center + Complex64::from_polar(radius, theta0 + sweep * tau)
                })?
            }
        };
    }
    Ok(state)
}

/// Path from the base point to the real point `t` through the lower half-plane.
pub fn lower_path_to(cfg: &BranchConfig, t: f64) -> Vec<PathSegment> {
    let xb = cfg.base_point();
    let depth = 0.5 * (xb - t).abs();
    let mid = Complex64::new(0.5 * (xb + t), -depth);
    alloc::vec![PathSegment::Line(mid), PathSegment::Line(Complex64::new(t, 0.0))]
}

/// Branch state at a real point `t` (not a branch point) under the lower half-plane rule.
pub fn state_at_real_point(cfg: &BranchConfig, t: f64) -> Result<BranchState> {
    let base = init_base_branch(cfg)?;
    continue_along_path(base, cfg, &lower_path_to(cfg, t))
}

/// Constant phase of the loaded twist on `(z_j, z_{j+1})` relative to
/// `prod_k |t - z_k|^{2 e_k}`: `prod_{k > j} e(-e_k)`.
pub fn interval_phase_factor(j: usize, spec: &TwistSpec) -> Complex64 {
    let mut phase = Complex64::new(1.0, 0.0);
    for k in (j + 1)..5 {
        phase *= crate::params::unit_phase(-spec.effective(k));
    }
    phase
}

/// Sign of `y` on the lift of `(z_j, z_{j+1})`, as a phase: `prod_{k > j} e(-1/4)`.
pub fn interval_y_phase(j: usize) -> Complex64 {
    e(-0.25 * (4 - j.min(4)) as f64)
}

/// Which space a loop lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    /// The punctured line: a simple loop around `z_p`.
    Y,
    /// The punctured curve: a loop around `P_p` projects to a double loop.
    X,
}

/// Closed path from the base point encircling only the puncture `p` (5 = infinity)
/// `windings` times in the positive local sense.
pub fn loop_path(cfg: &BranchConfig, p: usize, windings: i32) -> Vec<PathSegment> {
    let xb = Complex64::new(cfg.base_point(), 0.0);
    if p >= 5 {
        let far = xb * 2.0;
        // Positive around infinity is clockwise in x.
        return alloc::vec![
            PathSegment::Line(far),
            PathSegment::Arc { center: Complex64::new(0.0, 0.0), sweep: -2.0 * PI * windings as f64 },
            PathSegment::Line(xb),
        ];
    }
    let zp = cfg.z(p);
    let r = 0.4 * cfg.isolation(p);
    let approach = zp - Complex64::new(0.0, r);
    alloc::vec![
        PathSegment::Line(approach),
        PathSegment::Arc { center: zp, sweep: 2.0 * PI * windings as f64 },
        PathSegment::Line(xb),
    ]
}

/// Local monodromy of the loaded twist around puncture `p`, obtained by numerical
/// continuation around the loop (one turn on `Y`, two turns on `X`).
pub fn loop_monodromy(
    p: usize,
    space: Space,
    spec: &TwistSpec,
    cfg: &BranchConfig,
) -> Result<Complex64> {
    let base = init_base_branch(cfg)?;
    let windings = match space {
        Space::Y => 1,
        Space::X => 2,
    };
    let end = continue_along_path(base, cfg, &loop_path(cfg, p, windings))?;
    Ok(end.loaded_twist(cfg, spec) / base.loaded_twist(cfg, spec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{shift_exponents, unit_phase, ExponentVector, REFERENCE_EXPONENTS};

    fn fixture() -> (BranchConfig, ExponentVector) {
        (BranchConfig::real(0.2, 0.45, 0.7).unwrap(), ExponentVector::from_real(REFERENCE_EXPONENTS).unwrap())
    }

    #[test]
    fn base_branch_values() {
        let (cfg, v) = fixture();
        let b = init_base_branch(&cfg).unwrap();
        assert_eq!(b.x, Complex64::new(3.0, 0.0));
        let y = libm::sqrt(3.0 * 2.0 * 2.8 * 2.55 * 2.3);
        assert!((b.y.re - y).abs() < 1e-12 && b.y.im == 0.0);
        let spec = TwistSpec::raw(v);
        let direct: f64 = (0..5).map(|k| libm::pow(3.0 - cfg.z(k).re, 2.0 * v.re(k))).product();
        assert!((b.loaded_twist(&cfg, &spec) - direct).norm() < 1e-13);
        let f = b.f();
        assert!(f.im == 0.0 && f.re > 0.0);
    }

    #[test]
    fn non_real_config_rejected_for_base() {
        let cfg = BranchConfig::new([
            Complex64::new(0.2, 0.1),
            Complex64::new(0.45, 0.0),
            Complex64::new(0.7, 0.0),
        ])
        .unwrap();
        assert!(matches!(init_base_branch(&cfg), Err(Error::Config(_))));
    }

    #[test]
    fn degenerate_config_rejected() {
        assert!(matches!(BranchConfig::real(0.3, 0.3, 0.7), Err(Error::DegenerateConfig(_))));
    }

    #[test]
    fn contractible_loop_returns_state() {
        let (cfg, _) = fixture();
        let b = init_base_branch(&cfg).unwrap();
        let path = [
            PathSegment::Line(Complex64::new(3.0, 1.0)),
            PathSegment::Arc { center: Complex64::new(3.0, 0.0), sweep: PI },
            PathSegment::Line(Complex64::new(3.0, 0.0)),
        ];
        let end = continue_along_path(b, &cfg, &path).unwrap();
        for k in 0..5 {
            assert!((end.args[k] - b.args[k]).abs() < 1e-12);
        }
        assert!((end.y - b.y).norm() < 1e-12);
    }

    #[test]
    fn loop_around_z1_flips_y_and_gains_phase() {
        let (cfg, v) = fixture();
        let b = init_base_branch(&cfg).unwrap();
        let end = continue_along_path(b, &cfg, &loop_path(&cfg, 1, 1)).unwrap();
        assert!((end.args[1] - 2.0 * PI).abs() < 1e-12);
        assert!((end.y + b.y).norm() < 1e-10 * b.y.norm());
        let m = end.loaded_twist(&cfg, &TwistSpec::raw(v)) / b.loaded_twist(&cfg, &TwistSpec::raw(v));
        assert!((m - unit_phase(v.c(1) * 2.0)).norm() < 1e-10);
    }

    #[test]
    fn interval_phase_matches_continuation() {
        let (cfg, v) = fixture();
        for spec in [TwistSpec::raw(v), TwistSpec::f_twisted(v), crate::params::dualize(&TwistSpec::raw(v))] {
            for j in 0..4 {
                let t = 0.5 * (cfg.z(j).re + cfg.z(j + 1).re);
                let st = state_at_real_point(&cfg, t).unwrap();
                let modulus: f64 = (0..5)
                    .map(|k| libm::pow((t - cfg.z(k).re).abs(), 2.0 * spec.effective(k).re))
                    .product();
                let want = interval_phase_factor(j, &spec) * modulus;
                assert!((st.loaded_twist(&cfg, &spec) - want).norm() < 1e-10 * want.norm());
            }
        }
        assert_eq!(interval_phase_factor(4, &TwistSpec::raw(v)), Complex64::new(1.0, 0.0));
        let p3 = interval_phase_factor(3, &TwistSpec::raw(v));
        assert!((p3 - unit_phase(-v.c(4))).norm() < 1e-15);
        let p3d = interval_phase_factor(3, &crate::params::dualize(&TwistSpec::raw(v)));
        assert!((p3d - unit_phase(v.c(4))).norm() < 1e-15);
    }

    #[test]
    fn y_and_f_on_intervals_follow_the_same_rule() {
        let (cfg, v) = fixture();
        let raw = TwistSpec::raw(v);
        let shifted = TwistSpec::raw(shift_exponents(&v));
        for j in 0..4 {
            let t = 0.35 * cfg.z(j).re + 0.65 * cfg.z(j + 1).re;
            let st = state_at_real_point(&cfg, t).unwrap();
            assert!((st.y - st.y_from_args(&cfg)).norm() < 1e-10 * st.y.norm());
            let tf = st.loaded_twist(&cfg, &raw) * st.f();
            assert!((tf - st.loaded_twist(&cfg, &shifted)).norm() < 1e-10 * tf.norm());
            let modulus: f64 = (0..5).map(|k| libm::sqrt((t - cfg.z(k).re).abs())).product();
            assert!((st.y - interval_y_phase(j) * modulus).norm() < 1e-10 * modulus);
        }
    }
}
