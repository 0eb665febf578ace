//! Labeled complex matrices for intersection and period data.

use alloc::string::String;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

/// Which intersection pairing a matrix represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pairing {
    /// Homology on `X`.
    H,
    /// Cohomology on `X`.
    Ch,
    /// Homology on `Y`.
    H0,
    /// Cohomology on `Y`.
    Ch0,
    HF,
    ChF,
    H0F,
    Ch0F,
}

impl Pairing {
    pub fn tag(self) -> &'static str {
        match self {
            Self::H => "h",
            Self::Ch => "ch",
            Self::H0 => "h0",
            Self::Ch0 => "ch0",
            Self::HF => "h-f",
            Self::ChF => "ch-f",
            Self::H0F => "h0-f",
            Self::Ch0F => "ch0-f",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntersectionMatrix {
    pub entries: CMatrix,
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub pairing: Pairing,
}

impl IntersectionMatrix {
    pub fn new(entries: CMatrix, rows: Vec<String>, cols: Vec<String>, pairing: Pairing) -> Self {
        assert_eq!(entries.nrows(), rows.len());
        assert_eq!(entries.ncols(), cols.len());
        Self { entries, rows, cols, pairing }
    }

    pub fn determinant(&self) -> Complex64 {
        self.entries.clone().determinant()
    }
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `max |a - b| / max(|a|, |b|)` over all entries.
pub fn relative_deviation(a: &CMatrix, b: &CMatrix) -> f64 {
    let scale = max_abs(a).max(max_abs(b));
    if scale == 0.0 {
        return 0.0;
    }
    max_abs(&(a - b)) / scale
}

/// Relative deviation of two scalars, scaled by the larger modulus.
pub fn relative_gap(a: Complex64, b: Complex64) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

/// Block-diagonal `[[a, 0], [0, b]]`.
pub fn block_diag(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let n = a.nrows() + b.nrows();
    let m = a.ncols() + b.ncols();
    let mut out = CMatrix::zeros(n, m);
    out.view_mut((0, 0), (a.nrows(), a.ncols())).copy_from(a);
    out.view_mut((a.nrows(), a.ncols()), (b.nrows(), b.ncols())).copy_from(b);
    out
}

pub fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| String::from(*s)).collect()
}
