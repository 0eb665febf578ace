//! JSON report: complex numbers as `[re, im]`, matrices as row-major arrays.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;
use wirtinger_core::matrix::{CMatrix, IntersectionMatrix};
use wirtinger_core::periods::PeriodMatrix;
use wirtinger_core::verify::CheckResult;

use crate::config::Config;

pub const SCHEMA: &str = "wirtinger-report/1";

#[derive(Debug, Clone, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, String>,
}

impl From<&CheckResult> for CheckEntry {
    fn from(c: &CheckResult) -> Self {
        Self {
            name: c.name.clone(),
            residual: c.residual,
            tolerance: c.tolerance,
            pass: c.pass,
            metadata: c.metadata.iter().cloned().collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MatrixEntry {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub entries: Vec<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub errors: Option<Vec<Vec<f64>>>,
}

pub fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn rows_of(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| pair(m[(i, j)])).collect()).collect()
}

impl From<&IntersectionMatrix> for MatrixEntry {
    fn from(m: &IntersectionMatrix) -> Self {
        Self { rows: m.rows.clone(), cols: m.cols.clone(), entries: rows_of(&m.entries), errors: None }
    }
}

impl From<&PeriodMatrix> for MatrixEntry {
    fn from(m: &PeriodMatrix) -> Self {
        let e = &m.errors;
        Self {
            rows: m.rows.clone(),
            cols: m.cols.clone(),
            entries: rows_of(&m.entries),
            errors: Some((0..e.nrows()).map(|i| (0..e.ncols()).map(|j| e[(i, j)]).collect()).collect()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub seed: u64,
    pub config_echo: Config,
    pub checks: Vec<CheckEntry>,
    pub matrices: BTreeMap<String, MatrixEntry>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, [f64; 2]>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &str, seed: u64, config: &Config) -> Self {
        Self {
            schema: SCHEMA,
            command: command.to_string(),
            seed,
            config_echo: config.clone(),
            checks: Vec::new(),
            matrices: BTreeMap::new(),
            values: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn check(&mut self, c: &CheckResult) {
        self.checks.push(c.into());
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}
