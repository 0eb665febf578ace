use alloc::string::String;

use thiserror::Error;

/// Errors raised by the parameter model, the branch engine and the period engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("exponent c{index} = {value} is resonant: 4*c{index} is within tolerance of an integer")]
    Admissibility { index: usize, value: f64 },

    #[error("exponents do not sum to zero (|sum| = {residual:e})")]
    Sum { residual: f64 },

    #[error("invalid branch configuration: {0}")]
    Config(String),

    #[error("degenerate configuration: {0}")]
    DegenerateConfig(String),

    #[error("path passes within {distance:e} of branch point z{index}")]
    Singularity { index: usize, distance: f64 },

    #[error("local exponent {exponent} at point {point} is resonant")]
    Resonance { point: usize, exponent: f64 },

    #[error("series truncated at order {order} with tail estimate {tail:e}")]
    Truncation { order: usize, tail: f64 },

    #[error("quadrature did not reach tolerance {tolerance:e}: best estimate error {estimate:e}")]
    Tolerance { tolerance: f64, estimate: f64 },

    #[error("series diverges: |z{index}| = {modulus} >= 1")]
    Divergence { index: usize, modulus: f64 },

    #[error("tail bound not reached after {terms} terms (bound {bound:e})")]
    TailBound { terms: usize, bound: f64 },

    #[error("gamma function pole at {0}")]
    Pole(f64),

    #[error("unknown or unsupported cycle symbol: {0}")]
    UnknownSymbol(String),

    #[error("no period-relation convention matched (best residual {best:e})")]
    Convention { best: f64 },
}

pub type Result<T> = core::result::Result<T, Error>;
