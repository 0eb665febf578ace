//! Run configuration: parameter block, branch points and quadrature overrides.

use std::io::Read;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use wirtinger_core::multivalued::BranchConfig;
use wirtinger_core::params::{derive_exponents, validate_admissible, ExponentVector, LauricellaParams};
use wirtinger_core::periods::{QuadMethod, QuadratureSpec};

/// A real number or an `[re, im]` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Real(f64),
    Complex([f64; 2]),
}

impl Number {
    pub fn value(self) -> Complex64 {
        match self {
            Number::Real(x) => Complex64::new(x, 0.0),
            Number::Complex([re, im]) => Complex64::new(re, im),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LauricellaBlock {
    pub a: Number,
    pub b1: Number,
    pub b2: Number,
    pub b3: Number,
    pub c: Number,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodName {
    Series,
    Jacobi,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<MethodName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_nodes: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split_fraction: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series_terms: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jacobi_nodes: Option<usize>,
}

/// The document as written. Exactly one of `lauricella` and `exponents` must be present.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lauricella: Option<LauricellaBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponents: Option<Vec<Number>>,
    pub z: Vec<Number>,
    #[serde(default)]
    pub quadrature: QuadratureOverrides,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error{}: {message}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Parse { line: Option<usize>, message: String },
    #[error("invalid field `{field}`: {message}")]
    Field { field: &'static str, message: String },
    #[error("inadmissible parameters: {0}")]
    Admissibility(wirtinger_core::Error),
}

/// A parsed and validated configuration.
#[derive(Debug, Clone)]
pub struct Validated {
    pub config: Config,
    pub exponents: ExponentVector,
    pub lauricella: Option<LauricellaParams>,
    pub z: [Complex64; 3],
    pub quadrature: QuadratureSpec,
}

impl Validated {
    /// Branch points; fails for coincident points, so commands that only need the series
    /// (e.g. `F_D` at the origin) do not call it.
    pub fn branch(&self) -> wirtinger_core::Result<BranchConfig> {
        BranchConfig::new(self.z)
    }

    pub fn seed(&self) -> u64 {
        self.config.seed.unwrap_or(DEFAULT_SEED)
    }
}

pub const DEFAULT_SEED: u64 = 20240501;

/// Reads `path` (`-` for stdin). Files ending in `.toml` are read as TOML, everything else as JSON.
pub fn parse_config(path: &Path) -> Result<Validated, ConfigError> {
    let io = |source| ConfigError::Io { path: path.display().to_string(), source };
    let mut text = String::new();
    if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).map_err(io)?;
    } else {
        text = std::fs::read_to_string(path).map_err(io)?;
    }
    let toml = path.extension().is_some_and(|e| e == "toml");
    parse_str(&text, toml)
}

pub fn parse_str(text: &str, toml: bool) -> Result<Validated, ConfigError> {
    let config: Config = if toml {
        toml::from_str(text).map_err(|e| ConfigError::Parse {
            line: e.span().map(|s| text[..s.start.min(text.len())].lines().count().max(1)),
            message: e.message().to_string(),
        })?
    } else {
        serde_json::from_str(text).map_err(|e| ConfigError::Parse { line: Some(e.line()), message: e.to_string() })?
    };
    validate(config)
}

pub fn validate(config: Config) -> Result<Validated, ConfigError> {
    let (exponents, lauricella) = match (&config.lauricella, &config.exponents) {
        (Some(_), Some(_)) | (None, None) => {
            return Err(ConfigError::Field {
                field: "lauricella/exponents",
                message: "exactly one of the two parameter blocks must be given".into(),
            })
        }
        (Some(l), None) => {
            let p = LauricellaParams { a: l.a.value(), b1: l.b1.value(), b2: l.b2.value(), b3: l.b3.value(), c: l.c.value() };
            let v = derive_exponents(&p).map_err(ConfigError::Admissibility)?;
            validate_admissible(&v).map_err(ConfigError::Admissibility)?;
            (v, Some(p))
        }
        (None, Some(c)) => {
            let c: [Number; 6] = c.as_slice().try_into().map_err(|_| ConfigError::Field {
                field: "exponents",
                message: format!("expected 6 entries, found {}", c.len()),
            })?;
            (ExponentVector::new(c.map(Number::value)).map_err(ConfigError::Admissibility)?, None)
        }
    };
    let z: [Number; 3] = config.z.as_slice().try_into().map_err(|_| ConfigError::Field {
        field: "z",
        message: format!("expected 3 entries, found {}", config.z.len()),
    })?;
    let z = z.map(Number::value);
    if z.iter().any(|w| !w.re.is_finite() || !w.im.is_finite()) {
        return Err(ConfigError::Field { field: "z", message: "entries must be finite".into() });
    }

    let o = &config.quadrature;
    let d = QuadratureSpec::default();
    let quadrature = QuadratureSpec {
        method: match o.method {
            Some(MethodName::Jacobi) => QuadMethod::JacobiWeighted,
            _ => QuadMethod::EndpointSeries,
        },
        tol: o.tol.unwrap_or(d.tol),
        max_nodes: o.max_nodes.unwrap_or(d.max_nodes),
        split_fraction: o.split_fraction.unwrap_or(d.split_fraction),
        series_terms: o.series_terms.unwrap_or(d.series_terms),
        jacobi_nodes: o.jacobi_nodes.unwrap_or(d.jacobi_nodes),
    };
    quadrature.validate().map_err(|e| ConfigError::Field { field: "quadrature", message: e.to_string() })?;
    Ok(Validated { config, exponents, lauricella, z, quadrature })
}
