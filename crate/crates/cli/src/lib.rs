//! Command-line front end for `wirtinger-core`.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 configuration or validation error,
//! 3 numeric-domain error (divergent series, resonant endpoint, unreachable tolerance).

pub mod config;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use wirtinger_core::cohomology::{
    build_c, c_minus_block, c_plus_block, det_c_minus_closed_form, det_c_plus_closed_form, genus2_forms,
    intersect_y_cohomology, y_cohomology_from_residues,
};
use wirtinger_core::homology::{build_h, det_h_closed_form, h_block, intersect_y_homology, Eigen};
use wirtinger_core::matrix::{relative_deviation, relative_gap};
use wirtinger_core::params::{lauricella_from_exponents, TwistSpec};
use wirtinger_core::periods::{eigen_cycles, fd_via_integral, period_matrix};
use wirtinger_core::special::{fd_series, FdParams};
use wirtinger_core::verify::{run_suite, CheckResult, Suite};
use wirtinger_core::Error;

use config::{parse_config, ConfigError, Validated};
use report::{pair, Report};

#[derive(Debug, Parser)]
#[command(name = "wirtinger", version, about = "Intersection matrices, periods and identity checks for the genus-2 Wirtinger integral")]
pub struct Cli {
    /// Configuration file (JSON, or TOML by extension); `-` reads JSON from stdin.
    #[arg(long, global = true, default_value = "-")]
    pub config: PathBuf,
    /// Seed for the random draws; overrides the config.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Quadrature tolerance; overrides the config.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Report path; defaults to the config's `output`, else stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpaceArg {
    #[value(name = "X")]
    X,
    #[value(name = "Y")]
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PairingArg {
    Homology,
    Cohomology,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TwistArg {
    Raw,
    F,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    All,
    PeriodRelation,
    Corollary,
    Dets,
    Fd,
    Monodromy,
}

impl SuiteArg {
    fn suite(self) -> Suite {
        match self {
            SuiteArg::All => Suite::All,
            SuiteArg::PeriodRelation => Suite::PeriodRelation,
            SuiteArg::Corollary => Suite::Corollary,
            SuiteArg::Dets => Suite::Dets,
            SuiteArg::Fd => Suite::Fd,
            SuiteArg::Monodromy => Suite::Monodromy,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print an intersection matrix with closed-form determinant comparisons.
    Intersect {
        #[arg(long, value_enum, default_value = "X")]
        space: SpaceArg,
        #[arg(long, value_enum, default_value = "cohomology")]
        pairing: PairingArg,
        #[arg(long, value_enum, default_value = "raw")]
        twist: TwistArg,
    },
    /// The 8x8 period matrix over the eigencycles with error estimates.
    Periods,
    /// Run a verification suite; exits 0 iff every check passes.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
    },
    /// Evaluate F_D by its series, and by the Euler integral when the branch points allow it.
    Fd,
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Core(#[from] Error),
    #[error("invalid flags: {0}")]
    Usage(String),
    #[error("cannot write report: {0}")]
    Output(std::io::Error),
}

impl RunError {
    pub fn exit_code(&self) -> u8 {
        match self {
            RunError::Config(_) | RunError::Usage(_) | RunError::Output(_) => 2,
            RunError::Core(e) => match e {
                Error::Admissibility { .. }
                | Error::Sum { .. }
                | Error::Config(_)
                | Error::DegenerateConfig(_)
                | Error::UnknownSymbol(_) => 2,
                Error::Convention { .. } => 1,
                _ => 3,
            },
        }
    }
}

/// Parses the config, runs the command and returns the report.
pub fn execute(cli: &Cli) -> Result<Report, RunError> {
    let mut v = parse_config(&cli.config)?;
    if let Some(seed) = cli.seed {
        v.config.seed = Some(seed);
    }
    if let Some(tol) = cli.tol {
        v.quadrature.tol = tol;
        v.quadrature.validate()?;
    }
    match cli.command {
        Command::Intersect { space, pairing, twist } => intersect(&v, space, pairing, twist),
        Command::Periods => periods(&v),
        Command::Verify { suite } => verify(&v, suite),
        Command::Fd => fd(&v),
    }
}

/// Runs and writes the report; returns the process exit code.
pub fn run(cli: &Cli) -> u8 {
    match execute(cli) {
        Ok(report) => {
            let out = cli.out.clone().or_else(|| report.config_echo.output.clone());
            if let Err(e) = write_report(&report, out) {
                eprintln!("error: {e}");
                return e.exit_code();
            }
            if report.all_pass() {
                0
            } else {
                for c in report.checks.iter().filter(|c| !c.pass) {
                    eprintln!("check failed: {} residual {:e} tolerance {:e}", c.name, c.residual, c.tolerance);
                }
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn write_report(report: &Report, out: Option<PathBuf>) -> Result<(), RunError> {
    let text = serde_json::to_string_pretty(report).expect("report serializes") + "\n";
    match out {
        Some(path) => std::fs::write(path, text).map_err(RunError::Output),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn det_check(name: &str, numeric: Complex64, closed: Complex64) -> CheckResult {
    CheckResult::new(name, relative_gap(numeric, closed), 1e-10)
        .with("numeric", format!("{numeric}"))
        .with("closed_form", format!("{closed}"))
}

pub fn intersect(v: &Validated, space: SpaceArg, pairing: PairingArg, twist: TwistArg) -> Result<Report, RunError> {
    let cfg = v.branch()?;
    let x = v.exponents;
    let spec = match twist {
        TwistArg::Raw => TwistSpec::raw(x),
        TwistArg::F => TwistSpec::f_twisted(x),
    };
    let mut r = Report::new("intersect", v.seed(), &v.config);
    match (space, pairing) {
        (SpaceArg::Y, PairingArg::Cohomology) => {
            let m = intersect_y_cohomology(&spec)?;
            let oracle = y_cohomology_from_residues(&spec, &cfg)?;
            r.check(&CheckResult::new("residue_oracle", relative_deviation(&oracle, &m.entries), 1e-10));
            r.values.insert("determinant".into(), pair(m.determinant()));
            r.matrices.insert("cohomology_y".into(), (&m).into());
        }
        (SpaceArg::Y, PairingArg::Homology) => {
            let m = intersect_y_homology(&spec)?;
            let sign = if twist == TwistArg::F { Eigen::Minus } else { Eigen::Plus };
            r.check(&det_check("determinant", m.determinant(), det_h_closed_form(&x, sign)));
            if twist == TwistArg::F {
                r.check(&CheckResult::new("equals_h_minus", relative_deviation(&m.entries, &h_block(&x, Eigen::Minus)), 1e-12));
                r.notes.push("with the f-shifted exponents the line homology matrix equals H(-1)".into());
            }
            r.values.insert("determinant".into(), pair(m.determinant()));
            r.matrices.insert("homology_y".into(), (&m).into());
        }
        (SpaceArg::X, _) if twist == TwistArg::F => {
            return Err(RunError::Usage("--twist f applies to --space Y only".into()));
        }
        (SpaceArg::X, PairingArg::Cohomology) => {
            let m = build_c(&x, &cfg)?;
            r.check(&det_check("det_c_plus", c_plus_block(&x).determinant(), det_c_plus_closed_form(&x)));
            r.check(&det_check("det_c_minus", c_minus_block(&x, &cfg).determinant(), det_c_minus_closed_form(&x, &cfg)));
            r.notes.push("C = 2 pi i diag(C(1), C(-1)); determinants are of the blocks without 2 pi i".into());
            r.matrices.insert("cohomology_x".into(), (&m).into());
        }
        (SpaceArg::X, PairingArg::Homology) => {
            let m = build_h(&x)?;
            for (name, sign) in [("det_h_plus", Eigen::Plus), ("det_h_minus", Eigen::Minus)] {
                r.check(&det_check(name, h_block(&x, sign).determinant(), det_h_closed_form(&x, sign)));
            }
            r.matrices.insert("homology_x".into(), (&m).into());
        }
    }
    Ok(r)
}

pub fn periods(v: &Validated) -> Result<Report, RunError> {
    let cfg = v.branch()?;
    let pm = period_matrix(&eigen_cycles(false), &genus2_forms(&cfg), &TwistSpec::raw(v.exponents), &cfg, &v.quadrature)?;
    let mut cross: f64 = 0.0;
    for i in 0..8 {
        for j in 0..8 {
            if (i < 4) != (j < 4) {
                cross = cross.max(pm.entries[(i, j)].norm());
            }
        }
    }
    let flagged = pm.flagged(1e-9);
    let mut r = Report::new("periods", v.seed(), &v.config);
    r.check(&CheckResult::new("cross_block_zero", cross, 1e-9));
    r.check(&CheckResult::new("flagged_entries", flagged.len() as f64, 0.5).with("tolerance", "1e-9 relative".into()));
    r.matrices.insert("periods".into(), (&pm).into());
    Ok(r)
}

pub fn verify(v: &Validated, suite: SuiteArg) -> Result<Report, RunError> {
    let cfg = v.branch()?;
    let rep = run_suite(suite.suite(), &v.exponents, &cfg, &v.quadrature, v.seed())?;
    let mut r = Report::new("verify", v.seed(), &v.config);
    for c in &rep.checks {
        r.check(c);
    }
    Ok(r)
}

pub fn fd(v: &Validated) -> Result<Report, RunError> {
    let p = v.lauricella.unwrap_or_else(|| lauricella_from_exponents(&v.exponents));
    let params = FdParams { a: p.a, b: [p.b1, p.b2, p.b3], c: p.c };
    let series = fd_series(&params, v.z, 1e-15)?;
    let mut r = Report::new("fd", v.seed(), &v.config);
    r.values.insert("series".into(), pair(series));
    match v.branch() {
        Ok(cfg) if cfg.real_ordered() => {
            let integral = fd_via_integral(&p, &cfg, &v.quadrature)?;
            r.values.insert("integral".into(), pair(integral));
            r.check(&CheckResult::new("fd_identity", relative_gap(series, integral), 1e-8));
        }
        _ => r.notes.push("branch points not real and ordered; integral route skipped".into()),
    }
    Ok(r)
}
