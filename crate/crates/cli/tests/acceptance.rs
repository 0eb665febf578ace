//! Acceptance run at the reference fixture: one PASS/FAIL line per criterion.
//!
//! Criterion 5 is known to fail (the displayed corollary coefficients do not satisfy the
//! relation the computed periods obey). Its line prints FAIL with the measured residual; the
//! run then asserts the diagnosis instead: the literal relation misses its tolerance while the
//! contour relation among the same five periods closes to 1e-8.

use std::process::ExitCode;

use wirtinger_core::multivalued::{BranchConfig, Space};
use wirtinger_core::params::{ExponentVector, LauricellaParams, REFERENCE_EXPONENTS, REFERENCE_Z};
use wirtinger_core::periods::QuadratureSpec;
use wirtinger_core::verify::{
    check_2f1_degeneration, check_c_minus, check_contour_relation, check_corollary_relation, check_determinants,
    check_fd_identity, check_genus0_cohomology, check_monodromy, check_orthogonality, check_period_relation,
    check_rank, check_regularization, CheckResult,
};

const SEED: u64 = 20240501;

struct Line {
    criterion: u8,
    checks: Vec<CheckResult>,
}

impl Line {
    fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn print(&self) {
        let verdict = if self.pass() { "PASS" } else { "FAIL" };
        let parts: Vec<String> =
            self.checks.iter().map(|c| format!("{} residual {:.3e} tol {:.0e}", c.name, c.residual, c.tolerance)).collect();
        println!("{verdict} criterion {}: {}", self.criterion, parts.join("; "));
    }
}

fn main() -> ExitCode {
    let v = ExponentVector::from_real(REFERENCE_EXPONENTS).unwrap();
    let [z1, z2, z3] = REFERENCE_Z;
    let cfg = BranchConfig::real(z1, z2, z3).unwrap();
    let q = QuadratureSpec::default();
    let fd = LauricellaParams::real(0.36, 0.3, 0.2, -0.1, 0.8);

    let lines = vec![
        Line {
            criterion: 1,
            checks: vec![check_genus0_cohomology(&v, &cfg).unwrap(), check_period_relation(Space::Y, &v, &cfg, &q).unwrap()],
        },
        Line { criterion: 2, checks: vec![check_c_minus(&cfg, SEED, 20).unwrap()] },
        Line { criterion: 3, checks: vec![check_determinants(&cfg, SEED, 20).unwrap()] },
        Line {
            criterion: 4,
            checks: vec![check_period_relation(Space::X, &v, &cfg, &q).unwrap(), check_orthogonality(&v, &cfg, &q).unwrap()],
        },
        Line { criterion: 5, checks: vec![check_corollary_relation(&v, &cfg, &q).unwrap()] },
        Line {
            criterion: 6,
            checks: vec![check_fd_identity(&fd, &cfg, &q).unwrap(), check_2f1_degeneration(&fd, &cfg, &q).unwrap()],
        },
        Line { criterion: 7, checks: vec![check_monodromy(&v, &cfg).unwrap(), check_rank(&v, &cfg, &q).unwrap()] },
        Line { criterion: 8, checks: vec![check_regularization(&cfg, &q, SEED, 5).unwrap()] },
    ];
    for line in &lines {
        line.print();
    }

    let mut ok = true;
    for line in &lines {
        if line.criterion == 5 {
            continue;
        }
        if !line.pass() {
            eprintln!("criterion {} failed", line.criterion);
            ok = false;
        }
    }

    // Criterion 5: record the failure and check that the diagnosis still holds.
    let corollary = &lines[4].checks[0];
    let contour = check_contour_relation(&v, &cfg, &q).unwrap();
    println!(
        "note criterion 5: displayed relation residual {:.3e} (plus forms {}, minus forms {}); contour relation residual {:.3e}",
        corollary.residual,
        meta(corollary, "plus_forms"),
        meta(corollary, "minus_forms"),
        contour.residual
    );
    if corollary.pass {
        eprintln!("criterion 5 unexpectedly passes; revisit the recorded diagnosis");
        ok = false;
    }
    if !contour.pass {
        eprintln!("contour relation fails: the periods themselves are suspect");
        ok = false;
    }

    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn meta<'a>(c: &'a CheckResult, key: &str) -> &'a str {
    c.metadata.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str()).unwrap_or("?")
}
