//! The symmetry of the pairing: pair(xi, rho_Q(eta)) = pair(eta, rho_Q(xi))
//! for (0,1)-classes on a curve (sign +1), exact on the line and measured on
//! the torus. This is also the involution invariance of the graded image.

use exact_algebra::GaussianRational;
use gauss_core::{relation_space, symmetry_pair, HodgeBackend};
use num_complex::Complex64;
use p1_backend::P1Backend;
use torus_backend::TorusBackend;

use crate::report::{Cell, Outcome, ReportBuilder, VerificationReport};
use crate::Tolerances;

pub fn verify_symmetry_p1(d: usize, points: &[(GaussianRational, GaussianRational)]) -> VerificationReport {
    let mut rb = ReportBuilder::new(&format!("symmetry_p1_d{d}"), "p1");
    rb.param("d", d);
    let backend = P1Backend::new(d);
    let space = match relation_space(&backend, 2) {
        Ok(s) => s,
        Err(e) => {
            rb.note(e.to_string());
            return rb.finish(Outcome::Fail);
        }
    };
    let mut pass = true;
    for (qi, q) in space.basis.iter().enumerate() {
        for (a, b) in points {
            if a == b {
                continue;
            }
            let label = format!("q{qi}_({a},{b})");
            let outcome = (|| -> Result<bool, gauss_core::BackendError> {
                let xi = backend.schiffer_class(a, 1)?;
                let eta = backend.schiffer_class(b, 1)?;
                let (left, right) = symmetry_pair(&backend, q, &xi, &eta)?;
                Ok(left == right)
            })();
            match outcome {
                Ok(true) => {
                    rb.cell(Cell::exact(label, "equal"));
                }
                Ok(false) => {
                    rb.cell(Cell::exact(label, "UNEQUAL"));
                    pass = false;
                }
                Err(e) => {
                    rb.note(format!("{label}: {e}"));
                    pass = false;
                }
            }
        }
    }
    rb.finish(if pass { Outcome::Pass } else { Outcome::Fail })
}

pub fn verify_symmetry_torus(
    tau: Complex64,
    d: usize,
    n: usize,
    pairs: &[((f64, f64), (f64, f64))],
    tol: &Tolerances,
) -> Result<VerificationReport, gauss_core::BackendError> {
    let mut rb = ReportBuilder::new(&format!("symmetry_torus_d{d}_n{n}"), "torus");
    rb.param("d", d);
    rb.param("grid", n);
    let backend = TorusBackend::new(tau, d, n)?;
    let space = relation_space(&backend, 2)?;
    let mut worst = 0.0f64;
    for (qi, q) in space.basis.iter().enumerate() {
        for (pi, (a, b)) in pairs.iter().enumerate() {
            let xi = backend.schiffer_class(a, 1)?;
            let eta = backend.schiffer_class(b, 1)?;
            let (left, right) = symmetry_pair(&backend, q, &xi, &eta)?;
            let denom = left.norm().max(right.norm()).max(1e-300);
            let rel = (left - right).norm() / denom;
            rb.cell(Cell::new(format!("q{qi}_pair{pi}"), rel, 0.0, rel));
            worst = worst.max(rel);
        }
    }
    rb.measure("worst_defect", format!("{worst:.6e}"));
    let pass = worst < tol.symmetry;
    Ok(rb.finish(if pass { Outcome::Pass } else { Outcome::Fail }))
}
