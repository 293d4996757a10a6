//! The central lifting checks: the Hodge-Gaussian map composed with the
//! multiplication pairing reproduces the second Wahl map up to one universal
//! constant, measured as the ratio
//!     r(Q, P) = pair(xi_P, rho_Q(xi_P)) / v_P(mu_2(Q)),
//! which must be one and the same number across every (Q, P) cell.

use exact_algebra::GaussianRational;
use gauss_core::{gauss_rho, relation_space, HodgeBackend};
use num_complex::Complex64;
use p1_backend::P1Backend;
use torus_backend::{FlatCharacter, TorusBackend};

use crate::report::{Cell, Outcome, ReportBuilder, VerificationReport};
use crate::{fmt_complex, Tolerances};

/// Exact lifting on the line: zero tolerance, one Gaussian rational for all
/// degrees, basis elements and sample points.
pub fn verify_lift_p1(degrees: &[usize], points: &[GaussianRational]) -> VerificationReport {
    let mut rb = ReportBuilder::new("lift_p1", "p1");
    rb.param("degrees", format!("{degrees:?}"));
    rb.param("points", points.len());
    let mut constant: Option<GaussianRational> = None;
    let mut consistent = true;
    let mut evaluated = 0usize;
    for &d in degrees {
        let backend = P1Backend::new(d);
        let space = match relation_space(&backend, 2) {
            Ok(s) => s,
            Err(e) => {
                rb.note(format!("d={d}: relation space failed: {e}"));
                return rb.finish(Outcome::Fail);
            }
        };
        rb.measure(&format!("dim_I2_d{d}"), space.dim());
        if space.dim() != d * (d - 1) / 2 {
            rb.note(format!("d={d}: dim I_2 = {} != d(d-1)/2", space.dim()));
            consistent = false;
        }
        for (qi, q) in space.basis.iter().enumerate() {
            for p in points {
                let label = format!("d{d}_q{qi}_P({p})");
                let vp = match backend.wahl_eval(q, p) {
                    Ok(v) => v,
                    Err(e) => {
                        rb.note(format!("{label}: {e}"));
                        consistent = false;
                        continue;
                    }
                };
                if vp.is_zero() {
                    rb.cell(Cell::skipped(label, "mu_2(Q)(P) = 0"));
                    continue;
                }
                let ratio = (|| -> Result<GaussianRational, gauss_core::BackendError> {
                    let xi = backend.schiffer_class(p, 1)?;
                    let image = gauss_rho(&backend, q, &xi, 1)?;
                    let pairing = backend.pair_xi_class(&xi, &image)?;
                    Ok(&pairing / &vp)
                })();
                match ratio {
                    Ok(r) => {
                        evaluated += 1;
                        rb.cell(Cell::exact(label, r.to_string()));
                        match &constant {
                            None => constant = Some(r),
                            Some(c) if *c == r => {}
                            Some(c) => {
                                rb.note(format!("ratio {r} differs from {c}"));
                                consistent = false;
                            }
                        }
                    }
                    Err(e) => {
                        rb.note(format!("{label}: {e}"));
                        consistent = false;
                    }
                }
            }
        }
    }
    match (&constant, evaluated) {
        (None, _) | (_, 0) => rb.finish(Outcome::Inconclusive),
        (Some(c), _) => {
            rb.measure("constant", c.to_string());
            rb.measure("cells", evaluated);
            rb.finish(if consistent { Outcome::Pass } else { Outcome::Fail })
        }
    }
}

pub struct TorusLiftOutcome {
    pub report: VerificationReport,
    pub mean: Complex64,
    pub spread: f64,
    pub ratios: Vec<Complex64>,
}

/// Ratio constancy on the torus at one grid size, optionally with a flat
/// character installed (the twisted generalization; chi = 0 reproduces the
/// plain statement bit for bit).
pub fn torus_lift_ratios(
    tau: Complex64,
    d: usize,
    n: usize,
    chi: FlatCharacter,
    points: &[(f64, f64)],
    tol_spread: f64,
) -> Result<TorusLiftOutcome, gauss_core::BackendError> {
    let check = if chi.is_trivial() { "lift_torus" } else { "lift_torus_twisted" };
    let mut rb = ReportBuilder::new(&format!("{check}_d{d}_n{n}"), "torus");
    rb.param("tau", format!("{}+{}i", tau.re, tau.im));
    rb.param("d", d);
    rb.param("grid", n);
    rb.param("chi", format!("({}, {})", chi.chi1, chi.chi2));
    rb.param("points", points.len());

    let backend = TorusBackend::new(tau, d, n)?.with_character(chi)?;
    let space = relation_space(&backend, 2)?;
    rb.measure("dim_I2", space.dim());
    rb.measure("kernel_gap", format!("{:.3e}", space.diagnostics.gap));

    let mut ratios = Vec::new();
    let mut skipped = 0usize;
    for (qi, q) in space.basis.iter().enumerate() {
        for (pi, p) in points.iter().enumerate() {
            let label = format!("q{qi}_p{pi}");
            let vp = backend.wahl_eval(q, p)?;
            if vp.norm() < 1e-12 {
                rb.cell(Cell::skipped(label, "mu_2(Q)(P) ~ 0"));
                skipped += 1;
                continue;
            }
            let xi = backend.schiffer_class(p, 1)?;
            let image = gauss_rho(&backend, q, &xi, 1)?;
            let pairing = backend.pair_xi_class(&xi, &image)?;
            let r = pairing / vp;
            rb.cell(Cell::new(label, r.re, r.im, image.diagnostics.closedness_residual));
            ratios.push(r);
        }
    }
    if ratios.is_empty() {
        rb.note("all cells degenerate");
        return Ok(TorusLiftOutcome {
            report: rb.finish(Outcome::Inconclusive),
            mean: Complex64::new(f64::NAN, f64::NAN),
            spread: f64::NAN,
            ratios,
        });
    }
    let mean = ratios.iter().sum::<Complex64>() / ratios.len() as f64;
    let spread = ratios
        .iter()
        .map(|r| (r - mean).norm())
        .fold(0.0f64, f64::max)
        / mean.norm();
    rb.measure("constant", fmt_complex(mean));
    rb.measure("relative_spread", format!("{spread:.6e}"));
    rb.measure("skipped_cells", skipped);
    let outcome = if spread < tol_spread { Outcome::Pass } else { Outcome::Fail };
    Ok(TorusLiftOutcome {
        report: rb.finish(outcome),
        mean,
        spread,
        ratios,
    })
}

pub struct TorusLiftPair {
    pub coarse: TorusLiftOutcome,
    pub fine: TorusLiftOutcome,
    pub shrink: f64,
    pub pass: bool,
}

/// The full numerical lifting check: spread below tolerance at n, shrinking
/// by at least the required factor at 2n.
pub fn verify_lift_torus(
    tau: Complex64,
    d: usize,
    n: usize,
    points: &[(f64, f64)],
    tol: &Tolerances,
) -> Result<TorusLiftPair, gauss_core::BackendError> {
    let chi = FlatCharacter::trivial();
    let coarse = torus_lift_ratios(tau, d, n, chi, points, tol.lift_spread)?;
    let fine = torus_lift_ratios(tau, d, 2 * n, chi, points, tol.lift_spread)?;
    let shrink = coarse.spread / fine.spread.max(f64::MIN_POSITIVE);
    let pass = coarse.report.passed() && fine.report.passed() && shrink >= tol.lift_shrink;
    Ok(TorusLiftPair { coarse, fine, shrink, pass })
}

/// The twisted lifting check for a nontrivial character, plus the conjugate
/// character consistency (M and M^{-1} give the same constant).
pub fn verify_twisted_lift(
    tau: Complex64,
    d: usize,
    n: usize,
    chi: FlatCharacter,
    points: &[(f64, f64)],
    tol: &Tolerances,
) -> Result<VerificationReport, gauss_core::BackendError> {
    let mut rb = ReportBuilder::new(&format!("twisted_lift_d{d}_n{n}"), "torus");
    rb.param("chi", format!("({}, {})", chi.chi1, chi.chi2));
    rb.param("d", d);
    rb.param("grid", n);
    let twisted = torus_lift_ratios(tau, d, n, chi, points, tol.twisted_spread)?;
    let conjugate = torus_lift_ratios(tau, d, n, chi.inverse(), points, tol.twisted_spread)?;
    rb.measure("constant", fmt_complex(twisted.mean));
    rb.measure("relative_spread", format!("{:.6e}", twisted.spread));
    rb.measure("conjugate_constant", fmt_complex(conjugate.mean));
    let conj_diff = (twisted.mean - conjugate.mean).norm() / twisted.mean.norm();
    rb.measure("conjugate_constant_drift", format!("{conj_diff:.6e}"));
    for c in &twisted.report.cells {
        rb.cell(c.clone());
    }
    let pass = twisted.report.passed()
        && conjugate.report.passed()
        && conj_diff < tol.twisted_spread;
    Ok(rb.finish(if pass { Outcome::Pass } else { Outcome::Fail }))
}
