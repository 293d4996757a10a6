//! Closedness of sigma: the symbolic identity sum a_ST phi_S del phi_T = 0 on
//! the line (exact, for every m-split), and the measured dbar-sigma residual
//! on the torus.

use exact_algebra::Polynomial;
use gauss_core::multiset::splits;
use gauss_core::{gauss_rho, relation_space, HodgeBackend};
use num_complex::Complex64;
use p1_backend::P1Backend;
use torus_backend::TorusBackend;

use crate::report::{Cell, Outcome, ReportBuilder, VerificationReport};
use crate::Tolerances;

/// The exact identity behind closedness, checked symbolically: for every
/// relation tensor of I_k(O(d)) and every split size m, the polynomial
/// sum_{S,T} a_ST phi_S phi_T' vanishes identically.
pub fn verify_closedness_p1(fixtures: &[(usize, usize)]) -> VerificationReport {
    let mut rb = ReportBuilder::new("closedness_p1", "p1");
    rb.param("fixtures", format!("{fixtures:?}"));
    let mut pass = true;
    let mut checked = 0usize;
    for &(d, k) in fixtures {
        let backend = P1Backend::new(d);
        let space = match relation_space(&backend, k) {
            Ok(s) => s,
            Err(e) => {
                rb.note(format!("d={d} k={k}: {e}"));
                pass = false;
                continue;
            }
        };
        for (qi, q) in space.basis.iter().enumerate() {
            for m in 1..=k {
                let mut acc = Polynomial::zero();
                for (full, c) in q.support() {
                    for (s_part, t_part) in splits(&full, m) {
                        let weight = &c
                            * &exact_algebra::GaussianRational::from_ratio(
                                (s_part.orderings() * t_part.orderings()) as i64,
                                full.orderings() as i64,
                            );
                        let phi_s = backend.section_product(&s_part);
                        let dphi_t = backend.section_product(&t_part).derivative();
                        let term = (&phi_s * &dphi_t).scale(&weight);
                        acc = &acc + &term;
                    }
                }
                checked += 1;
                let label = format!("d{d}_k{k}_q{qi}_m{m}");
                if acc.is_zero() {
                    rb.cell(Cell::exact(label, "0"));
                } else {
                    rb.cell(Cell::exact(label, format!("NONZERO: {acc}")));
                    pass = false;
                }
            }
        }
    }
    rb.measure("identities_checked", checked);
    rb.finish(if pass { Outcome::Pass } else { Outcome::Fail })
}

/// Measured closedness residual of the assembled sigma on the torus, plus the
/// zero-input case.
pub fn verify_closedness_torus(
    tau: Complex64,
    d: usize,
    n: usize,
    points: &[(f64, f64)],
    tol: &Tolerances,
) -> Result<VerificationReport, gauss_core::BackendError> {
    let mut rb = ReportBuilder::new(&format!("closedness_torus_d{d}_n{n}"), "torus");
    rb.param("d", d);
    rb.param("grid", n);
    let backend = TorusBackend::new(tau, d, n)?;
    let space = relation_space(&backend, 2)?;
    let mut worst = 0.0f64;
    for (qi, q) in space.basis.iter().enumerate() {
        for (pi, p) in points.iter().enumerate() {
            let xi = backend.schiffer_class(p, 1)?;
            let image = gauss_rho(&backend, q, &xi, 1)?;
            let res = image.diagnostics.closedness_residual;
            rb.cell(Cell::new(format!("q{qi}_p{pi}"), res, 0.0, res));
            worst = worst.max(res);
        }
    }
    // zero input: zero residual by convention
    let zero = gauss_core::SymTensor::<Complex64>::zero(2, backend.h0(1));
    let xi = backend.schiffer_class(&points[0], 1)?;
    let zimg = gauss_rho(&backend, &zero, &xi, 1)?;
    let zres = zimg.diagnostics.closedness_residual;
    rb.cell(Cell::new("zero_input", zres, 0.0, zres));
    rb.measure("worst_residual", format!("{worst:.6e}"));
    let pass = worst < tol.closedness && zres == 0.0 && zimg.is_zero();
    Ok(rb.finish(if pass { Outcome::Pass } else { Outcome::Fail }))
}
