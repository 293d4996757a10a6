//! Well-definedness: the class does not depend on the representative, the
//! bump, or the metric. Three independence checks bundled into one report.

use gauss_core::scalar::relative_distance;
use gauss_core::{gauss_rho, relation_space, HodgeBackend};
use num_complex::Complex64;
use p1_backend::{P1Backend, P1Class01};
use torus_backend::{FlatCharacter, TorusBackend};

use crate::report::{Cell, Outcome, ReportBuilder, VerificationReport};
use crate::Tolerances;

/// Exact representative independence on the line: adding dbar of a
/// bump-supported smooth function to the Schiffer representative leaves the
/// image identical, coefficient by coefficient.
pub fn verify_welldefined_p1(d: usize) -> VerificationReport {
    let mut rb = ReportBuilder::new(&format!("welldefined_p1_d{d}"), "p1");
    rb.param("d", d);
    let backend = P1Backend::new(d);
    let space = match relation_space(&backend, 2) {
        Ok(s) => s,
        Err(e) => {
            rb.note(e.to_string());
            return rb.finish(Outcome::Fail);
        }
    };
    let g = |s: &str| s.parse::<exact_algebra::GaussianRational>().unwrap();
    let point = g("1");
    let mut pass = true;
    for (qi, q) in space.basis.iter().enumerate() {
        let result = (|| -> Result<bool, gauss_core::BackendError> {
            let xi = backend.schiffer_class(&point, 1)?;
            let base = gauss_rho(&backend, q, &xi, 1)?;
            // chi-tilde = b(z; center -2) * (1 + z/3)/(z^2 + 7)
            let gfun = exact_algebra::RationalFunction::new(
                exact_algebra::Polynomial::new(vec![g("1"), g("1/3")]),
                exact_algebra::Polynomial::new(vec![g("7"), g("0"), g("1")]),
            )?;
            let bump_term = P1Class01 {
                twist_m: 1,
                terms: vec![p1_backend::BumpTerm { center: g("-2"), f: gfun }],
            };
            let perturbed =
                P1Class01::linear_combination(&[(g("1"), &xi), (g("1"), &bump_term)])?;
            let moved = gauss_rho(&backend, q, &perturbed, 1)?;
            Ok(base.coords == moved.coords)
        })();
        match result {
            Ok(true) => {
                rb.cell(Cell::exact(format!("q{qi}_perturbation"), "identical"));
            }
            Ok(false) => {
                rb.cell(Cell::exact(format!("q{qi}_perturbation"), "DIFFERS"));
                pass = false;
            }
            Err(e) => {
                rb.note(format!("q{qi}: {e}"));
                pass = false;
            }
        }
    }
    rb.measure("cells", space.dim());
    rb.finish(if pass { Outcome::Pass } else { Outcome::Fail })
}

/// The three torus independence checks: representative perturbation,
/// bump-radius change, metric-scale change.
pub fn verify_welldefined_torus(
    tau: Complex64,
    d: usize,
    n: usize,
    tol: &Tolerances,
) -> Result<VerificationReport, gauss_core::BackendError> {
    let mut rb = ReportBuilder::new(&format!("welldefined_torus_d{d}_n{n}"), "torus");
    rb.param("d", d);
    rb.param("grid", n);
    let backend = TorusBackend::new(tau, d, n)?;
    let space = relation_space(&backend, 2)?;
    let point = (0.47, 0.53);
    let q = &space.basis[0];
    let xi = backend.schiffer_class(&point, 1)?;
    let base = gauss_rho(&backend, q, &xi, 1)?;

    // (1) representative perturbation theta -> theta + dbar(chi-tilde)
    let perturbed = backend.perturb_xi(
        &xi,
        (0.58, 0.42),
        0.09,
        Complex64::new(0.7, -0.2),
        Complex64::new(1.1, 0.4),
    )?;
    let moved = gauss_rho(&backend, q, &perturbed, 1)?;
    let drift_rep = relative_distance(&base.coords, &moved.coords);
    rb.cell(Cell::new("representative_perturbation", drift_rep, 0.0, drift_rep));

    // (2) bump radius r -> 1.5 r
    let wide = backend.schiffer_with_radius(&point, 1, backend.bump_radius() * 1.25)?;
    let wide_img = gauss_rho(&backend, q, &wide, 1)?;
    let drift_radius = relative_distance(&base.coords, &wide_img.coords);
    rb.cell(Cell::new("bump_radius_change", drift_radius, 0.0, drift_radius));

    // (3) metric scale c in {1, 2, 1/3}: exact invariance up to rounding
    let mut drift_metric = 0.0f64;
    for scale in [2.0, 1.0 / 3.0] {
        let scaled = TorusBackend::with_options(
            tau,
            d,
            n,
            scale,
            FlatCharacter::trivial(),
            backend.bump_radius(),
        )?;
        let xi_s = scaled.schiffer_class(&point, 1)?;
        let img_s = gauss_rho(&scaled, q, &xi_s, 1)?;
        drift_metric = drift_metric.max(relative_distance(&base.coords, &img_s.coords));
    }
    rb.cell(Cell::new("metric_scale_change", drift_metric, 0.0, drift_metric));

    rb.measure("drift_representative", format!("{drift_rep:.6e}"));
    rb.measure("drift_bump_radius", format!("{drift_radius:.6e}"));
    rb.measure("drift_metric_scale", format!("{drift_metric:.6e}"));
    let pass = drift_rep < tol.welldefined
        && drift_radius < tol.welldefined
        && drift_metric < tol.metric_scale;
    Ok(rb.finish(if pass { Outcome::Pass } else { Outcome::Fail }))
}
