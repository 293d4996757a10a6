//! Convergence study: truncation-honest residuals against grid size, with a
//! monotone-decrease verdict and empirical order estimates.
//!
//! The same-grid solve residual is floating noise by construction (the
//! discrete solve is exact on the grid's own modes), so the solver accuracy
//! is measured by refinement: solve at N, evaluate the decomposition defect
//! against freshly sampled analytic input on the 2N grid.

use gauss_core::scalar::relative_distance;
use gauss_core::{gauss_rho, relation_space, HodgeBackend};
use num_complex::Complex64;
use torus_backend::solve::{dbar_solve, refined_residual};
use torus_backend::{FlatCharacter, TorusBackend};

use crate::report::{Cell, Outcome, ReportBuilder, VerificationReport};

/// One row of the study.
#[derive(Debug, Clone)]
pub struct ConvergenceRow {
    pub n: usize,
    pub dbar_refined: f64,
    pub cross_path: f64,
    pub ratio_spread: f64,
    pub projection: f64,
}

fn schiffer_profile_samples(backend: &TorusBackend, point: (f64, f64), r: f64) -> Vec<Complex64> {
    let geom = backend.geometry();
    let p = geom.z_of_xy(point.0, point.1);
    let n = geom.n;
    let mut out = Vec::with_capacity(n * n);
    for iy in 0..n {
        for ix in 0..n {
            let s = (geom.z_at(ix, iy) - p).norm();
            out.push(Complex64::new(torus_backend::bump::schiffer_weight(s, r), 0.0));
        }
    }
    out
}

pub fn convergence_study(
    tau: Complex64,
    d: usize,
    grids: &[usize],
    points: &[(f64, f64)],
) -> Result<VerificationReport, gauss_core::BackendError> {
    let mut rb = ReportBuilder::new(&format!("convergence_d{d}"), "torus");
    rb.param("d", d);
    rb.param("grids", format!("{grids:?}"));
    if grids.windows(2).any(|w| w[0] >= w[1]) {
        rb.note("grid list must be strictly ascending");
        return Ok(rb.finish(Outcome::Fail));
    }
    let probe = (0.47, 0.53);
    let mut rows: Vec<ConvergenceRow> = Vec::new();
    for &n in grids {
        let backend = TorusBackend::new(tau, d, n)?;
        let r = backend.bump_radius();

        // solver accuracy by refinement on the fixed analytic bump profile
        let psi = schiffer_profile_samples(&backend, probe, r);
        let dec = dbar_solve(backend.geometry(), backend.fft(), FlatCharacter::trivial(), &psi);
        let fine = TorusBackend::new(tau, d, 2 * n)?;
        let psi_fine = schiffer_profile_samples(&fine, probe, r);
        let dbar_refined = refined_residual(
            backend.geometry(),
            backend.fft(),
            FlatCharacter::trivial(),
            &dec,
            fine.geometry(),
            fine.fft(),
            &psi_fine,
        );

        // pipeline measures
        let space = relation_space(&backend, 2)?;
        let q = &space.basis[0];
        let xi = backend.schiffer_class(&probe, 1)?;
        let image = gauss_rho(&backend, q, &xi, 1)?;
        let eta_image = backend.rho_via_eta(q, &probe, 1)?;
        let cross_path = relative_distance(&image.coords, &eta_image.coords);
        let projection = image.diagnostics.projection_residual;

        let mut ratios = Vec::new();
        for qq in &space.basis {
            for p in points {
                let x = backend.schiffer_class(p, 1)?;
                let im = gauss_rho(&backend, qq, &x, 1)?;
                let pv = backend.pair_xi_class(&x, &im)?;
                let vp = backend.wahl_eval(qq, p)?;
                if vp.norm() > 1e-12 {
                    ratios.push(pv / vp);
                }
            }
        }
        let mean = ratios.iter().sum::<Complex64>() / ratios.len() as f64;
        let ratio_spread = ratios
            .iter()
            .map(|v| (v - mean).norm())
            .fold(0.0f64, f64::max)
            / mean.norm();

        rb.cell(Cell::new(format!("n{n}_dbar_refined"), dbar_refined, 0.0, dbar_refined));
        rb.cell(Cell::new(format!("n{n}_cross_path"), cross_path, 0.0, cross_path));
        rb.cell(Cell::new(format!("n{n}_ratio_spread"), ratio_spread, 0.0, ratio_spread));
        rb.cell(Cell::new(format!("n{n}_projection"), projection, 0.0, projection));
        rows.push(ConvergenceRow { n, dbar_refined, cross_path, ratio_spread, projection });
    }

    let mut pass = true;
    let series: [(&str, fn(&ConvergenceRow) -> f64); 4] = [
        ("dbar_refined", |r| r.dbar_refined),
        ("cross_path", |r| r.cross_path),
        ("ratio_spread", |r| r.ratio_spread),
        ("projection", |r| r.projection),
    ];
    for (name, getter) in series {
        let values: Vec<f64> = rows.iter().map(getter).collect();
        let monotone = values.windows(2).all(|w| w[1] < w[0]);
        if !monotone {
            pass = false;
            rb.note(format!("{name} is not monotone: {values:?}"));
        }
        // empirical order: mean log2 of successive reduction factors
        let orders: Vec<f64> = values
            .windows(2)
            .map(|w| (w[0] / w[1].max(f64::MIN_POSITIVE)).log2())
            .collect();
        let order = orders.iter().sum::<f64>() / orders.len().max(1) as f64;
        rb.measure(&format!("order_{name}"), format!("{order:.2}"));
        rb.measure(
            &format!("final_{name}"),
            format!("{:.6e}", values.last().copied().unwrap_or(f64::NAN)),
        );
    }
    Ok(rb.finish(if pass { Outcome::Pass } else { Outcome::Fail }))
}
