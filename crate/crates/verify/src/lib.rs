//! Executable theorem suite: each proposition becomes a parameterized check
//! with measured residuals and a pass/fail verdict derived from them.

pub mod closedness;
pub mod convergence;
pub mod lift;
pub mod report;
pub mod symmetry;
pub mod welldefined;

pub use report::{Cell, Outcome, ReportBuilder, VerificationReport};

use num_complex::Complex64;

/// Tolerances for every numerical check, defaulting to the pinned values the
/// acceptance gate uses. The exact backend always runs at zero tolerance.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// relative spread of the lifting ratio across (Q, P) cells on the torus
    pub lift_spread: f64,
    /// required shrink factor of the spread under grid doubling
    pub lift_shrink: f64,
    /// relative distance between the solver route and the eta closed form
    pub cross_path: f64,
    /// image drift under representative perturbation / bump-radius change
    pub welldefined: f64,
    /// image drift under metric rescaling (exact cancellation up to rounding)
    pub metric_scale: f64,
    /// closedness residual of sigma before projection
    pub closedness: f64,
    /// relative defect of the symmetry pairing
    pub symmetry: f64,
    /// relative spread of the twisted lifting ratio
    pub twisted_spread: f64,
    /// reproduction of analytic dbar solutions and gamma orthogonality
    pub solver_anchor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            lift_spread: 1e-5,
            lift_shrink: 4.0,
            cross_path: 1e-6,
            welldefined: 1e-6,
            metric_scale: 1e-12,
            closedness: 1e-6,
            symmetry: 1e-6,
            twisted_spread: 1e-5,
            solver_anchor: 1e-10,
        }
    }
}

/// The committed reference value of the lifting constant, measured on the
/// first green run and regression-tested since.
#[derive(Debug, Clone, serde::Deserialize)]
pub struct LiftingReference {
    pub schema_version: u32,
    /// exact Gaussian rational on the line
    pub p1_exact: String,
    pub torus_re: f64,
    pub torus_im: f64,
}

pub fn lifting_reference() -> LiftingReference {
    serde_json::from_str(include_str!("../data/lifting_constant.json"))
        .expect("reference file parses")
}

pub(crate) fn fmt_complex(v: Complex64) -> String {
    format!("{:+.12e}{:+.12e}i", v.re, v.im)
}

/// Default torus sample points: central subregion, off every dyadic grid.
pub fn default_torus_points() -> Vec<(f64, f64)> {
    vec![(0.45, 0.5), (0.55, 0.48), (0.5, 0.58), (0.42, 0.45)]
}

/// Default exact sample points on the line.
pub fn default_p1_points() -> Vec<exact_algebra::GaussianRational> {
    ["0", "1", "-1", "2", "-2", "1/2"]
        .iter()
        .map(|s| s.parse().expect("exact point"))
        .collect()
}
