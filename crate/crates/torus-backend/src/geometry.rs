//! Lattice coordinates and the flat-torus differential operators.
//!
//! The curve is C/(Z + tau Z) with Im tau > 0. Lattice coordinates are
//! (x, y) in [0,1)^2 with z = x + tau y. Writing a Fourier mode as
//! e^{2 pi i (m x + n y)}, the operators read off the chain rule
//!     dbar = (tau d_x - d_y) / (tau - taubar),
//!     del  = (taubar d_x - d_y) / (taubar - tau),
//! so the mode multipliers are
//!     dbar: 2 pi i (m tau - n) / (tau - taubar)
//!     del:  2 pi i (m taubar - n) / (taubar - tau).
//! For tau = i these reduce to (d_x + i d_y)/2 and (d_x - i d_y)/2.

use gauss_core::BackendError;
use num_complex::Complex64;

/// Monodromy phases of a degree-zero flat line bundle: sections pick up
/// e^{2 pi i chi_1} across x -> x+1 and e^{2 pi i chi_2} across y -> y+1,
/// shifting all Fourier frequencies by (chi_1, chi_2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlatCharacter {
    pub chi1: f64,
    pub chi2: f64,
}

impl FlatCharacter {
    pub fn trivial() -> Self {
        Self { chi1: 0.0, chi2: 0.0 }
    }

    pub fn new(chi1: f64, chi2: f64) -> Result<Self, BackendError> {
        if !(0.0..1.0).contains(&chi1) || !(0.0..1.0).contains(&chi2) {
            return Err(BackendError::InvalidInput(format!(
                "flat character must lie in [0,1)^2, got ({chi1}, {chi2})"
            )));
        }
        Ok(Self { chi1, chi2 })
    }

    pub fn is_trivial(&self) -> bool {
        self.chi1 == 0.0 && self.chi2 == 0.0
    }

    /// The conjugate bundle M^{-1}.
    pub fn inverse(&self) -> Self {
        let wrap = |c: f64| if c == 0.0 { 0.0 } else { 1.0 - c };
        Self { chi1: wrap(self.chi1), chi2: wrap(self.chi2) }
    }

    pub fn scaled(&self, sector: i8) -> Self {
        match sector {
            0 => Self::trivial(),
            1 => *self,
            -1 => self.inverse(),
            _ => unreachable!("sector is -1, 0 or 1"),
        }
    }
}

/// The flat torus: modulus, grid resolution and metric scale. The Kaehler
/// form is c (i/2) dz wedge dzbar; the scale c cancels out of every class
/// the pipeline produces, which is itself one of the verification targets.
#[derive(Debug, Clone, Copy)]
pub struct TorusGeometry {
    pub tau: Complex64,
    pub n: usize,
    pub metric_scale: f64,
}

impl TorusGeometry {
    pub fn new(tau: Complex64, n: usize, metric_scale: f64) -> Result<Self, BackendError> {
        if !(tau.im > 0.0) {
            return Err(BackendError::InvalidInput(format!(
                "Im(tau) must be positive, got {}",
                tau.im
            )));
        }
        if n < 8 || !n.is_power_of_two() {
            return Err(BackendError::InvalidInput(format!(
                "grid resolution must be a power of two >= 8, got {n}"
            )));
        }
        if !(metric_scale > 0.0) {
            return Err(BackendError::InvalidInput(format!(
                "metric scale must be positive, got {metric_scale}"
            )));
        }
        Ok(Self { tau, n, metric_scale })
    }

    pub fn cells(&self) -> usize {
        self.n * self.n
    }

    pub fn z_at(&self, ix: usize, iy: usize) -> Complex64 {
        let x = ix as f64 / self.n as f64;
        let y = iy as f64 / self.n as f64;
        Complex64::new(x, 0.0) + self.tau * y
    }

    pub fn z_of_xy(&self, x: f64, y: f64) -> Complex64 {
        Complex64::new(x, 0.0) + self.tau * y
    }

    /// Signed frequency for FFT bin i.
    pub fn frequency(&self, i: usize) -> f64 {
        if i <= self.n / 2 - 1 {
            i as f64
        } else {
            i as f64 - self.n as f64
        }
    }

    /// dbar multiplier at (possibly character-shifted) frequencies.
    pub fn dbar_multiplier(&self, mf: f64, nf: f64) -> Complex64 {
        let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
        let denom = self.tau - self.tau.conj();
        two_pi_i * (self.tau * mf - nf) / denom
    }

    /// del multiplier at (possibly character-shifted) frequencies.
    pub fn del_multiplier(&self, mf: f64, nf: f64) -> Complex64 {
        let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
        let denom = self.tau.conj() - self.tau;
        two_pi_i * (self.tau.conj() * mf - nf) / denom
    }

    /// Euclidean distance from the point z(x0,y0) to the cell boundary (the
    /// cut of the fundamental-domain chart), in the z-plane metric.
    pub fn distance_to_cut(&self, x0: f64, y0: f64) -> f64 {
        let p = self.z_of_xy(x0, y0);
        let corners = [
            self.z_of_xy(0.0, 0.0),
            self.z_of_xy(1.0, 0.0),
            self.z_of_xy(1.0, 1.0),
            self.z_of_xy(0.0, 1.0),
        ];
        let mut best = f64::INFINITY;
        for i in 0..4 {
            let a = corners[i];
            let b = corners[(i + 1) % 4];
            best = best.min(dist_point_segment(p, a, b));
        }
        best
    }
}

fn dist_point_segment(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let ap = p - a;
    let len2 = ab.norm_sqr();
    let t = if len2 == 0.0 {
        0.0
    } else {
        ((ap.re * ab.re + ap.im * ab.im) / len2).clamp(0.0, 1.0)
    };
    (p - (a + ab * t)).norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geom() -> TorusGeometry {
        TorusGeometry::new(Complex64::new(0.0, 1.0), 64, 1.0).unwrap()
    }

    #[test]
    fn multipliers_match_square_torus_formulas() {
        // tau = i: dbar e^{2pi i(mx+ny)} = pi i (m + i n) e^{...}
        let g = geom();
        for (m, n) in [(1.0, 0.0), (0.0, 1.0), (3.0, -2.0)] {
            let expect = Complex64::new(0.0, std::f64::consts::PI) * Complex64::new(m, n);
            assert!((g.dbar_multiplier(m, n) - expect).norm() < 1e-14);
            // del e^{2pi i m x} = pi i m e^{...} etc: pi i (m - i n)
            let expect_del = Complex64::new(0.0, std::f64::consts::PI) * Complex64::new(m, -n);
            assert!((g.del_multiplier(m, n) - expect_del).norm() < 1e-14);
        }
    }

    #[test]
    fn validation_rejects_bad_parameters() {
        assert!(TorusGeometry::new(Complex64::new(0.0, -1.0), 64, 1.0).is_err());
        assert!(TorusGeometry::new(Complex64::new(0.0, 1.0), 100, 1.0).is_err());
        assert!(TorusGeometry::new(Complex64::new(0.0, 1.0), 64, 0.0).is_err());
        assert!(FlatCharacter::new(1.5, 0.0).is_err());
    }

    #[test]
    fn cut_distance_at_center() {
        let g = geom();
        let d = g.distance_to_cut(0.5, 0.5);
        assert!((d - 0.5).abs() < 1e-12);
    }

    #[test]
    fn character_inverse_wraps() {
        let chi = FlatCharacter::new(0.25, 0.0).unwrap();
        let inv = chi.inverse();
        assert_eq!(inv.chi1, 0.75);
        assert_eq!(inv.chi2, 0.0);
        assert!(FlatCharacter::trivial().inverse().is_trivial());
    }
}
