//! The Weierstrass p-function on C/(Z + tau Z), its quasi-periods, and the
//! eta differential of the second kind whose class is of type (0,1).
//!
//! p is computed from the row-summed lattice series
//!     p(z) = pi^2/sin^2(pi z) - pi^2/3
//!          + pi^2 sum_{n != 0} [ 1/sin^2(pi(z + n tau)) - 1/sin^2(pi n tau) ],
//! which converges geometrically (each row decays like e^{-2 pi |n| Im tau}).
//!
//! Quasi-period conventions used here (and validated by the tests rather than
//! taken on faith): eta1 = zeta(z+1) - zeta(z) and eta2 = zeta(z+tau) -
//! zeta(z), so the a/b-periods of p(z) dz are -eta1 and -eta2. They are
//! obtained by trapezoid quadrature of p along the two cycles (the integrand
//! is smooth and periodic along each cycle, so the quadrature is spectrally
//! accurate) and checked against the Legendre relation
//! eta1 tau - eta2 = 2 pi i.

use gauss_core::BackendError;
use num_complex::Complex64;

const PI: f64 = std::f64::consts::PI;

/// Quasi-period data for a fixed tau.
#[derive(Debug, Clone, Copy)]
pub struct WeierstrassData {
    pub tau: Complex64,
    pub eta1: Complex64,
    pub eta2: Complex64,
    /// |eta1 tau - eta2 - 2 pi i|, the Legendre-relation defect
    pub legendre_residual: f64,
}

fn inv_sin_sq(w: Complex64) -> Complex64 {
    let s = w.sin();
    1.0 / (s * s)
}

/// Number of rows needed so the dropped tail is below ~1e-16: rows decay like
/// 4 e^{-2 pi (|n| - 1) Im tau} for arguments inside the fundamental cell.
fn row_extent(im_tau: f64) -> i64 {
    let needed = 40.0 / (2.0 * PI * im_tau);
    needed.ceil() as i64 + 3
}

/// p(z) for z off the lattice.
pub fn weierstrass_p(z: Complex64, tau: Complex64) -> Complex64 {
    let m = row_extent(tau.im);
    let mut acc = inv_sin_sq(PI * z) - Complex64::new(1.0 / 3.0, 0.0);
    for n in 1..=m {
        let nt = tau * n as f64;
        let correction = inv_sin_sq(PI * nt) * 2.0;
        acc += inv_sin_sq(PI * (z + nt)) + inv_sin_sq(PI * (z - nt)) - correction;
    }
    acc * PI * PI
}

impl WeierstrassData {
    /// Quasi-periods by quadrature of p along the two lattice cycles.
    pub fn compute(tau: Complex64) -> Result<Self, BackendError> {
        if !(tau.im > 0.0) {
            return Err(BackendError::InvalidInput("Im(tau) must be positive".into()));
        }
        let quad_points = 512usize;
        // base points keep both paths clear of the lattice
        let base_a = tau * 0.5 + 0.25;
        let base_b = Complex64::new(0.5, 0.0) + tau * 0.25;
        let mut int_a = Complex64::new(0.0, 0.0);
        let mut int_b = Complex64::new(0.0, 0.0);
        for k in 0..quad_points {
            let t = k as f64 / quad_points as f64;
            int_a += weierstrass_p(base_a + t, tau);
            int_b += weierstrass_p(base_b + tau * t, tau) * tau;
        }
        int_a /= quad_points as f64;
        int_b /= quad_points as f64;
        // integral of p over a cycle is minus the zeta increment
        let eta1 = -int_a;
        let eta2 = -int_b;
        let legendre = eta1 * tau - eta2 - Complex64::new(0.0, 2.0 * PI);
        let data = Self {
            tau,
            eta1,
            eta2,
            legendre_residual: legendre.norm(),
        };
        if data.legendre_residual > 1e-8 {
            return Err(BackendError::Numeric(format!(
                "Legendre relation fails: residual {:.3e} (quasi-period quadrature broken)",
                data.legendre_residual
            )));
        }
        Ok(data)
    }

    /// The additive constant making [ (p(z-P) + c) dz ] a class of type
    /// (0,1): matching the periods of dzbar up to one scalar forces
    /// c = (eta1 conj(tau) - eta2) / (conj(tau) - tau).
    pub fn type01_constant(&self) -> Complex64 {
        (self.eta1 * self.tau.conj() - self.eta2) / (self.tau.conj() - self.tau)
    }

    /// dz-coefficient of the normalized eta differential at pole P:
    /// -(p(z - P) + c), with principal coefficient -1 at the double pole.
    pub fn eta_coefficient(&self, z: Complex64, pole: Complex64) -> Complex64 {
        -(weierstrass_p(z - pole, self.tau) + self.type01_constant())
    }

    /// a/b-periods of the normalized eta by direct contour quadrature,
    /// offsetting the contours away from the pole.
    pub fn eta_periods(&self, pole: Complex64) -> (Complex64, Complex64) {
        let quad_points = 512usize;
        let tau = self.tau;
        let base_a = pole + tau * 0.5 + 0.25;
        let base_b = pole + Complex64::new(0.5, 0.0) + tau * 0.25;
        let mut int_a = Complex64::new(0.0, 0.0);
        let mut int_b = Complex64::new(0.0, 0.0);
        for k in 0..quad_points {
            let t = k as f64 / quad_points as f64;
            int_a += self.eta_coefficient(base_a + t, pole);
            int_b += self.eta_coefficient(base_b + tau * t, pole) * tau;
        }
        (int_a / quad_points as f64, int_b / quad_points as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau_i() -> Complex64 {
        Complex64::new(0.0, 1.0)
    }

    #[test]
    fn p_is_doubly_periodic_and_even() {
        let tau = tau_i();
        for z in [Complex64::new(0.31, 0.17), Complex64::new(0.62, 0.4)] {
            let base = weierstrass_p(z, tau);
            assert!((weierstrass_p(z + 1.0, tau) - base).norm() < 1e-10);
            assert!((weierstrass_p(z + tau, tau) - base).norm() < 1e-10);
            assert!((weierstrass_p(-z, tau) - base).norm() < 1e-10);
        }
    }

    #[test]
    fn p_has_the_right_principal_part() {
        // p(z) - 1/z^2 -> 0 as z -> 0 (no constant term in the expansion)
        let tau = tau_i();
        for eps in [1e-2, 1e-3] {
            let z = Complex64::new(eps, eps * 0.7);
            let diff = weierstrass_p(z, tau) - 1.0 / (z * z);
            assert!(diff.norm() < 1e-2, "eps = {eps}: {:.3e}", diff.norm());
        }
        // and the residue vanishes: p is even, so the 1/z coefficient is 0;
        // probe by averaging over a small circle
        let r = 1e-2;
        let mut acc = Complex64::new(0.0, 0.0);
        let samples = 64;
        for k in 0..samples {
            let ang = 2.0 * PI * k as f64 / samples as f64;
            let z = Complex64::new(r * ang.cos(), r * ang.sin());
            acc += weierstrass_p(z, tau_i()) * z; // picks out the residue
        }
        assert!((acc / samples as f64).norm() < 1e-6);
    }

    #[test]
    fn legendre_relation_holds() {
        let data = WeierstrassData::compute(tau_i()).unwrap();
        assert!(data.legendre_residual < 1e-10, "{:.3e}", data.legendre_residual);
        // at tau = i the symmetry z -> i z forces eta2 = -i eta1, so
        // eta1 * i - (-i eta1) = 2 i eta1 = 2 pi i, i.e. eta1 = pi
        assert!((data.eta1 - Complex64::new(PI, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn eta_periods_are_proportional_to_dzbar_periods() {
        // periods of dzbar along (a, b) are (1, conj(tau)); eta's periods
        // must match up to one complex scalar
        let data = WeierstrassData::compute(tau_i()).unwrap();
        let pole = Complex64::new(0.5, 0.5);
        let (pa, pb) = data.eta_periods(pole);
        let cross = pa * data.tau.conj() - pb;
        assert!(cross.norm() < 1e-8, "cross {:.3e}", cross.norm());
        // and the scalar is nonzero (eta is not exact)
        assert!(pa.norm() > 1e-3);
    }
}
