//! Holomorphic projection: coordinates of a (1,0)-form in the theta (x) dz
//! basis by L2 grid quadrature against the orthonormalized frame.

use num_complex::Complex64;

use crate::fft::rms;
use crate::geometry::TorusGeometry;
use crate::theta::{inner, ThetaBasis};

pub struct Projection {
    pub coords: Vec<Complex64>,
    pub projection_residual: f64,
}

/// Coordinates of `samples` in the basis underlying `basis`, together with
/// the relative L2 distance to the projected representative. For samples in
/// the span the coordinates are exact up to conditioning regardless of how
/// accurate the quadrature is as an integral, because the same pairing is
/// used on both sides of the normal equations.
pub fn project(geom: &TorusGeometry, basis: &ThetaBasis, samples: &[Complex64]) -> Projection {
    let dim = basis.dim();
    let cells = samples.len();
    // coefficients against the orthonormal frame
    let mut on_coords = Vec::with_capacity(dim);
    for k in 0..dim {
        // on_k = sum_j frame[k][j] section_j; <on_k, s> = sum_j conj(frame) <section_j, s>
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, w) in basis.frame[k].iter().enumerate() {
            if w.re == 0.0 && w.im == 0.0 {
                continue;
            }
            acc += w.conj() * inner(geom, &basis.sections[j], samples);
        }
        on_coords.push(acc);
    }
    // back to theta coordinates: coords_j = sum_k on_k frame[k][j]
    let mut coords = vec![Complex64::new(0.0, 0.0); dim];
    for (k, c) in on_coords.iter().enumerate() {
        for (j, w) in basis.frame[k].iter().enumerate() {
            coords[j] += c * w;
        }
    }
    // residual
    let mut diff = samples.to_vec();
    for (j, c) in coords.iter().enumerate() {
        for idx in 0..cells {
            let take = c * basis.sections[j][idx];
            diff[idx] -= take;
        }
    }
    let scale = rms(samples);
    let projection_residual = if scale == 0.0 { 0.0 } else { rms(&diff) / scale };
    Projection {
        coords,
        projection_residual,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::FlatCharacter;

    #[test]
    fn basis_sections_project_to_unit_vectors() {
        let geom = TorusGeometry::new(Complex64::new(0.0, 1.0), 64, 1.0).unwrap();
        let basis = ThetaBasis::build(&geom, 4, 1, FlatCharacter::trivial()).unwrap();
        for j in 0..basis.dim() {
            let p = project(&geom, &basis, &basis.sections[j]);
            assert!(p.projection_residual < 1e-10, "residual {:.3e}", p.projection_residual);
            for (i, c) in p.coords.iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!(
                    (c - Complex64::new(expect, 0.0)).norm() < 1e-9,
                    "section {j}, coord {i}: {c}"
                );
            }
        }
    }

    #[test]
    fn zero_projects_to_zero() {
        let geom = TorusGeometry::new(Complex64::new(0.0, 1.0), 32, 1.0).unwrap();
        let basis = ThetaBasis::build(&geom, 2, 1, FlatCharacter::trivial()).unwrap();
        let zero = vec![Complex64::new(0.0, 0.0); 32 * 32];
        let p = project(&geom, &basis, &zero);
        assert!(p.coords.iter().all(|c| c.norm() == 0.0));
        assert_eq!(p.projection_residual, 0.0);
    }

    #[test]
    fn metric_scale_cancels_from_coordinates() {
        let tau = Complex64::new(0.0, 1.0);
        let g1 = TorusGeometry::new(tau, 64, 1.0).unwrap();
        let g2 = TorusGeometry::new(tau, 64, 2.0).unwrap();
        let g3 = TorusGeometry::new(tau, 64, 1.0 / 3.0).unwrap();
        let b1 = ThetaBasis::build(&g1, 3, 1, FlatCharacter::trivial()).unwrap();
        let b2 = ThetaBasis::build(&g2, 3, 1, FlatCharacter::trivial()).unwrap();
        let b3 = ThetaBasis::build(&g3, 3, 1, FlatCharacter::trivial()).unwrap();
        // an arbitrary combination
        let mut samples = vec![Complex64::new(0.0, 0.0); 64 * 64];
        for (j, w) in [(0usize, Complex64::new(0.3, -1.0)), (2, Complex64::new(0.0, 0.25))] {
            for (s, v) in samples.iter_mut().zip(&b1.sections[j]) {
                *s += w * v;
            }
        }
        let p1 = project(&g1, &b1, &samples);
        let p2 = project(&g2, &b2, &samples);
        let p3 = project(&g3, &b3, &samples);
        for ((a, b), c) in p1.coords.iter().zip(&p2.coords).zip(&p3.coords) {
            assert!((a - b).norm() < 1e-12);
            assert!((a - c).norm() < 1e-12);
        }
    }
}
