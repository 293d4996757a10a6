//! Two-dimensional FFT on the N x N lattice grid, row-major with x fastest.
//!
//! Conventions: forward produces unnormalized DFT coefficients c_{mn} =
//! sum f e^{-2 pi i (m ix + n iy)/N}; the spectral coefficient of the mode
//! e^{2 pi i (m x + n y)} is c_{mn}/N^2. All sums run in a fixed order so
//! repeated runs are bit-identical.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

pub struct Fft2 {
    n: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl Fft2 {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            n,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    fn transform(&self, data: &mut [Complex64], fft: &Arc<dyn Fft<f64>>) {
        let n = self.n;
        debug_assert_eq!(data.len(), n * n);
        // rows (x direction, contiguous)
        for row in data.chunks_exact_mut(n) {
            fft.process(row);
        }
        // columns via transpose, row FFT, transpose back
        transpose_square(data, n);
        for row in data.chunks_exact_mut(n) {
            fft.process(row);
        }
        transpose_square(data, n);
    }

    /// In-place forward DFT (unnormalized).
    pub fn forward(&self, data: &mut [Complex64]) {
        self.transform(data, &self.forward);
    }

    /// In-place inverse DFT, normalized so inverse(forward(f)) = f.
    pub fn inverse(&self, data: &mut [Complex64]) {
        self.transform(data, &self.inverse);
        let scale = 1.0 / (self.n * self.n) as f64;
        for v in data.iter_mut() {
            *v *= scale;
        }
    }
}

fn transpose_square(data: &mut [Complex64], n: usize) {
    for i in 0..n {
        for j in 0..i {
            data.swap(i * n + j, j * n + i);
        }
    }
}

/// Root-mean-square of the samples (the grid L2 norm with unit cell measure).
pub fn rms(data: &[Complex64]) -> f64 {
    (data.iter().map(|v| v.norm_sqr()).sum::<f64>() / data.len() as f64).sqrt()
}

/// Plain quadrature mean over the cell.
pub fn mean(data: &[Complex64]) -> Complex64 {
    data.iter().sum::<Complex64>() / data.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_single_mode() {
        let n = 16;
        let fft = Fft2::new(n);
        // f = e^{2 pi i (3x + 5y)}
        let mut data: Vec<Complex64> = (0..n * n)
            .map(|idx| {
                let (ix, iy) = (idx % n, idx / n);
                let phase = 2.0 * std::f64::consts::PI
                    * (3.0 * ix as f64 / n as f64 + 5.0 * iy as f64 / n as f64);
                Complex64::new(phase.cos(), phase.sin())
            })
            .collect();
        let original = data.clone();
        fft.forward(&mut data);
        // only bin (3,5) is populated
        for (idx, v) in data.iter().enumerate() {
            let (m, nn) = (idx % n, idx / n);
            let expect = if (m, nn) == (3, 5) { (n * n) as f64 } else { 0.0 };
            assert!((v - Complex64::new(expect, 0.0)).norm() < 1e-9, "bin ({m},{nn})");
        }
        fft.inverse(&mut data);
        for (a, b) in data.iter().zip(&original) {
            assert!((a - b).norm() < 1e-12);
        }
    }
}
