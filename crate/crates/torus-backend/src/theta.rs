//! Theta functions with characteristics and the section bases they provide.
//!
//! theta[a,b](w; sigma) = sum_n exp(pi i (n+a)^2 sigma + 2 pi i (n+a)(w+b)).
//!
//! The degree-D bundle L_D on C/(Z + tau Z), twisted by a flat character chi,
//! has the h^0 = D section basis
//!     theta[(j + chi1)/D, -chi2](D z; D tau),   j = 0..D-1,
//! with automorphy law  s(z+1) = e^{2 pi i chi1} s(z)  and
//! s(z+tau) = e^{2 pi i chi2} e^{-pi i D tau - 2 pi i D z} s(z).

use gauss_core::BackendError;
use num_complex::Complex64;

use crate::geometry::{FlatCharacter, TorusGeometry};

const I2PI: Complex64 = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
const IPI: Complex64 = Complex64::new(0.0, std::f64::consts::PI);

/// Series parameters of one basis section.
#[derive(Debug, Clone, Copy)]
pub struct ThetaChar {
    pub a: f64,
    pub b: f64,
    /// degree of the bundle; the section evaluates theta[a,b](D z; D tau)
    pub big_d: usize,
}

impl ThetaChar {
    /// Truncation extent for a given Im(sigma). Arguments stay within two
    /// periods of the cut torus (automorphy probes go one period out), so the
    /// n-th term is bounded by exp(-pi Im(sigma) (|n|-1)(|n|-5)) and the
    /// dropped tail is negligible once that reaches e^{-45}.
    fn extent(im_sigma: f64) -> i64 {
        let mut m = 6i64;
        while std::f64::consts::PI * im_sigma * (((m - 1) * (m - 5)) as f64) < 45.0 {
            m += 1;
        }
        m
    }

    /// The argument is recentered by half a period in both directions: the
    /// magnitude profile of theta over a cell is a Gaussian envelope in y
    /// whose peak sits at the far edge, so centering it keeps the dynamic
    /// range across the chart at e^{pi D Im(tau)/4} instead of its square
    /// root of the fourth power. The sections span H^0 of a (translated,
    /// still degree-D) bundle, which is all the pipeline asks of them.
    pub fn center(tau: Complex64) -> Complex64 {
        (Complex64::new(1.0, 0.0) + tau) * 0.5
    }

    pub fn eval(&self, z: Complex64, tau: Complex64, derivative: usize) -> Complex64 {
        let sigma = tau * self.big_d as f64;
        let w = (z - Self::center(tau)) * self.big_d as f64;
        let m = Self::extent(sigma.im);
        let mut acc = Complex64::new(0.0, 0.0);
        for n in -m..=m {
            let na = n as f64 + self.a;
            let exponent = IPI * na * na * sigma + I2PI * na * (w + self.b);
            let mut term = exponent.exp();
            if derivative > 0 {
                // d/dz adds a factor 2 pi i * na * D per order
                let factor = I2PI * na * self.big_d as f64;
                for _ in 0..derivative {
                    term *= factor;
                }
            }
            acc += term;
        }
        acc
    }
}

/// An ordered basis of H^0 of a bundle power, with grid samples and the
/// orthonormalization data used for projection.
pub struct ThetaBasis {
    pub power_degree: usize,
    pub chars: Vec<ThetaChar>,
    /// grid samples per section, row-major x-fastest
    pub sections: Vec<Vec<Complex64>>,
    /// orthonormal frame: on_k = sum_j frame[k][j] * sections[j], orthonormal
    /// in the metric-weighted quadrature inner product
    pub frame: Vec<Vec<Complex64>>,
    /// smallest/largest diagonal pivot of the Gram factorization, a
    /// conditioning witness
    pub gram_pivot_ratio: f64,
}

/// The metric-weighted quadrature pairing <f, g> = c Im(tau) mean(conj f * g).
pub fn inner(geom: &TorusGeometry, f: &[Complex64], g: &[Complex64]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (a, b) in f.iter().zip(g) {
        acc += a.conj() * b;
    }
    acc * (geom.metric_scale * geom.tau.im / f.len() as f64)
}

impl ThetaBasis {
    /// Builds the basis of H^0(M_chi (x) L_d^power): degree D = power * d,
    /// characteristics shifted by the character.
    pub fn build(
        geom: &TorusGeometry,
        d: usize,
        power: usize,
        chi: FlatCharacter,
    ) -> Result<Self, BackendError> {
        let big_d = d * power;
        if big_d == 0 {
            return Err(BackendError::InvalidInput(
                "section basis needs positive degree".into(),
            ));
        }
        let chars: Vec<ThetaChar> = (0..big_d)
            .map(|j| ThetaChar {
                a: (j as f64 + chi.chi1) / big_d as f64,
                b: -chi.chi2,
                big_d,
            })
            .collect();
        let n = geom.n;
        let mut sections = Vec::with_capacity(big_d);
        for ch in &chars {
            let mut s = Vec::with_capacity(n * n);
            for iy in 0..n {
                for ix in 0..n {
                    s.push(ch.eval(geom.z_at(ix, iy), geom.tau, 0));
                }
            }
            sections.push(s);
        }
        let (frame, gram_pivot_ratio) = orthonormalize(geom, &sections)?;
        Ok(Self {
            power_degree: big_d,
            chars,
            sections,
            frame,
            gram_pivot_ratio,
        })
    }

    pub fn dim(&self) -> usize {
        self.chars.len()
    }

    /// Pointwise evaluation of sum coords_j * section_j at z.
    pub fn eval_combination(
        &self,
        coords: &[Complex64],
        z: Complex64,
        tau: Complex64,
    ) -> Complex64 {
        coords
            .iter()
            .zip(&self.chars)
            .map(|(c, ch)| c * ch.eval(z, tau, 0))
            .sum()
    }

    /// Worst automorphy-law violation over a sample of points, checked by
    /// direct series evaluation (not grid wrapping).
    pub fn quasi_periodicity_residual(&self, geom: &TorusGeometry) -> f64 {
        let tau = geom.tau;
        let mut worst = 0.0f64;
        let probes = [(0.13, 0.31), (0.41, 0.07), (0.77, 0.52), (0.29, 0.83)];
        for ch in &self.chars {
            for &(x, y) in &probes {
                let z = geom.z_of_xy(x, y);
                let base = ch.eval(z, tau, 0);
                // z -> z + 1 picks up e^{2 pi i chi1} = e^{2 pi i a D}
                let lhs1 = ch.eval(z + 1.0, tau, 0);
                let rhs1 = (I2PI * (ch.a * ch.big_d as f64)).exp() * base;
                let scale1 = lhs1.norm().max(rhs1.norm()).max(1e-300);
                worst = worst.max((lhs1 - rhs1).norm() / scale1);
                // z -> z + tau picks up e^{2 pi i chi2} e^{-pi i D tau -
                // 2 pi i D (z - c0)} with e^{2 pi i chi2} = e^{-2 pi i b} and
                // c0 the recentering shift; values across a period scale by
                // e^{pi D Im tau}-type factors, so the law is checked relative
                // to the compared values
                let lhs2 = ch.eval(z + tau, tau, 0);
                let d = ch.big_d as f64;
                let shifted = z - ThetaChar::center(tau);
                let rhs2 =
                    (-I2PI * ch.b).exp() * (-IPI * d * tau - I2PI * d * shifted).exp() * base;
                let scale2 = lhs2.norm().max(rhs2.norm()).max(1e-300);
                worst = worst.max((lhs2 - rhs2).norm() / scale2);
            }
        }
        worst
    }
}

/// Modified Gram-Schmidt in the quadrature inner product; returns the frame
/// matrix and the min/max pivot ratio. Fails when the basis is numerically
/// dependent (pivot below 1e-8 of the largest).
fn orthonormalize(
    geom: &TorusGeometry,
    sections: &[Vec<Complex64>],
) -> Result<(Vec<Vec<Complex64>>, f64), BackendError> {
    let dim = sections.len();
    let cells = sections[0].len();
    let mut vectors: Vec<Vec<Complex64>> = sections.to_vec();
    let mut frame: Vec<Vec<Complex64>> = (0..dim)
        .map(|k| {
            let mut row = vec![Complex64::new(0.0, 0.0); dim];
            row[k] = Complex64::new(1.0, 0.0);
            row
        })
        .collect();
    let mut pivots = Vec::with_capacity(dim);
    for k in 0..dim {
        // two MGS passes for orthogonality at working precision
        for _ in 0..2 {
            for j in 0..k {
                let proj = inner(geom, &vectors[j], &vectors[k]);
                for idx in 0..cells {
                    let correction = proj * vectors[j][idx];
                    vectors[k][idx] -= correction;
                }
                for idx in 0..dim {
                    let correction = proj * frame[j][idx];
                    frame[k][idx] -= correction;
                }
            }
        }
        let norm = inner(geom, &vectors[k], &vectors[k]).re.sqrt();
        pivots.push(norm);
        let largest = pivots.iter().cloned().fold(0.0f64, f64::max);
        if !(norm > 1e-8 * largest) {
            return Err(BackendError::Numeric(format!(
                "theta basis numerically singular: pivot {norm:.3e} vs largest {largest:.3e}"
            )));
        }
        let inv = 1.0 / norm;
        for v in vectors[k].iter_mut() {
            *v *= inv;
        }
        for v in frame[k].iter_mut() {
            *v *= inv;
        }
    }
    let ratio = pivots.iter().cloned().fold(f64::INFINITY, f64::min)
        / pivots.iter().cloned().fold(0.0f64, f64::max);
    Ok((frame, ratio))
}
