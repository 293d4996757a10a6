//! The HodgeBackend implementation on the flat torus.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use gauss_core::backend::{CupDecomposition, KernelDiagnostics};
use gauss_core::multiset::splits;
use gauss_core::{BackendError, GaussImage, HodgeBackend, ImageDiagnostics, Multiset, SymTensor};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::bump::{bump_prime, bump_second, schiffer_weight};
use crate::fft::{mean, rms, Fft2};
use crate::geometry::{FlatCharacter, TorusGeometry};
use crate::grid::{FormKind, GridForm};
use crate::project::project;
use crate::solve::{dbar_solve, del_grid};
use crate::theta::ThetaBasis;
use crate::weierstrass::WeierstrassData;

/// A Dolbeault representative of a class in H^{0,1}(M_chi (x) L^{-m}):
/// samples of the dzbar coefficient in the cut-torus trivialization,
/// supported strictly inside the fundamental cell, together with analytic
/// samples of its del-derivative (used by the closedness measure, which
/// evaluates dbar sigma = sum (sum a_ST lambda_S) del(theta lambda_T) without
/// amplifying the unresolved spectral tail).
#[derive(Clone)]
pub struct TorusXi {
    pub m: usize,
    pub samples: Vec<Complex64>,
    pub del_samples: Vec<Complex64>,
    pub point_xy: (f64, f64),
    pub point_z: Complex64,
    pub radius: f64,
}

/// Accumulated sigma with the matching dbar-sigma samples for the closedness
/// residual.
pub struct TorusSigma {
    pub samples: Vec<Complex64>,
    pub dbar_samples: Vec<Complex64>,
}

pub struct TorusBackend {
    geom: TorusGeometry,
    d: usize,
    chi: FlatCharacter,
    bump_radius: f64,
    fft: Fft2,
    bases: Mutex<BTreeMap<(usize, i8), Arc<ThetaBasis>>>,
    d1_sections: Mutex<Option<Arc<Vec<Vec<Complex64>>>>>,
    d2_sections: Mutex<Option<Arc<Vec<Vec<Complex64>>>>>,
    weierstrass: Mutex<Option<WeierstrassData>>,
}

impl TorusBackend {
    pub fn new(tau: Complex64, d: usize, n: usize) -> Result<Self, BackendError> {
        Self::with_options(tau, d, n, 1.0, FlatCharacter::trivial(), 0.16)
    }

    pub fn with_options(
        tau: Complex64,
        d: usize,
        n: usize,
        metric_scale: f64,
        chi: FlatCharacter,
        bump_radius: f64,
    ) -> Result<Self, BackendError> {
        if d == 0 {
            return Err(BackendError::InvalidInput("bundle degree must be >= 1".into()));
        }
        let geom = TorusGeometry::new(tau, n, metric_scale)?;
        if !(bump_radius > 0.0) {
            return Err(BackendError::InvalidInput("bump radius must be positive".into()));
        }
        Ok(Self {
            geom,
            d,
            chi,
            bump_radius,
            fft: Fft2::new(n),
            bases: Mutex::new(BTreeMap::new()),
            d1_sections: Mutex::new(None),
            d2_sections: Mutex::new(None),
            weierstrass: Mutex::new(None),
        })
    }

    pub fn geometry(&self) -> &TorusGeometry {
        &self.geom
    }

    pub fn fft(&self) -> &Fft2 {
        &self.fft
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn character(&self) -> FlatCharacter {
        self.chi
    }

    pub fn bump_radius(&self) -> f64 {
        self.bump_radius
    }

    /// The same backend with a flat character installed: all scalar Fourier
    /// analysis shifts frequencies by chi, nothing else changes.
    pub fn with_character(&self, chi: FlatCharacter) -> Result<Self, BackendError> {
        Self::with_options(
            self.geom.tau,
            self.d,
            self.geom.n,
            self.geom.metric_scale,
            chi,
            self.bump_radius,
        )
    }

    /// Basis of H^0(M_chi^sector (x) L^power).
    pub fn basis(&self, power: usize, sector: i8) -> Result<Arc<ThetaBasis>, BackendError> {
        let key = (power, sector);
        let mut cache = self.bases.lock().expect("basis cache poisoned");
        if let Some(b) = cache.get(&key) {
            return Ok(b.clone());
        }
        let built = Arc::new(ThetaBasis::build(
            &self.geom,
            self.d,
            power,
            self.chi.scaled(sector),
        )?);
        cache.insert(key, built.clone());
        Ok(built)
    }

    pub fn weierstrass_data(&self) -> Result<WeierstrassData, BackendError> {
        let mut guard = self.weierstrass.lock().expect("weierstrass cache poisoned");
        if let Some(w) = *guard {
            return Ok(w);
        }
        let w = WeierstrassData::compute(self.geom.tau)?;
        *guard = Some(w);
        Ok(w)
    }

    /// Pointwise product of the degree-1 basis sections over a multiset
    /// (ones for the empty multiset).
    pub fn section_product_samples(&self, m: &Multiset) -> Result<Vec<Complex64>, BackendError> {
        let cells = self.geom.cells();
        let mut acc = vec![Complex64::new(1.0, 0.0); cells];
        if m.is_empty() {
            return Ok(acc);
        }
        let basis = self.basis(1, 0)?;
        for &i in m.elems() {
            if i >= basis.dim() {
                return Err(BackendError::InvalidInput(format!(
                    "section index {i} out of range (h0 = {})",
                    basis.dim()
                )));
            }
            for (a, b) in acc.iter_mut().zip(&basis.sections[i]) {
                *a *= b;
            }
        }
        Ok(acc)
    }

    fn derivative_section_samples(
        &self,
        order: usize,
    ) -> Result<Arc<Vec<Vec<Complex64>>>, BackendError> {
        let cache = if order == 1 { &self.d1_sections } else { &self.d2_sections };
        let mut guard = cache.lock().expect("derivative cache poisoned");
        if let Some(s) = guard.as_ref() {
            return Ok(s.clone());
        }
        let basis = self.basis(1, 0)?;
        let n = self.geom.n;
        let mut all = Vec::with_capacity(basis.dim());
        for ch in &basis.chars {
            let mut s = Vec::with_capacity(n * n);
            for iy in 0..n {
                for ix in 0..n {
                    s.push(ch.eval(self.geom.z_at(ix, iy), self.geom.tau, order));
                }
            }
            all.push(s);
        }
        let arc = Arc::new(all);
        *guard = Some(arc.clone());
        Ok(arc)
    }

    /// Samples of del(lambda_T) by the product rule over the multiset slots.
    pub fn section_product_del_samples(&self, m: &Multiset) -> Result<Vec<Complex64>, BackendError> {
        let cells = self.geom.cells();
        if m.is_empty() {
            return Ok(vec![Complex64::new(0.0, 0.0); cells]);
        }
        let basis = self.basis(1, 0)?;
        let d1 = self.derivative_section_samples(1)?;
        let elems = m.elems();
        let mut acc = vec![Complex64::new(0.0, 0.0); cells];
        for slot in 0..elems.len() {
            let mut term = d1[elems[slot]].clone();
            for (j, &i) in elems.iter().enumerate() {
                if j == slot {
                    continue;
                }
                for (t, b) in term.iter_mut().zip(&basis.sections[i]) {
                    *t *= b;
                }
            }
            for (a, t) in acc.iter_mut().zip(&term) {
                *a += t;
            }
        }
        Ok(acc)
    }

    /// Schiffer representative with an explicit bump radius.
    pub fn schiffer_with_radius(
        &self,
        point: &(f64, f64),
        m: usize,
        radius: f64,
    ) -> Result<TorusXi, BackendError> {
        let (x0, y0) = *point;
        if !(0.0..1.0).contains(&x0) || !(0.0..1.0).contains(&y0) {
            return Err(BackendError::InvalidInput(format!(
                "Schiffer point must lie in the open cell, got ({x0}, {y0})"
            )));
        }
        let margin = 2.0 / self.geom.n as f64;
        let dist = self.geom.distance_to_cut(x0, y0);
        if 2.0 * radius + margin >= dist {
            return Err(BackendError::InvalidInput(format!(
                "bump support touches the chart boundary: 2r = {:.3} vs distance {:.3}",
                2.0 * radius,
                dist
            )));
        }
        let p = self.geom.z_of_xy(x0, y0);
        let n = self.geom.n;
        let mut samples = Vec::with_capacity(n * n);
        let mut del_samples = Vec::with_capacity(n * n);
        for iy in 0..n {
            for ix in 0..n {
                let dz = self.geom.z_at(ix, iy) - p;
                let s = dz.norm();
                samples.push(Complex64::new(schiffer_weight(s, radius), 0.0));
                // del of -beta'(s)/(2s): chain rule with ds/dz = conj(z-P)/(2s)
                if s <= radius || s >= 2.0 * radius {
                    del_samples.push(Complex64::new(0.0, 0.0));
                } else {
                    let num = bump_second(s, radius) * s - bump_prime(s, radius);
                    del_samples.push(dz.conj() * (-num / (4.0 * s * s * s)));
                }
            }
        }
        Ok(TorusXi {
            m,
            samples,
            del_samples,
            point_xy: *point,
            point_z: p,
            radius,
        })
    }

    /// xi plus dbar(chi-tilde) for a smooth bump-supported perturbation
    /// chi-tilde = b_{c,r}(z) * (a0 + a1 (z - c)); the class is unchanged.
    pub fn perturb_xi(
        &self,
        xi: &TorusXi,
        center: (f64, f64),
        radius: f64,
        a0: Complex64,
        a1: Complex64,
    ) -> Result<TorusXi, BackendError> {
        let dist = self.geom.distance_to_cut(center.0, center.1);
        if 2.0 * radius >= dist {
            return Err(BackendError::InvalidInput(
                "perturbation bump touches the chart boundary".into(),
            ));
        }
        let c = self.geom.z_of_xy(center.0, center.1);
        let n = self.geom.n;
        let mut samples = xi.samples.clone();
        let mut del_samples = xi.del_samples.clone();
        for iy in 0..n {
            for ix in 0..n {
                let z = self.geom.z_at(ix, iy);
                let dz = z - c;
                let s = dz.norm();
                if s <= radius || s >= 2.0 * radius {
                    continue;
                }
                // dbar(b g) = g beta'(s) (z-c)/(2s) dzbar for holomorphic g
                let g = a0 + a1 * dz;
                let f = bump_prime(s, radius) / (2.0 * s);
                samples[iy * n + ix] += g * f * dz;
                // del of (z-c) F(s) is F(s) + (s/2) F'(s), with
                // F'(s) = (beta'' s - beta')/(2 s^2)
                let fp = (bump_second(s, radius) * s - bump_prime(s, radius)) / (2.0 * s * s);
                del_samples[iy * n + ix] += a1 * f * dz + g * (f + 0.5 * s * fp);
            }
        }
        Ok(TorusXi {
            m: xi.m,
            samples,
            del_samples,
            point_xy: xi.point_xy,
            point_z: xi.point_z,
            radius: xi.radius,
        })
    }

    /// The closed-form route to rho_Q(xi_P): eta_norm * sum a_ST phi_T(P)
    /// lambda_S, with eta_norm = -(p(z-P) + c) dz from the Weierstrass layer.
    /// Independent of the spectral solver path.
    pub fn rho_via_eta(
        &self,
        tensor: &SymTensor<Complex64>,
        point: &(f64, f64),
        m: usize,
    ) -> Result<GaussImage<Complex64>, BackendError> {
        let k = tensor.degree();
        if m == 0 || m >= k {
            return Err(BackendError::InvalidInput(
                "eta route needs 0 < m < k".into(),
            ));
        }
        let target = k - m;
        let p = self.geom.z_of_xy(point.0, point.1);
        let basis1 = self.basis(1, 0)?;
        let n = self.geom.n;
        let cells = n * n;

        // M(z) = sum_{S,T} w_ST lambda_S(z) lambda_T(P)
        let mut m_samples = vec![Complex64::new(0.0, 0.0); cells];
        for (full, c) in tensor.support() {
            for (s_part, t_part) in splits(&full, m) {
                let weight = c
                    * Complex64::new(
                        (s_part.orderings() * t_part.orderings()) as f64
                            / full.orderings() as f64,
                        0.0,
                    );
                let mut t_at_p = Complex64::new(1.0, 0.0);
                for &i in t_part.elems() {
                    t_at_p *= basis1.chars[i].eval(p, self.geom.tau, 0);
                }
                let s_samples = self.section_product_samples(&s_part)?;
                let w = weight * t_at_p;
                for (acc, sv) in m_samples.iter_mut().zip(&s_samples) {
                    *acc += w * sv;
                }
            }
        }
        // multiply by the eta coefficient
        let wdata = self.weierstrass_data()?;
        let mut sigma = Vec::with_capacity(cells);
        for iy in 0..n {
            for ix in 0..n {
                let z = self.geom.z_at(ix, iy);
                sigma.push(wdata.eta_coefficient(z, p) * m_samples[iy * n + ix]);
            }
        }
        let basis_t = self.basis(target, 1)?;
        let proj = project(&self.geom, &basis_t, &sigma);
        Ok(GaussImage {
            target_power: target,
            coords: proj.coords,
            diagnostics: ImageDiagnostics {
                decomposition_residual: 0.0,
                closedness_residual: 0.0,
                projection_residual: proj.projection_residual,
            },
        })
    }

    /// The integration pairing computed by honest grid quadrature instead of
    /// evaluation: integral(theta wedge sigma)/(2 pi i) =
    /// Im(tau) mean(u * s) / pi.
    pub fn pair_quadrature(&self, xi: &TorusXi, sigma_samples: &[Complex64]) -> Complex64 {
        let mut prod = Vec::with_capacity(sigma_samples.len());
        for (u, s) in xi.samples.iter().zip(sigma_samples) {
            prod.push(u * s);
        }
        mean(&prod) * (self.geom.tau.im / std::f64::consts::PI)
    }

    /// Samples of the section a GaussImage denotes (dz coefficient).
    pub fn image_samples(&self, image: &GaussImage<Complex64>) -> Result<Vec<Complex64>, BackendError> {
        let basis = self.basis(image.target_power, 1)?;
        let cells = self.geom.cells();
        let mut out = vec![Complex64::new(0.0, 0.0); cells];
        for (j, c) in image.coords.iter().enumerate() {
            for (o, s) in out.iter_mut().zip(&basis.sections[j]) {
                *o += c * s;
            }
        }
        Ok(out)
    }

    /// The image as a grid form with its quasi-periodicity descriptor.
    pub fn image_grid_form(&self, image: &GaussImage<Complex64>) -> Result<GridForm, BackendError> {
        Ok(GridForm {
            kind: FormKind::Form10,
            l_power: (image.target_power * self.d) as i64,
            chi: self.chi,
            samples: self.image_samples(image)?,
        })
    }
}

impl TorusXi {
    /// The representative as a grid form: a (0,1)-form valued in
    /// M_chi (x) L^{-m} (descriptor relative to the backend character).
    pub fn as_grid_form(&self, backend: &TorusBackend) -> GridForm {
        GridForm {
            kind: FormKind::Form01,
            l_power: -((self.m * backend.d) as i64),
            chi: backend.chi,
            samples: self.samples.clone(),
        }
    }
}

impl HodgeBackend for TorusBackend {
    type Scalar = Complex64;
    type Xi = TorusXi;
    type DelPotential = TorusDelPotential;
    type Sigma = TorusSigma;
    type Point = (f64, f64);

    fn name(&self) -> &'static str {
        "torus"
    }

    fn h0(&self, power: usize) -> usize {
        power * self.d
    }

    fn product_coordinates(&self, m: &Multiset) -> Result<Vec<Complex64>, BackendError> {
        let samples = self.section_product_samples(m)?;
        let basis = self.basis(m.len(), 0)?;
        let proj = project(&self.geom, &basis, &samples);
        if proj.projection_residual > 1e-6 {
            return Err(BackendError::ResidualTooLarge {
                what: "section-product projection".into(),
                value: proj.projection_residual,
                tol: 1e-6,
            });
        }
        Ok(proj.coords)
    }

    fn kernel(
        &self,
        rows: usize,
        cols: usize,
        entries: &[Complex64],
    ) -> Result<(Vec<Vec<Complex64>>, KernelDiagnostics), BackendError> {
        let mat = DMatrix::from_fn(rows, cols, |r, c| entries[r * cols + c]);
        // eigen-decomposition of the Gram matrix gives all cols directions,
        // including the structural kernel of a wide matrix; the per-vector
        // singular value estimate |M v| is then recomputed directly, which is
        // accurate where squared eigenvalues are not
        let gram = mat.adjoint() * &mat;
        let eig = nalgebra::SymmetricEigen::new(gram);
        let mut order: Vec<usize> = (0..cols).collect();
        order.sort_by(|&a, &b| {
            eig.eigenvalues[a]
                .partial_cmp(&eig.eigenvalues[b])
                .expect("finite eigenvalues")
        });
        let mut svals = Vec::with_capacity(cols);
        let mut vectors: Vec<DVector<Complex64>> = Vec::with_capacity(cols);
        for &idx in &order {
            let v = eig.eigenvectors.column(idx).into_owned();
            let s = (&mat * &v).norm();
            svals.push(s);
            vectors.push(v);
        }
        let smax = svals.iter().cloned().fold(0.0f64, f64::max);
        if smax == 0.0 {
            // zero matrix: everything is kernel
            let basis = vectors
                .iter()
                .map(|v| normalize_phase(v.as_slice()))
                .collect();
            return Ok((
                basis,
                KernelDiagnostics {
                    rank: 0,
                    singular_values: svals,
                    gap: f64::INFINITY,
                },
            ));
        }
        let threshold = 1e-8 * smax;
        let kernel_count = svals.iter().filter(|&&s| s <= threshold).count();
        let gap = if kernel_count == 0 || kernel_count == cols {
            f64::INFINITY
        } else {
            // svals ascending: dropped are 0..kernel_count, kept start there
            svals[kernel_count] / svals[kernel_count - 1].max(f64::MIN_POSITIVE)
        };
        if gap < 1e3 {
            return Err(BackendError::RankAmbiguous { gap, need: 1e3 });
        }
        let basis: Vec<Vec<Complex64>> = vectors[..kernel_count]
            .iter()
            .map(|v| normalize_phase(v.as_slice()))
            .collect();
        let mut descending = svals.clone();
        descending.reverse();
        Ok((
            basis,
            KernelDiagnostics {
                rank: cols - kernel_count,
                singular_values: descending,
                gap,
            },
        ))
    }

    fn schiffer_class(&self, point: &(f64, f64), m: usize) -> Result<TorusXi, BackendError> {
        if m == 0 {
            return Err(BackendError::InvalidInput("twist m must be positive".into()));
        }
        self.schiffer_with_radius(point, m, self.bump_radius)
    }

    fn decompose_cup(
        &self,
        xi: &TorusXi,
        t: &Multiset,
    ) -> Result<CupDecomposition<Self>, BackendError> {
        if t.len() != xi.m {
            return Err(BackendError::InvalidInput(format!(
                "cup multiset size {} must equal the twist m = {}",
                t.len(),
                xi.m
            )));
        }
        let lambda_t = self.section_product_samples(t)?;
        let mut psi = Vec::with_capacity(lambda_t.len());
        for (w, l) in xi.samples.iter().zip(&lambda_t) {
            psi.push(w * l);
        }
        let dec = dbar_solve(&self.geom, &self.fft, self.chi, &psi);
        if dec.residual > 1e-8 {
            return Err(BackendError::ResidualTooLarge {
                what: "dbar solve".into(),
                value: dec.residual,
                tol: 1e-8,
            });
        }
        let del = del_grid(&self.geom, &self.fft, self.chi, &dec.h);
        // analytic del(psi_T) = del(xi) lambda_T + xi del(lambda_T): the
        // dzbar wedge dz coefficient of dbar(del h_T), by the solve identity
        let del_lambda = self.section_product_del_samples(t)?;
        let mut del_psi = Vec::with_capacity(lambda_t.len());
        for idx in 0..lambda_t.len() {
            del_psi.push(
                xi.del_samples[idx] * lambda_t[idx] + xi.samples[idx] * del_lambda[idx],
            );
        }
        Ok(CupDecomposition {
            del_h: TorusDelPotential { del, del_psi },
            residual: dec.residual,
            gamma_magnitude: dec.gamma.norm(),
        })
    }

    fn assemble_sigma(
        &self,
        terms: &[(Complex64, Multiset, usize)],
        dels: &[TorusDelPotential],
        _target_power: usize,
    ) -> Result<TorusSigma, BackendError> {
        let cells = self.geom.cells();
        let mut samples = vec![Complex64::new(0.0, 0.0); cells];
        let mut dbar_samples = vec![Complex64::new(0.0, 0.0); cells];
        let mut product_cache: BTreeMap<Multiset, Vec<Complex64>> = BTreeMap::new();
        for (w, s_set, t_idx) in terms {
            if !product_cache.contains_key(s_set) {
                product_cache.insert(s_set.clone(), self.section_product_samples(s_set)?);
            }
            let phi_s = &product_cache[s_set];
            let del = &dels[*t_idx];
            for idx in 0..cells {
                let factor = w * phi_s[idx];
                samples[idx] += factor * del.del[idx];
                dbar_samples[idx] += factor * del.del_psi[idx];
            }
        }
        Ok(TorusSigma { samples, dbar_samples })
    }

    fn extract_class(
        &self,
        sigma: &TorusSigma,
        target_power: usize,
    ) -> Result<GaussImage<Complex64>, BackendError> {
        let scale = rms(&sigma.samples);
        let basis = self.basis(target_power, 1)?;
        if scale == 0.0 {
            return Ok(GaussImage::zero(target_power, basis.dim()));
        }
        let closedness = rms(&sigma.dbar_samples) / scale;
        let proj = project(&self.geom, &basis, &sigma.samples);
        Ok(GaussImage {
            target_power,
            coords: proj.coords,
            diagnostics: ImageDiagnostics {
                decomposition_residual: 0.0,
                closedness_residual: closedness,
                projection_residual: proj.projection_residual,
            },
        })
    }

    fn wahl_expand(&self, tensor: &SymTensor<Complex64>) -> Result<Vec<Complex64>, BackendError> {
        let basis1 = self.basis(1, 0)?;
        let d2 = self.derivative_section_samples(2)?;
        let cells = self.geom.cells();
        let mut samples = vec![Complex64::new(0.0, 0.0); cells];
        for (mset, c) in tensor.support() {
            let e = mset.elems();
            if e.len() != 2 {
                return Err(BackendError::InvalidInput("Wahl map needs k = 2".into()));
            }
            let (i, j) = (e[0], e[1]);
            if i == j {
                for idx in 0..cells {
                    samples[idx] += c * d2[i][idx] * basis1.sections[j][idx];
                }
            } else {
                let half = c * 0.5;
                for idx in 0..cells {
                    samples[idx] += half
                        * (d2[i][idx] * basis1.sections[j][idx]
                            + d2[j][idx] * basis1.sections[i][idx]);
                }
            }
        }
        let basis2 = self.basis(2, 0)?;
        let proj = project(&self.geom, &basis2, &samples);
        if proj.projection_residual > 1e-6 {
            return Err(BackendError::ResidualTooLarge {
                what: "Wahl image projection".into(),
                value: proj.projection_residual,
                tol: 1e-6,
            });
        }
        Ok(proj.coords)
    }

    fn wahl_eval(
        &self,
        tensor: &SymTensor<Complex64>,
        point: &(f64, f64),
    ) -> Result<Complex64, BackendError> {
        let basis1 = self.basis(1, 0)?;
        let z = self.geom.z_of_xy(point.0, point.1);
        let tau = self.geom.tau;
        let mut acc = Complex64::new(0.0, 0.0);
        for (mset, c) in tensor.support() {
            let e = mset.elems();
            let (i, j) = (e[0], e[1]);
            let vi = basis1.chars[i].eval(z, tau, 0);
            let vj = basis1.chars[j].eval(z, tau, 0);
            let di = basis1.chars[i].eval(z, tau, 2);
            let dj = basis1.chars[j].eval(z, tau, 2);
            if i == j {
                acc += c * di * vj;
            } else {
                acc += c * 0.5 * (di * vj + dj * vi);
            }
        }
        Ok(acc)
    }

    fn pair_xi_class(
        &self,
        xi: &TorusXi,
        class: &GaussImage<Complex64>,
    ) -> Result<Complex64, BackendError> {
        let basis = self.basis(class.target_power, 1)?;
        Ok(basis.eval_combination(&class.coords, xi.point_z, self.geom.tau))
    }
}

/// del h_T together with the analytic del(psi_T) samples that feed the
/// closedness measure; both are chi-twisted function samples.
pub struct TorusDelPotential {
    pub del: Vec<Complex64>,
    pub del_psi: Vec<Complex64>,
}

/// Deterministic phase normalization: the largest-magnitude entry is made
/// real positive.
fn normalize_phase(v: &[Complex64]) -> Vec<Complex64> {
    let mut best = 0usize;
    let mut best_norm = 0.0f64;
    for (i, c) in v.iter().enumerate() {
        let n = c.norm();
        if n > best_norm + 1e-15 {
            best_norm = n;
            best = i;
        }
    }
    if best_norm == 0.0 {
        return v.to_vec();
    }
    let phase = v[best] / best_norm;
    let inv = phase.conj();
    v.iter().map(|c| c * inv).collect()
}
