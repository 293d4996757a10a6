//! The HodgeBackend implementation for O(d) on the line.

use exact_algebra::{ExactMatrix, GaussianRational, Polynomial, RationalFunction};
use gauss_core::backend::{CupDecomposition, KernelDiagnostics};
use gauss_core::{BackendError, GaussImage, HodgeBackend, ImageDiagnostics, Multiset, SymTensor};
use num_traits::One;

use crate::bundle::P1Bundle;
use crate::forms::{harmonic_decompose_p1, BumpTerm, HarmonicDecompositionP1, P1Class01};

/// Exact backend for L = O(d). The section basis defaults to the monomials
/// z^0..z^d but any exact invertible basis can be installed; output
/// coordinates are always taken in the monomial basis of the target space,
/// so images are comparable across source-basis changes.
#[derive(Debug, Clone)]
pub struct P1Backend {
    bundle: P1Bundle,
    basis: Vec<Polynomial>,
}

impl P1Backend {
    pub fn new(degree: usize) -> Self {
        let bundle = P1Bundle::new(degree);
        let basis = bundle.monomial_basis();
        Self { bundle, basis }
    }

    /// Installs a custom exact basis of H^0(O(d)); rejected unless square and
    /// invertible with each element of degree <= d.
    pub fn with_basis(degree: usize, basis: Vec<Polynomial>) -> Result<Self, BackendError> {
        let bundle = P1Bundle::new(degree);
        if basis.len() != bundle.h0() {
            return Err(BackendError::InvalidInput(format!(
                "basis must have {} elements",
                bundle.h0()
            )));
        }
        if basis
            .iter()
            .any(|p| p.degree().is_some_and(|dd| dd > degree))
        {
            return Err(BackendError::InvalidInput(
                "basis element exceeds the section degree bound".into(),
            ));
        }
        let n = bundle.h0();
        let rows: Vec<Vec<GaussianRational>> = (0..n)
            .map(|i| (0..n).map(|j| basis[j].coeff(i)).collect())
            .collect();
        let m = ExactMatrix::from_rows(rows)?;
        if m.rank() != n {
            return Err(BackendError::InvalidInput(
                "proposed section basis is not invertible".into(),
            ));
        }
        Ok(Self { bundle, basis })
    }

    pub fn degree(&self) -> usize {
        self.bundle.degree
    }

    pub fn bundle(&self) -> P1Bundle {
        self.bundle
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    /// Product of basis sections over a multiset, as a chart polynomial.
    pub fn section_product(&self, m: &Multiset) -> Polynomial {
        let mut acc = Polynomial::one();
        for &i in m.elems() {
            acc = &acc * &self.basis[i];
        }
        acc
    }

    /// Schiffer classes at pairwise distinct points spanning H^1(O(-m d));
    /// needs exactly m*d - 1 points, rejected by an exact Vandermonde rank
    /// check when degenerate.
    pub fn schiffer_spanning_set(
        &self,
        points: &[GaussianRational],
        m: usize,
    ) -> Result<Vec<P1Class01>, BackendError> {
        let e = m * self.bundle.degree;
        let dim = P1Bundle::h1_of_negative(e);
        if points.len() != dim {
            return Err(BackendError::InvalidInput(format!(
                "H^1(O(-{e})) has dimension {dim}; got {} points",
                points.len()
            )));
        }
        // evaluation pairing against the monomial basis of O(e-2): rows P^j
        let rows: Vec<Vec<GaussianRational>> = points
            .iter()
            .map(|p| {
                let mut row = Vec::with_capacity(dim);
                let mut acc = GaussianRational::one();
                for _ in 0..dim {
                    row.push(acc.clone());
                    acc = &acc * p;
                }
                row
            })
            .collect();
        let mat = ExactMatrix::from_rows(rows)?;
        if mat.rank() != dim {
            return Err(BackendError::InvalidInput(
                "degenerate Schiffer points: the classes do not span".into(),
            ));
        }
        Ok(points
            .iter()
            .map(|p| P1Class01::schiffer(p.clone(), m))
            .collect())
    }

    pub(crate) fn polynomial_to_image(
        &self,
        sigma: &Polynomial,
        target: usize,
        d: usize,
    ) -> Result<GaussImage<GaussianRational>, BackendError> {
        let bound = match (target * d).checked_sub(2) {
            Some(b) => b,
            None => {
                if sigma.is_zero() {
                    return Ok(GaussImage::zero(target, 0));
                }
                return Err(BackendError::Numeric(
                    "target section space is zero but sigma is not".into(),
                ));
            }
        };
        if sigma.degree().is_some_and(|dd| dd > bound) {
            return Err(BackendError::Numeric(format!(
                "sigma has degree {} > {bound}: not regular at infinity",
                sigma.degree().unwrap()
            )));
        }
        let mut coords = vec![GaussianRational::from_int(0); bound + 1];
        for (i, c) in sigma.coeffs().iter().enumerate() {
            coords[i] = c.clone();
        }
        Ok(GaussImage {
            target_power: target,
            coords,
            diagnostics: ImageDiagnostics::default(),
        })
    }

    /// The polynomial a GaussImage denotes (chart coefficient of sigma).
    pub fn image_polynomial(image: &GaussImage<GaussianRational>) -> Polynomial {
        Polynomial::new(image.coords.clone())
    }
}

/// del h_T split by channel: the pieces supported on each bump (which must
/// cancel in any assembled class) and the global rational tail -ds.
pub struct P1DelPotential {
    /// (center, f) with the convention that the channel contributes
    /// del(b_center * f) to del h
    pub channels: Vec<(GaussianRational, RationalFunction)>,
    pub tail: RationalFunction,
}

impl HodgeBackend for P1Backend {
    type Scalar = GaussianRational;
    type Xi = P1Class01;
    type DelPotential = P1DelPotential;
    type Sigma = RationalFunction;
    type Point = GaussianRational;

    fn name(&self) -> &'static str {
        "p1"
    }

    fn h0(&self, power: usize) -> usize {
        power * self.bundle.degree + 1
    }

    fn product_coordinates(&self, m: &Multiset) -> Result<Vec<GaussianRational>, BackendError> {
        let prod = self.section_product(m);
        let dim = self.h0(m.len());
        if prod.degree().is_some_and(|dd| dd >= dim) {
            return Err(BackendError::Numeric(
                "section product exceeds the target degree bound".into(),
            ));
        }
        let mut coords = vec![GaussianRational::from_int(0); dim];
        for (i, c) in prod.coeffs().iter().enumerate() {
            coords[i] = c.clone();
        }
        Ok(coords)
    }

    fn kernel(
        &self,
        rows: usize,
        cols: usize,
        entries: &[GaussianRational],
    ) -> Result<(Vec<Vec<GaussianRational>>, KernelDiagnostics), BackendError> {
        let m = ExactMatrix::new(rows, cols, entries.to_vec())?;
        let rank = m.rank();
        let basis = m.kernel();
        Ok((
            basis,
            KernelDiagnostics {
                rank,
                singular_values: Vec::new(),
                gap: f64::INFINITY,
            },
        ))
    }

    fn schiffer_class(&self, point: &GaussianRational, m: usize) -> Result<P1Class01, BackendError> {
        if m * self.bundle.degree < 2 {
            return Err(BackendError::InvalidInput(format!(
                "H^1(O(-{})) vanishes; Schiffer class is zero",
                m * self.bundle.degree
            )));
        }
        Ok(P1Class01::schiffer(point.clone(), m))
    }

    fn decompose_cup(
        &self,
        xi: &P1Class01,
        t: &Multiset,
    ) -> Result<CupDecomposition<Self>, BackendError> {
        let phi_t = RationalFunction::from_poly(self.section_product(t));
        let cup_terms: Vec<BumpTerm> = xi
            .terms
            .iter()
            .map(|term| BumpTerm {
                center: term.center.clone(),
                f: &term.f * &phi_t,
            })
            .collect();
        let HarmonicDecompositionP1 { bump_parts, subtracted } =
            harmonic_decompose_p1(&cup_terms)?;
        Ok(CupDecomposition {
            del_h: P1DelPotential {
                channels: bump_parts,
                tail: -&subtracted.derivative(),
            },
            residual: 0.0,
            gamma_magnitude: 0.0,
        })
    }

    fn assemble_sigma(
        &self,
        terms: &[(GaussianRational, Multiset, usize)],
        dels: &[P1DelPotential],
        _target_power: usize,
    ) -> Result<RationalFunction, BackendError> {
        // bump-channel cancellation: for every center c, both
        // sum w phi_S f and sum w phi_S f' must vanish identically
        let mut centers: Vec<GaussianRational> = Vec::new();
        for del in dels {
            for (c, _) in &del.channels {
                if !centers.contains(c) {
                    centers.push(c.clone());
                }
            }
        }
        for center in &centers {
            let mut db_sum = RationalFunction::zero();
            let mut b_sum = RationalFunction::zero();
            for (w, s_set, t_idx) in terms {
                let phi_s = RationalFunction::from_poly(
                    self.section_product(s_set).scale(w),
                );
                for (c, f) in &dels[*t_idx].channels {
                    if c != center {
                        continue;
                    }
                    db_sum = &db_sum + &(&phi_s * f);
                    b_sum = &b_sum + &(&phi_s * &f.derivative());
                }
            }
            if !db_sum.is_zero() || !b_sum.is_zero() {
                return Err(BackendError::NotARelation(format!(
                    "bump-supported part of sigma fails to cancel at center {center}"
                )));
            }
        }
        // the surviving global tail
        let mut sigma = RationalFunction::zero();
        for (w, s_set, t_idx) in terms {
            let phi_s = RationalFunction::from_poly(self.section_product(s_set).scale(w));
            sigma = &sigma + &(&phi_s * &dels[*t_idx].tail);
        }
        Ok(sigma)
    }

    fn extract_class(
        &self,
        sigma: &RationalFunction,
        target_power: usize,
    ) -> Result<GaussImage<GaussianRational>, BackendError> {
        let poly = sigma.as_polynomial().ok_or_else(|| {
            BackendError::NotARelation(
                "sigma keeps a pole: the numerator fails order-two vanishing".into(),
            )
        })?;
        self.polynomial_to_image(&poly, target_power, self.bundle.degree)
    }

    fn wahl_expand(&self, tensor: &SymTensor<GaussianRational>) -> Result<Vec<GaussianRational>, BackendError> {
        let poly = self.wahl_polynomial(tensor);
        let d = self.bundle.degree;
        let dim = (2 * d).saturating_sub(4) + usize::from(2 * d >= 4);
        if dim == 0 {
            if poly.is_zero() {
                return Ok(Vec::new());
            }
            return Err(BackendError::Numeric(
                "Wahl image nonzero but H^0(L^2 K^2) = 0".into(),
            ));
        }
        if poly.degree().is_some_and(|dd| dd > 2 * d - 4) {
            return Err(BackendError::Numeric(format!(
                "Wahl image degree {} exceeds bound {}: not a global section",
                poly.degree().unwrap(),
                2 * d - 4
            )));
        }
        let mut coords = vec![GaussianRational::from_int(0); dim];
        for (i, c) in poly.coeffs().iter().enumerate() {
            coords[i] = c.clone();
        }
        Ok(coords)
    }

    fn wahl_eval(
        &self,
        tensor: &SymTensor<GaussianRational>,
        point: &GaussianRational,
    ) -> Result<GaussianRational, BackendError> {
        Ok(self.wahl_polynomial(tensor).eval(point))
    }

    fn pair_xi_class(
        &self,
        xi: &P1Class01,
        class: &GaussImage<GaussianRational>,
    ) -> Result<GaussianRational, BackendError> {
        let omega = RationalFunction::from_poly(Self::image_polynomial(class));
        crate::rho::pair_terms(&xi.terms, &omega)
    }
}

impl P1Backend {
    /// sum a_ij phidotdot_i phi_j as a chart polynomial.
    pub fn wahl_polynomial(&self, tensor: &SymTensor<GaussianRational>) -> Polynomial {
        let mut acc = Polynomial::zero();
        for (m, c) in tensor.support() {
            let e = m.elems();
            debug_assert_eq!(e.len(), 2);
            let (i, j) = (e[0], e[1]);
            if i == j {
                let term = &self.basis[i].derivative().derivative() * &self.basis[j];
                acc = &acc + &term.scale(&c);
            } else {
                let half = &c * &GaussianRational::from_ratio(1, 2);
                let t1 = &self.basis[i].derivative().derivative() * &self.basis[j];
                let t2 = &self.basis[j].derivative().derivative() * &self.basis[i];
                acc = &acc + &(&t1 + &t2).scale(&half);
            }
        }
        acc
    }
}
