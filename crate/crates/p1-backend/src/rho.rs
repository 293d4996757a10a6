//! Closed-form Hodge-Gaussian images for Schiffer classes and the residue
//! pairing, both fully exact.

use exact_algebra::{GaussianRational, Polynomial, RationalFunction};
use gauss_core::multiset::splits;
use gauss_core::{BackendError, GaussImage, SymTensor};
use num_traits::One;

use crate::backend::P1Backend;

/// The numerator N(z) = sum_{S,T} a_ST phi_S(z) phi_T(P) of the closed form,
/// built from the multiset-weighted splitting of the tensor.
pub(crate) fn closed_form_numerator(
    backend: &P1Backend,
    tensor: &SymTensor<GaussianRational>,
    point: &GaussianRational,
    m: usize,
) -> Polynomial {
    let mut num = Polynomial::zero();
    for (full, c) in tensor.support() {
        for (s_part, t_part) in splits(&full, m) {
            let weight = &c
                * &GaussianRational::from_ratio(
                    (s_part.orderings() * t_part.orderings()) as i64,
                    full.orderings() as i64,
                );
            let phi_s = backend.section_product(&s_part);
            let phi_t_at_p = backend.section_product(&t_part).eval(point);
            let term = phi_s.scale(&(&weight * &phi_t_at_p));
            num = &num + &term;
        }
    }
    num
}

/// rho_Q(xi_P) in closed form: the section of O((k-m)d - 2) with chart
/// expression -N(z)/(z-P)^2, the division being exact because N vanishes to
/// order two at P whenever Q is a genuine relation.
///
/// Fails with `NotARelation` when the order-two vanishing does not hold;
/// fails with `Numeric` when the quotient breaks the degree bound (which
/// would mean the output is not regular at infinity).
pub fn rho_schiffer_exact(
    backend: &P1Backend,
    tensor: &SymTensor<GaussianRational>,
    point: &GaussianRational,
    m: usize,
) -> Result<GaussImage<GaussianRational>, BackendError> {
    let k = tensor.degree();
    if m == 0 || m > k {
        return Err(BackendError::InvalidInput(format!(
            "twist m = {m} out of range for k = {k}"
        )));
    }
    let target = k - m;
    if target == 0 {
        return Err(BackendError::InvalidInput(
            "target power k - m must be positive".into(),
        ));
    }
    let d = backend.degree();
    let num = closed_form_numerator(backend, tensor, point, m);
    let lin = Polynomial::new(vec![-point, GaussianRational::one()]);
    let (q1, r1) = num.divrem(&lin);
    if !r1.is_zero() {
        return Err(BackendError::NotARelation(format!(
            "numerator does not vanish at P = {point}"
        )));
    }
    let (q2, r2) = q1.divrem(&lin);
    if !r2.is_zero() {
        return Err(BackendError::NotARelation(format!(
            "numerator vanishes only to first order at P = {point}"
        )));
    }
    let sigma = -&q2;
    backend.polynomial_to_image(&sigma, target, d)
}

/// The integration pairing of xi_P against omega = Psi(z) dz (x) generator,
/// in units of 2*pi*i: returns Psi(P). Errors when omega has a pole at P.
pub fn pair_schiffer(
    point: &GaussianRational,
    omega: &RationalFunction,
) -> Result<GaussianRational, BackendError> {
    omega
        .eval(point)
        .map_err(|_| BackendError::InvalidInput(format!("omega has a pole at P = {point}")))
}

/// Residue form of the pairing for a general bump-term class: the integral of
/// (sum f_i db_i) against Psi dz is -2*pi*i * sum of residues of f_i * Psi at
/// the bump centers; in units of 2*pi*i that is -sum Res.
pub fn pair_terms(
    terms: &[crate::forms::BumpTerm],
    omega: &RationalFunction,
) -> Result<GaussianRational, BackendError> {
    let mut acc = GaussianRational::from_int(0);
    for t in terms {
        let prod = &t.f * omega;
        let res = prod.residue_at(&t.center);
        acc = &acc - &res;
    }
    Ok(acc)
}
