//! The pairs-of-bundles Hodge-Gaussian map for split bundles on the line:
//! sigma_P(theta) = sum a_ij del h_i (x) mu_j, applied componentwise with the
//! scalar machinery and extracted per F-summand.

use exact_algebra::{GaussianRational, Polynomial};
use gauss_core::pairs::SplitBundle;
use gauss_core::BackendError;
use num_traits::One;

/// A class in H^{1,0}(F) for a split F: monomial coordinates of the section
/// of O(e_j) (x) K per summand (empty when that summand's space vanishes).
#[derive(Debug, Clone, PartialEq)]
pub struct PairImage {
    pub per_summand: Vec<Vec<GaussianRational>>,
}

impl PairImage {
    pub fn is_zero(&self) -> bool {
        self.per_summand
            .iter()
            .all(|c| c.iter().all(GaussianRational::is_zero))
    }
}

/// rho_P(xi) for P in R_2(E,F) (flattened row-major over the E and F bases)
/// and xi the Schiffer class of E^* at `point` supported on E-summand
/// `component`. The bump-supported parts must cancel identically per
/// F-summand; the surviving tail divides exactly by (z - P)^2.
pub fn rho_pair(
    e: &SplitBundle,
    f: &SplitBundle,
    tensor: &[GaussianRational],
    component: usize,
    point: &GaussianRational,
) -> Result<PairImage, BackendError> {
    let se = e.h0();
    let sf = f.h0();
    if tensor.len() != se * sf {
        return Err(BackendError::InvalidInput(format!(
            "tensor must have {} entries, got {}",
            se * sf,
            tensor.len()
        )));
    }
    if component >= e.degrees.len() {
        return Err(BackendError::InvalidInput(
            "Schiffer component out of range".into(),
        ));
    }
    let e_labels = e.basis_labels();
    let f_labels = f.basis_labels();
    let lin = Polynomial::new(vec![-point, GaussianRational::one()]);

    let mut per_summand = Vec::with_capacity(f.degrees.len());
    for (j, &ej) in f.degrees.iter().enumerate() {
        // bump-channel cancellation for this component:
        //   sum t f_a z^b  with f_a = -z^a/(z-P)  must vanish, and so must
        //   sum t f_a' z^b; both reduce to the order-two jet conditions.
        let mut db_num = Polynomial::zero(); // numerator over (z-P)
        let mut w_poly = Polynomial::zero(); // sum t P^a z^b
        let mut deriv_num = Polynomial::zero(); // numerator of sum t a z^{a-1} z^b
        for (col_e, &(ci, a)) in e_labels.iter().enumerate() {
            if ci != component {
                continue;
            }
            for (col_f, &(cj, b)) in f_labels.iter().enumerate() {
                if cj != j {
                    continue;
                }
                let t = &tensor[col_e * sf + col_f];
                if t.is_zero() {
                    continue;
                }
                let zb = Polynomial::monomial(GaussianRational::one(), b);
                let za = Polynomial::monomial(GaussianRational::one(), a);
                db_num = &db_num + &(&za * &zb).scale(&-t);
                if a > 0 {
                    let za1 = Polynomial::monomial(
                        &GaussianRational::from_int(a as i64) * &-t,
                        a - 1,
                    );
                    deriv_num = &deriv_num + &(&za1 * &zb);
                }
                let pa = pow_point(point, a);
                w_poly = &w_poly + &zb.scale(&(t * &pa));
            }
        }
        if !db_num.is_zero() {
            return Err(BackendError::NotARelation(format!(
                "pair tensor fails the diagonal vanishing on F-summand {j}"
            )));
        }
        if !deriv_num.is_zero() {
            return Err(BackendError::NotARelation(format!(
                "pair tensor fails the first-jet vanishing on F-summand {j}"
            )));
        }
        // sigma_j = -W_j(z)/(z-P)^2, exactly divisible
        let (q1, r1) = w_poly.divrem(&lin);
        let (q2, r2) = q1.divrem(&lin);
        if !r1.is_zero() || !r2.is_zero() {
            return Err(BackendError::NotARelation(format!(
                "pair tensor tail fails order-two vanishing at P on F-summand {j}"
            )));
        }
        let sigma_j = -&q2;
        let dim = ej.checked_sub(2).map(|b| b + 1).unwrap_or(0);
        if dim == 0 {
            if !sigma_j.is_zero() {
                return Err(BackendError::Numeric(format!(
                    "nonzero class in vanishing summand space O({ej}-2)"
                )));
            }
            per_summand.push(Vec::new());
            continue;
        }
        if sigma_j.degree().is_some_and(|dd| dd > ej - 2) {
            return Err(BackendError::Numeric(
                "pair image not regular at infinity".into(),
            ));
        }
        let mut coords = vec![GaussianRational::from_int(0); dim];
        for (i, c) in sigma_j.coeffs().iter().enumerate() {
            coords[i] = c.clone();
        }
        per_summand.push(coords);
    }
    Ok(PairImage { per_summand })
}

fn pow_point(p: &GaussianRational, n: usize) -> GaussianRational {
    let mut acc = GaussianRational::one();
    for _ in 0..n {
        acc = &acc * p;
    }
    acc
}
