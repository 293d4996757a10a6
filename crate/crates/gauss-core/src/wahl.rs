//! The second Wahl (Gaussian) map mu_2 : I_2(L) -> H^0(L^2 (x) K^2), with
//! local expression sum a_ij phidotdot_i phi_j.

use crate::backend::{BackendError, HodgeBackend};
use crate::scalar::CoreScalar;
use crate::tensor::SymTensor;

/// Coordinates of mu_2(Q) in the backend's basis of H^0(L^2 (x) K^2).
#[derive(Debug, Clone, PartialEq)]
pub struct WahlImage<S: CoreScalar> {
    pub coords: Vec<S>,
}

impl<S: CoreScalar> WahlImage<S> {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(S::is_zero)
    }
}

pub fn wahl_mu2<B: HodgeBackend>(
    backend: &B,
    tensor: &SymTensor<B::Scalar>,
) -> Result<WahlImage<B::Scalar>, BackendError> {
    if tensor.degree() != 2 {
        return Err(BackendError::InvalidInput(format!(
            "mu_2 takes quadric relations, got degree {}",
            tensor.degree()
        )));
    }
    Ok(WahlImage {
        coords: backend.wahl_expand(tensor)?,
    })
}
