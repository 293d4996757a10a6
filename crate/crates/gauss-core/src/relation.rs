//! Relation spaces I_k(L) = ker(Sym^k H^0(L) -> H^0(L^k)).

use crate::backend::{BackendError, HodgeBackend, KernelDiagnostics};
use crate::multiset::{multisets, Multiset};
use crate::scalar::CoreScalar;
use crate::tensor::SymTensor;

/// A basis of I_k(L) as symmetric coefficient tensors, plus the kernel
/// engine's rank diagnostics.
#[derive(Debug, Clone)]
pub struct RelationSpace<S: CoreScalar> {
    pub k: usize,
    pub rank_of_sections: usize,
    pub basis: Vec<SymTensor<S>>,
    pub diagnostics: KernelDiagnostics,
}

impl<S: CoreScalar> RelationSpace<S> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Kernel of the multiplication matrix in the symmetrized monomial basis.
pub fn relation_space<B: HodgeBackend>(
    backend: &B,
    k: usize,
) -> Result<RelationSpace<B::Scalar>, BackendError> {
    let r = backend.h0(1);
    if r == 0 {
        return Err(BackendError::InvalidInput("h^0(L) must be positive".into()));
    }
    let cols_sets = multisets(r, k);
    let rows = backend.h0(k);
    let cols = cols_sets.len();
    let mut entries = vec![B::Scalar::zero(); rows * cols];
    for (c, m) in cols_sets.iter().enumerate() {
        let coords = backend.product_coordinates(m)?;
        debug_assert_eq!(coords.len(), rows);
        for (row, v) in coords.into_iter().enumerate() {
            entries[row * cols + c] = v;
        }
    }
    let (vectors, diagnostics) = backend.kernel(rows, cols, &entries)?;
    let basis = vectors
        .into_iter()
        .map(|v| SymTensor::new(k, r, v))
        .collect();
    Ok(RelationSpace {
        k,
        rank_of_sections: r,
        basis,
        diagnostics,
    })
}

/// The defining identity sum_J a_J lambda_J = 0, re-checked through the
/// backend's product coordinates; returns the sup-norm of the residual
/// coordinates (exactly zero on the exact backend).
pub fn relation_residual<B: HodgeBackend>(
    backend: &B,
    tensor: &SymTensor<B::Scalar>,
) -> Result<f64, BackendError> {
    let rows = backend.h0(tensor.degree());
    let mut acc = vec![B::Scalar::zero(); rows];
    for (m, c) in tensor.support() {
        let coords = backend.product_coordinates(&m)?;
        for (slot, v) in acc.iter_mut().zip(coords) {
            *slot = slot.clone() + c.clone() * v;
        }
    }
    Ok(acc.iter().map(CoreScalar::magnitude).fold(0.0, f64::max))
}

/// Transforms a relation tensor under a change of basis of H^0(L):
/// lambda'_i = sum_j change[j][i] lambda_j. The returned tensor expresses the
/// same relation in the primed basis.
pub fn transform_tensor<S: CoreScalar>(
    tensor: &SymTensor<S>,
    change_inverse: &[Vec<S>],
) -> SymTensor<S> {
    // a'_{J'} = sum_J a_J prod_t inv[j_t][j'_t]; work multiset-wise by
    // expanding P(x) = sum c_M x^M with x_j = sum_i inv[j][i] x'_i.
    let r = tensor.rank();
    let k = tensor.degree();
    let mut out = SymTensor::zero(k, r);
    for (m, c) in tensor.support() {
        // expand the product over the multiset's entries
        let mut terms: Vec<(Multiset, S)> = vec![(Multiset::empty(), c)];
        for &j in m.elems() {
            let mut next: Vec<(Multiset, S)> = Vec::new();
            for (part, coeff) in &terms {
                for i in 0..r {
                    let w = change_inverse[j][i].clone();
                    if w.is_zero() {
                        continue;
                    }
                    next.push((part.union(&Multiset::single(i)), coeff.clone() * w));
                }
            }
            terms = next;
        }
        for (ms, coeff) in terms {
            let cur = out.coeff(&ms);
            out.set_coeff(&ms, cur + coeff);
        }
    }
    out
}
