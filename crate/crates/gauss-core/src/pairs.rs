//! Second module of relations R_2(E,F) for split bundles on the projective
//! line: global sections of E (x) F on the product vanishing to order two on
//! the diagonal, computed exactly as the kernel of the 2-jet evaluation map.

use exact_algebra::{ExactMatrix, GaussianRational};
use num_traits::Zero;

use crate::backend::{BackendError, KernelDiagnostics};

/// A direct sum of line bundles O(d_1) (+) ... (+) O(d_n) on the line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitBundle {
    pub degrees: Vec<usize>,
}

impl SplitBundle {
    pub fn line(d: usize) -> Self {
        Self { degrees: vec![d] }
    }

    /// Global sections: one monomial block per summand.
    pub fn h0(&self) -> usize {
        self.degrees.iter().map(|d| d + 1).sum()
    }

    /// Flattened basis indexing: (summand, power) -> column.
    pub fn basis_index(&self, summand: usize, power: usize) -> usize {
        assert!(power <= self.degrees[summand]);
        self.degrees[..summand].iter().map(|d| d + 1).sum::<usize>() + power
    }

    pub fn basis_labels(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &d) in self.degrees.iter().enumerate() {
            for a in 0..=d {
                out.push((i, a));
            }
        }
        out
    }
}

/// Basis of R_2(E,F) as coefficient matrices over H^0(E) (x) H^0(F), row
/// index E-basis, column index F-basis, flattened row-major.
#[derive(Debug, Clone)]
pub struct PairRelationSpace {
    pub e: SplitBundle,
    pub f: SplitBundle,
    pub basis: Vec<Vec<GaussianRational>>,
    pub diagnostics: KernelDiagnostics,
}

impl PairRelationSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn entry<'a>(&'a self, tensor: &'a [GaussianRational], e_idx: usize, f_idx: usize) -> &'a GaussianRational {
        &tensor[e_idx * self.f.h0() + f_idx]
    }
}

/// Kernel of the 2-jet evaluation map
/// H^0(E) (x) H^0(F) -> values and first derivatives along the diagonal.
///
/// Per component pair (i,j) the conditions are the vanishing of
/// sum t_{(ia)(jb)} z^{a+b} and of sum t_{(ia)(jb)} b z^{a+b-1} as
/// polynomials; the rows are their coefficients.
pub fn pair_relation_space(e: &SplitBundle, f: &SplitBundle) -> Result<PairRelationSpace, BackendError> {
    let se = e.h0();
    let sf = f.h0();
    let cols = se * sf;
    let e_labels = e.basis_labels();
    let f_labels = f.basis_labels();

    let mut rows: Vec<Vec<GaussianRational>> = Vec::new();
    for (i, &di) in e.degrees.iter().enumerate() {
        for (j, &ej) in f.degrees.iter().enumerate() {
            // value rows: powers 0..=di+ej
            for power in 0..=(di + ej) {
                let mut row = vec![GaussianRational::zero(); cols];
                for (col, &(ci, a)) in e_labels.iter().enumerate() {
                    if ci != i {
                        continue;
                    }
                    for (colf, &(cj, b)) in f_labels.iter().enumerate() {
                        if cj != j || a + b != power {
                            continue;
                        }
                        row[col * sf + colf] = GaussianRational::from_int(1);
                    }
                }
                rows.push(row);
            }
            // first-derivative rows (normal to the diagonal): powers 0..=di+ej-1
            for power in 0..(di + ej).max(1) {
                let mut row = vec![GaussianRational::zero(); cols];
                let mut nonzero = false;
                for (col, &(ci, a)) in e_labels.iter().enumerate() {
                    if ci != i {
                        continue;
                    }
                    for (colf, &(cj, b)) in f_labels.iter().enumerate() {
                        if cj != j || b == 0 || a + b != power + 1 {
                            continue;
                        }
                        row[col * sf + colf] = GaussianRational::from_int(b as i64);
                        nonzero = true;
                    }
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
    }

    let jet = ExactMatrix::from_rows(rows)?;
    let rank = jet.rank();
    let basis = jet.kernel();
    Ok(PairRelationSpace {
        e: e.clone(),
        f: f.clone(),
        basis,
        diagnostics: KernelDiagnostics {
            rank,
            singular_values: Vec::new(),
            gap: f64::INFINITY,
        },
    })
}

/// Rank of the 2-jet matrix alone, as an independent dimension oracle.
pub fn jet_rank(e: &SplitBundle, f: &SplitBundle) -> Result<usize, BackendError> {
    Ok(e.h0() * f.h0() - pair_relation_space(e, f)?.dim())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_have_no_relations() {
        let r2 = pair_relation_space(&SplitBundle::line(0), &SplitBundle::line(0)).unwrap();
        assert_eq!(r2.dim(), 0);
    }

    #[test]
    fn o2_pair_space_is_the_quadric() {
        let r2 = pair_relation_space(&SplitBundle::line(2), &SplitBundle::line(2)).unwrap();
        assert_eq!(r2.dim(), 1);
        assert_eq!(r2.diagnostics.rank, 8);
        // the kernel vector is proportional to z^0 (x) z^2 - 2 z^1 (x) z^1 + z^2 (x) z^0
        let t = &r2.basis[0];
        let g = |s: &str| s.parse::<GaussianRational>().unwrap();
        let at = |a: usize, b: usize| t[a * 3 + b].clone();
        assert_eq!(at(0, 2), g("1"));
        assert_eq!(at(1, 1), g("-2"));
        assert_eq!(at(2, 0), g("1"));
        assert_eq!(at(0, 0), g("0"));
    }

    #[test]
    fn antisymmetric_tensor_fails_order_two() {
        // x0 (x) x1 - x1 (x) x0 with E = F = O(1): vanishes on the diagonal
        // but its first-derivative row is nonzero, so R_2 excludes it.
        let r2 = pair_relation_space(&SplitBundle::line(1), &SplitBundle::line(1)).unwrap();
        assert_eq!(r2.dim(), 0);
    }

    #[test]
    fn mixed_split_bundle_dimensions() {
        // E = O(1) (+) O(0), F = O(1): h0(E) = 3, h0(F) = 2
        let e = SplitBundle { degrees: vec![1, 0] };
        let f = SplitBundle::line(1);
        let r2 = pair_relation_space(&e, &f).unwrap();
        // each component pair (O(1),O(1)) and (O(0),O(1)) contributes no
        // order-2 section (degrees too small), so R_2 = 0
        assert_eq!(r2.dim(), 0);
        assert_eq!(r2.diagnostics.rank, 6);
    }
}
