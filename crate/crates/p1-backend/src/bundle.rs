//! The line bundles O(d) and their section spaces in the affine chart.

use exact_algebra::{GaussianRational, Polynomial};
use num_traits::One;

/// O(d) on the projective line. Sections in the affine chart are polynomials
/// of degree <= d; regularity at infinity in the O(d) trivialization is
/// exactly that degree bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct P1Bundle {
    pub degree: usize,
}

impl P1Bundle {
    pub fn new(degree: usize) -> Self {
        Self { degree }
    }

    /// h^0(O(d)) = d + 1.
    pub fn h0(&self) -> usize {
        self.degree + 1
    }

    /// h^1(O(-e)) = e - 1 for e >= 2, else 0.
    pub fn h1_of_negative(e: usize) -> usize {
        e.saturating_sub(1)
    }

    /// The monomial basis 1, z, ..., z^d.
    pub fn monomial_basis(&self) -> Vec<Polynomial> {
        (0..=self.degree)
            .map(|i| Polynomial::monomial(GaussianRational::one(), i))
            .collect()
    }
}
