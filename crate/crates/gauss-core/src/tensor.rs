//! Fully symmetric coefficient tensors for relation spaces.
//!
//! Convention (the one place it is documented): a degree-k tensor is stored as
//! monomial coefficients `c_M` over sorted multisets `M`, meaning the
//! polynomial P(x) = sum_M c_M x^M. The tuple-indexed coefficients of the
//! symmetric embedding into the k-fold tensor power are
//! `a_J = c_{multiset(J)} / orderings(multiset(J))`, so for k = 2 the
//! off-diagonal entries carry weight 1/2 (x_0 x_2 has a_02 = a_20 = 1/2).

use crate::multiset::{multisets, Multiset};
use crate::scalar::CoreScalar;

#[derive(Debug, Clone, PartialEq)]
pub struct SymTensor<S: CoreScalar> {
    degree: usize,
    rank: usize,
    /// parallel to `multisets(rank, degree)`, lexicographic order
    coeffs: Vec<S>,
}

impl<S: CoreScalar> SymTensor<S> {
    pub fn new(degree: usize, rank: usize, coeffs: Vec<S>) -> Self {
        assert_eq!(coeffs.len(), multisets(rank, degree).len(), "coefficient count");
        Self { degree, rank, coeffs }
    }

    pub fn zero(degree: usize, rank: usize) -> Self {
        let n = multisets(rank, degree).len();
        Self { degree, rank, coeffs: vec![S::zero(); n] }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn support(&self) -> Vec<(Multiset, S)> {
        multisets(self.rank, self.degree)
            .into_iter()
            .zip(self.coeffs.iter().cloned())
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(S::is_zero)
    }

    /// Monomial coefficient `c_M`.
    pub fn coeff(&self, m: &Multiset) -> S {
        debug_assert_eq!(m.len(), self.degree);
        let sets = multisets(self.rank, self.degree);
        match sets.binary_search(m) {
            Ok(idx) => self.coeffs[idx].clone(),
            Err(_) => S::zero(),
        }
    }

    /// Tuple coefficient `a_J` of the symmetric tensor-power embedding.
    pub fn tuple_coeff(&self, tuple: &[usize]) -> S {
        let m = Multiset::new(tuple.to_vec());
        let ord = S::from_ratio(m.orderings() as i64, 1);
        self.coeff(&m) / ord
    }

    pub fn set_coeff(&mut self, m: &Multiset, value: S) {
        let sets = multisets(self.rank, self.degree);
        let idx = sets.binary_search(m).expect("multiset in range");
        self.coeffs[idx] = value;
    }

    pub fn scale(&self, s: &S) -> Self {
        Self {
            degree: self.degree,
            rank: self.rank,
            coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        assert_eq!(self.rank, other.rank);
        Self {
            degree: self.degree,
            rank: self.rank,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_algebra::GaussianRational;

    #[test]
    fn tuple_weights_match_convention() {
        // Q = x0 x2 - x1^2 over r = 3
        let mut q = SymTensor::<GaussianRational>::zero(2, 3);
        q.set_coeff(&Multiset::new(vec![0, 2]), GaussianRational::from_int(1));
        q.set_coeff(&Multiset::new(vec![1, 1]), GaussianRational::from_int(-1));
        assert_eq!(q.tuple_coeff(&[0, 2]), GaussianRational::from_ratio(1, 2));
        assert_eq!(q.tuple_coeff(&[2, 0]), GaussianRational::from_ratio(1, 2));
        assert_eq!(q.tuple_coeff(&[1, 1]), GaussianRational::from_int(-1));
        assert_eq!(q.tuple_coeff(&[0, 1]), GaussianRational::from_int(0));
    }
}
