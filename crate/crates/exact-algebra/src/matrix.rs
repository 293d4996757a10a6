//! Dense exact matrices over Q(i) with fraction-free kernel and rank.
//!
//! The elimination runs over the Gaussian integers after clearing row
//! denominators (Bareiss single-step), which keeps intermediate entries from
//! blowing up the way naive fraction arithmetic does on relation matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::rational::GaussianRational;
use crate::ExactError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GaussianRational>,
}

/// Gaussian integer, the working ring of the fraction-free elimination.
#[derive(Debug, Clone, PartialEq, Eq)]
struct GaussInt {
    re: BigInt,
    im: BigInt,
}

impl GaussInt {
    fn zero() -> Self {
        Self { re: BigInt::zero(), im: BigInt::zero() }
    }

    fn one() -> Self {
        Self { re: BigInt::one(), im: BigInt::zero() }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, rhs: &Self) -> Self {
        Self {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        Self { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }

    fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact division; panics if `rhs` does not divide `self`, which cannot
    /// happen inside a correct Bareiss sweep.
    fn exact_div(&self, rhs: &Self) -> Self {
        let n = rhs.norm();
        assert!(!n.is_zero(), "Bareiss division by zero pivot");
        let conj = Self { re: rhs.re.clone(), im: -rhs.im.clone() };
        let prod = self.mul(&conj);
        let (qr, rr) = num_integer::div_rem_big(&prod.re, &n);
        let (qi, ri) = num_integer::div_rem_big(&prod.im, &n);
        assert!(rr.is_zero() && ri.is_zero(), "non-exact Bareiss division");
        Self { re: qr, im: qi }
    }

    fn to_rational(&self) -> GaussianRational {
        GaussianRational::new(
            BigRational::from_integer(self.re.clone()),
            BigRational::from_integer(self.im.clone()),
        )
    }
}

// tiny shim so the exact_div above reads clearly
mod num_integer {
    use num_bigint::BigInt;
    pub fn div_rem_big(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        (a / b, a % b)
    }
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<GaussianRational>) -> Result<Self, ExactError> {
        if entries.len() != rows * cols {
            return Err(ExactError::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = GaussianRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self, ExactError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(ExactError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &GaussianRational {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut GaussianRational {
        &mut self.entries[r * self.cols + c]
    }

    pub fn mul_vec(&self, v: &[GaussianRational]) -> Vec<GaussianRational> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = GaussianRational::zero();
                for c in 0..self.cols {
                    let t = self.at(r, c) * &v[c];
                    acc = &acc + &t;
                }
                acc
            })
            .collect()
    }

    /// Row echelon data over the Gaussian integers: (echelon rows, pivot columns).
    fn bareiss_echelon(&self) -> (Vec<Vec<GaussInt>>, Vec<usize>) {
        // clear denominators row by row (row scaling preserves row space and kernel)
        let mut m: Vec<Vec<GaussInt>> = (0..self.rows)
            .map(|r| {
                let mut lcm = BigInt::one();
                for c in 0..self.cols {
                    let e = self.at(r, c);
                    lcm = lcm_big(&lcm, e.re.denom());
                    lcm = lcm_big(&lcm, e.im.denom());
                }
                (0..self.cols)
                    .map(|c| {
                        let e = self.at(r, c);
                        GaussInt {
                            re: e.re.numer() * (&lcm / e.re.denom()),
                            im: e.im.numer() * (&lcm / e.im.denom()),
                        }
                    })
                    .collect()
            })
            .collect();

        let mut pivot_cols = Vec::new();
        let mut prev_pivot = GaussInt::one();
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            // smallest-norm nonzero pivot keeps the integers modest
            let pick = (row..self.rows)
                .filter(|&r| !m[r][col].is_zero())
                .min_by_key(|&r| m[r][col].norm());
            let Some(piv_row) = pick else { continue };
            m.swap(row, piv_row);
            for r in row + 1..self.rows {
                for c in col + 1..self.cols {
                    let t1 = m[row][col].mul(&m[r][c]);
                    let t2 = m[r][col].mul(&m[row][c]);
                    m[r][c] = t1.sub(&t2).exact_div(&prev_pivot);
                }
                m[r][col] = GaussInt::zero();
            }
            prev_pivot = m[row][col].clone();
            pivot_cols.push(col);
            row += 1;
        }
        (m, pivot_cols)
    }

    pub fn rank(&self) -> usize {
        self.bareiss_echelon().1.len()
    }

    /// Exact inverse of a square matrix by augmented elimination over Q(i);
    /// `None` when singular.
    pub fn inverse(&self) -> Option<ExactMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a: Vec<Vec<GaussianRational>> = (0..n)
            .map(|r| (0..n).map(|c| self.at(r, c).clone()).collect())
            .collect();
        let mut inv: Vec<Vec<GaussianRational>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        if r == c {
                            GaussianRational::one()
                        } else {
                            GaussianRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, piv);
            inv.swap(col, piv);
            let scale = a[col][col].inv().ok()?;
            for c in 0..n {
                a[col][c] = &a[col][c] * &scale;
                inv[col][c] = &inv[col][c] * &scale;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for c in 0..n {
                    let t = &factor * &a[col][c];
                    a[r][c] = &a[r][c] - &t;
                    let t2 = &factor * &inv[col][c];
                    inv[r][c] = &inv[r][c] - &t2;
                }
            }
        }
        ExactMatrix::from_rows(inv).ok()
    }

    /// Exact basis of `ker(M)` acting on column vectors. Each basis vector is
    /// normalized so its first nonzero entry is 1, making bases comparable
    /// across runs.
    pub fn kernel(&self) -> Vec<Vec<GaussianRational>> {
        let (ech, pivot_cols) = self.bareiss_echelon();
        let rank = pivot_cols.len();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &c in &pivot_cols {
                v[c] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![GaussianRational::zero(); self.cols];
            v[free] = GaussianRational::one();
            // back-substitute through the echelon rows (pivot r sits on pivot_cols[r])
            for r in (0..rank).rev() {
                let pc = pivot_cols[r];
                let mut acc = GaussianRational::zero();
                for c in pc + 1..self.cols {
                    if ech[r][c].is_zero() {
                        continue;
                    }
                    let t = &ech[r][c].to_rational() * &v[c];
                    acc = &acc + &t;
                }
                if !acc.is_zero() {
                    let piv = ech[r][pc].to_rational();
                    v[pc] = -&(&acc / &piv);
                }
            }
            // normalize: first nonzero entry = 1
            if let Some(first) = v.iter().find(|e| !e.is_zero()).cloned() {
                let inv = first.inv().unwrap();
                for e in v.iter_mut() {
                    *e = &*e * &inv;
                }
            }
            basis.push(v);
        }
        basis
    }
}

fn lcm_big(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    let g = gcd_big(a, b);
    (a / &g * b).abs()
}

fn gcd_big(a: &BigInt, b: &BigInt) -> BigInt {
    let mut a = a.abs();
    let mut b = b.abs();
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}
