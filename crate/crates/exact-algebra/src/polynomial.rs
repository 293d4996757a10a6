//! Dense univariate polynomials over the Gaussian rationals.
//!
//! Coefficients are stored lowest degree first; the invariant is that the
//! leading coefficient is nonzero (the zero polynomial is the empty vector).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<GaussianRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(GaussianRational::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::new(vec![c])
    }

    /// `c * z^n`
    pub fn monomial(c: GaussianRational, n: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![GaussianRational::zero(); n + 1];
        coeffs[n] = c;
        Self { coeffs }
    }

    /// The identity chart coordinate `z`.
    pub fn z() -> Self {
        Self::monomial(GaussianRational::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> GaussianRational {
        self.coeffs.get(n).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn leading(&self) -> Option<&GaussianRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, at: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * at) + c;
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, c)| &GaussianRational::from_int(n as i64) * c)
            .collect();
        Self::new(coeffs)
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Coefficients of `p(z + a)` (Taylor shift), used for local expansions.
    /// Repeated synthetic division by `(z - a)`: the k-th remainder is the
    /// k-th Taylor coefficient of `p` at `a`.
    pub fn taylor_shift(&self, a: &GaussianRational) -> Self {
        let n = self.coeffs.len();
        let mut shifted = vec![GaussianRational::zero(); n];
        let mut row = self.coeffs.clone();
        for k in 0..n {
            // remainder of division by (z - a) is row evaluated at a; quotient replaces row
            let mut quot = vec![GaussianRational::zero(); row.len().saturating_sub(1)];
            let mut carry = GaussianRational::zero();
            for idx in (0..row.len()).rev() {
                let cur = &row[idx] + &(&carry * a);
                if idx == 0 {
                    shifted[k] = cur.clone();
                } else {
                    quot[idx - 1] = cur.clone();
                }
                carry = cur;
            }
            row = quot;
            if row.is_empty() {
                break;
            }
        }
        Self::new(shifted)
    }

    /// Exact division with remainder over the field Q(i).
    pub fn divrem(&self, div: &Self) -> (Self, Self) {
        assert!(!div.is_zero(), "polynomial division by zero");
        let dd = div.degree().unwrap();
        let lead_inv = div.leading().unwrap().inv().expect("nonzero leading");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![
            GaussianRational::zero();
            self.coeffs.len().saturating_sub(dd).max(1)
        ];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let factor = rem.last().unwrap() * &lead_inv;
            if !factor.is_zero() {
                for (i, c) in div.coeffs.iter().enumerate() {
                    let sub = &factor * c;
                    rem[k + i] = &rem[k + i] - &sub;
                }
                quot[k] = factor;
            }
            let trailing = rem.pop();
            debug_assert!(trailing.is_some_and(|t| t.is_zero()));
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead_inv = a.leading().unwrap().inv().unwrap();
        a.scale(&lead_inv)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for idx in 0..n {
            coeffs.push(&self.coeff(idx) + &rhs.coeff(idx));
        }
        Polynomial::new(coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for idx in 0..n {
            coeffs.push(&self.coeff(idx) - &rhs.coeff(idx));
        }
        Polynomial::new(coeffs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs =
            vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let prod = a * b;
                coeffs[i + j] = &coeffs[i + j] + &prod;
            }
        }
        Polynomial::new(coeffs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let needs_parens = cs.contains('+') || (cs.contains('-') && !cs.starts_with('-'));
            let coeff = if needs_parens { format!("({cs})") } else { cs };
            let term = match n {
                0 => coeff,
                1 if coeff == "1" => "z".to_string(),
                1 => format!("{coeff}*z"),
                _ if coeff == "1" => format!("z^{n}"),
                _ => format!("{coeff}*z^{n}"),
            };
            terms.push(term);
        }
        write!(f, "{}", terms.join(" + "))
    }
}
