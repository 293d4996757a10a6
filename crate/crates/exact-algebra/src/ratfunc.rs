//! Rational functions over Q(i), stored in reduced form with monic
//! denominator, plus principal-part extraction at a point.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One as _, Zero as _};

use crate::polynomial::Polynomial;
use crate::rational::GaussianRational;
use crate::ExactError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

/// The Laurent data of a rational function at a point: `coeffs[j-1]` is the
/// coefficient of `(z - p)^{-j}`, and `regular_value` is the value of the
/// remaining regular part at `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrincipalPart {
    pub coeffs: Vec<GaussianRational>,
    pub regular_value: GaussianRational,
}

impl PrincipalPart {
    pub fn pole_order(&self) -> usize {
        self.coeffs.len()
    }

    /// Residue = coefficient of `(z - p)^{-1}`.
    pub fn residue(&self) -> GaussianRational {
        self.coeffs.first().cloned().unwrap_or_else(GaussianRational::zero)
    }
}

impl RationalFunction {
    /// Reduces to lowest terms and normalizes the denominator to be monic.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self { num, den: Polynomial::one() });
        }
        let g = num.gcd(&den);
        let (num, r1) = num.divrem(&g);
        debug_assert!(r1.is_zero());
        let (den, r2) = den.divrem(&g);
        debug_assert!(r2.is_zero());
        let lead_inv = den.leading().unwrap().inv()?;
        Ok(Self {
            num: num.scale(&lead_inv),
            den: den.scale(&lead_inv),
        })
    }

    pub fn from_poly(p: Polynomial) -> Self {
        Self { num: p, den: Polynomial::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// The polynomial content, if the reduced denominator is constant.
    pub fn as_polynomial(&self) -> Option<Polynomial> {
        if self.is_polynomial() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    /// Multiplicity of `p` as a root of the reduced denominator.
    pub fn pole_order_at(&self, p: &GaussianRational) -> usize {
        let mut den = self.den.clone();
        let lin = Polynomial::new(vec![-p, GaussianRational::one()]);
        let mut order = 0;
        loop {
            let (q, r) = den.divrem(&lin);
            if r.is_zero() {
                order += 1;
                den = q;
            } else {
                return order;
            }
        }
    }

    pub fn eval(&self, at: &GaussianRational) -> Result<GaussianRational, ExactError> {
        let dv = self.den.eval(at);
        if dv.is_zero() {
            return Err(ExactError::PoleInEvaluation(format!("{self}")));
        }
        Ok(&self.num.eval(at) / &dv)
    }

    pub fn derivative(&self) -> Self {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let den = &self.den * &self.den;
        Self::new(num, den).expect("denominator square is nonzero")
    }

    /// Laurent principal part at `p`, plus the regular part's value there.
    ///
    /// Writing `f = sum_{j=1..mu} c_j (z-p)^{-j} + g` with `g` regular at `p`,
    /// returns the `c_j` and `g(p)`. An empty coefficient list is the valid
    /// answer when `p` is not actually a pole.
    pub fn principal_part_at(&self, p: &GaussianRational) -> PrincipalPart {
        let mu = self.pole_order_at(p);
        // h := f * (z-p)^mu is regular at p; its Taylor coefficients t_0..t_mu
        // at p give c_j = t_{mu-j} and g(p) = t_mu.
        let lin = Polynomial::new(vec![-p, GaussianRational::one()]);
        let num = &self.num * &lin.pow(mu);
        // reduce exactly: den still vanishes at p to order 0 after cancellation
        let f = RationalFunction::new(num, self.den.clone()).expect("nonzero denominator");
        // Taylor expansion of f.num/f.den around p to order mu via shifted series division
        let ns = f.num.taylor_shift(p);
        let ds = f.den.taylor_shift(p);
        let d0 = ds.coeff(0);
        debug_assert!(!d0.is_zero(), "pole order miscount");
        let d0_inv = d0.inv().expect("nonzero constant term");
        let mut taylor = Vec::with_capacity(mu + 1);
        for k in 0..=mu {
            let mut acc = ns.coeff(k);
            for (j, t) in taylor.iter().enumerate().take(k) {
                let sub = &ds.coeff(k - j) * t;
                acc = &acc - &sub;
            }
            taylor.push(&acc * &d0_inv);
        }
        let mut coeffs = Vec::with_capacity(mu);
        for j in 1..=mu {
            coeffs.push(taylor[mu - j].clone());
        }
        while coeffs.last().is_some_and(GaussianRational::is_zero) {
            coeffs.pop();
        }
        PrincipalPart {
            coeffs,
            regular_value: taylor[mu].clone(),
        }
    }

    /// Residue at `p` (zero when `p` is not a simple-or-worse pole).
    pub fn residue_at(&self, p: &GaussianRational) -> GaussianRational {
        self.principal_part_at(p).residue()
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::new(num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        RationalFunction::new(num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("nonzero denominators")
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
            .expect("nonzero denominators")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn poly(cs: &[&str]) -> Polynomial {
        Polynomial::new(cs.iter().map(|s| g(s)).collect())
    }

    #[test]
    fn simple_pole_principal_part() {
        // 1/(z-2) at 2 -> [1]
        let f = RationalFunction::new(poly(&["1"]), poly(&["-2", "1"])).unwrap();
        let pp = f.principal_part_at(&g("2"));
        assert_eq!(pp.coeffs, vec![g("1")]);
        assert_eq!(pp.regular_value, g("0"));
    }

    #[test]
    fn removable_point_reports_regular_value() {
        // (z^2/2)/z^2 at 0 -> no principal part, regular value 1/2
        let f = RationalFunction::new(poly(&["0", "0", "1/2"]), poly(&["0", "0", "1"])).unwrap();
        let pp = f.principal_part_at(&g("0"));
        assert!(pp.coeffs.is_empty());
        assert_eq!(pp.regular_value, g("1/2"));
        // oracle: polynomial long division says the reduced form is the constant 1/2
        assert_eq!(f.as_polynomial().unwrap(), poly(&["1/2"]));
    }

    #[test]
    fn product_pole_residue() {
        // 1/(z(z-1)) at 0: principal coefficient -1 at order 1
        // oracle: evaluate z*f at 0, giving 1/(0-1) = -1
        let f = RationalFunction::new(poly(&["1"]), poly(&["0", "-1", "1"])).unwrap();
        let pp = f.principal_part_at(&g("0"));
        assert_eq!(pp.coeffs, vec![g("-1")]);
        let zf = &f * &RationalFunction::from_poly(poly(&["0", "1"]));
        assert_eq!(zf.eval(&g("0")).unwrap(), g("-1"));
    }

    #[test]
    fn double_pole() {
        // (z+1)/(z-1)^2 at 1: (z+1) = 2 + (z-1) so coeffs [1, 2], regular 0
        let f = RationalFunction::new(poly(&["1", "1"]), poly(&["1", "-2", "1"])).unwrap();
        let pp = f.principal_part_at(&g("1"));
        assert_eq!(pp.coeffs, vec![g("1"), g("2")]);
        assert_eq!(pp.regular_value, g("0"));
        assert_eq!(pp.residue(), g("1"));
    }

    #[test]
    fn arithmetic_reduces() {
        let a = RationalFunction::new(poly(&["1"]), poly(&["0", "1"])).unwrap(); // 1/z
        let b = RationalFunction::new(poly(&["-1"]), poly(&["0", "1"])).unwrap(); // -1/z
        assert!((&a + &b).is_zero());
        let c = &a * &RationalFunction::from_poly(poly(&["0", "1"])); // z * 1/z
        assert_eq!(c.as_polynomial().unwrap(), Polynomial::one());
    }
}
