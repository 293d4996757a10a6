//! Gaussian rationals: numbers of the form `re + im*i` with rational parts.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ExactError;

/// An element of Q(i), kept in lowest terms componentwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    /// `num/den`, exact. Panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    /// `a/b + (c/d) i`, exact. Panics if `b == 0` or `d == 0`.
    pub fn from_parts(a: i64, b: i64, c: i64, d: i64) -> Self {
        assert!(b != 0 && d != 0, "zero denominator");
        Self::new(
            BigRational::new(BigInt::from(a), BigInt::from(b)),
            BigRational::new(BigInt::from(c), BigInt::from(d)),
        )
    }

    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// re^2 + im^2, the norm form of Q(i)/Q.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let n = self.norm();
        Ok(Self::new(&self.re / &n, -&self.im / &n))
    }

    /// Crude magnitude proxy used only for pivot selection and display ordering.
    pub fn size_proxy(&self) -> BigRational {
        self.re.abs() + self.im.abs()
    }

    /// Best-effort conversion to f64 pairs (used only when handing fixtures to
    /// the numerical backend; never feeds back into exact computations).
    pub fn to_f64_pair(&self) -> (f64, f64) {
        fn r2f(r: &BigRational) -> f64 {
            let n = r.numer();
            let d = r.denom();
            // good enough for the value ranges fixtures use
            let nf: f64 = n.to_string().parse().unwrap_or(f64::NAN);
            let df: f64 = d.to_string().parse().unwrap_or(f64::NAN);
            nf / df
        }
        (r2f(&self.re), r2f(&self.im))
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::new(BigRational::one(), BigRational::zero())
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl<'a> Add<&'a GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &'a GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &'a GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        (&self).mul(&rhs)
    }
}

impl<'a> Mul<&'a GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &'a GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for GaussianRational {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let inv = rhs.inv().expect("division by zero Gaussian rational");
        (&self).mul(&inv)
    }
}

impl<'a> Div<&'a GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &'a GaussianRational) -> GaussianRational {
        let inv = rhs.inv().expect("division by zero Gaussian rational");
        self.mul(&inv)
    }
}

impl AddAssign for GaussianRational {
    fn add_assign(&mut self, rhs: Self) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl SubAssign for GaussianRational {
    fn sub_assign(&mut self, rhs: Self) {
        self.re -= rhs.re;
        self.im -= rhs.im;
    }
}

impl MulAssign for GaussianRational {
    fn mul_assign(&mut self, rhs: Self) {
        *self = (&*self).mul(&rhs);
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical form: `0`, `-3/2`, `i`, `-i`, `2i`, `1/2+i`, `1-2/3i`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        if !self.re.is_zero() {
            out.push_str(&fmt_rational(&self.re));
        }
        if !self.im.is_zero() {
            let im = &self.im;
            if !self.re.is_zero() && im.is_positive() {
                out.push('+');
            }
            if im.is_one() {
                out.push('i');
            } else if (-im).is_one() {
                out.push_str("-i");
            } else {
                out.push_str(&fmt_rational(im));
                out.push('i');
            }
        }
        write!(f, "{out}")
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(BigRational::from_integer(n))
    }
}

/// Parses the `Display` grammar plus obvious variants (`3`, `-1/2`, `i`,
/// `2-i`, `1/2+3/4i`). Decimal literals are rejected: exactness is the point.
impl FromStr for GaussianRational {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let orig = s;
        let err = |reason: &str| ExactError::Parse {
            input: orig.to_string(),
            reason: reason.to_string(),
        };
        let s = s.trim().replace(' ', "");
        if s.is_empty() {
            return Err(err("empty string"));
        }
        if s.contains('.') {
            return Err(err("decimal literals are not exact; use p/q form"));
        }
        // split into at most two signed terms
        let bytes = s.as_bytes();
        let mut split_at = None;
        for (idx, &b) in bytes.iter().enumerate().skip(1) {
            if (b == b'+' || b == b'-') && bytes[idx - 1] != b'/' && bytes[idx - 1] != b'+' && bytes[idx - 1] != b'-'
            {
                split_at = Some(idx);
            }
        }
        let (first, second) = match split_at {
            Some(idx) => (&s[..idx], Some(&s[idx..])),
            None => (&s[..], None),
        };

        let mut re = BigRational::zero();
        let mut im = BigRational::zero();
        let mut take = |term: &str| -> Result<(), ExactError> {
            let term = term.trim();
            if term.is_empty() {
                return Err(err("empty term"));
            }
            if let Some(body) = term.strip_suffix('i') {
                let val = match body {
                    "" | "+" => BigRational::one(),
                    "-" => -BigRational::one(),
                    _ => parse_rational(body).ok_or_else(|| err("bad imaginary part"))?,
                };
                if !im.is_zero() {
                    return Err(err("two imaginary terms"));
                }
                im = val;
            } else {
                let val = parse_rational(term).ok_or_else(|| err("bad real part"))?;
                if !re.is_zero() && !val.is_zero() {
                    return Err(err("two real terms"));
                }
                re = val;
            }
            Ok(())
        };
        take(first)?;
        if let Some(sec) = second {
            take(sec)?;
        }
        Ok(Self::new(re, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = g("1/3+1/7i");
        let b = g("2/3-1/7i");
        assert_eq!(&a + &b, GaussianRational::one());
        let third = GaussianRational::from_ratio(1, 3);
        let x = &(&third + &third) + &third;
        assert_eq!(x, GaussianRational::one());
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, -GaussianRational::one());
    }

    #[test]
    fn inverse_round_trips() {
        let a = g("3/5-2i");
        let inv = a.inv().unwrap();
        assert_eq!(&a * &inv, GaussianRational::one());
        assert_eq!(GaussianRational::zero().inv(), Err(ExactError::DivisionByZero));
    }

    #[test]
    fn display_parse_round_trip() {
        for s in ["0", "1", "-1", "i", "-i", "1/2", "-3/2+i", "1-2/3i", "5/7i", "2+2i"] {
            let v = g(s);
            assert_eq!(v, g(&v.to_string()), "round-trip of {s}");
        }
    }

    #[test]
    fn rejects_decimals() {
        assert!(matches!("0.5".parse::<GaussianRational>(), Err(ExactError::Parse { .. })));
    }
}
