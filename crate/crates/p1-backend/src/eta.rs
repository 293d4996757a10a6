//! Differentials of the second kind with a single double pole.

use exact_algebra::{GaussianRational, Polynomial, RationalFunction};
use num_traits::One;

/// The unique (up to scale) differential of the second kind on the line with
/// a single double pole at `pole`, normalized so the coefficient of
/// (z - pole)^{-2} is -1. On the line the regular part vanishes identically.
#[derive(Debug, Clone, PartialEq)]
pub struct EtaDifferential {
    pub pole: GaussianRational,
    pub principal_coeff: GaussianRational,
    pub regular: RationalFunction,
}

/// eta at P: -dz/(z-P)^2.
pub fn eta_p1(pole: &GaussianRational) -> EtaDifferential {
    EtaDifferential {
        pole: pole.clone(),
        principal_coeff: -GaussianRational::one(),
        regular: RationalFunction::zero(),
    }
}

impl EtaDifferential {
    /// The coefficient of dz in the affine chart.
    pub fn chart_coefficient(&self) -> RationalFunction {
        let lin = Polynomial::new(vec![-&self.pole, GaussianRational::one()]);
        let principal =
            RationalFunction::new(Polynomial::constant(self.principal_coeff.clone()), lin.pow(2))
                .expect("nonzero denominator");
        &principal + &self.regular
    }

    pub fn residue(&self) -> GaussianRational {
        self.chart_coefficient().residue_at(&self.pole)
    }

    /// The coefficient of dw in the chart w = 1/z at infinity:
    /// g(z) dz = -g(1/w)/w^2 dw.
    pub fn infinity_chart_coefficient(&self) -> RationalFunction {
        substitute_reciprocal_form(&self.chart_coefficient())
    }
}

/// For a one-form g(z) dz, returns the w-chart coefficient -g(1/w)/w^2.
pub fn substitute_reciprocal_form(g: &RationalFunction) -> RationalFunction {
    let num = g.numerator();
    let den = g.denominator();
    let dn = num.degree().map_or(0, |d| d);
    let dd = den.degree().map_or(0, |d| d);
    // g(1/w) = w^{dd-dn} * rev(num)(w) / rev(den)(w)
    let rev = |p: &Polynomial| Polynomial::new(p.coeffs().iter().rev().cloned().collect());
    let mut rnum = rev(num);
    let mut rden = rev(den);
    if dd >= dn {
        rnum = &rnum * &Polynomial::monomial(GaussianRational::one(), dd - dn);
    } else {
        rden = &rden * &Polynomial::monomial(GaussianRational::one(), dn - dd);
    }
    // multiply by -1/w^2
    let rden = &rden * &Polynomial::monomial(GaussianRational::one(), 2);
    let minus_rnum = -&rnum;
    RationalFunction::new(minus_rnum, rden).expect("nonzero denominator")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn eta_at_origin() {
        // eta(0) = -dz/z^2; in the w-chart it is dw/(1 - 0 w)^2 = dw, regular at w = 0
        let eta = eta_p1(&g("0"));
        let chart = eta.chart_coefficient();
        assert_eq!(chart.denominator().degree(), Some(2));
        assert_eq!(chart.eval(&g("1")).unwrap(), g("-1"));
        assert!(eta.residue().is_zero());
        let inf = eta.infinity_chart_coefficient();
        assert_eq!(inf.eval(&g("0")).unwrap(), g("1"));
    }

    #[test]
    fn eta_translated() {
        // eta(1) = -dz/(z-1)^2; w-chart: dw/(1-w)^2, regular at w = 0
        let eta = eta_p1(&g("1"));
        assert!(eta.residue().is_zero());
        let inf = eta.infinity_chart_coefficient();
        assert_eq!(inf.eval(&g("0")).unwrap(), g("1"));
        // and it really has no pole at w = 0: denominator does not vanish there
        assert!(!inf.denominator().eval(&g("0")).is_zero());
    }

    #[test]
    fn residue_free_for_gaussian_pole() {
        let eta = eta_p1(&g("1/2+i"));
        assert!(eta.residue().is_zero());
    }
}
