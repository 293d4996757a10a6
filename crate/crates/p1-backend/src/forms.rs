//! Symbolic (0,1)-forms on the line and their harmonic decompositions.
//!
//! A scalar (0,1)-form is stored as a finite sum of terms f(z) db_c, where
//! b_c is a bump centered at the rational point c (identically 1 near c,
//! identically 0 far away) and f is rational, regular on the annulus where
//! db_c lives. Since H^{0,1} of the line vanishes, the harmonic part is
//! always zero and the potential h can be written down in closed form:
//! h = sum b_c f - s, with s the sum of the principal parts of f inside the
//! bump. Only s survives into any cohomological output; the bump-supported
//! pieces cancel identically and the cancellation is asserted, not assumed.

use exact_algebra::{GaussianRational, Polynomial, RationalFunction};
use gauss_core::BackendError;
use num_traits::One;

/// One summand f(z) db_c of a scalar or L^{-m}-valued (0,1)-form.
#[derive(Debug, Clone, PartialEq)]
pub struct BumpTerm {
    /// bump center; also the only point where f may have poles
    pub center: GaussianRational,
    pub f: RationalFunction,
}

/// A Dolbeault representative of a class in H^{0,1}(O(-m d)), as a sum of
/// bump terms in the chart trivialization of L^m.
#[derive(Debug, Clone, PartialEq)]
pub struct P1Class01 {
    pub twist_m: usize,
    pub terms: Vec<BumpTerm>,
}

impl P1Class01 {
    pub fn zero(twist_m: usize) -> Self {
        Self { twist_m, terms: Vec::new() }
    }

    /// The Schiffer representative at P: -(1/(z-P)) db (x) dual generator.
    /// The sign normalization makes the integration pairing against
    /// Psi(z) dz (x) generator come out to exactly +2*pi*i Psi(P).
    pub fn schiffer(point: GaussianRational, twist_m: usize) -> Self {
        let minus_one = Polynomial::constant(-GaussianRational::one());
        let den = Polynomial::new(vec![-&point, GaussianRational::one()]);
        Self {
            twist_m,
            terms: vec![BumpTerm {
                center: point,
                f: RationalFunction::new(minus_one, den).expect("nonzero denominator"),
            }],
        }
    }

    /// c1 * xi1 + c2 * xi2 (same twist).
    pub fn linear_combination(
        pieces: &[(GaussianRational, &P1Class01)],
    ) -> Result<Self, BackendError> {
        let twist = pieces
            .first()
            .map(|(_, x)| x.twist_m)
            .ok_or_else(|| BackendError::InvalidInput("empty combination".into()))?;
        let mut terms = Vec::new();
        for (c, xi) in pieces {
            if xi.twist_m != twist {
                return Err(BackendError::InvalidInput(
                    "mixed twists in a class combination".into(),
                ));
            }
            for t in &xi.terms {
                terms.push(BumpTerm {
                    center: t.center.clone(),
                    f: &t.f * &RationalFunction::constant(c.clone()),
                });
            }
        }
        Ok(Self { twist_m: twist, terms })
    }
}

/// h_T for one decomposition, kept symbolically: h = sum_c b_c * bump_factor_c
/// minus the subtracted meromorphic tail `s` (the principal parts, which is
/// what global smoothness on the line forces).
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicDecompositionP1 {
    /// (center, f) pairs: the b_c * f summands of h
    pub bump_parts: Vec<(GaussianRational, RationalFunction)>,
    /// the subtracted global meromorphic function s
    pub subtracted: RationalFunction,
}

impl HarmonicDecompositionP1 {
    /// The coefficient of dz in del h away from every bump support, where
    /// h = -s; this is the only piece visible to residues and classes.
    pub fn del_tail(&self) -> RationalFunction {
        -&self.subtracted.derivative()
    }
}

/// Harmonic decomposition of psi = sum f_i db_{c_i}: gamma = 0 (the line has
/// no harmonic (0,1)-forms) and h as above. Precondition: each f_i is regular
/// on its bump annulus, with poles at most at the center.
pub fn harmonic_decompose_p1(terms: &[BumpTerm]) -> Result<HarmonicDecompositionP1, BackendError> {
    let mut bump_parts = Vec::with_capacity(terms.len());
    let mut subtracted = RationalFunction::zero();
    for t in terms {
        let pp = t.f.principal_part_at(&t.center);
        // s_t = sum_j c_j (z - center)^{-j}
        let lin = Polynomial::new(vec![-&t.center, GaussianRational::one()]);
        let mut s_t = RationalFunction::zero();
        for (idx, c) in pp.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let piece = RationalFunction::new(Polynomial::constant(c.clone()), lin.pow(idx + 1))?;
            s_t = &s_t + &piece;
        }
        subtracted = &subtracted + &s_t;
        bump_parts.push((t.center.clone(), t.f.clone()));
    }
    Ok(HarmonicDecompositionP1 { bump_parts, subtracted })
}
