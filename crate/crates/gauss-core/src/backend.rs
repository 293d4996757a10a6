//! The abstract backend contract: everything the Hodge-Gaussian construction
//! needs from a geometry (section bases, cup products, harmonic decomposition
//! of scalar (0,1)-forms, the del switch, class extraction and the pairing),
//! plus the shared output types.

use std::fmt;

use crate::multiset::Multiset;
use crate::scalar::CoreScalar;
use crate::tensor::SymTensor;

/// Errors a backend can raise while servicing the contract.
#[derive(Debug, Clone, thiserror::Error)]
pub enum BackendError {
    #[error("numerical rank ambiguous: singular-value gap {gap:.3e} across the threshold (need >= {need:.0e})")]
    RankAmbiguous { gap: f64, need: f64 },
    #[error("{what} residual {value:.3e} exceeds tolerance {tol:.0e}")]
    ResidualTooLarge { what: String, value: f64, tol: f64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("relation check failed: {0}")]
    NotARelation(String),
    #[error("exact arithmetic error: {0}")]
    Exact(#[from] exact_algebra::ExactError),
    #[error("{0}")]
    Numeric(String),
}

/// Residual diagnostics carried by every extracted class. Exact backends
/// report zeros.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ImageDiagnostics {
    /// max over T of the harmonic-decomposition residual |dbar h + gamma - psi|
    pub decomposition_residual: f64,
    /// |dbar sigma| / |sigma| before projection
    pub closedness_residual: f64,
    /// |sigma - proj sigma| / |sigma|
    pub projection_residual: f64,
}

impl ImageDiagnostics {
    pub fn max(&self) -> f64 {
        self.decomposition_residual
            .max(self.closedness_residual)
            .max(self.projection_residual)
    }
}

/// A class in H^{1,0}(L^j) (equivalently H^0(L^j (x) K)), stored as
/// coordinates in the backend's holomorphic basis plus residual diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussImage<S: CoreScalar> {
    /// power j of L the class is valued in (the K factor is implicit)
    pub target_power: usize,
    pub coords: Vec<S>,
    pub diagnostics: ImageDiagnostics,
}

impl<S: CoreScalar> GaussImage<S> {
    pub fn zero(target_power: usize, dim: usize) -> Self {
        Self {
            target_power,
            coords: vec![S::zero(); dim],
            diagnostics: ImageDiagnostics::default(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(S::is_zero)
    }
}

impl<S: CoreScalar> fmt::Display for GaussImage<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}]",
            self.coords
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        )
    }
}

/// Rank decision data from the kernel engine.
#[derive(Debug, Clone, Default)]
pub struct KernelDiagnostics {
    pub rank: usize,
    /// singular values (numerical backends) in decreasing order; empty when exact
    pub singular_values: Vec<f64>,
    /// ratio of smallest kept to largest dropped singular value; infinite when clean
    pub gap: f64,
}

/// One harmonic decomposition theta*lambda_T = gamma_T + dbar h_T, reduced to
/// what the assembly needs: the backend-opaque del-potential and residuals.
pub struct CupDecomposition<B: HodgeBackend + ?Sized> {
    pub del_h: B::DelPotential,
    /// residual of the decomposition itself (0 for exact backends)
    pub residual: f64,
    /// magnitude of the harmonic part gamma_T (diagnostic only)
    pub gamma_magnitude: f64,
}

/// The capability set both geometric realizations provide.
///
/// Harmonic decomposition is exposed only for the scalar (0,1)-forms the
/// construction actually produces (products theta * lambda_T), which keeps
/// both backends small.
pub trait HodgeBackend {
    type Scalar: CoreScalar;
    /// representative of a class in H^{0,1}(L^{-m})
    type Xi: Clone;
    /// backend representation of del h_T
    type DelPotential;
    /// accumulated (1,0)-form valued in a bundle power
    type Sigma;
    /// point of the underlying curve usable as a Schiffer center
    type Point: Clone + fmt::Debug;

    fn name(&self) -> &'static str;

    /// h^0(L^j) for j >= 1.
    fn h0(&self, power: usize) -> usize;

    /// Coordinates of the product of basis sections over `m` (a section of
    /// L^{|m|}) in the backend's basis of H^0(L^{|m|}).
    fn product_coordinates(&self, m: &Multiset) -> Result<Vec<Self::Scalar>, BackendError>;

    /// Kernel of the `rows x cols` matrix given row-major; exact on the
    /// projective line, SVD-thresholded on the torus.
    fn kernel(
        &self,
        rows: usize,
        cols: usize,
        entries: &[Self::Scalar],
    ) -> Result<(Vec<Vec<Self::Scalar>>, KernelDiagnostics), BackendError>;

    /// Schiffer representative of a class in H^{0,1}(L^{-m}) at `point`.
    fn schiffer_class(&self, point: &Self::Point, m: usize) -> Result<Self::Xi, BackendError>;

    /// Harmonic decomposition of the scalar (0,1)-form theta * lambda_T and
    /// the del switch, fused: returns del h_T.
    fn decompose_cup(&self, xi: &Self::Xi, t: &Multiset) -> Result<CupDecomposition<Self>, BackendError>;

    /// sigma = sum of weight * lambda_S * del_h over the listed terms, valued
    /// in L^{target_power}.
    fn assemble_sigma(
        &self,
        terms: &[(Self::Scalar, Multiset, usize)],
        dels: &[Self::DelPotential],
        target_power: usize,
    ) -> Result<Self::Sigma, BackendError>;

    /// Holomorphic class extraction: coordinates of sigma in the basis of
    /// H^0(L^{target_power} (x) K), with closedness/projection residuals.
    fn extract_class(
        &self,
        sigma: &Self::Sigma,
        target_power: usize,
    ) -> Result<GaussImage<Self::Scalar>, BackendError>;

    /// Expansion of the Wahl image sum a_ij phidotdot_i phi_j in the basis of
    /// H^0(L^2 (x) K^2).
    fn wahl_expand(&self, tensor: &SymTensor<Self::Scalar>) -> Result<Vec<Self::Scalar>, BackendError>;

    /// Evaluation v_P(mu_2(Q)) in the chart trivialization at `point`.
    fn wahl_eval(&self, tensor: &SymTensor<Self::Scalar>, point: &Self::Point)
        -> Result<Self::Scalar, BackendError>;

    /// The integration pairing of xi against an extracted class, in units of
    /// 2*pi*i (for a Schiffer xi at P this is the chart value of the class at P).
    fn pair_xi_class(
        &self,
        xi: &Self::Xi,
        class: &GaussImage<Self::Scalar>,
    ) -> Result<Self::Scalar, BackendError>;
}
