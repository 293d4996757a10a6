//! Numerical-spectral Hodge backend on the elliptic curve C/(Z + tau Z) with
//! the flat metric.
//!
//! Degree-d bundles get theta-function section bases; scalar (0,1)-forms are
//! decomposed by fast-Fourier dbar-Poisson solves in lattice coordinates;
//! holomorphic classes are extracted by L2 projection on grid quadrature.
//! Only scalar (or flat-character-twisted) forms ever enter the Fourier
//! solver: bundle-valued objects appear solely as section samples multiplying
//! scalar solves.

pub mod backend;
pub mod bump;
pub mod fft;
pub mod geometry;
pub mod grid;
pub mod project;
pub mod solve;
pub mod theta;
pub mod weierstrass;

pub use backend::{TorusBackend, TorusSigma, TorusXi};
pub use geometry::{FlatCharacter, TorusGeometry};
pub use grid::GridForm;
pub use theta::ThetaBasis;
pub use weierstrass::WeierstrassData;
