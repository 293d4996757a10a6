//! Backend-generic construction of relation spaces I_k(L) and R_2(E,F),
//! the Wahl map, and the Hodge-Gaussian map, written against an abstract
//! backend contract satisfied by both the exact projective-line backend and
//! the spectral torus backend.

pub mod backend;
pub mod multiset;
pub mod pairs;
pub mod relation;
pub mod rho;
pub mod scalar;
pub mod tensor;
pub mod wahl;

pub use backend::{BackendError, CupDecomposition, GaussImage, HodgeBackend, ImageDiagnostics, KernelDiagnostics};
pub use multiset::Multiset;
pub use pairs::{pair_relation_space, PairRelationSpace};
pub use relation::{relation_space, RelationSpace};
pub use rho::{gauss_rho, gauss_rho_derivative_form, symmetry_pair};
pub use scalar::CoreScalar;
pub use tensor::SymTensor;
pub use wahl::{wahl_mu2, WahlImage};
