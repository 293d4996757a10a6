//! Exact realization of the Hodge backend contract for L = O(d) on the
//! projective line.
//!
//! No bump function is ever evaluated: outside the support of db every object
//! in sight is rational, so harmonic decompositions, the Hodge-Gaussian map
//! and all pairings reduce to residue and partial-fraction algebra, carried
//! out exactly over Q(i). The 2*pi*i of the integration pairing is kept as a
//! symbolic unit throughout.

pub mod backend;
pub mod bundle;
pub mod eta;
pub mod forms;
pub mod pairs_rho;
pub mod rho;

pub use backend::P1Backend;
pub use bundle::P1Bundle;
pub use eta::{eta_p1, EtaDifferential};
pub use forms::{harmonic_decompose_p1, BumpTerm, HarmonicDecompositionP1, P1Class01};
pub use pairs_rho::rho_pair;
pub use rho::{pair_schiffer, rho_schiffer_exact};
