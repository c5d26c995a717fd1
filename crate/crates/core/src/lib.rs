//! Certification of generic identifiability for discrete parameters of
//! algebraic statistical models via algebraic (Jacobian) matroids.
//!
//! Two models are separated by a set of coordinates that is independent in
//! one model's matroid and dependent in the other's. Candidates are found by
//! random evaluation over a prime field and then verified either exactly
//! (fraction-free elimination over `Q[θ]`) or with a Schwartz–Zippel bound.
//!
//! The crate is organized as:
//! - [`poly`]: rationals, the prime field, sparse multivariate polynomials,
//!   scalar and symbolic rank.
//! - [`phylo`]: splits, trees, cycle networks and the Fourier-coordinate
//!   parameterizations of the CFN/JC/K2P/K3P models.
//! - [`matroid`]: independence oracles, model dimension, the two
//!   certification algorithms, exhaustive matroid comparison.
//! - [`case`]: textual case descriptors, per-case seeds and certification
//!   of one case.

pub mod case;
pub mod error;
pub mod matroid;
pub mod phylo;
pub mod poly;

pub use case::{CaseDescriptor, ModelSpec};
pub use error::{Error, Result};
pub use matroid::{
    Certificate, CertifyOptions, Direction, MatroidComparison, Outcome, SZConfig, Separation,
    SubsetSampling, TrialStats, Verification,
};
pub use phylo::{
    CycleNetwork, FourierCoordinate, GroupElement, ModelKind, Parameterization, Split, Tree,
};
pub use poly::{Fp, PolyMatrix, Polynomial, Rational};
