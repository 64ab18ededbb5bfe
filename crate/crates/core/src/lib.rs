//! Exact de Rham cohomology of quotients `M/H` of manifolds by Lie group actions,
//! computed through finite models.
//!
//! - [`lie`]: the Chevalley–Eilenberg complex of `𝔤/𝔥` for an ideal `𝔥`,
//!   which computes the cohomology of `G/H` for a dense subgroup `H`.
//! - [`torus`]: the `H`-invariant basic complex of a linear foliation of
//!   `T^n`, reduced to finitely many Fourier modes with acyclicity
//!   certificates for every nonzero mode.
//! - [`witness`]: numerical certificates for the two examples where the
//!   comparison map fails to be a subduction.
//!
//! All linear algebra is exact over `ℚ` (see [`matrix`], [`scalar`]).

pub mod complex;
pub mod error;
pub mod exterior;
pub mod lie;
pub mod matrix;
pub mod scalar;
pub mod torus;
pub mod witness;

pub use complex::{BettiReport, Cochain, CochainComplex};
pub use error::{LieError, MatrixError, ScalarParseError, TorusError, WitnessError};
pub use exterior::MultiIndex;
pub use lie::{ce_complex, ideal_check, quotient, LieAlgebra, QuotientAlgebra, Subspace};
pub use matrix::ExactMatrix;
pub use scalar::{ExtScalar, Rational};
pub use torus::{cross_check_ce, torus_betti, TorusBettiReport, TorusSpec};
pub use witness::{WitnessReport, DegreeOneCertificate};
