//! Exact implicitization of rational triangle-center loci over Q(delta).
//!
//! For a billiard with rational semi-axes, every orbit quantity lives in the
//! quadratic field Q(delta) with delta^2 = a^4 - a^2 b^2 + b^4. The chain in
//! [`chain`] eliminates the sidelengths and the two square-root variables by
//! resultants, producing a bivariate polynomial whose zero set contains the
//! locus; [`factor`] splits it and picks the factor the sampled locus
//! actually vanishes on.

pub mod chain;
pub mod factor;
pub mod poly;
pub mod resultant;
pub mod scalar;
pub mod vertex;

pub use chain::{eliminate_chain, ChainError, EliminationResult, RationalCenter};
pub use poly::{FieldPoly, Var};
pub use scalar::{FieldScalar, Rat};
