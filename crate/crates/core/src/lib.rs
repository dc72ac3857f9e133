//! Exact arithmetic for the knot invariants used in almost-concordance
//! arguments in lens spaces: Alexander polynomials, τ, Υ of L-space knots,
//! Levine-Tristram signature jumps of torus knots, covering-link lifts, and
//! engines that turn each obstruction argument into a replayable certificate.
//!
//! Everything in the core is exact. The only place that touches the reals is
//! the signature oracle, which uses outward-rounded interval arithmetic and
//! refuses to answer rather than guess a sign.

pub mod algebra;
pub mod classical;
pub mod cover;
pub mod exec;
pub mod knots;
pub mod obstruct;
pub mod signature;
pub mod upsilon;

pub use algebra::{LaurentPoly, PLFunction, Rational, SymmetricPoly};
pub use knots::{KnotExpr, LinkExpr};
