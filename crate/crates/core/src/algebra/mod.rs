//! Exact rationals, integer Laurent polynomials and piecewise-linear
//! functions on `[0, 2]`.

mod laurent;
mod plf;
mod rational;

pub use laurent::{LaurentPoly, PolyError, SymmetricPoly};
pub use plf::{PLFunction, PlfError, Slope};
pub use rational::{Rational, RationalParseError};
