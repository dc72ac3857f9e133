//! Levine–Tristram signatures of torus knots.
//!
//! [`torus_jumps`] computes the jump spectrum from the lattice-point count;
//! [`braid_seifert_matrix`] and [`sigma_oracle`] give an independent value
//! from a Seifert matrix of the positive braid closure, with every sign
//! certified by interval arithmetic.

mod interval;
mod jumps;
mod oracle;
mod seifert;

use thiserror::Error;

use crate::algebra::Rational;

pub use interval::Interval;
pub use jumps::{lattice_count, sigma_at, torus_jumps, Jump, JumpSpectrum};
pub use oracle::{sigma_oracle, sigma_oracle_with, OracleReport, DEFAULT_MAX_BITS, START_BITS};
pub use seifert::{braid_seifert_matrix, SeifertMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("torus parameters ({r},{s}) must satisfy r, s > 1 and gcd(r, s) = 1")]
    BadParameters { r: i64, s: i64 },
    #[error("t = {0} is a jump point; the signature is only defined on open arcs")]
    AtJumpPoint(Rational),
    #[error("t = {0} must lie strictly between 0 and 1")]
    OutOfRange(Rational),
    #[error("Seifert matrix self-check failed for T({r},{s}): {msg}")]
    SelfCheckFailed { r: i64, s: i64, msg: String },
    #[error("could not certify all pivot signs at t = {t} with {bits} bits")]
    PrecisionExhausted { t: Rational, bits: u32 },
}

pub(crate) fn check_torus(r: i64, s: i64) -> Result<(), SignatureError> {
    if r > 1 && s > 1 && num_integer::Integer::gcd(&r, &s) == 1 {
        Ok(())
    } else {
        Err(SignatureError::BadParameters { r, s })
    }
}

pub(crate) fn check_open_unit(t: &Rational) -> Result<(), SignatureError> {
    if t.is_positive() && *t < Rational::one() {
        Ok(())
    } else {
        Err(SignatureError::OutOfRange(t.clone()))
    }
}
