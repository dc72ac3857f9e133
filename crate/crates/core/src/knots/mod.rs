//! Formal knot expressions: torus knots, cables, Whitehead doubles,
//! connected sums, mirrors and reverses.
//!
//! Textual grammar (whitespace is ignored):
//!
//! ```text
//! expr := term { "#" term }
//! term := int "*" atom | "-" atom | atom
//! atom := "U" | "T(" int "," int ")" | "Wh+(" expr ")" | "Wh-(" expr ")"
//!       | "cable(" int "," int ";" expr ")" | "rev(" atom ")" | "(" expr ")"
//! ```

mod link;
mod normalize;
mod parse;
mod render;

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use link::LinkExpr;
pub use normalize::normalize;
pub use parse::parse;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnotError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("bad parameters: {0}")]
    Parameter(String),
}

/// A knot in `S³` built from the operations the obstruction arguments use.
///
/// `Neg(J)` is `-J`, the mirror image with reversed orientation; `Rev(J)` is
/// `Jʳ`, orientation reversal only. `Cable { r, s, companion }` is the
/// `(r, s)` cable on the 0-framed boundary torus of the companion.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KnotExpr {
    Unknot,
    Torus {
        r: i64,
        s: i64,
    },
    Cable {
        r: i64,
        s: i64,
        companion: Box<KnotExpr>,
    },
    WhPlus(Box<KnotExpr>),
    WhMinus(Box<KnotExpr>),
    Sum(Vec<KnotExpr>),
    Neg(Box<KnotExpr>),
    Rev(Box<KnotExpr>),
}

impl KnotExpr {
    /// `T(r, s)` with `r, s ≥ 1` coprime.
    pub fn torus(r: i64, s: i64) -> Result<Self, KnotError> {
        if r < 1 || s < 1 {
            return Err(KnotError::Parameter(format!(
                "torus parameters must be positive, got ({r},{s}); write mirrors as -T(r,s)"
            )));
        }
        if r.gcd(&s) != 1 {
            return Err(KnotError::Parameter(format!(
                "T({r},{s}) is a {}-component link, not a knot",
                r.gcd(&s)
            )));
        }
        Ok(KnotExpr::Torus { r, s })
    }

    /// The `(r, s)` cable of `companion`, with `r ≥ 1` and `gcd(r, s) = 1`.
    pub fn cable(r: i64, s: i64, companion: KnotExpr) -> Result<Self, KnotError> {
        if r < 1 {
            return Err(KnotError::Parameter(format!(
                "cable winding r must be at least 1, got {r}"
            )));
        }
        if r.gcd(&s) != 1 {
            return Err(KnotError::Parameter(format!(
                "cable({r},{s}) has {} components, not a knot",
                r.gcd(&s)
            )));
        }
        Ok(KnotExpr::Cable {
            r,
            s,
            companion: Box::new(companion),
        })
    }

    pub fn wh_plus(e: KnotExpr) -> Self {
        KnotExpr::WhPlus(Box::new(e))
    }

    pub fn wh_minus(e: KnotExpr) -> Self {
        KnotExpr::WhMinus(Box::new(e))
    }

    pub fn neg(e: KnotExpr) -> Self {
        KnotExpr::Neg(Box::new(e))
    }

    pub fn rev(e: KnotExpr) -> Self {
        KnotExpr::Rev(Box::new(e))
    }

    /// Connected sum; not normalized.
    pub fn sum(items: Vec<KnotExpr>) -> Self {
        KnotExpr::Sum(items)
    }

    /// `n·e`, the `n`-fold connected sum, normalized.
    pub fn copies(n: usize, e: &KnotExpr) -> Self {
        normalize(&KnotExpr::Sum(vec![e.clone(); n]))
    }

    /// The positive Whitehead double of the right-handed trefoil.
    pub fn d() -> Self {
        KnotExpr::wh_plus(KnotExpr::Torus { r: 2, s: 3 })
    }

    pub fn render(&self) -> String {
        render::render(self)
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            KnotExpr::Unknot | KnotExpr::Torus { .. } => 1,
            KnotExpr::Cable { companion: e, .. }
            | KnotExpr::WhPlus(e)
            | KnotExpr::WhMinus(e)
            | KnotExpr::Neg(e)
            | KnotExpr::Rev(e) => 1 + e.size(),
            KnotExpr::Sum(items) => 1 + items.iter().map(KnotExpr::size).sum::<usize>(),
        }
    }

    /// Torus leaves `(r, s)` in left-to-right order.
    pub fn torus_leaves(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        self.collect_torus(&mut out);
        out
    }

    fn collect_torus(&self, out: &mut Vec<(i64, i64)>) {
        match self {
            KnotExpr::Unknot => {}
            KnotExpr::Torus { r, s } => out.push((*r, *s)),
            KnotExpr::Cable { companion: e, .. }
            | KnotExpr::WhPlus(e)
            | KnotExpr::WhMinus(e)
            | KnotExpr::Neg(e)
            | KnotExpr::Rev(e) => e.collect_torus(out),
            KnotExpr::Sum(items) => items.iter().for_each(|e| e.collect_torus(out)),
        }
    }
}

impl fmt::Display for KnotExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl FromStr for KnotExpr {
    type Err = KnotError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

impl Serialize for KnotExpr {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.render())
    }
}

impl<'de> Deserialize<'de> for KnotExpr {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
pub(crate) mod strategies {
    use super::KnotExpr;
    use proptest::prelude::*;

    fn coprime_pair() -> impl Strategy<Value = (i64, i64)> {
        (1i64..7, 1i64..12).prop_filter("coprime", |(r, s)| num_integer::Integer::gcd(r, s) == 1)
    }

    /// Arbitrary (not necessarily normalized) expressions of depth ≤ 6.
    pub fn arb_expr() -> impl Strategy<Value = KnotExpr> {
        let leaf = prop_oneof![
            Just(KnotExpr::Unknot),
            coprime_pair().prop_map(|(r, s)| KnotExpr::Torus { r, s }),
        ];
        leaf.prop_recursive(5, 24, 3, |inner| {
            prop_oneof![
                inner.clone().prop_map(KnotExpr::wh_plus),
                inner.clone().prop_map(KnotExpr::wh_minus),
                inner.clone().prop_map(KnotExpr::neg),
                inner.clone().prop_map(KnotExpr::rev),
                prop::collection::vec(inner.clone(), 2..4).prop_map(KnotExpr::Sum),
                (coprime_pair(), prop::bool::ANY, inner).prop_map(|((r, s), neg, e)| {
                    KnotExpr::Cable {
                        r,
                        s: if neg { -s } else { s },
                        companion: Box::new(e),
                    }
                }),
            ]
        })
    }
}
