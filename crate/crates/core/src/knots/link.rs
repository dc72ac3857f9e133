use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{normalize, KnotExpr};

/// A link in `S³`, described by how it decomposes into knots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LinkExpr {
    /// The `(l, m)` torus link.
    TorusLink {
        l: i64,
        m: i64,
    },
    /// `count` parallel, unlinked copies of one knot.
    DisjointCopies {
        count: usize,
        knot: KnotExpr,
    },
    ComponentList {
        components: Vec<KnotExpr>,
    },
}

impl LinkExpr {
    pub fn component_count(&self) -> usize {
        match self {
            LinkExpr::TorusLink { l, m } => l.gcd(m) as usize,
            LinkExpr::DisjointCopies { count, .. } => *count,
            LinkExpr::ComponentList { components } => components.len(),
        }
    }

    /// Each component as a knot. A torus link `T(l, m)` with `d = gcd(l, m)`
    /// has `d` components, each a copy of `T(l/d, m/d)`.
    pub fn components(&self) -> Vec<KnotExpr> {
        match self {
            LinkExpr::TorusLink { l, m } => {
                let d = l.gcd(m);
                let (r, s) = (l / d, m / d);
                let knot = if s < 0 {
                    KnotExpr::neg(KnotExpr::Torus { r, s: -s })
                } else if s == 0 {
                    KnotExpr::Unknot
                } else {
                    KnotExpr::Torus { r, s }
                };
                vec![normalize(&knot); d as usize]
            }
            LinkExpr::DisjointCopies { count, knot } => vec![knot.clone(); *count],
            LinkExpr::ComponentList { components } => components.clone(),
        }
    }
}
