//! Covering links in lens spaces.
//!
//! A knot in `L(p,q)` that crosses the surgery region in `ℓ` parallel
//! strands, permuted by an `ℓ`-cycle, lifts under the universal cover
//! `S³ → L(p,q)` to a link whose components are the cycles of the `p`-th
//! power of that permutation. The per-family lift descriptions are fixed
//! symbolic results; the permutation calculus validates their component
//! counts.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::knots::{normalize, KnotExpr, LinkExpr};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("L({p},{q}) needs p > 1, 1 ≤ q < p and gcd(p, q) = 1")]
    BadLensSpace { p: i64, q: i64 },
    #[error("family constraint violated: {0}")]
    FamilyConstraintViolated(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LensSpace {
    pub p: i64,
    pub q: i64,
}

impl LensSpace {
    pub fn new(p: i64, q: i64) -> Result<Self, CoverError> {
        if p > 1 && 1 <= q && q < p && p.gcd(&q) == 1 {
            Ok(LensSpace { p, q })
        } else {
            Err(CoverError::BadLensSpace { p, q })
        }
    }

    pub fn rp3() -> Self {
        LensSpace { p: 2, q: 1 }
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({},{})", self.p, self.q)
    }
}

/// The knot families whose lifts are known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// `K_{n,ℓ}`: `ℓ` strands through the twist region, `n` full turns.
    Torus { l: i64, n: i64 },
    /// `K(J, a)`: `a` strands with `J` tied into one of them.
    Generic { a: i64 },
    /// The order-2 class in `L(2n, q)`, with Whitehead-double clasps.
    Order2,
    /// The null-homotopic family in `ℝP³` built from Bing doubles.
    Rp3Null,
    /// The order-2 family in `ℝP³` whose lift is a `(3,11)` cable.
    Rp3Order2,
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::Torus { .. } => "torus",
            Family::Generic { .. } => "generic",
            Family::Order2 => "order2",
            Family::Rp3Null => "rp3-null",
            Family::Rp3Order2 => "rp3-order2",
        }
    }
}

/// A knot in a lens space presented by a strand count, the permutation of
/// the strands and a companion knot tied into the pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternKnot {
    pub space: LensSpace,
    pub strands: i64,
    /// Image of each strand, as a permutation of `0..strands`.
    pub permutation: Vec<usize>,
    pub companion: KnotExpr,
    pub family: Family,
}

impl PatternKnot {
    pub fn new(space: LensSpace, family: Family, companion: KnotExpr) -> Result<Self, CoverError> {
        let violated = |msg: String| Err(CoverError::FamilyConstraintViolated(msg));
        let p = space.p;
        let strands = match family {
            Family::Torus { l, n } => {
                if !(0 < l && l < p) {
                    return violated(format!("torus family needs 0 < ℓ < p, got ℓ = {l}"));
                }
                if n < 1 || l.gcd(&n) != 1 {
                    return violated(format!(
                        "torus family needs n ≥ 1 and gcd(ℓ, n) = 1, got ℓ = {l}, n = {n}"
                    ));
                }
                l
            }
            Family::Generic { a } => {
                if !(0 < a && a < p) {
                    return violated(format!("generic family needs 0 < a < p, got a = {a}"));
                }
                a
            }
            Family::Order2 => {
                if p % 2 != 0 || p < 4 {
                    return violated(format!(
                        "order-2 family lives in L(2n, q) with n > 1, got {space}"
                    ));
                }
                p / 2
            }
            Family::Rp3Null | Family::Rp3Order2 if space != LensSpace::rp3() => {
                return violated(format!(
                    "{} family lives in L(2,1), got {space}",
                    family.tag()
                ));
            }
            Family::Rp3Null => 2,
            Family::Rp3Order2 => 3,
        };
        if matches!(family, Family::Torus { .. }) && companion != KnotExpr::Unknot {
            return violated(
                "the torus family has no companion; use lift_of_sum for local knots".into(),
            );
        }
        let permutation = (0..strands as usize)
            .map(|i| (i + 1) % strands as usize)
            .collect();
        Ok(PatternKnot {
            space,
            strands,
            permutation,
            companion: normalize(&companion),
            family,
        })
    }
}

/// The covering link of a pattern knot.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftDescription {
    pub component_count: usize,
    /// Covering degree `d(K̃)` of each component onto the knot downstairs.
    pub degree: i64,
    pub components: Vec<KnotExpr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub link: Option<LinkExpr>,
    pub notes: Vec<String>,
}

/// `gcd(ℓ, p)`, the number of components of the lift of an `ℓ`-strand knot.
pub fn lift_component_count(l: i64, p: i64) -> i64 {
    l.gcd(&p)
}

/// Number of cycles of `σ^k` for a permutation `σ` of `0..σ.len()`.
pub fn cycles_of_power(sigma: &[usize], k: i64) -> usize {
    let n = sigma.len();
    let mut seen = vec![false; n];
    let mut cycles = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            for _ in 0..k {
                x = sigma[x];
            }
        }
    }
    cycles
}

/// Constructive component count: cycles of the `p`-th power of the
/// standard `ℓ`-cycle.
pub fn permutation_component_count(l: i64, p: i64) -> usize {
    let sigma: Vec<usize> = (0..l as usize).map(|i| (i + 1) % l as usize).collect();
    cycles_of_power(&sigma, p)
}

fn torus_or_mirror(r: i64, s: i64) -> KnotExpr {
    if s < 0 {
        normalize(&KnotExpr::neg(KnotExpr::Torus { r, s: -s }))
    } else {
        normalize(&KnotExpr::Torus { r, s })
    }
}

/// The covering link of `k`, per family.
pub fn lift(k: &PatternKnot) -> Result<LiftDescription, CoverError> {
    let LensSpace { p, q } = k.space;
    let count = cycles_of_power(&k.permutation, p);
    let d = lift_component_count(k.strands, p);
    if count as i64 != d {
        return Err(CoverError::FamilyConstraintViolated(format!(
            "permutation power has {count} cycles, gcd gives {d}"
        )));
    }
    let degree = p / d;
    let mut notes = vec![format!(
        "{} strands in {}: gcd({}, {p}) = {d} components, each of degree {degree}",
        k.strands, k.space, k.strands
    )];
    let (components, link) = match k.family {
        Family::Torus { l, n } => {
            let m = p * n + l * q;
            notes.push(format!(
                "covering link is the torus link T({l}, pn + ℓq) = T({l}, {m}); the twist region adds ℓq to the pn full turns"
            ));
            let link = LinkExpr::TorusLink { l, m };
            debug_assert_eq!(link.component_count() as i64, d);
            (vec![torus_or_mirror(l / d, m / d); d as usize], Some(link))
        }
        Family::Generic { a } => {
            let companion = KnotExpr::copies(p as usize, &k.companion);
            let (r, s) = (a / d, (p + a * q) / d);
            let c = if companion == KnotExpr::Unknot {
                torus_or_mirror(r, s)
            } else {
                normalize(&KnotExpr::Cable {
                    r,
                    s,
                    companion: Box::new(companion),
                })
            };
            notes.push(format!("each component is the ({r},{s}) cable of {p}·J"));
            (vec![c; d as usize], None)
        }
        Family::Order2 => {
            notes.push(format!(
                "each component meets every clasp region in 0 or 2 points, so is T(1, {}) = U",
                2 + q
            ));
            (vec![KnotExpr::Unknot; d as usize], None)
        }
        Family::Rp3Null => {
            let j = &k.companion;
            let c = normalize(&KnotExpr::Sum(vec![
                j.clone(),
                j.clone(),
                KnotExpr::rev(j.clone()),
                KnotExpr::rev(j.clone()),
            ]));
            notes.push("components after the branched double cover over the other Bing component: 2J # 2Jʳ".into());
            (vec![c; d as usize], None)
        }
        Family::Rp3Order2 => {
            let j = &k.companion;
            let c = normalize(&KnotExpr::Cable {
                r: 3,
                s: 11,
                companion: Box::new(KnotExpr::Sum(vec![j.clone(), j.clone()])),
            });
            notes.push("the lift is the (3,11) cable of J # J".into());
            (vec![c], None)
        }
    };
    Ok(LiftDescription {
        component_count: components.len(),
        degree,
        components,
        link,
        notes,
    })
}

/// Lift of `K # j` for a local knot `j`: each component `K̃` becomes
/// `K̃ # d(K̃)·j`.
pub fn lift_of_sum(desc: &LiftDescription, j: &KnotExpr) -> LiftDescription {
    let j = normalize(j);
    if j == KnotExpr::Unknot {
        return desc.clone();
    }
    let extra = KnotExpr::copies(desc.degree as usize, &j);
    let components: Vec<KnotExpr> = desc
        .components
        .iter()
        .map(|c| normalize(&KnotExpr::Sum(vec![c.clone(), extra.clone()])))
        .collect();
    let mut notes = desc.notes.clone();
    notes.push(format!(
        "local knot {j} contributes {}·({j}) to each component",
        desc.degree
    ));
    LiftDescription {
        component_count: components.len(),
        degree: desc.degree,
        link: Some(LinkExpr::ComponentList {
            components: components.clone(),
        }),
        components,
        notes,
    }
}
