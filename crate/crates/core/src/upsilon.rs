//! Υ of L-space knots through the staircase of the Alexander polynomial,
//! extended to sums and mirrors, together with the L-space certification
//! rules and the single ν⁺-equivalence `D # D ~ T(2,5)` with its cabling
//! closure.

use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{LaurentPoly, PLFunction, Rational, SymmetricPoly};
use crate::classical::{Eval, Evaluator, Genus, Rule, Step};
use crate::knots::{normalize, KnotExpr};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UpsilonError {
    #[error("not of staircase form: {0}")]
    NotStaircaseForm(String),
    #[error("internal consistency check failed for {expr}: {msg}")]
    InternalConsistency { expr: String, msg: String },
}

/// Exponents `α₀ > α₁ > … > α_n` of a symmetrized L-space-knot Alexander
/// polynomial `Σ (-1)^k t^{α_k}` and the gradings `m_k` of the staircase
/// generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Staircase {
    pub alphas: Vec<i64>,
    pub ms: Vec<i64>,
}

impl Staircase {
    /// Builds the gradings from the exponents: `m₀ = 0`,
    /// `m_{2i+1} = m_{2i} - 1`, `m_{2i+2} = m_{2i+1} + 1 + 2(α_{2i+1} - α_{2i})`.
    pub fn from_alphas(alphas: Vec<i64>) -> Self {
        let mut ms = Vec::with_capacity(alphas.len());
        for k in 0..alphas.len() {
            let m = match k {
                0 => 0,
                k if k % 2 == 1 => ms[k - 1] - 1,
                k => ms[k - 1] + 1 + 2 * (alphas[k - 1] - alphas[k - 2]),
            };
            ms.push(m);
        }
        Staircase { alphas, ms }
    }

    /// `max_i (m_{2i} - t·α_{2i})` on `[0, 2]`.
    pub fn upsilon(&self) -> PLFunction {
        // lines (intercept, slope) by strictly increasing slope
        let lines: Vec<(i64, i64)> = self
            .alphas
            .iter()
            .zip(&self.ms)
            .step_by(2)
            .map(|(a, m)| (*m, -a))
            .collect();
        // exact fractions (num, den > 0), compared by cross-multiplication
        let less = |a: (i64, i64), b: (i64, i64)| {
            (a.0 as i128) * (b.1 as i128) < (b.0 as i128) * (a.1 as i128)
        };
        let point = |(m, s): (i64, i64), t: (i64, i64)| {
            let x = Rational::new(t.0, t.1);
            let v = Rational::from_int(m) + Rational::from_int(s) * &x;
            (x, v)
        };
        // the envelope starts with the best line at t = 0, the steepest on ties
        let mut cur = (0..lines.len())
            .max_by_key(|&i| lines[i])
            .expect("a staircase has at least one generator");
        let mut t = (0i64, 1i64);
        let mut points = vec![point(lines[cur], t)];
        let two = (2i64, 1i64);
        loop {
            // earliest takeover by a steeper line; the steepest wins ties
            let (m0, s0) = lines[cur];
            let mut next: Option<(usize, (i64, i64))> = None;
            for (j, &(m1, s1)) in lines.iter().enumerate().skip(cur + 1) {
                let x = (m0 - m1, s1 - s0);
                if less(x, t) {
                    continue;
                }
                if next.is_none_or(|(_, best)| !less(best, x)) {
                    next = Some((j, x));
                }
            }
            match next {
                Some((j, x)) if less(x, two) => {
                    if less(t, x) {
                        points.push(point(lines[cur], x));
                    }
                    cur = j;
                    t = x;
                }
                _ => break,
            }
        }
        points.push(point(lines[cur], two));
        PLFunction::from_breakpoints(points).expect("envelope abscissae increase")
    }

    /// `τ = α₀` for L-space knots.
    pub fn top(&self) -> i64 {
        self.alphas[0]
    }
}

/// Reads the staircase off a symmetrized Alexander polynomial, which must
/// have coefficients alternating `+1, -1, …, +1`.
pub fn staircase_from_alexander(p: &SymmetricPoly) -> Result<Staircase, UpsilonError> {
    let poly = p.as_poly();
    if poly.is_zero() {
        return Err(UpsilonError::NotStaircaseForm("zero polynomial".into()));
    }
    let mut alphas = Vec::with_capacity(poly.num_terms());
    for (k, (e, c)) in poly.terms().rev().enumerate() {
        let want: i64 = if k % 2 == 0 { 1 } else { -1 };
        if c.to_i64() != Some(want) {
            return Err(UpsilonError::NotStaircaseForm(format!(
                "coefficient of t^{e} in {poly} is {c}, expected {want}"
            )));
        }
        alphas.push(e);
    }
    if alphas.len() % 2 == 0 {
        return Err(UpsilonError::NotStaircaseForm(format!(
            "{poly} has an even number of terms"
        )));
    }
    Ok(Staircase::from_alphas(alphas))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum LSpaceStatus {
    Proven { rule: Rule },
    NotProven { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LSpaceCert {
    pub expression: KnotExpr,
    pub status: LSpaceStatus,
}

impl LSpaceCert {
    pub fn is_proven(&self) -> bool {
        matches!(self.status, LSpaceStatus::Proven { .. })
    }
}

/// Certifies that `e` is an L-space knot: positive torus knots, and cables
/// `J_{r,s}` of certified L-space knots with `s ≥ r(2g₃(J) - 1)`.
pub fn lspace_certify(e: &KnotExpr) -> LSpaceCert {
    lspace_certify_with(&Evaluator::default(), &normalize(e))
}

fn lspace_certify_with(ev: &Evaluator, e: &KnotExpr) -> LSpaceCert {
    let status = match e {
        KnotExpr::Torus { r, s } if *r > 1 && *s > 1 => LSpaceStatus::Proven {
            rule: Rule::LspaceTorus,
        },
        KnotExpr::Cable { r, s, companion } if **companion == KnotExpr::Unknot => {
            if *r > 1 && *s > 1 {
                LSpaceStatus::Proven {
                    rule: Rule::LspaceTorus,
                }
            } else {
                LSpaceStatus::NotProven {
                    reason: format!("{e} is not a positive torus knot"),
                }
            }
        }
        KnotExpr::Cable { r, s, companion } => match lspace_certify_with(ev, companion).status {
            LSpaceStatus::NotProven { reason } => LSpaceStatus::NotProven {
                reason: format!("companion is not certified: {reason}"),
            },
            LSpaceStatus::Proven { .. } => match ev.genus(companion) {
                Eval::Value {
                    value: Genus::Exact(g),
                    ..
                } => {
                    if *s >= r * (2 * g - 1) {
                        LSpaceStatus::Proven {
                            rule: Rule::LspaceCable,
                        }
                    } else {
                        LSpaceStatus::NotProven {
                            reason: format!("cable slope {s} < {r}(2·{g} - 1)"),
                        }
                    }
                }
                _ => LSpaceStatus::NotProven {
                    reason: format!("Seifert genus of {companion} is not known exactly"),
                },
            },
        },
        _ => LSpaceStatus::NotProven {
            reason: format!("no L-space rule applies to {e}"),
        },
    };
    LSpaceCert {
        expression: e.clone(),
        status,
    }
}

/// Replaces each pair `D # D`, `D = Wh+(T(2,3))`, by `T(2,5)` inside sums at
/// top level and, recursively, in cable companions. Mirrored pairs are
/// replaced by the mirror. Whitehead doubles are left untouched.
pub fn nu_plus_rewrite(e: &KnotExpr) -> KnotExpr {
    normalize(&rewrite(&normalize(e)))
}

fn rewrite(e: &KnotExpr) -> KnotExpr {
    match e {
        KnotExpr::Sum(items) => {
            let items: Vec<KnotExpr> = items.iter().map(rewrite).collect();
            let d = KnotExpr::d();
            let md = KnotExpr::neg(KnotExpr::d());
            let t25 = KnotExpr::Torus { r: 2, s: 5 };
            let mut out = Vec::with_capacity(items.len());
            let mut pending: [Option<usize>; 2] = [None, None];
            for item in items {
                let slot = if item == d {
                    0
                } else if item == md {
                    1
                } else {
                    out.push(item);
                    continue;
                };
                match pending[slot].take() {
                    Some(pos) => {
                        out[pos] = if slot == 0 {
                            t25.clone()
                        } else {
                            KnotExpr::neg(t25.clone())
                        };
                    }
                    None => {
                        pending[slot] = Some(out.len());
                        out.push(item);
                    }
                }
            }
            KnotExpr::Sum(out)
        }
        KnotExpr::Cable { r, s, companion } => KnotExpr::Cable {
            r: *r,
            s: *s,
            companion: Box::new(rewrite(companion)),
        },
        KnotExpr::Neg(x) => KnotExpr::neg(rewrite(x)),
        KnotExpr::Rev(x) => KnotExpr::rev(rewrite(x)),
        other => other.clone(),
    }
}

/// Υ of `e`, after the ν⁺ rewrite.
///
/// Every returned function has been checked for `Υ(0) = Υ(2) = 0`, symmetry
/// about `t = 1` and integer slopes; a failure of any of these is an
/// [`UpsilonError::InternalConsistency`], never a value.
pub fn upsilon(e: &KnotExpr) -> Result<Eval<PLFunction>, UpsilonError> {
    let ev = Evaluator::default();
    let e = normalize(e);
    let rewritten = nu_plus_rewrite(&e);
    let out = upsilon_normal(&ev, &rewritten)?;
    if rewritten != e {
        let note = format!("rewritten to {rewritten}");
        return Ok(prepend(out, Step::with_note(Rule::NuPlusRewrite, &e, note)));
    }
    Ok(out)
}

fn prepend<T>(out: Eval<T>, step: Step) -> Eval<T> {
    match out {
        Eval::Value { value, derivation } => {
            let mut d = vec![step];
            d.extend(derivation);
            Eval::Value {
                value,
                derivation: d,
            }
        }
        unknown => unknown,
    }
}

fn upsilon_normal(ev: &Evaluator, e: &KnotExpr) -> Result<Eval<PLFunction>, UpsilonError> {
    let out = match e {
        KnotExpr::Unknot => Eval::Value {
            value: PLFunction::zero(),
            derivation: vec![Step::new(Rule::Unknot, e)],
        },
        KnotExpr::Cable { r, s, companion } if **companion == KnotExpr::Unknot && *s < 0 => {
            let inner = KnotExpr::Torus { r: *r, s: -s };
            let mut out = upsilon_normal(ev, &inner)?.map(|f| f.negate());
            if let Eval::Value { derivation, .. } = &mut out {
                derivation.push(Step::new(Rule::CableOfUnknot, e));
            }
            out
        }
        KnotExpr::Sum(items) => {
            let mut acc = PLFunction::zero();
            let mut deriv = Vec::new();
            for x in items {
                match upsilon_normal(ev, x)? {
                    Eval::Value { value, derivation } => {
                        acc = acc.add(&value);
                        deriv.extend(derivation);
                    }
                    Eval::Unknown { reason } => {
                        return Ok(Eval::unknown(format!("Υ of summand {x}: {reason}")))
                    }
                }
            }
            deriv.push(Step::new(Rule::UpsilonAdditive, e));
            Eval::Value {
                value: acc,
                derivation: deriv,
            }
        }
        KnotExpr::Neg(x) => match upsilon_normal(ev, x)? {
            Eval::Value {
                value,
                mut derivation,
            } => {
                derivation.push(Step::new(Rule::UpsilonMirror, e));
                Eval::Value {
                    value: value.negate(),
                    derivation,
                }
            }
            unknown => unknown,
        },
        _ => {
            let cert = lspace_certify_with(ev, e);
            let rule = match cert.status {
                LSpaceStatus::Proven { rule } => rule,
                LSpaceStatus::NotProven { reason } => {
                    return Ok(Eval::unknown(format!("Υ needs an L-space knot: {reason}")))
                }
            };
            let delta = ev
                .alexander(e)
                .value()
                .cloned()
                .expect("Alexander evaluation is total");
            let sym = delta
                .symmetrize()
                .map_err(|err| UpsilonError::InternalConsistency {
                    expr: e.to_string(),
                    msg: err.to_string(),
                })?;
            let stairs = staircase_from_alexander(&sym).map_err(|err| {
                UpsilonError::InternalConsistency {
                    expr: e.to_string(),
                    msg: format!("certified L-space knot fails staircase form: {err}"),
                }
            })?;
            Eval::Value {
                value: stairs.upsilon(),
                derivation: vec![
                    Step::new(rule, e),
                    Step::with_note(Rule::Staircase, e, format!("alphas {:?}", stairs.alphas)),
                ],
            }
        }
    };
    if let Eval::Value { value, .. } = &out {
        check_consistency(e, value)?;
    }
    Ok(out)
}

fn check_consistency(e: &KnotExpr, f: &PLFunction) -> Result<(), UpsilonError> {
    let fail = |msg: String| UpsilonError::InternalConsistency {
        expr: e.to_string(),
        msg,
    };
    let pts = f.breakpoints();
    let ends = [&pts[0].1, &pts[pts.len() - 1].1];
    if ends.iter().any(|v| !v.is_zero()) {
        return Err(fail(format!("Υ(0), Υ(2) = {}, {}", ends[0], ends[1])));
    }
    if !f.is_symmetric_about_one() {
        return Err(fail(format!("Υ is not symmetric about t = 1: {f}")));
    }
    for w in pts.windows(2) {
        let slope = (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0);
        if !slope.denom().is_one() {
            return Err(fail(format!(
                "non-integer slope {slope} on [{}, {}]",
                w[0].0, w[1].0
            )));
        }
    }
    Ok(())
}

/// Υ of a knot whose Alexander polynomial is `p`, assuming it is an L-space
/// knot.
pub fn upsilon_of_alexander(p: &LaurentPoly) -> Result<PLFunction, UpsilonError> {
    let sym = p
        .symmetrize()
        .map_err(|err| UpsilonError::NotStaircaseForm(err.to_string()))?;
    Ok(staircase_from_alexander(&sym)?.upsilon())
}
