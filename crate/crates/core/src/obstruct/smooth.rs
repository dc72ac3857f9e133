//! Engines whose contradiction comes from τ or Υ.

use num_integer::Integer;

use super::{
    distinguished, is_odd, Certificate, Conclusion, CongruencePair, Job, ObstructError, TauEntry,
    TraceEntry, Witness,
};
use crate::algebra::Rational;
use crate::classical::{self, Eval, Step};
use crate::cover::{lift, Family, LensSpace, PatternKnot};
use crate::knots::{normalize, KnotExpr};
use crate::upsilon;

const BING: &str = "bing-double-tau";
const RP3_NULL: &str = "rp3-null-homotopic-lift-tau";
const LENS_GENERIC: &str = "lens-generic-van-cott-congruence";
const LENS_ORDER2: &str = "lens-order2-genus-one-bound";
const RP3_ORDER2: &str = "rp3-order2-upsilon-slope-parity";

fn known<T>(e: &KnotExpr, out: Eval<T>) -> Result<(T, Vec<Step>), ObstructError> {
    match out {
        Eval::Value { value, derivation } => Ok((value, derivation)),
        Eval::Unknown { reason } => Err(ObstructError::EvaluatorUnknown {
            subject: e.to_string(),
            reason,
        }),
    }
}

fn tau_of(e: &KnotExpr) -> Result<(i64, Vec<Step>), ObstructError> {
    known(e, classical::tau(e))
}

fn tau_entry(input: &KnotExpr, lift: KnotExpr) -> Result<TauEntry, ObstructError> {
    let input = normalize(input);
    let (tau, _) = tau_of(&input)?;
    let (lift_tau, derivation) = tau_of(&lift)?;
    Ok(TauEntry {
        input,
        lift,
        tau,
        lift_tau,
        derivation,
    })
}

fn tau_certificate(
    job: Job,
    proposition: &str,
    entries: Vec<TauEntry>,
    mut trace: Vec<TraceEntry>,
) -> Certificate {
    for e in &entries {
        trace.push(TraceEntry::with_steps(
            format!("τ({}) = {}", e.lift, e.lift_tau),
            &e.derivation,
        ));
    }
    let conclusion = if entries[0].lift_tau != entries[1].lift_tau {
        distinguished(proposition, true)
    } else {
        Conclusion::Inconclusive {
            reason: format!("both lift components have τ = {}", entries[0].lift_tau),
        }
    };
    Certificate {
        job,
        proposition: proposition.into(),
        conclusion,
        witness: Witness::Tau { entries },
        trace,
    }
}

/// Bing-double pair: a concordance forces `τ(J) = τ(J')` through the
/// branched-cover component `J # Jʳ`.
pub fn bing_tau(j1: &KnotExpr, j2: &KnotExpr) -> Result<Certificate, ObstructError> {
    let entries = [j1, j2]
        .into_iter()
        .map(|j| {
            tau_entry(
                j,
                normalize(&KnotExpr::sum(vec![j.clone(), KnotExpr::rev(j.clone())])),
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    let trace = vec![TraceEntry::note(
        "branched double cover of the Bing-double pattern has component J # Jʳ",
    )];
    let job = Job::Bing {
        j1: j1.clone(),
        j2: j2.clone(),
    };
    Ok(tau_certificate(job, BING, entries, trace))
}

/// Null-homotopic pair in `ℝP³`: lift components `2J # 2Jʳ`.
pub fn rp3_null(j1: &KnotExpr, j2: &KnotExpr) -> Result<Certificate, ObstructError> {
    let mut trace = Vec::new();
    let mut entries = Vec::new();
    for j in [j1, j2] {
        let desc = lift(&PatternKnot::new(
            LensSpace::rp3(),
            Family::Rp3Null,
            j.clone(),
        )?)?;
        trace.extend(desc.notes.iter().map(TraceEntry::note));
        entries.push(tau_entry(j, desc.components[0].clone())?);
    }
    let job = Job::Rp3Null {
        j1: j1.clone(),
        j2: j2.clone(),
    };
    Ok(tau_certificate(job, RP3_NULL, entries, trace))
}

/// Van Cott congruence for the classes of order other than 2 in `L(p,q)`.
///
/// For each of `K+` (`a = ℓ`) and `K-` (`a = p - ℓ`) the lift of the
/// `-D` pattern is a cable of `p·(-D)` and the lift of the unknot pattern a
/// torus knot; an almost concordance needs `(p/d)·τ(Ĵ)` to equal the
/// difference of their τ values.
pub fn lens_generic(p: i64, q: i64, l: i64) -> Result<Certificate, ObstructError> {
    let space = LensSpace::new(p, q)?;
    if !(0 < l && l < p) {
        return Err(ObstructError::FamilyConstraintViolated(format!(
            "need 0 < ℓ < p, got ℓ = {l}"
        )));
    }
    if 2 * l == p {
        return Err(ObstructError::OrderViolation { p, l, order: 2 });
    }
    let minus_d = normalize(&KnotExpr::neg(KnotExpr::d()));
    let mut pairs = Vec::new();
    let mut trace = Vec::new();
    for (label, a) in [("K+", l), ("K-", p - l)] {
        let family = Family::Generic { a };
        let with_d = lift(&PatternKnot::new(space, family, minus_d.clone())?)?;
        let plain = lift(&PatternKnot::new(space, family, KnotExpr::Unknot)?)?;
        let d = a.gcd(&p);
        let cable = with_d.components[0].clone();
        let torus = plain.components[0].clone();
        let (cable_tau, derivation) = tau_of(&cable)?;
        let (torus_tau, _) = tau_of(&torus)?;
        let difference = torus_tau - cable_tau;
        let modulus = p / d;
        let pair_distinguished = difference % modulus != 0;
        trace.extend(
            with_d
                .notes
                .iter()
                .map(|n| TraceEntry::note(format!("{label}: {n}"))),
        );
        trace.push(TraceEntry::with_steps(
            format!("{label}: τ({cable}) = {cable_tau}"),
            &derivation,
        ));
        trace.push(TraceEntry::note(format!(
            "{label}: {modulus}·τ(Ĵ) = {torus_tau} - ({cable_tau}) = {difference}, {}",
            if pair_distinguished {
                "not divisible"
            } else {
                "divisible"
            }
        )));
        pairs.push(CongruencePair {
            label: label.into(),
            a,
            d,
            cable,
            torus,
            cable_tau,
            torus_tau,
            difference,
            modulus,
            distinguished: pair_distinguished,
            derivation,
        });
    }
    let conclusion = if pairs.iter().any(|p| p.distinguished) {
        let which: Vec<&str> = pairs
            .iter()
            .filter(|p| p.distinguished)
            .map(|p| p.label.as_str())
            .collect();
        match distinguished(LENS_GENERIC, true) {
            Conclusion::Distinguished { statement } => Conclusion::Distinguished {
                statement: format!("{}: {statement}", which.join(" and ")),
            },
            c => c,
        }
    } else {
        Conclusion::Inconclusive {
            reason: "both ℓ and p - ℓ divide p".into(),
        }
    };
    Ok(Certificate {
        job: Job::LensGeneric { p, q, l },
        proposition: LENS_GENERIC.into(),
        conclusion,
        witness: Witness::Congruence { p, q, l, pairs },
        trace,
    })
}

/// Order-2 class of `L(2n, q)`: the lift bounds a genus-1 surface in the
/// 4-ball, so `|τ| ≤ 1`.
pub fn lens_order2(n: i64, q: i64, j: &KnotExpr) -> Result<Certificate, ObstructError> {
    if n < 2 {
        return Err(ObstructError::FamilyConstraintViolated(format!(
            "need n > 1, got n = {n}"
        )));
    }
    LensSpace::new(2 * n, q)?;
    let w = KnotExpr::wh_plus(j.clone());
    tau_of(&normalize(&w))?;
    let expression = if n == 2 {
        normalize(&KnotExpr::sum(vec![
            w.clone(),
            w.clone(),
            KnotExpr::rev(w.clone()),
            KnotExpr::rev(w),
        ]))
    } else {
        normalize(&KnotExpr::sum(vec![w.clone(), w]))
    };
    let (tau, derivation) = tau_of(&expression)?;
    let genus_bound = 1;
    let conclusion = if tau.abs() > genus_bound {
        distinguished(LENS_ORDER2, true)
    } else {
        Conclusion::Inconclusive {
            reason: format!(
                "|τ| = {} does not exceed the genus bound {genus_bound}",
                tau.abs()
            ),
        }
    };
    let trace = vec![
        TraceEntry::note(format!(
            "{expression} bounds a genus-1 surface in the 4-ball"
        )),
        TraceEntry::with_steps(format!("τ({expression}) = {tau}"), &derivation),
    ];
    Ok(Certificate {
        job: Job::LensOrder2 { n, q, j: j.clone() },
        proposition: LENS_ORDER2.into(),
        conclusion,
        witness: Witness::GenusBound {
            expression,
            tau,
            genus_bound,
            derivation,
        },
        trace,
    })
}

/// Order-2 class of `ℝP³`: the slope of `Υ(J̃) - Υ(T(3,11))` on
/// `(2/5, 2/3)` must be even if the knots are almost concordant.
pub fn rp3_order2(j: &KnotExpr) -> Result<Certificate, ObstructError> {
    let desc = lift(&PatternKnot::new(
        LensSpace::rp3(),
        Family::Rp3Order2,
        j.clone(),
    )?)?;
    let torus = KnotExpr::Torus { r: 3, s: 11 };
    let expression = normalize(&KnotExpr::sum(vec![
        desc.components[0].clone(),
        KnotExpr::neg(torus),
    ]));
    let (f, derivation) = known(&expression, upsilon::upsilon(&expression)?)?;
    let interval = (Rational::new(2, 5), Rational::new(2, 3));
    let slopes = f
        .slopes_on(&interval.0, &interval.1)
        .expect("interval inside [0, 2]");
    let odd_slope = slopes.iter().find(|s| is_odd(s)).cloned();
    let conclusion = match &odd_slope {
        Some(_) => distinguished(RP3_ORDER2, true),
        None => Conclusion::Inconclusive {
            reason: "every slope on (2/5, 2/3) is even".into(),
        },
    };
    let rendered: Vec<String> = slopes.iter().map(Rational::to_string).collect();
    let mut trace: Vec<TraceEntry> = desc.notes.iter().map(TraceEntry::note).collect();
    trace.push(TraceEntry::with_steps(
        format!("Υ({expression})"),
        &derivation,
    ));
    trace.push(TraceEntry::note(format!(
        "slopes on (2/5, 2/3): [{}]; slopes of Υ(Ĵ # Ĵ) are even",
        rendered.join(", ")
    )));
    Ok(Certificate {
        job: Job::Rp3Order2 { j: j.clone() },
        proposition: RP3_ORDER2.into(),
        conclusion,
        witness: Witness::UpsilonSlope {
            expression,
            interval,
            upsilon: f,
            slopes,
            odd_slope,
            derivation,
        },
        trace,
    })
}
