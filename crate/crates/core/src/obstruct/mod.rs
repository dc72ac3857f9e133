//! Obstruction engines. Each engine takes family parameters, runs the
//! invariant arithmetic of one obstruction argument and returns a
//! [`Certificate`]: `Distinguished` with the witness that produces the
//! contradiction, or `Inconclusive` with a reason.
//!
//! Certificates serialize to JSON as
//!
//! ```text
//! { "engine": "...", "inputs": {...}, "proposition": "...",
//!   "conclusion": { "verdict": "distinguished" | "inconclusive", ... },
//!   "witness": { "kind": "...", ... }, "trace": [ {"label": ..., "steps": [...]}, ... ] }
//! ```
//!
//! and [`Certificate::replay`] re-derives every recorded value.

mod smooth;
mod topological;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{PLFunction, Rational};
use crate::classical::Step;
use crate::cover::CoverError;
use crate::knots::KnotExpr;
use crate::signature::SignatureError;
use crate::upsilon::UpsilonError;

pub use smooth::{bing_tau, lens_generic, lens_order2, rp3_null, rp3_order2};
pub use topological::{oracle_cross_check, topological, topological_sweep, LEN_DIVIDES_P_NOTE};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructError {
    #[error("evaluator returned Unknown for {subject}: {reason}")]
    EvaluatorUnknown { subject: String, reason: String },
    #[error("ℓ = {l} has order {order} in H_1(L({p},q)); use the order-2 engine instead")]
    OrderViolation { p: i64, l: i64, order: i64 },
    #[error("family constraint violated: {0}")]
    FamilyConstraintViolated(String),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Upsilon(#[from] UpsilonError),
    #[error(transparent)]
    Signature(#[from] SignatureError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("replay failed to run: {0}")]
    Engine(#[from] ObstructError),
    #[error("replay mismatch: {0}")]
    Mismatch(String),
}

/// An engine together with its inputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "engine", content = "inputs", rename_all = "kebab-case")]
pub enum Job {
    Bing {
        j1: KnotExpr,
        j2: KnotExpr,
    },
    Rp3Null {
        j1: KnotExpr,
        j2: KnotExpr,
    },
    LensGeneric {
        p: i64,
        q: i64,
        l: i64,
    },
    LensOrder2 {
        n: i64,
        q: i64,
        j: KnotExpr,
    },
    Rp3Order2 {
        j: KnotExpr,
    },
    Topological {
        p: i64,
        q: i64,
        l: i64,
        n1: i64,
        n2: i64,
    },
}

impl Job {
    pub fn engine(&self) -> &'static str {
        match self {
            Job::Bing { .. } => "bing",
            Job::Rp3Null { .. } => "rp3-null",
            Job::LensGeneric { .. } => "lens-generic",
            Job::LensOrder2 { .. } => "lens-order2",
            Job::Rp3Order2 { .. } => "rp3-order2",
            Job::Topological { .. } => "topological",
        }
    }

    pub fn run(&self) -> Result<Certificate, ObstructError> {
        match self {
            Job::Bing { j1, j2 } => bing_tau(j1, j2),
            Job::Rp3Null { j1, j2 } => rp3_null(j1, j2),
            Job::LensGeneric { p, q, l } => lens_generic(*p, *q, *l),
            Job::LensOrder2 { n, q, j } => lens_order2(*n, *q, j),
            Job::Rp3Order2 { j } => rp3_order2(j),
            Job::Topological { p, q, l, n1, n2 } => topological(*p, *q, *l, *n1, *n2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Conclusion {
    Distinguished { statement: String },
    Inconclusive { reason: String },
}

/// τ of one input and of the lift component built from it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauEntry {
    pub input: KnotExpr,
    pub lift: KnotExpr,
    pub tau: i64,
    pub lift_tau: i64,
    pub derivation: Vec<Step>,
}

/// One of the two pairs of the Van Cott argument.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruencePair {
    /// `"K+"` or `"K-"`.
    pub label: String,
    /// Strand parameter: `ℓ` for `K+`, `p - ℓ` for `K-`.
    pub a: i64,
    pub d: i64,
    pub cable: KnotExpr,
    pub torus: KnotExpr,
    pub cable_tau: i64,
    pub torus_tau: i64,
    /// `(p/d)·τ(Ĵ)` would have to equal `torus_tau - cable_tau`.
    pub difference: i64,
    pub modulus: i64,
    pub distinguished: bool,
    pub derivation: Vec<Step>,
}

/// Signature data of one lift in the topological engine.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftSignature {
    pub n: i64,
    pub knot: KnotExpr,
    pub r: i64,
    pub s: i64,
    pub first_jump: Rational,
    pub first_jump_value: i64,
    /// `d²/(ℓ(pn+ℓq))`.
    pub first_jump_formula: Rational,
    pub sigma_at_witness: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Tau {
        entries: Vec<TauEntry>,
    },
    Congruence {
        p: i64,
        q: i64,
        l: i64,
        pairs: Vec<CongruencePair>,
    },
    GenusBound {
        expression: KnotExpr,
        tau: i64,
        genus_bound: i64,
        derivation: Vec<Step>,
    },
    UpsilonSlope {
        expression: KnotExpr,
        interval: (Rational, Rational),
        upsilon: PLFunction,
        slopes: Vec<Rational>,
        odd_slope: Option<Rational>,
        derivation: Vec<Step>,
    },
    Signature {
        d: i64,
        degree: i64,
        lifts: Vec<LiftSignature>,
        second_jump: Option<Rational>,
        interval: (Rational, Rational),
        t0: Rational,
        /// `(p/d)·σ(J)` must equal this.
        difference: i64,
        /// `σ(J)` is even, so the difference must be a multiple of `2p/d`.
        modulus: i64,
    },
    Empty {
        note: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub label: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub steps: Vec<Step>,
}

impl TraceEntry {
    pub fn note(label: impl Into<String>) -> Self {
        TraceEntry {
            label: label.into(),
            steps: Vec::new(),
        }
    }

    pub fn with_steps(label: impl Into<String>, steps: &[Step]) -> Self {
        TraceEntry {
            label: label.into(),
            steps: steps.to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(flatten)]
    pub job: Job,
    /// Identifier of the obstruction argument this certificate mechanizes.
    pub proposition: String,
    pub conclusion: Conclusion,
    pub witness: Witness,
    pub trace: Vec<TraceEntry>,
}

impl Certificate {
    pub fn is_distinguished(&self) -> bool {
        matches!(self.conclusion, Conclusion::Distinguished { .. })
    }

    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("certificate serializes");
        serde_json::to_string_pretty(&value).expect("json value serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// Re-derives every recorded value from the evaluators and checks that
    /// the witness still yields the recorded conclusion.
    pub fn replay(&self) -> Result<(), ReplayError> {
        self.check_witness()?;
        let fresh = self.job.run()?;
        if fresh != *self {
            return Err(ReplayError::Mismatch(format!(
                "re-running {} produced a different certificate",
                self.job.engine()
            )));
        }
        Ok(())
    }

    fn check_witness(&self) -> Result<(), ReplayError> {
        let distinguished = self.is_distinguished();
        let claim = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(ReplayError::Mismatch(what.to_string()))
            }
        };
        match &self.witness {
            Witness::Tau { entries } => {
                for e in entries {
                    claim(eval_tau(&e.input)? == e.tau, "recorded τ of input")?;
                    claim(eval_tau(&e.lift)? == e.lift_tau, "recorded τ of lift")?;
                }
                let differ = entries.windows(2).any(|w| w[0].lift_tau != w[1].lift_tau);
                claim(
                    differ == distinguished,
                    "τ comparison disagrees with the conclusion",
                )
            }
            Witness::Congruence { p, pairs, .. } => {
                for pair in pairs {
                    claim(
                        eval_tau(&pair.cable)? == pair.cable_tau,
                        "recorded τ of cable",
                    )?;
                    claim(
                        eval_tau(&pair.torus)? == pair.torus_tau,
                        "recorded τ of torus knot",
                    )?;
                    claim(
                        pair.difference == pair.torus_tau - pair.cable_tau,
                        "difference",
                    )?;
                    claim(pair.modulus == p / pair.d, "modulus")?;
                    claim(
                        pair.distinguished == (pair.difference % pair.modulus != 0),
                        "pair verdict disagrees with divisibility",
                    )?;
                }
                claim(
                    pairs.iter().any(|p| p.distinguished) == distinguished,
                    "overall verdict",
                )
            }
            Witness::GenusBound {
                expression,
                tau,
                genus_bound,
                ..
            } => {
                claim(eval_tau(expression)? == *tau, "recorded τ")?;
                claim(
                    (tau.abs() > *genus_bound) == distinguished,
                    "slice genus bound",
                )
            }
            Witness::UpsilonSlope {
                expression,
                interval,
                upsilon,
                slopes,
                odd_slope,
                ..
            } => {
                let f = match crate::upsilon::upsilon(expression).map_err(ObstructError::from)? {
                    crate::classical::Eval::Value { value, .. } => value,
                    crate::classical::Eval::Unknown { reason } => {
                        return Err(ReplayError::Mismatch(format!("Υ is now Unknown: {reason}")))
                    }
                };
                claim(f == *upsilon, "recorded Υ")?;
                let fresh = f
                    .slopes_on(&interval.0, &interval.1)
                    .map_err(|e| ReplayError::Mismatch(e.to_string()))?;
                claim(fresh == *slopes, "recorded slopes")?;
                claim(
                    odd_slope.as_ref() == slopes.iter().find(|s| is_odd(s)),
                    "odd slope",
                )?;
                claim(odd_slope.is_some() == distinguished, "slope parity")
            }
            Witness::Signature {
                lifts,
                t0,
                interval,
                difference,
                modulus,
                ..
            } => {
                claim(
                    interval.0 < *t0 && *t0 < interval.1,
                    "t0 inside the interval",
                )?;
                for lift in lifts {
                    let spectrum = crate::signature::torus_jumps(lift.r, lift.s)
                        .map_err(ObstructError::from)?;
                    let sigma =
                        crate::signature::sigma_at(&spectrum, t0).map_err(ObstructError::from)?;
                    claim(sigma == lift.sigma_at_witness, "recorded signature at t0")?;
                    claim(
                        spectrum.first().map(|j| &j.t) == Some(&lift.first_jump),
                        "first jump",
                    )?;
                }
                let diff = lifts[1].sigma_at_witness - lifts[0].sigma_at_witness;
                claim(diff == *difference, "signature difference")?;
                claim((difference % modulus != 0) == distinguished, "divisibility")
            }
            Witness::Empty { .. } => claim(!distinguished, "empty witness cannot distinguish"),
        }
    }
}

fn is_odd(r: &Rational) -> bool {
    r.is_integer() && r.to_i64().is_some_and(|v| v.rem_euclid(2) == 1)
}

fn eval_tau(e: &KnotExpr) -> Result<i64, ObstructError> {
    match crate::classical::tau(e) {
        crate::classical::Eval::Value { value, .. } => Ok(value),
        crate::classical::Eval::Unknown { reason } => Err(ObstructError::EvaluatorUnknown {
            subject: e.to_string(),
            reason,
        }),
    }
}

fn distinguished(proposition: &str, smooth: bool) -> Conclusion {
    let category = if smooth { "smoothly" } else { "topologically" };
    Conclusion::Distinguished {
        statement: format!("the two knots are not {category} almost concordant, by {proposition}"),
    }
}
