use std::fmt;

use serde::{Deserialize, Serialize};

use crate::knots::KnotExpr;

/// Every rule an evaluator may cite. Names are stable and appear verbatim in
/// JSON output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Unknot,
    // Alexander polynomial
    TorusAlexander,
    AlexanderMultiplicative,
    AlexanderMirror,
    AlexanderReverse,
    WhiteheadAlexander,
    CableAlexander,
    // Seifert genus
    TorusGenus,
    GenusAdditive,
    GenusMirror,
    GenusReverse,
    WhiteheadGenusSurface,
    TauBoundMeetsSurface,
    // τ
    TorusTau,
    TauAdditive,
    TauMirror,
    TauReverse,
    HeddenWhitehead,
    NontrivialCompanion,
    VanCottCase1,
    VanCottCase2,
    CableOfUnknot,
    // L-space knots and Υ
    LspaceTorus,
    LspaceCable,
    Staircase,
    UpsilonAdditive,
    UpsilonMirror,
    NuPlusRewrite,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Unknot => "unknot",
            Rule::TorusAlexander => "torus-alexander",
            Rule::AlexanderMultiplicative => "alexander-multiplicative",
            Rule::AlexanderMirror => "alexander-mirror",
            Rule::AlexanderReverse => "alexander-reverse",
            Rule::WhiteheadAlexander => "whitehead-alexander",
            Rule::CableAlexander => "cable-alexander",
            Rule::TorusGenus => "torus-genus",
            Rule::GenusAdditive => "genus-additive",
            Rule::GenusMirror => "genus-mirror",
            Rule::GenusReverse => "genus-reverse",
            Rule::WhiteheadGenusSurface => "whitehead-genus-surface",
            Rule::TauBoundMeetsSurface => "tau-bound-meets-surface",
            Rule::TorusTau => "torus-tau",
            Rule::TauAdditive => "tau-additive",
            Rule::TauMirror => "tau-mirror",
            Rule::TauReverse => "tau-reverse",
            Rule::HeddenWhitehead => "hedden-whitehead",
            Rule::NontrivialCompanion => "nontrivial-companion",
            Rule::VanCottCase1 => "van-cott-case-1",
            Rule::VanCottCase2 => "van-cott-case-2",
            Rule::CableOfUnknot => "cable-of-unknot",
            Rule::LspaceTorus => "lspace-torus",
            Rule::LspaceCable => "lspace-cable",
            Rule::Staircase => "staircase",
            Rule::UpsilonAdditive => "upsilon-additive",
            Rule::UpsilonMirror => "upsilon-mirror",
            Rule::NuPlusRewrite => "nu-plus-rewrite",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One applied rule and the subexpression it was applied to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub rule: Rule,
    pub subject: KnotExpr,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Step {
    pub fn new(rule: Rule, subject: &KnotExpr) -> Self {
        Step {
            rule,
            subject: subject.clone(),
            note: None,
        }
    }

    pub fn with_note(rule: Rule, subject: &KnotExpr, note: impl Into<String>) -> Self {
        Step {
            rule,
            subject: subject.clone(),
            note: Some(note.into()),
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on {}", self.rule, self.subject)?;
        if let Some(note) = &self.note {
            write!(f, ": {note}")?;
        }
        Ok(())
    }
}

/// Result of a rule-based evaluator: a value with the rules that produced
/// it, or an explicit `Unknown` naming the first missing premise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Eval<T> {
    Value { value: T, derivation: Vec<Step> },
    Unknown { reason: String },
}

impl<T> Eval<T> {
    pub fn unknown(reason: impl Into<String>) -> Self {
        Eval::Unknown {
            reason: reason.into(),
        }
    }

    pub fn value(&self) -> Option<&T> {
        match self {
            Eval::Value { value, .. } => Some(value),
            Eval::Unknown { .. } => None,
        }
    }

    pub fn derivation(&self) -> &[Step] {
        match self {
            Eval::Value { derivation, .. } => derivation,
            Eval::Unknown { .. } => &[],
        }
    }

    pub fn unknown_reason(&self) -> Option<&str> {
        match self {
            Eval::Unknown { reason } => Some(reason),
            Eval::Value { .. } => None,
        }
    }

    pub fn is_known(&self) -> bool {
        matches!(self, Eval::Value { .. })
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Eval<U> {
        match self {
            Eval::Value { value, derivation } => Eval::Value {
                value: f(value),
                derivation,
            },
            Eval::Unknown { reason } => Eval::Unknown { reason },
        }
    }
}
