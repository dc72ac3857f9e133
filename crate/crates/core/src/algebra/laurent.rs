use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division is not exact: remainder {remainder}")]
    NotDivisible { remainder: LaurentPoly },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial {0} is not palindromic")]
    NotPalindromic(LaurentPoly),
    #[error("polynomial {0} has odd exponent span and cannot be centred")]
    OddSpan(LaurentPoly),
}

/// Integer Laurent polynomial in one variable `t`.
///
/// Only nonzero coefficients are stored; the zero polynomial is the empty
/// map. Serialized as an exponent → coefficient map.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "BTreeMap<i64, Coeff>", try_from = "BTreeMap<i64, Coeff>")]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

/// JSON coefficient: a plain integer when it fits in `i64`, else a decimal
/// string.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Coeff {
    Small(i64),
    Big(String),
}

impl From<LaurentPoly> for BTreeMap<i64, Coeff> {
    fn from(p: LaurentPoly) -> Self {
        p.terms
            .into_iter()
            .map(|(e, c)| {
                let c = i64::try_from(&c)
                    .map(Coeff::Small)
                    .unwrap_or_else(|_| Coeff::Big(c.to_string()));
                (e, c)
            })
            .collect()
    }
}

impl TryFrom<BTreeMap<i64, Coeff>> for LaurentPoly {
    type Error = String;

    fn try_from(map: BTreeMap<i64, Coeff>) -> Result<Self, String> {
        let mut terms = Vec::with_capacity(map.len());
        for (e, c) in map {
            let c = match c {
                Coeff::Small(n) => BigInt::from(n),
                Coeff::Big(s) => s
                    .parse::<BigInt>()
                    .map_err(|err| format!("coefficient {s:?}: {err}"))?,
            };
            terms.push((e, c));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `coeff · t^exp`.
    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// Coefficients in ascending order starting at `t^0`.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(e, &c)| (e as i64, c)))
    }

    /// `t^n - 1`
    pub fn t_pow_minus_one(n: i64) -> Self {
        Self::from_terms([(n, 1), (0, -1)])
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// The substitution `t ↦ t^r`.
    pub fn substitute_power(&self, r: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (e * r, c.clone())))
    }

    /// The substitution `t ↦ t⁻¹`.
    pub fn invert_variable(&self) -> Self {
        self.substitute_power(-1)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// `true` if the coefficient sequence reads the same reversed.
    pub fn is_palindromic(&self) -> bool {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => self
                .terms
                .iter()
                .all(|(e, c)| self.coeff(lo + hi - e) == *c),
            _ => true,
        }
    }

    /// `coeff(k) == coeff(-k)` for every `k`.
    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(e, c)| self.coeff(-e) == *c)
    }

    /// Shifts a palindromic polynomial so that it becomes symmetric about
    /// `t^0`.
    pub fn symmetrize(&self) -> Result<SymmetricPoly, PolyError> {
        let (Some(lo), Some(hi)) = (self.min_exp(), self.max_exp()) else {
            return Ok(SymmetricPoly(Self::zero()));
        };
        if !self.is_palindromic() {
            return Err(PolyError::NotPalindromic(self.clone()));
        }
        if (lo + hi) % 2 != 0 {
            return Err(PolyError::OddSpan(self.clone()));
        }
        Ok(SymmetricPoly(self.shift(-(lo + hi) / 2)))
    }

    /// Canonical representative of the class of `self` modulo the units
    /// `±t^k`: positive leading coefficient and lowest exponent zero.
    pub fn unit_normalized(&self) -> Self {
        let Some(lo) = self.min_exp() else {
            return Self::zero();
        };
        let shifted = self.shift(-lo);
        if shifted.leading_coeff().is_some_and(|c| c.is_negative()) {
            -shifted
        } else {
            shifted
        }
    }

    /// Equality up to multiplication by a unit `±t^k`.
    pub fn equals_up_to_units(&self, other: &Self) -> bool {
        self.unit_normalized() == other.unit_normalized()
    }

    /// Exact quotient in `ℤ[t, t⁻¹]`.
    pub fn divide_exact(&self, den: &Self) -> Result<Self, PolyError> {
        let (Some(den_lo), Some(den_hi)) = (den.min_exp(), den.max_exp()) else {
            return Err(PolyError::DivisionByZero);
        };
        let Some(num_lo) = self.min_exp() else {
            return Ok(Self::zero());
        };
        let num_hi = self.max_exp().expect("nonzero numerator");
        let den_dense: Vec<BigInt> = (den_lo..=den_hi).map(|e| den.coeff(e)).collect();
        let den_lead = den_dense.last().expect("nonzero denominator").clone();
        let den_deg = den_dense.len() - 1;
        let mut rem: Vec<BigInt> = (num_lo..=num_hi).map(|e| self.coeff(e)).collect();
        let mut quot: Vec<(i64, BigInt)> = Vec::new();
        let mut top = rem.len();
        while top > den_deg {
            let i = top - 1;
            if rem[i].is_zero() {
                top -= 1;
                continue;
            }
            let (q, r) = rem[i].div_rem(&den_lead);
            if !r.is_zero() {
                break;
            }
            let base = i - den_deg;
            for (k, d) in den_dense.iter().enumerate() {
                if !d.is_zero() {
                    rem[base + k] -= &q * d;
                }
            }
            quot.push((base as i64, q));
            top -= 1;
        }
        let rem = LaurentPoly::from_terms(rem.into_iter().enumerate().map(|(k, c)| (k as i64, c)));
        if !rem.is_zero() {
            return Err(PolyError::NotDivisible {
                remainder: rem.shift(num_lo),
            });
        }
        let quot = LaurentPoly::from_terms(quot);
        Ok(quot.shift(num_lo - den_lo))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let (Some(lo_a), Some(hi_a), Some(lo_b), Some(hi_b)) =
            (self.min_exp(), self.max_exp(), rhs.min_exp(), rhs.max_exp())
        else {
            return LaurentPoly::zero();
        };
        let lo = lo_a + lo_b;
        let mut dense = vec![BigInt::zero(); (hi_a + hi_b - lo + 1) as usize];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                dense[(ea + eb - lo) as usize] += ca * cb;
            }
        }
        LaurentPoly {
            terms: dense
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k as i64 + lo, c))
                .collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = mag.is_one();
            match *e {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "t")?,
                1 => write!(f, "{mag}t")?,
                _ if unit => write!(f, "t^{e}")?,
                _ => write!(f, "{mag}t^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A Laurent polynomial with `coeff(k) == coeff(-k)` for all `k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SymmetricPoly(LaurentPoly);

impl SymmetricPoly {
    /// Wraps `p` if it is already symmetric.
    pub fn new(p: LaurentPoly) -> Option<Self> {
        p.is_symmetric().then_some(SymmetricPoly(p))
    }

    pub fn as_poly(&self) -> &LaurentPoly {
        &self.0
    }

    pub fn into_poly(self) -> LaurentPoly {
        self.0
    }
}

impl fmt::Display for SymmetricPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(coeffs: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(coeffs)
    }

    #[test]
    fn difference_of_squares() {
        let a = p(&[-1, 1]);
        let b = p(&[1, 1]);
        assert_eq!(&a * &b, p(&[-1, 0, 1]));
        assert_eq!(&a * &LaurentPoly::one(), a);
    }

    #[test]
    fn exact_division() {
        assert_eq!(
            p(&[-1, 0, 1]).divide_exact(&p(&[-1, 1])).unwrap(),
            p(&[1, 1])
        );
        // (t^6 - 1)(t - 1) / ((t^2 - 1)(t^3 - 1)) = t^2 - t + 1
        let num = &LaurentPoly::t_pow_minus_one(6) * &LaurentPoly::t_pow_minus_one(1);
        let den = &LaurentPoly::t_pow_minus_one(2) * &LaurentPoly::t_pow_minus_one(3);
        assert_eq!(num.divide_exact(&den).unwrap(), p(&[1, -1, 1]));
    }

    #[test]
    fn inexact_division_is_reported() {
        let err = p(&[-1, 1]).divide_exact(&p(&[-1, 0, 1])).unwrap_err();
        assert!(matches!(err, PolyError::NotDivisible { .. }));
        let err = p(&[1, 1]).divide_exact(&p(&[0, 2])).unwrap_err();
        assert!(matches!(err, PolyError::NotDivisible { .. }));
        assert_eq!(
            p(&[1]).divide_exact(&LaurentPoly::zero()),
            Err(PolyError::DivisionByZero)
        );
    }

    #[test]
    fn division_with_negative_exponents() {
        let a = LaurentPoly::from_terms([(-3, 2), (1, -5), (4, 1)]);
        let b = LaurentPoly::from_terms([(-2, 1), (0, 3)]);
        let prod = &a * &b;
        assert_eq!(prod.divide_exact(&b).unwrap(), a);
    }

    #[test]
    fn symmetrize_shifts_to_centre() {
        let s = p(&[1, -1, 1]).symmetrize().unwrap();
        assert_eq!(
            s.as_poly(),
            &LaurentPoly::from_terms([(1, 1), (0, -1), (-1, 1)])
        );
        assert!(matches!(
            p(&[1, 1]).symmetrize(),
            Err(PolyError::OddSpan(_))
        ));
        assert!(matches!(
            p(&[1, 2, 3]).symmetrize(),
            Err(PolyError::NotPalindromic(_))
        ));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -1, 1]).to_string(), "t^2 - t + 1");
        assert_eq!(
            LaurentPoly::from_terms([(-1, 1), (0, -2)]).to_string(),
            "-2 + t^-1"
        );
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn unit_normalization() {
        let a = LaurentPoly::from_terms([(-4, -1), (-3, 1)]);
        assert_eq!(a.unit_normalized(), p(&[-1, 1]));
        assert!(a.equals_up_to_units(&p(&[1, -1]).shift(7)));
    }

    #[test]
    fn json_is_exponent_map() {
        let a = LaurentPoly::from_terms([(-1, 1), (2, -3)]);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"{"-1":1,"2":-3}"#);
        let back: LaurentPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
    }

    fn small_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-6i64..6, -5i64..5), 0..6).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn ring_laws(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn division_inverts_multiplication(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).divide_exact(&b).unwrap(), a);
        }

        #[test]
        fn symmetrize_output_is_symmetric(a in small_poly(), k in -5i64..5) {
            // a(t)·a(t⁻¹) is palindromic with even span
            let pal = (&a * &a.invert_variable()).shift(k);
            let s = pal.symmetrize().unwrap();
            prop_assert!(s.as_poly().is_symmetric());
        }
    }
}
