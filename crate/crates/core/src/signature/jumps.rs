use serde::{Deserialize, Serialize};

use super::{check_open_unit, check_torus, SignatureError};
use crate::algebra::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Jump {
    pub t: Rational,
    pub jump: i64,
}

/// Jumps of `t ↦ σ_{exp(2πit)}(T(r,s))` on `(0, 1)`, sorted by `t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JumpSpectrum {
    pub r: i64,
    pub s: i64,
    pub entries: Vec<Jump>,
}

/// `#{(i, j) : ir + js = n, 0 ≤ i ≤ s, 0 ≤ j ≤ r}`.
pub fn lattice_count(r: i64, s: i64, n: i64) -> usize {
    (0..=s)
        .filter(|i| {
            let rest = n - i * r;
            rest >= 0 && rest % s == 0 && rest / s <= r
        })
        .count()
}

/// For each `0 < N < rs` divisible by neither `r` nor `s`, a jump of `+2`
/// at `N/rs` when `N` has exactly one lattice representation and `-2` when
/// it has none.
pub fn torus_jumps(r: i64, s: i64) -> Result<JumpSpectrum, SignatureError> {
    check_torus(r, s)?;
    let rs = r * s;
    let inv = num_integer::Integer::extended_gcd(&r, &s).x.rem_euclid(s);
    let mut entries = Vec::new();
    for n in 1..rs {
        if n % r == 0 || n % s == 0 {
            continue;
        }
        let jump = match representations(r, s, inv, n) {
            0 => -2,
            1 => 2,
            k => {
                return Err(SignatureError::SelfCheckFailed {
                    r,
                    s,
                    msg: format!("N = {n} has {k} lattice representations"),
                })
            }
        };
        entries.push(Jump {
            t: Rational::ratio(n, rs),
            jump,
        });
    }
    Ok(JumpSpectrum { r, s, entries })
}

/// [`lattice_count`] in constant time: `i ≡ n·r⁻¹ (mod s)` leaves at most
/// two candidates for `i`.
fn representations(r: i64, s: i64, r_inv: i64, n: i64) -> usize {
    let i0 = (n % s) * r_inv % s;
    [i0, i0 + s]
        .into_iter()
        .filter(|&i| i <= s && n - i * r >= 0 && (n - i * r) / s <= r)
        .count()
}

impl JumpSpectrum {
    pub fn first(&self) -> Option<&Jump> {
        self.entries.first()
    }

    pub fn total(&self) -> i64 {
        self.entries.iter().map(|j| j.jump).sum()
    }

    pub fn contains(&self, t: &Rational) -> bool {
        self.entries.binary_search_by(|j| j.t.cmp(t)).is_ok()
    }

    /// Midpoints of consecutive points of `{0} ∪ jumps ∪ {1}`.
    pub fn midpoints(&self) -> Vec<Rational> {
        let mut pts = vec![Rational::zero()];
        pts.extend(self.entries.iter().map(|j| j.t.clone()));
        pts.push(Rational::one());
        pts.windows(2).map(|w| w[0].midpoint(&w[1])).collect()
    }

    /// `j(1 - t) = -j(t)` for every entry.
    pub fn is_antisymmetric(&self) -> bool {
        let one = Rational::one();
        self.entries.iter().all(|j| {
            let mirror = &one - &j.t;
            self.entries
                .binary_search_by(|e| e.t.cmp(&mirror))
                .is_ok_and(|k| self.entries[k].jump == -j.jump)
        })
    }
}

/// Sum of the jumps below `t`; `σ` vanishes on the arc next to `ω = 1`.
pub fn sigma_at(spectrum: &JumpSpectrum, t: &Rational) -> Result<i64, SignatureError> {
    check_open_unit(t)?;
    if spectrum.contains(t) {
        return Err(SignatureError::AtJumpPoint(t.clone()));
    }
    Ok(spectrum
        .entries
        .iter()
        .take_while(|j| j.t < *t)
        .map(|j| j.jump)
        .sum())
}
