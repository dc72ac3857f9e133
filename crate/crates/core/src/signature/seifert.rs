use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{check_torus, SignatureError};
use crate::classical::torus_alexander;

/// Seifert matrix of `T(r,s)` from Seifert's algorithm on the closure of
/// the positive braid `(σ₁ ⋯ σ_{r-1})^s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertMatrix {
    pub r: i64,
    pub s: i64,
    pub entries: Vec<Vec<i64>>,
}

/// A homology generator: the loop between consecutive crossings `lo < hi`
/// (positions in the braid word) of the same generator `σ_col`.
#[derive(Debug, Clone, Copy)]
struct Loop {
    col: i64,
    lo: usize,
    hi: usize,
}

fn loops(r: i64, s: i64) -> Vec<Loop> {
    let word: Vec<i64> = (0..s).flat_map(|_| 1..r).collect();
    let mut out = Vec::new();
    for col in 1..r {
        let pos: Vec<usize> = (0..word.len()).filter(|&k| word[k] == col).collect();
        out.extend(pos.windows(2).map(|w| Loop {
            col,
            lo: w[0],
            hi: w[1],
        }));
    }
    out
}

fn linking(a: Loop, b: Loop) -> i64 {
    if a.col == b.col {
        if a.hi == b.lo {
            return 1;
        }
        return 0;
    }
    // only interleaved loops in adjacent columns, with `a` opening first
    if !(a.lo < b.lo && b.lo < a.hi && a.hi < b.hi) {
        return 0;
    }
    if b.col == a.col + 1 {
        -1
    } else if a.col == b.col + 1 {
        1
    } else {
        0
    }
}

/// Fraction-free Gaussian elimination.
pub(crate) fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

impl SeifertMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// `det(k·V - Vᵀ)`.
    pub fn alexander_at(&self, k: i64) -> BigInt {
        let n = self.size();
        let m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BigInt::from(k * self.entries[i][j] - self.entries[j][i]))
                    .collect()
            })
            .collect();
        det(&m)
    }

    fn self_check(&self) -> Result<(), SignatureError> {
        let fail = |msg: String| SignatureError::SelfCheckFailed {
            r: self.r,
            s: self.s,
            msg,
        };
        let n = self.size() as i64;
        if n != (self.r - 1) * (self.s - 1) {
            return Err(fail(format!("size {n}, expected (r-1)(s-1)")));
        }
        let skew = self.alexander_at(1);
        if !skew.is_one() {
            return Err(fail(format!("det(V - Vᵀ) = {skew}")));
        }
        // det(tV - Vᵀ) has degree ≤ n, so n + 1 sample points decide equality
        // with ±Δ (Δ is normalized to t^0 … t^n)
        let delta = torus_alexander(self.r, self.s);
        let mut sign: Option<bool> = None;
        for k in 0..=n {
            let lhs = self.alexander_at(k);
            let rhs: BigInt = delta
                .terms()
                .map(|(e, c)| c * BigInt::from(k).pow(e as u32))
                .sum();
            let same = if lhs == rhs {
                true
            } else if lhs == -&rhs {
                false
            } else {
                return Err(fail(format!("det(kV - Vᵀ) = {lhs} but Δ({k}) = {rhs}")));
            };
            if !rhs.is_zero() && *sign.get_or_insert(same) != same {
                return Err(fail("sign of det(tV - Vᵀ) / Δ(t) is not constant".into()));
            }
        }
        Ok(())
    }
}

/// Builds the Seifert matrix and runs both self-checks.
pub fn braid_seifert_matrix(r: i64, s: i64) -> Result<SeifertMatrix, SignatureError> {
    check_torus(r, s)?;
    let ls = loops(r, s);
    let entries = ls
        .iter()
        .enumerate()
        .map(|(i, a)| {
            ls.iter()
                .enumerate()
                .map(|(j, b)| if i == j { -1 } else { linking(*a, *b) })
                .collect()
        })
        .collect();
    let v = SeifertMatrix { r, s, entries };
    v.self_check()?;
    Ok(v)
}
