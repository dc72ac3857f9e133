use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::interval::{pi, sin_cos};
use super::{check_open_unit, torus_jumps, Interval, SeifertMatrix, SignatureError};
use crate::algebra::Rational;

pub const START_BITS: u32 = 128;
pub const DEFAULT_MAX_BITS: u32 = 8192;

/// Outcome of a certified signature evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub t: Rational,
    pub signature: i64,
    /// Precision at which every pivot sign was decided.
    pub bits: u32,
    pub positive: usize,
    pub negative: usize,
}

/// Signature of `(1-ω)V + (1-ω̄)Vᵀ` at `ω = exp(2πit)`.
pub fn sigma_oracle(v: &SeifertMatrix, t: &Rational) -> Result<i64, SignatureError> {
    sigma_oracle_with(v, t, DEFAULT_MAX_BITS).map(|r| r.signature)
}

/// As [`sigma_oracle`], doubling the precision from [`START_BITS`] up to
/// `max_bits`.
pub fn sigma_oracle_with(
    v: &SeifertMatrix,
    t: &Rational,
    max_bits: u32,
) -> Result<OracleReport, SignatureError> {
    check_open_unit(t)?;
    if torus_jumps(v.r, v.s)?.contains(t) {
        return Err(SignatureError::AtJumpPoint(t.clone()));
    }
    let mut bits = START_BITS;
    loop {
        if let Some((positive, negative)) = inertia(v, t, bits) {
            debug_assert_eq!(positive + negative, v.size());
            return Ok(OracleReport {
                t: t.clone(),
                signature: positive as i64 - negative as i64,
                bits,
                positive,
                negative,
            });
        }
        if bits >= max_bits {
            return Err(SignatureError::PrecisionExhausted { t: t.clone(), bits });
        }
        bits *= 2;
    }
}

/// Complex interval `re + i·im`.
#[derive(Clone)]
struct Cx {
    re: Interval,
    im: Interval,
}

impl Cx {
    fn conj(&self) -> Cx {
        Cx {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    fn mul(&self, o: &Cx) -> Cx {
        Cx {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    fn sub(&self, o: &Cx) -> Cx {
        Cx {
            re: self.re.sub(&o.re),
            im: self.im.sub(&o.im),
        }
    }

    fn add(&self, o: &Cx) -> Cx {
        Cx {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }

    fn div_real(&self, k: &Interval) -> Option<Cx> {
        Some(Cx {
            re: self.re.div(k)?,
            im: self.im.div(k)?,
        })
    }

    fn norm_sqr(&self) -> Interval {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }
}

/// Inertia of `sin(πt)(V + Vᵀ) + i·cos(πt)(Vᵀ - V)`, a positive multiple of
/// the Hermitian matrix, or `None` when some pivot sign cannot be decided
/// at this precision.
fn inertia(v: &SeifertMatrix, t: &Rational, bits: u32) -> Option<(usize, usize)> {
    let theta = pi(bits).mul(&Interval::from_rational(t, bits));
    let (sin, cos) = sin_cos(&theta);
    let n = v.size();
    let e = &v.entries;
    let mut h: Vec<Vec<Cx>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Cx {
                    re: sin.mul_int(e[i][j] + e[j][i]),
                    im: cos.mul_int(e[j][i] - e[i][j]),
                })
                .collect()
        })
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    let (mut pos, mut neg) = (0, 0);
    while !active.is_empty() {
        let best = active
            .iter()
            .copied()
            .filter(|&i| !h[i][i].re.contains_zero())
            .max_by_key(|&i| h[i][i].re.mid_rad().0.abs());
        if let Some(p) = best {
            match h[p][p].re.sign() {
                Some(1) => pos += 1,
                _ => neg += 1,
            }
            active.retain(|&i| i != p);
            eliminate_one(&mut h, &active, p)?;
            continue;
        }
        let pair = active.iter().enumerate().find_map(|(x, &i)| {
            active[x + 1..].iter().copied().find_map(|j| {
                let det = h[i][i].re.mul(&h[j][j].re).sub(&h[i][j].norm_sqr());
                (det.sign() == Some(-1)).then_some((i, j, det))
            })
        });
        let (i, j, det) = pair?;
        pos += 1;
        neg += 1;
        active.retain(|&k| k != i && k != j);
        eliminate_two(&mut h, &active, i, j, &det)?;
    }
    Some((pos, neg))
}

fn store(h: &mut [Vec<Cx>], k: usize, l: usize, v: Cx) {
    if k == l {
        // diagonal entries of a Hermitian matrix are real
        h[k][k] = Cx {
            im: Interval::zero(v.re.bits()),
            re: v.re,
        };
    } else {
        h[l][k] = v.conj();
        h[k][l] = v;
    }
}

fn eliminate_one(h: &mut [Vec<Cx>], active: &[usize], p: usize) -> Option<()> {
    let pivot = h[p][p].re.clone();
    let factors: Vec<Cx> = active
        .iter()
        .map(|&k| h[k][p].div_real(&pivot))
        .collect::<Option<_>>()?;
    for (x, &k) in active.iter().enumerate() {
        for &l in &active[x..] {
            let v = h[k][l].sub(&factors[x].mul(&h[p][l]));
            store(h, k, l, v);
        }
    }
    Some(())
}

fn eliminate_two(
    h: &mut [Vec<Cx>],
    active: &[usize],
    i: usize,
    j: usize,
    det: &Interval,
) -> Option<()> {
    // inverse of [[a, b], [b̄, d]] is [[d, -b], [-b̄, a]] / det
    let a = h[i][i].re.clone();
    let d = h[j][j].re.clone();
    let b = h[i][j].clone();
    let zero = Interval::zero(a.bits());
    let real = |x: &Interval| Cx {
        re: x.clone(),
        im: zero.clone(),
    };
    let neg_b = Cx {
        re: b.re.neg(),
        im: b.im.neg(),
    };
    let inv = [
        [real(&d.div(det)?), neg_b.div_real(det)?],
        [neg_b.conj().div_real(det)?, real(&a.div(det)?)],
    ];
    let rows: Vec<[Cx; 2]> = active
        .iter()
        .map(|&k| {
            let (ci, cj) = (&h[k][i], &h[k][j]);
            [
                ci.mul(&inv[0][0]).add(&cj.mul(&inv[1][0])),
                ci.mul(&inv[0][1]).add(&cj.mul(&inv[1][1])),
            ]
        })
        .collect();
    for (x, &k) in active.iter().enumerate() {
        for &l in &active[x..] {
            let corr = rows[x][0].mul(&h[i][l]).add(&rows[x][1].mul(&h[j][l]));
            let v = h[k][l].sub(&corr);
            store(h, k, l, v);
        }
    }
    Some(())
}
