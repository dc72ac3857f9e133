use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::Rational;

/// Closed interval `[lo, hi] · 2^-bits` with integer endpoints. Every
/// operation rounds outward, so the true value is always enclosed.
#[derive(Clone, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    bits: u32,
}

fn shr_floor(x: &BigInt, k: u32) -> BigInt {
    // BigInt's shift rounds toward -∞
    x >> k
}

fn shr_ceil(x: &BigInt, k: u32) -> BigInt {
    -((-x) >> k)
}

fn div_floor(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

impl Interval {
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn from_int(n: i64, bits: u32) -> Self {
        let v = BigInt::from(n) << bits;
        Interval {
            lo: v.clone(),
            hi: v,
            bits,
        }
    }

    pub fn from_rational(q: &Rational, bits: u32) -> Self {
        let num = q.numer() << bits;
        let den = q.denom();
        Interval {
            lo: div_floor(&num, den),
            hi: div_ceil(&num, den),
            bits,
        }
    }

    /// `[mid - rad, mid + rad]` in units of `2^-bits`.
    pub(crate) fn around(mid: BigInt, rad: BigInt, bits: u32) -> Self {
        Interval {
            lo: &mid - &rad,
            hi: mid + rad,
            bits,
        }
    }

    #[cfg(test)]
    pub(crate) fn raw(&self) -> (&BigInt, &BigInt) {
        (&self.lo, &self.hi)
    }

    /// Midpoint (rounded down) and radius (rounded up), in raw units.
    pub(crate) fn mid_rad(&self) -> (BigInt, BigInt) {
        let sum = &self.lo + &self.hi;
        let mid = sum.div_floor(&BigInt::from(2));
        let rad = (&self.hi - &mid).max(&mid - &self.lo);
        (mid, rad)
    }

    /// Drops `k` bits of precision, rounding outward.
    pub(crate) fn coarsen(&self, k: u32) -> Self {
        Interval {
            lo: shr_floor(&self.lo, k),
            hi: shr_ceil(&self.hi, k),
            bits: self.bits - k,
        }
    }

    /// `Some(±1)` when the sign is certain, `None` if the interval meets 0.
    pub fn sign(&self) -> Option<i32> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else {
            None
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.sign().is_none()
    }

    pub fn neg(&self) -> Self {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
            bits: self.bits,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.bits, o.bits);
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
            bits: self.bits,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.bits, o.bits);
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().expect("four products");
        let hi = c.iter().max().expect("four products");
        Interval {
            lo: shr_floor(lo, self.bits),
            hi: shr_ceil(hi, self.bits),
            bits: self.bits,
        }
    }

    pub fn mul_int(&self, k: i64) -> Self {
        let k = BigInt::from(k);
        let (a, b) = (&self.lo * &k, &self.hi * &k);
        if k.is_negative() {
            Interval {
                lo: b,
                hi: a,
                bits: self.bits,
            }
        } else {
            Interval {
                lo: a,
                hi: b,
                bits: self.bits,
            }
        }
    }

    /// `None` when the divisor meets 0.
    pub fn div(&self, o: &Self) -> Option<Self> {
        if o.contains_zero() {
            return None;
        }
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for a in [&self.lo, &self.hi] {
            for b in [&o.lo, &o.hi] {
                let n = a << self.bits;
                let f = div_floor(&n, b);
                let c = div_ceil(&n, b);
                if lo.as_ref().is_none_or(|l| f < *l) {
                    lo = Some(f);
                }
                if hi.as_ref().is_none_or(|h| c > *h) {
                    hi = Some(c);
                }
            }
        }
        Some(Interval {
            lo: lo.expect("four quotients"),
            hi: hi.expect("four quotients"),
            bits: self.bits,
        })
    }

    pub fn width_is_zero(&self) -> bool {
        self.lo == self.hi
    }

    pub fn one(bits: u32) -> Self {
        Interval {
            lo: BigInt::one() << bits,
            hi: BigInt::one() << bits,
            bits,
        }
    }

    pub fn zero(bits: u32) -> Self {
        Interval {
            lo: BigInt::zero(),
            hi: BigInt::zero(),
            bits,
        }
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let scale = 2f64.powi(self.bits as i32);
        let lo = self.lo.to_string().parse::<f64>().unwrap_or(f64::NAN) / scale;
        let hi = self.hi.to_string().parse::<f64>().unwrap_or(f64::NAN) / scale;
        write!(f, "[{lo:e}, {hi:e}]@{}", self.bits)
    }
}

/// `π` enclosed at `bits` fractional bits, by Machin's formula
/// `π = 16·atan(1/5) - 4·atan(1/239)`.
pub(crate) fn pi(bits: u32) -> Interval {
    let guard = 32;
    let w = bits + guard;
    let a = atan_inv(5, w);
    let b = atan_inv(239, w);
    a.mul_int(16).sub(&b.mul_int(4)).coarsen(guard)
}

/// `atan(1/x)` for an integer `x > 1`, by its alternating series.
fn atan_inv(x: i64, bits: u32) -> Interval {
    let one = BigInt::one() << bits;
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = &one / &x; // floor(2^bits / x^(2k+1))
    let mut sum = BigInt::zero();
    let mut k: i64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    // each truncating division loses < 1 ulp, twice per term; the tail is
    // below the first omitted power, which is zero at this scale, so < 1 ulp
    Interval::around(sum, BigInt::from(2 * k + 2), bits)
}

/// Encloses `(sin θ, cos θ)` for `θ` in the interval `x`.
pub(crate) fn sin_cos(x: &Interval) -> (Interval, Interval) {
    let bits = x.bits();
    let guard = 32;
    let w = bits + guard;
    let (mid, rad) = x.mid_rad();
    assert!(
        mid.abs() < BigInt::from(4) << bits,
        "sin_cos expects |θ| < 4"
    );
    let m = mid << guard;
    let one = BigInt::one() << w;
    // Taylor series at the midpoint; terms m^k / k! computed with flooring
    let mut term = one.clone();
    let mut sin = BigInt::zero();
    let mut cos = BigInt::zero();
    let mut k: u64 = 0;
    loop {
        match k % 4 {
            0 => cos += &term,
            1 => sin += &term,
            2 => cos -= &term,
            _ => sin -= &term,
        }
        k += 1;
        let next = (&term * &m >> w) / BigInt::from(k);
        if next.is_zero() && k > 2 {
            break;
        }
        term = next;
    }
    // with |m| < 4 the error of the k-th computed term obeys
    // e_k ≤ e_{k-1}·|m|/k + 2, which never exceeds 13 ulp; the omitted tail
    // is below 32 ulp
    let rounding = BigInt::from(13 * k + 32);
    // |sin'|, |cos'| ≤ 1 absorbs the input radius
    let err = &rounding + (rad << guard);
    let s = Interval::around(sin, err.clone(), w).coarsen(guard);
    let c = Interval::around(cos, err, w).coarsen(guard);
    (s, c)
}
