use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlfError {
    #[error("t = {0} lies outside the domain")]
    OutOfDomain(Rational),
    #[error("breakpoints must start at 0, end at 2 and strictly increase")]
    BadBreakpoints,
    #[error("empty interval [{0}, {1}]")]
    EmptyInterval(Rational, Rational),
}

/// Slope of a piecewise-linear function at a point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Slope {
    Defined(Rational),
    /// The point is a breakpoint.
    Undefined,
}

/// Continuous piecewise-linear function on `[0, 2]` with rational
/// breakpoints.
///
/// Stored in canonical form: breakpoints at `0` and `2`, strictly
/// increasing, and no interior breakpoint collinear with its neighbours.
/// Two functions are equal iff their breakpoint lists are equal.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PLFunction {
    breakpoints: Vec<(Rational, Rational)>,
}

fn domain_end() -> Rational {
    Rational::from_int(2)
}

fn lerp(p: &(Rational, Rational), q: &(Rational, Rational), t: &Rational) -> Rational {
    let (t0, v0) = p;
    let (t1, v1) = q;
    v0 + &((v1 - v0) * (t - t0) / (t1 - t0))
}

fn collinear(a: &(Rational, Rational), b: &(Rational, Rational), c: &(Rational, Rational)) -> bool {
    (&b.1 - &a.1) * (&c.0 - &a.0) == (&c.1 - &a.1) * (&b.0 - &a.0)
}

impl PLFunction {
    /// `intercept + slope · t` on `[0, 2]`.
    pub fn line(intercept: Rational, slope: Rational) -> Self {
        let end = &intercept + &(&slope * &domain_end());
        PLFunction {
            breakpoints: vec![(Rational::zero(), intercept), (domain_end(), end)],
        }
    }

    pub fn zero() -> Self {
        Self::line(Rational::zero(), Rational::zero())
    }

    pub fn from_breakpoints(points: Vec<(Rational, Rational)>) -> Result<Self, PlfError> {
        let ok = points.len() >= 2
            && points.first().is_some_and(|p| p.0.is_zero())
            && points.last().is_some_and(|p| p.0 == domain_end())
            && points.windows(2).all(|w| w[0].0 < w[1].0);
        if !ok {
            return Err(PlfError::BadBreakpoints);
        }
        Ok(Self::canonical(points))
    }

    fn canonical(points: Vec<(Rational, Rational)>) -> Self {
        let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(points.len());
        for p in points {
            while out.len() >= 2 {
                let a = &out[out.len() - 2];
                let b = &out[out.len() - 1];
                if collinear(a, b, &p) {
                    out.pop();
                } else {
                    break;
                }
            }
            out.push(p);
        }
        PLFunction { breakpoints: out }
    }

    pub fn breakpoints(&self) -> &[(Rational, Rational)] {
        &self.breakpoints
    }

    pub fn eval(&self, t: &Rational) -> Result<Rational, PlfError> {
        if t.is_negative() || *t > domain_end() {
            return Err(PlfError::OutOfDomain(t.clone()));
        }
        Ok(self.eval_unchecked(t))
    }

    fn eval_unchecked(&self, t: &Rational) -> Rational {
        let idx = self.breakpoints.partition_point(|(x, _)| x < t);
        match self.breakpoints.get(idx) {
            Some((x, v)) if x == t => v.clone(),
            _ => lerp(&self.breakpoints[idx - 1], &self.breakpoints[idx], t),
        }
    }

    /// Values at sorted abscissae in `[0, 2]`, in one pass.
    fn eval_sorted(&self, xs: &[Rational]) -> Vec<Rational> {
        let bp = &self.breakpoints;
        let mut i = 0;
        xs.iter()
            .map(|x| {
                while i + 2 < bp.len() && bp[i + 1].0 < *x {
                    i += 1;
                }
                if bp[i].0 == *x {
                    bp[i].1.clone()
                } else if bp[i + 1].0 == *x {
                    bp[i + 1].1.clone()
                } else {
                    lerp(&bp[i], &bp[i + 1], x)
                }
            })
            .collect()
    }

    /// Union of the breakpoint abscissae of `self` and `other`.
    fn merged_abscissae(&self, other: &Self) -> Vec<Rational> {
        let mut xs: Vec<Rational> = self
            .breakpoints
            .iter()
            .chain(other.breakpoints.iter())
            .map(|(x, _)| x.clone())
            .collect();
        xs.sort();
        xs.dedup();
        xs
    }

    pub fn add(&self, other: &Self) -> Self {
        let xs = self.merged_abscissae(other);
        let a = self.eval_sorted(&xs);
        let b = other.eval_sorted(&xs);
        let points = xs
            .into_iter()
            .zip(a.into_iter().zip(b))
            .map(|(x, (u, v))| (x, u + v))
            .collect();
        Self::canonical(points)
    }

    pub fn negate(&self) -> Self {
        PLFunction {
            breakpoints: self
                .breakpoints
                .iter()
                .map(|(x, v)| (x.clone(), -v))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.negate())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::canonical(
            self.breakpoints
                .iter()
                .map(|(x, v)| (x.clone(), v * k))
                .collect(),
        )
    }

    /// Pointwise maximum of two functions; crossings become breakpoints.
    pub fn max(&self, other: &Self) -> Self {
        let xs = self.merged_abscissae(other);
        let fs = self.eval_sorted(&xs);
        let gs = other.eval_sorted(&xs);
        let mut points = Vec::with_capacity(xs.len() * 2);
        for (i, x) in xs.iter().enumerate() {
            let f = fs[i].clone();
            let g = gs[i].clone();
            if i > 0 {
                let px = &xs[i - 1];
                let pd = &fs[i - 1] - &gs[i - 1];
                let d = &f - &g;
                if pd.signum() * d.signum() < 0 {
                    // f - g is linear on [px, x] and changes sign inside
                    let cross = px + &((x - px) * &pd / (&pd - &d));
                    let v = self.eval_unchecked(&cross);
                    points.push((cross, v));
                }
            }
            points.push((x.clone(), if f >= g { f } else { g }));
        }
        Self::canonical(points)
    }

    /// Pointwise maximum of a nonempty family.
    pub fn max_of<'a>(fs: impl IntoIterator<Item = &'a PLFunction>) -> Option<Self> {
        let mut it = fs.into_iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, f| acc.max(f)))
    }

    /// Slope at an interior point, or [`Slope::Undefined`] at a breakpoint.
    pub fn slope_at(&self, t: &Rational) -> Result<Slope, PlfError> {
        if !t.is_positive() || *t >= domain_end() {
            return Err(PlfError::OutOfDomain(t.clone()));
        }
        let idx = self.breakpoints.partition_point(|(x, _)| x < t);
        if self.breakpoints[idx].0 == *t {
            return Ok(Slope::Undefined);
        }
        Ok(Slope::Defined(self.segment_slope(idx - 1)))
    }

    fn segment_slope(&self, i: usize) -> Rational {
        let (t0, v0) = &self.breakpoints[i];
        let (t1, v1) = &self.breakpoints[i + 1];
        (v1 - v0) / (t1 - t0)
    }

    /// Distinct slopes of the linear pieces meeting the open interval
    /// `(a, b)`, in order of appearance.
    pub fn slopes_on(&self, a: &Rational, b: &Rational) -> Result<Vec<Rational>, PlfError> {
        self.check_interval(a, b)?;
        let mut out: Vec<Rational> = Vec::new();
        for i in 0..self.breakpoints.len() - 1 {
            let lo = &self.breakpoints[i].0;
            let hi = &self.breakpoints[i + 1].0;
            if hi > a && lo < b {
                let s = self.segment_slope(i);
                if out.last() != Some(&s) {
                    out.push(s);
                }
            }
        }
        Ok(out)
    }

    /// If the restriction to `[a, b]` is a single line, its
    /// `(intercept, slope)`.
    pub fn linear_on(
        &self,
        a: &Rational,
        b: &Rational,
    ) -> Result<Option<(Rational, Rational)>, PlfError> {
        let slopes = self.slopes_on(a, b)?;
        if slopes.len() != 1 {
            return Ok(None);
        }
        let slope = slopes.into_iter().next().expect("one slope");
        let intercept = self.eval_unchecked(a) - &slope * a;
        Ok(Some((intercept, slope)))
    }

    /// Breakpoints of the restriction to `[a, b]`, including both ends.
    pub fn restrict(
        &self,
        a: &Rational,
        b: &Rational,
    ) -> Result<Vec<(Rational, Rational)>, PlfError> {
        self.check_interval(a, b)?;
        let mut out = vec![(a.clone(), self.eval_unchecked(a))];
        out.extend(
            self.breakpoints
                .iter()
                .filter(|(x, _)| x > a && x < b)
                .cloned(),
        );
        out.push((b.clone(), self.eval_unchecked(b)));
        Ok(out)
    }

    fn check_interval(&self, a: &Rational, b: &Rational) -> Result<(), PlfError> {
        for t in [a, b] {
            if t.is_negative() || *t > domain_end() {
                return Err(PlfError::OutOfDomain(t.clone()));
            }
        }
        if a >= b {
            return Err(PlfError::EmptyInterval(a.clone(), b.clone()));
        }
        Ok(())
    }

    /// `f(t) = f(2 - t)` at every breakpoint (and hence everywhere).
    pub fn is_symmetric_about_one(&self) -> bool {
        self.breakpoints
            .iter()
            .all(|(x, v)| self.eval_unchecked(&(domain_end() - x)) == *v)
    }
}

impl fmt::Display for PLFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .breakpoints
            .iter()
            .map(|(x, v)| format!("({x}, {v})"))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl fmt::Debug for PLFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
