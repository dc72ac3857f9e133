//! Signature-jump engine for the torus family `K_{n,ℓ}`.

use num_integer::Integer;

use super::{
    distinguished, Certificate, Conclusion, Job, LiftSignature, ObstructError, ReplayError,
    TraceEntry, Witness,
};
use crate::algebra::Rational;
use crate::cover::{lift, Family, LensSpace, PatternKnot};
use crate::exec::Execution;
use crate::signature::{braid_seifert_matrix, sigma_at, sigma_oracle, torus_jumps};

const TOPOLOGICAL: &str = "torus-family-signature-jump";

/// Reported when `ℓ | p`.
pub const LEN_DIVIDES_P_NOTE: &str = "ℓ divides p, so every lift component is T(1, ·), an unknot with an empty \
     jump spectrum; the +2 first jump claimed for this branch does not exist and the separation argument is \
     vacuous here. Left open.";

/// `K_{n1,ℓ}` against `K_{n2,ℓ}` in `L(p,q)`.
///
/// The lifts are `T(ℓ/d, (pn+ℓq)/d)`. Just past the first jump of the
/// `n2` lift the two lift signatures differ by 2, which `(p/d)·σ(J)` cannot
/// absorb when `p/d > 1`.
pub fn topological(p: i64, q: i64, l: i64, n1: i64, n2: i64) -> Result<Certificate, ObstructError> {
    let space = LensSpace::new(p, q)?;
    if n1 < 1 || n1 >= n2 {
        return Err(ObstructError::FamilyConstraintViolated(format!(
            "need 1 ≤ n1 < n2, got n1 = {n1}, n2 = {n2}"
        )));
    }
    let job = Job::Topological { p, q, l, n1, n2 };
    let descs = [n1, n2]
        .into_iter()
        .map(|n| {
            Ok(lift(&PatternKnot::new(
                space,
                Family::Torus { l, n },
                crate::knots::KnotExpr::Unknot,
            )?)?)
        })
        .collect::<Result<Vec<_>, ObstructError>>()?;
    let mut trace: Vec<TraceEntry> = descs
        .iter()
        .flat_map(|d| d.notes.iter().map(TraceEntry::note))
        .collect();
    let d = l.gcd(&p);
    if d == l {
        trace.push(TraceEntry::note(LEN_DIVIDES_P_NOTE));
        return Ok(Certificate {
            job,
            proposition: TOPOLOGICAL.into(),
            conclusion: Conclusion::Inconclusive {
                reason: LEN_DIVIDES_P_NOTE.into(),
            },
            witness: Witness::Empty {
                note: LEN_DIVIDES_P_NOTE.into(),
            },
            trace,
        });
    }
    let r = l / d;
    let specs = [n1, n2]
        .into_iter()
        .map(|n| torus_jumps(r, (p * n + l * q) / d))
        .collect::<Result<Vec<_>, _>>()?;
    let first = |i: usize| {
        specs[i]
            .first()
            .expect("nontrivial torus knot has jumps")
            .clone()
    };
    let (j1, j2) = (first(0), first(1));
    let second_jump = specs[1].entries.get(1).map(|j| j.t.clone());
    let hi = match &second_jump {
        Some(t) if *t < j1.t => t.clone(),
        _ => j1.t.clone(),
    };
    let interval = (j2.t.clone(), hi);
    let t0 = interval.0.midpoint(&interval.1);
    let mut lifts = Vec::new();
    for (i, n) in [n1, n2].into_iter().enumerate() {
        let m = p * n + l * q;
        let sigma = sigma_at(&specs[i], &t0)?;
        let f = &specs[i].entries[0];
        trace.push(TraceEntry::note(format!(
            "T({r},{}): first jump {} at t = {}, σ(t0) = {sigma}",
            m / d,
            f.jump,
            f.t
        )));
        lifts.push(LiftSignature {
            n,
            knot: descs[i].components[0].clone(),
            r,
            s: m / d,
            first_jump: f.t.clone(),
            first_jump_value: f.jump,
            first_jump_formula: Rational::new(d * d, l * m),
            sigma_at_witness: sigma,
        });
    }
    let degree = p / d;
    let difference = lifts[1].sigma_at_witness - lifts[0].sigma_at_witness;
    let modulus = 2 * degree;
    trace.push(TraceEntry::note(format!(
        "t0 = {t0}: {degree}·σ(J) = {difference} with σ(J) even needs {modulus} | {difference}"
    )));
    let conclusion = if difference % modulus != 0 {
        distinguished(TOPOLOGICAL, false)
    } else {
        Conclusion::Inconclusive {
            reason: format!("{modulus} divides the signature difference {difference}"),
        }
    };
    Ok(Certificate {
        job,
        proposition: TOPOLOGICAL.into(),
        conclusion,
        witness: Witness::Signature {
            d,
            degree,
            lifts,
            second_jump,
            interval,
            t0,
            difference,
            modulus,
        },
        trace,
    })
}

/// All pairs `n1 < n2 ≤ n_max` with `gcd(ℓ, n) = 1`, in lexicographic order.
pub fn topological_sweep(
    p: i64,
    q: i64,
    l: i64,
    n_max: i64,
    exec: Execution,
) -> Vec<Result<Certificate, ObstructError>> {
    let ns: Vec<i64> = (1..=n_max).filter(|n| l.gcd(n) == 1).collect();
    let pairs: Vec<(i64, i64)> = ns
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| ns[i + 1..].iter().map(move |&b| (a, b)))
        .collect();
    exec.map(pairs, |(n1, n2)| topological(p, q, l, n1, n2))
}

/// Evaluates the Seifert-matrix signature oracle at the witness point of a
/// topological certificate and compares with the recorded values.
pub fn oracle_cross_check(cert: &Certificate) -> Result<(), ReplayError> {
    let Witness::Signature { lifts, t0, .. } = &cert.witness else {
        return Err(ReplayError::Mismatch("not a signature witness".into()));
    };
    for lift in lifts {
        let v = braid_seifert_matrix(lift.r, lift.s).map_err(ObstructError::from)?;
        let sigma = sigma_oracle(&v, t0).map_err(ObstructError::from)?;
        if sigma != lift.sigma_at_witness {
            return Err(ReplayError::Mismatch(format!(
                "oracle gives σ = {sigma} for T({},{}) at {t0}, certificate records {}",
                lift.r, lift.s, lift.sigma_at_witness
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knots::parse;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn witness(c: &Certificate) -> (&[LiftSignature], &(Rational, Rational), &Rational) {
        match &c.witness {
            Witness::Signature {
                lifts,
                interval,
                t0,
                ..
            } => (lifts, interval, t0),
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn l31_example() {
        let c = topological(3, 1, 2, 1, 3).unwrap();
        assert!(c.is_distinguished());
        let (lifts, interval, t0) = witness(&c);
        assert_eq!(lifts[0].knot, parse("T(2,5)").unwrap());
        assert_eq!(lifts[1].knot, parse("T(2,11)").unwrap());
        assert_eq!(lifts[0].first_jump, q(1, 10));
        assert_eq!(lifts[1].first_jump, q(1, 22));
        assert_eq!(interval, &(q(1, 22), q(1, 10)));
        assert_eq!(t0, &q(4, 55));
        assert_eq!(
            (lifts[0].sigma_at_witness, lifts[1].sigma_at_witness),
            (0, -2)
        );
        c.replay().unwrap();
        oracle_cross_check(&c).unwrap();
    }

    #[test]
    fn l52_example() {
        let c = topological(5, 2, 3, 1, 2).unwrap();
        assert!(c.is_distinguished());
        let (lifts, _, _) = witness(&c);
        assert_eq!(lifts[0].first_jump, q(1, 33));
        assert_eq!(lifts[1].first_jump, q(1, 48));
        for l in lifts {
            assert_eq!(l.first_jump, l.first_jump_formula);
        }
        oracle_cross_check(&c).unwrap();
    }

    #[test]
    fn l_divides_p_is_inconclusive() {
        let c = topological(4, 1, 2, 1, 3).unwrap();
        assert!(!c.is_distinguished());
        assert_eq!(
            c.conclusion,
            Conclusion::Inconclusive {
                reason: LEN_DIVIDES_P_NOTE.into()
            }
        );
        c.replay().unwrap();
    }

    #[test]
    fn constraint_errors() {
        assert!(matches!(
            topological(3, 1, 2, 2, 3),
            Err(ObstructError::Cover(_))
        ));
        assert!(matches!(
            topological(3, 1, 2, 3, 1),
            Err(ObstructError::FamilyConstraintViolated(_))
        ));
        assert!(topological(3, 1, 3, 1, 2).is_err());
        assert!(topological(4, 2, 1, 1, 2).is_err());
    }

    #[test]
    fn witness_intervals_decrease_in_n() {
        for (p, qq, l) in [(3, 1, 2), (5, 2, 3), (7, 3, 4)] {
            let cs: Vec<Certificate> = (2..=20)
                .filter(|n| Integer::gcd(&l, n) == 1)
                .map(|n| topological(p, qq, l, 1, n).unwrap())
                .collect();
            for w in cs.windows(2) {
                let (a, b) = (witness(&w[0]).1, witness(&w[1]).1);
                assert!(b.0 < a.0, "{:?} then {:?}", a, b);
            }
        }
    }

    #[test]
    fn sweep_orders_match() {
        let seq = topological_sweep(5, 2, 3, 8, Execution::Sequential);
        let par = topological_sweep(5, 2, 3, 8, Execution::Parallel);
        assert_eq!(seq, par);
        assert!(seq.iter().all(|c| c.as_ref().unwrap().is_distinguished()));
    }

    #[test]
    fn json_round_trip() {
        let c = topological(3, 1, 2, 1, 3).unwrap();
        let json = c.to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["engine"], "topological");
        assert_eq!(v["inputs"]["n2"], 3);
        assert_eq!(v["conclusion"]["verdict"], "distinguished");
        assert_eq!(v["witness"]["t0"], "4/55");
        let back = Certificate::from_json(&json).unwrap();
        assert_eq!(back, c);
        back.replay().unwrap();
    }

    #[test]
    fn tampered_certificate_fails_replay() {
        let mut c = topological(3, 1, 2, 1, 3).unwrap();
        if let Witness::Signature { t0, .. } = &mut c.witness {
            *t0 = q(1, 5);
        }
        assert!(c.replay().is_err());
    }
}
