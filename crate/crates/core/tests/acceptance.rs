//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_integer::Integer;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use knotcert::classical::{alexander, tau, Eval};
use knotcert::cover::{
    lift, lift_component_count, permutation_component_count, Family, LensSpace, PatternKnot,
};
use knotcert::exec::Execution;
use knotcert::knots::{parse, KnotExpr, LinkExpr};
use knotcert::obstruct::{lens_generic, topological, topological_sweep, Witness};
use knotcert::signature::{braid_seifert_matrix, sigma_at, sigma_oracle, torus_jumps};
use knotcert::upsilon::{lspace_certify, nu_plus_rewrite, upsilon};
use knotcert::{LaurentPoly, PLFunction, Rational};

type Outcome = Result<String, String>;

fn k(s: &str) -> KnotExpr {
    parse(s).unwrap_or_else(|e| panic!("parse {s}: {e}"))
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ups(e: &KnotExpr) -> Result<PLFunction, String> {
    match upsilon(e).map_err(|e| e.to_string())? {
        Eval::Value { value, .. } => Ok(value),
        Eval::Unknown { reason } => Err(format!("Υ({e}) unknown: {reason}")),
    }
}

fn tau_of(e: &KnotExpr) -> Result<i64, String> {
    tau(e)
        .value()
        .copied()
        .ok_or_else(|| format!("τ({e}) unknown"))
}

fn criterion_1() -> Outcome {
    let signs = [0, 1, 3, 4, 6, 7, 9, 10, 11, 13, 14, 16, 17, 19, 20];
    let expected = LaurentPoly::from_terms(
        signs
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, if i % 2 == 0 { 1 } else { -1 })),
    );
    let got = alexander(&k("T(3,11)"));
    let got = got.value().ok_or("Δ(T(3,11)) unknown")?;
    ensure(got.equals_up_to_units(&expected), || format!("got {got}"))?;
    ensure(got.num_terms() == 15, || {
        format!("{} terms", got.num_terms())
    })?;
    Ok(format!("Δ = {got}"))
}

fn criterion_2() -> Outcome {
    let t311 = ups(&k("T(3,11)"))?;
    let line = t311
        .linear_on(&q(0, 1), &q(2, 3))
        .map_err(|e| e.to_string())?;
    ensure(line == Some((q(0, 1), q(-10, 1))), || {
        format!("Υ_T(3,11) on [0,2/3]: {line:?}")
    })?;
    let cable = ups(&k("cable(3,11; 2*Wh+(T(2,3)))"))?;
    let line = cable
        .linear_on(&q(2, 5), &q(1, 1))
        .map_err(|e| e.to_string())?;
    ensure(line == Some((q(-4, 1), q(-5, 1))), || {
        format!("cable on [2/5,1]: {line:?}")
    })?;
    let diff = ups(&k("cable(3,11; 2*Wh+(T(2,3))) # -T(3,11)"))?;
    let slopes = diff
        .slopes_on(&q(2, 5), &q(2, 3))
        .map_err(|e| e.to_string())?;
    ensure(slopes == vec![q(5, 1)], || {
        format!("difference slopes {slopes:?}")
    })?;
    Ok("-10t on [0,2/3]; -4-5t on [2/5,1]; slope 5 on (2/5,2/3)".into())
}

fn criterion_3() -> Outcome {
    ensure(tau_of(&k("T(2,3)"))? == 1, || "τ(T(2,3))".into())?;
    for n in 1..=5 {
        let e = k(&format!("{n}*Wh+(T(2,3))"));
        let t = tau_of(&e)?;
        ensure(t == n, || format!("τ({e}) = {t}"))?;
    }
    let t = tau_of(&k("Wh-(-T(2,3))"))?;
    ensure(t == -1, || format!("τ(Wh-(-T(2,3))) = {t}"))?;
    Ok("τ(T(2,3)) = 1, τ(n·D) = n for n ≤ 5, τ(Wh-(-T(2,3))) = -1".into())
}

fn verdicts(c: &knotcert::obstruct::Certificate) -> Vec<bool> {
    match &c.witness {
        Witness::Congruence { pairs, .. } => pairs.iter().map(|p| p.distinguished).collect(),
        w => panic!("unexpected witness {w:?}"),
    }
}

fn criterion_4() -> Outcome {
    let mut jobs = Vec::new();
    for p in 2..=50i64 {
        for qq in (1..p).filter(|qq| p.gcd(qq) == 1) {
            for l in (1..p).filter(|l| 2 * l != p) {
                jobs.push((p, qq, l));
            }
        }
    }
    let count = jobs.len();
    let results = Execution::default().map(jobs, |(p, qq, l)| {
        let c = lens_generic(p, qq, l).map_err(|e| format!("L({p},{qq}) ℓ={l}: {e}"))?;
        let v = verdicts(&c);
        let expected = vec![p % l != 0, p % (p - l) != 0];
        ensure(v == expected, || {
            format!("L({p},{qq}) ℓ={l}: {v:?} vs divisibility {expected:?}")
        })?;
        ensure(v.iter().any(|x| *x), || {
            format!("L({p},{qq}) ℓ={l}: no pair distinguished")
        })
    });
    results.into_iter().collect::<Result<Vec<()>, String>>()?;
    let c = lens_generic(5, 1, 2).map_err(|e| e.to_string())?;
    ensure(verdicts(&c) == vec![true, true], || "L(5,1) ℓ=2".into())?;
    c.replay().map_err(|e| e.to_string())?;
    let c = lens_generic(6, 1, 2).map_err(|e| e.to_string())?;
    ensure(verdicts(&c) == vec![false, true], || "L(6,1) ℓ=2".into())?;
    c.replay().map_err(|e| e.to_string())?;
    Ok(format!(
        "{count} (p,q,ℓ) triples, each with a distinguished pair"
    ))
}

fn criterion_5() -> Outcome {
    let mut pairs = Vec::new();
    for r in 2..=7i64 {
        for s in (r + 1..=60 / r).filter(|s| r.gcd(s) == 1) {
            pairs.push((r, s));
        }
    }
    let n = pairs.len();
    let results = Execution::default().map(pairs, |(r, s)| -> Result<usize, String> {
        let v = braid_seifert_matrix(r, s).map_err(|e| format!("T({r},{s}): {e}"))?;
        let spectrum = torus_jumps(r, s).map_err(|e| e.to_string())?;
        let mids = spectrum.midpoints();
        for t in &mids {
            let lith = sigma_at(&spectrum, t).map_err(|e| e.to_string())?;
            let oracle = sigma_oracle(&v, t).map_err(|e| format!("T({r},{s}) at {t}: {e}"))?;
            ensure(lith == oracle, || {
                format!("T({r},{s}) at {t}: Litherland {lith}, oracle {oracle}")
            })?;
        }
        Ok(mids.len())
    });
    let points: usize = results
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .sum();
    Ok(format!(
        "{n} torus knots, {points} midpoints, all Seifert self-checks passed"
    ))
}

fn criterion_6() -> Outcome {
    let mut checked = 0;
    for p in 2..=20i64 {
        for qq in (1..p).filter(|qq| p.gcd(qq) == 1) {
            for l in (1..p).filter(|l| p % l != 0) {
                for n in (1..=10).filter(|n| l.gcd(n) == 1) {
                    let d = l.gcd(&p);
                    let m = p * n + l * qq;
                    let pk = PatternKnot::new(
                        LensSpace::new(p, qq).unwrap(),
                        Family::Torus { l, n },
                        KnotExpr::Unknot,
                    )
                    .map_err(|e| e.to_string())?;
                    let desc = lift(&pk).map_err(|e| e.to_string())?;
                    ensure(
                        desc.components[0] == KnotExpr::Torus { r: l / d, s: m / d },
                        || {
                            format!(
                                "lift of (p,q,ℓ,n)=({p},{qq},{l},{n}) is {}",
                                desc.components[0]
                            )
                        },
                    )?;
                    let spectrum = torus_jumps(l / d, m / d).map_err(|e| e.to_string())?;
                    let first = spectrum.first().ok_or("empty spectrum")?;
                    let formula = q(d * d, l * m);
                    ensure(first.t == formula && first.jump == -2, || {
                        format!(
                            "({p},{qq},{l},{n}): first jump {} at {}, formula {formula}",
                            first.jump, first.t
                        )
                    })?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} parameter tuples"))
}

fn criterion_7() -> Outcome {
    let certs = topological_sweep(3, 1, 2, 20, Execution::default());
    let n = certs.len();
    ensure(n == 45, || format!("expected 45 odd pairs, got {n}"))?;
    for c in certs {
        let c = c.map_err(|e| e.to_string())?;
        ensure(c.is_distinguished(), || format!("{:?} inconclusive", c.job))?;
        c.replay().map_err(|e| format!("{:?}: {e}", c.job))?;
        let back =
            knotcert::obstruct::Certificate::from_json(&c.to_json()).map_err(|e| e.to_string())?;
        back.replay().map_err(|e| e.to_string())?;
    }
    Ok(format!("{n} pairs distinguished and replayed"))
}

fn runner() -> TestRunner {
    TestRunner::new(Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    })
}

fn coprime(lo: i64, hi: i64) -> impl Strategy<Value = (i64, i64)> {
    (lo..hi, lo..3 * hi).prop_filter("coprime", |(r, s)| r.gcd(s) == 1)
}

/// Positive torus knots and cables satisfying the L-space cable bound.
fn arb_lspace() -> impl Strategy<Value = KnotExpr> {
    let torus = coprime(2, 6).prop_map(|(r, s)| KnotExpr::Torus { r, s });
    let cable = (coprime(2, 4), 2i64..4, 0i64..6).prop_filter_map("cable", |((a, b), r, extra)| {
        let g = (a - 1) * (b - 1) / 2;
        let s = r * (2 * g - 1) + extra;
        (s.gcd(&r) == 1).then(|| KnotExpr::Cable {
            r,
            s,
            companion: Box::new(KnotExpr::Torus { r: a, s: b }),
        })
    });
    prop_oneof![3 => torus, 2 => cable, 1 => Just(k("cable(3,11; 2*Wh+(T(2,3)))"))]
}

fn arb_lspace_combination() -> impl Strategy<Value = KnotExpr> {
    prop::collection::vec((arb_lspace(), any::<bool>()), 1..4).prop_map(|items| {
        KnotExpr::Sum(
            items
                .into_iter()
                .map(|(e, neg)| if neg { KnotExpr::neg(e) } else { e })
                .collect(),
        )
    })
}

fn arb_expr() -> impl Strategy<Value = KnotExpr> {
    let leaf = prop_oneof![
        Just(KnotExpr::Unknot),
        coprime(2, 6).prop_map(|(r, s)| KnotExpr::Torus { r, s }),
    ];
    leaf.prop_recursive(4, 16, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(KnotExpr::wh_plus),
            inner.clone().prop_map(KnotExpr::wh_minus),
            inner.clone().prop_map(KnotExpr::neg),
            inner.clone().prop_map(KnotExpr::rev),
            prop::collection::vec(inner.clone(), 2..4).prop_map(KnotExpr::Sum),
            (coprime(2, 5), inner).prop_map(|((r, s), e)| KnotExpr::Cable {
                r,
                s,
                companion: Box::new(e)
            }),
        ]
    })
}

fn suite<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<String, String> {
    runner()
        .run(&strategy, test)
        .map(|_| name.to_string())
        .map_err(|e| format!("{name}: {e}"))
}

fn criterion_8() -> Outcome {
    let mut done = Vec::new();
    done.push(suite(
        "Υ symmetry and ends",
        arb_lspace_combination(),
        |e| {
            if let KnotExpr::Sum(items) = &e {
                for item in items {
                    let base = match item {
                        KnotExpr::Neg(x) => &**x,
                        x => x,
                    };
                    let base = nu_plus_rewrite(base);
                    prop_assert!(lspace_certify(&base).is_proven(), "{base} not certified");
                }
            }
            let f = ups(&e).map_err(TestCaseError::fail)?;
            prop_assert!(f.is_symmetric_about_one());
            prop_assert_eq!(f.eval(&q(0, 1)).unwrap(), q(0, 1));
            prop_assert_eq!(f.eval(&q(2, 1)).unwrap(), q(0, 1));
            Ok(())
        },
    )?);
    done.push(suite("Υ integer slopes", arb_lspace_combination(), |e| {
        let f = ups(&e).map_err(TestCaseError::fail)?;
        for s in f.slopes_on(&q(0, 1), &q(2, 1)).unwrap() {
            prop_assert!(s.is_integer(), "slope {s} of Υ({e})");
        }
        Ok(())
    })?);
    done.push(suite(
        "τ additivity and negation",
        (arb_expr(), arb_expr()),
        |(a, b)| {
            if let (Some(ta), Some(tb)) = (tau(&a).value().copied(), tau(&b).value().copied()) {
                let sum = tau(&KnotExpr::Sum(vec![a.clone(), b]));
                prop_assert_eq!(sum.value().copied(), Some(ta + tb));
                prop_assert_eq!(tau(&KnotExpr::neg(a)).value().copied(), Some(-ta));
            }
            Ok(())
        },
    )?);
    done.push(suite("Δ(1) = ±1 and palindromic", arb_expr(), |e| {
        if let Some(p) = alexander(&e).value() {
            let at_one = p.eval_at_one();
            prop_assert!(
                at_one == 1.into() || at_one == (-1).into(),
                "Δ({e})(1) = {at_one}"
            );
            prop_assert!(p.is_palindromic(), "Δ({e}) = {p}");
        }
        Ok(())
    })?);
    done.push(suite(
        "jump antisymmetry and zero total",
        coprime(2, 16),
        |(r, s)| {
            let spectrum = torus_jumps(r, s).unwrap();
            prop_assert!(spectrum.is_antisymmetric());
            prop_assert_eq!(spectrum.total(), 0);
            Ok(())
        },
    )?);
    done.push(suite(
        "gcd vs permutation power",
        (1i64..=60, 1i64..=60),
        |(l, p)| {
            prop_assert_eq!(
                permutation_component_count(l, p) as i64,
                lift_component_count(l, p)
            );
            Ok(())
        },
    )?);
    Ok(format!(
        "{} suites x 1000 cases: {}",
        done.len(),
        done.join(", ")
    ))
}

fn criterion_9() -> Outcome {
    // The lattice-point rule at N = rs - 1: the trefoil's +2 jump at 5/6.
    let spectrum = torus_jumps(2, 3).map_err(|e| e.to_string())?;
    let last = spectrum.entries.last().ok_or("empty trefoil spectrum")?;
    ensure(last.t == q(5, 6) && last.jump == 2, || {
        format!("last trefoil jump {last:?}")
    })?;
    let v = braid_seifert_matrix(2, 3).map_err(|e| e.to_string())?;
    let before = sigma_oracle(&v, &q(3, 4)).map_err(|e| e.to_string())?;
    let after = sigma_oracle(&v, &q(11, 12)).map_err(|e| e.to_string())?;
    ensure(after - before == 2, || {
        format!("oracle jump at 5/6 is {}", after - before)
    })?;

    // The torus-family covering link is T(ℓ, pn + ℓq), not T(ℓ, pn).
    let mut checked = 0;
    for (p, qq, l, n, n2) in [
        (3, 1, 2, 1, 3),
        (3, 2, 2, 1, 3),
        (5, 2, 3, 1, 2),
        (7, 2, 3, 1, 2),
        (5, 1, 2, 1, 3),
    ] {
        let pk = PatternKnot::new(
            LensSpace::new(p, qq).unwrap(),
            Family::Torus { l, n },
            KnotExpr::Unknot,
        )
        .map_err(|e| e.to_string())?;
        let desc = lift(&pk).map_err(|e| e.to_string())?;
        let link = desc.link.clone().ok_or("no covering link")?;
        ensure(
            link == LinkExpr::TorusLink {
                l,
                m: p * n + l * qq,
            },
            || format!("link {link:?}"),
        )?;
        ensure(link.components() == desc.components, || {
            "link components vs component formula".into()
        })?;
        ensure(desc.notes.iter().any(|s| s.contains("pn + ℓq")), || {
            "trace note missing".into()
        })?;
        let unshifted = LinkExpr::TorusLink { l, m: p * n }.components();
        ensure(unshifted != desc.components, || {
            "T(ℓ, pn) would give the same components".into()
        })?;
        let cert = topological(p, qq, l, n, n2).map_err(|e| e.to_string())?;
        knotcert::obstruct::oracle_cross_check(&cert).map_err(|e| e.to_string())?;
        checked += 1;
    }
    Ok(format!(
        "trefoil jump +2 at 5/6 confirmed by oracle; {checked} torus-family lifts confirmed by oracle"
    ))
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, &str, fn() -> Outcome); 9] = [
        (1, "Alexander regression T(3,11)", "exact", criterion_1),
        (
            2,
            "Υ staircase claims",
            "exact rational PL equality",
            criterion_2,
        ),
        (3, "τ rules", "exact", criterion_3),
        (
            4,
            "Van Cott congruence engine, p ≤ 50",
            "exact divisibility",
            criterion_4,
        ),
        (
            5,
            "signature oracle equivalence, rs ≤ 60",
            "exact, certified-sign",
            criterion_5,
        ),
        (
            6,
            "first-jump formula, p ≤ 20, n ≤ 10",
            "exact",
            criterion_6,
        ),
        (
            7,
            "torus-family sweep in L(3,1), ℓ = 2, n ≤ 20",
            "exact, replayed",
            criterion_7,
        ),
        (8, "property suites", "≥ 1000 cases each", criterion_8),
        (9, "gap regressions", "exact, oracle-confirmed", criterion_9),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, name, tolerance, run) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!(
                "criterion {n}: PASS [{name}] tolerance: {tolerance} ({secs:.1}s) {detail}"
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "criterion {n}: FAIL [{name}] tolerance: {tolerance} ({secs:.1}s) {detail}"
                );
            }
        }
    }
    if failed == 0 {
        println!("acceptance: 9/9 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 9 criteria failed");
        ExitCode::FAILURE
    }
}
