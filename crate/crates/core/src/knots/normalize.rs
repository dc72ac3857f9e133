use super::KnotExpr;

/// Puts an expression into normal form.
///
/// Rules: `--x = x`, `rev(rev(x)) = x`, `rev(-x) = -rev(x)`, mirrors and
/// reverses of the unknot are the unknot, sums are flattened with unknot
/// summands dropped, `T(1,s)`, `T(r,1)` are the unknot, a `(1,s)` cable is
/// its companion, and `Wh-(x) = -Wh+(-x)`. Idempotent.
pub fn normalize(e: &KnotExpr) -> KnotExpr {
    match e {
        KnotExpr::Unknot => KnotExpr::Unknot,
        KnotExpr::Torus { r, s } => torus(*r, *s),
        KnotExpr::Cable { r, s, companion } => cable(*r, *s, normalize(companion)),
        KnotExpr::WhPlus(x) => KnotExpr::wh_plus(normalize(x)),
        KnotExpr::WhMinus(x) => neg(KnotExpr::wh_plus(neg(normalize(x)))),
        KnotExpr::Sum(items) => sum(items.iter().map(normalize)),
        KnotExpr::Neg(x) => neg(normalize(x)),
        KnotExpr::Rev(x) => rev(normalize(x)),
    }
}

fn torus(r: i64, s: i64) -> KnotExpr {
    if r == 1 || s == 1 {
        KnotExpr::Unknot
    } else {
        KnotExpr::Torus { r, s }
    }
}

fn cable(r: i64, s: i64, companion: KnotExpr) -> KnotExpr {
    if r == 1 {
        companion
    } else {
        KnotExpr::Cable {
            r,
            s,
            companion: Box::new(companion),
        }
    }
}

// The helpers below assume normalized arguments.

fn neg(x: KnotExpr) -> KnotExpr {
    match x {
        KnotExpr::Unknot => KnotExpr::Unknot,
        KnotExpr::Neg(inner) => *inner,
        other => KnotExpr::neg(other),
    }
}

fn rev(x: KnotExpr) -> KnotExpr {
    match x {
        KnotExpr::Unknot => KnotExpr::Unknot,
        KnotExpr::Rev(inner) => *inner,
        KnotExpr::Neg(inner) => neg(rev(*inner)),
        other => KnotExpr::rev(other),
    }
}

fn sum(items: impl Iterator<Item = KnotExpr>) -> KnotExpr {
    let mut flat = Vec::new();
    for item in items {
        match item {
            KnotExpr::Unknot => {}
            KnotExpr::Sum(inner) => flat.extend(inner),
            other => flat.push(other),
        }
    }
    match flat.len() {
        0 => KnotExpr::Unknot,
        1 => flat.pop().expect("one summand"),
        _ => KnotExpr::Sum(flat),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knots::strategies::arb_expr;
    use proptest::prelude::*;

    fn t(r: i64, s: i64) -> KnotExpr {
        KnotExpr::Torus { r, s }
    }

    #[test]
    fn double_mirror_cancels() {
        let e = KnotExpr::neg(KnotExpr::neg(t(2, 3)));
        assert_eq!(normalize(&e), t(2, 3));
    }

    #[test]
    fn negative_whitehead_rewrite() {
        let e = KnotExpr::wh_minus(KnotExpr::neg(t(2, 3)));
        assert_eq!(normalize(&e), KnotExpr::neg(KnotExpr::wh_plus(t(2, 3))));
    }

    #[test]
    fn trivial_torus_and_cable() {
        assert_eq!(normalize(&t(1, 7)), KnotExpr::Unknot);
        assert_eq!(normalize(&t(5, 1)), KnotExpr::Unknot);
        let c = KnotExpr::Cable {
            r: 1,
            s: 9,
            companion: Box::new(t(2, 5)),
        };
        assert_eq!(normalize(&c), t(2, 5));
    }

    #[test]
    fn sums_flatten_and_drop_unknots() {
        let e = KnotExpr::Sum(vec![
            t(2, 3),
            KnotExpr::Unknot,
            KnotExpr::Sum(vec![t(2, 5), KnotExpr::neg(KnotExpr::Unknot)]),
        ]);
        assert_eq!(normalize(&e), KnotExpr::Sum(vec![t(2, 3), t(2, 5)]));
        let e = KnotExpr::Sum(vec![KnotExpr::Unknot, t(1, 4)]);
        assert_eq!(normalize(&e), KnotExpr::Unknot);
    }

    #[test]
    fn reverse_sits_inside_mirror() {
        let e = KnotExpr::rev(KnotExpr::neg(t(2, 3)));
        assert_eq!(normalize(&e), KnotExpr::neg(KnotExpr::rev(t(2, 3))));
        let e = KnotExpr::neg(KnotExpr::rev(KnotExpr::neg(KnotExpr::rev(t(2, 3)))));
        assert_eq!(normalize(&e), t(2, 3));
    }

    fn torus_multiset_without_trivial(e: &KnotExpr) -> Vec<(i64, i64)> {
        let mut v: Vec<_> = e
            .torus_leaves()
            .into_iter()
            .filter(|(r, s)| *r != 1 && *s != 1)
            .collect();
        v.sort();
        v
    }

    fn has_cable_r1(e: &KnotExpr) -> bool {
        match e {
            KnotExpr::Unknot | KnotExpr::Torus { .. } => false,
            KnotExpr::Cable { r, companion, .. } => *r == 1 || has_cable_r1(companion),
            KnotExpr::WhPlus(x) | KnotExpr::WhMinus(x) | KnotExpr::Neg(x) | KnotExpr::Rev(x) => {
                has_cable_r1(x)
            }
            KnotExpr::Sum(items) => items.iter().any(has_cable_r1),
        }
    }

    proptest! {
        #[test]
        fn idempotent(e in arb_expr()) {
            let n = normalize(&e);
            prop_assert_eq!(normalize(&n), n);
        }

        #[test]
        fn torus_leaves_preserved(e in arb_expr()) {
            // only trivial torus leaves may disappear
            prop_assert_eq!(
                torus_multiset_without_trivial(&normalize(&e)),
                torus_multiset_without_trivial(&e)
            );
        }

        #[test]
        fn no_negative_whitehead_survives(e in arb_expr()) {
            let n = normalize(&e);
            prop_assert!(!n.render().contains("Wh-"));
            prop_assert!(!has_cable_r1(&n));
        }
    }
}
