use super::KnotExpr;

pub(super) fn render(e: &KnotExpr) -> String {
    match e {
        KnotExpr::Unknot => "U".to_string(),
        KnotExpr::Torus { r, s } => format!("T({r},{s})"),
        KnotExpr::Cable { r, s, companion } => format!("cable({r},{s}; {})", render(companion)),
        KnotExpr::WhPlus(x) => format!("Wh+({})", render(x)),
        KnotExpr::WhMinus(x) => format!("Wh-({})", render(x)),
        KnotExpr::Neg(x) => format!("-{}", atom(x)),
        KnotExpr::Rev(x) => format!("rev({})", atom(x)),
        KnotExpr::Sum(items) => {
            let mut parts = Vec::new();
            let mut i = 0;
            while i < items.len() {
                let run = items[i..].iter().take_while(|x| **x == items[i]).count();
                if run > 1 {
                    parts.push(format!("{run}*{}", atom(&items[i])));
                } else {
                    parts.push(term(&items[i]));
                }
                i += run;
            }
            parts.join(" # ")
        }
    }
}

fn term(e: &KnotExpr) -> String {
    match e {
        KnotExpr::Sum(_) => format!("({})", render(e)),
        _ => render(e),
    }
}

fn atom(e: &KnotExpr) -> String {
    match e {
        KnotExpr::Sum(_) | KnotExpr::Neg(_) => format!("({})", render(e)),
        _ => render(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knots::strategies::arb_expr;
    use crate::knots::{normalize, parse};
    use proptest::prelude::*;

    fn t(r: i64, s: i64) -> KnotExpr {
        KnotExpr::Torus { r, s }
    }

    #[test]
    fn examples() {
        assert_eq!(render(&KnotExpr::wh_plus(t(2, 3))), "Wh+(T(2,3))");
        assert_eq!(render(&KnotExpr::Sum(vec![t(2, 3), t(2, 3)])), "2*T(2,3)");
        assert_eq!(render(&KnotExpr::neg(t(3, 11))), "-T(3,11)");
        assert_eq!(
            render(&KnotExpr::Sum(vec![
                KnotExpr::neg(t(2, 3)),
                KnotExpr::neg(t(2, 3)),
                t(2, 5)
            ])),
            "2*(-T(2,3)) # T(2,5)"
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn parse_inverts_render_on_normal_forms(e in arb_expr()) {
            let n = normalize(&e);
            prop_assert_eq!(parse(&render(&n)).unwrap(), n);
        }
    }
}
