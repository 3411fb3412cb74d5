use proptest::prelude::*;

use ggwb_core::calculus::{d_scalar, ext_d, lie_bracket, lie_derivative, Chart, ChartRef, EndoTM, Mat, OneForm, TwoForm, VectorField};
use ggwb_core::courant::{anomaly_defect, courant_bracket, pairing, BigSection};
use ggwb_core::symexpr::{canon, is_zero, parse, parse_node, Coeff, Node, ScalarExpr, Verdict, ZeroPolicy};

fn r3() -> ChartRef {
    Chart::new("R3", &["x", "y", "z"]).unwrap()
}

/// Polynomials in x, y, z with an optional exp(x) factor on one term.
fn expr() -> impl Strategy<Value = ScalarExpr> {
    let term = (-5i64..=5, 0usize..3, 0usize..3, 0u32..3, any::<bool>());
    prop::collection::vec(term, 1..4).prop_map(|terms| {
        let c = r3();
        terms
            .into_iter()
            .map(|(k, i, j, deg, e)| {
                let mut t = ScalarExpr::int(k);
                for _ in 0..deg {
                    t = t * c.coord(i);
                }
                if e {
                    t = t * ScalarExpr::exp(&c.coord(j));
                }
                t
            })
            .sum()
    })
}

fn poly() -> impl Strategy<Value = ScalarExpr> {
    let term = (-5i64..=5, 0usize..3, 0usize..3);
    prop::collection::vec(term, 1..4).prop_map(|terms| {
        let c = r3();
        terms.into_iter().map(|(k, i, j)| ScalarExpr::int(k) * c.coord(i) * c.coord(j) + c.coord(j)).sum()
    })
}

fn vector() -> impl Strategy<Value = VectorField> {
    prop::collection::vec(expr(), 3).prop_map(|v| VectorField::new(&r3(), v).unwrap())
}

fn section() -> impl Strategy<Value = BigSection> {
    prop::collection::vec(poly(), 6).prop_map(|v| BigSection::from_components(&r3(), &v).unwrap())
}

fn zero_vec(v: &[ScalarExpr]) -> bool {
    v.iter().all(ScalarExpr::is_zero)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_laws(a in expr(), b in expr(), c in expr()) {
        prop_assert_eq!((&a + &b) * &c, &a * &c + &b * &c);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn display_round_trips(a in expr()) {
        prop_assert_eq!(parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn division_cancels(a in expr(), b in poly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).checked_div(&b).unwrap(), a);
    }

    #[test]
    fn leibniz(a in expr(), b in expr()) {
        let lhs = (&a * &b).diff("x");
        prop_assert_eq!(lhs, a.diff("x") * &b + &a * b.diff("x"));
    }

    #[test]
    fn d_squared_vanishes(f in expr(), w in prop::collection::vec(expr(), 3)) {
        let c = r3();
        prop_assert!(ext_d(&d_scalar(&c, &f)).is_syntactically_zero());
        let a = OneForm::new(&c, w).unwrap();
        prop_assert!(ext_d(&ext_d(&a)).is_syntactically_zero());
    }

    #[test]
    fn lie_bracket_jacobi(x in vector(), y in vector(), z in vector()) {
        let br = |a: &VectorField, b: &VectorField| lie_bracket(a, b).unwrap();
        prop_assert!(br(&x, &y).add(&br(&y, &x)).is_syntactically_zero());
        let j = br(&x, &br(&y, &z)).add(&br(&y, &br(&z, &x))).add(&br(&z, &br(&x, &y)));
        prop_assert!(j.is_syntactically_zero());
    }

    #[test]
    fn courant_anomaly(x in section(), y in section(), f in poly()) {
        prop_assert!(zero_vec(&anomaly_defect(&x, &y, &f).unwrap().components()));
        let s = courant_bracket(&x, &y).unwrap().add(&courant_bracket(&y, &x).unwrap());
        prop_assert!(zero_vec(&s.components()));
        prop_assert_eq!(pairing(&x, &y).unwrap(), pairing(&y, &x).unwrap());
    }

    #[test]
    fn zero_test_is_deterministic(a in expr(), seed in any::<u64>()) {
        let pol = ZeroPolicy { seed, ..ZeroPolicy::default() };
        let v1 = is_zero(&a, &pol, "a").unwrap();
        let v2 = is_zero(&a, &pol, "a").unwrap();
        prop_assert_eq!(&v1, &v2);
        prop_assert_eq!(v1.holds(), a.is_zero());
    }

    #[test]
    fn nonzero_witness_is_rational(a in poly()) {
        prop_assume!(!a.is_zero());
        let v = is_zero(&a, &ZeroPolicy::default(), "a").unwrap();
        let w = v.witness().expect("nonzero polynomial fails");
        for val in w.point.values() {
            prop_assert!(val.chars().all(|ch| ch.is_ascii_digit() || ch == '-' || ch == '/'));
        }
    }

    #[test]
    fn verdict_all_is_weakest(flags in prop::collection::vec(0u8..3, 0..6)) {
        let vs: Vec<Verdict> = flags
            .iter()
            .map(|f| match f {
                0 => Verdict::Proved,
                1 => Verdict::NumericallySupported,
                _ => ggwb_core::verify::failed("x", "1"),
            })
            .collect();
        let all = Verdict::all(vs.clone());
        let worst = flags.iter().copied().max().unwrap_or(0);
        prop_assert_eq!(all.label(), ["Proved", "NumericallySupported", "Failed"][worst as usize]);
    }

    #[test]
    fn endo_two_form_pairing(m in prop::collection::vec(poly(), 9)) {
        let c = r3();
        let a = Mat::from_fn(3, 3, |i, j| m[3 * i + j].clone());
        let skew = a.sub(&a.transpose());
        let w = TwoForm::new(&c, skew).unwrap();
        let f = EndoTM::new(&c, a).unwrap();
        let x = VectorField::basis(&c, 0);
        let y = VectorField::basis(&c, 1);
        prop_assert_eq!(w.eval(&x, &y), w.eval(&y, &x).neg());
        prop_assert_eq!(f.apply(&x).comps()[1].clone(), f.matrix()[(1, 0)].clone());
    }
}

fn node() -> impl Strategy<Value = Node> {
    let leaf = prop_oneof![
        (-4i64..=4).prop_map(|k| Node::Const(Coeff::from_int(k))),
        prop::sample::select(vec!["x", "y", "z"]).prop_map(|s| Node::Sym(s.into())),
    ];
    leaf.prop_recursive(8, 24, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(Node::Add),
            prop::collection::vec(inner.clone(), 2..3).prop_map(Node::Mul),
            inner.clone().prop_map(|n| Node::Neg(Box::new(n))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Node::Div(Box::new(a), Box::new(b))),
            (inner.clone(), 0i32..3).prop_map(|(a, e)| Node::Pow(Box::new(a), e)),
            prop::sample::select(vec!["x", "y"]).prop_map(|s| Node::Exp(Box::new(Node::Sym(s.into())))),
            inner.prop_map(|n| Node::Sin(Box::new(n))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn canon_is_idempotent(n in node()) {
        if let Ok(e) = canon(&n) {
            let again = canon(&parse_node(&e.to_string()).unwrap()).unwrap();
            prop_assert_eq!(again, e);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cartan_formula(x in vector(), w in prop::collection::vec(poly(), 3)) {
        let c = r3();
        let a = OneForm::new(&c, w).unwrap();
        let lhs = lie_derivative(&x, &a).unwrap();
        let rhs = ext_d(&a).interior(&x).add(&d_scalar(&c, &a.eval(&x)));
        prop_assert!(lhs.sub(&rhs).is_syntactically_zero());
    }
}
