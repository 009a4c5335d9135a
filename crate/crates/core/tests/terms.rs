use emkit_core::expr::{eval, parse, Environment, EvalErrorKind, Term};
use emkit_core::models::{BooleanModel, DirectSumModel};
use emkit_core::{Cx, EffectAlgebra, Interval};
use proptest::prelude::*;

const NAMES: [&str; 4] = ["a", "b", "x1", "y_2"];

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        proptest::sample::select(NAMES.to_vec()).prop_map(Term::var),
        Just(Term::Zero),
        Just(Term::One),
    ];
    leaf.prop_recursive(5, 64, 2, |inner| {
        let b = || inner.clone().prop_map(Box::new);
        prop_oneof![
            (b(), b()).prop_map(|(t, u)| Term::Sum(t, u)),
            (b(), b()).prop_map(|(t, u)| Term::Ominus(t, u)),
            (b(), b()).prop_map(|(t, u)| Term::Product(t, u)),
            b().prop_map(Term::Complement),
            b().prop_map(Term::Floor),
            b().prop_map(Term::Ceil),
            (b(), b()).prop_map(|(t, u)| Term::Div(t, u)),
            (b(), b()).prop_map(|(t, u)| Term::Meet(t, u)),
            (b(), b()).prop_map(|(t, u)| Term::Join(t, u)),
            (b(), 0u64..40).prop_map(|(t, k)| Term::Nfold(t, k)),
            (0.0f64..=1.0, b()).prop_map(|(r, t)| Term::Scalar(r, t)),
        ]
    })
}

fn unit() -> impl Strategy<Value = f64> {
    (0u32..=100).prop_map(|k| k as f64 / 100.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn printing_then_parsing_is_the_identity(t in term()) {
        prop_assert!(t.depth() <= 6);
        let text = t.to_string();
        prop_assert_eq!(parse(&text).unwrap(), t, "{}", text);
    }

    #[test]
    fn evaluation_on_a_direct_sum_is_componentwise(
        t in term(),
        left in proptest::collection::vec(unit(), 4),
        right in proptest::collection::vec(proptest::collection::vec(unit(), 2), 4),
    ) {
        let l = Interval::new();
        let r = Cx::new(2);
        let m = DirectSumModel::new(l.clone(), r.clone());
        let env_l: Environment<f64> = NAMES.iter().copied().zip(left.iter().copied()).collect();
        let env_r: Environment<Vec<f64>> = NAMES.iter().copied().zip(right.iter().cloned()).collect();
        let env: Environment<(f64, Vec<f64>)> = NAMES
            .iter()
            .copied()
            .zip(left.iter().copied().zip(right.iter().cloned()))
            .collect();
        let whole = eval(&t, &env, &m);
        let parts = (eval(&t, &env_l, &l), eval(&t, &env_r, &r));
        match (whole, parts) {
            (Ok(w), (Ok(a), Ok(b))) => {
                prop_assert!(m.approx_eq(&w, &(a.clone(), b.clone())), "{} gave {:?} vs {:?}", t, w, (a, b));
            }
            (Err(_), (Err(_), _)) | (Err(_), (_, Err(_))) => {}
            (w, p) => prop_assert!(false, "{}: {:?} vs {:?}", t, w, p),
        }
    }

    #[test]
    fn boolean_component_is_projected(t in term(), bits in proptest::collection::vec(0u64..4, 4)) {
        let l = BooleanModel::new(2).unwrap();
        let m = DirectSumModel::new(l.clone(), Interval::new());
        let env_l: Environment<u64> = NAMES.iter().copied().zip(bits.iter().copied()).collect();
        let env: Environment<(u64, f64)> = NAMES.iter().copied().zip(bits.iter().map(|b| (*b, 0.5))).collect();
        let whole = eval(&t, &env, &m);
        let left = eval(&t, &env_l, &l);
        match (&whole, &left) {
            (Ok(w), Ok(a)) => prop_assert_eq!(&w.0, a),
            (Err(_), _) => {}
            (Ok(_), Err(e)) => prop_assert!(false, "{}: component failed with {}", t, e),
        }
    }
}

#[test]
fn deeply_nested_parentheses_parse() {
    let mut text = String::from("a");
    for _ in 0..200 {
        text = format!("({text})'");
    }
    let t = parse(&text).unwrap();
    assert_eq!(t.depth(), 201);
    assert_eq!(parse(&t.to_string()).unwrap(), t);
}

#[test]
fn scalars_need_a_half() {
    let m = DirectSumModel::new(BooleanModel::new(1).unwrap(), Interval::new());
    let env: Environment<(u64, f64)> = [("a", (1u64, 0.5))].into_iter().collect();
    let e = eval(&parse("a * scalar(0.5, a)").unwrap(), &env, &m).unwrap_err();
    assert_eq!(e.kind, EvalErrorKind::NoHalf);
    assert_eq!(e.path.to_string(), "root.1");
}
