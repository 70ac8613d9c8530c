use num_rational::BigRational;
use proptest::prelude::*;
use rlenz::fock::{kernel_identity_residual, stereographic_forward, stereographic_inverse};
use rlenz::operators::{angular_momentum, hamiltonian_b, runge_lenz_a, runge_lenz_b};
use rlenz::poly::PolyFieldJson;
use rlenz::{Axis, ExactField, ExactOperator, ExactPoly, GaussianRational as G};

fn coefficient() -> impl Strategy<Value = G> {
    (-6i64..=6, 1i64..=4, -3i64..=3, 1i64..=3).prop_map(|(a, b, c, d)| {
        G::new(BigRational::new(a.into(), b.into()), BigRational::new(c.into(), d.into()))
    })
}

fn polynomial(max_degree: u32, max_terms: usize) -> impl Strategy<Value = ExactPoly> {
    prop::collection::vec(((0..=max_degree), (0..=max_degree), (0..=max_degree), coefficient()), 0..=max_terms)
        .prop_map(move |terms| {
            ExactPoly::from_terms(terms.into_iter().filter_map(|(a, b, c, k)| {
                (a + b + c <= max_degree).then_some(([a, b, c], k))
            }))
        })
}

fn field() -> impl Strategy<Value = ExactField> {
    (polynomial(6, 6), 0u32..=4).prop_map(|(p, n)| ExactField::new(p, n))
}

fn small_field() -> impl Strategy<Value = ExactField> {
    (polynomial(3, 4), 0u32..=2).prop_map(|(p, n)| ExactField::new(p, n))
}

fn axis() -> impl Strategy<Value = Axis> {
    prop_oneof![Just(Axis::X), Just(Axis::Y), Just(Axis::Z)]
}

fn is_canonical(f: &ExactField) -> bool {
    if f.is_zero() {
        return f.denom_power() == 0;
    }
    f.denom_power() == 0 || f.numerator().exact_div_one_plus_sum_of_squares().is_none()
}

fn point() -> impl Strategy<Value = [f64; 3]> {
    [-3.0f64..3.0, -3.0f64..3.0, -3.0f64..3.0]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn primitives_stay_canonical(f in field(), a in axis()) {
        let images = [
            f.partial(a),
            f.mul_coordinate(a),
            f.mul_weight(1),
            &f * &(&ExactField::momentum_squared() - &ExactField::one()),
            f.laplacian(),
            f.euler_degree(),
        ];
        for g in &images {
            prop_assert!(is_canonical(g), "{g}");
        }
    }

    #[test]
    fn partials_commute(f in field()) {
        prop_assert_eq!(f.partial(Axis::X).partial(Axis::Y), f.partial(Axis::Y).partial(Axis::X));
        prop_assert_eq!(f.partial(Axis::Z).partial(Axis::X), f.partial(Axis::X).partial(Axis::Z));
    }

    #[test]
    fn euler_scales_homogeneous(d in 0u32..=8, coeffs in prop::collection::vec(coefficient(), 1..6), seed in any::<u64>()) {
        let terms = coeffs.into_iter().enumerate().map(|(i, c)| {
            let a = ((seed >> (i * 4)) % (d as u64 + 1)) as u32;
            let b = ((seed >> (i * 4 + 2)) % ((d - a) as u64 + 1)) as u32;
            ([a, b, d - a - b], c)
        });
        let h = ExactField::from_polynomial(ExactPoly::from_terms(terms));
        prop_assert_eq!(h.euler_degree(), h.scale(&G::from_integer(d as i64)));
    }

    #[test]
    fn leibniz(f in field(), g in small_field(), a in axis()) {
        let lhs = (&f * &g).partial(a);
        let rhs = &(&f.partial(a) * &g) + &(&f * &g.partial(a));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_multiplicative(f in small_field(), g in small_field(), x in point()) {
        let fg = (&f * &g).evaluate(x, 64).unwrap().to_complex_f64();
        let prod = f.evaluate(x, 64).unwrap().to_complex_f64() * g.evaluate(x, 64).unwrap().to_complex_f64();
        let scale = fg.norm().max(prod.norm()).max(1e-300);
        prop_assert!((fg - prod).norm() <= 1e-12 * scale, "{fg} vs {prod}");
    }

    #[test]
    fn operators_are_linear(f in small_field(), g in small_field(), alpha in coefficient(), beta in coefficient(), a in axis()) {
        let ops: [ExactOperator; 4] = [angular_momentum(a), runge_lenz_a(a), runge_lenz_b(a), hamiltonian_b()];
        let combo = &f.scale(&alpha) + &g.scale(&beta);
        for op in &ops {
            let lhs = op.apply(&combo);
            let rhs = &op.apply(&f).scale(&alpha) + &op.apply(&g).scale(&beta);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn text_and_json_round_trip(f in field()) {
        let text = f.to_string();
        prop_assert_eq!(text.parse::<ExactField>().unwrap(), f.clone());
        let json = serde_json::to_string(&f.to_json()).unwrap();
        let back: PolyFieldJson = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(ExactField::from_json(&back).unwrap(), f);
    }

    #[test]
    fn stereographic_round_trip(p in point()) {
        let back = stereographic_inverse(&stereographic_forward(&p)).unwrap();
        for i in 0..3 {
            prop_assert!((back[i] - p[i]).abs() <= 1e-12 * p[i].abs().max(1.0));
        }
        let s = stereographic_forward(&p);
        prop_assert!(s.constraint_defect().abs() <= 1e-12);
    }

    #[test]
    fn kernel_identity_on_random_pairs(p in point(), q in point()) {
        prop_assume!(p != q);
        prop_assert!(kernel_identity_residual(&p, &q).unwrap() <= 1e-12);
    }
}
