use intlef::exterior::LinearMap;
use intlef::exterior::{
    contract_form, contract_triple_cup, exp_omega_minus_one, omega, Monomial, Multivector, Operator, Space,
};
use intlef::floer::{transvection_action, CupComplex, ModelClass};
use intlef::linalg::{cokernel, IntMatrix};
use intlef::CoefficientRing;
use num_bigint::BigInt;
use proptest::prelude::*;

const Z: CoefficientRing = CoefficientRing::Integers;

fn element(space: Space, terms: Vec<(u64, i64)>) -> Multivector {
    let mask = space.index_mask();
    let mut x = Multivector::zero(space, Z);
    for (bits, c) in terms {
        let m = Monomial(bits & mask);
        x = x.add(&Multivector::monomial(space, Z, m, BigInt::from(c))).unwrap();
    }
    x
}

fn arb_element(space: Space) -> impl Strategy<Value = Multivector> {
    prop::collection::vec((any::<u64>(), -4i64..=4), 0..6).prop_map(move |t| element(space, t))
}

fn arb_form(g: usize) -> impl Strategy<Value = Multivector> {
    prop::collection::vec(-3i64..=3, 2 * g).prop_map(move |cs| {
        let s = Space::symplectic(g);
        let mut f = Multivector::zero(s, Z);
        for (i, c) in cs.into_iter().enumerate() {
            f = f
                .add(&Multivector::basis_vector(s, i + 1).scale(&BigInt::from(c)))
                .unwrap();
        }
        f
    })
}

fn arb_transvection(g: usize) -> impl Strategy<Value = LinearMap> {
    prop::collection::vec(-2i64..=2, 2 * g)
        .prop_map(move |v| LinearMap::transvection(g, &v.into_iter().map(BigInt::from).collect::<Vec<_>>()))
}

fn contract_omega(x: &Multivector) -> Multivector {
    Operator::ContractOmega(1).apply(x).unwrap()
}

#[test]
fn cup_differential_squares_to_zero() {
    for g in 1..=3 {
        assert!(CupComplex::new(g).unwrap().squares_to_zero().unwrap(), "g={g}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn triple_cup_contraction_is_a_differential(x in arb_element(Space::extended(3))) {
        let d = contract_triple_cup(&x).unwrap();
        prop_assert!(contract_triple_cup(&d).unwrap().is_zero());
    }

    #[test]
    fn wedge_is_associative(
        a in arb_element(Space::symplectic(3)),
        b in arb_element(Space::symplectic(3)),
        c in arb_element(Space::symplectic(3)),
    ) {
        prop_assert_eq!(a.wedge(&b).unwrap().wedge(&c).unwrap(), a.wedge(&b.wedge(&c).unwrap()).unwrap());
    }

    #[test]
    fn contraction_composes(x in arb_element(Space::symplectic(3)), a in arb_element(Space::symplectic(3)), b in arb_element(Space::symplectic(3))) {
        // ι_{a∧b} = ι_a ∘ ι_b
        let lhs = contract_form(&a.wedge(&b).unwrap(), &x).unwrap();
        let rhs = contract_form(&a, &contract_form(&b, &x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn transvections_preserve_omega(t in arb_transvection(3)) {
        prop_assert!(t.is_symplectic());
        let w = omega(Space::symplectic(3), Z);
        prop_assert_eq!(t.pushforward(&w), w);
    }

    #[test]
    fn contraction_is_sp_equivariant(t in arb_transvection(3), x in arb_element(Space::symplectic(3))) {
        prop_assert_eq!(t.pushforward(&contract_omega(&x)), contract_omega(&t.pushforward(&x)));
        let e = exp_omega_minus_one(Space::symplectic(3), Z);
        prop_assert_eq!(
            t.pushforward(&contract_form(&e, &x).unwrap()),
            contract_form(&e, &t.pushforward(&x)).unwrap()
        );
    }

    #[test]
    fn pushforward_is_multiplicative(t in arb_transvection(2), a in arb_element(Space::symplectic(2)), b in arb_element(Space::symplectic(2))) {
        prop_assert_eq!(t.pushforward(&a.wedge(&b).unwrap()), t.pushforward(&a).wedge(&t.pushforward(&b)).unwrap());
    }

    #[test]
    fn transvection_action_is_a_group_action(
        f in arb_form(3),
        h in arb_form(3),
        c in arb_element(Space::symplectic(3)),
        x in arb_element(Space::symplectic(3)),
    ) {
        let class = ModelClass { coker: c, ker: x };
        let zero = Multivector::zero(Space::symplectic(3), Z);
        prop_assert_eq!(&transvection_action(&zero, &class).unwrap(), &class);
        let two_steps = transvection_action(&f, &transvection_action(&h, &class).unwrap()).unwrap();
        let one_step = transvection_action(&f.add(&h).unwrap(), &class).unwrap();
        prop_assert_eq!(two_steps, one_step);
    }

    #[test]
    fn weighted_leibniz(x in arb_element(Space::symplectic(3))) {
        for k in 0..=6 {
            let xk = x.degree_part(k);
            prop_assert!(intlef::lefschetz::weighted_leibniz_holds(&xk, k).unwrap());
        }
    }

    #[test]
    fn cokernel_invariant_under_row_and_column_operations(
        entries in prop::collection::vec(-6i64..=6, 12),
        (i, j, c) in (0usize..3, 0usize..3, -3i64..=3),
        (p, q, d) in (0usize..4, 0usize..4, -3i64..=3),
    ) {
        let rows: Vec<&[i64]> = entries.chunks(4).collect();
        let a = IntMatrix::from_i64(&rows);
        let mut u = IntMatrix::identity(3).to_dense();
        if i != j { u[i][j] = BigInt::from(c); }
        let mut v = IntMatrix::identity(4).to_dense();
        if p != q { v[p][q] = BigInt::from(d); }
        let u = IntMatrix::from_dense(3, 3, &u);
        let v = IntMatrix::from_dense(4, 4, &v);
        let b = u.mul(&a).unwrap().mul(&v).unwrap();
        prop_assert_eq!(cokernel(&a), cokernel(&b));
    }
}
