use std::sync::Arc;

use proptest::prelude::*;
use qcoh_core::ring::{Degree, Monomial, Polynomial, RewriteSystem, VarSet};
use qcoh_core::{IntPoly, Integer, Poly, Rational};

fn xs() -> Arc<VarSet> {
    VarSet::uniform(["x1", "x2", "x3", "x4"], 2).unwrap()
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn monomial(exps: &[u32]) -> Monomial {
    Monomial::from_pairs(exps.iter().enumerate().map(|(i, &e)| (i, e)))
}

prop_compose! {
    fn coefficient()(n in -6i64..=6, d in 1i64..=4) -> Rational {
        rat(n, d)
    }
}

fn poly_strategy(vars: Arc<VarSet>, nvars: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0u32..3, nvars), coefficient()), 0..6)
        .prop_map(move |terms| Poly::from_terms(&vars, terms.into_iter().map(|(e, c)| (monomial(&e), c))))
}

/// Homogeneous of total exponent `k` in the first `nvars` variables.
fn homogeneous_strategy(vars: Arc<VarSet>, nvars: usize) -> impl Strategy<Value = Poly> {
    (0u32..4).prop_flat_map(move |k| {
        let vars = vars.clone();
        prop::collection::vec((prop::collection::vec(0u32..=k, nvars), coefficient()), 1..5).prop_map(move |terms| {
            let terms = terms.into_iter().filter_map(|(mut e, c)| {
                let total: u32 = e.iter().sum();
                if total > k {
                    return None;
                }
                e[0] += k - total;
                Some((monomial(&e), c))
            });
            Poly::from_terms(&vars, terms)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(
        a in poly_strategy(xs(), 4),
        b in poly_strategy(xs(), 4),
        c in poly_strategy(xs(), 4),
    ) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Poly::zero(a.vars()));
        prop_assert_eq!(&a * &Poly::one(a.vars()), a.clone());
    }

    #[test]
    fn degree_is_additive(a in homogeneous_strategy(xs(), 4), b in homogeneous_strategy(xs(), 4)) {
        let product = &a * &b;
        match (a.graded_degree(), b.graded_degree(), product.graded_degree()) {
            (Degree::Homogeneous(da), Degree::Homogeneous(db), Degree::Homogeneous(dp)) => prop_assert_eq!(da + db, dp),
            (_, _, Degree::Any) => prop_assert!(a.is_zero() || b.is_zero()),
            other => prop_assert!(false, "unexpected degrees {:?}", other),
        }
    }
}

fn quotient() -> (Arc<VarSet>, RewriteSystem<Rational>) {
    let vars = VarSet::new([("x1", Some(2)), ("x2", Some(2)), ("q1", Some(4)), ("q2", Some(4))]).unwrap();
    let q1 = Poly::var(&vars, "q1").unwrap();
    let q2 = Poly::var(&vars, "q2").unwrap();
    let x1 = Poly::var(&vars, "x1").unwrap();
    let rules = RewriteSystem::new(&vars)
        .with_rule("x1", 2, q1)
        .unwrap()
        .with_rule("x2", 3, &x1 * &q2)
        .unwrap();
    (vars, rules)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normal_form_idempotent_and_multiplicative(
        a in poly_strategy(quotient().0, 4),
        b in poly_strategy(quotient().0, 4),
    ) {
        let (vars, rules) = quotient();
        let a = a.reembed(&vars).unwrap();
        let b = b.reembed(&vars).unwrap();
        let na = rules.normal_form(&a);
        prop_assert!(rules.is_reduced(&na));
        prop_assert_eq!(rules.normal_form(&na), na.clone());
        let nb = rules.normal_form(&b);
        prop_assert_eq!(rules.normal_form(&(&a * &b)), rules.normal_form(&(&na * &nb)));
        prop_assert_eq!(rules.normal_form(&(&a + &b)), &na + &nb);
    }
}

/// The same identities hold with integer and machine-word coefficients.
fn generic_identities<C: qcoh_core::Scalar>() {
    let vars = VarSet::uniform(["u", "v"], 2).unwrap();
    let u = Polynomial::<C>::var(&vars, "u").unwrap();
    let v = Polynomial::<C>::var(&vars, "v").unwrap();
    let two = Polynomial::constant(&vars, C::from_i64(2));
    let lhs = (&u + &v).pow(2);
    let rhs = &(&u * &u) + &(&(&two * &u) * &v) + &v * &v;
    assert_eq!(lhs, rhs);
    assert_eq!((&u - &v) * (&u + &v), &u * &u - &v * &v);
}

#[test]
fn generic_over_scalars() {
    generic_identities::<Rational>();
    generic_identities::<Integer>();
    generic_identities::<i64>();
    let vars = VarSet::uniform(["u"], 2).unwrap();
    let p = IntPoly::var(&vars, "u").unwrap().pow(3);
    assert_eq!(p.graded_degree(), Degree::Homogeneous(6));
}
