use proptest::prelude::*;
use qcoh_core::morse::{self, MomentAssignment, SphereClassVector, SubsetPoint};
use qcoh_core::Rational;

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn betti_counts() {
    for n in 1..=10 {
        let points = SubsetPoint::all(n);
        assert_eq!(points.len(), 1 << n);
        for k in 0..=n {
            let count = points.iter().filter(|p| morse::morse_index(p) == 2 * k).count();
            assert_eq!(count, binomial(n, k), "n={n} k={k}");
        }
    }
}

#[test]
fn canonical_order_is_size_then_lex() {
    let rendered: Vec<String> = SubsetPoint::all(3).iter().map(|p| p.to_string()).collect();
    assert_eq!(
        rendered,
        ["{}", "{1}", "{2}", "{3}", "{1,2}", "{1,3}", "{2,3}", "{1,2,3}"]
    );
}

fn areas(n: usize) -> impl Strategy<Value = MomentAssignment> {
    prop::collection::vec((1i64..=20, 1i64..=7), n).prop_map(|v| {
        MomentAssignment::new(v.into_iter().map(|(a, b)| Rational::new(a.into(), b.into())).collect()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edge_areas_match_moment_differences(m in (1usize..=6).prop_flat_map(areas)) {
        let n = m.n();
        for (from, to, i) in morse::all_edges(n) {
            let diff = morse::moment_value(&to, &m).unwrap() - morse::moment_value(&from, &m).unwrap();
            prop_assert_eq!(&diff, &m.areas()[i - 1]);
            prop_assert_eq!(diff, morse::area(&SphereClassVector::basis(n, i), &m).unwrap());
        }
    }

    #[test]
    fn broken_lines(m in (1usize..=8).prop_flat_map(areas)) {
        let n = m.n();
        let top = morse::moment_value(&SubsetPoint::full(n), &m).unwrap();
        for p in SubsetPoint::all(n) {
            let class = morse::broken_line_class(&p);
            let drop = &top - morse::moment_value(&p, &m).unwrap();
            prop_assert_eq!(morse::area(&class, &m).unwrap(), drop);
            prop_assert_eq!(morse::chern_number(&class), n as i64 + morse::weight_sum(&p));
        }
    }
}

#[test]
fn moment_values_are_antisymmetric() {
    let m = MomentAssignment::new(vec![
        Rational::from_integer(2.into()),
        Rational::new(1.into(), 3.into()),
    ])
    .unwrap();
    for p in SubsetPoint::all(2) {
        let a = morse::moment_value(&p, &m).unwrap();
        let b = morse::moment_value(&p.complement(), &m).unwrap();
        assert_eq!(a + b, Rational::from_integer(0.into()));
    }
}

#[test]
fn chern_positive_on_effective_cone() {
    for n in 1..=5 {
        let total = 4usize.pow(n as u32);
        for code in 1..total {
            let coefficients: Vec<i64> = (0..n).map(|i| ((code >> (2 * i)) & 3) as i64).collect();
            let v = SphereClassVector::new(coefficients);
            assert!(v.is_effective());
            assert!(morse::chern_number(&v) > 0, "{v}");
        }
    }
}

#[test]
fn infeasibility_certificate() {
    for n in 1..=10 {
        assert!(morse::higher_order_infeasibility(n).is_empty(), "n={n}");
    }
    assert!(morse::relaxed_chain_solutions(3).contains(&(2, 0, 1)));
}

/// Direct search over actual subsets rather than cardinalities: a source
/// `I`, target `J` and root `K` with `K ⊆ J`, using the same inequalities.
#[test]
fn infeasibility_on_subsets() {
    for n in 1..=5 {
        let pts = SubsetPoint::all(n);
        for i in &pts {
            for j in &pts {
                for k in pts.iter().filter(|k| k.is_subset_of(j)) {
                    let c_b = i.len() as i64 - j.len() as i64;
                    let c_a = 2 * k.len() as i64 - i.len() as i64 - j.len() as i64;
                    let collapsed = c_a == 0 && 2 * (k.len() as i64 - j.len() as i64) == c_b;
                    let feasible = c_b > 0 && c_a >= 0 && c_a >= 2 * c_a && (c_a > 0 || collapsed);
                    assert!(!feasible, "n={n} I={i} J={j} K={k}");
                }
            }
        }
    }
}

#[test]
fn sphere_chern_numbers() {
    let n = 3;
    for x in SubsetPoint::all(n) {
        for (y, _) in morse::upward_edges(&x) {
            assert_eq!(morse::invariant_sphere_chern(&x, &y, 1).unwrap(), 2);
        }
    }
}
