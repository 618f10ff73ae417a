use std::collections::BTreeMap;

use qcoh_core::gkm::{self, y_vars, EquivariantClass};
use qcoh_core::ring::Degree;
use qcoh_core::{Poly, QuantumRing, Rational, SubsetPoint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn y() -> Poly {
    Poly::var(y_vars(), "y").unwrap()
}

fn y_pow(k: usize) -> Poly {
    y().pow(k as u32)
}

fn random_y_poly(rng: &mut ChaCha8Rng) -> Poly {
    let mut p = Poly::zero(y_vars());
    for k in 0..3 {
        if rng.gen_bool(0.5) {
            p = &p + &y_pow(k).scale(&int(rng.gen_range(-4..=4)));
        }
    }
    p
}

/// Value at `p_J` of `Σ c_I a_I`, summed directly from `a_I(p_J) = (-y)^{|I|}` for `I ⊆ J`.
fn localize(n: usize, coeffs: &BTreeMap<SubsetPoint, Poly>, j: &SubsetPoint) -> Poly {
    let minus_y = -&y();
    let mut total = Poly::zero(y_vars());
    for (subset, c) in coeffs {
        assert_eq!(subset.n(), n);
        if subset.is_subset_of(j) {
            total = &total + &(c * &minus_y.pow(subset.len() as u32));
        }
    }
    total
}

#[test]
fn decompose_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b6d);
    for round in 0..100 {
        let n = 1 + round % 4;
        let mut coeffs = BTreeMap::new();
        let mut class = EquivariantClass::zero(n).unwrap();
        for subset in SubsetPoint::all(n) {
            let c = random_y_poly(&mut rng);
            if !c.is_zero() {
                class = class
                    .add(&gkm::basis_a(&subset).unwrap().scale_by(&c).unwrap())
                    .unwrap();
                coeffs.insert(subset, c);
            }
        }
        for j in SubsetPoint::all(n) {
            assert_eq!(class.restrict(&j).unwrap(), &localize(n, &coeffs, &j));
        }
        let decomposed: BTreeMap<SubsetPoint, Poly> = class
            .decompose()
            .unwrap()
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        assert_eq!(decomposed, coeffs, "round {round}");
        let mut rebuilt = EquivariantClass::zero(n).unwrap();
        for (subset, c) in &decomposed {
            rebuilt = rebuilt
                .add(&gkm::basis_a(subset).unwrap().scale_by(c).unwrap())
                .unwrap();
        }
        assert_eq!(rebuilt, class);
    }
}

#[test]
fn triangularity() {
    for n in 1..=4 {
        for i in SubsetPoint::all(n) {
            let a = gkm::basis_a(&i).unwrap();
            for j in SubsetPoint::all(n) {
                if j.len() <= i.len() && j != i {
                    assert!(a.restrict(&j).unwrap().is_zero(), "a{i} at {j}");
                }
            }
            assert_eq!(a.restrict(&i).unwrap(), &(-&y()).pow(i.len() as u32));
        }
    }
}

#[test]
fn ring_relation() {
    for n in 1..=5 {
        let y_class = EquivariantClass::y(n).unwrap();
        for i in 1..=n {
            let a = EquivariantClass::generator(n, i).unwrap();
            assert!(a.multiply(&a.add(&y_class).unwrap()).unwrap().is_zero());
        }
    }
}

#[test]
fn basis_b_values_and_duality() {
    for n in 1..=5 {
        let ring = QuantumRing::new(n).unwrap();
        for i in SubsetPoint::all(n) {
            let b = gkm::basis_b(&i).unwrap();
            for j in SubsetPoint::all(n) {
                let expected = if j.is_subset_of(&i) {
                    y_pow(n - i.len())
                } else {
                    Poly::zero(y_vars())
                };
                assert_eq!(b.restrict(&j).unwrap(), &expected);
            }
            assert_eq!(b.reduce_to_ordinary().unwrap(), ring.basis(&i.complement()).unwrap());
        }
        for i in 1..=n {
            let b = gkm::basis_b(&SubsetPoint::singleton(n, i).unwrap().complement()).unwrap();
            let a_plus_y = EquivariantClass::generator(n, i)
                .unwrap()
                .add(&EquivariantClass::y(n).unwrap())
                .unwrap();
            assert_eq!(b, a_plus_y);
        }
    }
}

#[test]
fn symmetric_expansion_agrees() {
    for n in 1..=4 {
        for i in SubsetPoint::all(n) {
            assert_eq!(gkm::basis_b(&i).unwrap(), gkm::basis_b_symmetric(&i).unwrap(), "b{i}");
        }
    }
}

fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

#[test]
fn chern_classes() {
    for n in 1..=4 {
        let ring = QuantumRing::new(n).unwrap();
        let series = gkm::chern_series(n).unwrap();
        assert_eq!(series.len(), n);
        for (idx, c) in series.iter().enumerate() {
            let k = idx + 1;
            assert!(gkm::gkm_check(n, c.values()));
            assert_eq!(c.graded_degree(), Degree::Homogeneous(2 * k as i64));
            // At p_J each factor is 1 - 3ty (i ∈ J) or 1 - ty (i ∉ J).
            for j in SubsetPoint::all(n) {
                let inside = j.len();
                let coeff: i64 = (0..=k)
                    .map(|m| {
                        binomial(inside, m)
                            * (-3i64).pow(m as u32)
                            * binomial(n - inside, k - m)
                            * (-1i64).pow((k - m) as u32)
                    })
                    .sum();
                assert_eq!(c.restrict(&j).unwrap(), &y_pow(k).scale(&int(coeff)));
            }
        }
        let mut two_sum = ring.zero();
        for i in 1..=n {
            two_sum = two_sum.add(&ring.x(i).unwrap().scale(&int(2))).unwrap();
        }
        assert_eq!(series[0].reduce_to_ordinary().unwrap(), two_sum);
    }
}

#[test]
fn edge_condition_is_weaker_than_span() {
    // y at the top vertex only: divisible along every edge but not in the span.
    let n = 2;
    let values: Vec<Poly> = (0..4u32)
        .map(|mask| if mask == 3 { y() } else { Poly::zero(y_vars()) })
        .collect();
    assert!(gkm::gkm_check(n, &values));
    assert!(gkm::decompose_table(n, &values).is_err());
}
