use std::collections::BTreeMap;
use std::sync::Arc;

use qcoh_core::quantum::solve_structure_constants;
use qcoh_core::ring::Degree;
use qcoh_core::{GWQuery, QuantumClass, QuantumRing, Rational, SphereClassVector, SubsetPoint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A class as `(x-mask, q exponents) -> coefficient`.
type Table = BTreeMap<(u32, Vec<u32>), Rational>;

fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn to_table(c: &QuantumClass) -> Table {
    c.basis_terms()
        .into_iter()
        .map(|t| ((t.x.mask(), t.q), t.coefficient))
        .collect()
}

fn from_table(ring: &Arc<QuantumRing>, t: &Table) -> QuantumClass {
    let n = ring.n();
    let mut out = ring.zero();
    for ((mask, q), c) in t {
        let d = SphereClassVector::new(q.iter().map(|&e| e as i64).collect());
        let term = ring
            .basis(&SubsetPoint::from_mask(n, *mask))
            .unwrap()
            .qmul(&ring.novikov(&d).unwrap())
            .unwrap();
        out = out.add(&term.scale(c)).unwrap();
    }
    out
}

/// `x_I q^a * x_J q^b = x_{I △ J} q^{a + b + 1_{I ∩ J}}`.
fn oracle_product(n: usize, a: &Table, b: &Table) -> Table {
    let mut out = Table::new();
    for ((ma, qa), ca) in a {
        for ((mb, qb), cb) in b {
            let q: Vec<u32> = (0..n).map(|i| qa[i] + qb[i] + ((ma & mb) >> i & 1)).collect();
            *out.entry((ma ^ mb, q)).or_insert_with(|| int(0)) += ca * cb;
        }
    }
    out.retain(|_, c| *c != int(0));
    out
}

/// Random class of half-degree `h` (degree `2h`).
fn random_homogeneous(rng: &mut ChaCha8Rng, n: usize, h: usize) -> Table {
    let mut t = Table::new();
    for _ in 0..rng.gen_range(1..=4) {
        let q_total = rng.gen_range(0..=h / 2);
        let x_size = h - 2 * q_total;
        if x_size > n {
            continue;
        }
        let choices = SubsetPoint::of_size(n, x_size);
        let x = choices[rng.gen_range(0..choices.len())];
        let mut q = vec![0u32; n];
        for _ in 0..q_total {
            q[rng.gen_range(0..n)] += 1;
        }
        let c = Rational::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=3).into());
        *t.entry((x.mask(), q)).or_insert_with(|| int(0)) += c;
    }
    t.retain(|_, c| *c != int(0));
    t
}

#[test]
fn qmul_matches_oracle_and_is_associative() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7131);
    let rings: Vec<_> = (1..=4).map(|n| QuantumRing::new(n).unwrap()).collect();
    for round in 0..300 {
        let n = 1 + round % 4;
        let ring = &rings[n - 1];
        let h = [
            rng.gen_range(0..=n + 1),
            rng.gen_range(0..=n + 1),
            rng.gen_range(0..=n + 1),
        ];
        let (ta, tb, tc) = (
            random_homogeneous(&mut rng, n, h[0]),
            random_homogeneous(&mut rng, n, h[1]),
            random_homogeneous(&mut rng, n, h[2]),
        );
        let (a, b, c) = (from_table(ring, &ta), from_table(ring, &tb), from_table(ring, &tc));
        let ab = a.qmul(&b).unwrap();
        assert_eq!(to_table(&ab), oracle_product(n, &ta, &tb));
        assert_eq!(ab, b.qmul(&a).unwrap());
        assert_eq!(ab.qmul(&c).unwrap(), a.qmul(&b.qmul(&c).unwrap()).unwrap());
        if !ab.is_zero() {
            assert_eq!(ab.graded_degree(), Degree::Homogeneous(2 * (h[0] + h[1]) as i64));
        }
    }
}

#[test]
fn positivity_and_jumps_of_four() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9051);
    for round in 0..300 {
        let n = 1 + round % 4;
        let ring = QuantumRing::new(n).unwrap();
        let (ha, hb) = (rng.gen_range(0..=n), rng.gen_range(0..=n));
        let a = from_table(&ring, &random_homogeneous(&mut rng, n, ha));
        let b = from_table(&ring, &random_homogeneous(&mut rng, n, hb));
        let (classical, tail) = a.positivity_decomposition(&b).unwrap();
        assert_eq!(
            classical.qmul(&ring.one()).unwrap().add(&tail).unwrap(),
            a.qmul(&b).unwrap()
        );
        for t in tail.basis_terms() {
            let q_sum: u32 = t.q.iter().sum();
            if a.is_q_free() && b.is_q_free() {
                assert!(q_sum > 0, "q-free tail term {:?}", t);
            }
            let drop = 2 * (ha + hb) as i64 - 2 * t.x.len() as i64;
            assert_eq!(drop, 4 * q_sum as i64);
        }
    }
}

#[test]
fn seidel_action_on_basis() {
    for n in 1..=6 {
        let ring = QuantumRing::new(n).unwrap();
        let all_q = ring
            .novikov(&SphereClassVector::of_subset(&SubsetPoint::full(n)))
            .unwrap();
        for i in SubsetPoint::all(n) {
            let x = ring.basis(&i).unwrap();
            let q_i = ring.novikov(&SphereClassVector::of_subset(&i)).unwrap();
            let image = x.seidel();
            assert_eq!(image, ring.basis(&i.complement()).unwrap().qmul(&q_i).unwrap());
            assert_eq!(image.seidel(), x.qmul(&all_q).unwrap());
        }
    }
}

#[test]
fn pairing_is_complement_permutation() {
    for n in 1..=6 {
        let ring = QuantumRing::new(n).unwrap();
        let basis: Vec<_> = SubsetPoint::all(n)
            .into_iter()
            .map(|p| (p, ring.basis(&p).unwrap()))
            .collect();
        for (i, xi) in &basis {
            for (j, xj) in &basis {
                let expected = int(i64::from(*j == i.complement()));
                assert_eq!(xi.pairing(xj).unwrap(), expected, "n={n} {i} {j}");
            }
        }
    }
}

fn effective_classes(n: usize, max: u32) -> Vec<SphereClassVector> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| (0..=max as i64).map(move |d| [v.clone(), vec![d]].concat()))
            .collect();
    }
    out.into_iter().map(SphereClassVector::new).collect()
}

#[test]
fn gw_symmetric_and_matches_oracle() {
    for n in 1..=3 {
        let ring = QuantumRing::new(n).unwrap();
        let pts = SubsetPoint::all(n);
        let mut nonzero = 0;
        for i in &pts {
            for j in &pts {
                for k in &pts {
                    for d in effective_classes(n, 2) {
                        let value = |a: &SubsetPoint, b: &SubsetPoint, c: &SubsetPoint| {
                            ring.gw_coefficient(&GWQuery::new(*a, *b, *c, d.clone()).unwrap())
                                .unwrap()
                        };
                        let v = value(i, j, k);
                        for perm in [
                            value(i, k, j),
                            value(j, i, k),
                            value(j, k, i),
                            value(k, i, j),
                            value(k, j, i),
                        ] {
                            assert_eq!(perm, v);
                        }
                        // Each index must lie in one or three of I, J, K; d marks the triples.
                        let odd = (1..=n).all(|x| [i, j, k].iter().filter(|s| s.contains(x)).count() % 2 == 1);
                        let triple = i.intersection(j).intersection(k);
                        let expected = odd && d == SphereClassVector::of_subset(&triple);
                        assert_eq!(v, int(i64::from(expected)), "<{i},{j},{k}>_{d}");
                        nonzero += usize::from(expected);
                    }
                }
            }
        }
        assert_eq!(nonzero, 4usize.pow(n as u32));
    }
}

#[test]
fn solver_recovers_product_table() {
    for n in 1..=3 {
        let ring = QuantumRing::new(n).unwrap();
        let table = solve_structure_constants(n).unwrap();
        assert_eq!(table.entries.len(), n << n);
        for ((subset, j), value) in &table.entries {
            let lhs: Table = [((subset.mask(), vec![0; n]), int(1))].into();
            let rhs: Table = [((1u32 << (j - 1), vec![0; n]), int(1))].into();
            assert_eq!(to_table(value), oracle_product(n, &lhs, &rhs));
            assert_eq!(*value, ring.basis(subset).unwrap().qmul(&ring.x(*j).unwrap()).unwrap());
        }
    }
}

#[test]
fn ring_presentation() {
    for n in 1..=5 {
        let ring = QuantumRing::new(n).unwrap();
        for i in 1..=n {
            let x = ring.x(i).unwrap();
            assert_eq!(x.qmul(&x).unwrap(), ring.q(i).unwrap());
        }
        for subset in SubsetPoint::all(n) {
            let mut q_prod = ring.one();
            let mut c_prod = ring.one();
            for i in subset.members() {
                q_prod = q_prod.qmul(&ring.x(i).unwrap()).unwrap();
                c_prod = c_prod.cup(&ring.x(i).unwrap()).unwrap();
            }
            assert_eq!(q_prod, c_prod);
            assert_eq!(q_prod, ring.basis(&subset).unwrap());
        }
    }
}
