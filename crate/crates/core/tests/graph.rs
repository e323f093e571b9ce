use std::collections::BTreeMap;

use hecke_core::graph::*;
use hecke_core::{Execution, Field, HeckeGraph};
use num_bigint::BigInt;
use proptest::prelude::*;

fn star(g: &HeckeGraph, v: usize) -> BTreeMap<usize, BigInt> {
    g.out_edges(v).map(|(t, m)| (t, m.clone())).collect()
}

fn edges(g: &HeckeGraph) -> Vec<Edge> {
    g.edges().collect()
}

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

#[test]
fn weight_sums_for_small_degrees() {
    for q in [2u64, 3, 4, 5] {
        let f = Field::with_q(q).unwrap();
        for d in 1..=5u32 {
            if q == 5 && d == 5 {
                continue;
            }
            let g = graph_phi(&f, d, 2 * d as usize + 1).unwrap();
            let r = verify_weight_sums(&g, Some(&(big(q).pow(d) + 1)));
            assert!(r.passed(), "q={q} d={d}: {r:?}");
        }
    }
}

#[test]
fn xi_and_coset_routes_agree() {
    for q in [2, 3, 4, 5, 7, 8, 9] {
        let f = Field::with_q(q).unwrap();
        for n in 0..10 {
            assert_eq!(xi_neighbours(&f, n).unwrap(), phi_neighbours(&f, n, 1).unwrap());
        }
    }
}

#[test]
fn low_degree_stars_from_the_composition_oracle() {
    for q in [2u64, 3, 4, 5] {
        let f = Field::with_q(q).unwrap();
        let g1 = graph_phi(&f, 1, 8).unwrap();
        let phi2 = graph_sub(
            &graph_power(&g1.restrict(7).unwrap(), 2).unwrap(),
            &graph_scale(&big(2 * q), &graph_identity(q, 6)),
        )
        .unwrap();
        let phi3 = graph_sub(&graph_power(&g1, 3).unwrap(), &graph_scale(&big(3 * q), &g1)).unwrap();
        assert_eq!(star(&phi2, 0), BTreeMap::from([(0, big(q * q - q)), (2, big(q + 1))]));
        assert_eq!(star(&phi2, 1), BTreeMap::from([(1, big(q * q)), (3, big(1))]));
        assert_eq!(star(&phi3, 0), BTreeMap::from([(1, big(q * q * q - q)), (3, big(q + 1))]));
        assert!(phi2.equal_on_window(&graph_phi(&f, 2, 6).unwrap()));
        assert!(phi3.equal_on_window(&graph_phi(&f, 3, 6).unwrap()));
    }
}

#[test]
fn structure_theorems() {
    for q in [2u64, 3] {
        let f = Field::with_q(q).unwrap();
        for d in 1..=4u32 {
            let n = 4 * d as usize;
            let g = graph_phi(&f, d, n).unwrap();
            assert!(verify_symmetry(&g).passed());
            assert!(verify_tail(&g, d).passed());
            assert!(verify_parity(&g, d).passed());
            assert!(neighbour_distance_check(&g, d as usize).passed());
            assert_eq!(component_count(&g), if d % 2 == 0 { 2 } else { 1 });
        }
    }
}

#[test]
fn sequential_and_parallel_agree() {
    let f = Field::with_q(3).unwrap();
    let a = graph_phi_with(&f, 3, 9, Execution::Sequential).unwrap();
    let b = graph_phi_with(&f, 3, 9, Execution::Parallel).unwrap();
    assert_eq!(a, b);
}

#[test]
fn algebra_laws() {
    let f = Field::with_q(3).unwrap();
    let g1 = graph_phi(&f, 1, 12).unwrap();
    let g2 = graph_phi(&f, 2, 12).unwrap();
    let id = graph_identity(3, 12);
    let zero = graph_zero(3, 12);

    assert_eq!(edges(&graph_add(&g1, &g2).unwrap()), edges(&graph_add(&g2, &g1).unwrap()));
    assert_eq!(edges(&graph_add(&g1, &zero).unwrap()), edges(&g1));
    assert_eq!(edges(&graph_compose(&id.restrict(10).unwrap(), &g1).unwrap()), edges(&g1.restrict(10).unwrap()));
    assert_eq!(edges(&graph_compose(&g1.restrict(10).unwrap(), &id).unwrap()), edges(&g1.restrict(10).unwrap()));
    assert!(edges(&graph_compose(&zero, &g1).unwrap()).is_empty());
    assert!(edges(&graph_compose(&g1.restrict(10).unwrap(), &zero).unwrap()).is_empty());
    assert!(edges(&graph_sub(&g1, &g1).unwrap()).is_empty());

    // Φ_1 Φ_2 = Φ_2 Φ_1 and associativity on a common window.
    let a = graph_compose(&g1.restrict(8).unwrap(), &g2).unwrap();
    let b = graph_compose(&g2.restrict(8).unwrap(), &g1).unwrap();
    assert_eq!(edges(&a), edges(&b));
    let left = graph_compose(&graph_compose(&g1.restrict(6).unwrap(), &g2.restrict(7).unwrap()).unwrap(), &g1).unwrap();
    let right =
        graph_compose(&g1.restrict(6).unwrap(), &graph_compose(&g2.restrict(7).unwrap(), &g1).unwrap()).unwrap();
    assert_eq!(edges(&left), edges(&right));

    // Distributivity.
    let sum = graph_add(&g2, &id).unwrap();
    let lhs = graph_compose(&g1.restrict(10).unwrap(), &sum).unwrap();
    let rhs = graph_add(
        &graph_compose(&g1.restrict(10).unwrap(), &g2).unwrap(),
        &graph_compose(&g1.restrict(10).unwrap(), &id).unwrap(),
    )
    .unwrap();
    assert_eq!(edges(&lhs), edges(&rhs));

    let doubled = graph_scale(&big(2), &g1);
    assert_eq!(star(&doubled, 0), BTreeMap::from([(1, big(8))]));
}

#[test]
fn compose_refuses_short_windows() {
    let f = Field::with_q(2).unwrap();
    let g = graph_phi(&f, 2, 6).unwrap();
    assert!(graph_compose(&g, &g).is_err());
    assert!(graph_compose(&g.restrict(4).unwrap(), &g).is_ok());
    let p = graph_power(&graph_phi(&f, 1, 12).unwrap(), 2).unwrap();
    assert_eq!(p.window(), 11);
}

#[test]
fn power_relations() {
    for q in [2, 3, 4, 5] {
        for r in verify_power_relations(&Field::with_q(q).unwrap(), 12).unwrap() {
            assert!(r.passed(), "q={q}: {r:?}");
        }
    }
}

#[test]
fn degree_zero_is_rejected() {
    let f = Field::with_q(2).unwrap();
    assert!(phi_neighbours(&f, 0, 0).is_err());
    assert!(graph_phi(&f, 0, 3).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn stars_are_symmetric_and_parity_preserving(qi in 0usize..4, d in 1u32..4, n in 0usize..10) {
        let q = [2u64, 3, 4, 5][qi];
        let f = Field::with_q(q).unwrap();
        let s = phi_neighbours(&f, n, d).unwrap();
        prop_assert_eq!(s.values().sum::<u64>(), q.pow(d) + 1);
        for &t in s.keys() {
            prop_assert!(n.abs_diff(t) <= d as usize);
            prop_assert_eq!((n + t + d as usize) % 2, 0);
            prop_assert!(phi_neighbours(&f, t, d).unwrap().contains_key(&n));
        }
    }
}
