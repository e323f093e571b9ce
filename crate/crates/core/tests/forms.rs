mod common;

use hecke_core::forms::*;
use hecke_core::graph::graph_phi;
use hecke_core::Field;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn is_eigenfunction(g: &hecke_core::HeckeGraph, f: &CuspFunction<BigRational>, lambda: &BigRational) -> bool {
    let image = apply_graph(g, f).unwrap();
    image.values().iter().enumerate().all(|(v, x)| *x == lambda * f.value(v))
}

#[test]
fn recursion_agrees_with_solver() {
    let mut rng = common::rng(2024);
    for q in [2u64, 3, 5] {
        let f = Field::with_q(q).unwrap();
        let g = graph_phi(&f, 1, 12).unwrap();
        for _ in 0..20 {
            let lambda = rat(rng.gen_range(-40..40), rng.gen_range(1..9));
            let space = eigenfunction_on_graph(&g, &lambda, 0.0).unwrap();
            assert_eq!(space.dimension, 1);
            let solved = space.basis[0].normalized(0.0);
            let expected = extend_along_cusp(&lambda, BigRational::one(), &lambda / BigInt::from(q + 1), q, g.window());
            assert_eq!(solved, expected.normalized(0.0));
        }
    }
}

#[test]
fn residue_eigenfunctions() {
    for q in [2u64, 3] {
        let f = Field::with_q(q).unwrap();
        for d in 1..=5u32 {
            let g = graph_phi(&f, d, 3 * d as usize).unwrap();
            let qd = BigRational::from_integer(BigInt::from(q.pow(d) + 1));
            let constant = CuspFunction::from_fn(g.window(), |_| BigRational::one());
            assert!(is_eigenfunction(&g, &constant, &qd));
            let alternating =
                CuspFunction::from_fn(
                    g.window(),
                    |n| if n % 2 == 0 { BigRational::one() } else { -BigRational::one() },
                );
            assert_eq!(is_eigenfunction(&g, &alternating, &-qd.clone()), d % 2 == 1, "q={q} d={d}");
        }
    }
}

#[test]
fn complex_mode_matches_exact_mode() {
    let f = Field::with_q(3).unwrap();
    let g = graph_phi(&f, 1, 10).unwrap();
    let exact = eigenfunction_on_graph(&g, &rat(5, 2), 0.0).unwrap().basis[0].normalized(0.0);
    let approx = eigenfunction_on_graph(&g, &Complex64::new(2.5, 0.0), 1e-10).unwrap().basis[0].normalized(1e-10);
    for (a, b) in exact.values().iter().zip(approx.values()) {
        let a = num_traits::ToPrimitive::to_f64(a).unwrap();
        assert!((Complex64::new(a, 0.0) - b).norm() <= 1e-10 * a.abs().max(1.0));
    }
}

#[test]
fn eisenstein_values_are_eigenvalues_of_the_recursion() {
    // For f_n = q^{n/2} (t^n + t^{-n}) the recursion holds with λ = √q (t + 1/t).
    let q = 5u64;
    let t = Complex64::new(0.3, 0.8);
    let lambda = eisenstein_eigenvalue(t, q).unwrap();
    let s = (q as f64).sqrt();
    let f = |n: i32| s.powi(n) * (t.powi(n) + t.powi(-n));
    let ext = extend_along_cusp(&lambda, f(0), f(1), q, 8);
    for n in 0..=8 {
        assert!((ext.value(n as usize) - f(n)).norm() < 1e-8);
    }
}

#[test]
fn joint_eigenfunctions_for_several_degrees() {
    let f = Field::with_q(2).unwrap();
    let g1 = graph_phi(&f, 1, 8).unwrap();
    let g2 = graph_phi(&f, 2, 8).unwrap();
    let both = joint_eigenfunctions(&[(&g1, rat(3, 1)), (&g2, rat(5, 1))], 0.0).unwrap();
    assert_eq!(both.dimension, 1);
    let none = joint_eigenfunctions(&[(&g1, rat(3, 1)), (&g2, rat(4, 1))], 0.0).unwrap();
    assert_eq!(none.dimension, 0);
}

#[test]
fn solvers_are_trivial_and_homogeneous() {
    for q in [2u64, 3] {
        let f = Field::with_q(q).unwrap();
        let mut cache = StarCache::new(&f, 10);
        let system = ConditionSystem::for_operators(&mut cache, &[0], 5).unwrap();
        let base = system.solve(&(0..=5).collect::<Vec<_>>(), 10).unwrap();
        assert_eq!(base.dimension, 0);
        for c in [rat(-3, 1), rat(7, 4)] {
            assert_eq!(system.scaled(&c).solve(&(0..=5).collect::<Vec<_>>(), 10).unwrap(), base);
        }
        assert!(system.scaled(&BigRational::zero()).solve(&[0, 1], 10).unwrap().dimension == 2);
    }
}

#[test]
fn condition_rows_lead_with_q_plus_one() {
    let f = Field::with_q(4).unwrap();
    let mut cache = StarCache::new(&f, 12);
    for d in 1..=6u32 {
        let row = condition_row(&mut cache, 0, &[d]).unwrap();
        assert_eq!(row.keys().max(), Some(&(d as usize)));
        assert_eq!(row[&(d as usize)], BigInt::from(5));
        assert_eq!(row.values().sum::<BigInt>(), BigInt::from(4u64.pow(d) + 1));
    }
    for step in toroidal_induction(&f, 6, 12).unwrap() {
        assert_eq!(step.value, "0");
    }
}
