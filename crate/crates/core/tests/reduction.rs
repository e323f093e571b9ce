mod common;

use common::*;
use hecke_core::{reduce, Field, Mat2, StdVertex};

#[test]
fn double_coset_perturbations_do_not_move_the_class() {
    for q in [2, 3, 4, 5] {
        let f = Field::with_q(q).unwrap();
        let mut rng = rng(q);
        for _ in 0..100 {
            let m = random_matrix(&mut rng, &f);
            let base = reduce(&m).unwrap();
            let moved = random_gamma(&mut rng, &f).mul(&m).unwrap();
            let moved = moved.mul(&random_k(&mut rng, &f)).unwrap().mul(&random_z(&mut rng, &f)).unwrap();
            assert_eq!(reduce(&moved).unwrap(), base, "q={q} m={m:?}");
            let v_det = m.det().valuation().unwrap();
            assert_eq!((base.0 as i64 - v_det).rem_euclid(2), 0);
        }
    }
}

#[test]
fn perturbed_standard_representatives() {
    let f = Field::with_q(3).unwrap();
    let mut rng = rng(7);
    for n in 0..12 {
        for _ in 0..10 {
            let m = random_gamma(&mut rng, &f).mul(&Mat2::standard(&f, n)).unwrap();
            let m = m.mul(&random_k(&mut rng, &f)).unwrap();
            assert_eq!(reduce(&m).unwrap(), StdVertex(n));
        }
    }
}

#[test]
fn reduction_is_idempotent_on_results() {
    let f = Field::with_q(4).unwrap();
    let mut rng = rng(11);
    for _ in 0..50 {
        let v = reduce(&random_matrix(&mut rng, &f)).unwrap();
        assert_eq!(reduce(&Mat2::standard(&f, v.0)).unwrap(), v);
    }
}
