#![allow(dead_code)]

use hecke_core::{Field, FqElem, LaurentPoly, Mat2};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn random_elem(rng: &mut ChaCha8Rng, f: &Field) -> FqElem {
    FqElem(rng.gen_range(0..f.q() as u32))
}

pub fn random_unit(rng: &mut ChaCha8Rng, f: &Field) -> FqElem {
    FqElem(rng.gen_range(1..f.q() as u32))
}

/// Random coefficients in degrees `lo..=hi`.
pub fn random_poly(rng: &mut ChaCha8Rng, f: &Field, lo: i64, hi: i64) -> LaurentPoly {
    LaurentPoly::from_terms(f, (lo..=hi).map(|i| (i, random_elem(rng, f))).collect::<Vec<_>>())
}

fn elementary(f: &Field, upper: bool, x: LaurentPoly) -> Mat2 {
    let one = LaurentPoly::one(f);
    let zero = LaurentPoly::zero(f);
    if upper {
        Mat2::new(one.clone(), x, zero, one).unwrap()
    } else {
        Mat2::new(one.clone(), zero, x, one).unwrap()
    }
}

fn swap(f: &Field) -> Mat2 {
    let one = LaurentPoly::one(f);
    let zero = LaurentPoly::zero(f);
    Mat2::new(zero.clone(), one.clone(), one, zero).unwrap()
}

fn product(factors: Vec<Mat2>) -> Mat2 {
    factors.into_iter().reduce(|a, b| a.mul(&b).unwrap()).unwrap()
}

/// A random element of `GL_2(F_q[π⁻¹])`: elementary factors with
/// polynomial entries in `π⁻¹`, a constant diagonal and maybe a swap.
pub fn random_gamma(rng: &mut ChaCha8Rng, f: &Field) -> Mat2 {
    let mut factors = Vec::new();
    for i in 0..4 {
        factors.push(elementary(f, i % 2 == 0, random_poly(rng, f, -3, 0)));
    }
    let (a, b) = (random_unit(rng, f), random_unit(rng, f));
    factors.push(Mat2::diag(LaurentPoly::constant(f, a), LaurentPoly::constant(f, b)).unwrap());
    if rng.gen_bool(0.5) {
        factors.push(swap(f));
    }
    product(factors)
}

/// A random element of `GL_2(F_q[[π]])` with polynomial entries.
pub fn random_k(rng: &mut ChaCha8Rng, f: &Field) -> Mat2 {
    let mut factors = Vec::new();
    for i in 0..4 {
        factors.push(elementary(f, i % 2 == 1, random_poly(rng, f, 0, 3)));
    }
    let unit = &LaurentPoly::constant(f, random_unit(rng, f)) + &random_poly(rng, f, 1, 3);
    factors.push(Mat2::diag(unit, LaurentPoly::constant(f, random_unit(rng, f))).unwrap());
    if rng.gen_bool(0.5) {
        factors.push(swap(f));
    }
    product(factors)
}

/// A random central element `c·πᵏ`.
pub fn random_z(rng: &mut ChaCha8Rng, f: &Field) -> Mat2 {
    let c = LaurentPoly::monomial(f, random_unit(rng, f), rng.gen_range(-3..=3));
    Mat2::diag(c.clone(), c).unwrap()
}

/// A random invertible matrix with entries in degrees `-3..=3`.
pub fn random_matrix(rng: &mut ChaCha8Rng, f: &Field) -> Mat2 {
    loop {
        let e: Vec<LaurentPoly> = (0..4).map(|_| random_poly(rng, f, -3, 3)).collect();
        if let Ok(m) = Mat2::new(e[0].clone(), e[1].clone(), e[2].clone(), e[3].clone()) {
            return m;
        }
    }
}
