//! Finite fields `F_q`, `q = p^k`, with table-driven arithmetic.
//!
//! An element is stored as its index in the lexicographic enumeration of
//! coefficient vectors: the element `c_0 + c_1 t + ... + c_{k-1} t^{k-1}` has
//! index `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`. Zero is index 0 and one is
//! index 1 in every field, and all arithmetic goes through tables built once
//! per [`Field`].

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field size accepted. Tables are `q * q` entries.
pub const MAX_FIELD_SIZE: u64 = 256;

/// Default irreducible moduli (constant term first) for the non-prime `q <= 25`.
const DEFAULT_MODULI: &[(u64, &[u32])] =
    &[(4, &[1, 1, 1]), (8, &[1, 1, 0, 1]), (9, &[1, 0, 1]), (16, &[1, 1, 0, 0, 1]), (25, &[2, 0, 1])];

/// An element of `F_q`, identified by its canonical index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FqElem(pub u32);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// A point of the projective line over `F_q`.
///
/// `Affine(b)` is `[1:b]`, `Infinity` is `[0:1]`. The derived order puts all
/// affine points (by element index) before infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProjPoint {
    Affine(FqElem),
    Infinity,
}

/// Characteristic, degree and modulus of a finite field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub p: u32,
    pub k: u32,
    /// Monic modulus of degree `k`, constant term first. Empty when `k == 1`.
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.k)
    }
}

#[derive(Debug)]
struct Tables {
    spec: FieldSpec,
    q: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

/// Shared handle to a finite field and its arithmetic tables.
#[derive(Clone)]
pub struct Field(Arc<Tables>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field(q = {}, modulus = {:?})", self.0.q, self.0.spec.modulus)
    }
}

impl Field {
    /// Builds `F_q`, using the built-in modulus table when `q` is not prime.
    pub fn with_q(q: u64) -> Result<Field> {
        Field::new(q, None)
    }

    /// Builds `F_q` from `q` and an optional modulus (constant term first).
    ///
    /// A modulus given for a prime `q` must be the monic linear polynomial
    /// `t`, i.e. `[0, 1]`, or it is rejected.
    pub fn new(q: u64, modulus: Option<&[u32]>) -> Result<Field> {
        if q > MAX_FIELD_SIZE {
            return Err(Error::FieldTooLarge(q));
        }
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let modulus = match (k, modulus) {
            (1, None) => Vec::new(),
            (1, Some(m)) => {
                if m != [0, 1] {
                    return Err(Error::InvalidModulus(format!(
                        "q = {q} is prime; the only accepted modulus is [0, 1]"
                    )));
                }
                Vec::new()
            }
            (_, Some(m)) => m.to_vec(),
            (_, None) => DEFAULT_MODULI
                .iter()
                .find(|(qq, _)| *qq == q)
                .map(|(_, m)| m.to_vec())
                .ok_or(Error::NoDefaultModulus(q))?,
        };
        Field::from_spec(FieldSpec { p, k, modulus })
    }

    pub fn from_spec(spec: FieldSpec) -> Result<Field> {
        let FieldSpec { p, k, ref modulus } = spec;
        if k == 0 || !is_prime(p as u64) {
            return Err(Error::NotPrimePower((p as u64).saturating_pow(k)));
        }
        let q = spec.q();
        if q > MAX_FIELD_SIZE {
            return Err(Error::FieldTooLarge(q));
        }
        if k > 1 {
            validate_modulus(p, k, modulus)?;
        } else if !modulus.is_empty() {
            return Err(Error::InvalidModulus("prime fields take no modulus".into()));
        }
        let q = q as u32;
        let coeffs: Vec<Vec<u32>> = (0..q).map(|i| digits(i, p, k)).collect();
        let index_of = |c: &[u32]| -> u32 { c.iter().rev().fold(0, |acc, &d| acc * p + d) };

        let mut add = vec![0; (q * q) as usize];
        let mut mul = vec![0; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                let ca = &coeffs[a as usize];
                let cb = &coeffs[b as usize];
                let sum: Vec<u32> = ca.iter().zip(cb).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = index_of(&sum);
                let prod = if k == 1 { vec![(ca[0] * cb[0]) % p] } else { poly_mulmod(ca, cb, modulus, p) };
                mul[(a * q + b) as usize] = index_of(&prod);
            }
        }
        let mut neg = vec![0; q as usize];
        let mut inv = vec![0; q as usize];
        for a in 0..q {
            neg[a as usize] = (0..q).find(|&b| add[(a * q + b) as usize] == 0).unwrap();
            if a != 0 {
                inv[a as usize] = (1..q)
                    .find(|&b| mul[(a * q + b) as usize] == 1)
                    .ok_or_else(|| Error::InvalidModulus("modulus is reducible".into()))?;
            }
        }
        Ok(Field(Arc::new(Tables { spec, q, add, mul, neg, inv })))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn q(&self) -> u64 {
        self.0.q as u64
    }

    pub fn characteristic(&self) -> u32 {
        self.0.spec.p
    }

    pub fn degree(&self) -> u32 {
        self.0.spec.k
    }

    /// Checked constructor from a canonical index.
    pub fn elem(&self, index: u32) -> Result<FqElem> {
        if index < self.0.q {
            Ok(FqElem(index))
        } else {
            Err(Error::ElementOutOfRange { index, q: self.q() })
        }
    }

    /// Element from a coefficient vector over `F_p` (constant term first).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FqElem> {
        let p = self.0.spec.p;
        if coeffs.len() > self.0.spec.k as usize {
            return Err(Error::InvalidArgument(format!(
                "{} coefficients given for a degree-{} field",
                coeffs.len(),
                self.0.spec.k
            )));
        }
        let index = coeffs.iter().rev().fold(0u32, |acc, &c| acc * p + c % p);
        Ok(FqElem(index))
    }

    pub fn coeffs(&self, a: FqElem) -> Vec<u32> {
        digits(a.0, self.0.spec.p, self.0.spec.k)
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> FqElem {
        FqElem(n.rem_euclid(self.0.spec.p as i64) as u32)
    }

    fn check(&self, a: FqElem) -> Result<()> {
        self.elem(a.0).map(|_| ())
    }

    pub fn fq_add(&self, a: FqElem, b: FqElem) -> Result<FqElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add(a, b))
    }

    pub fn fq_mul(&self, a: FqElem, b: FqElem) -> Result<FqElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn fq_inv(&self, a: FqElem) -> Result<FqElem> {
        self.check(a)?;
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(FqElem(self.0.inv[a.0 as usize]))
    }

    // Unchecked fast paths; callers guarantee in-range operands.

    #[inline]
    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        FqElem(self.0.add[(a.0 * self.0.q + b.0) as usize])
    }

    #[inline]
    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        FqElem(self.0.mul[(a.0 * self.0.q + b.0) as usize])
    }

    #[inline]
    pub fn neg(&self, a: FqElem) -> FqElem {
        FqElem(self.0.neg[a.0 as usize])
    }

    /// Inverse of a nonzero element. Panics on zero.
    #[inline]
    pub fn inv(&self, a: FqElem) -> FqElem {
        assert!(!a.is_zero(), "inverse of zero");
        FqElem(self.0.inv[a.0 as usize])
    }

    /// All `q` elements, zero first, in lexicographic order.
    pub fn enumerate_elements(&self) -> Vec<FqElem> {
        (0..self.0.q).map(FqElem).collect()
    }

    /// The nonzero elements in canonical order.
    pub fn units(&self) -> impl Iterator<Item = FqElem> {
        (1..self.0.q).map(FqElem)
    }

    /// The `q` affine points `[1:b]` followed by `[0:1]`.
    pub fn projective_line(&self) -> Vec<ProjPoint> {
        self.enumerate_elements()
            .into_iter()
            .map(ProjPoint::Affine)
            .chain(std::iter::once(ProjPoint::Infinity))
            .collect()
    }

    /// Canonical string form: a decimal residue for prime fields, otherwise
    /// a polynomial in `t` with the highest degree first (`2t^2+t+1`).
    pub fn format_elem(&self, a: FqElem) -> String {
        if self.0.spec.k == 1 {
            return a.0.to_string();
        }
        let c = self.coeffs(a);
        let mut terms = Vec::new();
        for (i, &ci) in c.iter().enumerate().rev() {
            if ci == 0 {
                continue;
            }
            let term = match (i, ci) {
                (0, _) => ci.to_string(),
                (1, 1) => "t".to_string(),
                (1, _) => format!("{ci}t"),
                (_, 1) => format!("t^{i}"),
                _ => format!("{ci}t^{i}"),
            };
            terms.push(term);
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }

    /// Inverse of [`Field::format_elem`]. Prime fields also accept any
    /// integer, reduced mod `p`.
    pub fn parse_elem(&self, s: &str) -> Result<FqElem> {
        let s = s.trim();
        let p = self.0.spec.p;
        if self.0.spec.k == 1 {
            let n: i64 = s.parse().map_err(|_| Error::Parse(format!("not an element of F_{p}: {s:?}")))?;
            return Ok(self.from_int(n));
        }
        let k = self.0.spec.k as usize;
        let mut coeffs = vec![0u32; k];
        if s == "0" {
            return Ok(FqElem::ZERO);
        }
        for term in s.split('+') {
            let bad = || Error::Parse(format!("malformed field element {s:?}"));
            let (c, e) = match term.find('t') {
                None => (term.parse::<u32>().map_err(|_| bad())?, 0usize),
                Some(pos) => {
                    let c = if pos == 0 { 1 } else { term[..pos].parse::<u32>().map_err(|_| bad())? };
                    let rest = &term[pos + 1..];
                    let e = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').ok_or_else(bad)?.parse::<usize>().map_err(|_| bad())?
                    };
                    (c, e)
                }
            };
            if e >= k || c >= p {
                return Err(bad());
            }
            coeffs[e] = (coeffs[e] + c) % p;
        }
        self.from_coeffs(&coeffs)
    }

    pub fn format_point(&self, w: ProjPoint) -> String {
        match w {
            ProjPoint::Affine(b) => format!("[1:{}]", self.format_elem(b)),
            ProjPoint::Infinity => "[0:1]".to_string(),
        }
    }
}

/// Splits `q` into `(p, k)` with `q = p^k`, `p` prime.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|&d| q.is_multiple_of(d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p as u32, k))
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn digits(mut index: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = index % p;
            index /= p;
            d
        })
        .collect()
}

fn validate_modulus(p: u32, k: u32, m: &[u32]) -> Result<()> {
    if m.len() != k as usize + 1 {
        return Err(Error::InvalidModulus(format!(
            "expected {} coefficients for a degree-{k} modulus, got {}",
            k + 1,
            m.len()
        )));
    }
    if m.iter().any(|&c| c >= p) {
        return Err(Error::InvalidModulus(format!("coefficients must lie in [0, {p})")));
    }
    if m[k as usize] != 1 {
        return Err(Error::InvalidModulus("modulus must be monic".into()));
    }
    // Trial division by every monic polynomial of degree 1..=k/2.
    for deg in 1..=k / 2 {
        for low in 0..p.pow(deg) {
            let mut divisor = digits(low, p, deg);
            divisor.push(1);
            if poly_rem(m, &divisor, p).iter().all(|&c| c == 0) {
                return Err(Error::InvalidModulus(format!("modulus {m:?} is divisible by {divisor:?} over F_{p}")));
            }
        }
    }
    Ok(())
}

/// Remainder of `a` modulo a monic `m` over `F_p`, length `deg m`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let off = r.len() - dm;
            for (i, &mi) in m[..dm].iter().enumerate() {
                r[off + i] = (r[off + i] + p - (lead * mi) % p) % p;
            }
        }
    }
    r.resize(dm, 0);
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&prod, m, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Field {
        Field::with_q(4).unwrap()
    }

    #[test]
    fn prime_field_examples() {
        let f3 = Field::with_q(3).unwrap();
        assert_eq!(f3.fq_add(FqElem(2), FqElem(2)).unwrap(), FqElem(1));
        assert_eq!(f3.fq_inv(FqElem(2)).unwrap(), FqElem(2));
        let f2 = Field::with_q(2).unwrap();
        assert_eq!(f2.fq_add(FqElem::ONE, FqElem::ONE).unwrap(), FqElem::ZERO);
        let f5 = Field::with_q(5).unwrap();
        assert_eq!(f5.fq_mul(FqElem(3), FqElem(4)).unwrap(), FqElem(2));
    }

    #[test]
    fn f4_examples() {
        let f = f4();
        let t = f.from_coeffs(&[0, 1]).unwrap();
        let t1 = f.from_coeffs(&[1, 1]).unwrap();
        assert_eq!(f.fq_add(t, t1).unwrap(), FqElem::ONE);
        assert_eq!(f.fq_mul(t, t).unwrap(), t1);
        assert_eq!(f.format_elem(t1), "t+1");
        let names: Vec<_> = f.enumerate_elements().into_iter().map(|a| f.format_elem(a)).collect();
        assert_eq!(names, ["0", "1", "t", "t+1"]);
    }

    #[test]
    fn enumeration_and_projective_line() {
        let f2 = Field::with_q(2).unwrap();
        assert_eq!(f2.enumerate_elements(), vec![FqElem(0), FqElem(1)]);
        assert_eq!(
            f2.projective_line(),
            vec![ProjPoint::Affine(FqElem(0)), ProjPoint::Affine(FqElem(1)), ProjPoint::Infinity]
        );
        assert_eq!(Field::with_q(3).unwrap().projective_line().len(), 4);
        assert_eq!(f4().projective_line().len(), 5);
    }

    #[test]
    fn errors() {
        let f3 = Field::with_q(3).unwrap();
        assert_eq!(f3.fq_inv(FqElem::ZERO), Err(Error::DivisionByZero));
        assert!(matches!(f3.fq_add(FqElem(3), FqElem(0)), Err(Error::ElementOutOfRange { .. })));
        assert_eq!(Field::with_q(6).unwrap_err(), Error::NotPrimePower(6));
        assert_eq!(Field::with_q(1).unwrap_err(), Error::NotPrimePower(1));
        assert_eq!(Field::with_q(27).unwrap_err(), Error::NoDefaultModulus(27));
        // t^2 + 1 = (t + 1)^2 over F_2
        assert!(matches!(Field::new(4, Some(&[1, 0, 1])), Err(Error::InvalidModulus(_))));
        // not monic
        assert!(matches!(Field::new(9, Some(&[1, 0, 2])), Err(Error::InvalidModulus(_))));
        assert!(Field::new(27, Some(&[1, 2, 0, 1])).is_ok());
    }

    #[test]
    fn field_axioms_on_all_default_fields() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25] {
            let f = Field::with_q(q).unwrap();
            let els = f.enumerate_elements();
            assert_eq!(els.len() as u64, q);
            for &a in &els {
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a)), FqElem::ONE, "q = {q}");
                }
                assert_eq!(f.add(a, f.neg(a)), FqElem::ZERO);
                for &b in &els {
                    assert!(f.add(a, b).0 < q as u32 && f.mul(a, b).0 < q as u32);
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                }
            }
            let pts = f.projective_line();
            let mut dedup = pts.clone();
            dedup.dedup();
            assert_eq!(dedup.len() as u64, q + 1);
        }
    }

    #[test]
    fn string_round_trip() {
        for q in [5, 9, 16, 25] {
            let f = Field::with_q(q).unwrap();
            for a in f.enumerate_elements() {
                assert_eq!(f.parse_elem(&f.format_elem(a)).unwrap(), a);
            }
        }
        assert!(f4().parse_elem("t^2").is_err());
    }
}
