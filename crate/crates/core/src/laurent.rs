//! Exact Laurent polynomials in `F_q[π, π⁻¹]` and precision-tracked series
//! in `F_q((π))`.
//!
//! Every matrix entry handled by the reduction engine is a [`LaurentPoly`].
//! Power series only appear as inverses of units, produced by
//! [`LaurentPoly::inverse_mod`] with an explicit precision bound.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FqElem};

/// A finite sum `Σ c_i π^i` with `c_i ∈ F_q`.
///
/// Stored densely from the lowest to the highest nonzero degree; the zero
/// polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    field: Field,
    low: i64,
    coeffs: Vec<FqElem>,
}

impl LaurentPoly {
    pub fn zero(field: &Field) -> Self {
        LaurentPoly { field: field.clone(), low: 0, coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(field, FqElem::ONE)
    }

    pub fn constant(field: &Field, c: FqElem) -> Self {
        Self::monomial(field, c, 0)
    }

    /// `c·π^degree`.
    pub fn monomial(field: &Field, c: FqElem, degree: i64) -> Self {
        Self::from_dense(field, degree, vec![c])
    }

    /// `π^degree`.
    pub fn pi_pow(field: &Field, degree: i64) -> Self {
        Self::monomial(field, FqElem::ONE, degree)
    }

    /// Coefficients `coeffs[i]` at degree `low + i`.
    pub fn from_dense(field: &Field, low: i64, coeffs: Vec<FqElem>) -> Self {
        let mut p = LaurentPoly { field: field.clone(), low, coeffs };
        p.normalize();
        p
    }

    /// Builds a polynomial from `(degree, coefficient)` pairs; repeated
    /// degrees are summed.
    pub fn from_terms(field: &Field, terms: impl IntoIterator<Item = (i64, FqElem)>) -> Self {
        let mut acc: BTreeMap<i64, FqElem> = BTreeMap::new();
        for (d, c) in terms {
            let e = acc.entry(d).or_insert(FqElem::ZERO);
            *e = field.add(*e, c);
        }
        let Some((&low, _)) = acc.iter().next() else {
            return Self::zero(field);
        };
        let high = *acc.keys().next_back().unwrap();
        let mut coeffs = vec![FqElem::ZERO; (high - low + 1) as usize];
        for (d, c) in acc {
            coeffs[(d - low) as usize] = c;
        }
        Self::from_dense(field, low, coeffs)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs == [FqElem::ONE]
    }

    /// Least degree with a nonzero coefficient.
    pub fn valuation(&self) -> Result<i64> {
        if self.is_zero() {
            Err(Error::ZeroValuation)
        } else {
            Ok(self.low)
        }
    }

    /// Highest degree with a nonzero coefficient, `None` for zero.
    pub fn max_degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, degree: i64) -> FqElem {
        if degree < self.low {
            return FqElem::ZERO;
        }
        self.coeffs.get((degree - self.low) as usize).copied().unwrap_or(FqElem::ZERO)
    }

    /// Nonzero `(degree, coefficient)` pairs in increasing degree.
    pub fn terms(&self) -> impl Iterator<Item = (i64, FqElem)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, &c)| (self.low + i as i64, c))
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let low = self.low.min(other.low);
        let high = self.max_degree().unwrap().max(other.max_degree().unwrap());
        let f = &self.field;
        let coeffs = (low..=high).map(|d| f.add(self.coeff(d), other.coeff(d))).collect();
        Ok(Self::from_dense(f, low, coeffs))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(f));
        }
        let mut coeffs = vec![FqElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(coeffs[i + j], f.mul(a, b));
            }
        }
        Ok(Self::from_dense(f, self.low + other.low, coeffs))
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        LaurentPoly { field: f.clone(), low: self.low, coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }

    pub fn scale(&self, c: FqElem) -> Self {
        let f = &self.field;
        Self::from_dense(f, self.low, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiplication by `π^k`.
    pub fn shift(&self, k: i64) -> Self {
        let mut out = self.clone();
        if !out.is_zero() {
            out.low += k;
        }
        out
    }

    /// Writes `self = s·π^k` with `valuation(s) = 0`.
    pub fn unit_factor(&self) -> Result<(i64, LaurentPoly)> {
        let k = self.valuation()?;
        Ok((k, self.shift(-k)))
    }

    /// Restriction to the degrees `lo <= i < hi`.
    pub fn window(&self, lo: i64, hi: i64) -> Self {
        if self.is_zero() || lo >= hi {
            return Self::zero(&self.field);
        }
        let start = lo.max(self.low);
        let end = hi.min(self.low + self.coeffs.len() as i64);
        if start >= end {
            return Self::zero(&self.field);
        }
        let slice = self.coeffs[(start - self.low) as usize..(end - self.low) as usize].to_vec();
        Self::from_dense(&self.field, start, slice)
    }

    /// The inverse of a unit modulo `π^precision`.
    ///
    /// Uses `t_0 = s_0⁻¹`, `t_j = -s_0⁻¹ Σ_{i=1..j} s_i t_{j-i}`.
    pub fn inverse_mod(&self, precision: i64) -> Result<TruncatedSeries> {
        let v = self.valuation()?;
        if v != 0 {
            return Err(Error::NotAUnit(v));
        }
        if precision < 1 {
            return Err(Error::InvalidArgument(format!("inverse precision must be at least 1, got {precision}")));
        }
        let f = &self.field;
        let m = precision as usize;
        let s0_inv = f.inv(self.coeffs[0]);
        let minus_s0_inv = f.neg(s0_inv);
        let mut t = Vec::with_capacity(m);
        t.push(s0_inv);
        for j in 1..m {
            let mut acc = FqElem::ZERO;
            for i in 1..=j.min(self.coeffs.len() - 1) {
                acc = f.add(acc, f.mul(self.coeffs[i], t[j - i]));
            }
            t.push(f.mul(minus_s0_inv, acc));
        }
        Ok(TruncatedSeries { field: f.clone(), val: 0, prec: precision, coeffs: t })
    }

    pub fn to_json(&self) -> LaurentJson {
        LaurentJson { coeffs: self.terms().map(|(d, c)| (d, self.field.format_elem(c))).collect() }
    }

    pub fn from_json(field: &Field, json: &LaurentJson) -> Result<Self> {
        let terms =
            json.coeffs.iter().map(|(&d, s)| field.parse_elem(s).map(|c| (d, c))).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_terms(field, terms))
    }
}

/// Textual form `{"coeffs": {"-2": "3", "0": "1"}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentJson {
    pub coeffs: BTreeMap<i64, String>,
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(d, c)| {
                let c = self.field.format_elem(c);
                let c = if c.contains('+') { format!("({c})") } else { c };
                match d {
                    0 => c,
                    _ if c == "1" => format!("π^{d}"),
                    _ => format!("{c}·π^{d}"),
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("field mismatch in LaurentPoly addition")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_sub(rhs).expect("field mismatch in LaurentPoly subtraction")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("field mismatch in LaurentPoly multiplication")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::neg(self)
    }
}

/// An element of `F_q((π))` known modulo `π^prec`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    field: Field,
    val: i64,
    prec: i64,
    /// Coefficients for degrees `val..prec`.
    coeffs: Vec<FqElem>,
}

impl TruncatedSeries {
    /// A series from explicit coefficients at degrees `val..prec`.
    pub fn new(field: &Field, val: i64, prec: i64, coeffs: Vec<FqElem>) -> Result<Self> {
        if val >= prec || coeffs.len() as i64 != prec - val {
            return Err(Error::InvalidArgument(format!(
                "{} coefficients do not fill degrees [{val}, {prec})",
                coeffs.len()
            )));
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        let (val, coeffs) = if lead == coeffs.len() {
            (prec - 1, vec![FqElem::ZERO])
        } else {
            (val + lead as i64, coeffs[lead..].to_vec())
        };
        Ok(TruncatedSeries { field: field.clone(), val, prec, coeffs })
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    pub fn is_zero_to_precision(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn valuation(&self) -> Result<i64> {
        if self.is_zero_to_precision() {
            Err(Error::ZeroValuation)
        } else {
            Ok(self.val)
        }
    }

    /// Coefficient at `degree`; `None` at or above the precision bound.
    pub fn coeff(&self, degree: i64) -> Option<FqElem> {
        if degree >= self.prec {
            None
        } else if degree < self.val {
            Some(FqElem::ZERO)
        } else {
            Some(self.coeffs[(degree - self.val) as usize])
        }
    }

    /// The known part as an exact polynomial (degrees below `prec`).
    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_dense(&self.field, self.val, self.coeffs.clone())
    }

    /// Product with an exact polynomial; precision shifts by its valuation.
    pub fn mul_poly(&self, a: &LaurentPoly) -> Result<TruncatedSeries> {
        let va = a.valuation()?;
        let prec = self.prec + va;
        let full = self.to_laurent().try_mul(a)?.window(i64::MIN / 4, prec);
        if full.is_zero() {
            return TruncatedSeries::new(&self.field, prec - 1, prec, vec![FqElem::ZERO]);
        }
        let val = full.valuation()?;
        let coeffs = (val..prec).map(|d| full.coeff(d)).collect();
        TruncatedSeries::new(&self.field, val, prec, coeffs)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(π^{})", self.to_laurent(), self.prec)
    }
}
