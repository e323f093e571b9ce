//! Reduction of matrices in `GL_2(F_q((π)))` to the standard representatives
//! `p_n = diag(π⁻ⁿ, 1)` of the double coset space `Γ \ G / K·Z`.
//!
//! The engine runs the following sequence of representative changes:
//!
//! 1. right-multiply by an element of `K` to make the matrix upper triangular,
//!    then divide by the lower-right entry (centre);
//! 2. strip the unit part of the upper-left entry (`K` on the right), leaving
//!    `(πⁿ, b; 0, 1)`;
//! 3. drop the part of `b` in degrees `>= n` (`K` on the right);
//! 4. drop the part of `b` in degrees `<= 0` (`Γ` on the left);
//! 5. if `b = s·πᵏ ≠ 0` with `1 <= k <= n-1`, replace the state by
//!    `(π^{n-2k}, s⁻¹π⁻ᵏ; 0, 1)` and go back to step 3;
//! 6. once `b = 0`, `diag(πⁿ, 1)` and `diag(π⁻ⁿ, 1)` are equivalent, so the
//!    class is `c_|n|`.
//!
//! Each pass through step 5 lowers `n` by `2k >= 2`, which bounds the loop.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::laurent::LaurentPoly;

/// A 2×2 matrix `(a b; c d)` over `F_q[π, π⁻¹]` with nonzero determinant.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat2 {
    a: LaurentPoly,
    b: LaurentPoly,
    c: LaurentPoly,
    d: LaurentPoly,
}

impl Mat2 {
    pub fn new(a: LaurentPoly, b: LaurentPoly, c: LaurentPoly, d: LaurentPoly) -> Result<Mat2> {
        let f = a.field();
        if b.field() != f || c.field() != f || d.field() != f {
            return Err(Error::FieldMismatch);
        }
        let m = Mat2 { a, b, c, d };
        if m.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(m)
    }

    pub fn identity(field: &Field) -> Mat2 {
        Mat2::diag(LaurentPoly::one(field), LaurentPoly::one(field)).unwrap()
    }

    pub fn diag(x: LaurentPoly, y: LaurentPoly) -> Result<Mat2> {
        let zero = LaurentPoly::zero(x.field());
        Mat2::new(x, zero.clone(), zero, y)
    }

    /// `(a b; 0 d)`.
    pub fn upper(a: LaurentPoly, b: LaurentPoly, d: LaurentPoly) -> Result<Mat2> {
        let zero = LaurentPoly::zero(a.field());
        Mat2::new(a, b, zero, d)
    }

    /// The standard representative `p_n = diag(π⁻ⁿ, 1)` of the vertex `c_n`.
    pub fn standard(field: &Field, n: usize) -> Mat2 {
        Mat2::diag(LaurentPoly::pi_pow(field, -(n as i64)), LaurentPoly::one(field)).unwrap()
    }

    pub fn field(&self) -> &Field {
        self.a.field()
    }

    pub fn entries(&self) -> [&LaurentPoly; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> LaurentPoly {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn mul(&self, rhs: &Mat2) -> Result<Mat2> {
        let e =
            |x: &LaurentPoly, y: &LaurentPoly, z: &LaurentPoly, w: &LaurentPoly| x.try_mul(y)?.try_add(&z.try_mul(w)?);
        Mat2::new(
            e(&self.a, &rhs.a, &self.b, &rhs.c)?,
            e(&self.a, &rhs.b, &self.b, &rhs.d)?,
            e(&self.c, &rhs.a, &self.d, &rhs.c)?,
            e(&self.c, &rhs.b, &self.d, &rhs.d)?,
        )
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.c.is_zero()
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {}, {})", self.a, self.b, self.c, self.d)
    }
}

/// The loop state `(πⁿ, b; 0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UTState {
    pub n: i64,
    pub b: LaurentPoly,
}

/// The vertex `c_n`, represented by `p_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StdVertex(pub usize);

impl StdVertex {
    pub fn index(self) -> usize {
        self.0
    }

    /// Parity label of the vertex: `n mod 2`.
    pub fn label(self) -> u8 {
        (self.0 % 2) as u8
    }
}

impl fmt::Display for StdVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}", self.0)
    }
}

/// Right-multiplies `m` by an element of `K = GL_2(F_q[[π]])` to reach an
/// upper triangular matrix `(πᵉ, b; 0, d)` in the same right `K`-class.
///
/// If `v(c) < v(d)` the columns are swapped first. The column operation
/// `(1 0; -c/d 1)` then clears `c` while leaving the second column alone;
/// the new upper-left entry has valuation `v(det) - v(d)`, and its unit part
/// is absorbed by `diag(unit, 1) ∈ K`, so it is returned as the exact
/// monomial `πᵉ`.
pub fn iwasawa(m: &Mat2) -> Result<Mat2> {
    let field = m.field();
    if m.c.is_zero() {
        let e = m.a.valuation()?;
        return Mat2::upper(LaurentPoly::pi_pow(field, e), m.b.clone(), m.d.clone());
    }
    let swap = m.d.is_zero() || m.c.valuation()? < m.d.valuation()?;
    let (b, d) = if swap { (&m.a, &m.c) } else { (&m.b, &m.d) };
    let e = m.det().valuation()? - d.valuation()?;
    Mat2::upper(LaurentPoly::pi_pow(field, e), b.clone(), d.clone())
}

/// Turns an invertible matrix into the loop state `(πⁿ, b; 0, 1)`, keeping
/// only the degrees of `b` below `n` (the rest is removable by `K`).
pub fn to_state(m: &Mat2) -> Result<UTState> {
    let ut = iwasawa(m)?;
    let vd = ut.d.valuation()?;
    let n = ut.a.valuation()? - vd;
    if ut.b.is_zero() {
        return Ok(UTState { n, b: LaurentPoly::zero(m.field()) });
    }
    // b/d = b·u⁻¹·π^{-v(d)} with u = d·π^{-v(d)} a unit. Terms of u⁻¹ at
    // degree >= n + v(d) - v(b) only reach degrees >= n of b/d.
    let precision = n + vd - ut.b.valuation()?;
    if precision <= 0 {
        return Ok(UTState { n, b: LaurentPoly::zero(m.field()) });
    }
    let unit = ut.d.shift(-vd);
    let unit_inv = unit.inverse_mod(precision)?.to_laurent();
    let b = ut.b.try_mul(&unit_inv)?.shift(-vd);
    let low = b.valuation().unwrap_or(0);
    Ok(UTState { n, b: b.window(low, n) })
}

/// Iteration bound for [`reduce_state`]: `⌈(n + span(b)) / 2⌉ + 1`.
fn iteration_cap(state: &UTState) -> usize {
    let span = match (state.b.valuation(), state.b.max_degree()) {
        (Ok(lo), Some(hi)) => hi - lo + 1,
        _ => 0,
    };
    let total = state.n.max(0) + span;
    ((total + 1) / 2 + 1) as usize
}

/// Runs the window/inversion loop on `(πⁿ, b; 0, 1)` until `b` vanishes.
pub fn reduce_state(state: UTState) -> Result<StdVertex> {
    let cap = iteration_cap(&state);
    let UTState { mut n, mut b } = state;
    for _ in 0..=cap {
        b = b.window(1, n);
        if b.is_zero() {
            return Ok(StdVertex(n.unsigned_abs() as usize));
        }
        let (k, s) = b.unit_factor()?;
        debug_assert!(1 <= k && k < n);
        let next = n - 2 * k;
        // Only degrees [1, next) of s⁻¹π⁻ᵏ survive the next window.
        b = if next > 1 { s.inverse_mod(next + k)?.to_laurent().shift(-k) } else { LaurentPoly::zero(b.field()) };
        n = next;
    }
    Err(Error::IterationCap(cap))
}

/// The vertex `c_n` containing the class of `m`.
pub fn reduce(m: &Mat2) -> Result<StdVertex> {
    reduce_state(to_state(m)?)
}
