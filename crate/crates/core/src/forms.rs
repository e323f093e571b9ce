//! Functions on the vertices `c_0, ..., c_N`: Hecke eigenfunctions, the
//! cusp recursion, Eisenstein eigenvalues and the finite linear systems that
//! cut out the cuspidal and toroidal spaces.
//!
//! All solvers are generic over [`Scalar`], implemented for exact rationals
//! ([`BigRational`]) and for [`Complex64`] with an absolute tolerance.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::graph::{phi_neighbours_grouped, HeckeGraph};

/// `m_X = max(2g - 2, 0)` for the projective line (`g = 0`).
pub const M_X: usize = 0;

/// Scalars the solvers can run over.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    /// Exact scalars ignore the tolerance and never round.
    const EXACT: bool;

    fn from_bigint(n: &BigInt) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    /// Whether the value counts as zero (`|x| <= tol` in complex mode).
    fn is_negligible(&self, tol: f64) -> bool;

    /// Pivot size used by elimination in inexact mode.
    fn magnitude(&self) -> f64;
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn is_negligible(&self, _tol: f64) -> bool {
        Zero::is_zero(self)
    }

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn from_bigint(n: &BigInt) -> Self {
        Complex64::new(n.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn is_negligible(&self, tol: f64) -> bool {
        self.norm() <= tol
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// Values `f(c_0), ..., f(c_N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CuspFunction<S> {
    values: Vec<S>,
}

impl<S: Scalar> CuspFunction<S> {
    pub fn new(values: Vec<S>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("a function needs at least the value at c0".into()));
        }
        Ok(CuspFunction { values })
    }

    pub fn from_fn(window: usize, f: impl FnMut(usize) -> S) -> Self {
        CuspFunction { values: (0..=window).map(f).collect() }
    }

    pub fn window(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn value(&self, n: usize) -> &S {
        &self.values[n]
    }

    /// Scalar multiple.
    pub fn scaled(&self, c: &S) -> Self {
        CuspFunction { values: self.values.iter().map(|v| v.clone() * c.clone()).collect() }
    }

    /// The multiple with `f(c_k) = 1` at the first `k` where `f` is nonzero.
    pub fn normalized(&self, tol: f64) -> Self {
        match self.values.iter().find(|v| !v.is_negligible(tol)) {
            Some(lead) => self.scaled(&(S::one() / lead.clone())),
            None => self.clone(),
        }
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.values.iter().all(|v| v.is_negligible(tol))
    }
}

/// A solution space with an explicit basis.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSpace<S> {
    pub dimension: usize,
    pub basis: Vec<CuspFunction<S>>,
}

// ---------------------------------------------------------------------------
// Linear algebra

/// Basis of `{x : A x = 0}` for the `ncols`-column matrix with the given rows.
///
/// Each basis vector has a 1 in its free column and zeros in the other free
/// columns, so the result is canonical in exact mode.
pub fn nullspace<S: Scalar>(rows: &[Vec<S>], ncols: usize, tol: f64) -> Vec<Vec<S>> {
    let mut m: Vec<Vec<S>> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == m.len() {
            break;
        }
        let candidates = (r..m.len()).filter(|&i| !m[i][col].is_negligible(tol));
        let pivot = if S::EXACT {
            candidates.min()
        } else {
            candidates.max_by(|&a, &b| m[a][col].magnitude().total_cmp(&m[b][col].magnitude()))
        };
        let Some(p) = pivot else { continue };
        m.swap(r, p);
        let inv = S::one() / m[r][col].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_negligible(tol) {
                let factor = m[i][col].clone();
                let pivot_row = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(pivot_row) {
                    *x = x.clone() - factor.clone() * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let free = (0..ncols).filter(|c| !pivots.contains(c));
    free.map(|fc| {
        let mut v = vec![S::zero(); ncols];
        v[fc] = S::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[row][fc].clone();
        }
        v
    })
    .collect()
}

// ---------------------------------------------------------------------------
// Eigenfunctions

/// `Φ(f)(v) = Σ m·f(v')` over the edges `v -> v'`, for every vertex `v` of the
/// graph window whose neighbours all lie in the domain of `f`.
pub fn apply_graph<S: Scalar>(g: &HeckeGraph, f: &CuspFunction<S>) -> Result<CuspFunction<S>> {
    let last = g.window().min(f.window().checked_sub(g.reach()).ok_or_else(|| {
        Error::InsufficientWindow(format!(
            "function window {} is smaller than the operator reach {}",
            f.window(),
            g.reach()
        ))
    })?);
    let values = (0..=last)
        .map(|v| g.out_edges(v).fold(S::zero(), |acc, (t, m)| acc + S::from_bigint(m) * f.value(t).clone()))
        .collect();
    CuspFunction::new(values)
}

/// Extends `f(c_0) = f0`, `f(c_1) = f1` by
/// `f_{i+1} = λ f_i - q_x f_{i-1}` up to `c_N`.
pub fn extend_along_cusp<S: Scalar>(lambda: &S, f0: S, f1: S, q_x: u64, window: usize) -> CuspFunction<S> {
    let qx = S::from_bigint(&BigInt::from(q_x));
    let mut values = vec![f0, f1];
    while values.len() <= window {
        let i = values.len() - 1;
        let next = lambda.clone() * values[i].clone() - qx.clone() * values[i - 1].clone();
        values.push(next);
    }
    values.truncate(window + 1);
    CuspFunction { values }
}

/// All `f` on `c_0..c_N` (`N` = graph window) satisfying `Φ(f)(v) = λ f(v)` at
/// every `v` whose neighbours lie in the window.
pub fn eigenfunction_on_graph<S: Scalar>(g: &HeckeGraph, lambda: &S, tol: f64) -> Result<SolutionSpace<S>> {
    joint_eigenfunctions(&[(g, lambda.clone())], tol)
}

/// Common eigenfunctions of several operators on one window, e.g. `Φ_y` for
/// a chosen set of degrees.
pub fn joint_eigenfunctions<S: Scalar>(operators: &[(&HeckeGraph, S)], tol: f64) -> Result<SolutionSpace<S>> {
    let Some((first, _)) = operators.first() else {
        return Err(Error::InvalidArgument("no operators given".into()));
    };
    let n = first.window();
    let mut rows = Vec::new();
    for (g, lambda) in operators {
        if g.window() != n {
            return Err(Error::InvalidArgument("operators must share one window".into()));
        }
        if n < 2 * g.reach() {
            return Err(Error::InsufficientWindow(format!(
                "eigenfunction window {n} is smaller than twice the reach {}",
                g.reach()
            )));
        }
        for v in 0..=n {
            if g.out_edges(v).any(|(t, _)| t > n) {
                continue;
            }
            let mut row = vec![S::zero(); n + 1];
            for (t, m) in g.out_edges(v) {
                row[t] = row[t].clone() + S::from_bigint(m);
            }
            row[v] = row[v].clone() - lambda.clone();
            rows.push(row);
        }
    }
    let basis: Vec<_> = nullspace(&rows, n + 1, tol).into_iter().map(|values| CuspFunction { values }).collect();
    Ok(SolutionSpace { dimension: basis.len(), basis })
}

/// `λ_x(χ) = √q_x (t + 1/t)` with `t = χ(π_x)`.
pub fn eisenstein_eigenvalue(t: Complex64, q_x: u64) -> Result<Complex64> {
    if t.norm() == 0.0 {
        return Err(Error::InvalidArgument("χ(π_x) must be nonzero".into()));
    }
    Ok((q_x as f64).sqrt() * (t + t.inv()))
}

// ---------------------------------------------------------------------------
// Cuspidal and toroidal conditions

/// Partitions of `d` into parts, largest part first. Each partition is the
/// degree type of an effective divisor of degree `d` on the projective line,
/// which has places of every degree.
pub fn degree_types(d: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(d, d, &mut Vec::new(), &mut out);
    out
}

/// Memoised `Φ_d`-stars of vertices, computed on demand.
pub struct StarCache {
    field: Field,
    window: usize,
    stars: HashMap<(usize, u32), BTreeMap<usize, u64>>,
}

impl StarCache {
    /// Stars are only handed out for vertices `<= window`.
    pub fn new(field: &Field, window: usize) -> Self {
        StarCache { field: field.clone(), window, stars: HashMap::new() }
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn star(&mut self, v: usize, d: u32) -> Result<&BTreeMap<usize, u64>> {
        if v > self.window {
            return Err(Error::InsufficientWindow(format!("star of c{v} requested beyond the window {}", self.window)));
        }
        if !self.stars.contains_key(&(v, d)) {
            let star = phi_neighbours_grouped(&self.field, v, d)?;
            self.stars.insert((v, d), star);
        }
        Ok(&self.stars[&(v, d)])
    }
}

/// The linear functional `f ↦ (Φ_{d_1} ⋯ Φ_{d_k} f)(c_v)` as a sparse row.
pub fn condition_row(cache: &mut StarCache, v: usize, degrees: &[u32]) -> Result<BTreeMap<usize, BigInt>> {
    let mut row: BTreeMap<usize, BigInt> = BTreeMap::from([(v, BigInt::one())]);
    for &d in degrees {
        let mut next: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (u, coeff) in row {
            for (&t, &m) in cache.star(u, d)? {
                *next.entry(t).or_default() += &coeff * m;
            }
        }
        row = next;
    }
    Ok(row)
}

/// A homogeneous system of sparse linear conditions on vertex values.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionSystem {
    pub rows: Vec<BTreeMap<usize, BigRational>>,
}

impl ConditionSystem {
    /// `Σ_{base} Φ_D(f)(base) = 0` for every degree type of total degree
    /// `0..=max_degree`, over the given base vertices.
    pub fn for_operators(cache: &mut StarCache, base: &[usize], max_degree: u32) -> Result<Self> {
        let mut rows = Vec::new();
        for d in 0..=max_degree {
            for degrees in degree_types(d) {
                let mut row: BTreeMap<usize, BigRational> = BTreeMap::new();
                for &b in base {
                    for (t, c) in condition_row(cache, b, &degrees)? {
                        *row.entry(t).or_insert_with(BigRational::zero) += BigRational::from_integer(c);
                    }
                }
                rows.push(row);
            }
        }
        Ok(ConditionSystem { rows })
    }

    pub fn scaled(&self, c: &BigRational) -> Self {
        let rows = self.rows.iter().map(|r| r.iter().map(|(&k, v)| (k, v * c)).collect()).collect();
        ConditionSystem { rows }
    }

    /// Solves for functions on `c_0..c_window` that vanish outside `support`.
    pub fn solve(&self, support: &[usize], window: usize) -> Result<SolutionSpace<BigRational>> {
        if let Some(&bad) = support.iter().find(|&&v| v > window) {
            return Err(Error::InvalidArgument(format!("support vertex c{bad} lies outside the window")));
        }
        let dense: Vec<Vec<BigRational>> = self
            .rows
            .iter()
            .map(|r| support.iter().map(|v| r.get(v).cloned().unwrap_or_else(BigRational::zero)).collect())
            .collect();
        let basis: Vec<_> = nullspace(&dense, support.len(), 0.0)
            .into_iter()
            .map(|x| {
                let mut values = vec![BigRational::zero(); window + 1];
                for (&v, val) in support.iter().zip(x) {
                    values[v] = val;
                }
                CuspFunction { values }
            })
            .collect();
        Ok(SolutionSpace { dimension: basis.len(), basis })
    }
}

fn check_solver_window(max_degree: u32, window: usize) -> Result<()> {
    // Conditions use operators of degree up to `max_degree`, reach `max_degree`.
    let needed = 2 * max_degree as usize;
    if window < needed {
        return Err(Error::InsufficientWindow(format!("window {window} is below max degree + reach = {needed}")));
    }
    Ok(())
}

/// Functions satisfying the cuspidal condition for all `Φ_D`, `deg D <= max_degree`.
///
/// On the projective line the only extension of `O` by itself is the trivial
/// one, so the condition reads `Φ_D(f)(c_0) = 0`. The unknowns are the values
/// on `support`, which defaults to `{c_n : n <= M_X}`.
pub fn cusp_space(
    field: &Field,
    max_degree: u32,
    window: usize,
    support: Option<&[usize]>,
) -> Result<SolutionSpace<BigRational>> {
    cusp_space_in(&mut StarCache::new(field, window), max_degree, support)
}

/// [`cusp_space`] on the window of `cache`, reusing its stars.
pub fn cusp_space_in(
    cache: &mut StarCache,
    max_degree: u32,
    support: Option<&[usize]>,
) -> Result<SolutionSpace<BigRational>> {
    let window = cache.window();
    check_solver_window(max_degree, window)?;
    let default: Vec<usize> = (0..=M_X).collect();
    let support = support.unwrap_or(&default);
    ConditionSystem::for_operators(cache, &[0], max_degree)?.solve(support, window)
}

/// Functions satisfying the toroidal condition for all `Φ_D`,
/// `deg D <= max_degree`, on the vertices `c_0..c_{max_degree}` those
/// conditions constrain.
///
/// The pushforwards from the quadratic constant extension give the single
/// class `c_0` here, so the condition reads `Φ_D(f)(c_0) = 0`; its overall
/// normalising constant does not affect the solution space.
pub fn toroidal_space(field: &Field, max_degree: u32, window: usize) -> Result<SolutionSpace<BigRational>> {
    toroidal_space_in(&mut StarCache::new(field, window), max_degree)
}

/// [`toroidal_space`] on the window of `cache`, reusing its stars.
pub fn toroidal_space_in(cache: &mut StarCache, max_degree: u32) -> Result<SolutionSpace<BigRational>> {
    let window = cache.window();
    check_solver_window(max_degree, window)?;
    let unknowns: Vec<usize> = (0..=max_degree as usize).collect();
    ConditionSystem::for_operators(cache, &[0], max_degree)?.solve(&unknowns, window)
}

/// One step of the degree induction for the toroidal condition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InductionStep {
    pub degree: u32,
    /// Coefficient of `f(c_degree)` in the condition for `Φ_D`, `D` prime.
    pub leading_coefficient: String,
    pub value: String,
}

/// Runs the degree induction explicitly: `f(c_0) = 0` from the identity
/// operator, then for `d = 1..=max_degree` the condition for `Φ_D` with `D`
/// a prime divisor of degree `d` reads `(q+1) f(c_d) + Σ_{n<d} a_n f(c_n) = 0`
/// and determines `f(c_d)`.
pub fn toroidal_induction(field: &Field, max_degree: u32, window: usize) -> Result<Vec<InductionStep>> {
    check_solver_window(max_degree, window)?;
    let mut cache = StarCache::new(field, window);
    let q_plus_one = BigInt::from(field.q() + 1);
    let mut values = vec![BigRational::zero()];
    let mut steps = vec![InductionStep { degree: 0, leading_coefficient: "1".into(), value: "0".into() }];
    for d in 1..=max_degree {
        let row = condition_row(&mut cache, 0, &[d])?;
        let du = d as usize;
        let lead = row.get(&du).cloned().unwrap_or_default();
        if lead != q_plus_one || row.keys().any(|&k| k > du) {
            return Err(Error::InvalidArgument(format!(
                "condition for degree {d} does not have leading term (q+1)·f(c{d})"
            )));
        }
        let lower: BigRational =
            row.iter().filter(|(&k, _)| k < du).map(|(&k, c)| BigRational::from_integer(c.clone()) * &values[k]).sum();
        let value = -lower / BigRational::from_integer(lead.clone());
        steps.push(InductionStep { degree: d, leading_coefficient: lead.to_string(), value: value.to_string() });
        values.push(value);
    }
    Ok(steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::graph_phi;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn cusp_recursion_examples() {
        let f = extend_along_cusp(&rat(3), rat(1), rat(1), 2, 6);
        assert_eq!(f.values(), vec![rat(1); 7]);
        let f = extend_along_cusp(&rat(-3), rat(1), rat(-1), 2, 5);
        assert_eq!(f.values(), [1, -1, 1, -1, 1, -1].map(rat));
        let f = extend_along_cusp(&rat(0), rat(0), rat(1), 2, 5);
        assert_eq!(f.values(), [0, 1, 0, -2, 0, 4].map(rat));
    }

    #[test]
    fn eisenstein_examples() {
        let q = 7u64;
        let s = (q as f64).sqrt();
        let lam = eisenstein_eigenvalue(Complex64::new(1.0 / s, 0.0), q).unwrap();
        assert!((lam - Complex64::new(8.0, 0.0)).norm() < 1e-10);
        let lam = eisenstein_eigenvalue(Complex64::new(1.0, 0.0), q).unwrap();
        assert!((lam - Complex64::new(2.0 * s, 0.0)).norm() < 1e-10);
        let lam = eisenstein_eigenvalue(Complex64::new(-1.0 / s, 0.0), q).unwrap();
        assert!((lam - Complex64::new(-8.0, 0.0)).norm() < 1e-10);
        assert!(eisenstein_eigenvalue(Complex64::new(0.0, 0.0), q).is_err());
    }

    #[test]
    fn nullspace_small_cases() {
        let rows = vec![vec![rat(1), rat(1)]];
        assert_eq!(nullspace(&rows, 2, 0.0), vec![vec![rat(-1), rat(1)]]);
        assert!(nullspace(&[vec![rat(1), rat(0)], vec![rat(0), rat(2)]], 2, 0.0).is_empty());
        assert_eq!(nullspace::<BigRational>(&[], 2, 0.0).len(), 2);
    }

    #[test]
    fn degree_type_counts() {
        let counts: Vec<usize> = (0..=8).map(|d| degree_types(d).len()).collect();
        assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(degree_types(0), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn eigenspace_of_degree_one_graph() {
        let f = Field::with_q(3).unwrap();
        let g = graph_phi(&f, 1, 10).unwrap();
        let space = eigenfunction_on_graph(&g, &rat(4), 0.0).unwrap();
        assert_eq!(space.dimension, 1);
        let e = space.basis[0].normalized(0.0);
        assert_eq!(e.values(), vec![rat(1); 11]);
        assert!(eigenfunction_on_graph(&graph_phi(&f, 3, 5).unwrap(), &rat(1), 0.0).is_err());
    }

    #[test]
    fn solver_examples() {
        let f2 = Field::with_q(2).unwrap();
        assert_eq!(cusp_space(&f2, 5, 12, None).unwrap().dimension, 0);
        let f3 = Field::with_q(3).unwrap();
        assert_eq!(cusp_space(&f3, 0, 4, None).unwrap().dimension, 0);
        let relaxed = cusp_space(&f3, 0, 4, Some(&[0, 1])).unwrap();
        assert_eq!(relaxed.dimension, 1);
        assert_eq!(relaxed.basis[0].values()[..2], [rat(0), rat(1)]);
        assert_eq!(toroidal_space(&f2, 6, 14).unwrap().dimension, 0);
        assert!(matches!(cusp_space(&f2, 5, 9, None), Err(Error::InsufficientWindow(_))));
    }

    #[test]
    fn induction_forces_zero() {
        let f = Field::with_q(3).unwrap();
        let steps = toroidal_induction(&f, 5, 10).unwrap();
        assert_eq!(steps.len(), 6);
        for s in &steps[1..] {
            assert_eq!(s.leading_coefficient, "4");
            assert_eq!(s.value, "0");
        }
    }
}
