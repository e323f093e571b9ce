//! Graphs of unramified Hecke operators on the vertex set `{c_n : n >= 0}`.
//!
//! A [`HeckeGraph`] records the complete outgoing edge set of every vertex
//! `n <= window`. Operations that need neighbours of neighbours (composition,
//! powers) check that the operand windows are large enough instead of
//! silently truncating.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, ProjPoint};
use crate::laurent::LaurentPoly;
use crate::par::Execution;
use crate::reduction::{reduce, reduce_state, Mat2, StdVertex, UTState};

/// Which Hecke operator a graph represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OperatorKind {
    /// `Φ_y` for a place `y` of the given degree.
    Phi {
        degree: u32,
    },
    Identity,
    Zero,
    /// Any sum, multiple or product of the above.
    Composite,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub origin: usize,
    pub terminus: usize,
    pub weight: BigInt,
}

/// A windowed graph of a Hecke operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeGraph {
    q: u64,
    operator: OperatorKind,
    window: usize,
    /// Upper bound on `|terminus - origin|` over all edges.
    reach: usize,
    edges: BTreeMap<(usize, usize), BigInt>,
    /// Expected outgoing weight total at every window vertex, when known.
    weight_sum: Option<BigInt>,
}

impl HeckeGraph {
    /// Assembles a graph from explicit edges.
    ///
    /// Rejects zero weights, repeated `(origin, terminus)` pairs, origins
    /// beyond the window and edges longer than `reach`.
    pub fn new(
        q: u64,
        operator: OperatorKind,
        window: usize,
        reach: usize,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<HeckeGraph> {
        let mut map = BTreeMap::new();
        for Edge { origin, terminus, weight } in edges {
            if weight.is_zero() {
                return Err(Error::InvalidArgument(format!("zero weight on c{origin} -> c{terminus}")));
            }
            if origin > window {
                return Err(Error::InvalidArgument(format!(
                    "edge origin c{origin} lies outside the window [0, {window}]"
                )));
            }
            if origin.abs_diff(terminus) > reach {
                return Err(Error::InvalidArgument(format!(
                    "edge c{origin} -> c{terminus} is longer than the reach {reach}"
                )));
            }
            if map.insert((origin, terminus), weight).is_some() {
                return Err(Error::InvalidArgument(format!("duplicate edge c{origin} -> c{terminus}")));
            }
        }
        let weight_sum = expected_weight_sum(q, operator);
        Ok(HeckeGraph { q, operator, window, reach, edges: map, weight_sum })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn operator(&self) -> OperatorKind {
        self.operator
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn reach(&self) -> usize {
        self.reach
    }

    pub fn weight_sum(&self) -> Option<&BigInt> {
        self.weight_sum.as_ref()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges ordered by `(origin, terminus)`.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().map(|(&(origin, terminus), w)| Edge { origin, terminus, weight: w.clone() })
    }

    pub fn weight(&self, origin: usize, terminus: usize) -> Option<&BigInt> {
        self.edges.get(&(origin, terminus))
    }

    /// `(terminus, weight)` pairs leaving `v`, by increasing terminus.
    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = (usize, &BigInt)> + '_ {
        self.edges.range((v, 0)..=(v, usize::MAX)).map(|(&(_, t), w)| (t, w))
    }

    pub fn out_weight_sum(&self, v: usize) -> BigInt {
        self.out_edges(v).map(|(_, w)| w).sum()
    }

    /// The same operator with only the origins `<= window` kept.
    pub fn restrict(&self, window: usize) -> Result<HeckeGraph> {
        if window > self.window {
            return Err(Error::InsufficientWindow(format!(
                "cannot widen a graph from window {} to {window}",
                self.window
            )));
        }
        let edges = self.edges.range(..(window + 1, 0)).map(|(k, w)| (*k, w.clone())).collect();
        Ok(HeckeGraph { edges, window, ..self.clone() })
    }

    /// Edge-set equality after restricting both graphs to the smaller window.
    pub fn equal_on_window(&self, other: &HeckeGraph) -> bool {
        let w = self.window.min(other.window);
        self.q == other.q && self.edges.range(..(w + 1, 0)).eq(other.edges.range(..(w + 1, 0)))
    }
}

fn expected_weight_sum(q: u64, op: OperatorKind) -> Option<BigInt> {
    match op {
        OperatorKind::Phi { degree } => Some(BigInt::from(q).pow(degree) + 1),
        OperatorKind::Identity => Some(BigInt::one()),
        OperatorKind::Zero => Some(BigInt::zero()),
        OperatorKind::Composite => None,
    }
}

fn tally(vertices: impl IntoIterator<Item = StdVertex>) -> BTreeMap<usize, u64> {
    let mut out = BTreeMap::new();
    for v in vertices {
        *out.entry(v.0).or_insert(0) += 1;
    }
    out
}

/// Coset representatives `(π^d, b_0 + ... + b_{d-1}π^{d-1}; 0, 1)` for all
/// `(b_i) ∈ F_q^d`, followed by `diag(1, π^d)`.
pub fn phi_cosets(field: &Field, d: u32) -> Vec<Mat2> {
    let q = field.q();
    let count = q.pow(d);
    let one = LaurentPoly::one(field);
    let mut out = Vec::with_capacity(count as usize + 1);
    for mut index in 0..count {
        let mut terms = Vec::with_capacity(d as usize);
        for i in 0..d {
            terms.push((i as i64, field.elem((index % q) as u32).unwrap()));
            index /= q;
        }
        let b = LaurentPoly::from_terms(field, terms);
        out.push(Mat2::upper(LaurentPoly::pi_pow(field, d as i64), b, one.clone()).unwrap());
    }
    out.push(Mat2::diag(one, LaurentPoly::pi_pow(field, d as i64)).unwrap());
    out
}

/// The matrix `ξ_w`: `(π, b; 0, 1)` for `w = [1:b]` and `diag(1, π)` for `[0:1]`.
pub fn xi(field: &Field, w: ProjPoint) -> Mat2 {
    let one = LaurentPoly::one(field);
    let pi = LaurentPoly::pi_pow(field, 1);
    match w {
        ProjPoint::Affine(b) => Mat2::upper(pi, LaurentPoly::constant(field, b), one).unwrap(),
        ProjPoint::Infinity => Mat2::diag(one, pi).unwrap(),
    }
}

/// `Φ_d`-neighbours of `c_n` with multiplicities: the classes of
/// `g·p_n` for each coset representative `g` of [`phi_cosets`].
pub fn phi_neighbours(field: &Field, n: usize, d: u32) -> Result<BTreeMap<usize, u64>> {
    if d == 0 {
        return Err(Error::InvalidArgument("operator degree must be at least 1".into()));
    }
    let pn = Mat2::standard(field, n);
    let classes = phi_cosets(field, d).iter().map(|g| reduce(&g.mul(&pn)?)).collect::<Result<Vec<_>>>()?;
    Ok(tally(classes))
}

/// Same result as [`phi_neighbours`], grouping the cosets first.
///
/// `(π^d, B; 0, 1)·p_n = (π^m, B; 0, 1)` with `m = d - n`, and the first pass
/// of the reduction keeps only the degrees `1..m` of `B`. So it suffices to
/// reduce one state per value of those degrees, each with multiplicity
/// `q^(d - max(m-1, 0))`.
pub fn phi_neighbours_grouped(field: &Field, n: usize, d: u32) -> Result<BTreeMap<usize, u64>> {
    if d == 0 {
        return Err(Error::InvalidArgument("operator degree must be at least 1".into()));
    }
    let q = field.q();
    let m = d as i64 - n as i64;
    let free = (m - 1).max(0) as u32;
    let mult = q.pow(d - free);
    let mut out = BTreeMap::new();
    for mut index in 0..q.pow(free) {
        let mut terms = Vec::with_capacity(free as usize);
        for i in 1..=free {
            terms.push((i as i64, field.elem((index % q) as u32)?));
            index /= q;
        }
        let b = LaurentPoly::from_terms(field, terms);
        let v = reduce_state(UTState { n: m, b })?;
        *out.entry(v.0).or_insert(0) += mult;
    }
    let last = Mat2::diag(LaurentPoly::one(field), LaurentPoly::pi_pow(field, d as i64))?;
    *out.entry(reduce(&last.mul(&Mat2::standard(field, n))?)?.0).or_insert(0) += 1;
    Ok(out)
}

/// Degree-one neighbours of `c_n` computed as the classes of `p_n·ξ_w`,
/// `w ∈ P¹(F_q)`.
pub fn xi_neighbours(field: &Field, n: usize) -> Result<BTreeMap<usize, u64>> {
    let pn = Mat2::standard(field, n);
    let classes =
        field.projective_line().into_iter().map(|w| reduce(&pn.mul(&xi(field, w))?)).collect::<Result<Vec<_>>>()?;
    Ok(tally(classes))
}

/// The graph of `Φ_y` for places `y` of degree `d`, complete on `[0, window]`.
pub fn graph_phi(field: &Field, d: u32, window: usize) -> Result<HeckeGraph> {
    graph_phi_with(field, d, window, Execution::default())
}

pub fn graph_phi_with(field: &Field, d: u32, window: usize, exec: Execution) -> Result<HeckeGraph> {
    let stars = exec.map_range(window + 1, |n| phi_neighbours(field, n, d));
    let mut edges = Vec::new();
    for (n, star) in stars.into_iter().enumerate() {
        for (t, m) in star? {
            edges.push(Edge { origin: n, terminus: t, weight: BigInt::from(m) });
        }
    }
    HeckeGraph::new(field.q(), OperatorKind::Phi { degree: d }, window, d as usize, edges)
}

pub fn graph_identity(q: u64, window: usize) -> HeckeGraph {
    let edges = (0..=window).map(|v| Edge { origin: v, terminus: v, weight: BigInt::one() });
    HeckeGraph::new(q, OperatorKind::Identity, window, 0, edges).unwrap()
}

pub fn graph_zero(q: u64, window: usize) -> HeckeGraph {
    HeckeGraph::new(q, OperatorKind::Zero, window, 0, []).unwrap()
}

fn same_q(g1: &HeckeGraph, g2: &HeckeGraph) -> Result<()> {
    if g1.q == g2.q {
        Ok(())
    } else {
        Err(Error::QMismatch(g1.q, g2.q))
    }
}

fn composite(q: u64, window: usize, reach: usize, edges: BTreeMap<(usize, usize), BigInt>) -> HeckeGraph {
    let edges = edges.into_iter().filter(|(_, w)| !w.is_zero()).collect();
    HeckeGraph { q, operator: OperatorKind::Composite, window, reach, edges, weight_sum: None }
}

/// Graph of `Φ_1 + Φ_2` on the common window.
pub fn graph_add(g1: &HeckeGraph, g2: &HeckeGraph) -> Result<HeckeGraph> {
    same_q(g1, g2)?;
    let window = g1.window.min(g2.window);
    let mut acc: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
    for g in [g1, g2] {
        for (&k, w) in g.edges.range(..(window + 1, 0)) {
            *acc.entry(k).or_default() += w;
        }
    }
    Ok(composite(g1.q, window, g1.reach.max(g2.reach), acc))
}

/// Graph of `r·Φ`.
pub fn graph_scale(r: &BigInt, g: &HeckeGraph) -> HeckeGraph {
    let edges = g.edges.iter().map(|(&k, w)| (k, w * r)).collect();
    composite(g.q, g.window, g.reach, edges)
}

/// Graph of `Φ_1 - Φ_2`.
pub fn graph_sub(g1: &HeckeGraph, g2: &HeckeGraph) -> Result<HeckeGraph> {
    graph_add(g1, &graph_scale(&BigInt::from(-1), g2))
}

/// Graph of `Φ_1 * Φ_2`: the weight of `v -> v'` is the sum over `v''` of
/// `m_1(v -> v'')·m_2(v'' -> v')`.
///
/// Needs `window(g2) >= window(g1) + reach(g1)` so every intermediate vertex
/// has complete outgoing data in `g2`.
pub fn graph_compose(g1: &HeckeGraph, g2: &HeckeGraph) -> Result<HeckeGraph> {
    same_q(g1, g2)?;
    if g2.window < g1.window + g1.reach {
        return Err(Error::InsufficientWindow(format!(
            "composition needs the second window >= {} + {}, got {}",
            g1.window, g1.reach, g2.window
        )));
    }
    let mut acc: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
    for (&(v, mid), m1) in &g1.edges {
        for (t, m2) in g2.out_edges(mid) {
            *acc.entry((v, t)).or_default() += m1 * m2;
        }
    }
    Ok(composite(g1.q, g1.window, g1.reach + g2.reach, acc))
}

/// Graph of `Φᵏ`; the window shrinks by `reach` for every extra factor.
pub fn graph_power(g: &HeckeGraph, k: u32) -> Result<HeckeGraph> {
    if k == 0 {
        return Ok(graph_identity(g.q, g.window));
    }
    let mut acc = g.clone();
    for _ in 1..k {
        if acc.window < g.reach {
            return Err(Error::InsufficientWindow(format!(
                "window {} is too small for power {k} of an operator with reach {}",
                g.window, g.reach
            )));
        }
        let left = g.restrict(acc.window - g.reach)?;
        acc = graph_compose(&left, &acc)?;
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Structure checks

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightSumReport {
    pub expected: Option<String>,
    pub vertices_checked: usize,
    /// `(vertex, actual outgoing total)` where it differs from `expected`.
    pub violations: Vec<(usize, String)>,
}

impl WeightSumReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compares every window vertex's outgoing total with `expected`, or with the
/// graph's own expected total when `expected` is `None`.
pub fn verify_weight_sums(g: &HeckeGraph, expected: Option<&BigInt>) -> WeightSumReport {
    let expected = expected.or(g.weight_sum.as_ref());
    let violations = match expected {
        None => Vec::new(),
        Some(e) => (0..=g.window)
            .map(|v| (v, g.out_weight_sum(v)))
            .filter(|(_, s)| s != e)
            .map(|(v, s)| (v, s.to_string()))
            .collect(),
    };
    WeightSumReport { expected: expected.map(|e| e.to_string()), vertices_checked: g.window + 1, violations }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    pub edges_checked: usize,
    /// Edges `(v, w)` with both ends in the window but no edge `w -> v`.
    pub violations: Vec<(usize, usize)>,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn verify_symmetry(g: &HeckeGraph) -> SymmetryReport {
    let mut checked = 0;
    let mut violations = Vec::new();
    for &(v, w) in g.edges.keys() {
        if w > g.window {
            continue;
        }
        checked += 1;
        if !g.edges.contains_key(&(w, v)) {
            violations.push((v, w));
        }
    }
    SymmetryReport { edges_checked: checked, violations }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TailReport {
    pub degree: u32,
    pub vertices_checked: Vec<usize>,
    pub violations: Vec<usize>,
}

impl TailReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that every `c_n` with `d < n <= window - d` has exactly the edges
/// `c_n -> c_{n-d}` of weight `q^d` and `c_n -> c_{n+d}` of weight 1.
pub fn verify_tail(g: &HeckeGraph, d: u32) -> TailReport {
    let du = d as usize;
    let qd = BigInt::from(g.q).pow(d);
    let one = BigInt::one();
    let mut vertices_checked = Vec::new();
    let mut violations = Vec::new();
    for n in du + 1..=g.window.saturating_sub(du) {
        vertices_checked.push(n);
        let star: Vec<(usize, &BigInt)> = g.out_edges(n).collect();
        if star != [(n - du, &qd), (n + du, &one)] {
            violations.push(n);
        }
    }
    TailReport { degree: d, vertices_checked, violations }
}

/// Number of connected components of the window vertices `[0, window]`,
/// ignoring edge directions and edges that leave the window.
pub fn component_count(g: &HeckeGraph) -> usize {
    let n = g.window + 1;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = n;
    for &(v, w) in g.edges.keys() {
        if w >= n {
            continue;
        }
        let (rv, rw) = (find(&mut parent, v), find(&mut parent, w));
        if rv != rw {
            parent[rv] = rw;
            components -= 1;
        }
    }
    components
}

/// Parity label of `c_n`.
pub fn vertex_label(n: usize) -> u8 {
    (n % 2) as u8
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityReport {
    pub degree: u32,
    /// Edges whose label change does not match `degree mod 2`.
    pub violations: Vec<(usize, usize)>,
}

impl ParityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For odd `d` every edge must join vertices of different labels, for even
/// `d` vertices of the same label.
pub fn verify_parity(g: &HeckeGraph, d: u32) -> ParityReport {
    let want = (d % 2) as u8;
    let violations = g.edges.keys().filter(|&&(v, w)| vertex_label(v) ^ vertex_label(w) != want).copied().collect();
    ParityReport { degree: d, violations }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceReport {
    pub bound: usize,
    pub max_distance: usize,
    pub violations: Vec<(usize, usize)>,
}

impl DistanceReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Every edge must satisfy `|terminus - origin| <= d`.
pub fn neighbour_distance_check(g: &HeckeGraph, d: usize) -> DistanceReport {
    let mut max_distance = 0;
    let mut violations = Vec::new();
    for &(v, w) in g.edges.keys() {
        let dist = v.abs_diff(w);
        max_distance = max_distance.max(dist);
        if dist > d {
            violations.push((v, w));
        }
    }
    DistanceReport { bound: d, max_distance, violations }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub relation: String,
    pub window: usize,
    /// Edges of `lhs - rhs` on the window, as `(origin, terminus, weight)`.
    pub difference: Vec<(usize, usize, String)>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.difference.is_empty()
    }
}

fn relation(name: &str, lhs: &HeckeGraph, rhs: &HeckeGraph, window: usize) -> Result<RelationReport> {
    let diff = graph_sub(&lhs.restrict(window)?, &rhs.restrict(window)?)?;
    Ok(RelationReport {
        relation: name.into(),
        window,
        difference: diff.edges().map(|e| (e.origin, e.terminus, e.weight.to_string())).collect(),
    })
}

/// `Φ_x² = Φ_y + 2q·1` for `deg y = 2` and `Φ_x³ = Φ_y + 3q·Φ_x` for
/// `deg y = 3`, compared on `[0, window]`.
pub fn verify_power_relations(field: &Field, window: usize) -> Result<Vec<RelationReport>> {
    let q = BigInt::from(field.q());
    let g1 = graph_phi(field, 1, window + 2)?;
    let square = graph_power(&g1.restrict(window + 1)?, 2)?;
    let cube = graph_power(&g1, 3)?;
    let rhs2 = graph_add(&graph_phi(field, 2, window)?, &graph_scale(&(&q * 2), &graph_identity(field.q(), window)))?;
    let rhs3 = graph_add(&graph_phi(field, 3, window)?, &graph_scale(&(&q * 3), &g1))?;
    Ok(vec![
        relation("phi_1^2 = phi_2 + 2q*1", &square, &rhs2, window)?,
        relation("phi_1^3 = phi_3 + 3q*phi_1", &cube, &rhs3, window)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_relations_hold() {
        for q in [2, 3] {
            let f = Field::with_q(q).unwrap();
            for r in verify_power_relations(&f, 8).unwrap() {
                assert!(r.passed(), "{r:?}");
                assert_eq!(r.window, 8);
            }
        }
    }

    #[test]
    fn grouped_neighbours_match_enumeration() {
        for q in [2, 3, 4] {
            let f = Field::with_q(q).unwrap();
            for d in 1..=4 {
                for n in 0..=d as usize + 3 {
                    assert_eq!(phi_neighbours(&f, n, d).unwrap(), phi_neighbours_grouped(&f, n, d).unwrap());
                }
            }
        }
    }

    fn star(pairs: &[(usize, u64)]) -> BTreeMap<usize, u64> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn degree_one_neighbours() {
        for q in [2u64, 3, 4, 5] {
            let f = Field::with_q(q).unwrap();
            assert_eq!(phi_neighbours(&f, 0, 1).unwrap(), star(&[(1, q + 1)]));
            assert_eq!(phi_neighbours(&f, 2, 1).unwrap(), star(&[(1, q), (3, 1)]));
        }
    }

    #[test]
    fn both_degree_one_recipes_agree() {
        for q in [2, 3, 4, 5, 7, 9] {
            let f = Field::with_q(q).unwrap();
            for n in 0..12 {
                assert_eq!(phi_neighbours(&f, n, 1).unwrap(), xi_neighbours(&f, n).unwrap());
            }
        }
    }

    #[test]
    fn zero_degree_is_rejected() {
        let f = Field::with_q(2).unwrap();
        assert!(phi_neighbours(&f, 0, 0).is_err());
    }

    #[test]
    fn identity_and_zero() {
        let id = graph_identity(3, 3);
        let edges: Vec<_> = id.edges().map(|e| (e.origin, e.terminus)).collect();
        assert_eq!(edges, [(0, 0), (1, 1), (2, 2), (3, 3)]);
        assert_eq!(graph_zero(3, 3).edge_count(), 0);
    }

    #[test]
    fn add_and_scale() {
        let f = Field::with_q(3).unwrap();
        let g = graph_phi(&f, 1, 6).unwrap();
        assert!(graph_add(&g, &graph_zero(3, 6)).unwrap().equal_on_window(&g));
        let doubled = graph_scale(&BigInt::from(2), &g);
        assert_eq!(doubled.weight(0, 1), Some(&BigInt::from(8)));
        assert!(graph_add(&g, &g).unwrap().equal_on_window(&doubled));
        assert_eq!(graph_sub(&g, &g).unwrap().edge_count(), 0);
        assert_eq!(graph_scale(&BigInt::zero(), &g).edge_count(), 0);
    }

    #[test]
    fn add_rejects_different_fields() {
        assert_eq!(graph_add(&graph_zero(2, 3), &graph_zero(3, 3)), Err(Error::QMismatch(2, 3)));
    }

    #[test]
    fn compose_checks_window() {
        let f = Field::with_q(2).unwrap();
        let g = graph_phi(&f, 1, 5).unwrap();
        assert!(matches!(graph_compose(&g, &g), Err(Error::InsufficientWindow(_))));
        let h = graph_compose(&g.restrict(4).unwrap(), &g).unwrap();
        assert_eq!(h.window(), 4);
        assert!(graph_compose(&g, &graph_identity(2, 6)).unwrap().equal_on_window(&g));
        assert!(graph_compose(&graph_identity(2, 5), &g).unwrap().equal_on_window(&g));
        assert_eq!(graph_compose(&graph_zero(2, 5), &g).unwrap().edge_count(), 0);
    }

    #[test]
    fn power_window_bookkeeping() {
        let f = Field::with_q(2).unwrap();
        let g = graph_phi(&f, 1, 12).unwrap();
        assert_eq!(graph_power(&g, 1).unwrap(), g);
        assert_eq!(graph_power(&g, 2).unwrap().window(), 11);
        assert_eq!(graph_power(&g, 3).unwrap().window(), 10);
        assert_eq!(graph_power(&g, 0).unwrap(), graph_identity(2, 12));
        let tiny = graph_phi(&f, 3, 2).unwrap();
        assert!(graph_power(&tiny, 2).is_err());
    }

    #[test]
    fn symmetry_negative_control() {
        let edges =
            [(0, 1, 3), (1, 0, 1), (1, 2, 1)].map(|(o, t, w)| Edge { origin: o, terminus: t, weight: BigInt::from(w) });
        let g = HeckeGraph::new(2, OperatorKind::Composite, 2, 1, edges).unwrap();
        assert_eq!(verify_symmetry(&g).violations, [(1, 2)]);
    }

    #[test]
    fn constructor_rejects_malformed_edges() {
        let e = |o, t, w: i64| Edge { origin: o, terminus: t, weight: BigInt::from(w) };
        assert!(HeckeGraph::new(2, OperatorKind::Composite, 2, 1, [e(0, 1, 0)]).is_err());
        assert!(HeckeGraph::new(2, OperatorKind::Composite, 2, 1, [e(0, 1, 1), e(0, 1, 2)]).is_err());
        assert!(HeckeGraph::new(2, OperatorKind::Composite, 2, 1, [e(3, 2, 1)]).is_err());
        assert!(HeckeGraph::new(2, OperatorKind::Composite, 2, 1, [e(0, 2, 1)]).is_err());
    }

    #[test]
    fn distances_and_labels() {
        let f = Field::with_q(2).unwrap();
        let g2 = graph_phi(&f, 2, 8).unwrap();
        assert_eq!(neighbour_distance_check(&g2, 2).max_distance, 2);
        assert_eq!(neighbour_distance_check(&graph_identity(2, 4), 0).max_distance, 0);
        let g3 = graph_phi(&f, 3, 12).unwrap();
        assert_eq!(component_count(&g3), 1);
        assert!(verify_parity(&g3, 3).passed());
        assert_eq!(component_count(&g2), 2);
        assert!(verify_parity(&g2, 2).passed());
    }
}
