//! The ramified operator `Φ'_{y,γ}` for the level `K'` of matrices congruent
//! to the identity modulo `π_x`, with `y` a degree one place other than `x`.
//!
//! The vertices are `c'_0` and `c'_{n,w}` for `n >= 1`, `w ∈ P¹(F_q)`. The
//! edges are
//!
//! ```text
//! c'_0     -> c'_{1,w}        weight 1   (every w)
//! c'_{n,w} -> c'_{n+1,wγ}     weight 1
//! c'_{n,w} -> c'_{n-1,wγ}     weight q   (c'_{0,·} = c'_0)
//! ```

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FqElem, ProjPoint};
use crate::graph::{Edge, HeckeGraph, OperatorKind};

/// An invertible matrix `(a b; c d)` over `F_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GL2Fq {
    field: Field,
    entries: [FqElem; 4],
}

impl GL2Fq {
    pub fn new(field: &Field, a: FqElem, b: FqElem, c: FqElem, d: FqElem) -> Result<GL2Fq> {
        for x in [a, b, c, d] {
            field.elem(x.0)?;
        }
        let det = field.sub(field.mul(a, d), field.mul(b, c));
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(GL2Fq { field: field.clone(), entries: [a, b, c, d] })
    }

    pub fn identity(field: &Field) -> GL2Fq {
        GL2Fq::new(field, FqElem::ONE, FqElem::ZERO, FqElem::ZERO, FqElem::ONE).unwrap()
    }

    /// Parses four entries in canonical string form.
    pub fn parse(field: &Field, entries: &[&str]) -> Result<GL2Fq> {
        let [a, b, c, d] = entries else {
            return Err(Error::Parse(format!("expected 4 matrix entries, got {}", entries.len())));
        };
        GL2Fq::new(field, field.parse_elem(a)?, field.parse_elem(b)?, field.parse_elem(c)?, field.parse_elem(d)?)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn entries(&self) -> [FqElem; 4] {
        self.entries
    }

    pub fn mul(&self, rhs: &GL2Fq) -> GL2Fq {
        let f = &self.field;
        let [a, b, c, d] = self.entries;
        let [e, g, h, k] = rhs.entries;
        let dot = |x, y, z, w| f.add(f.mul(x, y), f.mul(z, w));
        GL2Fq { field: f.clone(), entries: [dot(a, e, b, h), dot(a, g, b, k), dot(c, e, d, h), dot(c, g, d, k)] }
    }

    pub fn format(&self) -> String {
        let s: Vec<String> = self.entries.iter().map(|&x| self.field.format_elem(x)).collect();
        format!("({} {}; {} {})", s[0], s[1], s[2], s[3])
    }
}

/// `w·γ` for the row vector `w = [x:y]`, in canonical form.
pub fn proj_action(w: ProjPoint, gamma: &GL2Fq) -> ProjPoint {
    let f = &gamma.field;
    let (x, y) = match w {
        ProjPoint::Affine(b) => (FqElem::ONE, b),
        ProjPoint::Infinity => (FqElem::ZERO, FqElem::ONE),
    };
    let [a, b, c, d] = gamma.entries;
    let u = f.add(f.mul(x, a), f.mul(y, c));
    let v = f.add(f.mul(x, b), f.mul(y, d));
    if u.is_zero() {
        ProjPoint::Infinity
    } else {
        ProjPoint::Affine(f.mul(v, f.inv(u)))
    }
}

/// A vertex of the `K'`-graph. The derived order puts `Base` first, then
/// pairs by `n` and then by `w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RamVertex {
    Base,
    Pair(usize, ProjPoint),
}

impl RamVertex {
    /// The vertex `c_n` below this one.
    pub fn project(self) -> usize {
        match self {
            RamVertex::Base => 0,
            RamVertex::Pair(n, _) => n,
        }
    }

    /// `c'0` or `c'<n>_<w>` with `w` either `inf` or the affine coordinate.
    pub fn name(self, field: &Field) -> String {
        match self {
            RamVertex::Base => "c'0".to_string(),
            RamVertex::Pair(n, ProjPoint::Infinity) => format!("c'{n}_inf"),
            RamVertex::Pair(n, ProjPoint::Affine(b)) => format!("c'{n}_{}", field.format_elem(b)),
        }
    }

    fn pair(n: usize, w: ProjPoint) -> RamVertex {
        if n == 0 {
            RamVertex::Base
        } else {
            RamVertex::Pair(n, w)
        }
    }
}

/// The graph of `Φ'_{y,γ}`, complete at `c'_0` and at every `c'_{n,w}` with `n <= window`.
#[derive(Debug, Clone, PartialEq)]
pub struct RamGraph {
    field: Field,
    gamma: GL2Fq,
    window: usize,
    edges: BTreeMap<(RamVertex, RamVertex), u64>,
}

impl RamGraph {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn gamma(&self) -> &GL2Fq {
        &self.gamma
    }

    pub fn window(&self) -> usize {
        self.window
    }

    /// Vertices with a complete edge set, in order.
    pub fn vertices(&self) -> Vec<RamVertex> {
        let mut out = vec![RamVertex::Base];
        for n in 1..=self.window {
            out.extend(self.field.projective_line().into_iter().map(|w| RamVertex::Pair(n, w)));
        }
        out
    }

    pub fn edges(&self) -> impl Iterator<Item = (RamVertex, RamVertex, u64)> + '_ {
        self.edges.iter().map(|(&(o, t), &m)| (o, t, m))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn weight(&self, origin: RamVertex, terminus: RamVertex) -> Option<u64> {
        self.edges.get(&(origin, terminus)).copied()
    }

    pub fn out_edges(&self, v: RamVertex) -> impl Iterator<Item = (RamVertex, u64)> + '_ {
        self.edges.range((v, RamVertex::Base)..).take_while(move |((o, _), _)| *o == v).map(|(&(_, t), &m)| (t, m))
    }

    /// Edges `v -> w` between complete vertices with no edge `w -> v`.
    pub fn asymmetric_edges(&self) -> Vec<(RamVertex, RamVertex)> {
        self.edges
            .keys()
            .filter(|(_, t)| t.project() <= self.window)
            .filter(|&&(o, t)| !self.edges.contains_key(&(t, o)))
            .copied()
            .collect()
    }
}

/// Builds `Φ'_{y,γ}` on the window from the edge formulas.
pub fn graph_ramified(gamma: &GL2Fq, window: usize) -> Result<RamGraph> {
    if window == 0 {
        return Err(Error::InvalidArgument("ramified graphs need a window of at least 1".into()));
    }
    let field = gamma.field.clone();
    let q = field.q();
    let mut edges = BTreeMap::new();
    for w in field.projective_line() {
        edges.insert((RamVertex::Base, RamVertex::Pair(1, w)), 1);
    }
    for n in 1..=window {
        for w in field.projective_line() {
            let origin = RamVertex::Pair(n, w);
            let wg = proj_action(w, gamma);
            edges.insert((origin, RamVertex::Pair(n + 1, wg)), 1);
            edges.insert((origin, RamVertex::pair(n - 1, wg)), q);
        }
    }
    Ok(RamGraph { field, gamma: gamma.clone(), window, edges })
}

/// Pushes the graph down along `c'_{n,w} ↦ c_n`, merging edges from each
/// source vertex. Every vertex of a fibre must give the same star.
pub fn project_to_unramified(g: &RamGraph) -> Result<HeckeGraph> {
    let mut stars: BTreeMap<usize, BTreeMap<usize, u64>> = BTreeMap::new();
    for v in g.vertices() {
        let mut star = BTreeMap::new();
        for (t, m) in g.out_edges(v) {
            *star.entry(t.project()).or_insert(0) += m;
        }
        match stars.get(&v.project()) {
            Some(existing) if *existing != star => return Err(Error::InconsistentFibre(v.project())),
            Some(_) => {}
            None => {
                stars.insert(v.project(), star);
            }
        }
    }
    let edges = stars.into_iter().flat_map(|(o, star)| {
        star.into_iter().map(move |(t, m)| Edge { origin: o, terminus: t, weight: BigInt::from(m) })
    });
    HeckeGraph::new(g.field.q(), OperatorKind::Phi { degree: 1 }, g.window, 1, edges)
}

/// Symmetry check for a ramified graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RamSymmetryReport {
    /// Whether `γ²` fixes every point of `P¹(F_q)`.
    pub gamma_squared_trivial: bool,
    pub asymmetric_edges: Vec<(String, String)>,
}

impl RamSymmetryReport {
    /// Edges are symmetric exactly when `γ²` acts trivially.
    pub fn passed(&self) -> bool {
        self.gamma_squared_trivial == self.asymmetric_edges.is_empty()
    }
}

pub fn verify_ram_symmetry(g: &RamGraph) -> RamSymmetryReport {
    let g2 = g.gamma.mul(&g.gamma);
    let gamma_squared_trivial = g.field.projective_line().into_iter().all(|w| proj_action(w, &g2) == w);
    let asymmetric_edges =
        g.asymmetric_edges().into_iter().map(|(o, t)| (o.name(&g.field), t.name(&g.field))).collect();
    RamSymmetryReport { gamma_squared_trivial, asymmetric_edges }
}
