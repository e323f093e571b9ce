//! JSON, DOT and plain-table renderings of graphs. Edges are always listed
//! by `(origin, terminus)`, so output is byte-for-byte deterministic.

use std::collections::BTreeSet;
use std::fmt::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, HeckeGraph, OperatorKind};
use crate::ramified::{RamGraph, RamVertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorJson {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub degree: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub from: usize,
    pub to: usize,
    pub weight: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub q: u64,
    pub operator: OperatorJson,
    pub window: usize,
    pub reach: usize,
    pub edges: Vec<EdgeJson>,
}

impl GraphJson {
    pub fn from_graph(g: &HeckeGraph) -> GraphJson {
        let (kind, degree) = match g.operator() {
            OperatorKind::Phi { degree } => ("phi", Some(degree)),
            OperatorKind::Identity => ("identity", None),
            OperatorKind::Zero => ("zero", None),
            OperatorKind::Composite => ("composite", None),
        };
        GraphJson {
            q: g.q(),
            operator: OperatorJson { kind: kind.into(), degree },
            window: g.window(),
            reach: g.reach(),
            edges: g
                .edges()
                .map(|e| EdgeJson { from: e.origin, to: e.terminus, weight: e.weight.to_string() })
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<HeckeGraph> {
        let operator = match (self.operator.kind.as_str(), self.operator.degree) {
            ("phi", Some(degree)) if degree >= 1 => OperatorKind::Phi { degree },
            ("phi", _) => return Err(Error::Parse("phi operator needs a degree >= 1".into())),
            ("identity", None) => OperatorKind::Identity,
            ("zero", None) => OperatorKind::Zero,
            ("composite", None) => OperatorKind::Composite,
            (kind, _) => return Err(Error::Parse(format!("unknown operator {kind:?}"))),
        };
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let weight: BigInt =
                    e.weight.parse().map_err(|_| Error::Parse(format!("bad weight {:?}", e.weight)))?;
                Ok(Edge { origin: e.from, terminus: e.to, weight })
            })
            .collect::<Result<Vec<_>>>()?;
        HeckeGraph::new(self.q, operator, self.window, self.reach, edges)
    }
}

pub fn graph_to_json(g: &HeckeGraph) -> String {
    serde_json::to_string_pretty(&GraphJson::from_graph(g)).expect("graph JSON serialises")
}

pub fn graph_from_json(text: &str) -> Result<HeckeGraph> {
    let json: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    json.to_graph()
}

fn graph_name(g: &HeckeGraph) -> String {
    match g.operator() {
        OperatorKind::Phi { degree } => format!("phi_{degree}"),
        OperatorKind::Identity => "identity".into(),
        OperatorKind::Zero => "zero".into(),
        OperatorKind::Composite => "composite".into(),
    }
}

/// Graphviz text. Vertices outside the window (termini only) are dashed.
///
/// With `paired`, an edge `v -> w` whose inverse edge exists is drawn once as
/// an undirected line, each weight written at its origin end.
pub fn graph_to_dot(g: &HeckeGraph, paired: bool) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", graph_name(g)).unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    let mut vertices: BTreeSet<usize> = (0..=g.window()).collect();
    vertices.extend(g.edges().map(|e| e.terminus));
    for v in vertices {
        if v > g.window() {
            writeln!(out, "  c{v} [style=dashed];").unwrap();
        } else {
            writeln!(out, "  c{v};").unwrap();
        }
    }
    for e in g.edges() {
        let (v, w) = (e.origin, e.terminus);
        let inverse = if paired && v != w { g.weight(w, v) } else { None };
        match inverse {
            Some(_) if w < v => {}
            Some(back) => {
                writeln!(out, "  c{v} -> c{w} [dir=none, taillabel=\"{}\", headlabel=\"{back}\"];", e.weight).unwrap();
            }
            None => writeln!(out, "  c{v} -> c{w} [label=\"{}\"];", e.weight).unwrap(),
        }
    }
    out.push_str("}\n");
    out
}

/// One `origin terminus weight` line per edge under a header.
pub fn graph_to_table(g: &HeckeGraph) -> String {
    let mut out = String::new();
    let op = match g.operator() {
        OperatorKind::Phi { degree } => format!("phi(degree {degree})"),
        _ => graph_name(g),
    };
    writeln!(out, "# q={} operator={op} window={} reach={}", g.q(), g.window(), g.reach()).unwrap();
    writeln!(out, "{:<8} {:<8} weight", "origin", "terminus").unwrap();
    for e in g.edges() {
        writeln!(out, "{:<8} {:<8} {}", format!("c{}", e.origin), format!("c{}", e.terminus), e.weight).unwrap();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RamEdgeJson {
    pub from: String,
    pub to: String,
    pub weight: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RamGraphJson {
    pub q: u64,
    pub gamma: [String; 4],
    pub window: usize,
    pub edges: Vec<RamEdgeJson>,
}

impl RamGraphJson {
    pub fn from_graph(g: &RamGraph) -> RamGraphJson {
        let f = g.field();
        RamGraphJson {
            q: f.q(),
            gamma: g.gamma().entries().map(|x| f.format_elem(x)),
            window: g.window(),
            edges: g
                .edges()
                .map(|(o, t, m)| RamEdgeJson { from: o.name(f), to: t.name(f), weight: m.to_string() })
                .collect(),
        }
    }
}

pub fn ram_graph_to_json(g: &RamGraph) -> String {
    serde_json::to_string_pretty(&RamGraphJson::from_graph(g)).expect("graph JSON serialises")
}

pub fn ram_graph_to_dot(g: &RamGraph) -> String {
    let f = g.field();
    let mut out = String::new();
    writeln!(out, "digraph ramified {{").unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    let mut vertices: BTreeSet<RamVertex> = g.vertices().into_iter().collect();
    vertices.extend(g.edges().map(|(_, t, _)| t));
    for v in vertices {
        if v.project() > g.window() {
            writeln!(out, "  \"{}\" [style=dashed];", v.name(f)).unwrap();
        } else {
            writeln!(out, "  \"{}\";", v.name(f)).unwrap();
        }
    }
    for (o, t, m) in g.edges() {
        writeln!(out, "  \"{}\" -> \"{}\" [label=\"{m}\"];", o.name(f), t.name(f)).unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn ram_graph_to_table(g: &RamGraph) -> String {
    let f = g.field();
    let mut out = String::new();
    writeln!(out, "# q={} gamma={} window={}", f.q(), g.gamma().format(), g.window()).unwrap();
    writeln!(out, "{:<10} {:<10} weight", "origin", "terminus").unwrap();
    for (o, t, m) in g.edges() {
        writeln!(out, "{:<10} {:<10} {m}", o.name(f), t.name(f)).unwrap();
    }
    out
}

/// An exact rational as `{"num": "...", "den": "..."}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl From<&BigRational> for RationalJson {
    fn from(r: &BigRational) -> Self {
        RationalJson { num: r.numer().to_string(), den: r.denom().to_string() }
    }
}
