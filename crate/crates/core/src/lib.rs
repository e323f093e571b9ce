//! Graphs of Hecke operators for `PGL_2` over the rational function field
//! `F_q(T)`.
//!
//! The vertices of every unramified graph are the classes `c_n`, `n >= 0`,
//! represented by `p_n = diag(π⁻ⁿ, 1)` at a degree-one place. The crate
//! builds the graphs by reducing coset representatives to these standard
//! forms ([`reduction`]), combines them with the Hecke-algebra operations
//! ([`graph`]), solves for automorphic functions on them ([`forms`]) and
//! builds the graph of a ramified operator of level `Γ(π)` ([`ramified`]).

pub mod error;
pub mod export;
pub mod field;
pub mod forms;
pub mod graph;
pub mod laurent;
pub mod par;
pub mod ramified;
pub mod reduction;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, FqElem, ProjPoint};
pub use forms::{CuspFunction, Scalar, SolutionSpace};
pub use graph::{Edge, HeckeGraph, OperatorKind};
pub use laurent::{LaurentPoly, TruncatedSeries};
pub use par::Execution;
pub use ramified::{graph_ramified, GL2Fq, RamGraph, RamVertex};
pub use reduction::{reduce, Mat2, StdVertex};
