//! Combinatorial surgery on 2-complexes given by face words.

pub mod bord;
pub mod canon;
pub mod catalog;
pub mod classify;
pub mod collar;
pub mod complex;
pub mod covers;
pub mod data;
pub mod decomposition;
pub mod error;
pub mod graph;
pub mod homology;
pub mod iso;
pub mod omega;
mod refine;
pub mod types;

pub use canon::canonical_form;
pub use catalog::NamedGraph;
pub use complex::{Complex, End, EndKind, FaceWord, Link, SignedEdge, VertexId};
pub use error::{Error, Result};
pub use graph::{ColoredGraph, MultiGraph, Span};
pub use iso::{ComplexIso, Decoration};
