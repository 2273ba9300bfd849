//! Distributed functional compression through characteristic graphs.
//!
//! Two sources observe `X1` and `X2`; a receiver wants `f(X1, X2)`. Each
//! source colors its characteristic graph (or an OR power of it for blocks),
//! sends Huffman-coded colors, and the receiver looks `f` up from the color
//! pair. The crate covers the graphs, their powers, colorings, entropies,
//! spectra and expansion, and the end-to-end codec.

pub mod chargraph;
pub mod codec;
pub mod coloring;
pub mod entropy;
pub mod error;
pub mod expansion;
pub mod graph;
pub mod limits;
pub mod product;
pub mod rational;
pub mod spectral;
pub mod worked;

pub use chargraph::{build_characteristic_graph, verify_coloring_sufficiency, FunctionSpec, JointPmf, Source};
pub use coloring::{is_valid_coloring, Coloring, FractionalColoring};
pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use limits::Limits;
pub use product::{or_power, OrPower, TupleIndex};
pub use codec::{build_codec, plan_from_colorings, simulate, CodecPlan, RateReport, Strategy};
