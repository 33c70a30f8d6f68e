pub mod basis;
pub mod canon;
pub mod chain;
pub mod error;
pub mod format;
pub mod graph;
pub mod homology;
pub mod operators;
pub mod suite;

pub use basis::{enumerate_basis, BasisSlice, Caps, Grading};
pub use canon::{canonical_form, Canonical, GraphClass};
pub use chain::{Chain, Coeff, SymChain, TensorChain};
pub use error::{Error, Result};
pub use graph::{HalfEdgeStructure, LabelledOrientation, OrientedGraph};
