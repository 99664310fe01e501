//! Graded path algebras of quivers over the rationals.

pub mod algebra;
pub mod derivation;
pub mod quiver;
pub mod tensor;
pub mod word;

pub use algebra::{NcElement, PathAlgebra};
pub use derivation::{AlgebraMap, Derivation};
pub use quiver::{Arrow, ArrowId, LoopFamily, Quiver, VertexId};
pub use tensor::{Perm, TensorElement};
pub use word::{Token, Word};
