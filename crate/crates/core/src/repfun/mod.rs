//! Representation functors: from path algebras to commutative dg algebras of
//! matrix entries, with induced differentials, Poisson brackets and the
//! gauge action.

pub mod dga;
pub mod gl;
pub mod laws;
pub mod poisson;
pub mod poly;

pub use dga::{induced_poisson, rep_algebra, CommutativeDga, DimensionVector, PolyMatrix};
pub use gl::{gl_derivations, GlDerivation};
pub use laws::{check_casimirs, check_rep_laws, LawSampling};
pub use poisson::PoissonTable;
pub use poly::{Mono, Poly, Ring, Var, VarId};
