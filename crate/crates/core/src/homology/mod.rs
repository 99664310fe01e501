//! Weight-truncated homology of commutative dg algebras, their `gl`
//! invariants, and the comparisons between Koszul and BRST homology.

pub mod decomposition;
pub mod diagonal;
pub mod invariants;
pub mod lie;
pub mod phipsi;
pub mod slice;

pub use decomposition::{
    invariant_slices, is_nonzero_class, koszul_betti, reduced_complexes, verify_decomposition, Decomposition,
    ReducedComplexes,
};
pub use diagonal::{diagonal_check, diagonal_restriction, DiagonalResult};
pub use invariants::{invariant_subcomplex, joint_kernel, multisym_invariants, symmetrize};
pub use lie::{lie_cohomology, LieCohomologyProfile};
pub use phipsi::{phi_psi, PhiPsi, PhiPsiResult};
pub use slice::{betti_table, weight_slice, BettiTable, ChainComplexSlice, SliceBasis};
