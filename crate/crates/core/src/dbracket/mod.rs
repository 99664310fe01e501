//! Double brackets on path algebras: generator tables, evaluation, axiom
//! checks, moment maps and charges.

pub mod charge;
pub mod hamiltonian;
pub mod table;
pub mod verify;

pub use charge::{charge_differential, commutator_membership, cyclic_normal_form};
pub use hamiltonian::{check_hamiltonian, MomentMap};
pub use table::BracketTable;
pub use verify::{is_double_poisson, verify_axioms, AxiomReport};
