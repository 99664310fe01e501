//! Semi-free dg algebras: the Shafarevich complex, the Chevalley-Eilenberg
//! complex of the gauge action and the BRST algebra with its charge.

pub mod checks;
pub mod constructions;
pub mod presentation;

pub use checks::{check_brst_formulas, check_d_squared, contraction_check, eta_zero_map};
pub use constructions::{brst, brst_charge, chevalley_eilenberg, shafarevich};
pub use presentation::{DgaPresentation, PresentationRecord};
