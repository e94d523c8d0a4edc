//! Symmetric bilinear forms on Lie algebras: kernel, signature, invariance,
//! nil-invariance and the structure they force.

mod analysis;
mod certificate;
mod checks;
mod form;
mod nil;
mod solve;

pub use analysis::{
    analyze, analyze_with, invariance_witness, is_invariant, FormAnalysis, InvarianceWitness,
};
pub use certificate::{Certificate, Clause, Status};
pub use checks::{
    all_checks, center_of, gperp_invariance_consequence, gs_invariance_check,
    index2_structure_check, kernel_location_check, orthogonality_relations_check, GPERP_INVARIANCE,
    GS_INVARIANCE, INDEX2_STRUCTURE, KERNEL_LOCATION, ORTHOGONALITY,
};
pub use form::SymBilinearForm;
pub use nil::{
    is_nil_invariant, nil_invariance, nilpotent_generators, skewness_defect, GeneratorKind,
    GeneratorScope, NilGenerator, NilInvariance, NilVerdict, NilWitness, NON_ABELIAN_CAVEAT,
};
pub use solve::{forms_skew_under, vanishing_on_block};
