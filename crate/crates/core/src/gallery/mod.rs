//! Constructors for the named algebras and forms, irreducible modules and
//! seeded random instances.

mod classical;
mod examples;
mod irreps;
mod random;

pub use classical::{
    build_cotangent, build_euclidean, build_sl2, build_so, coadjoint_action, linear_lie_algebra,
    rotation_generator, semidirect, so_natural_action, so_pairs,
};
pub use examples::{
    build_example_3_8, build_example_3_9, build_example_4_7, e3_dual_pairing, entry_names,
    gallery_entry, Annotations, EntryInfo, ExpectedAnalysis, GalleryEntry, ENTRIES,
};
pub use irreps::{build_sl2_irrep, build_so3_irrep, sum_of_squares};
pub use random::{
    random_instance, random_semidirect, unimodular_scramble, FactorFingerprint, Profile,
    RandomInstance, RandomSemidirect,
};
