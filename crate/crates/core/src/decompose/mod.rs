//! The three-factor decomposition for abelian radicals, the metric
//! cotangent certificate, Euclidean-type kernel location and the stabilizer
//! audit.

mod cotangent;
mod euclidean_type;
mod split;
mod stabilizer;

pub use cotangent::{
    verify_metric_cotangent, ABELIAN_IDEAL, COADJOINT, INVARIANT, ISOTROPIC, METRIC_COTANGENT,
    NONDEGENERATE, PAIRING,
};
pub use euclidean_type::{euclidean_type_analyze, EuclideanTypeReport, KERNEL_CONTAINMENT};
pub use split::{
    abelian_radical_decompose, abelian_radical_decompose_with, Decomposition, DecompositionReport,
    Fingerprint, HypothesisViolation, ABELIAN_RADICAL, C_VANISHES, DUAL_PART_ISOTROPIC, EFFECTIVE,
    KERNEL_IN_FIRST_FACTOR, NIL_INVARIANT, PAIRWISE_ORTHOGONAL, PRODUCT_OF_IDEALS,
    SECOND_FACTOR_METRIC, THIRD_FACTOR_METRIC,
};
pub use stabilizer::{stabilizer_audit, Flag, StabilizerAudit, StabilizerFlags};
