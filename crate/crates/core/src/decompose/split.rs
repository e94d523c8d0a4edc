//! Splitting a nil-invariant metric algebra with abelian radical into
//! `G1 × G2 × G3`.

use serde::{Deserialize, Serialize};

use super::cotangent::verify_metric_cotangent;
use crate::error::Result;
use crate::lie::{LeviDecomposition, LieAlgebra, SubalgebraHandle};
use crate::linalg::{DirectSum, Subspace};
use crate::metric::{
    invariance_witness, nil_invariance, Certificate, Clause, GeneratorScope, NilInvariance,
    SymBilinearForm,
};

pub const C_VANISHES: &str = "c-vanishes";
pub const PRODUCT_OF_IDEALS: &str = "product-of-ideals";
pub const PAIRWISE_ORTHOGONAL: &str = "pairwise-orthogonal";
pub const SECOND_FACTOR_METRIC: &str = "second-factor-metric";
pub const THIRD_FACTOR_METRIC: &str = "third-factor-metric";
pub const DUAL_PART_ISOTROPIC: &str = "dual-part-isotropic";
pub const KERNEL_IN_FIRST_FACTOR: &str = "kernel-in-first-factor";

/// Basis-free description of one factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub dim: usize,
    /// Signature of the factor's own Killing form.
    pub killing_signature: (usize, usize, usize),
    /// Dimensions of the simple ideals of the Levi factor lying in the factor.
    pub simple_ideal_dims: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    /// `R^S`
    pub a: Subspace,
    /// `[S, R^K]`, dual to `S1`.
    pub b: Subspace,
    /// `[S, R] ∩ [K, R]`, zero under the hypotheses.
    pub c: Subspace,
    /// Kernel of the `S`-action on `B`.
    pub s0: SubalgebraHandle,
    /// Killing-orthogonal complement of `S0` in `S`.
    pub s1: SubalgebraHandle,
    /// `K + A`
    pub g1: SubalgebraHandle,
    /// `S0`
    pub g2: SubalgebraHandle,
    /// `S1 + B`
    pub g3: SubalgebraHandle,
    pub fingerprints: [Fingerprint; 3],
    pub certificates: Vec<Certificate>,
}

impl DecompositionReport {
    pub fn all_verified(&self) -> bool {
        self.certificates.iter().all(Certificate::verified)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Certificate> {
        self.certificates.iter().filter(|c| !c.verified())
    }
}

/// A precondition of the decomposition that the input does not meet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisViolation {
    pub hypothesis: String,
    pub detail: String,
}

pub const ABELIAN_RADICAL: &str = "abelian-radical";
pub const NIL_INVARIANT: &str = "nil-invariant";
pub const EFFECTIVE: &str = "effective";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum Decomposition {
    Decomposed(Box<DecompositionReport>),
    HypothesisViolation {
        violations: Vec<HypothesisViolation>,
    },
}

/// Preconditions: abelian radical, nil-invariance, effectivity. With an
/// abelian radical the structural generator set decides nil-invariance.
fn preconditions(
    g: &LieAlgebra,
    form: &SymBilinearForm,
    levi: &LeviDecomposition,
) -> Result<Vec<HypothesisViolation>> {
    let mut out = Vec::new();
    if !levi.radical.is_abelian {
        out.push(HypothesisViolation {
            hypothesis: ABELIAN_RADICAL.into(),
            detail: format!("radical of dimension {} is not abelian", levi.radical.dim()),
        });
        return Ok(out);
    }
    if let NilInvariance::Fails { witness } =
        nil_invariance(g, form, levi, GeneratorScope::Structural)
    {
        out.push(HypothesisViolation {
            hypothesis: NIL_INVARIANT.into(),
            detail: format!(
                "form is not skew under {}: value {} at basis pair ({}, {})",
                witness.generator, witness.value, witness.a, witness.b
            ),
        });
    }
    let ideal = g.largest_ideal_in(&form.kernel())?;
    if !ideal.is_zero() {
        out.push(HypothesisViolation {
            hypothesis: EFFECTIVE.into(),
            detail: format!(
                "kernel contains nonzero ideal of dimension {} spanned by {}",
                ideal.dim(),
                ideal
                    .basis()
                    .iter()
                    .map(|v| g.describe(v))
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        });
    }
    Ok(out)
}

fn fingerprint(g: &LieAlgebra, levi: &LeviDecomposition, space: &Subspace) -> Result<Fingerprint> {
    let sub = g.subalgebra(space)?;
    let mut simple_ideal_dims: Vec<usize> = levi
        .simple_ideals
        .iter()
        .filter(|s| space.contains(&s.handle.space).unwrap_or(false))
        .map(|s| s.handle.dim())
        .collect();
    simple_ideal_dims.sort_unstable();
    Ok(Fingerprint {
        dim: space.dim(),
        killing_signature: sub.killing_form().signature(),
        simple_ideal_dims,
    })
}

/// `{s ∈ S : κ_S(s, S0) = 0}` with `κ_S` the Killing form of `S` itself.
fn killing_complement(g: &LieAlgebra, s: &Subspace, s0: &Subspace) -> Result<Subspace> {
    let n = g.dim();
    let s_alg = g.subalgebra(s)?;
    let kappa = s_alg.killing_form();
    // S0 in the echelon coordinates of S
    let s0_local: Vec<Vec<_>> = s0.basis().iter().map(|v| s.coordinates(v)).collect();
    let rows: Vec<Vec<_>> = s0_local.iter().map(|c| kappa.gram().vec_mul(c)).collect();
    let local = crate::linalg::null_space(rows, s.dim());
    Ok(Subspace::span(n, local.iter().map(|c| s.combine(c))))
}

fn sum(a: &Subspace, b: &Subspace) -> Subspace {
    a.sum(b).expect("same ambient")
}

fn describe_first(g: &LieAlgebra, s: &Subspace, what: &str) -> Option<String> {
    s.basis()
        .first()
        .map(|v| format!("{what} contains {}", g.describe(v)))
}

/// Decomposes `g` into the orthogonal product `(K + A) × S0 × (S1 + B)` and
/// certifies each structural claim.
pub fn abelian_radical_decompose(g: &LieAlgebra, form: &SymBilinearForm) -> Result<Decomposition> {
    let levi = g.levi_subalgebra()?;
    abelian_radical_decompose_with(g, form, &levi)
}

pub fn abelian_radical_decompose_with(
    g: &LieAlgebra,
    form: &SymBilinearForm,
    levi: &LeviDecomposition,
) -> Result<Decomposition> {
    if form.dim() != g.dim() {
        return Err(crate::Error::DimensionMismatch {
            expected: g.dim(),
            found: form.dim(),
        });
    }
    let violations = preconditions(g, form, levi)?;
    if !violations.is_empty() {
        return Ok(Decomposition::HypothesisViolation { violations });
    }
    let n = g.dim();
    let (k, s, r) = (
        &levi.compact_part.space,
        &levi.noncompact_part.space,
        &levi.radical.space,
    );
    let a = g.invariants(s, r)?;
    let r_k = g.invariants(k, r)?;
    let b = g.bracket_spaces(s, &r_k);
    let c = g.bracket_spaces(s, r).intersect(&g.bracket_spaces(k, r))?;
    let s0 = g.centralizer(&b).intersect(s)?;
    let s1 = killing_complement(g, s, &s0)?;
    let g1 = sum(k, &a);
    let g2 = s0.clone();
    let g3 = sum(&s1, &b);
    let parts = [&g1, &g2, &g3];

    let mut certificates = Vec::new();
    certificates.push(Certificate::from_clauses(
        C_VANISHES,
        "[S,R] ∩ [K,R] = 0 for an effective nil-invariant form with abelian radical",
        vec![Clause::new("C = 0", describe_first(g, &c, "C"))],
    ));

    let direct = DirectSum::new(parts.iter().map(|p| (*p).clone()).collect());
    let mut product_clauses = vec![Clause::new(
        "g = G1 ⊕ G2 ⊕ G3",
        direct.err().map(|_| {
            format!(
                "dimensions {} + {} + {} of {n}, or the parts overlap",
                g1.dim(),
                g2.dim(),
                g3.dim()
            )
        }),
    )];
    for (i, p) in parts.iter().enumerate() {
        product_clauses.push(Clause::from_bool(
            format!("G{} is an ideal", i + 1),
            g.is_ideal(p),
            || format!("[g, G{}] leaves G{}", i + 1, i + 1),
        ));
    }
    for i in 0..3 {
        for j in i + 1..3 {
            let br = g.bracket_spaces(parts[i], parts[j]);
            product_clauses.push(Clause::new(
                format!("[G{}, G{}] = 0", i + 1, j + 1),
                describe_first(g, &br, "bracket"),
            ));
        }
    }
    certificates.push(Certificate::from_clauses(
        PRODUCT_OF_IDEALS,
        "g is the direct product of the ideals K ⋉ A, S0 and S1 ⋉ B",
        product_clauses,
    ));

    let mut orth = Vec::new();
    for i in 0..3 {
        for j in i + 1..3 {
            orth.push(Clause::new(
                format!("G{} ⊥ G{}", i + 1, j + 1),
                form.orthogonal_witness(parts[i], parts[j])
                    .map(|(x, y, v)| format!("<{}, {}> = {v}", g.describe(&x), g.describe(&y))),
            ));
        }
    }
    certificates.push(Certificate::from_clauses(
        PAIRWISE_ORTHOGONAL,
        "the three factors are pairwise orthogonal",
        orth,
    ));

    for (name, idx, space) in [
        (SECOND_FACTOR_METRIC, 2, &g2),
        (THIRD_FACTOR_METRIC, 3, &g3),
    ] {
        let restricted = form.restrict(space);
        certificates.push(Certificate::from_clauses(
            name,
            &format!("the form restricted to G{idx} is invariant and nondegenerate"),
            vec![
                Clause::new(
                    format!("restriction to G{idx} is invariant"),
                    invariance_witness(g, form, space, space, space).map(|w| w.render()),
                ),
                Clause::from_bool(
                    format!("restriction to G{idx} is nondegenerate"),
                    restricted.is_nondegenerate(),
                    || format!("signature {:?}", restricted.signature()),
                ),
            ],
        ));
    }

    certificates.push(Certificate::from_clauses(
        DUAL_PART_ISOTROPIC,
        "B is totally isotropic and dim S1 = dim B",
        vec![
            Clause::new(
                "B is totally isotropic",
                form.orthogonal_witness(&b, &b)
                    .map(|(x, y, v)| format!("<{}, {}> = {v}", g.describe(&x), g.describe(&y))),
            ),
            Clause::from_bool("dim S1 = dim B", s1.dim() == b.dim(), || {
                format!("dim S1 = {}, dim B = {}", s1.dim(), b.dim())
            }),
        ],
    ));

    let kernel = form.kernel();
    certificates.push(Certificate::from_clauses(
        KERNEL_IN_FIRST_FACTOR,
        "the kernel of the form lies in G1",
        vec![Clause::new(
            "G⊥ ⊆ G1",
            kernel
                .basis()
                .iter()
                .find(|v| !g1.contains_vector(v))
                .map(|v| format!("{} lies outside G1", g.describe(v))),
        )],
    ));

    certificates.push(verify_metric_cotangent(g, form, &s1, &b));

    let fingerprints = [
        fingerprint(g, levi, &g1)?,
        fingerprint(g, levi, &g2)?,
        fingerprint(g, levi, &g3)?,
    ];
    Ok(Decomposition::Decomposed(Box::new(DecompositionReport {
        s0: g.handle(s0),
        s1: g.handle(s1),
        g1: g.handle(g1),
        g2: g.handle(g2),
        g3: g.handle(g3),
        a,
        b,
        c,
        fingerprints,
        certificates,
    })))
}
