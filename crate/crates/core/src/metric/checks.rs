//! Structural consequences of nil-invariance, each returned as a certificate.

use super::analysis::{invariance_witness, is_invariant, FormAnalysis};
use super::certificate::{Certificate, Clause};
use super::form::SymBilinearForm;
use crate::lie::{LeviDecomposition, LieAlgebra};
use crate::linalg::Subspace;

pub const ORTHOGONALITY: &str = "orthogonality-relations";
pub const GS_INVARIANCE: &str = "gs-invariance";
pub const KERNEL_LOCATION: &str = "kernel-location";
pub const GPERP_INVARIANCE: &str = "gperp-invariance-consequence";
pub const INDEX2_STRUCTURE: &str = "index2-structure";

fn unmet(analysis: &FormAnalysis, effective: bool) -> Vec<String> {
    let mut out = Vec::new();
    if !analysis.nil_invariant.holds() {
        out.push(format!(
            "nil-invariance verdict is {:?}, not holds",
            analysis.nil_invariant.grade()
        ));
    }
    if effective && !analysis.effective {
        out.push("kernel contains a nonzero ideal".into());
    }
    out
}

/// First basis vector of `sub` outside `sup`, described.
fn containment(g: &LieAlgebra, sub: &Subspace, sup: &Subspace) -> Option<String> {
    sub.basis()
        .iter()
        .find(|v| !sup.contains_vector(v))
        .map(|v| format!("{} lies outside", g.describe(v)))
}

fn orthogonality(
    g: &LieAlgebra,
    form: &SymBilinearForm,
    u: &Subspace,
    w: &Subspace,
) -> Option<String> {
    form.orthogonal_witness(u, w)
        .map(|(a, b, v)| format!("<{}, {}> = {v}", g.describe(&a), g.describe(&b)))
}

/// Center of the subalgebra `s`.
pub fn center_of(g: &LieAlgebra, s: &Subspace) -> Subspace {
    g.centralizer(s).intersect(s).expect("same ambient")
}

/// `S ⊥ [K, g]` and `K ⊥ [S, g]`.
pub fn orthogonality_relations_check(
    g: &LieAlgebra,
    form: &SymBilinearForm,
    levi: &LeviDecomposition,
    analysis: &FormAnalysis,
) -> Certificate {
    const CLAIM: &str =
        "a nil-invariant form makes S orthogonal to [K,g] and K orthogonal to [S,g]";
    let missing = unmet(analysis, false);
    if !missing.is_empty() {
        return Certificate::not_applicable(ORTHOGONALITY, CLAIM, missing);
    }
    let (k, s) = (&levi.compact_part.space, &levi.noncompact_part.space);
    let w = g.whole();
    Certificate::from_clauses(
        ORTHOGONALITY,
        CLAIM,
        vec![
            Clause::new(
                "S ⊥ [K,g]",
                orthogonality(g, form, s, &g.bracket_spaces(k, &w)),
            ),
            Clause::new(
                "K ⊥ [S,g]",
                orthogonality(g, form, k, &g.bracket_spaces(s, &w)),
            ),
        ],
    )
}

/// The restriction to `g_s` is `ad(g)`-invariant and the form is
/// `ad(g_s)`-invariant.
pub fn gs_invariance_check(
    g: &LieAlgebra,
    form: &SymBilinearForm,
    levi: &LeviDecomposition,
    analysis: &FormAnalysis,
) -> Certificate {
    const CLAIM: &str =
        "a nil-invariant form is invariant under ad(g) on g_s and invariant under ad(g_s) on g";
    let missing = unmet(analysis, false);
    if !missing.is_empty() {
        return Certificate::not_applicable(GS_INVARIANCE, CLAIM, missing);
    }
    let gs = &levi.gs.space;
    let restricted = invariance_witness(g, form, &g.whole(), gs, gs).map(|w| w.render());
    let full = is_invariant(g, form, gs)
        .expect("dimensions agree")
        .map(|w| w.render());
    Certificate::from_clauses(
        GS_INVARIANCE,
        CLAIM,
        vec![
            Clause::new("restriction to g_s is ad(g)-invariant", restricted),
            Clause::new("form is ad(g_s)-invariant", full),
        ],
    )
}

/// `G⊥ ⊆ K ⋉ Z(g_s)` and `[G⊥, g_s] ⊆ Z(g_s) ∩ G⊥`.
pub fn kernel_location_check(
    g: &LieAlgebra,
    _form: &SymBilinearForm,
    levi: &LeviDecomposition,
    analysis: &FormAnalysis,
) -> Certificate {
    const CLAIM: &str =
        "the kernel of an effective nil-invariant form lies in K + Z(g_s), and [G⊥, g_s] lies in Z(g_s) ∩ G⊥";
    let missing = unmet(analysis, true);
    if !missing.is_empty() {
        return Certificate::not_applicable(KERNEL_LOCATION, CLAIM, missing);
    }
    let gs = &levi.gs.space;
    let z = center_of(g, gs);
    let kernel = &analysis.kernel;
    let k_plus_z = levi.compact_part.space.sum(&z).expect("same ambient");
    let z_cap_kernel = z.intersect(kernel).expect("same ambient");
    Certificate::from_clauses(
        KERNEL_LOCATION,
        CLAIM,
        vec![
            Clause::new("G⊥ ⊆ K + Z(g_s)", containment(g, kernel, &k_plus_z)),
            Clause::new(
                "[G⊥, g_s] ⊆ Z(g_s) ∩ G⊥",
                containment(g, &g.bracket_spaces(kernel, gs), &z_cap_kernel),
            ),
        ],
    )
}

/// `[G⊥, g_s] = 0` when the form is also `G⊥`-invariant.
pub fn gperp_invariance_consequence(
    g: &LieAlgebra,
    form: &SymBilinearForm,
    levi: &LeviDecomposition,
    analysis: &FormAnalysis,
) -> Certificate {
    const CLAIM: &str = "if the form is also G⊥-invariant then [G⊥, g_s] = 0";
    let mut missing = unmet(analysis, true);
    if let Some(w) = is_invariant(g, form, &analysis.kernel).expect("dimensions agree") {
        missing.push(format!("form is not G⊥-invariant: {}", w.render()));
    }
    if !missing.is_empty() {
        return Certificate::not_applicable(GPERP_INVARIANCE, CLAIM, missing);
    }
    let br = g.bracket_spaces(&analysis.kernel, &levi.gs.space);
    Certificate::from_clauses(
        GPERP_INVARIANCE,
        CLAIM,
        vec![Clause::new(
            "[G⊥, g_s] = 0",
            containment(g, &br, &Subspace::zero(g.dim())),
        )],
    )
}

/// Structure forced by relative index at most 2.
pub fn index2_structure_check(
    g: &LieAlgebra,
    form: &SymBilinearForm,
    levi: &LeviDecomposition,
    analysis: &FormAnalysis,
) -> Certificate {
    const CLAIM: &str = "relative index at most 2 forces G = K × S × R as ideals, G⊥ ⊆ K × Z(R), G⊥ ∩ R = 0, S ⊥ K × R and K ⊥ [R,R]";
    let mut missing = unmet(analysis, true);
    if analysis.relative_index > 2 {
        missing.push(format!("relative index is {}", analysis.relative_index));
    }
    if !missing.is_empty() {
        return Certificate::not_applicable(INDEX2_STRUCTURE, CLAIM, missing);
    }
    let (k, s, r) = (
        &levi.compact_part.space,
        &levi.noncompact_part.space,
        &levi.radical.space,
    );
    let kernel = &analysis.kernel;
    let zero = Subspace::zero(g.dim());
    let kr = g.bracket_spaces(k, r);
    let sr = g.bracket_spaces(s, r);
    let product = containment(g, &kr, &zero)
        .map(|w| format!("[K,R]: {w}"))
        .or_else(|| containment(g, &sr, &zero).map(|w| format!("[S,R]: {w}")));
    let k_times_zr = k.sum(&center_of(g, r)).expect("same ambient");
    let kernel_cap_r = kernel.intersect(r).expect("same ambient");
    let k_plus_r = k.sum(r).expect("same ambient");
    Certificate::from_clauses(
        INDEX2_STRUCTURE,
        CLAIM,
        vec![
            Clause::new("K, S, R are pairwise commuting ideals", product),
            Clause::new("G⊥ ⊆ K × Z(R)", containment(g, kernel, &k_times_zr)),
            Clause::new(
                "G⊥ ∩ R = 0",
                kernel_cap_r
                    .basis()
                    .first()
                    .map(|v| format!("{} lies in both", g.describe(v))),
            ),
            Clause::new("S ⊥ K × R", orthogonality(g, form, s, &k_plus_r)),
            Clause::new(
                "K ⊥ [R,R]",
                orthogonality(g, form, k, &g.bracket_spaces(r, r)),
            ),
        ],
    )
}

/// All applicable checks, in a fixed order.
pub fn all_checks(
    g: &LieAlgebra,
    form: &SymBilinearForm,
    levi: &LeviDecomposition,
    analysis: &FormAnalysis,
) -> Vec<Certificate> {
    vec![
        orthogonality_relations_check(g, form, levi, analysis),
        gs_invariance_check(g, form, levi, analysis),
        kernel_location_check(g, form, levi, analysis),
        gperp_invariance_consequence(g, form, levi, analysis),
        index2_structure_check(g, form, levi, analysis),
    ]
}
