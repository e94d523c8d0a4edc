//! Randomized structural properties: Levi round-trip, decomposition
//! round-trip, cotangent certificates and basis-change invariance.

use nilform_core::decompose::{abelian_radical_decompose, verify_metric_cotangent, Decomposition};
use nilform_core::gallery::{
    entry_names, gallery_entry, random_instance, random_semidirect, unimodular_scramble, Profile,
};
use nilform_core::metric::{analyze, gs_invariance_check, NilVerdict};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn levi_factor_complements_the_radical(seed in 0u64..10_000) {
        let inst = random_semidirect(seed, 20).unwrap();
        let g = &inst.algebra;
        let levi = g.levi_subalgebra().unwrap();
        prop_assert!(g.is_subalgebra(&levi.levi.space));
        prop_assert_eq!(levi.levi.dim(), inst.levi_dim);
        prop_assert_eq!(levi.radical.dim(), inst.radical_dim);
        prop_assert!(levi.levi.space.intersect(&levi.radical.space).unwrap().is_zero());
        prop_assert!(levi.levi.space.sum(&levi.radical.space).unwrap().is_whole());
        let own = g.subalgebra(&levi.levi.space).unwrap().killing_form();
        prop_assert!(own.is_nondegenerate());
    }

    #[test]
    fn mixed_instances_decompose_to_their_blocks(seed in 0u64..10_000) {
        let inst = random_instance(seed, Profile::MixedThreeFactor).unwrap();
        let out = abelian_radical_decompose(&inst.algebra, &inst.form).unwrap();
        let Decomposition::Decomposed(report) = out else {
            return Err(TestCaseError::fail(format!("seed {seed}: {out:?}")));
        };
        prop_assert!(report.all_verified(), "{:?}", report.failed().collect::<Vec<_>>());
        prop_assert!(report.c.is_zero());
        for (got, want) in report.fingerprints.iter().zip(&inst.factors) {
            prop_assert_eq!(got.dim, want.dim);
            prop_assert_eq!(got.killing_signature, want.killing_signature);
        }
    }

    #[test]
    fn cotangent_instances_pass_the_certificate(seed in 0u64..10_000) {
        let inst = random_instance(seed, Profile::Cotangent).unwrap();
        let (lower, dual) = inst.cotangent_split.as_ref().unwrap();
        let c = verify_metric_cotangent(&inst.algebra, &inst.form, lower, dual);
        prop_assert!(c.verified(), "{c:?}");
    }

    #[test]
    fn euclidean_instances_match_their_blocks(seed in 0u64..10_000) {
        let inst = random_instance(seed, Profile::EuclideanType).unwrap();
        let a = analyze(&inst.algebra, &inst.form).unwrap();
        prop_assert_eq!(a.signature, inst.block_signature);
        prop_assert_eq!(a.nil_invariant.grade(), NilVerdict::Holds);
        prop_assert!(a.effective);
    }

    #[test]
    fn analysis_is_basis_free(idx in 0usize..64, seed in 0u64..1000) {
        let names: Vec<&str> = entry_names()
            .filter(|n| !n.starts_with("random"))
            .filter(|n| gallery_entry(n, 0).unwrap().algebra.dim() <= 10)
            .collect();
        assert_basis_free(names[idx % names.len()], seed)?;
    }
}

fn assert_basis_free(name: &str, seed: u64) -> Result<(), TestCaseError> {
    let e = gallery_entry(name, 0).unwrap();
    let form = e.form.as_ref().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (p, _) = unimodular_scramble(e.algebra.dim(), &mut rng);
    let g2 = e.algebra.change_basis(&p).unwrap();
    let f2 = form.change_basis(&p);
    let a = analyze(&e.algebra, form).unwrap();
    let b = analyze(&g2, &f2).unwrap();
    prop_assert_eq!(a.signature, b.signature);
    prop_assert_eq!(a.relative_index, b.relative_index);
    prop_assert_eq!(a.kernel.dim(), b.kernel.dim());
    prop_assert_eq!(a.invariant, b.invariant);
    prop_assert_eq!(a.effective, b.effective);
    prop_assert_eq!(a.nil_invariant.grade(), b.nil_invariant.grade());
    Ok(())
}

#[test]
fn large_examples_are_basis_free() {
    for name in ["ex-3-9", "ex-4-7"] {
        assert_basis_free(name, 11).unwrap();
    }
}

#[test]
fn seed_one_euclidean_type_matches_constructed_signature() {
    let inst = random_instance(1, Profile::EuclideanType).unwrap();
    let a = analyze(&inst.algebra, &inst.form).unwrap();
    assert_eq!(a.signature, inst.block_signature);
}

#[test]
fn seed_zero_mixed_round_trip() {
    let inst = random_instance(0, Profile::MixedThreeFactor).unwrap();
    match abelian_radical_decompose(&inst.algebra, &inst.form).unwrap() {
        Decomposition::Decomposed(r) => assert!(r.all_verified()),
        other => panic!("{other:?}"),
    }
}

#[test]
fn gs_invariance_on_every_nil_invariant_entry() {
    for name in entry_names() {
        let e = gallery_entry(name, 0).unwrap();
        let form = e.form.as_ref().unwrap();
        let levi = e.algebra.levi_subalgebra().unwrap();
        let a = nilform_core::metric::analyze_with(&e.algebra, form, &levi).unwrap();
        if a.nil_invariant.holds() {
            let c = gs_invariance_check(&e.algebra, form, &levi, &a);
            assert!(c.verified(), "{name}: {c:?}");
        }
    }
}
