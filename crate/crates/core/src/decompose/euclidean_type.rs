//! Kernel location for Euclidean-type algebras `K ⋉ V`.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::lie::{LieAlgebra, SubalgebraHandle};
use crate::linalg::Subspace;
use crate::metric::{analyze_with, is_invariant, Certificate, Clause, SymBilinearForm};

pub const KERNEL_CONTAINMENT: &str = "euclidean-kernel-containment";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EuclideanTypeReport {
    /// `{x ∈ K : [x, V] = 0}`
    pub k0: SubalgebraHandle,
    /// The abelian radical.
    pub v: Subspace,
    /// `G⊥ ⊆ K0 + V`, when the hypotheses hold.
    pub kernel_containment: bool,
    pub certificate: Certificate,
}

/// Checks `G⊥ ⊆ K0 + V` for `g = K ⋉ V`, `K` compact, `V` abelian, and a
/// nil-invariant, kernel-invariant, effective form. `K0` is computed even
/// when a hypothesis fails.
pub fn euclidean_type_analyze(
    g: &LieAlgebra,
    form: &SymBilinearForm,
) -> Result<EuclideanTypeReport> {
    const CLAIM: &str =
        "for a nil-invariant, kernel-invariant, effective form on K ⋉ V the kernel lies in K0 + V";
    let levi = g.levi_subalgebra()?;
    let (k, v) = (&levi.levi.space, &levi.radical.space);
    let k0 = g.centralizer(v).intersect(k)?;

    let mut unmet = Vec::new();
    if levi.noncompact_part.dim() > 0 {
        unmet.push(format!(
            "Levi factor has a noncompact part of dimension {}",
            levi.noncompact_part.dim()
        ));
    }
    if !levi.radical.is_abelian {
        unmet.push("radical is not abelian".into());
    }
    if unmet.is_empty() {
        let analysis = analyze_with(g, form, &levi)?;
        if !analysis.nil_invariant.holds() {
            unmet.push("form is not nil-invariant".into());
        }
        if let Some(w) = is_invariant(g, form, &analysis.kernel)? {
            unmet.push(format!("form is not kernel-invariant: {}", w.render()));
        }
        if !analysis.effective {
            unmet.push(format!(
                "kernel contains nonzero ideal of dimension {}",
                analysis.ideal_in_kernel.dim()
            ));
        }
    }
    let certificate = if unmet.is_empty() {
        let target = k0.sum(v)?;
        Certificate::from_clauses(
            KERNEL_CONTAINMENT,
            CLAIM,
            vec![Clause::new(
                "G⊥ ⊆ K0 + V",
                form.kernel()
                    .basis()
                    .iter()
                    .find(|x| !target.contains_vector(x))
                    .map(|x| format!("{} lies outside K0 + V", g.describe(x))),
            )],
        )
    } else {
        Certificate::not_applicable(KERNEL_CONTAINMENT, CLAIM, unmet)
    };
    Ok(EuclideanTypeReport {
        k0: g.handle(k0),
        v: v.clone(),
        kernel_containment: certificate.verified(),
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::gallery_entry;
    use crate::metric::Status;

    fn run(name: &str) -> EuclideanTypeReport {
        let e = gallery_entry(name, 0).unwrap();
        euclidean_type_analyze(&e.algebra, e.form.as_ref().unwrap()).unwrap()
    }

    #[test]
    fn example_3_8() {
        let r = run("ex-3-8");
        assert_eq!(r.k0.dim(), 0);
        assert_eq!(r.v.dim(), 6);
        assert!(r.kernel_containment);
    }

    #[test]
    fn example_3_9_k0_is_so6() {
        let r = run("ex-3-9");
        assert_eq!(r.k0.dim(), 15);
        assert_eq!(r.v.dim(), 3);
        assert!(r.kernel_containment);
    }

    #[test]
    fn e4_definite_fails_effectivity() {
        let r = run("e4-definite");
        assert_eq!(r.certificate.status, Status::NotApplicable);
        assert!(r
            .certificate
            .unmet
            .iter()
            .any(|u| u.contains("nonzero ideal")));
        // the containment itself would hold: the kernel is V
        assert!(r
            .k0
            .space
            .sum(&r.v)
            .unwrap()
            .contains(&gallery_kernel("e4-definite"))
            .unwrap());
    }

    fn gallery_kernel(name: &str) -> Subspace {
        gallery_entry(name, 0).unwrap().form.unwrap().kernel()
    }
}
