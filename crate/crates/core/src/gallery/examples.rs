//! Named algebras with forms and their golden analysis records.

use serde::{Deserialize, Serialize};

use super::classical::{build_cotangent, build_euclidean, build_sl2, build_so, so_pairs};
use super::random::{random_instance, Profile};
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{Matrix, Rational, Subspace};
use crate::metric::{analyze, forms_skew_under, vanishing_on_block, NilVerdict, SymBilinearForm};

/// Basis-free outcome of analyzing an entry's form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedAnalysis {
    pub signature: (usize, usize, usize),
    pub kernel_dim: usize,
    pub effective: bool,
    pub invariant: bool,
    pub nil_invariant: NilVerdict,
}

/// Optional subspaces attached to an entry for the stabilizer audit.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Annotations {
    /// Radical directions on which the graph map must be injective.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center_part: Option<Subspace>,
    /// Candidate stabilizer subalgebra.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stabilizer: Option<Subspace>,
}

#[derive(Debug, Clone)]
pub struct GalleryEntry {
    pub name: String,
    pub description: String,
    /// What the entry demonstrates.
    pub highlights: String,
    pub algebra: LieAlgebra,
    pub form: Option<SymBilinearForm>,
    pub expected: Option<ExpectedAnalysis>,
    pub annotations: Annotations,
}

/// Name, one-line description and highlights of a gallery entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EntryInfo {
    pub name: &'static str,
    pub description: &'static str,
    pub highlights: &'static str,
}

const fn info(
    name: &'static str,
    description: &'static str,
    highlights: &'static str,
) -> EntryInfo {
    EntryInfo {
        name,
        description,
        highlights,
    }
}

pub const ENTRIES: &[EntryInfo] = &[
    info(
        "so3-killing",
        "so(3) with its Killing form",
        "negative definite, relative index 3",
    ),
    info(
        "so3-compact",
        "so(3) with minus its Killing form",
        "positive definite invariant form",
    ),
    info(
        "sl2-killing",
        "sl(2) with its Killing form",
        "Lorentzian invariant form on a noncompact simple algebra",
    ),
    info(
        "so4-killing",
        "so(4) with its Killing form",
        "so(4) splits into two compact simple ideals",
    ),
    info(
        "so3xsl2",
        "so(3) × sl(2) with -Killing ⊕ Killing",
        "compact and noncompact Levi factors side by side",
    ),
    info(
        "so3xr3-definite",
        "so(3) × R³ with -Killing ⊕ identity",
        "reductive, relative index 0",
    ),
    info(
        "so3xr3-hyperbolic",
        "so(3) × R³ with the hyperbolic pairing and trivial action",
        "nil-invariant but not invariant; the action is not coadjoint",
    ),
    info(
        "e2",
        "Euclidean algebra so(2) ⋉ R² with a form seeing only so(2)",
        "solvable: verdict holds for the generator set only",
    ),
    info(
        "e3-dual",
        "Euclidean algebra so(3) ⋉ R³ with its dual pairing",
        "the Euclidean exception: invariant and nondegenerate",
    ),
    info(
        "e4-definite",
        "Euclidean algebra so(4) ⋉ R⁴, definite on so(4), zero on R⁴",
        "R⁴ is an ideal inside the kernel: not effective",
    ),
    info(
        "e4-killing-definite",
        "Euclidean algebra so(4) ⋉ R⁴ with Killing ⊕ identity",
        "nondegenerate but not nil-invariant",
    ),
    info(
        "cotangent-so3",
        "so(3) ⋉ so(3)* with the canonical pairing",
        "metric cotangent algebra of a compact algebra",
    ),
    info(
        "cotangent-sl2",
        "sl(2) ⋉ sl(2)* with the canonical pairing",
        "metric cotangent algebra, signature (3,3,0)",
    ),
    info(
        "abelian-r3",
        "abelian R³ with the zero form",
        "trivially nil-invariant, nothing effective",
    ),
    info(
        "ex-3-8",
        "(so(3) ⋉ R³) × R³ with the graph-kernel form",
        "effective nil-invariant form whose kernel is not an ideal",
    ),
    info(
        "ex-3-9",
        "(so(3) ⋉ R³) × so(6), R³ factor replaced by a torus of so(6)",
        "the graph-kernel form extended definitely, signature (15,3,3)",
    ),
    info(
        "ex-4-7",
        "the ex-3-9 algebra with its stabilizer annotated",
        "stabilizer is the graph of a homomorphism from the radical into a torus",
    ),
    info(
        "random-euclidean",
        "seeded random Euclidean-type instance, scrambled",
        "K ⋉ V with adjoint and trivial summands",
    ),
    info(
        "random-cotangent",
        "seeded random metric cotangent instance, scrambled",
        "L ⋉ L* with an invariant form",
    ),
    info(
        "random-mixed",
        "seeded random three-factor instance, scrambled",
        "(K ⋉ A) × S0 × (S1 ⋉ S1*)",
    ),
];

pub fn entry_names() -> impl Iterator<Item = &'static str> {
    ENTRIES.iter().map(|e| e.name)
}

fn expected(
    signature: (usize, usize, usize),
    kernel_dim: usize,
    effective: bool,
    invariant: bool,
    nil_invariant: NilVerdict,
) -> Option<ExpectedAnalysis> {
    Some(ExpectedAnalysis {
        signature,
        kernel_dim,
        effective,
        invariant,
        nil_invariant,
    })
}

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn symmetric(n: usize, entries: &[(usize, usize, i64)]) -> SymBilinearForm {
    let mut m = Matrix::zeros(n, n);
    for &(a, b, v) in entries {
        m[(a, b)] = Rational::from(v);
        m[(b, a)] = Rational::from(v);
    }
    SymBilinearForm::new(m).expect("symmetric by construction")
}

fn entry(
    name: &str,
    algebra: LieAlgebra,
    form: SymBilinearForm,
    exp: Option<ExpectedAnalysis>,
) -> GalleryEntry {
    let info = ENTRIES
        .iter()
        .find(|e| e.name == name)
        .expect("registered name");
    GalleryEntry {
        name: name.into(),
        description: info.description.into(),
        highlights: info.highlights.into(),
        algebra,
        form: Some(form),
        expected: exp,
        annotations: Annotations::default(),
    }
}

/// `so(3) ⋉ so(3)*` on labels `k1..k3, u1..u3`.
fn cotangent_so3() -> LieAlgebra {
    let (g, _) = build_cotangent(&build_so(3).expect("n = 3"));
    let names = labels("k", 3).into_iter().chain(labels("u", 3)).collect();
    g.with_labels(names).expect("dim 6")
}

/// `(so(3) ⋉ R³) × R³` on `k, u, w` with `⟨k_i, u_j⟩ = δ_ij` and
/// `⟨k_i, w_j⟩ = -δ_ij`. Kernel `{u_j + w_j}`, the graph of the identity.
pub fn build_example_3_8() -> GalleryEntry {
    let g = cotangent_so3().direct_product(&LieAlgebra::abelian(labels("w", 3)));
    let mut pairs = Vec::new();
    for i in 0..3 {
        pairs.push((i, 3 + i, 1));
        pairs.push((i, 6 + i, -1));
    }
    let form = symmetric(9, &pairs);
    entry(
        "ex-3-8",
        g,
        form,
        expected((3, 3, 3), 3, true, false, NilVerdict::Holds),
    )
}

/// Indices in the `so(6)` basis of the torus `L12, L34, L56`.
fn so6_torus() -> [usize; 3] {
    let pairs = so_pairs(6);
    [(0, 1), (2, 3), (4, 5)].map(|p| pairs.iter().position(|&q| q == p).expect("i < j"))
}

/// `(so(3) ⋉ R³) × so(6)` with `⟨k_i, t_i⟩ = -1` on the torus `t` and the
/// identity (`-κ/8`) on the twelve remaining rotations, which span the
/// Killing-orthogonal complement of the torus.
pub fn build_example_3_9() -> GalleryEntry {
    let g = cotangent_so3().direct_product(&build_so(6).expect("n = 6"));
    let torus = so6_torus();
    let mut pairs = Vec::new();
    for (i, &t) in torus.iter().enumerate() {
        pairs.push((i, 3 + i, 1));
        pairs.push((i, 6 + t, -1));
    }
    for j in (0..15).filter(|j| !torus.contains(j)) {
        pairs.push((6 + j, 6 + j, 1));
    }
    let form = symmetric(21, &pairs);
    entry(
        "ex-3-9",
        g,
        form,
        expected((15, 3, 3), 3, true, false, NilVerdict::Holds),
    )
}

/// The ex-3-9 algebra with stabilizer `{u_j + t_j}`, the graph of the map
/// sending the radical onto the torus.
pub fn build_example_4_7() -> GalleryEntry {
    let base = build_example_3_9();
    let torus = so6_torus();
    let h = Subspace::span(
        21,
        (0..3).map(|i| {
            let mut v = vec![Rational::zero(); 21];
            v[3 + i] = Rational::one();
            v[6 + torus[i]] = Rational::one();
            v
        }),
    );
    let info = ENTRIES
        .iter()
        .find(|e| e.name == "ex-4-7")
        .expect("registered");
    GalleryEntry {
        name: info.name.into(),
        description: info.description.into(),
        highlights: info.highlights.into(),
        annotations: Annotations {
            center_part: None,
            stabilizer: Some(h),
        },
        ..base
    }
}

/// The invariant forms of `E3` vanishing on `so(3) × so(3)`: the dual
/// pairing, up to scale.
pub fn e3_dual_pairing() -> SymBilinearForm {
    let g = build_euclidean(3).expect("n = 3");
    let ads: Vec<Matrix> = (0..6).map(|i| g.ad_basis(i).clone()).collect();
    let invariant = forms_skew_under(6, &ads);
    let pairing = vanishing_on_block(&invariant, 6, &[0, 1, 2]);
    assert_eq!(pairing.len(), 1, "the dual pairing is unique up to scale");
    SymBilinearForm::new(pairing[0].clone()).expect("symmetric")
}

fn killing_of(g: &LieAlgebra, scale: i64) -> SymBilinearForm {
    g.killing_form().scale(&Rational::from(scale))
}

fn random_entry(name: &str, profile: Profile, seed: u64) -> Result<GalleryEntry> {
    let inst = random_instance(seed, profile)?;
    let (plain_g, plain_form) = &inst.unscrambled;
    let a = analyze(plain_g, plain_form)?;
    let exp = expected(
        a.signature,
        a.kernel.dim(),
        a.effective,
        a.invariant,
        a.nil_invariant.grade(),
    );
    let mut e = entry(name, inst.algebra, inst.form, exp);
    e.description = format!("{} (seed {seed})", e.description);
    Ok(e)
}

/// Builds the named entry. `seed` is used by the `random-*` entries only.
pub fn gallery_entry(name: &str, seed: u64) -> Result<GalleryEntry> {
    use NilVerdict::{Fails, Holds, HoldsForGeneratorSet};
    let so3 = || build_so(3).expect("n = 3");
    let r3 = || LieAlgebra::abelian(labels("v", 3));
    Ok(match name {
        "so3-killing" => {
            let g = so3();
            let f = killing_of(&g, 1);
            entry(name, g, f, expected((0, 3, 0), 0, true, true, Holds))
        }
        "so3-compact" => {
            let g = so3();
            let f = killing_of(&g, -1);
            entry(name, g, f, expected((3, 0, 0), 0, true, true, Holds))
        }
        "sl2-killing" => {
            let g = build_sl2();
            let f = killing_of(&g, 1);
            entry(name, g, f, expected((2, 1, 0), 0, true, true, Holds))
        }
        "so4-killing" => {
            let g = build_so(4).expect("n = 4");
            let f = killing_of(&g, 1);
            entry(name, g, f, expected((0, 6, 0), 0, true, true, Holds))
        }
        "so3xsl2" => {
            let (a, b) = (so3(), build_sl2());
            let f = killing_of(&a, -1).direct_sum(&killing_of(&b, 1));
            entry(
                name,
                a.direct_product(&b),
                f,
                expected((5, 1, 0), 0, true, true, Holds),
            )
        }
        "so3xr3-definite" => {
            let a = so3();
            let f = killing_of(&a, -1)
                .direct_sum(&SymBilinearForm::new(Matrix::identity(3)).expect("symmetric"));
            entry(
                name,
                a.direct_product(&r3()),
                f,
                expected((6, 0, 0), 0, true, true, Holds),
            )
        }
        "so3xr3-hyperbolic" => {
            let f = symmetric(6, &[(0, 3, 1), (1, 4, 1), (2, 5, 1)]);
            entry(
                name,
                so3().direct_product(&r3()),
                f,
                expected((3, 3, 0), 0, true, false, Holds),
            )
        }
        "e2" => {
            let g = build_euclidean(2)?;
            let f = symmetric(3, &[(0, 0, 1)]);
            entry(
                name,
                g,
                f,
                expected((1, 0, 2), 2, false, true, HoldsForGeneratorSet),
            )
        }
        "e3-dual" => entry(
            name,
            build_euclidean(3)?,
            e3_dual_pairing(),
            expected((3, 3, 0), 0, true, true, Holds),
        ),
        "e4-definite" => {
            let g = build_euclidean(4)?;
            let f = killing_of(&build_so(4)?, -1).direct_sum(&SymBilinearForm::zero(4));
            entry(name, g, f, expected((6, 0, 4), 4, false, true, Holds))
        }
        "e4-killing-definite" => {
            let g = build_euclidean(4)?;
            let f = killing_of(&build_so(4)?, 1)
                .direct_sum(&SymBilinearForm::new(Matrix::identity(4)).expect("symmetric"));
            entry(name, g, f, expected((4, 6, 0), 0, true, false, Fails))
        }
        "cotangent-so3" => {
            let (g, f) = build_cotangent(&so3());
            entry(name, g, f, expected((3, 3, 0), 0, true, true, Holds))
        }
        "cotangent-sl2" => {
            let (g, f) = build_cotangent(&build_sl2());
            entry(name, g, f, expected((3, 3, 0), 0, true, true, Holds))
        }
        "abelian-r3" => entry(
            name,
            r3(),
            SymBilinearForm::zero(3),
            expected((0, 0, 3), 3, false, true, Holds),
        ),
        "ex-3-8" => build_example_3_8(),
        "ex-3-9" => build_example_3_9(),
        "ex-4-7" => build_example_4_7(),
        "random-euclidean" => random_entry(name, Profile::EuclideanType, seed)?,
        "random-cotangent" => random_entry(name, Profile::Cotangent, seed)?,
        "random-mixed" => random_entry(name, Profile::MixedThreeFactor, seed)?,
        _ => {
            return Err(Error::InvalidArgument(format!(
                "unknown gallery entry '{name}'"
            )));
        }
    })
}
