use serde::{Deserialize, Serialize};

use super::form::SymBilinearForm;
use crate::lie::{LeviDecomposition, LieAlgebra};
use crate::linalg::{jordan_chevalley, unit, Matrix, Rational};

/// Where a nilpotent generator comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    /// `ad(r)` for `r` in a basis of an abelian radical.
    RadicalAd,
    /// `ad(s)` for `s` in a basis of the noncompact Levi part.
    NoncompactAd,
    /// Nilpotent Jordan part of `ad(x)`, `x` a basis element or a sum of two.
    JordanPart,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilGenerator {
    pub kind: GeneratorKind,
    pub element: Vec<Rational>,
    pub matrix: Matrix,
}

impl NilGenerator {
    pub fn describe(&self, g: &LieAlgebra) -> String {
        let x = g.describe(&self.element);
        match self.kind {
            GeneratorKind::RadicalAd | GeneratorKind::NoncompactAd => format!("ad({x})"),
            GeneratorKind::JordanPart => format!("nilpotent part of ad({x})"),
        }
    }
}

/// Which clauses of the generator set to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorScope {
    /// Radical and noncompact-part adjoints plus Jordan parts.
    Full,
    /// Radical and noncompact-part adjoints only. With an abelian radical
    /// their span contains every nilpotent element of `ad(g)`, which is then
    /// its own algebraic hull.
    Structural,
}

/// The enforced generator set. Radical adjoints are included only when the
/// radical is abelian, where each squares to zero.
pub fn nilpotent_generators(
    g: &LieAlgebra,
    levi: &LeviDecomposition,
    scope: GeneratorScope,
) -> Vec<NilGenerator> {
    let n = g.dim();
    let mut out = Vec::new();
    let mut push = |kind, element: Vec<Rational>, matrix: Matrix| {
        if !matrix.is_zero() {
            out.push(NilGenerator {
                kind,
                element,
                matrix,
            });
        }
    };
    if levi.radical.is_abelian {
        for r in levi.radical.space.basis() {
            push(GeneratorKind::RadicalAd, r.clone(), g.ad(r));
        }
    }
    for s in levi.noncompact_part.space.basis() {
        push(GeneratorKind::NoncompactAd, s.clone(), g.ad(s));
    }
    if scope == GeneratorScope::Full {
        let probes = (0..n).map(|i| unit(n, i)).chain((0..n).flat_map(|i| {
            (i + 1..n).map(move |j| {
                let mut v = unit(n, i);
                v[j] = Rational::one();
                v
            })
        }));
        for x in probes {
            let parts = jordan_chevalley(&g.ad(&x)).expect("ad(x) is square");
            push(GeneratorKind::JordanPart, x, parts.nilpotent);
        }
    }
    out
}

/// First basis pair `(a, b)` with `⟨φ e_a, e_b⟩ + ⟨e_a, φ e_b⟩ ≠ 0`.
pub fn skewness_defect(form: &SymBilinearForm, phi: &Matrix) -> Option<(usize, usize, Rational)> {
    let g = form.gram();
    let defect = phi.transpose().mul(g).add(&g.mul(phi));
    let n = defect.rows();
    (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .find(|&(a, b)| !defect[(a, b)].is_zero())
        .map(|(a, b)| (a, b, defect[(a, b)].clone()))
}

/// A generator under which the form is not skew.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilWitness {
    pub generator: String,
    pub kind: GeneratorKind,
    pub element: Vec<Rational>,
    /// Basis indices `a, b` with `⟨φ e_a, e_b⟩ + ⟨e_a, φ e_b⟩ = value ≠ 0`.
    pub a: usize,
    pub b: usize,
    pub value: Rational,
}

/// Grade of a nil-invariance verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NilVerdict {
    Holds,
    Fails,
    HoldsForGeneratorSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum NilInvariance {
    /// Skew under every generator, radical abelian: the generator set spans
    /// the nilpotent elements of the hull up to brackets.
    Holds,
    Fails {
        witness: NilWitness,
    },
    /// Skew under every generator, but the radical is not abelian, so the
    /// generator set may miss nilpotent elements of the hull.
    HoldsForGeneratorSet {
        caveat: String,
    },
}

impl NilInvariance {
    pub fn grade(&self) -> NilVerdict {
        match self {
            NilInvariance::Holds => NilVerdict::Holds,
            NilInvariance::Fails { .. } => NilVerdict::Fails,
            NilInvariance::HoldsForGeneratorSet { .. } => NilVerdict::HoldsForGeneratorSet,
        }
    }

    pub fn holds(&self) -> bool {
        self.grade() == NilVerdict::Holds
    }
}

pub const NON_ABELIAN_CAVEAT: &str =
    "radical is not abelian; skewness was checked on the generator set only";

/// Nil-invariance verdict over the generator set of the given scope.
pub fn nil_invariance(
    g: &LieAlgebra,
    form: &SymBilinearForm,
    levi: &LeviDecomposition,
    scope: GeneratorScope,
) -> NilInvariance {
    for gen in nilpotent_generators(g, levi, scope) {
        if let Some((a, b, value)) = skewness_defect(form, &gen.matrix) {
            return NilInvariance::Fails {
                witness: NilWitness {
                    generator: gen.describe(g),
                    kind: gen.kind,
                    element: gen.element,
                    a,
                    b,
                    value,
                },
            };
        }
    }
    if levi.radical.is_abelian {
        NilInvariance::Holds
    } else {
        NilInvariance::HoldsForGeneratorSet {
            caveat: NON_ABELIAN_CAVEAT.into(),
        }
    }
}

/// Full generator set, including Jordan parts.
pub fn is_nil_invariant(
    g: &LieAlgebra,
    form: &SymBilinearForm,
    levi: &LeviDecomposition,
) -> NilInvariance {
    nil_invariance(g, form, levi, GeneratorScope::Full)
}
