//! Exhaustive linear solves: nil-invariant forms on Euclidean algebras and
//! skew pairings of `so(3)` with its irreducible modules.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gallery::{build_euclidean, build_so, build_so3_irrep};
use crate::lie::intertwiners;
use crate::linalg::{null_space, Matrix, Rational, Subspace};
use crate::metric::{
    forms_skew_under, nilpotent_generators, vanishing_on_block, GeneratorScope, SymBilinearForm,
};

pub const MAX_EUCLIDEAN_N: usize = 8;
pub const MAX_IRREP_L: usize = 6;

/// Outcome of the Euclidean sweep for one `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EuclideanVerdict {
    /// Every nil-invariant form has `R^n` in its kernel.
    RadicalInKernel,
    /// A nondegenerate invariant form exists.
    Exception,
    /// `E_1 = R` is abelian; the obstruction does not speak about it.
    OutsideScope,
    /// The solve contradicts the expected outcome for this `n`.
    Counterexample,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EuclideanCase {
    pub n: usize,
    pub algebra_dim: usize,
    pub generator_count: usize,
    /// Dimension of the space of nil-invariant symmetric forms.
    pub solution_dim: usize,
    /// Echelon basis of the solution space.
    pub basis: Vec<Matrix>,
    pub radical_in_every_kernel: bool,
    /// A basis form not vanishing on `R^n`, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radical_witness: Option<String>,
    /// Invariant form vanishing on `so(n) × so(n)`, when nondegenerate.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nondegenerate_invariant: Option<SymBilinearForm>,
    pub verdict: EuclideanVerdict,
}

/// Nil-invariant symmetric forms on `E_n = so(n) ⋉ R^n`, solved over the full
/// generator set.
pub fn verify_euclidean(n: usize) -> Result<EuclideanCase> {
    if !(1..=MAX_EUCLIDEAN_N).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "n must lie in 1..={MAX_EUCLIDEAN_N}, got {n}"
        )));
    }
    let g = build_euclidean(n)?;
    let dim = g.dim();
    let levi = g.levi_subalgebra()?;
    let gens = nilpotent_generators(&g, &levi, GeneratorScope::Full);
    let basis = forms_skew_under(dim, gens.iter().map(|x| &x.matrix));
    // R^n occupies the last n coordinates
    let so_dim = dim - n;
    let radical_witness = basis.iter().enumerate().find_map(|(i, m)| {
        (0..dim)
            .flat_map(|a| (so_dim..dim).map(move |b| (a, b)))
            .find(|&(a, b)| !m[(a, b)].is_zero())
            .map(|(a, b)| {
                format!(
                    "solution {i} pairs {} with {} to {}",
                    g.labels()[a],
                    g.labels()[b],
                    m[(a, b)]
                )
            })
    });
    let ads: Vec<Matrix> = (0..dim).map(|i| g.ad_basis(i).clone()).collect();
    let invariant = forms_skew_under(dim, &ads);
    let pairing = vanishing_on_block(&invariant, dim, &(0..so_dim).collect::<Vec<_>>());
    let nondegenerate_invariant = pairing
        .into_iter()
        .map(|m| SymBilinearForm::new(m).expect("symmetric"))
        .find(SymBilinearForm::is_nondegenerate);
    let radical_in_every_kernel = radical_witness.is_none();
    let verdict = match n {
        1 => EuclideanVerdict::OutsideScope,
        3 if nondegenerate_invariant.is_some() => EuclideanVerdict::Exception,
        3 => EuclideanVerdict::Counterexample,
        _ if radical_in_every_kernel => EuclideanVerdict::RadicalInKernel,
        _ => EuclideanVerdict::Counterexample,
    };
    Ok(EuclideanCase {
        n,
        algebra_dim: dim,
        generator_count: gens.len(),
        solution_dim: basis.len(),
        basis,
        radical_in_every_kernel,
        radical_witness,
        nondegenerate_invariant,
        verdict,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SkewPairingVerdict {
    /// Trivial module: the identity is vacuous.
    Trivial,
    /// Adjoint module: a single line, spanned by the Killing pairing.
    KillingLine,
    /// No nonzero skew pairing.
    Zero,
    Counterexample,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkewPairingCase {
    pub l: usize,
    pub module_dim: usize,
    pub solution_dim: usize,
    /// Each solution as a `3 × (2l+1)` matrix `P` with `⟨x, v⟩ = xᵀ P v`.
    pub basis: Vec<Matrix>,
    /// For `l = 1`: the solution line is spanned by `κ(x, T⁻¹ v)` with `T`
    /// an intertwiner from the adjoint module.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proportional_to_killing: Option<bool>,
    pub verdict: SkewPairingVerdict,
}

/// Bilinear maps `β: so(3) × V → R` with `β(x, y·v) = -β(y, x·v)`, `V` the
/// harmonic polynomials of degree `l`.
pub fn verify_skew_pairing(l: usize) -> Result<SkewPairingCase> {
    if l > MAX_IRREP_L {
        return Err(Error::InvalidArgument(format!(
            "l must be at most {MAX_IRREP_L}, got {l}"
        )));
    }
    let rho = build_so3_irrep(l);
    let d = 2 * l + 1;
    // unknown P[x][w] at index x * d + w; one equation per (x, y, v)
    let mut rows = Vec::new();
    for x in 0..3 {
        for y in 0..3 {
            for v in 0..d {
                let mut row = vec![Rational::zero(); 3 * d];
                for w in 0..d {
                    row[x * d + w] += &rho[y][(w, v)];
                    row[y * d + w] += &rho[x][(w, v)];
                }
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let sols = if rows.is_empty() {
        (0..3 * d).map(|i| crate::linalg::unit(3 * d, i)).collect()
    } else {
        null_space(rows, 3 * d)
    };
    let basis: Vec<Matrix> = sols
        .iter()
        .map(|s| Matrix::new(3, d, s.clone()).expect("3·d entries"))
        .collect();
    let proportional_to_killing = (l == 1).then(|| killing_line(&basis, &rho));
    let verdict = match (l, basis.len()) {
        (0, 3) => SkewPairingVerdict::Trivial,
        (1, 1) if proportional_to_killing == Some(true) => SkewPairingVerdict::KillingLine,
        (l, 0) if l >= 2 => SkewPairingVerdict::Zero,
        _ => SkewPairingVerdict::Counterexample,
    };
    Ok(SkewPairingCase {
        l,
        module_dim: d,
        solution_dim: basis.len(),
        basis,
        proportional_to_killing,
        verdict,
    })
}

/// Whether `basis` spans exactly the line of `κ · T⁻¹`, `T` the intertwiner
/// from the adjoint module to `rho`.
fn killing_line(basis: &[Matrix], rho: &[Matrix]) -> bool {
    let so3 = build_so(3).expect("n = 3");
    let ad: Vec<Matrix> = (0..3).map(|i| so3.ad_basis(i).clone()).collect();
    let Ok(ts) = intertwiners(&ad, rho) else {
        return false;
    };
    let Some(t_inv) = ts.first().and_then(Matrix::inverse) else {
        return false;
    };
    let target = so3.killing_form().gram().mul(&t_inv);
    let line = Subspace::span(9, [target.entries().to_vec()]);
    let found = Subspace::span(9, basis.iter().map(|m| m.entries().to_vec()));
    basis.len() == 1 && line == found
}
