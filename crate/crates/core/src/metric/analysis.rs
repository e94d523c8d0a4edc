use serde::{Deserialize, Serialize};

use super::form::SymBilinearForm;
use super::nil::{is_nil_invariant, NilInvariance};
use crate::error::{Error, Result};
use crate::lie::{LeviDecomposition, LieAlgebra};
use crate::linalg::{unit, Rational, Subspace};

/// Triple `(x, a, b)` with `⟨[x, a], b⟩ + ⟨a, [x, b]⟩ ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvarianceWitness {
    pub x: String,
    pub element: Vec<Rational>,
    pub a: String,
    pub b: String,
    pub value: Rational,
}

impl InvarianceWitness {
    pub fn render(&self) -> String {
        format!(
            "<[{x}, {a}], {b}> + <{a}, [{x}, {b}]> = {v}",
            x = self.x,
            a = self.a,
            b = self.b,
            v = self.value
        )
    }
}

/// First failure of `ad(x)`-skewness for `x` in the basis of `h` and `a, b`
/// in the given test spaces.
pub fn invariance_witness(
    g: &LieAlgebra,
    form: &SymBilinearForm,
    h: &Subspace,
    left: &Subspace,
    right: &Subspace,
) -> Option<InvarianceWitness> {
    for x in h.basis() {
        let ad = g.ad(x);
        for a in left.basis() {
            let xa = ad.mul_vec(a);
            let ga = form.gram().mul_vec(a);
            let gxa = form.gram().mul_vec(&xa);
            for b in right.basis() {
                let xb = ad.mul_vec(b);
                let v: Rational = gxa.iter().zip(b).map(|(p, q)| p * q).sum::<Rational>()
                    + ga.iter().zip(&xb).map(|(p, q)| p * q).sum::<Rational>();
                if !v.is_zero() {
                    return Some(InvarianceWitness {
                        x: g.describe(x),
                        element: x.clone(),
                        a: g.describe(a),
                        b: g.describe(b),
                        value: v,
                    });
                }
            }
        }
    }
    None
}

/// `ad(h)`-invariance of the form on all of `g`, with the first failure.
pub fn is_invariant(
    g: &LieAlgebra,
    form: &SymBilinearForm,
    h: &Subspace,
) -> Result<Option<InvarianceWitness>> {
    if form.dim() != g.dim() || h.ambient_dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: if form.dim() != g.dim() {
                form.dim()
            } else {
                h.ambient_dim()
            },
        });
    }
    let n = g.dim();
    // entrywise on the matrix adᵀG + G ad, basis pairs in row-major order
    for x in h.basis() {
        let ad = g.ad(x);
        let defect = ad.transpose().mul(form.gram()).add(&form.gram().mul(&ad));
        for a in 0..n {
            for b in 0..n {
                if !defect[(a, b)].is_zero() {
                    return Ok(Some(InvarianceWitness {
                        x: g.describe(x),
                        element: x.clone(),
                        a: g.describe(&unit(n, a)),
                        b: g.describe(&unit(n, b)),
                        value: defect[(a, b)].clone(),
                    }));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormAnalysis {
    /// `G⊥`
    pub kernel: Subspace,
    /// `(n_plus, n_minus, n_zero)`
    pub signature: (usize, usize, usize),
    /// Index of the induced form on `g / G⊥`.
    pub relative_index: usize,
    pub invariant: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariance_witness: Option<InvarianceWitness>,
    pub nil_invariant: NilInvariance,
    /// No nonzero ideal of `g` lies in the kernel.
    pub effective: bool,
    /// Largest ideal of `g` inside the kernel.
    pub ideal_in_kernel: Subspace,
    pub radical_abelian: bool,
}

pub fn analyze(g: &LieAlgebra, form: &SymBilinearForm) -> Result<FormAnalysis> {
    let levi = g.levi_subalgebra()?;
    analyze_with(g, form, &levi)
}

pub fn analyze_with(
    g: &LieAlgebra,
    form: &SymBilinearForm,
    levi: &LeviDecomposition,
) -> Result<FormAnalysis> {
    if form.dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: form.dim(),
        });
    }
    let kernel = form.kernel();
    let signature = form.signature();
    let relative_index = induced_index(form, &kernel);
    let invariance_witness = is_invariant(g, form, &g.whole())?;
    let ideal_in_kernel = g.largest_ideal_in(&kernel)?;
    Ok(FormAnalysis {
        signature,
        relative_index,
        invariant: invariance_witness.is_none(),
        invariance_witness,
        nil_invariant: is_nil_invariant(g, form, levi),
        effective: ideal_in_kernel.is_zero(),
        ideal_in_kernel,
        kernel,
        radical_abelian: levi.radical.is_abelian,
    })
}

/// Index of the form induced on the quotient by its kernel, computed on the
/// canonical complement of the kernel.
fn induced_index(form: &SymBilinearForm, kernel: &Subspace) -> usize {
    let comp = kernel
        .complement_in(&Subspace::whole(form.dim()))
        .expect("same ambient");
    form.restrict(&comp).signature().1
}
