//! Audit of a candidate stabilizer `h` in `g = K ⋉ R`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{solve_linear, DirectSum, Matrix, Rational, Subspace};

/// One audit flag with a witness when it is false.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flag {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Flag {
    fn new(witness: Option<String>) -> Self {
        Flag {
            holds: witness.is_none(),
            witness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerFlags {
    /// `[h, h] ⊆ h ∩ k`
    pub commutator_in_k: Flag,
    /// `p_R(h) = R`
    pub projects_onto_radical: Flag,
    /// `h = (h ∩ k) ⊕ graph(φ)`
    pub is_graph_split: Flag,
    /// `[φx, φy] = φ([φx, y] - [φy, x])` modulo `h ∩ k`
    pub phi_is_homomorphism: Flag,
    /// `φ` is injective on the designated center part
    pub phi_injective_on_center_part: Flag,
    /// The radical is not contained in `h`; a zero `φ` on all of `R` would
    /// put `R` inside `h`.
    pub phi_nontrivial: Flag,
}

impl StabilizerFlags {
    pub fn iter(&self) -> impl Iterator<Item = (&'static str, &Flag)> {
        [
            ("commutator_in_k", &self.commutator_in_k),
            ("projects_onto_radical", &self.projects_onto_radical),
            ("is_graph_split", &self.is_graph_split),
            ("phi_is_homomorphism", &self.phi_is_homomorphism),
            (
                "phi_injective_on_center_part",
                &self.phi_injective_on_center_part,
            ),
            ("phi_nontrivial", &self.phi_nontrivial),
        ]
        .into_iter()
    }

    pub fn all_hold(&self) -> bool {
        self.iter().all(|(_, f)| f.holds)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerAudit {
    /// `h ∩ k`
    pub h_cap_k: Subspace,
    /// `p_R(h)`, the domain of `φ`.
    pub radical_projection: Subspace,
    /// `φ` as an ambient matrix: `v ↦ φ(p(v))` with `p` the projection onto
    /// `p_R(h)` along `K` and the canonical complement of `p_R(h)` in `R`.
    /// Values are reduced modulo `h ∩ k`.
    pub graph_map: Matrix,
    /// `{φ(v) + v : v ∈ p_R(h)}`
    pub graph: Subspace,
    pub flags: StabilizerFlags,
}

/// Audits `h` against the graph-of-a-homomorphism structure. `g` must have
/// a compact Levi factor and an abelian radical; `center_part` (default
/// zero) is the part of the radical on which `φ` must be injective.
pub fn stabilizer_audit(
    g: &LieAlgebra,
    h: &Subspace,
    center_part: Option<&Subspace>,
) -> Result<StabilizerAudit> {
    let n = g.dim();
    if h.ambient_dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: h.ambient_dim(),
        });
    }
    if !g.is_subalgebra(h) {
        return Err(Error::NotSubalgebra);
    }
    let levi = g.levi_subalgebra()?;
    if levi.noncompact_part.dim() > 0 {
        return Err(Error::Hypothesis(format!(
            "Levi factor has a noncompact part of dimension {}",
            levi.noncompact_part.dim()
        )));
    }
    if !levi.radical.is_abelian {
        return Err(Error::Hypothesis("radical is not abelian".into()));
    }
    let (k, r) = (&levi.levi.space, &levi.radical.space);
    let zero = Subspace::zero(n);
    let center = center_part.cloned().unwrap_or_else(|| zero.clone());
    if center.ambient_dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: center.ambient_dim(),
        });
    }
    if !r.contains(&center)? {
        return Err(Error::InvalidArgument(
            "center part must lie in the radical".into(),
        ));
    }
    let split = DirectSum::new(vec![k.clone(), r.clone()])?;
    let p_k = |v: &[Rational]| split.project(0, v);
    let p_r = |v: &[Rational]| split.project(1, v);

    let h_cap_k = h.intersect(k)?;
    let domain = Subspace::span(n, h.basis().iter().map(|v| p_r(v)));

    // φ on the echelon basis of the domain: lift through p_R restricted to h
    let lifts = Matrix::from_columns(n, &h.basis().iter().map(|v| p_r(v)).collect::<Vec<_>>());
    let mut phi_values = Vec::with_capacity(domain.dim());
    for d in domain.basis() {
        let sol = solve_linear(&lifts, d)?.expect("domain is the image of h");
        let y = h.combine(&sol.particular);
        phi_values.push(h_cap_k.reduce(&p_k(&y)));
    }
    let phi = |v: &[Rational]| -> Vec<Rational> {
        let coords = domain.coordinates(v);
        let mut out = vec![Rational::zero(); n];
        for (c, val) in coords.iter().zip(&phi_values) {
            if !c.is_zero() {
                for (o, x) in out.iter_mut().zip(val) {
                    *o += &(c * x);
                }
            }
        }
        out
    };

    let rest = domain.complement_in(r)?;
    let ambient_split = DirectSum::new(vec![domain.clone(), rest, k.clone()])?;
    let graph_map = Matrix::from_columns(
        n,
        &(0..n)
            .map(|i| phi(&ambient_split.project(0, &crate::linalg::unit(n, i))))
            .collect::<Vec<_>>(),
    );
    let graph = Subspace::span(
        n,
        domain.basis().iter().map(|d| {
            let mut v = phi(d);
            for (o, x) in v.iter_mut().zip(d) {
                *o += x;
            }
            v
        }),
    );

    let commutator_in_k = Flag::new(
        g.bracket_spaces(h, h)
            .basis()
            .iter()
            .find(|v| !h_cap_k.contains_vector(v))
            .map(|v| format!("[h, h] contains {} outside h ∩ k", g.describe(v))),
    );

    let projects_onto_radical = Flag::new(
        r.basis()
            .iter()
            .find(|v| !domain.contains_vector(v))
            .map(|v| {
                format!(
                    "{} is not the radical part of an element of h",
                    g.describe(v)
                )
            }),
    );

    let is_graph_split = {
        let overlap = h_cap_k.intersect(&graph)?;
        let total = h_cap_k.sum(&graph)?;
        Flag::new(if let Some(v) = overlap.basis().first() {
            Some(format!("h ∩ k meets graph(φ) in {}", g.describe(v)))
        } else if total != *h {
            Some(format!(
                "(h ∩ k) + graph(φ) has dimension {} but h has dimension {}",
                total.dim(),
                h.dim()
            ))
        } else {
            None
        })
    };

    let mut hom = None;
    'outer: for x in domain.basis() {
        for y in domain.basis() {
            let (px, py) = (phi(x), phi(y));
            let lhs = h_cap_k.reduce(&g.bracket(&px, &py));
            let w: Vec<Rational> = g
                .bracket(&px, y)
                .iter()
                .zip(g.bracket(&py, x))
                .map(|(a, b)| a - &b)
                .collect();
            if !domain.contains_vector(&w) {
                hom = Some(format!(
                    "[φ({x}), {y}] - [φ({y}), {x}] = {} leaves the domain of φ",
                    g.describe(&w),
                    x = g.describe(x),
                    y = g.describe(y)
                ));
                break 'outer;
            }
            let rhs = phi(&w);
            if lhs != rhs {
                hom = Some(format!(
                    "[φ({x}), φ({y})] = {} but φ([φ({x}), {y}] - [φ({y}), {x}]) = {}",
                    g.describe(&lhs),
                    g.describe(&rhs),
                    x = g.describe(x),
                    y = g.describe(y)
                ));
                break 'outer;
            }
        }
    }
    let phi_is_homomorphism = Flag::new(hom);

    let injective = if let Some(v) = center.basis().iter().find(|v| !domain.contains_vector(v)) {
        Some(format!("{} is outside the domain of φ", g.describe(v)))
    } else {
        let images: Vec<Vec<Rational>> = center.basis().iter().map(|v| phi(v)).collect();
        let m = Matrix::from_columns(n, &images);
        m.kernel_basis()
            .first()
            .map(|c| format!("φ vanishes on {}", g.describe(&center.combine(c))))
    };
    let phi_injective_on_center_part = Flag::new(injective);

    let phi_nontrivial = Flag::new(
        (r.dim() > 0 && h.contains(r)?)
            .then(|| "the radical lies in h, so φ vanishes on it".to_string()),
    );

    Ok(StabilizerAudit {
        h_cap_k,
        radical_projection: domain,
        graph_map,
        graph,
        flags: StabilizerFlags {
            commutator_in_k,
            projects_onto_radical,
            is_graph_split,
            phi_is_homomorphism,
            phi_injective_on_center_part,
            phi_nontrivial,
        },
    })
}
