//! Certificate that `lower ⋉ dual` with the given form is a metric cotangent
//! algebra.

use crate::lie::LieAlgebra;
use crate::linalg::Matrix;
use crate::metric::{invariance_witness, Certificate, Clause, SymBilinearForm};

pub const METRIC_COTANGENT: &str = "metric-cotangent";

pub const ABELIAN_IDEAL: &str = "dual part is an abelian ideal";
pub const ISOTROPIC: &str = "dual part is totally isotropic";
pub const INVARIANT: &str = "restriction is invariant";
pub const NONDEGENERATE: &str = "restriction is nondegenerate";
pub const PAIRING: &str = "pairing of the two parts is nondegenerate";
pub const COADJOINT: &str = "bracket action on the dual part is coadjoint";

/// Checks, for `h = lower + dual`: `dual` is an abelian ideal of `h` and
/// totally isotropic; the form on `h` is invariant and nondegenerate; the
/// pairing `lower × dual` is nondegenerate; and
/// `⟨[s, ξ], s'⟩ = -⟨ξ, [s, s']⟩` for basis elements `s, s'` of `lower` and
/// `ξ` of `dual`.
pub fn verify_metric_cotangent(
    g: &LieAlgebra,
    form: &SymBilinearForm,
    lower: &crate::linalg::Subspace,
    dual: &crate::linalg::Subspace,
) -> Certificate {
    const CLAIM: &str = "the factor is a metric cotangent algebra: the dual part is a totally isotropic abelian ideal on which the lower part acts by the coadjoint action";
    let h = lower.sum(dual).expect("same ambient");
    let desc = |v: &[crate::linalg::Rational]| g.describe(v);

    let bracket_hd = g.bracket_spaces(&h, dual);
    let abelian = g
        .bracket_spaces(dual, dual)
        .basis()
        .first()
        .map(|v| format!("[dual, dual] contains {}", desc(v)))
        .or_else(|| {
            bracket_hd
                .basis()
                .iter()
                .find(|v| !dual.contains_vector(v))
                .map(|v| format!("{} lies outside the dual part", desc(v)))
        });

    let isotropic = form
        .orthogonal_witness(dual, dual)
        .map(|(a, b, v)| format!("<{}, {}> = {v}", desc(&a), desc(&b)));

    let invariant = invariance_witness(g, form, &h, &h, &h).map(|w| w.render());

    let restricted = form.restrict(&h);
    let nondegenerate = (!restricted.is_nondegenerate())
        .then(|| format!("restriction has signature {:?}", restricted.signature()));

    let pairing_matrix = Matrix::from_rows(
        dual.dim(),
        lower
            .basis()
            .iter()
            .map(|s| dual.basis().iter().map(|x| form.eval(s, x)).collect())
            .collect(),
    )
    .expect("rows of equal length");
    let pairing = if lower.dim() != dual.dim() {
        Some(format!(
            "dimensions differ: {} and {}",
            lower.dim(),
            dual.dim()
        ))
    } else if pairing_matrix.rank() < lower.dim() {
        Some(format!(
            "pairing matrix has rank {} < {}",
            pairing_matrix.rank(),
            lower.dim()
        ))
    } else {
        None
    };

    let mut coadjoint = None;
    'outer: for s in lower.basis() {
        for xi in dual.basis() {
            let sx = g.bracket(s, xi);
            for t in lower.basis() {
                let lhs = form.eval(&sx, t);
                let rhs = -form.eval(xi, &g.bracket(s, t));
                if lhs != rhs {
                    coadjoint = Some(format!(
                        "<[{s}, {xi}], {t}> = {lhs} but -<{xi}, [{s}, {t}]> = {rhs}",
                        s = desc(s),
                        xi = desc(xi),
                        t = desc(t)
                    ));
                    break 'outer;
                }
            }
        }
    }

    Certificate::from_clauses(
        METRIC_COTANGENT,
        CLAIM,
        vec![
            Clause::new(ABELIAN_IDEAL, abelian),
            Clause::new(ISOTROPIC, isotropic),
            Clause::new(INVARIANT, invariant),
            Clause::new(NONDEGENERATE, nondegenerate),
            Clause::new(PAIRING, pairing),
            Clause::new(COADJOINT, coadjoint),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{build_cotangent, build_sl2, build_so, gallery_entry};
    use crate::linalg::Subspace;

    fn halves(n: usize) -> (Subspace, Subspace) {
        (
            Subspace::coordinate(2 * n, 0..n),
            Subspace::coordinate(2 * n, n..2 * n),
        )
    }

    #[test]
    fn cotangent_constructions_pass() {
        for l in [build_sl2(), build_so(3).unwrap(), build_so(4).unwrap()] {
            let (g, f) = build_cotangent(&l);
            let (lo, du) = halves(l.dim());
            let c = verify_metric_cotangent(&g, &f, &lo, &du);
            assert!(c.verified(), "{c:?}");
        }
    }

    #[test]
    fn e3_dual_pairing_passes() {
        let e = gallery_entry("e3-dual", 0).unwrap();
        let (lo, du) = (Subspace::coordinate(6, 0..3), Subspace::coordinate(6, 3..6));
        assert!(verify_metric_cotangent(&e.algebra, e.form.as_ref().unwrap(), &lo, &du).verified());
    }

    #[test]
    fn trivial_action_fails_coadjoint_clause() {
        let e = gallery_entry("so3xr3-hyperbolic", 0).unwrap();
        let (lo, du) = (Subspace::coordinate(6, 0..3), Subspace::coordinate(6, 3..6));
        let c = verify_metric_cotangent(&e.algebra, e.form.as_ref().unwrap(), &lo, &du);
        assert!(c.failed());
        assert!(!c.clause(COADJOINT).unwrap().holds);
        assert!(c.clause(ISOTROPIC).unwrap().holds);
        assert!(c.clause(PAIRING).unwrap().holds);
    }
}
