use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{Matrix, Rational};
use crate::metric::SymBilinearForm;

/// Index pairs `(i, j)`, `i < j`, in the order used for the `so(n)` basis.
pub fn so_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

/// `E_ij - E_ji` as an `n × n` matrix.
pub fn rotation_generator(n: usize, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    m[(i, j)] = Rational::one();
    m[(j, i)] = Rational::from(-1);
    m
}

/// The natural action of `so(n)` on `R^n`, one matrix per basis element.
pub fn so_natural_action(n: usize) -> Vec<Matrix> {
    so_pairs(n)
        .into_iter()
        .map(|(i, j)| rotation_generator(n, i, j))
        .collect()
}

/// Linear Lie algebra spanned by the given matrices, which must be linearly
/// independent and closed under the commutator.
pub fn linear_lie_algebra(labels: Vec<String>, mats: &[Matrix]) -> Result<LieAlgebra> {
    let k = mats.len();
    let n = mats.first().map_or(0, Matrix::rows);
    let span = crate::linalg::Subspace::span(n * n, mats.iter().map(|m| m.entries().to_vec()));
    if span.dim() != k {
        return Err(Error::InvalidArgument(
            "matrices are linearly dependent".into(),
        ));
    }
    // coordinates relative to the given matrices, not the echelon basis
    let to_echelon = Matrix::from_columns(
        k,
        &mats
            .iter()
            .map(|m| span.coordinates(m.entries()))
            .collect::<Vec<_>>(),
    );
    let back = to_echelon.inverse().expect("independent matrices");
    let mut brackets = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            let c = mats[a].commutator(&mats[b]);
            if !span.contains_vector(c.entries()) {
                return Err(Error::NotSubalgebra);
            }
            brackets.push((a, b, back.mul_vec(&span.coordinates(c.entries()))));
        }
    }
    LieAlgebra::from_brackets(labels, brackets)
}

/// `so(n)` on the basis `L_ij = E_ij - E_ji`, `i < j`, lexicographic.
pub fn build_so(n: usize) -> Result<LieAlgebra> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "so(n) needs n >= 2, got {n}"
        )));
    }
    let labels = so_pairs(n)
        .into_iter()
        .map(|(i, j)| format!("L{}{}", i + 1, j + 1))
        .collect();
    linear_lie_algebra(labels, &so_natural_action(n))
}

/// `sl(2)` on `(e, h, f)` with `[h, e] = 2e`, `[h, f] = -2f`, `[e, f] = h`.
pub fn build_sl2() -> LieAlgebra {
    let r = |xs: [i64; 3]| xs.iter().map(|&x| Rational::from(x)).collect::<Vec<_>>();
    LieAlgebra::from_brackets(
        vec!["e".into(), "h".into(), "f".into()],
        [
            (0, 1, r([-2, 0, 0])),
            (0, 2, r([0, 1, 0])),
            (1, 2, r([0, 0, -2])),
        ],
    )
    .expect("sl2 brackets satisfy Jacobi")
}

/// `k ⋉ V` with `[x_a, v] = action[a] v`. The action must be a
/// representation; this is checked on basis brackets.
pub fn semidirect(
    k: &LieAlgebra,
    action: &[Matrix],
    module_labels: Vec<String>,
) -> Result<LieAlgebra> {
    let m = k.dim();
    let d = module_labels.len();
    if action.len() != m || action.iter().any(|a| a.rows() != d || a.cols() != d) {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: action.len(),
        });
    }
    for a in 0..m {
        for b in a + 1..m {
            let mut expect = Matrix::zeros(d, d);
            for (c, rho) in k.structure(a, b).iter().zip(action) {
                if !c.is_zero() {
                    expect.add_scaled(c, rho);
                }
            }
            if action[a].commutator(&action[b]) != expect {
                return Err(Error::InvalidArgument(format!(
                    "action is not a representation on the pair ({a},{b})"
                )));
            }
        }
    }
    let t = m + d;
    let mut flat = vec![vec![Rational::zero(); t]; t * t];
    for a in 0..m {
        for b in 0..m {
            flat[a * t + b][..m].clone_from_slice(k.structure(a, b));
        }
        for v in 0..d {
            let col = action[a].col(v);
            flat[(m + v) * t + a][m..]
                .clone_from_slice(&col.iter().map(|x| -x).collect::<Vec<_>>());
            flat[a * t + m + v][m..].clone_from_slice(&col);
        }
    }
    let labels = k.labels().iter().cloned().chain(module_labels).collect();
    Ok(LieAlgebra::from_flat(labels, flat))
}

/// Euclidean algebra `so(n) ⋉ R^n` with the natural action.
pub fn build_euclidean(n: usize) -> Result<LieAlgebra> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "Euclidean algebra needs n >= 1".into(),
        ));
    }
    let v_labels = (1..=n).map(|i| format!("v{i}")).collect();
    if n == 1 {
        return Ok(LieAlgebra::abelian(v_labels));
    }
    semidirect(&build_so(n)?, &so_natural_action(n), v_labels)
}

/// Coadjoint action `x ↦ -ad(x)ᵀ` on the dual basis.
pub fn coadjoint_action(l: &LieAlgebra) -> Vec<Matrix> {
    (0..l.dim())
        .map(|i| l.ad_basis(i).transpose().scale(&Rational::from(-1)))
        .collect()
}

/// `L ⋉ L*` with the coadjoint action and the canonical dual pairing.
pub fn build_cotangent(l: &LieAlgebra) -> (LieAlgebra, SymBilinearForm) {
    let n = l.dim();
    let dual_labels = l.labels().iter().map(|s| format!("{s}*")).collect();
    let g = semidirect(l, &coadjoint_action(l), dual_labels)
        .expect("the coadjoint action is a representation");
    let mut gram = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        gram[(i, n + i)] = Rational::one();
        gram[(n + i, i)] = Rational::one();
    }
    (g, SymBilinearForm::new(gram).expect("symmetric"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::validate;

    #[test]
    fn so_dimensions_and_killing() {
        let so3 = build_so(3).unwrap();
        assert_eq!(so3.dim(), 3);
        assert_eq!(
            so3.killing_form().gram(),
            &Matrix::identity(3).scale(&Rational::from(-2))
        );
        let so6 = build_so(6).unwrap();
        assert_eq!(so6.dim(), 15);
        assert_eq!(
            so6.killing_form().gram(),
            &Matrix::identity(15).scale(&Rational::from(-8))
        );
        assert!(build_so(1).is_err());
    }

    #[test]
    fn so4_bracket_matches_index_formula() {
        // [L_ij, L_kl] = δ_jk L_il - δ_ik L_jl - δ_jl L_ik + δ_il L_jk
        let n = 4;
        let g = build_so(n).unwrap();
        let pairs = so_pairs(n);
        let idx = |a: usize, b: usize| -> (usize, i64) {
            if a < b {
                (pairs.iter().position(|&p| p == (a, b)).unwrap(), 1)
            } else {
                (pairs.iter().position(|&p| p == (b, a)).unwrap(), -1)
            }
        };
        for (x, &(i, j)) in pairs.iter().enumerate() {
            for (y, &(k, l)) in pairs.iter().enumerate() {
                let mut expect = vec![Rational::zero(); pairs.len()];
                let mut add = |c: i64, a: usize, b: usize| {
                    if c != 0 && a != b {
                        let (p, s) = idx(a, b);
                        expect[p] += &Rational::from(c * s);
                    }
                };
                add((j == k) as i64, i, l);
                add(-((i == k) as i64), j, l);
                add(-((j == l) as i64), i, k);
                add((i == l) as i64, j, k);
                assert_eq!(g.structure(x, y), expect.as_slice(), "({i}{j}),({k}{l})");
            }
        }
    }

    #[test]
    fn sl2_killing_signature() {
        assert_eq!(build_sl2().killing_form().signature(), (2, 1, 0));
    }

    #[test]
    fn euclidean_algebras_validate() {
        for n in 1..=5 {
            let e = build_euclidean(n).unwrap();
            assert_eq!(e.dim(), n * (n - 1) / 2 + n);
            assert!(validate(&e.structure_constants()).is_ok());
        }
    }

    #[test]
    fn cotangent_pairing_is_invariant_and_isotropic() {
        for l in [
            build_so(3).unwrap(),
            build_sl2(),
            LieAlgebra::abelian(vec!["x".into()]),
        ] {
            let n = l.dim();
            let (g, form) = build_cotangent(&l);
            assert!(validate(&g.structure_constants()).is_ok());
            assert_eq!(form.signature(), (n, n, 0));
            // ⟨[x, a], b⟩ + ⟨a, [x, b]⟩ = 0 on basis triples
            for x in 0..2 * n {
                let ad = g.ad_basis(x);
                let skew = ad.transpose().mul(form.gram()).add(&form.gram().mul(ad));
                assert!(skew.is_zero());
            }
        }
    }

    #[test]
    fn linear_lie_algebra_rejects_non_closed_span() {
        let a = rotation_generator(3, 0, 1);
        let b = rotation_generator(3, 1, 2);
        assert!(matches!(
            linear_lie_algebra(vec!["a".into(), "b".into()], &[a, b]),
            Err(Error::NotSubalgebra)
        ));
    }
}
