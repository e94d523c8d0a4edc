//! Additive Jordan–Chevalley decomposition over the rationals.

use serde::{Deserialize, Serialize};

use super::matrix::Matrix;
use super::poly::Poly;
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// `input = semisimple + nilpotent`, the parts commute, and both are
/// polynomials in the input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JordanParts {
    pub semisimple: Matrix,
    pub nilpotent: Matrix,
}

impl JordanParts {
    /// Checks every defining property against `input`, including membership
    /// of both parts in the unital algebra generated by `input`.
    pub fn verify(&self, input: &Matrix) -> bool {
        self.semisimple.add(&self.nilpotent) == *input
            && self.semisimple.commutator(&self.nilpotent).is_zero()
            && self.nilpotent.is_nilpotent()
            && self.semisimple_is_squarefree()
            && in_generated_algebra(input, &self.semisimple)
            && in_generated_algebra(input, &self.nilpotent)
    }

    /// The semisimple part is annihilated by a squarefree polynomial.
    fn semisimple_is_squarefree(&self) -> bool {
        let p = self
            .semisimple
            .charpoly()
            .squarefree_part()
            .expect("characteristic polynomials are monic");
        p.eval_matrix(&self.semisimple).is_zero()
    }
}

/// Newton lifting `S <- S - p(S) p'(S)^{-1}` with `p` the squarefree part of
/// the characteristic polynomial. Converges in `ceil(log2(max multiplicity))`
/// steps; `p'(S)` stays invertible because `p` and `p'` are coprime.
pub fn jordan_chevalley(m: &Matrix) -> Result<JordanParts> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let chi = m.charpoly();
    if chi == Poly::x().pow(n) {
        return Ok(JordanParts {
            semisimple: Matrix::zeros(n, n),
            nilpotent: m.clone(),
        });
    }
    let p = chi.squarefree_part()?;
    let dp = p.derivative();
    let mut s = m.clone();
    // a squarefree characteristic polynomial already annihilates `M`
    if p.degree() != chi.degree() {
        let mut ps = p.eval_matrix(&s);
        while !ps.is_zero() {
            let inv = dp
                .eval_matrix(&s)
                .inverse()
                .expect("p'(S) is invertible while p and p' are coprime");
            s = s.sub(&ps.mul(&inv));
            ps = p.eval_matrix(&s);
        }
    }
    let nilpotent = m.sub(&s);
    Ok(JordanParts {
        semisimple: s,
        nilpotent,
    })
}

/// `x ∈ span{I, M, M², …, M^{n-1}}`.
pub fn in_generated_algebra(m: &Matrix, x: &Matrix) -> bool {
    let n = m.rows();
    let mut powers = Vec::with_capacity(n.max(1));
    let mut p = Matrix::identity(n);
    for _ in 0..n.max(1) {
        powers.push(p.entries().to_vec());
        p = p.mul(m);
    }
    Subspace::span(n * n, powers).contains_vector(x.entries())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rational;
    use proptest::prelude::*;

    #[test]
    fn diagonal_is_semisimple() {
        let m = Matrix::diagonal(&[1, 2, 3].map(Rational::from));
        let j = jordan_chevalley(&m).unwrap();
        assert_eq!(j.semisimple, m);
        assert!(j.nilpotent.is_zero());
    }

    #[test]
    fn nilpotent_block() {
        let m = Matrix::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let j = jordan_chevalley(&m).unwrap();
        assert!(j.semisimple.is_zero());
        assert_eq!(j.nilpotent, m);
    }

    #[test]
    fn unipotent_block() {
        let m = Matrix::from_i64(&[&[1, 1], &[0, 1]]);
        let j = jordan_chevalley(&m).unwrap();
        assert_eq!(j.semisimple, Matrix::identity(2));
        assert_eq!(j.nilpotent, Matrix::from_i64(&[&[0, 1], &[0, 0]]));
        assert!(j.verify(&m));
    }

    #[test]
    fn rotation_plus_shear_needs_lifting() {
        // two copies of a rotation block with a coupling: x^2+1 with multiplicity 2
        let m = Matrix::from_i64(&[&[0, -1, 1, 0], &[1, 0, 0, 1], &[0, 0, 0, -1], &[0, 0, 1, 0]]);
        let j = jordan_chevalley(&m).unwrap();
        assert!(j.verify(&m));
        assert!(!j.nilpotent.is_zero());
    }

    #[test]
    fn rejects_non_square() {
        assert!(jordan_chevalley(&Matrix::zeros(2, 3)).is_err());
    }

    proptest! {
        #[test]
        fn parts_satisfy_invariants(entries in proptest::collection::vec(-3i64..=3, 16)) {
            let rows: Vec<Vec<Rational>> = entries.chunks(4)
                .map(|r| r.iter().map(|&x| Rational::from(x)).collect())
                .collect();
            let m = Matrix::from_rows(4, rows).unwrap();
            let j = jordan_chevalley(&m).unwrap();
            prop_assert!(j.verify(&m));
        }

        #[test]
        fn conjugated_jordan_blocks(shear in -3i64..=3, a in -2i64..=2, b in -2i64..=2) {
            // J = diag(a, a) + E12 ⊕ (b), conjugated by a unimodular P
            let jm = Matrix::from_i64(&[&[a, 1, 0], &[0, a, 0], &[0, 0, b]]);
            let p = Matrix::from_i64(&[&[1, shear, 0], &[0, 1, 1], &[1, 0, 1 + shear * shear]]);
            let pinv = p.inverse().unwrap();
            let m = p.mul(&jm).mul(&pinv);
            let j = jordan_chevalley(&m).unwrap();
            prop_assert!(j.verify(&m));
            let expected_n = p.mul(&Matrix::from_i64(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]])).mul(&pinv);
            prop_assert_eq!(j.nilpotent, expected_n);
        }
    }
}
