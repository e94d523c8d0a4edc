//! Irreducible modules of `so(3)` and `sl(2)` on homogeneous polynomials.

use std::collections::HashMap;

use crate::linalg::{Matrix, Rational, Subspace};

use super::classical::so_pairs;

type Exponent = [usize; 3];

fn monomials3(degree: usize) -> Vec<Exponent> {
    let mut out = Vec::new();
    for a in (0..=degree).rev() {
        for b in (0..=degree - a).rev() {
            out.push([a, b, degree - a - b]);
        }
    }
    out
}

fn index_of(monos: &[Exponent]) -> HashMap<Exponent, usize> {
    monos.iter().enumerate().map(|(i, m)| (*m, i)).collect()
}

/// `x_i ∂_j - x_j ∂_i` applied to a polynomial in monomial coordinates.
fn rotate(
    poly: &[Rational],
    monos: &[Exponent],
    index: &HashMap<Exponent, usize>,
    i: usize,
    j: usize,
) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); monos.len()];
    for (c, m) in poly.iter().zip(monos) {
        if c.is_zero() {
            continue;
        }
        for (from, to, sign) in [(j, i, 1i64), (i, j, -1)] {
            if m[from] == 0 {
                continue;
            }
            let mut e = *m;
            e[from] -= 1;
            e[to] += 1;
            let k = &(c * &Rational::from((m[from] as i64) * sign));
            out[index[&e]] += k;
        }
    }
    out
}

/// Space of harmonic polynomials of degree `l` in three variables, in
/// monomial coordinates, together with the monomial list.
fn harmonic_space(l: usize) -> (Subspace, Vec<Exponent>) {
    let monos = monomials3(l);
    if l < 2 {
        return (Subspace::whole(monos.len()), monos);
    }
    let lower = monos3_index(l - 2);
    let mut lap = Matrix::zeros(lower.len(), monos.len());
    for (col, m) in monos.iter().enumerate() {
        for v in 0..3 {
            if m[v] >= 2 {
                let mut e = *m;
                e[v] -= 2;
                lap[(lower[&e], col)] += &Rational::from((m[v] * (m[v] - 1)) as i64);
            }
        }
    }
    (lap.kernel(), monos)
}

fn monos3_index(degree: usize) -> HashMap<Exponent, usize> {
    index_of(&monomials3(degree))
}

/// The `so(3)` action on harmonic polynomials of degree `l`, one matrix per
/// basis element of `build_so(3)`. The rotation `E_ij - E_ji` acts as
/// `x_i ∂_j - x_j ∂_i`, which commutes with the Laplacian; dimension `2l + 1`.
pub fn build_so3_irrep(l: usize) -> Vec<Matrix> {
    let (space, monos) = harmonic_space(l);
    let index = index_of(&monos);
    so_pairs(3)
        .into_iter()
        .map(|(i, j)| {
            let cols: Vec<Vec<Rational>> = space
                .basis()
                .iter()
                .map(|h| space.coordinates(&rotate(h, &monos, &index, i, j)))
                .collect();
            Matrix::from_columns(space.dim(), &cols)
        })
        .collect()
}

/// The `sl(2)` action on binary forms of degree `d` (dimension `d + 1`),
/// basis `x^d, x^{d-1} y, …, y^d`, with `e = x ∂_y`, `h = x ∂_x - y ∂_y`,
/// `f = y ∂_x`, matching the basis order of `build_sl2`.
pub fn build_sl2_irrep(d: usize) -> Vec<Matrix> {
    let n = d + 1;
    // basis index k ↔ x^{d-k} y^k
    let mut e = Matrix::zeros(n, n);
    let mut h = Matrix::zeros(n, n);
    let mut f = Matrix::zeros(n, n);
    for k in 0..n {
        h[(k, k)] = Rational::from(d as i64 - 2 * k as i64);
        if k > 0 {
            e[(k - 1, k)] = Rational::from(k as i64);
        }
        if k < d {
            f[(k + 1, k)] = Rational::from((d - k) as i64);
        }
    }
    vec![e, h, f]
}

/// `Σ ρ(x_i)²` over the given action matrices.
pub fn sum_of_squares(action: &[Matrix]) -> Matrix {
    let n = action.first().map_or(0, Matrix::rows);
    action
        .iter()
        .fold(Matrix::zeros(n, n), |acc, m| acc.add(&m.mul(m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{build_sl2, build_so, semidirect};
    use crate::lie::{commutant, intertwiners};

    #[test]
    fn dimensions() {
        for l in 0..6 {
            let rho = build_so3_irrep(l);
            assert_eq!(rho.len(), 3);
            assert!(rho.iter().all(|m| m.rows() == 2 * l + 1));
        }
        assert!(build_so3_irrep(0).iter().all(Matrix::is_zero));
    }

    #[test]
    fn brackets_are_respected() {
        let so3 = build_so(3).unwrap();
        for l in 0..5 {
            let rho = build_so3_irrep(l);
            assert!(semidirect(
                &so3,
                &rho,
                (0..2 * l + 1).map(|i| format!("p{i}")).collect()
            )
            .is_ok());
        }
        let sl2 = build_sl2();
        for d in 0..5 {
            let rho = build_sl2_irrep(d);
            assert!(semidirect(&sl2, &rho, (0..=d).map(|i| format!("p{i}")).collect()).is_ok());
        }
    }

    #[test]
    fn casimir_is_scalar_and_grows() {
        let mut last = None;
        for l in 0..6 {
            let c = sum_of_squares(&build_so3_irrep(l));
            let n = 2 * l + 1;
            let lambda = -c[(0, 0)].clone();
            assert_eq!(c, Matrix::identity(n).scale(&-lambda.clone()));
            assert_eq!(lambda, Rational::from((l * (l + 1)) as i64));
            if let Some(prev) = last {
                assert!(lambda > prev);
            }
            last = Some(lambda);
        }
    }

    #[test]
    fn l1_is_equivalent_to_adjoint() {
        let so3 = build_so(3).unwrap();
        let ad: Vec<Matrix> = (0..3).map(|i| so3.ad_basis(i).clone()).collect();
        let ts = intertwiners(&ad, &build_so3_irrep(1)).unwrap();
        assert_eq!(ts.len(), 1);
        assert!(ts[0].inverse().is_some());
        assert_eq!(sum_of_squares(&ad), sum_of_squares(&build_so3_irrep(1)));
    }

    #[test]
    fn irreducible_by_schur() {
        // over the reals an absolutely irreducible module has scalar commutant
        for l in 1..5 {
            assert_eq!(commutant(&build_so3_irrep(l)).unwrap().len(), 1, "l = {l}");
        }
    }
}
