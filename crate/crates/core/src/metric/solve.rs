//! Solution spaces of linear conditions on symmetric Gram matrices.

use crate::linalg::{null_space, Matrix, Rational, Subspace};

/// Elementary symmetric matrices `E_ab + E_ba` (`a < b`) and `E_aa`, in
/// row-major order of the upper triangle.
fn symmetric_units(n: usize) -> Vec<Matrix> {
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for a in 0..n {
        for b in a..n {
            let mut m = Matrix::zeros(n, n);
            m[(a, b)] = Rational::one();
            m[(b, a)] = Rational::one();
            out.push(m);
        }
    }
    out
}

fn combine(basis: &[Matrix], coeffs: &[Rational], n: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for (c, b) in coeffs.iter().zip(basis) {
        if !c.is_zero() {
            m.add_scaled(c, b);
        }
    }
    m
}

/// Keeps the combinations of `basis` on which `defect` vanishes. `defect`
/// must be linear and return a symmetric matrix.
fn restrict_by(basis: Vec<Matrix>, n: usize, defect: impl Fn(&Matrix) -> Matrix) -> Vec<Matrix> {
    if basis.is_empty() {
        return basis;
    }
    let defects: Vec<Matrix> = basis.iter().map(defect).collect();
    let rows: Vec<Vec<Rational>> = (0..n)
        .flat_map(|a| (a..n).map(move |b| (a, b)))
        .map(|(a, b)| {
            defects
                .iter()
                .map(|d| d[(a, b)].clone())
                .collect::<Vec<_>>()
        })
        .filter(|row: &Vec<Rational>| row.iter().any(|x| !x.is_zero()))
        .collect();
    if rows.is_empty() {
        return basis;
    }
    null_space(rows, basis.len())
        .iter()
        .map(|c| combine(&basis, c, n))
        .collect()
}

/// Echelon basis of a space of `n × n` matrices, for canonical output.
fn canonical(basis: &[Matrix], n: usize) -> Vec<Matrix> {
    Subspace::span(n * n, basis.iter().map(|m| m.entries().to_vec()))
        .basis()
        .iter()
        .map(|v| Matrix::new(n, n, v.clone()).expect("n*n entries"))
        .collect()
}

/// Basis of the symmetric `G` with `φᵀG + Gφ = 0` for every `φ` in
/// `family`. The parameter space shrinks one matrix at a time; the result is
/// in echelon form on the row-major entries.
pub fn forms_skew_under<'a>(n: usize, family: impl IntoIterator<Item = &'a Matrix>) -> Vec<Matrix> {
    let mut basis = symmetric_units(n);
    for phi in family {
        let phit = phi.transpose();
        basis = restrict_by(basis, n, |g| phit.mul(g).add(&g.mul(phi)));
        if basis.is_empty() {
            break;
        }
    }
    canonical(&basis, n)
}

/// The members of `space` (a basis of symmetric matrices) whose entries
/// vanish on every pair in `block × block`.
pub fn vanishing_on_block(space: &[Matrix], n: usize, block: &[usize]) -> Vec<Matrix> {
    let rows: Vec<Vec<Rational>> = block
        .iter()
        .flat_map(|&a| block.iter().filter(move |&&b| b >= a).map(move |&b| (a, b)))
        .map(|(a, b)| space.iter().map(|m| m[(a, b)].clone()).collect())
        .collect();
    if rows.is_empty() {
        return canonical(space, n);
    }
    let kept: Vec<Matrix> = null_space(rows, space.len())
        .iter()
        .map(|c| combine(space, c, n))
        .collect();
    canonical(&kept, n)
}
