//! Intertwiners and commutants of finite families of matrices.

use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{null_space, null_space_multimodular, Matrix, Rational, Subspace};

/// Basis of `{X : X A_t = B_t X for every t}` for maps from the space of the
/// `A_t` to the space of the `B_t`, as the echelon basis of the flattened
/// matrices.
pub fn intertwiners(source: &[Matrix], target: &[Matrix]) -> Result<Vec<Matrix>> {
    if source.len() != target.len() {
        return Err(Error::DimensionMismatch {
            expected: source.len(),
            found: target.len(),
        });
    }
    let n = source.first().map_or(0, Matrix::rows);
    let m = target.first().map_or(0, Matrix::rows);
    if source.iter().any(|a| a.rows() != n || a.cols() != n)
        || target.iter().any(|b| b.rows() != m || b.cols() != m)
    {
        return Err(Error::InvalidArgument(
            "intertwiner families must consist of square matrices of one size".into(),
        ));
    }
    let found = match modular_intertwiners(source, target, m, n) {
        Some(found) => found,
        None => exact_intertwiners(source, target, m, n),
    };
    Ok(
        Subspace::span(m * n, found.iter().map(|x| x.entries().to_vec()))
            .basis()
            .iter()
            .map(|v| Matrix::new(m, n, v.clone()).expect("length m*n"))
            .collect(),
    )
}

/// Commutant `{X : X A_t = A_t X}`.
pub fn commutant(family: &[Matrix]) -> Result<Vec<Matrix>> {
    intertwiners(family, family)
}

fn intertwines(x: &Matrix, source: &[Matrix], target: &[Matrix]) -> bool {
    source.iter().zip(target).all(|(a, b)| x.mul(a) == b.mul(x))
}

/// Solves against a few random combinations of the family modulo several
/// primes, then checks every reconstructed solution against the whole family
/// exactly. Dropping constraints only enlarges the modular solution space,
/// so that many independent exact solutions form a basis.
fn modular_intertwiners(
    source: &[Matrix],
    target: &[Matrix],
    m: usize,
    n: usize,
) -> Option<Vec<Matrix>> {
    if source.is_empty() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let attempts: &[usize] = if source.len() <= 2 { &[0] } else { &[2, 3] };
    for &count in attempts {
        let pairs: Vec<(Matrix, Matrix)> = if count == 0 {
            source.iter().cloned().zip(target.iter().cloned()).collect()
        } else {
            (0..count)
                .map(|_| {
                    let coeffs: Vec<Rational> = source
                        .iter()
                        .map(|_| Rational::from(rng.random_range(1..=9i64)))
                        .collect();
                    (mix(source, &coeffs), mix(target, &coeffs))
                })
                .collect()
        };
        let rows: Vec<Vec<Rational>> = pairs
            .iter()
            .flat_map(|(a, b)| constraint_rows(a, b, m, n))
            .collect();
        let as_matrices = |vs: &[Vec<Rational>]| -> Vec<Matrix> {
            vs.iter()
                .map(|v| Matrix::new(m, n, v.clone()).expect("length m*n"))
                .collect()
        };
        let accepted = null_space_multimodular(&rows, m * n, |cands| {
            as_matrices(cands)
                .iter()
                .all(|x| intertwines(x, source, target))
        });
        if let Some(vs) = accepted {
            return Some(as_matrices(&vs));
        }
    }
    None
}

fn mix(family: &[Matrix], coeffs: &[Rational]) -> Matrix {
    let size = family[0].rows();
    let mut out = Matrix::zeros(size, size);
    for (c, a) in coeffs.iter().zip(family) {
        out.add_scaled(c, a);
    }
    out
}

/// Exact solve, one pair at a time so the parameter space shrinks as
/// constraints accumulate.
fn exact_intertwiners(source: &[Matrix], target: &[Matrix], m: usize, n: usize) -> Vec<Matrix> {
    let mut basis: Option<Vec<Matrix>> = None;
    for (a, b) in source.iter().zip(target) {
        basis = Some(match basis {
            None => first_constraint(a, b, m, n),
            Some(current) => {
                if current.is_empty() {
                    return current;
                }
                let defects: Vec<Matrix> =
                    current.iter().map(|x| x.mul(a).sub(&b.mul(x))).collect();
                let rows: Vec<Vec<Rational>> = (0..m * n)
                    .map(|e| defects.iter().map(|d| d.entries()[e].clone()).collect())
                    .collect();
                null_space(rows, current.len())
                    .iter()
                    .map(|c| combine(&current, c, m, n))
                    .collect()
            }
        });
    }
    basis.unwrap_or_else(|| {
        (0..m * n)
            .map(|e| {
                let mut x = Matrix::zeros(m, n);
                x[(e / n, e % n)] = Rational::one();
                x
            })
            .collect()
    })
}

fn first_constraint(a: &Matrix, b: &Matrix, m: usize, n: usize) -> Vec<Matrix> {
    null_space(constraint_rows(a, b, m, n).collect(), m * n)
        .into_iter()
        .map(|v| Matrix::new(m, n, v).expect("length m*n"))
        .collect()
}

/// Nonzero rows of `X A - B X = 0` in the entries of `X`, row-major.
fn constraint_rows<'a>(
    a: &'a Matrix,
    b: &'a Matrix,
    m: usize,
    n: usize,
) -> impl Iterator<Item = Vec<Rational>> + 'a {
    // (X A - B X)[r][c] = Σ_k X[r][k] A[k][c] - Σ_k B[r][k] X[k][c]
    (0..m)
        .flat_map(move |r| (0..n).map(move |c| (r, c)))
        .filter_map(move |(r, c)| {
            let mut row = vec![Rational::zero(); m * n];
            for k in 0..n {
                let x = &a[(k, c)];
                if !x.is_zero() {
                    row[r * n + k] += x;
                }
            }
            for k in 0..m {
                let y = &b[(r, k)];
                if !y.is_zero() {
                    row[k * n + c] -= y;
                }
            }
            row.iter().any(|x| !x.is_zero()).then_some(row)
        })
}

fn combine(basis: &[Matrix], coeffs: &[Rational], m: usize, n: usize) -> Matrix {
    let mut out = Matrix::zeros(m, n);
    for (c, x) in coeffs.iter().zip(basis) {
        if !c.is_zero() {
            out.add_scaled(c, x);
        }
    }
    out
}
