//! A second, naive solver for the Euclidean sweep: unknowns are all d²
//! Gram entries, equations are symmetry plus every entry of φᵀG + Gφ, and
//! the rank comes from plain Gaussian elimination on `BigRational`.

use nilform_core::gallery::build_euclidean;
use nilform_core::linalg::Matrix;
use nilform_core::metric::{nilpotent_generators, GeneratorScope};
use num_rational::BigRational;
use num_traits::{One, Zero};

fn big(m: &Matrix, i: usize, j: usize) -> BigRational {
    let r = &m[(i, j)];
    BigRational::new(r.numer(), r.denom())
}

/// Row echelon basis kept as (pivot, row), rows normalized to pivot 1.
struct Echelon {
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl Echelon {
    fn insert(&mut self, mut row: Vec<BigRational>) {
        for (p, r) in &self.rows {
            if !row[*p].is_zero() {
                let c = row[*p].clone();
                for (x, y) in row.iter_mut().zip(r) {
                    *x -= &c * y;
                }
            }
        }
        if let Some(p) = row.iter().position(|x| !x.is_zero()) {
            let inv = BigRational::one() / row[p].clone();
            for x in row.iter_mut() {
                *x *= &inv;
            }
            // keep earlier rows reduced against the new pivot
            for (_, r) in self.rows.iter_mut() {
                if !r[p].is_zero() {
                    let c = r[p].clone();
                    for (x, y) in r.iter_mut().zip(&row) {
                        *x -= &c * y;
                    }
                }
            }
            self.rows.push((p, row));
        }
    }
}

pub fn naive_solution_dim(n: usize) -> usize {
    let g = build_euclidean(n).unwrap();
    let d = g.dim();
    let levi = g.levi_subalgebra().unwrap();
    let gens = nilpotent_generators(&g, &levi, GeneratorScope::Full);
    let idx = |a: usize, b: usize| a * d + b;
    let mut ech = Echelon { rows: Vec::new() };
    for a in 0..d {
        for b in 0..d {
            if a != b {
                let mut row = vec![BigRational::zero(); d * d];
                row[idx(a, b)] = BigRational::one();
                row[idx(b, a)] = -BigRational::one();
                ech.insert(row);
            }
        }
    }
    for gen in &gens {
        let phi = &gen.matrix;
        // (φᵀG + Gφ)_ab = Σ_c φ_ca G_cb + G_ac φ_cb
        for a in 0..d {
            for b in 0..d {
                let mut row = vec![BigRational::zero(); d * d];
                for c in 0..d {
                    row[idx(c, b)] += big(phi, c, a);
                    row[idx(a, c)] += big(phi, c, b);
                }
                if row.iter().any(|x| !x.is_zero()) {
                    ech.insert(row);
                }
            }
        }
    }
    d * d - ech.rows.len()
}
