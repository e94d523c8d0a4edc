use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{null_space, Matrix, Rational, Subspace};

/// Symmetric bilinear form given by its Gram matrix in the algebra's basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Matrix", into = "Matrix")]
pub struct SymBilinearForm {
    gram: Matrix,
}

impl SymBilinearForm {
    pub fn new(gram: Matrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::NotSquare {
                rows: gram.rows(),
                cols: gram.cols(),
            });
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(SymBilinearForm { gram })
    }

    pub fn zero(n: usize) -> Self {
        SymBilinearForm {
            gram: Matrix::zeros(n, n),
        }
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn eval(&self, x: &[Rational], y: &[Rational]) -> Rational {
        self.gram.bilinear(x, y)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        SymBilinearForm {
            gram: self.gram.scale(c),
        }
    }

    pub fn add(&self, other: &SymBilinearForm) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(SymBilinearForm {
            gram: self.gram.add(&other.gram),
        })
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &SymBilinearForm) -> Self {
        let (n, m) = (self.dim(), other.dim());
        let mut g = Matrix::zeros(n + m, n + m);
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = self.gram[(i, j)].clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                g[(n + i, n + j)] = other.gram[(i, j)].clone();
            }
        }
        SymBilinearForm { gram: g }
    }

    /// `G⊥ = {x : ⟨x, y⟩ = 0 for all y}`.
    pub fn kernel(&self) -> Subspace {
        self.gram.kernel()
    }

    pub fn signature(&self) -> (usize, usize, usize) {
        self.gram.signature().expect("Gram matrix is symmetric")
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.signature().2 == 0
    }

    /// Gram matrix of the restriction, in the echelon basis of `sub`.
    pub fn restrict(&self, sub: &Subspace) -> SymBilinearForm {
        let b = sub.basis();
        let images: Vec<Vec<Rational>> = b.iter().map(|y| self.gram.mul_vec(y)).collect();
        let m = b.len();
        let mut g = Matrix::zeros(m, m);
        for i in 0..m {
            for j in i..m {
                let v: Rational = b[i].iter().zip(&images[j]).map(|(x, y)| x * y).sum();
                g[(j, i)] = v.clone();
                g[(i, j)] = v;
            }
        }
        SymBilinearForm { gram: g }
    }

    /// `{x : ⟨x, s⟩ = 0 for all s ∈ sub}`.
    pub fn orthogonal(&self, sub: &Subspace) -> Subspace {
        let rows = sub.basis().iter().map(|s| self.gram.mul_vec(s)).collect();
        Subspace::span(self.dim(), null_space(rows, self.dim()))
    }

    /// `⟨a, b⟩ = 0` for all `a ∈ u`, `b ∈ w`; returns the first failing pair.
    pub fn orthogonal_witness(
        &self,
        u: &Subspace,
        w: &Subspace,
    ) -> Option<(Vec<Rational>, Vec<Rational>, Rational)> {
        for a in u.basis() {
            let ga = self.gram.vec_mul(a);
            for b in w.basis() {
                let v: Rational = ga.iter().zip(b).map(|(x, y)| x * y).sum();
                if !v.is_zero() {
                    return Some((a.clone(), b.clone(), v));
                }
            }
        }
        None
    }

    pub fn is_totally_isotropic(&self, sub: &Subspace) -> bool {
        self.orthogonal_witness(sub, sub).is_none()
    }

    /// Same form in the basis `f_a = Σ_i P[i][a] e_i`: `Pᵀ G P`.
    pub fn change_basis(&self, p: &Matrix) -> SymBilinearForm {
        SymBilinearForm {
            gram: self.gram.congruent(p),
        }
    }
}

impl TryFrom<Matrix> for SymBilinearForm {
    type Error = Error;

    fn try_from(m: Matrix) -> Result<Self> {
        SymBilinearForm::new(m)
    }
}

impl From<SymBilinearForm> for Matrix {
    fn from(f: SymBilinearForm) -> Matrix {
        f.gram
    }
}
