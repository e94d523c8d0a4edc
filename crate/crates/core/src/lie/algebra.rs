use crate::error::{Error, Result, Violation};
use crate::linalg::{Matrix, Rational, Subspace};
use crate::metric::SymBilinearForm;

/// A finite-dimensional Lie algebra over the rationals, given by structure
/// constants `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
///
/// Construction through the public constructors validates antisymmetry and
/// the Jacobi identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    /// `constants[i * dim + j]` holds the coordinates of `[e_i, e_j]`.
    constants: Vec<Vec<Rational>>,
    /// `ad[i]` is the matrix of `ad(e_i)`; column `j` is `[e_i, e_j]`.
    ad: Vec<Matrix>,
}

impl LieAlgebra {
    /// Validates and builds from a full table `c[i][j][k]`.
    pub fn new(labels: Vec<String>, constants: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        let n = labels.len();
        if constants.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: constants.len(),
            });
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in constants {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for v in row {
                if v.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: v.len(),
                    });
                }
                flat.push(v);
            }
        }
        validate_constants(n, &flat)?;
        Ok(Self::from_flat(labels, flat))
    }

    /// Builds from brackets `[e_i, e_j]` with `i < j`; the rest follow by
    /// antisymmetry. Unlisted pairs bracket to zero.
    pub fn from_brackets<I>(labels: Vec<String>, brackets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Vec<Rational>)>,
    {
        let n = labels.len();
        let mut flat = vec![vec![Rational::zero(); n]; n * n];
        for (i, j, v) in brackets {
            if i >= n || j >= n {
                return Err(Error::InvalidArgument(format!(
                    "bracket index ({i},{j}) out of range for dimension {n}"
                )));
            }
            if i >= j {
                return Err(Error::InvalidArgument(format!(
                    "bracket ({i},{j}) must have i < j"
                )));
            }
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
            flat[j * n + i] = v.iter().map(|x| -x).collect();
            flat[i * n + j] = v;
        }
        validate_constants(n, &flat)?;
        Ok(Self::from_flat(labels, flat))
    }

    /// Skips validation; callers construct the table from an algebra that
    /// was already validated.
    pub(crate) fn from_flat(labels: Vec<String>, constants: Vec<Vec<Rational>>) -> Self {
        let n = labels.len();
        let ad = (0..n)
            .map(|i| {
                let cols: Vec<Vec<Rational>> =
                    (0..n).map(|j| constants[i * n + j].clone()).collect();
                Matrix::from_columns(n, &cols)
            })
            .collect();
        LieAlgebra {
            labels,
            constants,
            ad,
        }
    }

    /// The abelian algebra of dimension `n`.
    pub fn abelian(labels: Vec<String>) -> Self {
        let n = labels.len();
        Self::from_flat(labels, vec![vec![Rational::zero(); n]; n * n])
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Same structure constants under new basis labels.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Coordinates of `[e_i, e_j]`.
    pub fn structure(&self, i: usize, j: usize) -> &[Rational] {
        &self.constants[i * self.dim() + j]
    }

    /// The full table `c[i][j][k]`.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<Rational>>> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| self.structure(i, j).to_vec()).collect())
            .collect()
    }

    pub fn ad_basis(&self, i: usize) -> &Matrix {
        &self.ad[i]
    }

    pub fn ad(&self, x: &[Rational]) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (c, a) in x.iter().zip(&self.ad) {
            if !c.is_zero() {
                m.add_scaled(c, a);
            }
        }
        m
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let f = xi * yj;
                for (o, c) in out.iter_mut().zip(self.structure(i, j)) {
                    if !c.is_zero() {
                        *o += &(&f * c);
                    }
                }
            }
        }
        out
    }

    /// `span{[u, w] : u ∈ U, w ∈ W}`.
    pub fn bracket_spaces(&self, u: &Subspace, w: &Subspace) -> Subspace {
        let n = self.dim();
        Subspace::span(
            n,
            u.basis()
                .iter()
                .flat_map(|a| w.basis().iter().map(move |b| self.bracket(a, b))),
        )
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.iter().flatten().all(Rational::is_zero)
    }

    /// Killing form `κ(x, y) = tr(ad x ad y)`.
    pub fn killing_form(&self) -> SymBilinearForm {
        let n = self.dim();
        let mut g = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let t = trace_of_product(&self.ad[i], &self.ad[j]);
                g[(j, i)] = t.clone();
                g[(i, j)] = t;
            }
        }
        SymBilinearForm::new(g).expect("Killing form is symmetric")
    }

    /// Same algebra in the basis `f_a = Σ_i P[i][a] e_i`. `P` must be
    /// invertible.
    pub fn change_basis(&self, p: &Matrix) -> Result<LieAlgebra> {
        let n = self.dim();
        if p.rows() != n || p.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.rows().max(p.cols()),
            });
        }
        let inv = p
            .inverse()
            .ok_or_else(|| Error::InvalidArgument("change of basis is singular".into()))?;
        let cols: Vec<Vec<Rational>> = (0..n).map(|a| p.col(a)).collect();
        let mut flat = vec![vec![Rational::zero(); n]; n * n];
        for a in 0..n {
            for b in a + 1..n {
                let v = inv.mul_vec(&self.bracket(&cols[a], &cols[b]));
                flat[b * n + a] = v.iter().map(|x| -x).collect();
                flat[a * n + b] = v;
            }
        }
        let labels = (0..n).map(|a| format!("f{}", a + 1)).collect();
        Ok(Self::from_flat(labels, flat))
    }

    /// Structure constants of a subalgebra in the echelon basis of `sub`.
    pub fn subalgebra(&self, sub: &Subspace) -> Result<LieAlgebra> {
        self.check_ambient(sub)?;
        let basis = sub.basis();
        let m = basis.len();
        let mut flat = vec![vec![Rational::zero(); m]; m * m];
        for a in 0..m {
            for b in a + 1..m {
                let v = self.bracket(&basis[a], &basis[b]);
                if !sub.contains_vector(&v) {
                    return Err(Error::NotSubalgebra);
                }
                let c = sub.coordinates(&v);
                flat[b * m + a] = c.iter().map(|x| -x).collect();
                flat[a * m + b] = c;
            }
        }
        let labels = (0..m).map(|a| format!("b{}", a + 1)).collect();
        Ok(Self::from_flat(labels, flat))
    }

    /// `g / ideal`, on the canonical complement of the ideal.
    pub fn quotient(&self, ideal: &Subspace) -> Result<LieAlgebra> {
        self.check_ambient(ideal)?;
        let n = self.dim();
        if !self.is_ideal(ideal) {
            return Err(Error::InvalidArgument("quotient by a non-ideal".into()));
        }
        let comp = ideal.complement_in(&Subspace::whole(n))?;
        let split = crate::linalg::DirectSum::new(vec![comp.clone(), ideal.clone()])?;
        let basis = comp.basis();
        let m = basis.len();
        let mut flat = vec![vec![Rational::zero(); m]; m * m];
        for a in 0..m {
            for b in a + 1..m {
                let v = split.project(0, &self.bracket(&basis[a], &basis[b]));
                let c = comp.coordinates(&v);
                flat[b * m + a] = c.iter().map(|x| -x).collect();
                flat[a * m + b] = c;
            }
        }
        let labels = (0..m).map(|a| format!("q{}", a + 1)).collect();
        Ok(Self::from_flat(labels, flat))
    }

    /// Direct product `self × other`; the basis of `other` follows.
    pub fn direct_product(&self, other: &LieAlgebra) -> LieAlgebra {
        let (n, m) = (self.dim(), other.dim());
        let t = n + m;
        let mut flat = vec![vec![Rational::zero(); t]; t * t];
        for i in 0..n {
            for j in 0..n {
                flat[i * t + j][..n].clone_from_slice(self.structure(i, j));
            }
        }
        for i in 0..m {
            for j in 0..m {
                flat[(n + i) * t + n + j][n..].clone_from_slice(other.structure(i, j));
            }
        }
        let labels = self.labels.iter().chain(&other.labels).cloned().collect();
        Self::from_flat(labels, flat)
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        self.bracket_spaces(s, s)
            .basis()
            .iter()
            .all(|v| s.contains_vector(v))
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        (0..self.dim()).all(|i| {
            s.basis()
                .iter()
                .all(|v| s.contains_vector(&self.ad[i].mul_vec(v)))
        })
    }

    pub fn is_abelian_subspace(&self, s: &Subspace) -> bool {
        let b = s.basis();
        (0..b.len()).all(|i| {
            (i + 1..b.len()).all(|j| self.bracket(&b[i], &b[j]).iter().all(Rational::is_zero))
        })
    }

    /// Linear combination of basis labels, e.g. `k1 - 2*u3`.
    pub fn describe(&self, v: &[Rational]) -> String {
        let mut out = String::new();
        for (c, label) in v.iter().zip(&self.labels) {
            if c.is_zero() {
                continue;
            }
            let neg = c.signum() < 0;
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !a.is_one() {
                out.push_str(&format!("{a}*"));
            }
            out.push_str(label);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub(crate) fn check_ambient(&self, s: &Subspace) -> Result<()> {
        if s.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: s.ambient_dim(),
            });
        }
        Ok(())
    }
}

fn trace_of_product(a: &Matrix, b: &Matrix) -> Rational {
    let n = a.rows();
    let mut t = Rational::zero();
    for i in 0..n {
        for (k, x) in a.row(i).iter().enumerate() {
            if !x.is_zero() {
                let y = &b[(k, i)];
                if !y.is_zero() {
                    t += &(x * y);
                }
            }
        }
    }
    t
}

/// Checks antisymmetry and the Jacobi identity on a flat table
/// `flat[i * n + j] = [e_i, e_j]`, reporting the first violation.
pub fn validate_constants(n: usize, flat: &[Vec<Rational>]) -> Result<(), Violation> {
    for i in 0..n {
        for j in i..n {
            let (a, b) = (&flat[i * n + j], &flat[j * n + i]);
            for k in 0..n {
                let s = &a[k] + &b[k];
                let bad = if i == j {
                    !a[k].is_zero()
                } else {
                    !s.is_zero()
                };
                if bad {
                    return Err(Violation::Antisymmetry {
                        i,
                        j,
                        k,
                        value: if i == j { &a[k] + &a[k] } else { s },
                    });
                }
            }
        }
    }
    // [[e_i, e_j], e_k] = Σ_l c_ij^l [e_l, e_k]
    let nested = |i: usize, j: usize, k: usize, acc: &mut Vec<Rational>| {
        for (l, c) in flat[i * n + j].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, d) in acc.iter_mut().zip(&flat[l * n + k]) {
                if !d.is_zero() {
                    *o += &(c * d);
                }
            }
        }
    };
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut acc = vec![Rational::zero(); n];
                nested(i, j, k, &mut acc);
                nested(j, k, i, &mut acc);
                nested(k, i, j, &mut acc);
                if let Some((component, value)) =
                    acc.into_iter().enumerate().find(|(_, v)| !v.is_zero())
                {
                    return Err(Violation::Jacobi {
                        i,
                        j,
                        k,
                        component,
                        value,
                    });
                }
            }
        }
    }
    Ok(())
}

/// Validates a full table `c[i][j][k]` without building an algebra.
pub fn validate(constants: &[Vec<Vec<Rational>>]) -> Result<(), Violation> {
    let n = constants.len();
    let flat: Vec<Vec<Rational>> = constants.iter().flatten().cloned().collect();
    validate_constants(n, &flat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{build_sl2, build_so};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::from(x)).collect()
    }

    fn so3_cyclic() -> Vec<Vec<Vec<Rational>>> {
        let mut c = vec![vec![vec![Rational::zero(); 3]; 3]; 3];
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            c[i][j][k] = Rational::one();
            c[j][i][k] = Rational::from(-1);
        }
        c
    }

    #[test]
    fn so3_cyclic_constants_validate() {
        assert!(validate(&so3_cyclic()).is_ok());
    }

    #[test]
    fn antisymmetry_violation_is_located() {
        let mut c = so3_cyclic();
        c[1][0][2] = Rational::one();
        match validate(&c) {
            Err(Violation::Antisymmetry {
                i: 0, j: 1, k: 2, ..
            }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn perturbed_constant_breaks_jacobi() {
        let mut c = so3_cyclic();
        // keep antisymmetry, break Jacobi
        c[0][1][0] = Rational::one();
        c[1][0][0] = Rational::from(-1);
        assert!(matches!(validate(&c), Err(Violation::Jacobi { .. })));
    }

    #[test]
    fn killing_of_so3_is_minus_two() {
        let k = build_so(3).unwrap().killing_form();
        assert_eq!(k.gram(), &Matrix::identity(3).scale(&Rational::from(-2)));
    }

    #[test]
    fn killing_of_sl2_has_signature_2_1() {
        let k = build_sl2().killing_form();
        assert_eq!(k.gram().signature().unwrap(), (2, 1, 0));
    }

    #[test]
    fn change_basis_preserves_killing_congruence() {
        let g = build_sl2();
        let p = Matrix::from_i64(&[&[1, 2, 0], &[0, 1, 1], &[0, 0, 1]]);
        let h = g.change_basis(&p).unwrap();
        assert_eq!(
            h.killing_form().gram(),
            &g.killing_form().gram().congruent(&p)
        );
        assert!(validate(&h.structure_constants()).is_ok());
    }

    #[test]
    fn subalgebra_and_quotient() {
        let g = build_so(3).unwrap().direct_product(&build_sl2());
        let second = Subspace::coordinate(6, [3, 4, 5]);
        assert!(g.is_ideal(&second));
        let q = g.quotient(&second).unwrap();
        assert_eq!(q.killing_form().gram().signature().unwrap(), (0, 3, 0));
        let s = g.subalgebra(&second).unwrap();
        assert_eq!(s.killing_form().gram().signature().unwrap(), (2, 1, 0));
        assert!(g
            .subalgebra(&Subspace::span(
                6,
                [v(&[1, 0, 0, 0, 0, 0]), v(&[0, 1, 0, 0, 0, 0])]
            ))
            .is_err());
    }
}
