use serde::{Deserialize, Serialize};

use super::matrix::{null_space_from_rref, rref_rows, Matrix};
use super::rational::Rational;
use crate::error::{Error, Result};

/// A linear subspace of `Q^n`, stored by its reduced row-echelon basis.
///
/// The echelon basis is canonical, so two subspaces are equal exactly when
/// their stored data are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "SubspaceData", into = "SubspaceData")]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

/// Wire form: the echelon basis, one vector per row.
#[derive(Serialize, Deserialize)]
struct SubspaceData {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
}

impl From<SubspaceData> for Subspace {
    fn from(d: SubspaceData) -> Self {
        Subspace::span(d.ambient_dim, d.basis)
    }
}

impl From<Subspace> for SubspaceData {
    fn from(s: Subspace) -> Self {
        SubspaceData {
            ambient_dim: s.ambient_dim,
            basis: s.basis,
        }
    }
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn whole(ambient_dim: usize) -> Self {
        Self::span(ambient_dim, Matrix::identity(ambient_dim).to_rows())
    }

    /// Span of the given vectors. Panics if a vector has the wrong length.
    pub fn span<I>(ambient_dim: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<Rational>>,
    {
        let mut rows: Vec<Vec<Rational>> = vectors
            .into_iter()
            .inspect(|v| assert_eq!(v.len(), ambient_dim, "vector length"))
            .collect();
        let pivots = rref_rows(&mut rows, ambient_dim);
        rows.truncate(pivots.len());
        Subspace {
            ambient_dim,
            basis: rows,
            pivots,
        }
    }

    /// Span of coordinate vectors `e_i` for the given indices.
    pub fn coordinate(ambient_dim: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        Self::span(
            ambient_dim,
            indices.into_iter().map(|i| unit(ambient_dim, i)),
        )
    }

    /// Callers guarantee the vectors are independent; they are still
    /// re-reduced to keep the representation canonical.
    pub(crate) fn from_rref_unchecked(ambient_dim: usize, vectors: Vec<Vec<Rational>>) -> Self {
        Self::span(ambient_dim, vectors)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows(self.ambient_dim, self.basis.clone()).expect("consistent rows")
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }

    /// Residual of `v` after reduction by the echelon basis; zero iff `v` lies
    /// in the subspace.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut r = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, b) in r.iter_mut().zip(row) {
                if !b.is_zero() {
                    *x -= &(&f * b);
                }
            }
        }
        r
    }

    pub fn contains_vector(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        self.reduce(v).iter().all(Rational::is_zero)
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(other.dim() <= self.dim() && other.basis.iter().all(|v| self.contains_vector(v)))
    }

    /// Coordinates of `v` in the echelon basis. `v` must lie in the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Vec<Rational> {
        debug_assert!(self.contains_vector(v));
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    /// Vector with the given coordinates in the echelon basis.
    pub fn combine(&self, coords: &[Rational]) -> Vec<Rational> {
        assert_eq!(coords.len(), self.dim());
        let mut out = vec![Rational::zero(); self.ambient_dim];
        for (c, row) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(row) {
                if !b.is_zero() {
                    *o += &(c * b);
                }
            }
        }
        out
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::span(
            self.ambient_dim,
            self.basis.iter().chain(&other.basis).cloned(),
        ))
    }

    /// Annihilator under the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        let pivots = self.pivots.clone();
        Subspace::span(
            self.ambient_dim,
            null_space_from_rref(&self.basis, &pivots, self.ambient_dim),
        )
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    /// Canonical complement of `self ∩ within` inside `within`: the echelon
    /// basis vectors of `within` that are not already spanned, added greedily.
    pub fn complement_in(&self, within: &Subspace) -> Result<Subspace> {
        let meet = self.intersect(within)?;
        let mut acc = meet.clone();
        let mut chosen = Vec::new();
        for v in within.basis() {
            if !acc.contains_vector(v) {
                acc = acc.sum(&Subspace::span(self.ambient_dim, [v.clone()]))?;
                chosen.push(v.clone());
            }
        }
        Ok(Subspace::span(self.ambient_dim, chosen))
    }

    /// Image of the subspace under a linear map `x -> M x`.
    pub fn map(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient_dim);
        Subspace::span(m.rows(), self.basis.iter().map(|v| m.mul_vec(v)))
    }
}

pub fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

/// Coordinates with respect to a direct-sum decomposition `V = U_1 ⊕ … ⊕ U_k`
/// of the ambient space.
#[derive(Debug, Clone)]
pub struct DirectSum {
    parts: Vec<Subspace>,
    /// Inverse of the matrix whose columns are the concatenated part bases.
    inverse: Matrix,
}

impl DirectSum {
    pub fn new(parts: Vec<Subspace>) -> Result<Self> {
        let n = parts.first().map_or(0, Subspace::ambient_dim);
        let cols: Vec<Vec<Rational>> = parts.iter().flat_map(|p| p.basis().to_vec()).collect();
        if cols.len() != n || parts.iter().any(|p| p.ambient_dim() != n) {
            return Err(Error::NotDirectSum);
        }
        let inverse = Matrix::from_columns(n, &cols)
            .inverse()
            .ok_or(Error::NotDirectSum)?;
        Ok(DirectSum { parts, inverse })
    }

    pub fn parts(&self) -> &[Subspace] {
        &self.parts
    }

    /// Splits `v` into its components, one ambient vector per part.
    pub fn components(&self, v: &[Rational]) -> Vec<Vec<Rational>> {
        let coords = self.inverse.mul_vec(v);
        let mut offset = 0;
        self.parts
            .iter()
            .map(|p| {
                let c = &coords[offset..offset + p.dim()];
                offset += p.dim();
                p.combine(c)
            })
            .collect()
    }

    /// Projection onto part `i` along the others.
    pub fn project(&self, i: usize, v: &[Rational]) -> Vec<Rational> {
        self.components(v).swap_remove(i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn coordinate_planes_meet_in_axis() {
        let xy = Subspace::coordinate(3, [0, 1]);
        let yz = Subspace::coordinate(3, [1, 2]);
        assert_eq!(xy.intersect(&yz).unwrap(), Subspace::coordinate(3, [1]));
    }

    #[test]
    fn sum_is_idempotent() {
        let e1 = Subspace::coordinate(3, [0]);
        assert_eq!(e1.sum(&e1).unwrap(), e1);
    }

    #[test]
    fn complement_gives_direct_sum() {
        let u = Subspace::span(2, [v(&[1, 1])]);
        let c = u.complement_in(&Subspace::whole(2)).unwrap();
        assert_eq!(c.dim(), 1);
        assert!(u.sum(&c).unwrap().is_whole());
        assert!(u.intersect(&c).unwrap().is_zero());
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Subspace::whole(2);
        let b = Subspace::whole(3);
        assert!(a.sum(&b).is_err());
        assert!(a.intersect(&b).is_err());
        assert!(a.contains(&b).is_err());
    }

    #[test]
    fn direct_sum_projection() {
        let u = Subspace::span(2, [v(&[1, 1])]);
        let w = Subspace::coordinate(2, [1]);
        let ds = DirectSum::new(vec![u, w]).unwrap();
        let parts = ds.components(&v(&[2, 5]));
        assert_eq!(parts[0], v(&[2, 2]));
        assert_eq!(parts[1], v(&[0, 3]));
        assert!(DirectSum::new(vec![Subspace::whole(2), Subspace::coordinate(2, [0])]).is_err());
    }

    fn subspace_strategy(n: usize) -> impl Strategy<Value = Subspace> {
        proptest::collection::vec(proptest::collection::vec(-2i64..=2, n), 0..=n)
            .prop_map(move |vs| Subspace::span(n, vs.iter().map(|x| v(x))))
    }

    proptest! {
        #[test]
        fn modular_dimension_identity(a in subspace_strategy(5), b in subspace_strategy(5)) {
            let s = a.sum(&b).unwrap();
            let i = a.intersect(&b).unwrap();
            prop_assert_eq!(a.dim() + b.dim(), s.dim() + i.dim());
            prop_assert!(a.contains(&i).unwrap() && b.contains(&i).unwrap());
            prop_assert!(s.contains(&a).unwrap() && s.contains(&b).unwrap());
        }

        #[test]
        fn canonical_form_equality(a in subspace_strategy(4), b in subspace_strategy(4)) {
            let mutual = a.contains(&b).unwrap() && b.contains(&a).unwrap();
            prop_assert_eq!(mutual, a == b);
        }

        #[test]
        fn complement_is_direct(a in subspace_strategy(5), w in subspace_strategy(5)) {
            let c = a.complement_in(&w).unwrap();
            let meet = a.intersect(&w).unwrap();
            prop_assert!(w.contains(&c).unwrap());
            prop_assert!(c.intersect(&meet).unwrap().is_zero());
            prop_assert_eq!(c.dim() + meet.dim(), w.dim());
        }
    }
}
