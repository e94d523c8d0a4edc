use serde::{Deserialize, Serialize};

use super::algebra::LieAlgebra;
use super::rep::commutant;
use super::structure::{dot, SubalgebraHandle};
use crate::error::{Error, Result};
use crate::linalg::{solve_linear, DirectSum, Matrix, Rational, Subspace};

/// `g = levi ⋉ radical` with `levi = compact_part × noncompact_part`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviDecomposition {
    pub radical: SubalgebraHandle,
    pub levi: SubalgebraHandle,
    pub compact_part: SubalgebraHandle,
    pub noncompact_part: SubalgebraHandle,
    /// `noncompact_part + radical`
    pub gs: SubalgebraHandle,
    pub simple_ideals: Vec<SimpleIdeal>,
}

/// One simple ideal of the Levi factor, with its fingerprint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleIdeal {
    pub handle: SubalgebraHandle,
    pub compact: bool,
    /// Signature of the ideal's own Killing form.
    pub killing_signature: (usize, usize, usize),
}

impl LeviDecomposition {
    pub fn radical_is_abelian(&self) -> bool {
        self.radical.is_abelian
    }
}

impl LieAlgebra {
    /// Levi subalgebra by lifting a complement of the radical through the
    /// derived series of the radical; one linear solve per layer.
    pub fn levi_subalgebra(&self) -> Result<LeviDecomposition> {
        let n = self.dim();
        let radical = self.radical();
        let series = self.derived_series_of(&radical.space);
        if !series.last().is_some_and(Subspace::is_zero) {
            return Err(Error::Unsupported(
                "derived series of the computed radical does not terminate".into(),
            ));
        }
        let mut xs = radical.space.complement_in(&self.whole())?.basis().to_vec();
        for layer in series.windows(2) {
            if xs.is_empty() {
                break;
            }
            xs = self.lift_layer(&xs, &radical.space, &layer[0], &layer[1])?;
        }
        let levi = Subspace::span(n, xs);
        if !self.is_subalgebra(&levi) {
            return Err(Error::Unsupported(
                "Levi lifting did not close under the bracket".into(),
            ));
        }
        let (compact, noncompact, simple_ideals) = self.split_levi(&levi)?;
        let gs = noncompact.sum(&radical.space)?;
        Ok(LeviDecomposition {
            levi: self.handle(levi),
            compact_part: self.handle(compact),
            noncompact_part: self.handle(noncompact),
            gs: self.handle(gs),
            radical,
            simple_ideals,
        })
    }

    /// Corrects `x_i ↦ x_i + φ_i` with `φ_i ∈ upper` so that the span of the
    /// `x_i` plus `lower` is closed under the bracket, given closure modulo
    /// `upper`.
    fn lift_layer(
        &self,
        xs: &[Vec<Rational>],
        radical: &Subspace,
        upper: &Subspace,
        lower: &Subspace,
    ) -> Result<Vec<Vec<Rational>>> {
        let n = self.dim();
        let lspan = Subspace::span(n, xs.iter().cloned());
        let xs = lspan.basis().to_vec();
        let s = xs.len();
        let unknowns = lower.complement_in(upper)?;
        let d = unknowns.dim();
        let ms = unknowns.basis();
        let split = DirectSum::new(vec![lspan, radical.clone()])?;
        let functionals = lower.annihilator();
        let qs = functionals.basis();

        // [x_i, m_t]
        let adx: Vec<Vec<Vec<Rational>>> = xs
            .iter()
            .map(|x| ms.iter().map(|m| self.bracket(x, m)).collect())
            .collect();
        let q_adx: Vec<Vec<Vec<Rational>>> = qs
            .iter()
            .map(|q| {
                adx.iter()
                    .map(|row| row.iter().map(|v| dot(q, v)).collect())
                    .collect()
            })
            .collect();
        let q_m: Vec<Vec<Rational>> = qs
            .iter()
            .map(|q| ms.iter().map(|m| dot(q, m)).collect())
            .collect();

        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for i in 0..s {
            for j in i + 1..s {
                let parts = split.components(&self.bracket(&xs[i], &xs[j]));
                let coeffs = split.parts()[0].coordinates(&parts[0]);
                let beta = &parts[1];
                for (qi, q) in qs.iter().enumerate() {
                    let mut row = vec![Rational::zero(); s * d];
                    for t in 0..d {
                        row[j * d + t] += &q_adx[qi][i][t];
                        row[i * d + t] -= &q_adx[qi][j][t];
                        for (l, c) in coeffs.iter().enumerate() {
                            if !c.is_zero() {
                                row[l * d + t] -= &(c * &q_m[qi][t]);
                            }
                        }
                    }
                    let b = -dot(q, beta);
                    if row.iter().all(Rational::is_zero) && b.is_zero() {
                        continue;
                    }
                    rows.push(row);
                    rhs.push(b);
                }
            }
        }
        if rows.is_empty() {
            return Ok(xs);
        }
        let a = Matrix::from_rows(s * d, rows)?;
        let sol = solve_linear(&a, &rhs)?
            .ok_or_else(|| Error::Unsupported("Levi cocycle equation has no solution".into()))?;
        Ok(xs
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let phi = unknowns.combine(&sol.particular[i * d..(i + 1) * d]);
                x.iter().zip(&phi).map(|(a, b)| a + b).collect()
            })
            .collect())
    }

    /// Splits a semisimple subalgebra into simple ideals using joint
    /// eigenspaces of its centroid; returns `(K, S, ideals)` with `K` the sum
    /// of ideals whose Killing form is negative definite.
    pub fn split_levi(&self, levi: &Subspace) -> Result<(Subspace, Subspace, Vec<SimpleIdeal>)> {
        let n = self.dim();
        let l = self.subalgebra(levi)?;
        let kappa = l.killing_form();
        let (_, _, null) = kappa.gram().signature()?;
        if null > 0 {
            return Err(Error::NotSemisimple);
        }
        let mut compact = Subspace::zero(n);
        let mut noncompact = Subspace::zero(n);
        let mut ideals = Vec::new();
        for chunk in simple_ideal_coordinates(&l)? {
            let sig = kappa.restrict(&chunk).gram().signature()?;
            let is_compact = sig.0 == 0 && sig.2 == 0;
            let space = Subspace::span(n, chunk.basis().iter().map(|c| levi.combine(c)));
            if is_compact {
                compact = compact.sum(&space)?;
            } else {
                noncompact = noncompact.sum(&space)?;
            }
            ideals.push(SimpleIdeal {
                handle: self.handle(space),
                compact: is_compact,
                killing_signature: sig,
            });
        }
        Ok((compact, noncompact, ideals))
    }
}

/// Simple ideals of a semisimple algebra, in its own coordinates.
fn simple_ideal_coordinates(l: &LieAlgebra) -> Result<Vec<Subspace>> {
    let m = l.dim();
    if m == 0 {
        return Ok(Vec::new());
    }
    let ads: Vec<Matrix> = (0..m).map(|i| l.ad_basis(i).clone()).collect();
    let centroid = commutant(&ads)?;
    let mut chunks = vec![Subspace::whole(m)];
    for t in &centroid {
        let mut next = Vec::new();
        for chunk in chunks {
            next.extend(split_by_operator(t, &chunk)?);
        }
        chunks = next;
    }
    for chunk in &chunks {
        let restricted: Vec<Matrix> = centroid.iter().map(|t| restrict(t, chunk)).collect();
        let rank = Subspace::span(
            chunk.dim() * chunk.dim(),
            restricted.iter().map(|r| r.entries().to_vec()),
        )
        .dim();
        // centroid of a simple real ideal is the reals or the complexes
        let complex_type = rank == 2
            && restricted.iter().any(|r| {
                r.charpoly()
                    .squarefree_part()
                    .is_ok_and(|p| p.degree() == Some(2) && discriminant_negative(&p))
            });
        if rank != 1 && !complex_type {
            return Err(Error::Unsupported(format!(
                "a {}-dimensional ideal has centroid of dimension {rank}; its splitting is not defined over the rationals",
                chunk.dim()
            )));
        }
    }
    chunks.sort_by(|a, b| a.pivots().cmp(b.pivots()));
    Ok(chunks)
}

fn discriminant_negative(p: &crate::linalg::Poly) -> bool {
    let c = p.coeffs();
    let disc = &c[1] * &c[1] - &(Rational::from(4) * &c[0] * &c[2]);
    disc.signum() < 0
}

/// Matrix of `t` on a `t`-stable subspace, in its echelon coordinates.
fn restrict(t: &Matrix, chunk: &Subspace) -> Matrix {
    let cols: Vec<Vec<Rational>> = chunk
        .basis()
        .iter()
        .map(|b| chunk.coordinates(&t.mul_vec(b)))
        .collect();
    Matrix::from_columns(chunk.dim(), &cols)
}

/// Primary components of `t` on a stable subspace.
fn split_by_operator(t: &Matrix, chunk: &Subspace) -> Result<Vec<Subspace>> {
    let tr = restrict(t, chunk);
    let factors = tr.charpoly().factor()?.factors;
    if factors.len() <= 1 {
        return Ok(vec![chunk.clone()]);
    }
    let n = chunk.ambient_dim();
    Ok(factors
        .iter()
        .map(|(f, e)| {
            let ker = f.pow(*e).eval_matrix(&tr).kernel();
            Subspace::span(n, ker.basis().iter().map(|c| chunk.combine(c)))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{build_euclidean, build_sl2, build_so, unimodular_scramble};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn semisimple_input_is_its_own_levi() {
        let d = build_sl2().levi_subalgebra().unwrap();
        assert!(d.radical.space.is_zero());
        assert!(d.levi.space.is_whole());
        assert_eq!(d.simple_ideals.len(), 1);
        assert!(!d.simple_ideals[0].compact);
        assert_eq!(d.simple_ideals[0].killing_signature, (2, 1, 0));
    }

    #[test]
    fn abelian_input_has_zero_levi() {
        let g = LieAlgebra::abelian(vec!["a".into(), "b".into(), "c".into()]);
        let d = g.levi_subalgebra().unwrap();
        assert!(d.levi.space.is_zero());
        assert!(d.simple_ideals.is_empty());
    }

    #[test]
    fn so4_splits_into_two_compact_ideals() {
        let d = build_so(4).unwrap().levi_subalgebra().unwrap();
        assert_eq!(d.simple_ideals.len(), 2);
        for s in &d.simple_ideals {
            assert!(s.compact);
            assert_eq!(s.handle.dim(), 3);
            assert_eq!(s.killing_signature, (0, 3, 0));
        }
        assert_eq!(d.compact_part.dim(), 6);
    }

    #[test]
    fn so3_times_sl2_separates_compact_and_noncompact() {
        let g = build_so(3).unwrap().direct_product(&build_sl2());
        let d = g.levi_subalgebra().unwrap();
        assert_eq!(d.compact_part.space, Subspace::coordinate(6, [0, 1, 2]));
        assert_eq!(d.noncompact_part.space, Subspace::coordinate(6, [3, 4, 5]));
        let (a, b) = (
            &d.simple_ideals[0].handle.space,
            &d.simple_ideals[1].handle.space,
        );
        assert!(g.bracket_spaces(a, b).is_zero());
    }

    #[test]
    fn scrambled_e3_recovers_so3_complement() {
        let e3 = build_euclidean(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (p, _) = unimodular_scramble(6, &mut rng);
        let g = e3.change_basis(&p).unwrap();
        let d = g.levi_subalgebra().unwrap();
        assert_eq!(d.levi.dim(), 3);
        assert!(d.levi.is_subalgebra);
        assert!(d.levi.space.intersect(&d.radical.space).unwrap().is_zero());
        assert!(d.levi.space.sum(&d.radical.space).unwrap().is_whole());
        let ks = g.subalgebra(&d.levi.space).unwrap().killing_form();
        assert_eq!(ks.gram().signature().unwrap(), (0, 3, 0));
    }

    #[test]
    fn degenerate_levi_candidate_is_rejected() {
        let e3 = build_euclidean(3).unwrap();
        let r = Subspace::coordinate(6, [3, 4, 5]);
        assert!(matches!(e3.split_levi(&r), Err(Error::NotSemisimple)));
    }
}
