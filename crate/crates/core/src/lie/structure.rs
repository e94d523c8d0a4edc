use serde::{Deserialize, Serialize};

use super::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{null_space, Rational, Subspace};

/// A subspace together with bracket-closure flags computed from it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubalgebraHandle {
    pub space: Subspace,
    pub is_subalgebra: bool,
    pub is_ideal: bool,
    pub is_abelian: bool,
}

impl SubalgebraHandle {
    pub fn new(g: &LieAlgebra, space: Subspace) -> Self {
        let is_abelian = g.is_abelian_subspace(&space);
        SubalgebraHandle {
            is_subalgebra: is_abelian || g.is_subalgebra(&space),
            is_ideal: g.is_ideal(&space),
            is_abelian,
            space,
        }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

impl LieAlgebra {
    pub fn handle(&self, space: Subspace) -> SubalgebraHandle {
        SubalgebraHandle::new(self, space)
    }

    pub fn whole(&self) -> Subspace {
        Subspace::whole(self.dim())
    }

    pub fn derived_algebra(&self) -> Subspace {
        let w = self.whole();
        self.bracket_spaces(&w, &w)
    }

    /// `s ⊇ [s, s] ⊇ …`, ending at the first repeated term.
    pub fn derived_series_of(&self, s: &Subspace) -> Vec<Subspace> {
        let mut out = vec![s.clone()];
        loop {
            let last = out.last().unwrap();
            let next = self.bracket_spaces(last, last);
            if next == *last {
                return out;
            }
            out.push(next);
        }
    }

    pub fn derived_series(&self) -> Vec<Subspace> {
        self.derived_series_of(&self.whole())
    }

    /// `g ⊇ [g, g] ⊇ [g, [g, g]] ⊇ …`, ending at the first repeated term.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let w = self.whole();
        let mut out = vec![w.clone()];
        loop {
            let next = self.bracket_spaces(&w, out.last().unwrap());
            if next == *out.last().unwrap() {
                return out;
            }
            out.push(next);
        }
    }

    pub fn is_solvable_subspace(&self, s: &Subspace) -> bool {
        self.derived_series_of(s).last().unwrap().is_zero()
    }

    /// `{x ∈ g : [x, h] = 0}`.
    pub fn centralizer(&self, h: &Subspace) -> Subspace {
        let n = self.dim();
        // [x, y] = -ad(y) x
        let rows: Vec<Vec<Rational>> = h
            .basis()
            .iter()
            .flat_map(|y| self.ad(y).to_rows())
            .collect();
        Subspace::span(n, null_space(rows, n))
    }

    pub fn center(&self) -> Subspace {
        self.centralizer(&self.whole())
    }

    /// `V^h = {v ∈ V : [x, v] = 0 for x ∈ h}`. `V` must be `h`-stable.
    pub fn invariants(&self, h: &Subspace, v: &Subspace) -> Result<Subspace> {
        self.check_ambient(h)?;
        self.check_ambient(v)?;
        if !self
            .bracket_spaces(h, v)
            .basis()
            .iter()
            .all(|w| v.contains_vector(w))
        {
            return Err(Error::NotStable);
        }
        self.centralizer(h).intersect(v)
    }

    /// Largest ideal of `g` inside `w`: iterate
    /// `W_{k+1} = {x ∈ W_k : [g, x] ⊆ W_k}` to its fixed point.
    pub fn largest_ideal_in(&self, w: &Subspace) -> Result<Subspace> {
        self.check_ambient(w)?;
        let n = self.dim();
        let mut cur = w.clone();
        loop {
            if cur.is_zero() {
                return Ok(cur);
            }
            let ann = cur.annihilator();
            // coefficients c with x = Σ c_t b_t, require ann · ad(e_i) · x = 0
            let mut rows = Vec::new();
            for i in 0..n {
                let images: Vec<Vec<Rational>> = cur
                    .basis()
                    .iter()
                    .map(|b| self.ad_basis(i).mul_vec(b))
                    .collect();
                for a in ann.basis() {
                    rows.push(
                        images
                            .iter()
                            .map(|im| dot(a, im))
                            .collect::<Vec<Rational>>(),
                    );
                }
            }
            let coeffs = null_space(rows, cur.dim());
            let next = Subspace::span(n, coeffs.iter().map(|c| cur.combine(c)));
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// Smallest ideal containing `s`.
    pub fn ideal_generated_by(&self, s: &Subspace) -> Subspace {
        let n = self.dim();
        let mut cur = s.clone();
        loop {
            let images = cur
                .basis()
                .iter()
                .flat_map(|v| (0..n).map(move |i| self.ad_basis(i).mul_vec(v)))
                .collect::<Vec<_>>();
            let next = Subspace::span(n, cur.basis().iter().cloned().chain(images));
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// Solvable radical by Cartan's criterion: `{x : κ(x, [g, g]) = 0}`.
    pub fn radical(&self) -> SubalgebraHandle {
        let kappa = self.killing_form();
        let rows = self
            .derived_algebra()
            .basis()
            .iter()
            .map(|y| kappa.gram().vec_mul(y))
            .collect();
        let space = Subspace::span(self.dim(), null_space(rows, self.dim()));
        self.handle(space)
    }
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut s = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += &(x * y);
        }
    }
    s
}
