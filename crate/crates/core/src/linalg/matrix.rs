use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::modular::integer_charpoly;
use super::poly::Poly;
use super::rational::Rational;
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Rational>>", into = "Vec<Vec<Rational>>")]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Solution set of `A x = b`: `particular + kernel`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<Rational>,
    pub kernel: Subspace,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(Matrix {
            rows: n,
            cols,
            data,
        })
    }

    /// Convenience constructor for small integer matrices. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                r.iter().map(|&x| Rational::from(x))
            })
            .collect();
        Matrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<Rational>]) -> Self {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(blocks: &[Matrix]) -> Result<Matrix> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            if b.cols != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: b.cols,
                });
            }
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| &self[(i, i)]).sum()
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &Rational, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if c.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += &(c * b);
            }
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                let brow = other.row(k);
                let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, b) in orow.iter_mut().zip(brow) {
                    if !b.is_zero() {
                        *o += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `vᵀ M`
    pub fn vec_mul(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.rows, v.len());
        let mut out = vec![Rational::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                if !a.is_zero() {
                    *o += &(vi * a);
                }
            }
        }
        out
    }

    /// `xᵀ M y`
    pub fn bilinear(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let mx = self.mul_vec(y);
        x.iter()
            .zip(&mx)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn pow(&self, mut e: u32) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `self * other - other * self`
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    /// `Pᵀ self P`
    pub fn congruent(&self, p: &Matrix) -> Matrix {
        p.transpose().mul(self).mul(p)
    }

    /// Nilpotency by powering: `M^n = 0` for an `n × n` matrix.
    pub fn is_nilpotent(&self) -> bool {
        assert!(self.is_square());
        if self.is_zero() {
            return true;
        }
        let mut p = self.clone();
        for _ in 1..self.rows {
            p = p.mul(self);
            if p.is_zero() {
                return true;
            }
        }
        p.is_zero()
    }

    /// Reduced row-echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut rows = self.to_rows();
        let pivots = rref_rows(&mut rows, self.cols);
        let data = rows.into_iter().flatten().collect();
        (
            Matrix {
                rows: self.rows,
                cols: self.cols,
                data,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space `{x : M x = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let mut rows = self.to_rows();
        let pivots = rref_rows(&mut rows, self.cols);
        null_space_from_rref(&rows, &pivots, self.cols)
    }

    pub fn kernel(&self) -> Subspace {
        Subspace::from_rref_unchecked(self.cols, self.kernel_basis())
    }

    /// Column space, as a subspace of the codomain.
    pub fn image(&self) -> Subspace {
        Subspace::span(self.rows, (0..self.cols).map(|j| self.col(j)))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut rows: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }));
                r
            })
            .collect();
        let pivots = rref_rows(&mut rows, 2 * n);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let data = rows
            .into_iter()
            .flat_map(|r| r.into_iter().skip(n))
            .collect();
        Some(Matrix {
            rows: n,
            cols: n,
            data,
        })
    }

    pub fn determinant(&self) -> Rational {
        assert!(self.is_square());
        let n = self.rows;
        let mut rows = self.to_rows();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !rows[r][c].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                rows.swap(p, c);
                det = -det;
            }
            let pivot = rows[c][c].clone();
            det *= &pivot;
            let inv = pivot.recip();
            for r in c + 1..n {
                if rows[r][c].is_zero() {
                    continue;
                }
                let f = &rows[r][c] * &inv;
                let (top, bottom) = rows.split_at_mut(r);
                eliminate(&mut bottom[0], &top[c], &f, c);
            }
        }
        det
    }

    /// Characteristic polynomial `det(x I - M)`, via reduction to upper
    /// Hessenberg form.
    pub fn charpoly(&self) -> Poly {
        assert!(self.is_square());
        self.charpoly_multimodular()
            .unwrap_or_else(|| self.charpoly_hessenberg())
    }

    /// `χ_A(x) = D^{-n} χ_{DA}(D x)` with `D` the common denominator, the
    /// integer polynomial found by Chinese remaindering.
    fn charpoly_multimodular(&self) -> Option<Poly> {
        let n = self.rows;
        let d = self
            .data
            .iter()
            .filter(|x| !x.is_zero())
            .fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()));
        let scaled: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| {
                        if x.is_zero() {
                            BigInt::zero()
                        } else {
                            x.numer() * (&d / x.denom())
                        }
                    })
                    .collect()
            })
            .collect();
        let coeffs = integer_charpoly(&scaled)?;
        Some(Poly::from_coeffs(
            coeffs
                .into_iter()
                .enumerate()
                .map(|(k, c)| Rational::from_bigints(c, d.pow((n - k) as u32)))
                .collect(),
        ))
    }

    /// Charpoly by exact reduction to upper Hessenberg form.
    pub(crate) fn charpoly_hessenberg(&self) -> Poly {
        let n = self.rows;
        let mut h = self.to_rows();
        for m in 1..n {
            let Some(piv) = (m..n).find(|&i| !h[i][m - 1].is_zero()) else {
                continue;
            };
            if piv != m {
                h.swap(piv, m);
                for row in h.iter_mut() {
                    row.swap(piv, m);
                }
            }
            let inv = h[m][m - 1].recip();
            for j in m + 1..n {
                if h[j][m - 1].is_zero() {
                    continue;
                }
                let t = &h[j][m - 1] * &inv;
                let (top, bottom) = h.split_at_mut(j);
                eliminate(&mut bottom[0], &top[m], &t, m - 1);
                for row in h.iter_mut() {
                    if !row[j].is_zero() {
                        let add = &t * &row[j];
                        row[m] += &add;
                    }
                }
            }
        }
        // p[k] = charpoly of the leading k×k block
        let mut p: Vec<Poly> = Vec::with_capacity(n + 1);
        p.push(Poly::one());
        for m in 1..=n {
            let mut next =
                Poly::from_coeffs(vec![-h[m - 1][m - 1].clone(), Rational::one()]).mul(&p[m - 1]);
            let mut prod = Rational::one();
            for i in (1..m).rev() {
                prod *= &h[i][i - 1];
                if prod.is_zero() {
                    break;
                }
                let c = &h[i - 1][m - 1] * &prod;
                if !c.is_zero() {
                    next = next.sub(&p[i - 1].scale(&c));
                }
            }
            p.push(next);
        }
        p.pop().unwrap()
    }

    /// Inertia `(n_plus, n_minus, n_zero)` of a symmetric matrix by exact
    /// congruence diagonalization.
    pub fn signature(&self) -> Result<(usize, usize, usize)> {
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let (mut pos, mut neg) = (0, 0);
        let mut k = 0;
        while k < n {
            if let Some(i) = (k..n).find(|&i| !a[i][i].is_zero()) {
                sym_swap(&mut a, i, k);
            } else if let Some((i, j)) = (k..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_zero())
            {
                // a[i][i] = a[j][j] = 0, so e_i + e_j has norm 2 a[i][j] != 0
                sym_add(&mut a, i, j);
                sym_swap(&mut a, i, k);
            } else {
                break;
            }
            let d = a[k][k].clone();
            if d.signum() > 0 {
                pos += 1;
            } else {
                neg += 1;
            }
            let inv = d.recip();
            for r in k + 1..n {
                if a[r][k].is_zero() {
                    continue;
                }
                let f = &a[r][k] * &inv;
                let (top, bottom) = a.split_at_mut(r);
                eliminate(&mut bottom[0], &top[k], &f, k);
                for row in a.iter_mut().skip(k) {
                    let delta = &f * &row[k];
                    if !delta.is_zero() {
                        row[r] -= &delta;
                    }
                }
            }
            k += 1;
        }
        Ok((pos, neg, n - pos - neg))
    }
}

/// Row `target -= f * source`, starting at column `from`.
fn eliminate(target: &mut [Rational], source: &[Rational], f: &Rational, from: usize) {
    for (t, s) in target[from..].iter_mut().zip(&source[from..]) {
        if !s.is_zero() {
            *t -= &(f * s);
        }
    }
}

fn sym_swap(a: &mut [Vec<Rational>], i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// Replace basis vector `e_i` by `e_i + e_j` (congruence).
fn sym_add(a: &mut [Vec<Rational>], i: usize, j: usize) {
    let row_j = a[j].clone();
    for (x, v) in a[i].iter_mut().zip(&row_j) {
        *x += v;
    }
    for row in a.iter_mut() {
        let v = row[j].clone();
        row[i] += &v;
    }
}

/// In-place Gauss–Jordan elimination on the first `cols` columns. Returns
/// the pivot columns; rows are reordered so nonzero rows come first.
pub(crate) fn rref_rows(rows: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    if rows.iter().flatten().any(|x| !x.is_small_integer()) {
        return rref_rows_integral(rows, cols);
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(p, r);
        let inv = rows[r][c].recip();
        if !inv.is_one() {
            for x in rows[r][c..].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let nz: Vec<usize> = (c..rows[r].len())
            .filter(|&k| !rows[r][k].is_zero())
            .collect();
        let pivot_row = std::mem::take(&mut rows[r]);
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &k in &nz {
                row[k] -= &(&f * &pivot_row[k]);
            }
        }
        rows[r] = pivot_row;
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Fraction-free Gauss–Jordan: rows are scaled to primitive integer
/// vectors and kept primitive after every update, which bounds coefficient
/// growth on inputs with large denominators. Produces the same reduced form
/// as the rational elimination.
fn rref_rows_integral(rows: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut ints: Vec<Vec<BigInt>> = rows.iter().map(|r| primitive_row(r)).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == ints.len() {
            break;
        }
        // smallest pivot keeps the multipliers small
        let Some(p) = (r..ints.len())
            .filter(|&i| !ints[i][c].is_zero())
            .min_by_key(|&i| ints[i][c].bits())
        else {
            continue;
        };
        ints.swap(p, r);
        let pivot_row = std::mem::take(&mut ints[r]);
        let a = &pivot_row[c];
        for (i, row) in ints.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let g = a.gcd(&row[c]);
            let (sa, sb) = (a / &g, &row[c] / &g);
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                let scaled = &*x * &sa;
                *x = if y.is_zero() {
                    scaled
                } else {
                    scaled - &sb * y
                };
            }
            make_primitive(row);
        }
        ints[r] = pivot_row;
        pivots.push(c);
        r += 1;
    }
    for (i, (row, out)) in ints.iter().zip(rows.iter_mut()).enumerate() {
        let lead = pivots.get(i).map(|&c| row[c].clone());
        *out = row
            .iter()
            .map(|x| match &lead {
                Some(l) if !x.is_zero() => Rational::from_bigints(x.clone(), l.clone()),
                _ => Rational::zero(),
            })
            .collect();
    }
    pivots
}

fn primitive_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()));
    let mut out: Vec<BigInt> = row
        .iter()
        .map(|x| {
            if x.is_zero() {
                BigInt::zero()
            } else {
                x.numer() * (&lcm / x.denom())
            }
        })
        .collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter().filter(|x| !x.is_zero()) {
        g = g.gcd(x);
        if g.is_one() {
            return;
        }
    }
    if g > BigInt::one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

pub(crate) fn null_space_from_rref(
    rows: &[Vec<Rational>],
    pivots: &[usize],
    cols: usize,
) -> Vec<Vec<Rational>> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&rows[r][f];
            }
            v
        })
        .collect()
}

/// Null space of the system whose coefficient rows are given.
pub fn null_space(mut rows: Vec<Vec<Rational>>, cols: usize) -> Vec<Vec<Rational>> {
    let pivots = rref_rows(&mut rows, cols);
    rows.truncate(pivots.len());
    null_space_from_rref(&rows, &pivots, cols)
}

/// Solves `A x = b` exactly. `Ok(None)` means the system is inconsistent.
pub fn solve_linear(a: &Matrix, b: &[Rational]) -> Result<Option<AffineSolution>> {
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    let n = a.cols();
    let mut rows: Vec<Vec<Rational>> = (0..a.rows())
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let pivots = rref_rows(&mut rows, n + 1);
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut particular = vec![Rational::zero(); n];
    for (r, &p) in pivots.iter().enumerate() {
        particular[p] = rows[r][n].clone();
    }
    let coeff_rows: Vec<Vec<Rational>> = rows.iter().map(|r| r[..n].to_vec()).collect();
    let kernel = Subspace::span(n, null_space_from_rref(&coeff_rows, &pivots, n));
    Ok(Some(AffineSolution { particular, kernel }))
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl TryFrom<Vec<Vec<Rational>>> for Matrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Matrix::from_rows(cols, rows)
    }
}

impl From<Matrix> for Vec<Vec<Rational>> {
    fn from(m: Matrix) -> Self {
        m.to_rows()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn solve_identity() {
        let sol = solve_linear(&Matrix::identity(3), &v(&[1, 2, 3]))
            .unwrap()
            .unwrap();
        assert_eq!(sol.particular, v(&[1, 2, 3]));
        assert_eq!(sol.kernel.dim(), 0);
    }

    #[test]
    fn solve_zero_map() {
        let sol = solve_linear(&Matrix::zeros(2, 2), &v(&[0, 0]))
            .unwrap()
            .unwrap();
        assert_eq!(sol.kernel.dim(), 2);
    }

    #[test]
    fn solve_rank_one_system() {
        let a = Matrix::from_i64(&[&[1, 1], &[2, 2]]);
        let sol = solve_linear(&a, &v(&[1, 2])).unwrap().unwrap();
        // substitution oracle
        assert_eq!(a.mul_vec(&sol.particular), v(&[1, 2]));
        assert_eq!(sol.particular, v(&[1, 0]));
        assert_eq!(sol.kernel.dim(), 1);
        assert!(sol.kernel.contains_vector(&v(&[1, -1])));
    }

    #[test]
    fn inconsistent_system_is_empty() {
        let a = Matrix::from_i64(&[&[1, 1], &[2, 2]]);
        assert!(solve_linear(&a, &v(&[1, 3])).unwrap().is_none());
        assert!(solve_linear(&a, &v(&[1])).is_err());
    }

    #[test]
    fn signature_examples() {
        assert_eq!(
            Matrix::identity(3).scale(&q(-2)).signature().unwrap(),
            (0, 3, 0)
        );
        assert_eq!(Matrix::zeros(4, 4).signature().unwrap(), (0, 0, 4));
        // hyperbolic plane needs the off-diagonal pivot branch
        let h = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(h.signature().unwrap(), (1, 1, 0));
        let ns = Matrix::from_i64(&[&[0, 1], &[2, 0]]);
        assert!(matches!(ns.signature(), Err(Error::NotSymmetric)));
    }

    #[test]
    fn charpoly_small() {
        // [[1,1],[0,1]] -> (x-1)^2
        let m = Matrix::from_i64(&[&[1, 1], &[0, 1]]);
        assert_eq!(m.charpoly(), Poly::from_i64(&[1, -2, 1]));
        // companion-like matrix needing row swaps
        let c = Matrix::from_i64(&[&[0, 0, 6], &[1, 0, -11], &[0, 1, 6]]);
        assert_eq!(c.charpoly(), Poly::from_i64(&[-6, 11, -6, 1]));
        let z = Matrix::from_i64(&[&[0, 0, 1], &[0, 0, 0], &[1, 0, 0]]);
        assert_eq!(z.charpoly(), Poly::from_i64(&[0, -1, 0, 1]));
    }

    #[test]
    fn inverse_and_determinant() {
        let m = Matrix::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(3));
        assert_eq!(m.determinant(), q(18));
        assert!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    fn small_matrix(n: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(-3i64..=3, n * n).prop_map(move |xs| {
            Matrix::new(n, n, xs.into_iter().map(Rational::from).collect()).unwrap()
        })
    }

    /// Cofactor expansion; independent of the elimination routines.
    fn det_by_cofactors(m: &Matrix) -> Rational {
        let n = m.rows();
        if n == 1 {
            return m[(0, 0)].clone();
        }
        (0..n)
            .map(|j| {
                let minor_rows: Vec<Vec<Rational>> = (1..n)
                    .map(|i| {
                        (0..n)
                            .filter(|&c| c != j)
                            .map(|c| m[(i, c)].clone())
                            .collect()
                    })
                    .collect();
                let minor = Matrix::from_rows(n - 1, minor_rows).unwrap();
                let s = if j % 2 == 0 { q(1) } else { q(-1) };
                s * &m[(0, j)] * det_by_cofactors(&minor)
            })
            .sum()
    }

    proptest! {
        #[test]
        fn charpoly_matches_determinant(m in small_matrix(4), t in -3i64..=3) {
            let shifted = Matrix::identity(4).scale(&q(t)).sub(&m);
            prop_assert_eq!(m.charpoly().eval(&q(t)), det_by_cofactors(&shifted));
            prop_assert_eq!(m.determinant(), det_by_cofactors(&m));
        }

        #[test]
        fn charpoly_routes_agree(
            m in small_matrix(5),
            dens in proptest::collection::vec(1i64..=12, 25),
        ) {
            let entries: Vec<Rational> = m.entries().iter().zip(&dens).map(|(x, d)| x * &Rational::new(1, *d)).collect();
            let m = Matrix::new(5, 5, entries).unwrap();
            prop_assert_eq!(m.charpoly_multimodular().unwrap(), m.charpoly_hessenberg());
        }

        #[test]
        fn solutions_resubstitute(m in small_matrix(4), x in proptest::collection::vec(-4i64..=4, 4)) {
            let x: Vec<Rational> = x.into_iter().map(Rational::from).collect();
            let b = m.mul_vec(&x);
            let sol = solve_linear(&m, &b).unwrap().expect("consistent by construction");
            prop_assert_eq!(m.mul_vec(&sol.particular), b);
            for k in sol.kernel.basis() {
                prop_assert!(m.mul_vec(k).iter().all(Rational::is_zero));
            }
            prop_assert_eq!(sol.kernel.dim() + m.rank(), 4);
        }

        #[test]
        fn signature_is_congruence_invariant(g in small_matrix(4), p in small_matrix(4)) {
            let sym = g.add(&g.transpose());
            prop_assume!(!p.determinant().is_zero());
            let s1 = sym.signature().unwrap();
            let s2 = sym.congruent(&p).signature().unwrap();
            prop_assert_eq!(s1, s2);
            prop_assert_eq!(s1.2, sym.kernel().dim());
        }
    }
}
