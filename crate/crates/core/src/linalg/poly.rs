//! Dense univariate polynomials over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::Matrix;
use super::rational::{common_denominator, Rational};
use crate::error::{Error, Result};

/// Coefficients stored lowest degree first, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

/// Irreducible factors with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    /// Leading coefficient of the input; the factors are monic.
    pub unit: Rational,
    pub factors: Vec<(Poly, usize)>,
    /// False when some factor was too large for the small-degree search to
    /// certify irreducible.
    pub certified: bool,
}

impl Poly {
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `x - r`
    pub fn linear(r: &Rational) -> Self {
        Self::from_coeffs(vec![-r, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.leading().recip())
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = Rational::zero();
        Poly::from_coeffs(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&Rational::from(-1)))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        Poly::from_coeffs(out)
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let d = divisor.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Poly::zero(), self.clone());
        }
        let lead_inv = divisor.leading().recip();
        let mut quot = vec![Rational::zero(); rem.len() - d];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + d] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    rem[k + j] -= &(&c * b);
                }
            }
            quot[k] = c;
        }
        rem.truncate(d);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.div_rem(self).1.is_zero()
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow(&self, e: usize) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Rational::from(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| &(&acc * x) + c)
    }

    /// `p(M)` by Horner's rule.
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        assert!(m.is_square());
        let n = m.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m);
            if !c.is_zero() {
                for i in 0..n {
                    acc[(i, i)] += c;
                }
            }
        }
        acc
    }

    /// `p / gcd(p, p')`, monic.
    pub fn squarefree_part(&self) -> Result<Poly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative());
        Ok(self.div_rem(&g).0.monic())
    }

    /// Yun's algorithm: monic `a_i` with `p = lc · Π a_i^i`, squarefree and
    /// pairwise coprime. Entry `k` of the result is `a_{k+1}`.
    pub fn squarefree_decomposition(&self) -> Result<Vec<Poly>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let f = self.monic();
        let mut out = Vec::new();
        if f.degree() == Some(0) {
            return Ok(out);
        }
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        while b.degree() != Some(0) {
            let a = b.gcd(&d);
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            out.push(a);
        }
        Ok(out)
    }

    /// Integer multiple with coprime integer coefficients and positive
    /// leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let den = common_denominator(&self.coeffs);
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let sign = if self.leading().signum() < 0 { -1 } else { 1 };
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|x| x / &g * sign).collect()
    }

    /// All rational roots, without multiplicity, in increasing order.
    /// Returns `None` when a coefficient is too large to enumerate divisors.
    pub fn rational_roots(&self) -> Option<Vec<Rational>> {
        if self.is_zero() {
            return Some(Vec::new());
        }
        let mut roots = Vec::new();
        let mut p = self.clone();
        // strip the root 0
        let zeros = p.coeffs.iter().take_while(|c| c.is_zero()).count();
        if zeros > 0 {
            roots.push(Rational::zero());
            p = Poly::from_coeffs(p.coeffs[zeros..].to_vec());
        }
        if p.degree().unwrap_or(0) == 0 {
            return Some(roots);
        }
        let ints = p.primitive_integer();
        let lead = divisors(ints.last().unwrap())?;
        let constant = divisors(&ints[0])?;
        for num in &constant {
            for den in &lead {
                for sign in [1i64, -1] {
                    let cand = Rational::from_bigints(num * sign, den.clone());
                    if !roots.contains(&cand) && p.eval(&cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
        roots.sort();
        Some(roots)
    }

    /// Factorization into monic irreducibles over the rationals: squarefree
    /// decomposition, rational roots, then a Kronecker search for factors of
    /// degree 2 and 3. Factors of degree up to 7 are certified irreducible.
    pub fn factor(&self) -> Result<Factorization> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut factors = Vec::new();
        let mut certified = true;
        for (k, part) in self.squarefree_decomposition()?.into_iter().enumerate() {
            let mult = k + 1;
            if part.degree() == Some(0) {
                continue;
            }
            let mut rest = part;
            match rest.rational_roots() {
                Some(roots) => {
                    for r in roots {
                        let lin = Poly::linear(&r);
                        rest = rest.div_rem(&lin).0;
                        factors.push((lin, mult));
                    }
                }
                None => certified = false,
            }
            let mut pending = vec![rest];
            while let Some(q) = pending.pop() {
                let deg = q.degree().unwrap_or(0);
                if deg == 0 {
                    continue;
                }
                if deg <= 3 && certified_no_linear(&q) {
                    factors.push((q.monic(), mult));
                    continue;
                }
                match kronecker_factor(&q, 3.min(deg / 2)) {
                    KroneckerResult::Found(f) => {
                        let g = q.div_rem(&f).0;
                        pending.push(f);
                        pending.push(g);
                    }
                    KroneckerResult::NoneUpTo(max_deg) => {
                        if deg > 2 * max_deg + 1 {
                            certified = false;
                        }
                        factors.push((q.monic(), mult));
                    }
                }
            }
        }
        factors.sort_by(|a, b| {
            (a.0.degree(), &a.0.coeffs)
                .cmp(&(b.0.degree(), &b.0.coeffs))
                .then(a.1.cmp(&b.1))
        });
        Ok(Factorization {
            unit: self.leading(),
            factors,
            certified,
        })
    }
}

/// A polynomial of degree ≤ 3 without rational roots is irreducible.
fn certified_no_linear(q: &Poly) -> bool {
    q.degree() == Some(1) || q.rational_roots().is_some_and(|r| r.is_empty())
}

enum KroneckerResult {
    Found(Poly),
    /// No factor of degree `2..=d`.
    NoneUpTo(usize),
}

const KRONECKER_BUDGET: usize = 2_000_000;

/// Kronecker's method restricted to factor degrees `2..=max_deg`. The input
/// must have no rational roots, so it never vanishes at an integer.
fn kronecker_factor(q: &Poly, max_deg: usize) -> KroneckerResult {
    let mut searched = 1;
    // integer-coefficient multiple; its factors agree with those of q
    let integral = Poly::from_coeffs(
        q.primitive_integer()
            .into_iter()
            .map(Rational::from_bigint)
            .collect(),
    );
    for deg in 2..=max_deg {
        // points with the fewest divisors keep the search small
        let mut samples: Vec<(i64, BigInt, usize)> = (-12i64..=12)
            .filter_map(|x| {
                let value = integral.eval(&Rational::from(x)).numer();
                let d = divisors(&value)?.len();
                Some((x, value, d))
            })
            .collect();
        samples.sort_by_key(|s| s.2);
        samples.truncate(deg + 1);
        if samples.len() < deg + 1 {
            return KroneckerResult::NoneUpTo(searched);
        }
        let choices: Vec<Vec<BigInt>> = samples
            .iter()
            .enumerate()
            .map(|(i, (_, v, _))| {
                let ds = divisors(v).unwrap();
                if i == 0 {
                    // factors are determined up to sign
                    ds
                } else {
                    ds.iter().flat_map(|d| [d.clone(), -d]).collect()
                }
            })
            .collect();
        let total: usize = choices.iter().map(Vec::len).product();
        if total > KRONECKER_BUDGET {
            return KroneckerResult::NoneUpTo(searched);
        }
        let xs: Vec<Rational> = samples.iter().map(|s| Rational::from(s.0)).collect();
        let mut idx = vec![0usize; choices.len()];
        loop {
            let ys: Vec<Rational> = idx
                .iter()
                .zip(&choices)
                .map(|(&i, c)| Rational::from_bigint(c[i].clone()))
                .collect();
            let cand = interpolate(&xs, &ys);
            if cand.degree() == Some(deg)
                && cand.coeffs().iter().all(Rational::is_integer)
                && cand.divides(q)
            {
                return KroneckerResult::Found(cand.monic());
            }
            // odometer increment
            let mut k = 0;
            loop {
                if k == idx.len() {
                    break;
                }
                idx[k] += 1;
                if idx[k] < choices[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
        searched = deg;
    }
    KroneckerResult::NoneUpTo(searched)
}

fn interpolate(xs: &[Rational], ys: &[Rational]) -> Poly {
    let mut acc = Poly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = Poly::one();
        let mut denom = Rational::one();
        for (j, xj) in xs.iter().enumerate() {
            if j != i {
                basis = basis.mul(&Poly::linear(xj));
                denom *= &(xi - xj);
            }
        }
        acc = acc.add(&basis.scale(&(yi / &denom)));
    }
    acc
}

const TRIAL_DIVISION_LIMIT: u64 = 1 << 40;

/// Positive divisors of `n` (with `|n|` used), by trial division. `None` if
/// `|n|` is zero or too large to factor here.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let m = n.abs().to_u64()?;
    if m == 0 || m > TRIAL_DIVISION_LIMIT {
        return None;
    }
    let mut primes: Vec<(u64, u32)> = Vec::new();
    let mut rest = m;
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            primes.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        primes.push((rest, 1));
    }
    let mut out = vec![1u64];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            let mut pk = 1u64;
            for _ in 0..=e {
                next.push(d * pk);
                pk *= p;
            }
        }
        out = next;
    }
    out.sort_unstable();
    Some(out.into_iter().map(BigInt::from).collect())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.signum() < 0;
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::one()
    }
}

impl std::ops::Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        Poly::mul(&self, &rhs)
    }
}
