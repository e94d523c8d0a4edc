//! Null spaces by reduction modulo primes.
//!
//! The rank of a rational matrix modulo `p` never exceeds its rank over the
//! rationals, so a nullity computed modulo `p` bounds the exact nullity from
//! above.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::Rational;

/// Primes below `2^31`, so products of two residues fit in a `u64`.
const PRIMES: [u64; 24] = [
    2_147_483_647,
    2_147_483_629,
    2_147_483_587,
    2_147_483_579,
    2_147_483_563,
    2_147_483_549,
    2_147_483_543,
    2_147_483_497,
    2_147_483_489,
    2_147_483_477,
    2_147_483_423,
    2_147_483_399,
    2_147_483_353,
    2_147_483_323,
    2_147_483_269,
    2_147_483_249,
    2_147_483_237,
    2_147_483_179,
    2_147_483_171,
    2_147_483_137,
    2_147_483_123,
    2_147_483_077,
    2_147_483_069,
    2_147_483_059,
];

fn reduce_mod(x: &Rational, p: u64) -> Option<u64> {
    if x.is_zero() {
        return Some(0);
    }
    let big = BigInt::from(p);
    let num = (x.numer() % &big + &big) % &big;
    let den = (x.denom() % &big).to_u64()?;
    if den == 0 {
        return None;
    }
    Some(num.to_u64()? * inverse_mod(den, p) % p)
}

fn inverse_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

/// Null space basis modulo `p` in reduced form: one vector per free column
/// `f`, with a one at `f` and zeros on the other free columns. `None` if a
/// denominator vanishes modulo `p`.
fn null_space_mod(
    rows: &[Vec<Rational>],
    cols: usize,
    p: u64,
) -> Option<(Vec<usize>, Vec<Vec<u64>>)> {
    let mut reduced: Vec<Vec<u64>> = Vec::with_capacity(rows.len());
    for row in rows {
        reduced.push(
            row.iter()
                .map(|x| reduce_mod(x, p))
                .collect::<Option<_>>()?,
        );
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == reduced.len() {
            break;
        }
        let Some(k) = (r..reduced.len()).find(|&i| reduced[i][c] != 0) else {
            continue;
        };
        reduced.swap(k, r);
        let inv = inverse_mod(reduced[r][c], p);
        for x in reduced[r][c..].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = std::mem::take(&mut reduced[r]);
        for (i, row) in reduced.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = p - row[c];
            for (a, b) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if *b != 0 {
                    *a = (*a + f * b) % p;
                }
            }
        }
        reduced[r] = pivot_row;
        pivots.push(c);
        r += 1;
    }
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = (p - reduced[i][f]) % p;
            }
            v
        })
        .collect();
    Some((free, basis))
}

/// `n/d` with `n ≡ a d (mod m)` and `|n|, d` at most `sqrt(m/2)`.
fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1) = (r1, r2);
        (t0, t1) = (t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rational::from_bigints(r1, t1))
}

/// Null space of a rational system by reduction modulo several primes,
/// Chinese remaindering and rational reconstruction. `accept` receives each
/// reconstructed candidate basis and decides whether it is correct, for
/// instance by exact substitution. Returns `None` when the primes run out or
/// a stable reconstruction is rejected.
///
/// The modular nullity bounds the exact one from above, so an accepted set
/// of exact solutions of that size is a basis of the exact null space.
pub(crate) fn null_space_multimodular(
    rows: &[Vec<Rational>],
    cols: usize,
    mut accept: impl FnMut(&[Vec<Rational>]) -> bool,
) -> Option<Vec<Vec<Rational>>> {
    let mut free: Option<Vec<usize>> = None;
    let mut residues: Vec<Vec<BigInt>> = Vec::new();
    let mut modulus = BigInt::one();
    let mut previous: Option<Vec<Vec<Rational>>> = None;
    for &p in &PRIMES {
        let Some((f, basis)) = null_space_mod(rows, cols, p) else {
            continue;
        };
        match &free {
            // unlucky primes have smaller rank, hence more free columns
            Some(known) if f.len() > known.len() || (f.len() == known.len() && f != *known) => {
                continue
            }
            Some(known) if f.len() == known.len() => {
                let pm = BigInt::from(p);
                let inv = BigInt::from(inverse_mod((&modulus % &pm).to_u64()?, p));
                for (acc, v) in residues.iter_mut().flatten().zip(basis.iter().flatten()) {
                    // acc + modulus · ((v - acc) · modulus⁻¹ mod p)
                    let diff = (BigInt::from(*v) - &*acc).mod_floor(&pm);
                    *acc += &modulus * ((diff * &inv) % &pm);
                }
                modulus *= pm;
            }
            _ => {
                free = Some(f);
                residues = basis
                    .iter()
                    .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
                    .collect();
                modulus = BigInt::from(p);
                previous = None;
                continue;
            }
        }
        let candidate: Option<Vec<Vec<Rational>>> = residues
            .iter()
            .map(|v| {
                v.iter()
                    .map(|x| rational_reconstruction(x, &modulus))
                    .collect()
            })
            .collect();
        if let Some(c) = candidate {
            if previous.as_ref() == Some(&c) {
                return accept(&c).then_some(c);
            }
            previous = Some(c);
        }
    }
    None
}

/// Characteristic polynomial modulo `p` of a square matrix of residues, by
/// reduction to upper Hessenberg form. Coefficients low to high, monic.
fn charpoly_mod(mut h: Vec<Vec<u64>>, p: u64) -> Vec<u64> {
    let n = h.len();
    for m in 1..n {
        let Some(piv) = (m..n).find(|&i| h[i][m - 1] != 0) else {
            continue;
        };
        if piv != m {
            h.swap(piv, m);
            for row in h.iter_mut() {
                row.swap(piv, m);
            }
        }
        let inv = inverse_mod(h[m][m - 1], p);
        for j in m + 1..n {
            if h[j][m - 1] == 0 {
                continue;
            }
            let t = h[j][m - 1] * inv % p;
            let (top, bottom) = h.split_at_mut(j);
            for (x, y) in bottom[0][m - 1..].iter_mut().zip(&top[m][m - 1..]) {
                *x = (*x + (p - t) * y) % p;
            }
            for row in h.iter_mut() {
                if row[j] != 0 {
                    row[m] = (row[m] + t * row[j]) % p;
                }
            }
        }
    }
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        // (x - h[m-1][m-1]) · p_{m-1}
        let prev = &polys[m - 1];
        let mut next = vec![0u64; m + 1];
        for (k, c) in prev.iter().enumerate() {
            next[k + 1] = (next[k + 1] + c) % p;
            next[k] = (next[k] + (p - h[m - 1][m - 1]) * c) % p;
        }
        let mut prod = 1u64;
        for i in (1..m).rev() {
            prod = prod * h[i][i - 1] % p;
            if prod == 0 {
                break;
            }
            let c = h[i - 1][m - 1] * prod % p;
            for (k, q) in polys[i - 1].iter().enumerate() {
                next[k] = (next[k] + (p - c) * q) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().expect("n + 1 polynomials")
}

/// Characteristic polynomial of an `n × n` integer matrix by Chinese
/// remaindering over enough primes to cover the coefficient bound
/// `|c_k| ≤ C(n, k) β^k ≤ 2^n β^n`, with `β` the largest absolute row sum
/// bounding every eigenvalue. `None` when the primes do not suffice.
pub(crate) fn integer_charpoly(a: &[Vec<BigInt>]) -> Option<Vec<BigInt>> {
    let n = a.len();
    let beta = a
        .iter()
        .map(|row| row.iter().map(|x| x.abs()).sum::<BigInt>())
        .max()
        .unwrap_or_default()
        .max(BigInt::one());
    let bound = (BigInt::from(2u32) * beta).pow(n as u32) * 2u32;
    let mut modulus = BigInt::one();
    let mut acc = vec![BigInt::zero(); n + 1];
    for &p in &PRIMES {
        let pm = BigInt::from(p);
        let h: Vec<Vec<u64>> = a
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| x.mod_floor(&pm).to_u64().expect("residue"))
                    .collect()
            })
            .collect();
        let residues = charpoly_mod(h, p);
        let inv = BigInt::from(inverse_mod((&modulus % &pm).to_u64()?, p));
        for (c, r) in acc.iter_mut().zip(&residues) {
            let diff = (BigInt::from(*r) - &*c).mod_floor(&pm);
            *c += &modulus * ((diff * &inv) % &pm);
        }
        modulus *= pm;
        if modulus > bound {
            let half = &modulus / 2u32;
            return Some(
                acc.into_iter()
                    .map(|c| if c > half { c - &modulus } else { c })
                    .collect(),
            );
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstruction_recovers_small_fractions() {
        let m = BigInt::from(PRIMES[0]) * BigInt::from(PRIMES[1]);
        for (n, d) in [(3i64, 7i64), (-5, 12), (0, 1), (123_456, 789)] {
            let x = Rational::new(n, d);
            let a = BigInt::from(reduce_mod(&x, PRIMES[0]).unwrap());
            let b = BigInt::from(reduce_mod(&x, PRIMES[1]).unwrap());
            // combine by brute CRT
            let p0 = BigInt::from(PRIMES[0]);
            let p1 = BigInt::from(PRIMES[1]);
            let inv = BigInt::from(inverse_mod(PRIMES[0] % PRIMES[1], PRIMES[1]));
            let combined = &a + &p0 * (((&b - &a).mod_floor(&p1) * inv) % &p1);
            assert_eq!(rational_reconstruction(&combined, &m), Some(x));
        }
    }

    #[test]
    fn integer_charpoly_of_companion_matrix() {
        // companion matrix of x^3 - 2x^2 - 5x + 6
        let a: Vec<Vec<BigInt>> = [[0, 0, -6], [1, 0, 5], [0, 1, 2]]
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let c = integer_charpoly(&a).unwrap();
        assert_eq!(c, [6, -5, -2, 1].map(BigInt::from).to_vec());
    }

    #[test]
    fn multimodular_null_space_matches_exact() {
        let rows: Vec<Vec<Rational>> = vec![
            vec![
                Rational::new(1, 3),
                Rational::new(-2, 5),
                Rational::from(7),
                Rational::zero(),
            ],
            vec![
                Rational::from(2),
                Rational::new(1, 9),
                Rational::zero(),
                Rational::new(-4, 11),
            ],
        ];
        let exact = super::super::matrix::null_space(rows.clone(), 4);
        let found = null_space_multimodular(&rows, 4, |_| true).unwrap();
        assert_eq!(found, exact);
    }
}
