//! Seeded random instances for round-trip and property tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::classical::{build_cotangent, build_sl2, build_so, coadjoint_action, semidirect};
use super::irreps::{build_sl2_irrep, build_so3_irrep};
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{Matrix, Rational, Subspace};
use crate::metric::SymBilinearForm;

/// A random unimodular integer matrix and its inverse: a column permutation
/// followed by about `2n` elementary shears with coefficients `±1`.
pub fn unimodular_scramble<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (Matrix, Matrix) {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut p = Matrix::zeros(n, n);
    for (col, &row) in perm.iter().enumerate() {
        p[(row, col)] = Rational::one();
    }
    if n > 1 {
        for _ in 0..2 * n {
            let i = rng.random_range(0..n);
            let mut j = rng.random_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let s = Rational::from(if rng.random_bool(0.5) { 1 } else { -1 });
            // column j += s * column i
            for r in 0..n {
                let add = &p[(r, i)] * &s;
                p[(r, j)] += &add;
            }
        }
    }
    let inv = p.inverse().expect("unimodular");
    (p, inv)
}

/// Block shape of a random instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Profile {
    /// `K ⋉ V`, `K` a product of `so(3)` factors, `V` adjoint copies plus a
    /// trivial part.
    EuclideanType,
    /// `L ⋉ L*` for a random product `L` of `so(3)` and `sl(2)` factors.
    Cotangent,
    /// `(K ⋉ A) × S0 × (S1 ⋉ S1*)`.
    MixedThreeFactor,
}

impl Profile {
    pub const ALL: [Profile; 3] = [
        Profile::EuclideanType,
        Profile::Cotangent,
        Profile::MixedThreeFactor,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Profile::EuclideanType => "euclidean-type",
            Profile::Cotangent => "cotangent",
            Profile::MixedThreeFactor => "mixed-three-factor",
        }
    }

    pub fn parse(name: &str) -> Option<Profile> {
        Profile::ALL.into_iter().find(|p| p.name() == name)
    }
}

/// Dimension and Killing signature of one constructed factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorFingerprint {
    pub dim: usize,
    pub killing_signature: (usize, usize, usize),
}

impl FactorFingerprint {
    pub fn of(g: &LieAlgebra) -> Self {
        FactorFingerprint {
            dim: g.dim(),
            killing_signature: g.killing_form().signature(),
        }
    }

    pub fn empty() -> Self {
        FactorFingerprint {
            dim: 0,
            killing_signature: (0, 0, 0),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RandomInstance {
    pub profile: Profile,
    pub seed: u64,
    /// Scrambled algebra and form.
    pub algebra: LieAlgebra,
    pub form: SymBilinearForm,
    /// Fingerprints of the blocks placed in the first, second and third
    /// factor of the abelian-radical decomposition.
    pub factors: [FactorFingerprint; 3],
    /// `(L, L*)` in scrambled coordinates, for the cotangent profile.
    pub cotangent_split: Option<(Subspace, Subspace)>,
    /// Columns are the new basis in old coordinates.
    pub basis_change: Matrix,
    /// Signature of the unscrambled Gram matrix.
    pub block_signature: (usize, usize, usize),
    /// The assembled instance before the basis change.
    pub unscrambled: (LieAlgebra, SymBilinearForm),
}

/// A block algebra with its form, before assembly.
struct Block {
    algebra: LieAlgebra,
    form: SymBilinearForm,
}

impl Block {
    fn product(blocks: &[Block]) -> Block {
        let mut it = blocks.iter();
        let first = it.next().expect("at least one block");
        it.fold(
            Block {
                algebra: first.algebra.clone(),
                form: first.form.clone(),
            },
            |acc, b| Block {
                algebra: acc.algebra.direct_product(&b.algebra),
                form: acc.form.direct_sum(&b.form),
            },
        )
    }
}

fn small_nonzero<R: Rng>(rng: &mut R) -> Rational {
    const CHOICES: [(i64, i64); 6] = [(1, 1), (2, 1), (-1, 1), (1, 2), (-2, 1), (3, 1)];
    let (p, q) = CHOICES[rng.random_range(0..CHOICES.len())];
    Rational::new(p, q)
}

fn small<R: Rng>(rng: &mut R) -> Rational {
    Rational::from(rng.random_range(-2i64..=2))
}

/// `K ⋉ (V1 ⊕ V0)` with `K = so(3)^k`, `V1` an optional coadjoint copy per
/// factor and `V0` trivial of dimension `t`. Nil-invariance forces
/// `V1 ⊥ V` and a `K × V1` pairing that is invariant, here the scaled dual
/// pairing; the `K × K`, `K × V0` and `V0 × V0` blocks are free.
fn euclidean_block<R: Rng>(rng: &mut R, factors: usize, max_trivial: usize) -> Block {
    let so3 = build_so(3).expect("n = 3");
    let coad = coadjoint_action(&so3);
    let adjoint: Vec<bool> = (0..factors).map(|_| rng.random_bool(0.6)).collect();
    let t = rng.random_range(0..=max_trivial);
    let kdim = 3 * factors;
    let v1dim = 3 * adjoint.iter().filter(|&&a| a).count();
    let vdim = v1dim + t;
    let n = kdim + vdim;

    let mut k = so3.clone();
    for _ in 1..factors {
        k = k.direct_product(&so3);
    }
    let mut k_labels = Vec::new();
    for f in 0..factors {
        for i in 1..=3 {
            k_labels.push(format!("k{}_{i}", f + 1));
        }
    }
    let k = k.with_labels(k_labels).expect("3 per factor");

    // action of each basis element of K on V = V1 ⊕ V0
    let mut action = vec![Matrix::zeros(vdim, vdim); kdim];
    let mut offset = 0;
    let mut v_labels = Vec::new();
    let mut pairing_rows = Vec::new();
    for (f, &has) in adjoint.iter().enumerate() {
        if !has {
            continue;
        }
        for (i, m) in coad.iter().enumerate() {
            for r in 0..3 {
                for c in 0..3 {
                    action[3 * f + i][(offset + r, offset + c)] = m[(r, c)].clone();
                }
            }
        }
        for i in 1..=3 {
            v_labels.push(format!("u{}_{i}", f + 1));
        }
        pairing_rows.push((f, offset));
        offset += 3;
    }
    for i in 1..=t {
        v_labels.push(format!("w{i}"));
    }
    let algebra =
        semidirect(&k, &action, v_labels).expect("coadjoint copies form a representation");

    let mut gram = Matrix::zeros(n, n);
    let set = |g: &mut Matrix, a: usize, b: usize, v: Rational| {
        g[(a, b)] = v.clone();
        g[(b, a)] = v;
    };
    for a in 0..kdim {
        for b in a..kdim {
            let v = if a == b {
                small_nonzero(rng)
            } else {
                small(rng)
            };
            set(&mut gram, a, b, v);
        }
    }
    for (f, off) in pairing_rows {
        let c = small_nonzero(rng);
        for i in 0..3 {
            set(&mut gram, 3 * f + i, kdim + off + i, c.clone());
        }
    }
    for a in 0..kdim {
        for w in 0..t {
            set(&mut gram, a, kdim + v1dim + w, small(rng));
        }
    }
    for w in 0..t {
        for x in w..t {
            let v = if w == x {
                small_nonzero(rng)
            } else {
                small(rng)
            };
            set(&mut gram, kdim + v1dim + w, kdim + v1dim + x, v);
        }
    }
    Block {
        algebra,
        form: SymBilinearForm::new(gram).expect("symmetric by construction"),
    }
}

/// `sl(2)` with a nonzero multiple of its Killing form.
fn noncompact_simple_block<R: Rng>(rng: &mut R, tag: usize) -> Block {
    let sl2 = build_sl2()
        .with_labels(vec![
            format!("e{tag}"),
            format!("h{tag}"),
            format!("f{tag}"),
        ])
        .expect("dim 3");
    let form = sl2.killing_form().scale(&small_nonzero(rng));
    Block { algebra: sl2, form }
}

/// `L ⋉ L*` with a scaled pairing plus a multiple of the Killing form of
/// `L` on `L × L`; both are invariant and `L*` stays totally isotropic.
fn cotangent_block<R: Rng>(rng: &mut R, l: &LieAlgebra) -> Block {
    let (algebra, pairing) = build_cotangent(l);
    let d = l.dim();
    let mut extra = Matrix::zeros(2 * d, 2 * d);
    let kappa = l.killing_form().scale(&small(rng));
    for a in 0..d {
        for b in 0..d {
            extra[(a, b)] = kappa.gram()[(a, b)].clone();
        }
    }
    let form = pairing
        .scale(&small_nonzero(rng))
        .add(&SymBilinearForm::new(extra).expect("symmetric"))
        .expect("same dimension");
    Block { algebra, form }
}

fn simple_factor(compact: bool, tag: usize) -> LieAlgebra {
    if compact {
        build_so(3)
            .expect("n = 3")
            .with_labels((1..=3).map(|i| format!("k{tag}_{i}")).collect())
            .expect("dim 3")
    } else {
        build_sl2()
            .with_labels(vec![
                format!("e{tag}"),
                format!("h{tag}"),
                format!("f{tag}"),
            ])
            .expect("dim 3")
    }
}

const ATTEMPTS: usize = 64;

/// Deterministic random instance of the given profile. Blocks are drawn until
/// the assembled form is effective, then the basis is scrambled.
pub fn random_instance(seed: u64, profile: Profile) -> Result<RandomInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((profile as u64) << 32));
    for _ in 0..ATTEMPTS {
        let (blocks, placement, split) = draw_blocks(&mut rng, profile);
        let assembled = Block::product(&blocks);
        let kernel = assembled.form.kernel();
        if !assembled.algebra.largest_ideal_in(&kernel)?.is_zero() {
            continue;
        }
        let mut factors = [FactorFingerprint::empty(); 3];
        #[allow(clippy::needless_range_loop)] // slot is compared against placements
        for slot in 0..3 {
            let members: Vec<Block> = blocks
                .iter()
                .zip(&placement)
                .filter(|(_, &p)| p == slot)
                .map(|(b, _)| Block {
                    algebra: b.algebra.clone(),
                    form: b.form.clone(),
                })
                .collect();
            if !members.is_empty() {
                factors[slot] = FactorFingerprint::of(&Block::product(&members).algebra);
            }
        }
        let n = assembled.algebra.dim();
        let (p, pinv) = unimodular_scramble(n, &mut rng);
        let algebra = assembled.algebra.change_basis(&p)?;
        let form = assembled.form.change_basis(&p);
        let transport = |s: &Subspace| s.map(&pinv);
        return Ok(RandomInstance {
            profile,
            seed,
            block_signature: assembled.form.signature(),
            algebra,
            form,
            factors,
            cotangent_split: split.map(|(l, d)| (transport(&l), transport(&d))),
            basis_change: p,
            unscrambled: (assembled.algebra, assembled.form),
        });
    }
    Err(Error::Unsupported(format!(
        "no effective {} instance after {ATTEMPTS} draws for seed {seed}",
        profile.name()
    )))
}

type Draw = (Vec<Block>, Vec<usize>, Option<(Subspace, Subspace)>);

fn draw_blocks<R: Rng>(rng: &mut R, profile: Profile) -> Draw {
    match profile {
        Profile::EuclideanType => {
            let factors = rng.random_range(1..=2);
            (vec![euclidean_block(rng, factors, 3)], vec![0], None)
        }
        Profile::Cotangent => {
            // one cotangent block per simple factor of L, compact factors
            // first; compact blocks land in the first factor, the others in
            // the third
            let mut kinds: Vec<bool> = (0..rng.random_range(1..=2))
                .map(|_| rng.random_bool(0.5))
                .collect();
            kinds.sort_by_key(|&compact| !compact);
            let blocks: Vec<Block> = kinds
                .iter()
                .enumerate()
                .map(|(i, &c)| cotangent_block(rng, &simple_factor(c, i + 1)))
                .collect();
            let placement = kinds.iter().map(|&c| if c { 0 } else { 2 }).collect();
            let (mut lower, mut dual, mut offset) = (Vec::new(), Vec::new(), 0);
            for b in &blocks {
                let d = b.algebra.dim() / 2;
                lower.extend(offset..offset + d);
                dual.extend(offset + d..offset + 2 * d);
                offset += 2 * d;
            }
            let split = (
                Subspace::coordinate(offset, lower),
                Subspace::coordinate(offset, dual),
            );
            (blocks, placement, Some(split))
        }
        Profile::MixedThreeFactor => {
            let g1 = euclidean_block(rng, 1, 3);
            let mut blocks = vec![g1];
            let mut placement = vec![0];
            for tag in 1..=rng.random_range(1..=2) {
                blocks.push(noncompact_simple_block(rng, tag));
                placement.push(1);
            }
            let s1 = simple_factor(false, 9);
            blocks.push(cotangent_block(rng, &s1));
            placement.push(2);
            (blocks, placement, None)
        }
    }
}

/// A scrambled semidirect product `levi ⋉ V` with `V` abelian.
#[derive(Debug, Clone)]
pub struct RandomSemidirect {
    pub algebra: LieAlgebra,
    pub levi_dim: usize,
    pub radical_dim: usize,
}

/// Levi factor: one to three factors from `so(3)`, `sl(2)`. Module: one to
/// three irreducibles of randomly chosen factors; total dimension at most
/// `max_dim`.
pub fn random_semidirect(seed: u64, max_dim: usize) -> Result<RandomSemidirect> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nfactors = rng.random_range(1..=3usize).min(max_dim / 3);
    if nfactors == 0 {
        return Err(Error::InvalidArgument("max_dim must be at least 3".into()));
    }
    let kinds: Vec<bool> = (0..nfactors).map(|_| rng.random_bool(0.5)).collect();
    let mut levi = simple_factor(kinds[0], 1);
    for (i, &c) in kinds.iter().enumerate().skip(1) {
        levi = levi.direct_product(&simple_factor(c, i + 1));
    }
    let mut budget = max_dim - levi.dim();
    // (factor, irrep matrices)
    let mut modules: Vec<(usize, Vec<Matrix>)> = Vec::new();
    for _ in 0..rng.random_range(1..=3) {
        let f = rng.random_range(0..nfactors);
        let rho = if kinds[f] {
            build_so3_irrep(rng.random_range(0..=2))
        } else {
            build_sl2_irrep(rng.random_range(0..=3))
        };
        let d = rho[0].rows();
        if d <= budget {
            budget -= d;
            modules.push((f, rho));
        }
    }
    let vdim: usize = modules.iter().map(|(_, r)| r[0].rows()).sum();
    let mut action = vec![Matrix::zeros(vdim, vdim); levi.dim()];
    let mut offset = 0;
    for (f, rho) in &modules {
        let d = rho[0].rows();
        for (i, m) in rho.iter().enumerate() {
            for r in 0..d {
                for c in 0..d {
                    action[3 * f + i][(offset + r, offset + c)] = m[(r, c)].clone();
                }
            }
        }
        offset += d;
    }
    let labels = (1..=vdim).map(|i| format!("v{i}")).collect();
    let g = semidirect(&levi, &action, labels)?;
    let (p, _) = unimodular_scramble(g.dim(), &mut rng);
    Ok(RandomSemidirect {
        algebra: g.change_basis(&p)?,
        levi_dim: levi.dim(),
        radical_dim: vdim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scramble_is_unimodular_and_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [1, 2, 5, 9] {
            let (p, q) = unimodular_scramble(n, &mut rng);
            assert_eq!(p.mul(&q), Matrix::identity(n));
            assert_eq!(p.determinant().abs(), Rational::one());
        }
    }

    #[test]
    fn instances_are_deterministic() {
        for profile in Profile::ALL {
            let a = random_instance(5, profile).unwrap();
            let b = random_instance(5, profile).unwrap();
            assert_eq!(a.algebra, b.algebra);
            assert_eq!(a.form, b.form);
            assert_eq!(a.form.signature(), a.block_signature);
        }
    }

    #[test]
    fn mixed_instances_stay_small() {
        for seed in 0..10 {
            let inst = random_instance(seed, Profile::MixedThreeFactor).unwrap();
            assert!(inst.algebra.dim() <= 24);
            assert!(inst.factors.iter().all(|f| f.dim > 0));
            assert_eq!(
                inst.factors.iter().map(|f| f.dim).sum::<usize>(),
                inst.algebra.dim()
            );
        }
    }

    #[test]
    fn semidirect_products_have_abelian_radical() {
        for seed in 0..5 {
            let s = random_semidirect(seed, 20).unwrap();
            assert!(s.algebra.dim() <= 20);
            let r = s.algebra.radical();
            assert_eq!(r.dim(), s.radical_dim);
            assert!(r.is_abelian);
        }
    }

    #[test]
    fn profile_names_round_trip() {
        for p in Profile::ALL {
            assert_eq!(Profile::parse(p.name()), Some(p));
        }
    }
}
