//! Exact rank over the rationals.
//!
//! Two independent engines:
//!
//! * [`bareiss_rank`]: fraction-free Gaussian elimination on a dense copy with
//!   arbitrary-precision integers. Every intermediate entry is a minor of the
//!   input, so all divisions are exact. Cost grows quickly with size, so it is
//!   reserved for small matrices.
//! * [`modular_rank`]: sparse elimination over `Z/p` for a prime `p`. For any
//!   prime, `rank_p(M) <= rank_Q(M)`; equality fails only when `p` divides
//!   every nonzero maximal minor.
//!
//! [`RankEngine`] picks Bareiss below a size budget and the multi-prime
//! modular engine above it. A modular rank equal to `min(rows, cols)` is
//! exact. A deficient one is the maximum over all configured primes.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::matrix::SparseMatrix;

/// Rank by fraction-free elimination, pivoting on the smallest nonzero
/// magnitude in each column.
pub fn bareiss_rank(m: &SparseMatrix) -> usize {
    let (nr, nc) = m.shape();
    if nr == 0 || nc == 0 || m.nnz() == 0 {
        return 0;
    }
    // Eliminate along the shorter side.
    let mut a = if nr >= nc {
        m.transpose().to_dense()
    } else {
        m.to_dense()
    };
    let (nr, nc) = (a.len(), a[0].len());
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..nc {
        if rank == nr {
            break;
        }
        let pivot = (rank..nr)
            .filter(|&i| !a[i][c].is_zero())
            .min_by(|&i, &j| a[i][c].magnitude().cmp(a[j][c].magnitude()));
        let Some(p) = pivot else { continue };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let prow = &top[rank];
        let pv = &prow[c];
        for row in rest.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..nc {
                let mut v = pv * &row[j];
                if !factor.is_zero() && !prow[j].is_zero() {
                    v -= &factor * &prow[j];
                }
                if !prev.is_one() && !v.is_zero() {
                    v = v.div_floor(&prev);
                }
                row[j] = v;
            }
        }
        prev = prow[c].clone();
        rank += 1;
    }
    rank
}

/// Rank over `Z/p` by sparse row reduction. `p` must be a prime below `2^32`.
///
/// Each column of `m` is reduced against the pivots found so far, with
/// positions scanned from the last row upward; a column that survives
/// becomes a new pivot keyed by its leading position.
pub fn modular_rank(m: &SparseMatrix, p: u64) -> usize {
    eliminate(m, p, false).rank
}

struct Elimination {
    rank: usize,
    /// `x` with `m x = 0 (mod p)`, unfolded from the first column that
    /// reduced to zero. Only produced when recording.
    dependency: Option<Vec<u64>>,
}

fn residue_columns(m: &SparseMatrix, p: u64, keep_empty: bool) -> Vec<(usize, Vec<(u32, u64)>)> {
    let nr = m.rows();
    let mut vectors: Vec<(usize, Vec<(u32, u64)>)> = m
        .columns()
        .iter()
        .enumerate()
        .map(|(j, col)| {
            let mut v: Vec<(u32, u64)> = col
                .iter()
                .map(|(r, x)| ((nr - 1 - r) as u32, reduce(x, p)))
                .filter(|e| e.1 != 0)
                .collect();
            v.sort_unstable_by_key(|e| e.0);
            (j, v)
        })
        .filter(|(_, v)| keep_empty || !v.is_empty())
        .collect();
    vectors.sort_by_key(|(_, v)| v.len());
    vectors
}

/// Sparse elimination modulo `p`. With `record`, the multipliers used to
/// build each pivot are kept so the first dependency among the columns can
/// be written back in terms of the original columns.
fn eliminate(m: &SparseMatrix, p: u64, record: bool) -> Elimination {
    assert!(p > 1 && p < (1 << 32), "modulus must fit in 32 bits");
    let (nr, nc) = m.shape();
    let limit = nr.min(nc);
    let vectors = residue_columns(m, p, record);

    // pivot_at[pos] = id of the pivot whose leading entry (equal to 1) is at pos
    let mut pivot_at = vec![u32::MAX; nr];
    let mut tails: Vec<Vec<(u32, u64)>> = Vec::new();
    let mut origin: Vec<usize> = Vec::new();
    let mut inverses: Vec<u64> = Vec::new();
    let mut records: Vec<Vec<(u32, u64)>> = Vec::new();
    let mut dependency = None;

    let mut acc = vec![0u64; nr];
    let mut heap: BinaryHeap<Reverse<u32>> = BinaryHeap::new();
    let mut steps: Vec<(u32, u64)> = Vec::new();
    for (col, v) in vectors {
        let recording = record && dependency.is_none();
        if tails.len() == limit && !recording {
            break;
        }
        heap.clear();
        steps.clear();
        for &(c, x) in &v {
            acc[c as usize] = x;
            heap.push(Reverse(c));
        }
        let mut lead: Option<(u32, u64)> = None;
        let mut tail: Vec<(u32, u64)> = Vec::new();
        let mut last = u32::MAX;
        while let Some(Reverse(c)) = heap.pop() {
            if c == last {
                continue;
            }
            last = c;
            let x = acc[c as usize];
            acc[c as usize] = 0;
            if x == 0 {
                continue;
            }
            if lead.is_some() {
                tail.push((c, x));
                continue;
            }
            match pivot_at[c as usize] {
                u32::MAX => lead = Some((c, x)),
                id => {
                    let factor = p - x;
                    if recording {
                        steps.push((id, factor));
                    }
                    for &(pc, pv) in &tails[id as usize] {
                        let slot = &mut acc[pc as usize];
                        if *slot == 0 {
                            heap.push(Reverse(pc));
                        }
                        *slot = (*slot + factor * pv) % p;
                    }
                }
            }
        }
        if let Some((c, x)) = lead {
            let inv = mod_inverse(x, p);
            for e in &mut tail {
                e.1 = e.1 * inv % p;
            }
            pivot_at[c as usize] = tails.len() as u32;
            tails.push(tail);
            if recording {
                origin.push(col);
                inverses.push(inv);
                records.push(steps.clone());
            }
        } else if recording {
            dependency = Some(unfold(nc, col, &steps, &origin, &inverses, &records, p));
        }
    }
    Elimination {
        rank: tails.len(),
        dependency,
    }
}

/// Rewrites `v + sum f * pivot = 0` in terms of original columns. Pivot `k`
/// equals `inv_k * (column_k + sum of its own recorded multiples of older
/// pivots)`, so pivots are expanded newest first.
fn unfold(
    nc: usize,
    col: usize,
    steps: &[(u32, u64)],
    origin: &[usize],
    inverses: &[u64],
    records: &[Vec<(u32, u64)>],
    p: u64,
) -> Vec<u64> {
    let mut x = vec![0u64; nc];
    x[col] = 1;
    let mut coef = vec![0u64; origin.len()];
    for &(id, f) in steps {
        coef[id as usize] = (coef[id as usize] + f) % p;
    }
    for id in (0..origin.len()).rev() {
        if coef[id] == 0 {
            continue;
        }
        let w = coef[id] * inverses[id] % p;
        x[origin[id]] = (x[origin[id]] + w) % p;
        for &(older, f) in &records[id] {
            let slot = &mut coef[older as usize];
            *slot = (*slot + w * f) % p;
        }
    }
    x
}

/// Combines modular kernel vectors by CRT and tries to lift the result to
/// a rational vector, accepted only if it is an exact kernel vector.
struct KernelLift<'a> {
    m: &'a SparseMatrix,
    modulus: BigInt,
    residues: Vec<BigInt>,
}

impl<'a> KernelLift<'a> {
    fn new(m: &'a SparseMatrix) -> Self {
        Self {
            m,
            modulus: BigInt::one(),
            residues: Vec::new(),
        }
    }

    fn add(&mut self, x: &[u64], p: u64) -> Option<Vec<BigInt>> {
        let same_support = self.residues.len() == x.len()
            && self
                .residues
                .iter()
                .zip(x)
                .all(|(a, &b)| a.is_zero() == (b == 0));
        if !same_support {
            // a different dependency; residues from other primes don't combine
            self.modulus = BigInt::one();
            self.residues = vec![BigInt::zero(); x.len()];
        }
        let bp = BigInt::from(p);
        let n_inv = BigInt::from(mod_inverse(reduce(&self.modulus, p), p));
        for (a, &b) in self.residues.iter_mut().zip(x) {
            let t = ((BigInt::from(b) - &*a) * &n_inv).mod_floor(&bp);
            *a += &self.modulus * t;
        }
        self.modulus *= &bp;
        self.lift()
    }

    fn lift(&self) -> Option<Vec<BigInt>> {
        let bound = (&self.modulus >> 1usize).sqrt();
        let mut fractions = Vec::with_capacity(self.residues.len());
        for a in &self.residues {
            fractions.push(rational_reconstruction(a, &self.modulus, &bound)?);
        }
        let lcm = fractions
            .iter()
            .fold(BigInt::one(), |l, (_, d)| l.lcm(d));
        let x: Vec<BigInt> = fractions
            .into_iter()
            .map(|(n, d)| n * (&lcm / d))
            .collect();
        is_kernel_vector(self.m, &x).then_some(x)
    }
}

/// `r / s` with `|r|, |s| <= bound` and `r = s a (mod n)`, if one exists.
fn rational_reconstruction(a: &BigInt, n: &BigInt, bound: &BigInt) -> Option<(BigInt, BigInt)> {
    let (mut r0, mut r1) = (n.clone(), a.mod_floor(n));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.magnitude() > bound.magnitude() || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(if t1.is_negative() { (-r1, -t1) } else { (r1, t1) })
}

/// Exact check that `x` is a nonzero vector with `m x = 0`.
pub fn is_kernel_vector(m: &SparseMatrix, x: &[BigInt]) -> bool {
    if x.len() != m.cols() || x.iter().all(Zero::is_zero) {
        return false;
    }
    let mut image = vec![BigInt::zero(); m.rows()];
    for (col, xj) in m.columns().iter().zip(x) {
        if xj.is_zero() {
            continue;
        }
        for (r, v) in col {
            image[*r] += v * xj;
        }
    }
    image.iter().all(Zero::is_zero)
}

/// A nonzero integer vector `x` with `m x = 0`, obtained by lifting kernel
/// vectors modulo successive `primes` and checking each candidate exactly.
///
/// The lifted entries are ratios of minors, so once the product of the
/// primes used exceeds twice the squared Hadamard bound of `m`,
/// reconstruction cannot fail (barring primes that lower the rank). A
/// `None` from a shorter list proves nothing.
pub fn kernel_certificate(m: &SparseMatrix, primes: &[u64]) -> Option<Vec<BigInt>> {
    let mut lift = KernelLift::new(m);
    primes.iter().find_map(|&p| {
        let x = eliminate(m, p, true).dependency?;
        lift.add(&x, p)
    })
}

fn reduce(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits in u64")
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut r = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            r = (r as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        exp >>= 1;
    }
    r
}

fn mod_inverse(x: u64, p: u64) -> u64 {
    mod_pow(x, p - 2, p)
}

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = (x as u128 * x as u128 % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `count` distinct primes drawn uniformly from the open interval `(2^30, 2^31)`.
pub fn random_primes(count: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<u64> = Vec::with_capacity(count);
    while out.len() < count {
        let candidate = rng.gen_range((1u64 << 30) + 1..(1u64 << 31)) | 1;
        if is_prime(candidate) && !out.contains(&candidate) {
            out.push(candidate);
        }
    }
    out
}

/// Maximum of [`modular_rank`] over `primes`.
pub fn multi_modular_rank(m: &SparseMatrix, primes: &[u64]) -> usize {
    primes.iter().map(|&p| modular_rank(m, p)).max().unwrap_or(0)
}

/// How a rank was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "engine")]
pub enum RankMethod {
    /// Fraction-free integer elimination; exact.
    Bareiss,
    /// Some prime reached `min(rows, cols)`; exact, since the rational rank
    /// can only be larger and is bounded by the shape.
    ModularFull,
    /// Every prime stayed below `min(rows, cols)`; the maximum over `primes`
    /// is reported. With `certified`, an exact integer kernel vector on the
    /// shorter side proves the rank is below `min(rows, cols)`, so every
    /// injective/surjective verdict is exact even though the rank value
    /// itself is only a lower bound.
    ModularDeficient { primes: usize, certified: bool },
}

impl RankMethod {
    /// Whether maximal-rank verdicts built on this rank are proven.
    pub fn is_certified(&self) -> bool {
        !matches!(self, RankMethod::ModularDeficient { certified: false, .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankOutcome {
    pub rank: usize,
    pub method: RankMethod,
}

/// Chooses between the Bareiss and modular engines.
#[derive(Clone, Debug)]
pub struct RankEngine {
    /// Bareiss is used when `rows * cols` is at most this many cells.
    pub bareiss_max_cells: usize,
    /// Primes whose ranks are maximized for the reported value.
    pub primes: Vec<u64>,
    /// Further primes tried only while a deficiency is still uncertified.
    pub certify_primes: Vec<u64>,
}

/// Seed for the default modulus set, fixed so output is reproducible.
pub const DEFAULT_PRIME_SEED: u64 = 0x5eed_1ef5;

impl Default for RankEngine {
    fn default() -> Self {
        let mut primes = random_primes(9, DEFAULT_PRIME_SEED);
        let certify_primes = primes.split_off(3);
        Self {
            bareiss_max_cells: 40_000,
            primes,
            certify_primes,
        }
    }
}

impl RankEngine {
    pub fn global() -> &'static RankEngine {
        static ENGINE: OnceLock<RankEngine> = OnceLock::new();
        ENGINE.get_or_init(RankEngine::default)
    }

    pub fn rank(&self, m: &SparseMatrix) -> RankOutcome {
        let (r, c) = m.shape();
        if r * c <= self.bareiss_max_cells || self.primes.is_empty() {
            return RankOutcome {
                rank: bareiss_rank(m),
                method: RankMethod::Bareiss,
            };
        }
        let full = r.min(c);
        let mut best = modular_rank(m, self.primes[0]);
        if best == full {
            return RankOutcome {
                rank: best,
                method: RankMethod::ModularFull,
            };
        }
        // A kernel vector of the side with fewer columns rules out full rank.
        let transposed;
        let side = if c <= r {
            m
        } else {
            transposed = m.transpose();
            &transposed
        };
        let mut lift = KernelLift::new(side);
        let mut certified = false;
        let mut used = 1;
        let rest = self.primes[1..].iter().chain(&self.certify_primes);
        for (k, &p) in rest.enumerate() {
            let for_rank = k + 1 < self.primes.len();
            if !for_rank && certified {
                break;
            }
            let e = eliminate(side, p, !certified);
            used += 1;
            best = best.max(e.rank);
            if best == full {
                return RankOutcome {
                    rank: best,
                    method: RankMethod::ModularFull,
                };
            }
            if let Some(x) = e.dependency {
                certified = lift.add(&x, p).is_some();
            }
        }
        RankOutcome {
            rank: best,
            method: RankMethod::ModularDeficient {
                primes: used,
                certified,
            },
        }
    }
}

/// Rank over the rationals using the shared default engine.
pub fn exact_rank(m: &SparseMatrix) -> usize {
    RankEngine::global().rank(m).rank
}
