//! Seeded generators for partitions, dynamics and (reversible) systems.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::system::{joint, meet, Dynamics, Partition, System};

/// The generator used throughout: ChaCha20 seeded from a `u64`.
pub fn rng_from_seed(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Largest `n` sampled through exact restricted-growth completion counts.
const EXACT_PARTITION_LIMIT: usize = 128;

/// Uniformly random set partition of `{0..n-1}`.
///
/// Up to 128 microstates the restricted growth string is sampled with exact
/// big-integer completion counts. Above that, Stam's urn method is used, whose
/// urn-count law is evaluated in floating point.
pub fn random_partition<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Partition {
    if n <= EXACT_PARTITION_LIMIT {
        rgs_partition(n, rng)
    } else {
        stam_partition(n, rng)
    }
}

fn rgs_partition<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Partition {
    if n == 0 {
        return Partition::discrete(0);
    }
    // f[r][m]: completions of r remaining letters when m blocks are open
    let mut f = vec![vec![BigUint::one(); n + 2]; n + 1];
    for r in 1..=n {
        for m in 1..=n + 1 - r {
            f[r][m] = &f[r - 1][m] * BigUint::from(m) + &f[r - 1][m + 1];
        }
    }
    let mut labels = vec![0usize; n];
    let mut m = 1;
    for (pos, label) in labels.iter_mut().enumerate().skip(1) {
        let r = n - pos;
        let total = &f[r][m];
        let x = uniform_below(total, rng);
        let per_old = &f[r - 1][m];
        let old_mass = per_old * BigUint::from(m);
        if x < old_mass {
            *label = (x / per_old).try_into().unwrap();
        } else {
            *label = m;
            m += 1;
        }
    }
    Partition::from_labels(&labels)
}

fn stam_partition<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Partition {
    // P(M = m) ∝ m^n / m!
    let nf = n as f64;
    let mut logs = Vec::new();
    let mut lfact = 0.0;
    let mut best = f64::NEG_INFINITY;
    let mut m = 1usize;
    loop {
        lfact += (m as f64).ln();
        let w = nf * (m as f64).ln() - lfact;
        best = best.max(w);
        logs.push(w);
        if w < best - 60.0 && m > n {
            break;
        }
        m += 1;
    }
    let weights: Vec<f64> = logs.iter().map(|w| (w - best).exp()).collect();
    let total: f64 = weights.iter().sum();
    let mut u = rng.random::<f64>() * total;
    let mut urns = weights.len();
    for (k, w) in weights.iter().enumerate() {
        if u < *w {
            urns = k + 1;
            break;
        }
        u -= w;
    }
    let labels: Vec<usize> = (0..n).map(|_| rng.random_range(0..urns)).collect();
    Partition::from_labels(&labels)
}

/// Uniform integer in `[0, bound)` by rejection on random bits.
fn uniform_below<R: Rng + ?Sized>(bound: &BigUint, rng: &mut R) -> BigUint {
    assert!(!bound.is_zero());
    let bits = bound.bits();
    let bytes = bits.div_ceil(8) as usize;
    let excess = (bytes as u64) * 8 - bits;
    let mut buf = vec![0u8; bytes];
    loop {
        rng.fill_bytes(&mut buf);
        if let Some(top) = buf.last_mut() {
            *top &= 0xffu8 >> excess;
        }
        let x = BigUint::from_bytes_le(&buf);
        if &x < bound {
            return x;
        }
    }
}

/// Uniformly random permutation (Fisher-Yates).
pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Dynamics {
    let mut image: Vec<usize> = (0..n).collect();
    image.shuffle(rng);
    Dynamics::new(image).unwrap()
}

/// Uniformly random map `X -> X`.
pub fn random_map<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Dynamics {
    Dynamics::new((0..n).map(|_| rng.random_range(0..n)).collect()).unwrap()
}

/// Random involution: a shuffle whose consecutive pairs are swapped with
/// probability one half.
pub fn random_involution<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut r: Vec<usize> = (0..n).collect();
    for pair in order.chunks_exact(2) {
        if rng.random_bool(0.5) {
            r[pair[0]] = pair[1];
            r[pair[1]] = pair[0];
        }
    }
    r
}

/// Uniform partition and uniform permutation.
pub fn random_system<R: Rng + ?Sized>(n: usize, rng: &mut R) -> System {
    let p = random_partition(n, rng);
    System::new(p, random_permutation(n, rng), None).unwrap()
}

/// Partition with `count` blocks of each `size` (microstates assigned at
/// random) and a uniform permutation.
pub fn random_system_with_profile<R: Rng + ?Sized>(
    spec: &[(usize, usize)],
    rng: &mut R,
) -> Result<System> {
    let p = random_partition_with_profile(spec, rng)?;
    let n = p.n();
    Ok(System::new(p, random_permutation(n, rng), None).unwrap())
}

pub fn random_partition_with_profile<R: Rng + ?Sized>(
    spec: &[(usize, usize)],
    rng: &mut R,
) -> Result<Partition> {
    if spec.iter().any(|&(s, c)| s == 0 || c == 0) {
        return Err(Error::InvalidArgument(
            "zone sizes and counts must be positive".into(),
        ));
    }
    let mut labels: Vec<usize> = Vec::new();
    let mut next = 0;
    for &(s, c) in spec {
        for _ in 0..c {
            labels.extend(std::iter::repeat_n(next, s));
            next += 1;
        }
    }
    labels.shuffle(rng);
    Ok(Partition::from_labels(&labels))
}

/// Parses a zone spec such as `"1x2,3x1"` (size x block count).
pub fn parse_zone_spec(s: &str) -> Result<Vec<(usize, usize)>> {
    let bad = || Error::InvalidArgument(format!("bad zone spec {s:?}; expected e.g. 1x2,3x1"));
    s.split(',')
        .map(|item| {
            let (a, b) = item.trim().split_once(['x', 'X']).ok_or_else(bad)?;
            let size: usize = a.trim().parse().map_err(|_| bad())?;
            let count: usize = b.trim().parse().map_err(|_| bad())?;
            if size == 0 || count == 0 {
                return Err(bad());
            }
            Ok((size, count))
        })
        .collect()
}

/// How the partition of a random reversible system relates to its reversion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReversionMode {
    /// No constraint: the reversion may change entropy.
    Plain,
    /// Blocks are unions of reversion orbits (`f r = f`).
    Invariant,
    /// The reversion permutes blocks.
    Equivariant,
}

/// Random reversible system: `alpha = r s` for random involutions `r`, `s`,
/// so that `r alpha r = s r = alpha^{-1}`.
pub fn random_reversible<R: Rng + ?Sized>(n: usize, mode: ReversionMode, rng: &mut R) -> System {
    let r = random_involution(n, rng);
    let s = random_involution(n, rng);
    let image: Vec<usize> = (0..n).map(|i| r[s[i]]).collect();
    let p = random_partition(n, rng);
    let p = match mode {
        ReversionMode::Plain => p,
        ReversionMode::Invariant => {
            let orbit_of: Vec<usize> = (0..n).map(|i| i.min(r[i])).collect();
            joint(&p, &Partition::from_labels(&orbit_of)).unwrap()
        }
        ReversionMode::Equivariant => {
            let mirrored: Vec<usize> = (0..n).map(|i| p.block_of(r[i])).collect();
            meet(&p, &Partition::from_labels(&mirrored)).unwrap()
        }
    };
    System::new(p, Dynamics::new(image).unwrap(), Some(r)).expect("r s is reversed by r")
}
