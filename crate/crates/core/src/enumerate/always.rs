use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use super::scan::{for_each_permutation, restricted_growth_strings, sizes_of_rgs};
use crate::error::{Error, Result};
use crate::numeric::{factorial, qb, ser_big, ser_q, Q};
use crate::system::{Dynamics, Partition, ZoneProfile};

/// Permutations with no strict entropy decrease for a fixed partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlwaysIncreasing {
    /// `Π_j |π̂_j|!`.
    #[serde(serialize_with = "ser_big")]
    pub count: BigUint,
    /// `count / |X|!`.
    #[serde(serialize_with = "ser_q")]
    pub probability: Q,
}

/// Permutations of `X` that keep entropy always increasing for `p`: they
/// permute each zone.
pub fn count_always_increasing_by_partition(p: &Partition) -> AlwaysIncreasing {
    let zp = ZoneProfile::of(p);
    let count: BigUint = zp.zone_card.iter().map(|&c| factorial(c)).product();
    let probability = qb(&count, &factorial(p.n()));
    AlwaysIncreasing { count, probability }
}

/// Whether `size` is constant on every orbit of the permutation `alpha`.
pub fn is_entropy_constant_on_orbits(sizes: &[usize], alpha: &Dynamics) -> bool {
    alpha
        .orbits()
        .cycles
        .iter()
        .all(|c| c.iter().all(|&i| sizes[i] == sizes[c[0]]))
}

/// Number of uniform partitions of an `m`-set into blocks of size `k`:
/// `m! / (k!^{m/k} (m/k)!)`.
fn uniform_partitions(m: usize, k: usize) -> BigUint {
    factorial(m) / (num_traits::pow(factorial(k), m / k) * factorial(m / k))
}

/// Partitions for which `alpha` never decreases entropy, summed over the
/// colorings `l` of the cycles by zone sizes with `k | Σ_{l(c)=k} |c|`.
pub fn count_always_increasing_by_permutation(alpha: &Dynamics) -> Result<BigUint> {
    if !alpha.invertible() {
        return Err(Error::NotInvertible);
    }
    let lens: Vec<usize> = alpha.orbits().cycles.iter().map(Vec::len).collect();
    let n = alpha.n();
    let mut total = BigUint::zero();
    let mut mass = vec![0usize; n + 1];
    fn rec(c: usize, lens: &[usize], mass: &mut Vec<usize>, total: &mut BigUint) {
        if c == lens.len() {
            let ok = mass.iter().enumerate().skip(1).all(|(k, &m)| m % k == 0);
            if ok {
                *total += mass
                    .iter()
                    .enumerate()
                    .skip(1)
                    .filter(|(_, &m)| m > 0)
                    .map(|(k, &m)| uniform_partitions(m, k))
                    .product::<BigUint>();
            }
            return;
        }
        for k in 1..mass.len() {
            mass[k] += lens[c];
            rec(c + 1, lens, mass, total);
            mass[k] -= lens[c];
        }
    }
    if n == 0 {
        return Ok(BigUint::from(1u32));
    }
    rec(0, &lens, &mut mass, &mut total);
    Ok(total)
}

/// Direct count: partitions whose sizes are constant on the orbits of `alpha`.
pub fn count_always_increasing_by_scan(alpha: &Dynamics) -> BigUint {
    let n = alpha.n();
    let cycles = alpha.orbits().cycles;
    let hits = restricted_growth_strings(n)
        .iter()
        .filter(|rgs| {
            let s = sizes_of_rgs(rgs);
            cycles.iter().all(|c| c.iter().all(|&i| s[i] == s[c[0]]))
        })
        .count();
    BigUint::from(hits)
}

/// Both sides of the count of always-increasing invertible systems.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Duality {
    pub n: usize,
    /// `Σ_π Π_j |π̂_j|!`.
    #[serde(serialize_with = "ser_big")]
    pub by_partition: BigUint,
    /// `Σ_α` of the cycle-coloring sum.
    #[serde(serialize_with = "ser_big")]
    pub by_permutation: BigUint,
    pub equal: bool,
}

/// Largest `n` for the duality check.
pub const DUALITY_LIMIT: usize = 6;

pub fn duality_identity(n: usize) -> Result<Duality> {
    if n > DUALITY_LIMIT {
        return Err(Error::TooLarge(format!(
            "duality check is limited to n <= {DUALITY_LIMIT}"
        )));
    }
    let by_partition: BigUint = restricted_growth_strings(n)
        .iter()
        .map(|rgs| count_always_increasing_by_partition(&Partition::from_labels(rgs)).count)
        .sum();
    let mut by_permutation = BigUint::zero();
    let mut err = None;
    for_each_permutation(n, |a, _| {
        match count_always_increasing_by_permutation(&Dynamics::new(a.to_vec()).unwrap()) {
            Ok(c) => by_permutation += c,
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let equal = by_partition == by_permutation;
    Ok(Duality {
        n,
        by_partition,
        by_permutation,
        equal,
    })
}
