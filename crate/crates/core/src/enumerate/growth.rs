use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{binomial, q, qb, ser_q, Q};
use crate::system::Partition;

use super::max_decreases;

/// Growth of the zone cardinalities `c_s k_s` of the nested phase spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum GrowthPattern {
    /// `c_s k_s = a s^r`.
    Polynomial { a: u64, r: u32 },
    /// `c_s k_s = a r^s`.
    Exponential { a: u64, r: u64 },
    /// `c_s k_s = a s^s`.
    Superexponential { a: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthRow {
    pub n: usize,
    /// `(Σ_{s<n} c_s k_s) / (Σ_{s≤n} c_s k_s)`, the largest fraction of
    /// strict decreases.
    #[serde(serialize_with = "ser_q")]
    pub ratio: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZoneGrowth {
    pub pattern: GrowthPattern,
    pub table: Vec<GrowthRow>,
    /// `lim c_n k_n / c_{n+1} k_{n+1}`: `1`, `1/r` or `0`.
    #[serde(serialize_with = "ser_q")]
    pub limit: Q,
}

impl GrowthPattern {
    pub fn zone_card(&self, s: usize) -> BigUint {
        match *self {
            Self::Polynomial { a, r } => {
                BigUint::from(a) * num_traits::pow(BigUint::from(s), r as usize)
            }
            Self::Exponential { a, r } => BigUint::from(a) * num_traits::pow(BigUint::from(r), s),
            Self::Superexponential { a } => BigUint::from(a) * num_traits::pow(BigUint::from(s), s),
        }
    }

    fn limit(&self) -> Q {
        match *self {
            Self::Polynomial { .. } => q(1, 1),
            Self::Exponential { r, .. } => Q::new(1.into(), r.into()),
            Self::Superexponential { .. } => q(0, 1),
        }
    }
}

pub fn zone_growth_limit(pattern: GrowthPattern, n_max: usize) -> Result<ZoneGrowth> {
    let bad = match pattern {
        GrowthPattern::Polynomial { a, r } => a == 0 || r <= 1,
        GrowthPattern::Exponential { a, r } => a == 0 || r <= 1,
        GrowthPattern::Superexponential { a } => a == 0,
    };
    if bad {
        return Err(Error::InvalidArgument(
            "growth needs a >= 1 and r > 1".into(),
        ));
    }
    let mut below = BigUint::ZERO;
    let mut table = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let top = pattern.zone_card(n);
        let total = &below + &top;
        table.push(GrowthRow {
            n,
            ratio: qb(&below, &total),
        });
        below = total;
    }
    Ok(ZoneGrowth {
        pattern,
        table,
        limit: pattern.limit(),
    })
}

/// One row of the power-set example `(P[2n+1], |·|)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerSetRow {
    pub n: usize,
    /// `(|X| - max_k |π̂_k|) / |X|` from the zone cardinalities.
    #[serde(serialize_with = "ser_q")]
    pub ratio: Q,
    /// `1 - 2 C(2n+1, n) / 2^{2n+1}`.
    #[serde(serialize_with = "ser_q")]
    pub formula: Q,
    /// Confirmed by an explicit witness permutation (only for small `n`).
    pub witnessed: Option<bool>,
}

/// Largest `2n + 1` for which the power set is built explicitly.
const POWER_SET_BUILD: usize = 11;

pub fn power_set_table(n_max: usize) -> Vec<PowerSetRow> {
    (0..=n_max)
        .map(|n| {
            let m = 2 * n + 1;
            let total = num_traits::pow(BigUint::from(2u32), m);
            // subsets of sizes k and m - k form blocks of the same size
            let zone = |k: usize| BigUint::from(2u32) * binomial(m, k);
            let top = (0..=n).map(zone).max().unwrap_or_else(BigUint::one);
            let ratio = qb(&(&total - &top), &total);
            let formula = q(1, 1) - qb(&(BigUint::from(2u32) * binomial(m, n)), &total);
            let witnessed = (m <= POWER_SET_BUILD).then(|| {
                let labels: Vec<usize> =
                    (0..1usize << m).map(|x| x.count_ones() as usize).collect();
                let p = Partition::from_labels(&labels);
                let md = max_decreases(&p);
                md.verified && qb(&BigUint::from(md.count), &total) == ratio
            });
            PowerSetRow {
                n,
                ratio,
                formula,
                witnessed,
            }
        })
        .collect()
}
