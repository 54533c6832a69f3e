use num_bigint::BigUint;
use serde::Serialize;

use num_traits::{One, Zero};

use crate::numeric::{binomial, qb, qi, Q};

/// `P(|D| = d)` for `d = 0..=min(s1, s2)` on a two-zone phase space with zone
/// cardinalities `s1` and `s2`.
pub fn two_zone_distribution(s1: usize, s2: usize) -> Vec<Q> {
    let total = binomial(s1 + s2, s1);
    two_zone_weights(s1, s2)
        .iter()
        .map(|w| qb(w, &total))
        .collect()
}

fn two_zone_weights(s1: usize, s2: usize) -> Vec<BigUint> {
    (0..=s1.min(s2))
        .map(|d| binomial(s1, d) * binomial(s2, d))
        .collect()
}

/// The closed form `⌊s1·s2 / (s1 + s2 + 2)⌋` for the most likely number of
/// strict decreases.
pub fn two_zone_mostlikely(s1: usize, s2: usize) -> usize {
    s1 * s2 / (s1 + s2 + 2)
}

/// Every `d` attaining the maximum of the exact distribution. There are two
/// exactly when `(s1 + 1)(s2 + 1)` is divisible by `s1 + s2 + 2`.
pub fn two_zone_mode(s1: usize, s2: usize) -> Vec<usize> {
    let w = two_zone_weights(s1, s2);
    let max = w.iter().max().cloned().unwrap_or_default();
    (0..w.len()).filter(|&d| w[d] == max).collect()
}

/// `⌊(s1 + 1)(s2 + 1) / (s1 + s2 + 2)⌋`, the largest mode.
pub fn two_zone_mode_formula(s1: usize, s2: usize) -> usize {
    (s1 + 1) * (s2 + 1) / (s1 + s2 + 2)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrendRow {
    pub s1: usize,
    pub s2: usize,
    pub mode: usize,
    /// `d* / (s1 + s2)`.
    pub ratio: f64,
    /// `c / (1 + c)²`.
    pub limit: f64,
}

/// Relative mode along `s2 = c·s1` for each `s1`.
pub fn two_zone_trend(c: usize, s1_values: &[usize]) -> Vec<TrendRow> {
    let cf = c as f64;
    s1_values
        .iter()
        .map(|&s1| {
            let s2 = c * s1;
            let mode = *two_zone_mode(s1, s2).last().unwrap();
            TrendRow {
                s1,
                s2,
                mode,
                ratio: mode as f64 / (s1 + s2) as f64,
                limit: cf / (1.0 + cf).powi(2),
            }
        })
        .collect()
}

/// Closed form for `L2(ε1, ε2)` of the invariant doubling on two zones:
/// the mass of `(1 - ε2)s1 ≤ d ≤ min(s1, s2, ε1(s1 + s2))`.
pub fn two_zone_ir_l2(s1: usize, s2: usize, e1: &Q, e2: &Q) -> Q {
    let lo = (Q::one() - e2) * qi(s1);
    let hi = e1 * qi(s1 + s2);
    two_zone_distribution(s1, s2)
        .into_iter()
        .enumerate()
        .filter(|(d, _)| {
            let d = qi(*d);
            d >= lo && d <= hi
        })
        .fold(Q::zero(), |acc, (_, p)| acc + p)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModeCheck {
    pub s1: usize,
    pub s2: usize,
    pub formula: usize,
    pub argmax: Vec<usize>,
    pub holds: bool,
}

/// Compares the closed form with the exact argmax for all `1 ≤ s1 < s2 ≤ max`.
/// A pair passes when the closed form lies in the argmax set.
pub fn two_zone_mode_table(max: usize) -> Vec<ModeCheck> {
    let mut out = Vec::new();
    for s2 in 2..=max {
        for s1 in 1..s2 {
            let formula = two_zone_mostlikely(s1, s2);
            let argmax = two_zone_mode(s1, s2);
            let holds = argmax.contains(&formula);
            out.push(ModeCheck {
                s1,
                s2,
                formula,
                argmax,
                holds,
            });
        }
    }
    out
}
