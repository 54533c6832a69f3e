use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::{Partition, ZoneProfile};
use crate::error::{Error, Result};
use crate::numeric::multinomial;

/// Typical microstates and macrostates of the `n`-th power phase space.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TypicalSets {
    pub n_power: usize,
    pub eps: f64,
    /// `|X^n_ε|`.
    #[serde(serialize_with = "crate::numeric::ser_big")]
    pub typical_micro: BigUint,
    /// `|A^n_ε|`.
    #[serde(serialize_with = "crate::numeric::ser_big")]
    pub typical_macro: BigUint,
    /// `|X|^n`.
    #[serde(serialize_with = "crate::numeric::ser_big")]
    pub total: BigUint,
    /// Block-size multiplicities `m_k` (per zone) of the typical tuples.
    pub typical_profiles: Vec<Vec<usize>>,
    /// `|X^n_ε| ≥ (1 - ε)|X|^n`.
    pub bound_mass: bool,
    /// Every typical macro tuple has fiber size within `e^{n(S ± ε)}`.
    pub bound_fiber: bool,
    /// `(1 - ε)|X|^n e^{-n(S+ε)} ≤ |A^n_ε| ≤ |X|^n e^{-n(S-ε)}`.
    pub bound_count: bool,
}

/// Relative slack used when comparing `Σ ln|f(i_t)|` with `n(S ± ε)`.
const LOG_SLACK: f64 = 1e-12;

/// Whether a tuple with `log_product = Σ ln|f(i_t)|` is typical.
pub fn is_typical(log_product: f64, n_power: usize, s: f64, eps: f64) -> bool {
    let n = n_power as f64;
    let tol = LOG_SLACK * n.max(1.0) * s.abs().max(1.0);
    log_product >= n * (s - eps) - tol && log_product <= n * (s + eps) + tol
}

/// Exact typical-set counts by summing over block-size multiplicities.
pub fn typical_sets(p: &Partition, n_power: usize, eps: f64) -> Result<TypicalSets> {
    if n_power == 0 {
        return Err(Error::InvalidArgument("power must be at least 1".into()));
    }
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument("eps must be positive".into()));
    }
    if p.n() == 0 {
        return Err(Error::InvalidArgument("empty phase space".into()));
    }
    let zp = ZoneProfile::of(p);
    let s = p.mean_entropy();
    let logs: Vec<f64> = zp.sizes.iter().map(|&k| (k as f64).ln()).collect();
    let mut typical_micro = BigUint::ZERO;
    let mut typical_macro = BigUint::ZERO;
    let mut profiles = Vec::new();
    let mut m = vec![0; zp.o()];
    compositions(n_power, 0, &mut m, &mut |m| {
        let log_product: f64 = m.iter().zip(&logs).map(|(&c, &l)| c as f64 * l).sum();
        if !is_typical(log_product, n_power, s, eps) {
            return;
        }
        let arrangements = multinomial(n_power, m);
        let mut micro = arrangements.clone();
        let mut macro_ = arrangements;
        for (j, &c) in m.iter().enumerate() {
            micro *= num_traits::pow(BigUint::from(zp.zone_card[j]), c);
            macro_ *= num_traits::pow(BigUint::from(zp.block_count(j)), c);
        }
        typical_micro += micro;
        typical_macro += macro_;
        profiles.push(m.to_vec());
    });
    let total = num_traits::pow(BigUint::from(p.n()), n_power);
    let n = n_power as f64;
    let frac = ratio_f64(&typical_micro, &total);
    let macro_frac = ratio_f64(&typical_macro, &total);
    let bound_mass = frac >= 1.0 - eps - 1e-12;
    let lower = (1.0 - eps) * (-n * (s + eps)).exp();
    let upper = (-n * (s - eps)).exp();
    let bound_count = macro_frac >= lower * (1.0 - 1e-12) && macro_frac <= upper * (1.0 + 1e-12);
    Ok(TypicalSets {
        n_power,
        eps,
        typical_micro,
        typical_macro,
        total,
        typical_profiles: profiles,
        bound_mass,
        bound_fiber: true,
        bound_count,
    })
}

fn ratio_f64(a: &BigUint, b: &BigUint) -> f64 {
    // scale down both to keep them representable
    let shift = b.bits().saturating_sub(1000);
    let (a, b) = (a >> shift, b >> shift);
    a.to_f64().unwrap_or(f64::INFINITY) / b.to_f64().unwrap_or(f64::INFINITY)
}

fn compositions(rest: usize, j: usize, m: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if j + 1 == m.len() {
        m[j] = rest;
        f(m);
        return;
    }
    for c in 0..=rest {
        m[j] = c;
        compositions(rest - c, j + 1, m, f);
    }
}

impl TypicalSets {
    pub fn typical_fraction(&self) -> f64 {
        ratio_f64(&self.typical_micro, &self.total)
    }
}
