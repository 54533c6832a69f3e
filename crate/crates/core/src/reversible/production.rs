use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numeric::{fmt_q, q_to_f64, qu, Q};
use crate::system::System;

/// A finite density over exact ratio classes `|alpha^n i| / |i|`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Density(pub BTreeMap<Q, Q>);

impl Serialize for Density {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(&fmt_q(k), &fmt_q(v))?;
        }
        m.end()
    }
}

impl Density {
    fn add(&mut self, key: Q, mass: Q) {
        *self.0.entry(key).or_insert_with(Q::zero) += mass;
    }

    pub fn get(&self, ratio: &Q) -> Q {
        self.0.get(ratio).cloned().unwrap_or_else(Q::zero)
    }

    pub fn total(&self) -> Q {
        self.0.values().sum()
    }

    /// `Σ mass · ln(ratio) / n`.
    pub fn mean(&self, n_steps: usize) -> f64 {
        self.0
            .iter()
            .map(|(k, v)| q_to_f64(v) * q_to_f64(k).ln())
            .sum::<f64>()
            / n_steps as f64
    }
}

/// Sign of `Σ ln(num_i / den_i)`, decided exactly from the two products.
fn log_sign(pairs: impl Iterator<Item = (usize, usize)>) -> std::cmp::Ordering {
    let (mut num, mut den) = (BigUint::one(), BigUint::one());
    for (a, b) in pairs {
        num *= a;
        den *= b;
    }
    num.cmp(&den)
}

/// `n`-step entropy production `σ_n(i) = ln(|alpha^n i| / |i|) / n`, its
/// densities under the uniform, nonequilibrium-uniform and `q_i = 1/(|A||i|)`
/// measures, and the checked identities.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProductionProfile {
    pub n_steps: usize,
    /// Exact pair `(|alpha^n i|, |i|)` per microstate.
    pub pairs: Vec<(usize, usize)>,
    /// Real value of `σ_n(i)`.
    pub sigma: Vec<f64>,
    pub mean_u: f64,
    /// `None` when `X^neq` is empty.
    pub mean_u_neq: Option<f64>,
    pub mean_q: f64,
    pub w_u: Density,
    pub w_u_neq: Density,
    pub w_q: Density,
    /// `Σ_i ln|alpha^n i| - ln|i|` is exactly zero.
    pub mean_u_zero: bool,
    /// Exact sign of the nonequilibrium mean (`-1`, `0`, `1`).
    pub mean_u_neq_sign: i8,
    /// `alpha^n` maps `X^eq` into itself.
    pub xeq_invariant: bool,
    /// Checked statements; each entry is `(name, holds)`.
    pub checks: Vec<(String, bool)>,
}

impl ProductionProfile {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|(_, h)| *h)
    }

    pub fn check(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|(n, _)| n == name).map(|(_, h)| *h)
    }
}

const TOL: f64 = 1e-12;

pub fn production_profile(sys: &System, n_steps: usize) -> Result<ProductionProfile> {
    if n_steps == 0 {
        return Err(Error::InvalidArgument(
            "the number of steps must be at least 1".into(),
        ));
    }
    let n = sys.n();
    if n == 0 {
        return Err(Error::InvalidArgument("empty phase space".into()));
    }
    let map = sys.dynamics().power(n_steps);
    let pairs: Vec<(usize, usize)> = (0..n)
        .map(|i| (sys.size(map.apply(i)), sys.size(i)))
        .collect();
    let nf = n_steps as f64;
    let sigma: Vec<f64> = pairs
        .iter()
        .map(|&(a, b)| (a as f64 / b as f64).ln() / nf)
        .collect();
    let blocks = sys.partition().num_blocks();
    let xneq = sys.xneq();
    let mut w_u = Density::default();
    let mut w_u_neq = Density::default();
    let mut w_q = Density::default();
    for &(a, b) in &pairs {
        let ratio = qu(a, b);
        w_u.add(ratio.clone(), qu(1, n));
        w_q.add(ratio, qu(1, blocks * b));
    }
    for &i in &xneq {
        let (a, b) = pairs[i];
        w_u_neq.add(qu(a, b), qu(1, xneq.len()));
    }
    let mean_u = sigma.iter().sum::<f64>() / n as f64;
    let mean_u_neq =
        (!xneq.is_empty()).then(|| xneq.iter().map(|&i| sigma[i]).sum::<f64>() / xneq.len() as f64);
    let mean_q = pairs
        .iter()
        .zip(&sigma)
        .map(|(&(_, b), s)| s / (blocks * b) as f64)
        .sum::<f64>();
    let mean_u_zero = log_sign(pairs.iter().copied()).is_eq();
    let mean_u_neq_sign = log_sign(xneq.iter().map(|&i| pairs[i])) as i8;
    let xeq_invariant = sys.xeq().iter().all(|&i| sys.is_eq(map.apply(i)));

    let mut checks = Vec::new();
    let one = Q::one();
    checks.push((
        "masses sum to one".to_string(),
        w_u.total() == one && w_q.total() == one && (xneq.is_empty() || w_u_neq.total() == one),
    ));
    let real_ok = pairs.iter().zip(&sigma).all(|(&(a, b), s)| {
        ((a as f64).ln() - (b as f64).ln() - nf * s).abs() <= TOL * (1.0 + s.abs())
    });
    let means_ok = (w_u.mean(n_steps) - mean_u).abs() <= TOL
        && (w_q.mean(n_steps) - mean_q).abs() <= TOL
        && mean_u_neq.is_none_or(|m| (w_u_neq.mean(n_steps) - m).abs() <= TOL);
    checks.push((
        "real values match exact pairs".to_string(),
        real_ok && means_ok,
    ));
    // n σ̄^u equals the entropy of the pushed-forward uniform measure minus S
    let tc = sys.transition_counts(n_steps);
    let pushed: f64 = (0..blocks)
        .map(|a| tc.counts[a].iter().sum::<usize>() as f64 * (tc.block_sizes[a] as f64).ln())
        .sum::<f64>()
        / n as f64;
    let s_p = sys.partition().mean_entropy();
    checks.push((
        "mean is entropy change".to_string(),
        (nf * mean_u - (pushed - s_p)).abs() <= TOL * (1.0 + s_p),
    ));
    if sys.invertible() {
        checks.push(("uniform mean vanishes".to_string(), mean_u_zero));
        let neq_ok = mean_u_neq_sign >= 0 && ((mean_u_neq_sign == 0) == xeq_invariant);
        checks.push(("nonequilibrium mean nonnegative".to_string(), neq_ok));
    }
    if sys.reversion().is_some() && sys.is_entropy_preserving() {
        let preserving = pairs.iter().all(|&(a, b)| a == b);
        checks.push((
            "q mean nonnegative".to_string(),
            mean_q >= -TOL && (preserving == (mean_q.abs() <= TOL)),
        ));
        let keys = |d: &Density| {
            d.0.keys()
                .flat_map(|k| [k.clone(), k.recip()])
                .collect::<Vec<_>>()
        };
        let even = keys(&w_u).iter().all(|k| w_u.get(k) == w_u.get(&k.recip()));
        let neq_skew = keys(&w_u_neq)
            .iter()
            .filter(|k| **k >= one)
            .all(|k| w_u_neq.get(k) >= w_u_neq.get(&k.recip()));
        let q_skew = keys(&w_q)
            .iter()
            .all(|k| w_q.get(k) == k * w_q.get(&k.recip()));
        checks.push(("uniform density even".to_string(), even));
        checks.push(("nonequilibrium density skewed".to_string(), neq_skew));
        checks.push(("q density detailed".to_string(), q_skew));
    }
    Ok(ProductionProfile {
        n_steps,
        pairs,
        sigma,
        mean_u,
        mean_u_neq,
        mean_q,
        w_u,
        w_u_neq,
        w_q,
        mean_u_zero,
        mean_u_neq_sign,
        xeq_invariant,
        checks,
    })
}
